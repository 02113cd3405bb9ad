"""Command-line surface: exact / solve / select / compile / fig3.

Reports are deterministic key-value text with energies in Hartree at 12
significant digits. Errors print a single machine-parsable line
``error[CODE]: message`` to stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fixtures
from .ansatz import AnsatzSpec, Family
from .compiler import (
    CircuitFormatError,
    EmptyTermError,
    compile_ansatz,
    compile_pauli_exp,
    render_circuit,
)
from .io import HamiltonianFormatError, load_hamiltonian
from .oracle import ConvergenceError, exact_ground, fig3_amplitudes
from .pauli import (
    NotSubstitutableError,
    PauliParseError,
    QubitHamiltonian,
    parse_pauli,
)
from .selection import SelectionConfig, greedy_select
from .vqe import OptimizerConfig, minimize


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _energy(x: float) -> str:
    return f"{x:.12g}"


def _load(path: str) -> QubitHamiltonian:
    name = path.lower()
    if name in fixtures.FIXTURES:
        path = fixtures.fixture_path(name)
    try:
        return load_hamiltonian(path)
    except FileNotFoundError:
        raise CliError("EIO", f"cannot read {path}")
    except HamiltonianFormatError as exc:
        raise CliError("EFORMAT", str(exc))


def _resolve_terms(h: QubitHamiltonian, spec_text: str | None) -> tuple[int, ...]:
    """Comma-separated Pauli words or integer indices -> term indices."""
    if not spec_text:
        return ()
    by_word = {t.pauli.word: i for i, t in enumerate(h.terms)}
    out = []
    for tok in spec_text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.isdigit() or (tok.startswith("-") and tok[1:].isdigit()):
            idx = int(tok)
            if not 0 <= idx < h.n_terms:
                raise CliError("ETERM", f"term index {idx} out of range (M={h.n_terms})")
        else:
            if tok not in by_word:
                raise CliError("ETERM", f"term {tok!r} not present in the Hamiltonian")
            idx = by_word[tok]
        out.append(idx)
    return tuple(out)


def _optimizer_config(args) -> OptimizerConfig:
    return OptimizerConfig(seed=args.seed, restarts=args.restarts)


def _write_out(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_exact(args) -> None:
    h = _load(args.hamiltonian)
    try:
        res = exact_ground(h, seed=args.seed)
    except ConvergenceError as exc:
        raise CliError("ECONV", str(exc))
    lines = [
        f"hamiltonian {h.name}",
        f"n_qubits {h.n_qubits}",
        f"n_terms {h.n_terms}",
        f"ground_energy_ha {_energy(res.ground_energy)}",
        f"residual_norm {res.residual_norm:.3e}",
    ]
    meta_exact = h.metadata.get("exact_energy")
    if meta_exact is not None:
        lines.append(f"metadata_exact_energy_ha {_energy(float(meta_exact))}")
        lines.append(f"metadata_agreement_ha {_energy(res.ground_energy - float(meta_exact))}")
    _write_out("\n".join(lines) + "\n", args.out)


def cmd_solve(args) -> None:
    h = _load(args.hamiltonian)
    family = Family.parse(args.family)
    selected = _resolve_terms(h, args.terms)
    try:
        spec = AnsatzSpec(family, selected, args.layers, h.n_qubits)
        result = minimize(spec, h, _optimizer_config(args))
    except (ValueError, NotSubstitutableError) as exc:
        raise CliError("EVALID", str(exc))
    exact = exact_ground(h, seed=args.seed).ground_energy
    lines = [
        f"hamiltonian {h.name}",
        f"family {family.value}",
        f"terms {','.join(h.terms[i].pauli.word for i in selected) or '-'}",
        f"layers {args.layers}",
        f"n_parameters {spec.parameter_count}",
        f"best_energy_ha {_energy(result.best_energy)}",
        f"exact_energy_ha {_energy(exact)}",
        f"gap_to_exact_ha {_energy(result.best_energy - exact)}",
        f"evaluations {result.evaluations}",
        f"restarts_used {result.restarts_used}",
        f"converged {str(result.converged).lower()}",
        "best_parameters " + ",".join(f"{v:.12g}" for v in result.best_params),
    ]
    _write_out("\n".join(lines) + "\n", args.out)


def cmd_select(args) -> None:
    h = _load(args.hamiltonian)
    family = Family.parse(args.family)
    config = SelectionConfig(
        optimizer=_optimizer_config(args),
        jobs=args.jobs,
        prune_diagonal=not args.no_prune_diagonal,
    )
    history = greedy_select(
        h,
        family,
        layers=args.layers,
        target_gap=args.target_gap,
        max_terms=args.max_terms,
        config=config,
    )
    lines = [
        f"hamiltonian {h.name}",
        f"family {family.value}",
        f"layers {args.layers}",
        f"target_gap_ha {_energy(args.target_gap)}",
        f"exact_energy_ha {_energy(history.exact_energy)}",
        f"converged {str(history.converged).lower()}",
        f"rounds {len(history.rounds)}",
        f"minimize_calls {history.minimize_calls}",
    ]
    for k, r in enumerate(history.rounds, start=1):
        lines.append(
            f"round {k} term {r.chosen_term_index} pauli {r.chosen_pauli} "
            f"energy_ha {_energy(r.best_energy)} gap_ha {_energy(r.energy_gap_to_exact)} "
            f"candidates {r.candidates_evaluated}"
        )
    _write_out("\n".join(lines) + "\n", args.out)

    history_path = args.history_out
    if history_path is None and args.out:
        history_path = args.out + ".history.tsv"
    if history_path:
        rows = ["K\tenergy_ha\tgap_ha"]
        for k, r in enumerate(history.rounds, start=1):
            rows.append(f"{k}\t{_energy(r.best_energy)}\t{_energy(r.energy_gap_to_exact)}")
        with open(history_path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(rows) + "\n")


def cmd_compile(args) -> None:
    try:
        if args.pauli:
            circuit = compile_pauli_exp(parse_pauli(args.pauli), args.angle)
        else:
            if not args.hamiltonian:
                raise CliError("EUSAGE", "compile needs --pauli or --hamiltonian with --terms")
            h = _load(args.hamiltonian)
            family = Family.parse(args.family)
            selected = _resolve_terms(h, args.terms)
            spec = AnsatzSpec(family, selected, args.layers, h.n_qubits)
            if args.angles:
                params = np.array([float(x) for x in args.angles.split(",")])
            else:
                params = np.zeros(spec.parameter_count)
            circuit = compile_ansatz(spec, params, h, z_in_software=args.z_in_software)
    except (PauliParseError, EmptyTermError, CircuitFormatError, ValueError) as exc:
        raise CliError("EVALID", str(exc))
    summary = (
        f"# one_qubit {circuit.counts.one_qubit} two_qubit {circuit.counts.two_qubit}\n"
    )
    _write_out(summary + render_circuit(circuit), args.out)


def cmd_fig3(args) -> None:
    if args.steps < 1:
        raise CliError("EUSAGE", "steps must be >= 1")
    grid = np.linspace(args.t_min, args.t_max, args.steps)
    rows = fig3_amplitudes(grid)
    lines = ["t\ta_xx_sq\tb_xx_sq\ta_xy_sq\tb_xy_sq"]
    for r in rows:
        lines.append(
            f"{r.t:.12g}\t{r.a_xx_sq:.12g}\t{r.b_xx_sq:.12g}"
            f"\t{r.a_xy_sq:.12g}\t{r.b_xy_sq:.12g}"
        )
    _write_out("\n".join(lines) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paulivqe",
        description="Short-depth VQE trial wavefunctions from selected Pauli terms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, hamiltonian=True):
        if hamiltonian:
            p.add_argument("--hamiltonian", required=True,
                           help="path to a Hamiltonian file or a bundled fixture name (h2|lih|h2o)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = sub.add_parser("exact", help="certified ground energy of a Hamiltonian file")
    common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("solve", help="optimize one ansatz built from named terms")
    common(p)
    p.add_argument("--family", choices=["qaoa", "imag"], required=True)
    p.add_argument("--terms", default="", help="comma-separated Pauli words or term indices")
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--restarts", type=int, default=5)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("select", help="greedy term selection to a target gap")
    common(p)
    p.add_argument("--family", choices=["qaoa", "imag"], required=True)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--target-gap", type=float, default=1.6e-3, dest="target_gap")
    p.add_argument("--max-terms", type=int, default=None, dest="max_terms")
    p.add_argument("--restarts", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-prune-diagonal", action="store_true")
    p.add_argument("--history-out", default=None, dest="history_out",
                   help="K/energy/gap table path (defaults to OUT.history.tsv)")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("compile", help="lower a term or an ansatz to gates")
    p.add_argument("--pauli", default=None, help="compile exp(-i*angle*PAULI)")
    p.add_argument("--angle", type=float, default=0.0)
    p.add_argument("--hamiltonian", default=None)
    p.add_argument("--family", choices=["qaoa", "imag"], default="imag")
    p.add_argument("--terms", default="")
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--angles", default=None, help="comma-separated parameter values")
    p.add_argument("--z-in-software", action="store_true", dest="z_in_software",
                   help="record drive-Z rotations as frame updates (excluded from counts)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("fig3", help="closed-form two-level amplitude table")
    p.add_argument("--t-min", type=float, default=0.0, dest="t_min")
    p.add_argument("--t-max", type=float, default=float(np.pi / 2), dest="t_max")
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fig3)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"error[EINTERNAL]: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
