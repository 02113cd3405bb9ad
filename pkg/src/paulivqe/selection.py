"""Greedy sequential term selection.

Each round re-optimizes every eligible not-yet-selected candidate term
jointly with the current selection (warm-started from the previous
round's optimum, the new term's parameters starting at zero) and keeps
the argmin. Warm starts make the best energy non-increasing round over
round; candidate order and tie-breaks are fixed, so a seeded run is
fully reproducible.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field

import numpy as np

from .ansatz import AnsatzSpec, Family
from .pauli import QubitHamiltonian, is_substitutable, weight
from .oracle import exact_ground
from .vqe import OptimizationResult, OptimizerConfig, minimize

_TIE_TOL = 1e-9


@dataclass
class SelectionConfig:
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    jobs: int = 1
    prune_diagonal: bool = True    # drop I/Z-only candidates for both families
    freeze_previous: bool = False  # optimize only the new term's parameters
    exact_energy: float | None = None  # skip the ground solve when supplied


@dataclass
class SelectionRound:
    chosen_term_index: int
    chosen_pauli: str
    best_energy: float
    energy_gap_to_exact: float
    candidates_evaluated: int
    best_params: np.ndarray


@dataclass
class SelectionHistory:
    rounds: list[SelectionRound]
    family: Family
    layers: int
    target_gap: float
    exact_energy: float
    converged: bool
    minimize_calls: int

    @property
    def selected(self) -> tuple[int, ...]:
        return tuple(r.chosen_term_index for r in self.rounds)


def eligible_candidates(
    h: QubitHamiltonian,
    family: Family,
    already_selected: tuple[int, ...] = (),
    prune_diagonal: bool = True,
) -> list[int]:
    """Candidate term indices, ordered by descending |coeff| (ties by
    lower index) for a deterministic scan.

    I/Z-only terms are excluded: the imag family cannot substitute them,
    and on a basis start state they only contribute phases before the
    first entangling term, so the qaoa family prunes them too unless
    prune_diagonal is cleared.
    """
    chosen = set(already_selected)
    out = []
    for idx, t in enumerate(h.terms):
        if idx in chosen:
            continue
        if weight(t.pauli) == 0:
            continue
        if not is_substitutable(t.pauli):
            if family is Family.IMAG_TIME or prune_diagonal:
                continue
        out.append(idx)
    out.sort(key=lambda i: (-abs(h.terms[i].coeff), i))
    return out


def extend_parameters(
    family: Family, n_qubits: int, layers: int, prev_params: np.ndarray
) -> np.ndarray:
    """Warm start for one more selected term: the previous optimum with
    zeros spliced in at the new term's slots (selection order is
    term-major inside each layer)."""
    per_term = n_qubits + 1 if family is Family.QAOA_INSPIRED else 1
    prev_params = np.asarray(prev_params, dtype=float)
    k_prev, rem = divmod(prev_params.size, per_term * layers)
    if rem:
        raise ValueError("previous parameter vector does not match the layout")
    blocks = []
    for l in range(layers):
        old = prev_params[l * k_prev * per_term:(l + 1) * k_prev * per_term]
        blocks.append(np.concatenate([old, np.zeros(per_term)]))
    return np.concatenate(blocks)


def _new_term_mask(family: Family, n_qubits: int, layers: int, k_new: int) -> np.ndarray:
    """True at the parameter slots belonging to the newest selected term."""
    per_term = n_qubits + 1 if family is Family.QAOA_INSPIRED else 1
    mask = np.zeros(per_term * k_new * layers, dtype=bool)
    for l in range(layers):
        start = (l * k_new + (k_new - 1)) * per_term
        mask[start:start + per_term] = True
    return mask


def _evaluate_candidate(args) -> tuple[int, OptimizationResult]:
    h, family, layers, selected, candidate, x0, opt_config, freeze = args
    spec = AnsatzSpec(family, tuple(selected) + (candidate,), layers, h.n_qubits)
    mask = None
    if freeze and selected:
        mask = _new_term_mask(family, h.n_qubits, layers, len(selected) + 1)
    res = minimize(spec, h, opt_config, x0=x0, free_mask=mask)
    return candidate, res


def greedy_select(
    h: QubitHamiltonian,
    family: Family,
    layers: int = 1,
    target_gap: float = 1.6e-3,
    max_terms: int | None = None,
    config: SelectionConfig | None = None,
) -> SelectionHistory:
    """Grow the selection one term per round until the optimized energy
    is within target_gap of the exact ground energy or max_terms is hit."""
    if target_gap <= 0:
        raise ValueError("target_gap must be positive")
    config = config or SelectionConfig()
    max_terms = h.n_terms if max_terms is None else min(max_terms, h.n_terms)

    if config.exact_energy is not None:
        exact = float(config.exact_energy)
    else:
        exact = exact_ground(h).ground_energy

    rounds: list[SelectionRound] = []
    selected: tuple[int, ...] = ()
    prev_params = np.zeros(0)
    minimize_calls = 0
    converged = False

    while len(selected) < max_terms:
        candidates = eligible_candidates(h, family, selected, config.prune_diagonal)
        if not candidates:
            break
        x0 = extend_parameters(family, h.n_qubits, layers, prev_params)
        jobs = [
            (h, family, layers, selected, c, x0, config.optimizer, config.freeze_previous)
            for c in candidates
        ]
        if config.jobs > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=config.jobs) as ex:
                results = list(ex.map(_evaluate_candidate, jobs, chunksize=4))
        else:
            results = [_evaluate_candidate(j) for j in jobs]
        minimize_calls += len(results)

        best_candidate, best_res = results[0]
        for c, res in results[1:]:
            if res.best_energy < best_res.best_energy - _TIE_TOL or (
                abs(res.best_energy - best_res.best_energy) <= _TIE_TOL
                and c < best_candidate
            ):
                best_candidate, best_res = c, res

        selected = selected + (best_candidate,)
        prev_params = best_res.best_params
        gap = best_res.best_energy - exact
        rounds.append(
            SelectionRound(
                chosen_term_index=best_candidate,
                chosen_pauli=h.terms[best_candidate].pauli.word,
                best_energy=best_res.best_energy,
                energy_gap_to_exact=gap,
                candidates_evaluated=len(results),
                best_params=best_res.best_params,
            )
        )
        if gap <= target_gap:
            converged = True
            break

    return SelectionHistory(
        rounds=rounds,
        family=family,
        layers=layers,
        target_gap=target_gap,
        exact_energy=exact,
        converged=converged,
        minimize_calls=minimize_calls,
    )
