"""Lowering Pauli exponentials and whole ansaetze to elementary gates.

A weight-w term compiles to the standard pattern: per-qubit basis
changes (H for X, RX(pi/2) for Y), a CNOT ladder down the active qubits
in ascending index order, RZ(2*angle) on the last active qubit, the
mirrored ladder, and the inverse basis changes. That gives exactly
2*(#X + #Y) + 1 one-qubit and 2*(w-1) two-qubit gates.

Gate conventions: RZ(theta) = diag(e^{-i theta/2}, e^{+i theta/2}),
RX(theta) = exp(-i theta X / 2). Drive-Z rotations can be recorded as
software frame updates ('ZF') instead of RZ gates; frames simulate
identically but are excluded from gate counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .ansatz import AnsatzSpec, Family, resolved_terms
from .pauli import PauliString, QubitHamiltonian, weight
from .statevector import (
    StateVector,
    _apply_cnot_inplace,
    _apply_hadamard_inplace,
    _apply_x_rotation_inplace,
    _apply_z_rotation_inplace,
)


class EmptyTermError(ValueError):
    """All-identity strings generate only a global phase; nothing to compile."""


class CircuitFormatError(ValueError):
    pass


class GateCounts(NamedTuple):
    one_qubit: int
    two_qubit: int


@dataclass(frozen=True)
class Gate:
    kind: str                 # H | RX | RZ | CX | ZF
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in ("H", "RX", "RZ", "CX", "ZF"):
            raise CircuitFormatError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CX":
            if len(self.qubits) != 2:
                raise CircuitFormatError("CX takes (control, target)")
            if self.qubits[0] == self.qubits[1]:
                raise CircuitFormatError("CX control and target must differ")
        elif len(self.qubits) != 1:
            raise CircuitFormatError(f"{self.kind} takes a single qubit")
        if self.kind in ("RX", "RZ", "ZF") and self.angle is None:
            raise CircuitFormatError(f"{self.kind} needs an angle")


@dataclass(frozen=True)
class GateCircuit:
    n_qubits: int
    gates: tuple[Gate, ...]
    counts: GateCounts = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(q >= self.n_qubits or q < 0 for q in g.qubits):
                raise CircuitFormatError(
                    f"gate {g} touches a qubit outside 0..{self.n_qubits - 1}"
                )
        object.__setattr__(self, "counts", self.recount())

    def recount(self) -> GateCounts:
        """Counts derived from the gate list; frame updates are free."""
        one = sum(1 for g in self.gates if g.kind in ("H", "RX", "RZ"))
        two = sum(1 for g in self.gates if g.kind == "CX")
        return GateCounts(one, two)


def compile_pauli_exp(p: PauliString, angle: float) -> GateCircuit:
    """Circuit for exp(-i*angle*P); equals the direct exponential exactly
    (no global-phase slack)."""
    w = weight(p)
    if w == 0:
        raise EmptyTermError(f"cannot compile the identity string {p.word!r}")
    active = [k for k, c in enumerate(p.word) if c != "I"]
    pre: list[Gate] = []
    post: list[Gate] = []
    for k in active:
        c = p.word[k]
        if c == "X":
            pre.append(Gate("H", (k,)))
            post.append(Gate("H", (k,)))
        elif c == "Y":
            pre.append(Gate("RX", (k,), np.pi / 2))
            post.append(Gate("RX", (k,), -np.pi / 2))

    ladder = [Gate("CX", (active[i], active[i + 1])) for i in range(len(active) - 1)]
    gates = (
        pre
        + ladder
        + [Gate("RZ", (active[-1],), 2.0 * angle)]
        + ladder[::-1]
        + post[::-1]
    )
    return GateCircuit(p.n_qubits, tuple(gates))


def compile_ansatz(
    spec: AnsatzSpec,
    params: np.ndarray,
    h: QubitHamiltonian,
    z_in_software: bool = True,
) -> GateCircuit:
    """Concatenated per-(layer, term) blocks in state-preparation order.

    Drive-Z rotations become ZF frame updates when z_in_software is set
    (the hardware-frame convention) and RZ gates otherwise; only the
    latter contribute to gate counts.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (spec.parameter_count,):
        raise ValueError(
            f"expected {spec.parameter_count} parameters, got shape {params.shape}"
        )
    terms = resolved_terms(spec, h)
    drive_kind = "ZF" if z_in_software else "RZ"
    gates: list[Gate] = []
    off = 0
    for _ in range(spec.layers):
        for term in terms:
            if spec.family is Family.QAOA_INSPIRED:
                betas = params[off:off + spec.n_qubits]
                gamma = params[off + spec.n_qubits]
                off += spec.n_qubits + 1
                gates.extend(compile_pauli_exp(term, gamma).gates)
                for q in range(spec.n_qubits):
                    gates.append(Gate(drive_kind, (q,), 2.0 * betas[q]))
            else:
                gates.extend(compile_pauli_exp(term, params[off]).gates)
                off += 1
    return GateCircuit(spec.n_qubits, tuple(gates))


def formula_counts(family: Family, n_qubits: int, k_terms: int, layers: int) -> GateCounts:
    """Closed-form count bounds: (3N+1)KP / (2N+1)KP one-qubit and
    2(N-1)KP two-qubit; equalities hold when every term is all-X/Y."""
    n, k, p = n_qubits, k_terms, layers
    one = (3 * n + 1) * k * p if family is Family.QAOA_INSPIRED else (2 * n + 1) * k * p
    return GateCounts(one, 2 * (n - 1) * k * p)


def simulate_circuit(circuit: GateCircuit, start: StateVector) -> StateVector:
    """Apply the gates in order with the statevector kernels. Frame
    updates act as the Z rotations they stand for."""
    if start.n_qubits != circuit.n_qubits:
        raise ValueError(
            f"state has {start.n_qubits} qubits, circuit {circuit.n_qubits}"
        )
    amps = start.amplitudes.copy()
    n = circuit.n_qubits
    for g in circuit.gates:
        if g.kind == "H":
            _apply_hadamard_inplace(amps, n, g.qubits[0])
        elif g.kind == "RX":
            _apply_x_rotation_inplace(amps, n, g.qubits[0], g.angle)
        elif g.kind in ("RZ", "ZF"):
            # RZ(theta) = exp(-i theta Z / 2)
            _apply_z_rotation_inplace(amps, n, g.qubits[0], g.angle / 2.0)
        else:
            _apply_cnot_inplace(amps, n, g.qubits[0], g.qubits[1])
    return StateVector(amps, n)


# -- text export/import --------------------------------------------------------

def render_circuit(circuit: GateCircuit) -> str:
    """One gate per line: `H q`, `RX q angle`, `RZ q angle`, `CX c t`,
    plus `ZF q angle` for software frame updates; header `qubits N`.
    Angles carry 17 significant digits (lossless for doubles)."""
    lines = [f"qubits {circuit.n_qubits}"]
    for g in circuit.gates:
        if g.kind == "CX":
            lines.append(f"CX {g.qubits[0]} {g.qubits[1]}")
        elif g.kind == "H":
            lines.append(f"H {g.qubits[0]}")
        else:
            lines.append(f"{g.kind} {g.qubits[0]} {g.angle:.17g}")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> GateCircuit:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("qubits "):
        raise CircuitFormatError("circuit text must start with a 'qubits N' header")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise CircuitFormatError(f"bad header {lines[0]!r}") from exc
    gates = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        kind = parts[0]
        try:
            if kind == "H" and len(parts) == 2:
                gates.append(Gate("H", (int(parts[1]),)))
            elif kind in ("RX", "RZ", "ZF") and len(parts) == 3:
                gates.append(Gate(kind, (int(parts[1]),), float(parts[2])))
            elif kind == "CX" and len(parts) == 3:
                gates.append(Gate("CX", (int(parts[1]), int(parts[2]))))
            else:
                raise CircuitFormatError(f"line {i}: unrecognized gate line {ln!r}")
        except ValueError as exc:
            raise CircuitFormatError(f"line {i}: {exc}") from exc
    return GateCircuit(n, tuple(gates))
