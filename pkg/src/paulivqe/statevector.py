"""Dense 2^N statevector simulation.

Amplitudes are stored as a flat complex128 array indexed by basis
integer; bit k of the index is qubit k. A Pauli string acts as a pairing
permutation of basis indices (bit flips on its X/Y positions) with
phases +-1, +-i, so exp(-i*angle*P) = cos(angle)*I - i*sin(angle)*P is
applied with one gather and one fused multiply per amplitude, never
materializing a 2^N x 2^N matrix.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .pauli import PauliString, QubitHamiltonian

MAX_QUBITS = 24  # desk-scale guard: 2^24 complex amplitudes = 256 MiB


class StateVector:
    """Unit-norm vector of 2^n_qubits complex amplitudes."""

    __slots__ = ("amplitudes", "n_qubits")

    def __init__(self, amplitudes: np.ndarray, n_qubits: int):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if n_qubits < 1 or n_qubits > MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
        if amplitudes.shape != (2**n_qubits,):
            raise ValueError(
                f"expected {2**n_qubits} amplitudes, got shape {amplitudes.shape}"
            )
        self.amplitudes = amplitudes
        self.n_qubits = n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.n_qubits)

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits})"


def prepare_basis_state(bitstring: str) -> StateVector:
    """Computational-basis state; bit k of the string sets qubit k."""
    n = len(bitstring)
    if n < 1:
        raise ValueError("empty bitstring")
    if set(bitstring) - {"0", "1"}:
        raise ValueError(f"bitstring {bitstring!r} must be over {{0,1}}")
    index = sum(1 << k for k, b in enumerate(bitstring) if b == "1")
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps, n)


def _compute_pauli_phases(word: str) -> np.ndarray:
    p = PauliString(word)
    dim = 1 << p.n_qubits
    idx = np.arange(dim, dtype=np.uint64)
    src = idx ^ np.uint64(p.x_mask)
    signs = np.bitwise_count(src & np.uint64(p.zy_mask)).astype(np.int64)
    phases = np.where(signs & 1, -1.0, 1.0).astype(np.complex128)
    phases *= (1j) ** (p.y_count % 4)
    return phases


_cached_pauli_phases = lru_cache(maxsize=4096)(_compute_pauli_phases)


def _pauli_phases(word: str) -> np.ndarray:
    """Per-index phase of P: (P psi)[j] = phases[j] * psi[j ^ flip].

    phases[j] = i^{#Y} * (-1)^{popcount((j ^ flip) & (Z|Y mask))}.
    Cached for words up to 16 qubits; larger arrays are recomputed to
    bound the cache's memory.
    """
    if len(word) <= 16:
        return _cached_pauli_phases(word)
    return _compute_pauli_phases(word)


def apply_pauli(state: StateVector, p: PauliString) -> StateVector:
    """P|psi> for a bare Pauli string (used by expectation and oracles)."""
    if p.n_qubits != state.n_qubits:
        raise ValueError(
            f"Pauli acts on {p.n_qubits} qubits, state has {state.n_qubits}"
        )
    out = np.empty_like(state.amplitudes)
    _apply_pauli_into(out, state.amplitudes, p)
    return StateVector(out, state.n_qubits)


def _apply_pauli_into(out: np.ndarray, amps: np.ndarray, p: PauliString) -> None:
    phases = _pauli_phases(p.word)
    if p.x_mask:
        idx = np.arange(amps.size, dtype=np.uint64) ^ np.uint64(p.x_mask)
        np.take(amps, idx.astype(np.intp), out=out)
        out *= phases
    else:
        np.multiply(amps, phases, out=out)


def apply_pauli_exp(state: StateVector, p: PauliString, angle: float) -> StateVector:
    """exp(-i*angle*P)|psi> = cos(angle)|psi> - i sin(angle) P|psi>."""
    if p.n_qubits != state.n_qubits:
        raise ValueError(
            f"Pauli acts on {p.n_qubits} qubits, state has {state.n_qubits}"
        )
    out = state.amplitudes.copy()
    _apply_pauli_exp_inplace(out, p, angle)
    return StateVector(out, state.n_qubits)


def _apply_pauli_exp_inplace(amps: np.ndarray, p: PauliString, angle: float) -> None:
    if angle == 0.0:
        return
    c = np.cos(angle)
    s = np.sin(angle)
    phases = _pauli_phases(p.word)
    if p.x_mask:
        idx = np.arange(amps.size, dtype=np.uint64) ^ np.uint64(p.x_mask)
        flipped = amps[idx.astype(np.intp)]
        amps *= c
        amps += (-1j * s) * phases * flipped
    else:
        amps *= c + (-1j * s) * phases


def apply_z_rotation(state: StateVector, qubit: int, angle: float) -> StateVector:
    """exp(-i*angle*Z_q): bit(q)=0 amplitudes pick up e^{-i angle}, bit=1 e^{+i angle}."""
    out = state.amplitudes.copy()
    _apply_z_rotation_inplace(out, state.n_qubits, qubit, angle)
    return StateVector(out, state.n_qubits)


def _apply_z_rotation_inplace(amps: np.ndarray, n_qubits: int, qubit: int, angle: float) -> None:
    if not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {n_qubits} qubits")
    if angle == 0.0:
        return
    view = amps.reshape(-1, 2, 1 << qubit)
    view[:, 0, :] *= np.exp(-1j * angle)
    view[:, 1, :] *= np.exp(+1j * angle)


# -- elementary-gate kernels (used by the circuit simulator) -----------------

def apply_hadamard(state: StateVector, qubit: int) -> StateVector:
    out = state.amplitudes.copy()
    _apply_hadamard_inplace(out, state.n_qubits, qubit)
    return StateVector(out, state.n_qubits)


def _apply_hadamard_inplace(amps: np.ndarray, n_qubits: int, qubit: int) -> None:
    if not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {n_qubits} qubits")
    view = amps.reshape(-1, 2, 1 << qubit)
    a = view[:, 0, :].copy()
    b = view[:, 1, :]
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    view[:, 0, :] = (a + b) * inv_sqrt2
    view[:, 1, :] = (a - b) * inv_sqrt2


def apply_x_rotation(state: StateVector, qubit: int, angle: float) -> StateVector:
    """RX(angle) = exp(-i*angle*X/2)."""
    out = state.amplitudes.copy()
    _apply_x_rotation_inplace(out, state.n_qubits, qubit, angle)
    return StateVector(out, state.n_qubits)


def _apply_x_rotation_inplace(amps: np.ndarray, n_qubits: int, qubit: int, angle: float) -> None:
    if not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {n_qubits} qubits")
    c = np.cos(angle / 2.0)
    s = -1j * np.sin(angle / 2.0)
    view = amps.reshape(-1, 2, 1 << qubit)
    a = view[:, 0, :].copy()
    b = view[:, 1, :]
    view[:, 0, :] = c * a + s * b
    view[:, 1, :] = s * a + c * b


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    out = state.amplitudes.copy()
    _apply_cnot_inplace(out, state.n_qubits, control, target)
    return StateVector(out, state.n_qubits)


def _apply_cnot_inplace(amps: np.ndarray, n_qubits: int, control: int, target: int) -> None:
    for q in (control, target):
        if not 0 <= q < n_qubits:
            raise ValueError(f"qubit {q} out of range for {n_qubits} qubits")
    if control == target:
        raise ValueError("control and target must differ")
    idx = np.arange(amps.size, dtype=np.uint64)
    sel = (idx >> np.uint64(control)) & np.uint64(1) == 1
    flipped = (idx[sel] ^ np.uint64(1 << target)).astype(np.intp)
    amps[sel] = amps[flipped]


# -- energy expectation -------------------------------------------------------

class EnergyEvaluator:
    """Precomputed <psi|H|psi> / H|psi> kernel for one Hamiltonian.

    Terms sharing a bit-flip mask are folded into a single per-index
    coefficient array, so one evaluation costs (distinct masks) * 2^N
    instead of M * 2^N. Summation order is fixed by first appearance of
    each mask in the term list, keeping results bit-stable.
    """

    def __init__(self, h: QubitHamiltonian):
        self.n_qubits = h.n_qubits
        self.dim = 1 << h.n_qubits
        groups: dict[int, np.ndarray] = {}
        order: list[int] = []
        for t in h.terms:
            f = t.pauli.x_mask
            acc = groups.get(f)
            if acc is None:
                acc = np.zeros(self.dim, dtype=np.complex128)
                groups[f] = acc
                order.append(f)
            acc += t.coeff * _pauli_phases(t.pauli.word)
        idx = np.arange(self.dim, dtype=np.uint64)
        if not order:  # empty Hamiltonian acts as zero
            order = [0]
            groups[0] = np.zeros(self.dim, dtype=np.complex128)
        # stacked (group, index) arrays: one gather + one reduction per call
        self._coeffs = np.stack([groups[f] for f in order])
        self._perms = np.stack([(idx ^ np.uint64(f)).astype(np.intp) for f in order])
        self._scratch = np.empty_like(self._coeffs)

    def apply(self, amps: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
        """H|psi> as a raw amplitude array (matrix-free matvec)."""
        np.take(amps, self._perms, out=self._scratch)
        self._scratch *= self._coeffs
        return np.sum(self._scratch, axis=0, out=out)

    def expectation(self, state: StateVector) -> float:
        if state.n_qubits != self.n_qubits:
            raise ValueError(
                f"state has {state.n_qubits} qubits, Hamiltonian {self.n_qubits}"
            )
        amps = state.amplitudes
        np.take(amps, self._perms, out=self._scratch)
        self._scratch *= self._coeffs
        total = self._scratch.sum(axis=0) @ np.conj(amps)
        if abs(total.imag) > 1e-10:
            raise ArithmeticError(
                f"expectation has non-negligible imaginary part {total.imag:.3e}"
            )
        return float(total.real)


@lru_cache(maxsize=64)
def _evaluator_for(key: tuple) -> EnergyEvaluator:
    n_qubits, terms = key
    h = QubitHamiltonian.from_terms("_kernel", n_qubits, [(c, w) for c, w in terms], "0" * n_qubits)
    return EnergyEvaluator(h)


def evaluator(h: QubitHamiltonian) -> EnergyEvaluator:
    """Shared, cached evaluator for h (keyed on operator content)."""
    return _evaluator_for(h.cache_key())


def expectation(state: StateVector, h: QubitHamiltonian) -> float:
    """sum_j h_j <psi|H_j|psi>; asserts the imaginary part is < 1e-10."""
    return evaluator(h).expectation(state)
