"""The two trial-state families, as parameterized statevector programs.

Both start from the Hartree-Fock basis state and apply one block per
(layer, selected term), layer 1 first:

  qaoa family: the problem-term exponential exp(-i gamma H_j), then N
    drive-Z rotations (one beta per qubit);
  imag family: exp(-i gamma H'_j) only, where H'_j is the term with one
    X<->Y swap.

The drive rotations must follow the term exponential: applied to a
computational-basis state they are only a global phase, and for a real
Hamiltonian the -i*sin(gamma) amplitude produced by the term would then
never couple back into the energy, pinning the whole family at the
Hartree-Fock point. Placed after the term they set the relative phase
that turns that amplitude into real mixing (the two-qubit solution has
beta_1 - beta_2 = pi/4 for exactly this reason).

Parameter layout is canonical: layers outermost, then terms in selection
order; the qaoa family emits beta_(l,j,0..N-1) then gamma_(l,j), the
imag family gamma_(l,j) alone. Lengths are (N+1)*K*P and K*P.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pauli import PauliString, QubitHamiltonian, is_substitutable, xy_substitute
from .statevector import (
    StateVector,
    _apply_pauli_exp_inplace,
    _apply_z_rotation_inplace,
    prepare_basis_state,
)


class Family(enum.Enum):
    QAOA_INSPIRED = "qaoa"
    IMAG_TIME = "imag"

    @classmethod
    def parse(cls, label: str) -> "Family":
        for f in cls:
            if label in (f.value, f.name):
                return f
        raise ValueError(f"unknown family {label!r}; use 'qaoa' or 'imag'")


class LayoutError(ValueError):
    """Parameter vector length does not match the spec's canonical layout."""


@dataclass(frozen=True)
class AnsatzSpec:
    family: Family
    selected: tuple[int, ...]
    layers: int
    n_qubits: int

    def __post_init__(self):
        object.__setattr__(self, "selected", tuple(int(i) for i in self.selected))
        if self.layers < 1:
            raise ValueError("layers must be >= 1")
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        if len(set(self.selected)) != len(self.selected):
            raise ValueError(f"selected indices must be distinct: {self.selected}")
        if any(i < 0 for i in self.selected):
            raise ValueError("selected indices must be non-negative")

    @property
    def params_per_term(self) -> int:
        return self.n_qubits + 1 if self.family is Family.QAOA_INSPIRED else 1

    @property
    def parameter_count(self) -> int:
        return self.params_per_term * len(self.selected) * self.layers


def parameter_count(spec: AnsatzSpec) -> int:
    """(N+1)*K*P for the qaoa family, K*P for the imag family."""
    return spec.parameter_count


def zero_parameters(spec: AnsatzSpec) -> np.ndarray:
    return np.zeros(spec.parameter_count)


@lru_cache(maxsize=256)
def _resolved_terms(spec: AnsatzSpec, h_key: tuple) -> tuple[PauliString, ...]:
    """Pauli string applied for each selected index (substituted once and
    cached for the imag family)."""
    n_qubits, terms = h_key
    if spec.n_qubits != n_qubits:
        raise ValueError(
            f"spec has {spec.n_qubits} qubits, Hamiltonian {n_qubits}"
        )
    out = []
    for idx in spec.selected:
        if idx >= len(terms):
            raise IndexError(
                f"selected index {idx} out of range for {len(terms)} terms"
            )
        p = PauliString(terms[idx][1])
        if spec.family is Family.IMAG_TIME:
            if not is_substitutable(p):
                raise ValueError(
                    f"term {p.word!r} (index {idx}) has no X or Y symbol and "
                    "cannot enter the imaginary-time family"
                )
            p = xy_substitute(p)
        out.append(p)
    return tuple(out)


def resolved_terms(spec: AnsatzSpec, h: QubitHamiltonian) -> tuple[PauliString, ...]:
    return _resolved_terms(spec, h.cache_key())


def build_state(
    spec: AnsatzSpec,
    params: np.ndarray,
    h: QubitHamiltonian,
    workspace: np.ndarray | None = None,
) -> StateVector:
    """Prepare the trial state for the given parameter vector.

    `workspace` may supply a reusable amplitude buffer (2^N complex); the
    returned StateVector aliases it in that case.
    """
    params = np.asarray(params, dtype=float)
    expected = spec.parameter_count
    if params.shape != (expected,):
        raise LayoutError(
            f"expected {expected} parameters for {spec.family.value} "
            f"K={len(spec.selected)} P={spec.layers} N={spec.n_qubits}, "
            f"got shape {params.shape}"
        )
    terms = resolved_terms(spec, h)

    start = prepare_basis_state(h.hf_bitstring)
    if workspace is None:
        amps = start.amplitudes
    else:
        if workspace.shape != start.amplitudes.shape:
            raise ValueError("workspace has wrong shape")
        np.copyto(workspace, start.amplitudes)
        amps = workspace

    n = spec.n_qubits
    off = 0
    for _ in range(spec.layers):
        for term in terms:
            if spec.family is Family.QAOA_INSPIRED:
                betas = params[off:off + n]
                gamma = params[off + n]
                off += n + 1
                _apply_pauli_exp_inplace(amps, term, gamma)
                for q in range(n):
                    _apply_z_rotation_inplace(amps, n, q, betas[q])
            else:
                _apply_pauli_exp_inplace(amps, term, params[off])
                off += 1
    return StateVector(amps, n)
