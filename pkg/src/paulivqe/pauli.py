"""Pauli-string and Hamiltonian data model.

A Pauli string is a word over {I, X, Y, Z}; character k acts on qubit k,
and qubit 0 is the least-significant bit of a basis-state index. This
convention is shared by every module in the package and by the on-disk
Hamiltonian format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

_VALID_CHARS = frozenset("IXYZ")


class PauliParseError(ValueError):
    """Raised when a Pauli word contains characters outside {I,X,Y,Z}."""


class NotSubstitutableError(ValueError):
    """Raised when a term with no X or Y symbol is given to xy_substitute."""


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Pauli operators, one per qubit."""

    word: str

    def __post_init__(self):
        if not self.word:
            raise PauliParseError("empty Pauli word")
        for k, c in enumerate(self.word):
            if c not in _VALID_CHARS:
                raise PauliParseError(
                    f"invalid Pauli character {c!r} at position {k} in {self.word!r}"
                )

    @property
    def n_qubits(self) -> int:
        return len(self.word)

    @cached_property
    def x_mask(self) -> int:
        """Bit k set iff qubit k carries X or Y (a bit-flip position)."""
        m = 0
        for k, c in enumerate(self.word):
            if c in ("X", "Y"):
                m |= 1 << k
        return m

    @cached_property
    def zy_mask(self) -> int:
        """Bit k set iff qubit k carries Z or Y (a sign position)."""
        m = 0
        for k, c in enumerate(self.word):
            if c in ("Z", "Y"):
                m |= 1 << k
        return m

    @cached_property
    def y_count(self) -> int:
        return self.word.count("Y")

    def __str__(self) -> str:
        return self.word

    def __iter__(self):
        return iter(self.word)


def parse_pauli(text: str) -> PauliString:
    """Parse a word over {I,X,Y,Z}; character k acts on qubit k."""
    if not isinstance(text, str):
        raise PauliParseError(f"expected a string, got {type(text).__name__}")
    return PauliString(text)


def render_pauli(p: PauliString) -> str:
    return p.word


def weight(p: PauliString) -> int:
    """Number of non-identity symbols in the string."""
    return p.n_qubits - p.word.count("I")


def xy_substitute(p: PauliString) -> PauliString:
    """Swap exactly one X<->Y: the lowest-index X becomes Y, or if the
    string has no X, the lowest-index Y becomes X.

    The swapped string generates the unitary used by the imaginary-time
    trial-state family; strings with only I and Z symbols have no such
    partner and raise NotSubstitutableError.
    """
    i = p.word.find("X")
    if i >= 0:
        return PauliString(p.word[:i] + "Y" + p.word[i + 1:])
    i = p.word.find("Y")
    if i >= 0:
        return PauliString(p.word[:i] + "X" + p.word[i + 1:])
    raise NotSubstitutableError(
        f"{p.word!r} contains only I and Z symbols; no X<->Y swap exists"
    )


def is_substitutable(p: PauliString) -> bool:
    return ("X" in p.word) or ("Y" in p.word)


@dataclass(frozen=True)
class WeightedTerm:
    """One Hamiltonian term: a real coefficient (Hartree) times a Pauli string."""

    coeff: float
    pauli: PauliString

    def __post_init__(self):
        c = float(self.coeff)
        if c != c or c in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite coefficient {self.coeff!r}")
        object.__setattr__(self, "coeff", c)


@dataclass(frozen=True, eq=False)
class QubitHamiltonian:
    """Weighted sum of Pauli terms plus the Hartree-Fock start bitstring.

    Terms keep their load order. Identity with other instances is by
    object, but `same_content` gives field-wise comparison for
    round-trip checks.
    """

    name: str
    n_qubits: int
    terms: tuple[WeightedTerm, ...]
    hf_bitstring: str
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        object.__setattr__(self, "terms", tuple(self.terms))
        seen = set()
        for t in self.terms:
            if t.pauli.n_qubits != self.n_qubits:
                raise ValueError(
                    f"term {t.pauli.word!r} acts on {t.pauli.n_qubits} qubits, "
                    f"Hamiltonian has {self.n_qubits}"
                )
            if t.pauli.word in seen:
                raise ValueError(f"duplicate Pauli term {t.pauli.word!r}")
            seen.add(t.pauli.word)
        if len(self.hf_bitstring) != self.n_qubits:
            raise ValueError(
                f"hf_bitstring length {len(self.hf_bitstring)} != n_qubits {self.n_qubits}"
            )
        if set(self.hf_bitstring) - {"0", "1"}:
            raise ValueError(f"hf_bitstring {self.hf_bitstring!r} must be over {{0,1}}")

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def cache_key(self) -> tuple:
        """Hashable identity of the operator content (not name/metadata)."""
        return (self.n_qubits, tuple((t.coeff, t.pauli.word) for t in self.terms))

    def same_content(self, other: "QubitHamiltonian") -> bool:
        return (
            self.name == other.name
            and self.n_qubits == other.n_qubits
            and self.terms == other.terms
            and self.hf_bitstring == other.hf_bitstring
            and dict(self.metadata) == dict(other.metadata)
        )

    @classmethod
    def from_terms(
        cls,
        name: str,
        n_qubits: int,
        terms: Iterable[tuple[float, str]],
        hf_bitstring: str,
        metadata: Optional[Mapping[str, object]] = None,
    ) -> "QubitHamiltonian":
        """Build from (coeff, word) pairs, merging duplicate words by
        summing their coefficients (tolerant of generator output)."""
        merged: dict[str, float] = {}
        order: list[str] = []
        for coeff, word in terms:
            if word not in merged:
                merged[word] = 0.0
                order.append(word)
            merged[word] += float(coeff)
        tt = tuple(WeightedTerm(merged[w], parse_pauli(w)) for w in order)
        return cls(name, n_qubits, tt, hf_bitstring, dict(metadata or {}))
