"""Fermion-to-qubit mapping: parity encoding with two-qubit reduction.

Spin orbitals are ordered block-wise (all alpha modes, then all beta).
Qubit j of the unreduced register stores the cumulative occupation
parity of modes 0..j, so qubit n_act-1 carries the alpha-count parity
and qubit 2*n_act-1 the total parity. Both are conserved, every mapped
term acts on them as I or Z, and they are removed by substituting the
eigenvalue fixed by the particle numbers.

Pauli words are (x_mask, z_mask) pairs; bit k of a mask is mode/qubit k
and the identity is (0, 0).
"""

from __future__ import annotations

import numpy as np

# site code c = x + 2z: I=0, X=1, Z=2, Y=3; _PHASE[c1][c2] = k with A*B = i^k * C
_PHASE = (
    (0, 0, 0, 0),
    (0, 0, 3, 1),
    (0, 1, 0, 3),
    (0, 3, 1, 0),
)
_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


def _word_mul(x1: int, z1: int, x2: int, z2: int) -> tuple[int, int, complex]:
    both = (x1 | z1) & (x2 | z2)
    k = 0
    while both:
        bit = both & -both
        i = bit.bit_length() - 1
        c1 = ((x1 >> i) & 1) + 2 * ((z1 >> i) & 1)
        c2 = ((x2 >> i) & 1) + 2 * ((z2 >> i) & 1)
        k += _PHASE[c1][c2]
        both ^= bit
    return x1 ^ x2, z1 ^ z2, _I_POW[k & 3]


class PauliOp:
    """Sparse complex combination of Pauli words."""

    __slots__ = ("n_modes", "words")

    def __init__(self, n_modes: int, words: dict[tuple[int, int], complex] | None = None):
        self.n_modes = n_modes
        self.words = words or {}

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        out: dict[tuple[int, int], complex] = {}
        for (x1, z1), c1 in self.words.items():
            for (x2, z2), c2 in other.words.items():
                x, z, ph = _word_mul(x1, z1, x2, z2)
                key = (x, z)
                val = out.get(key, 0.0) + c1 * c2 * ph
                if val == 0.0:
                    out.pop(key, None)
                else:
                    out[key] = val
        return PauliOp(self.n_modes, out)

    def add_scaled(self, other: "PauliOp", scale: complex) -> None:
        for key, c in other.words.items():
            val = self.words.get(key, 0.0) + scale * c
            if val == 0.0:
                self.words.pop(key, None)
            else:
                self.words[key] = val


def lowering(j: int, n_modes: int) -> PauliOp:
    """a_j = 1/2 (Z_{j-1} X_j + i Y_j) (X chain on modes > j)."""
    chain = 0
    for k in range(j + 1, n_modes):
        chain |= 1 << k
    zprev = (1 << (j - 1)) if j > 0 else 0
    return PauliOp(n_modes, {
        (chain | (1 << j), zprev): 0.5,
        (chain | (1 << j), 1 << j): 0.5j,
    })


def raising(j: int, n_modes: int) -> PauliOp:
    """a+_j = 1/2 (Z_{j-1} X_j - i Y_j) (X chain on modes > j)."""
    chain = 0
    for k in range(j + 1, n_modes):
        chain |= 1 << k
    zprev = (1 << (j - 1)) if j > 0 else 0
    return PauliOp(n_modes, {
        (chain | (1 << j), zprev): 0.5,
        (chain | (1 << j), 1 << j): -0.5j,
    })


def spin_orbital_hamiltonian(h_eff: np.ndarray, g_act: np.ndarray, scalar: float) -> PauliOp:
    """Map sum_pq h_pq a+_p a_q + 1/2 sum (pq|rs) a+_p a+_r a_s a_q + scalar
    (chemist-notation integrals, spatial indices, closed-shell spin sum)."""
    n_sp = h_eff.shape[0]
    n_modes = 2 * n_sp
    acc = PauliOp(n_modes, {(0, 0): complex(scalar)})

    raise_ops = [raising(j, n_modes) for j in range(n_modes)]
    lower_ops = [lowering(j, n_modes) for j in range(n_modes)]

    for p in range(n_sp):
        for q in range(n_sp):
            hpq = h_eff[p, q]
            if abs(hpq) < 1e-14:
                continue
            for sp in (0, 1):
                op = raise_ops[p + sp * n_sp] * lower_ops[q + sp * n_sp]
                acc.add_scaled(op, hpq)

    for p in range(n_sp):
        for q in range(n_sp):
            for r in range(n_sp):
                for s in range(n_sp):
                    gv = g_act[p, q, r, s]
                    if abs(gv) < 1e-14:
                        continue
                    for sp in (0, 1):
                        for tp in (0, 1):
                            op = raise_ops[p + sp * n_sp] * raise_ops[r + tp * n_sp]
                            op = op * lower_ops[s + tp * n_sp]
                            op = op * lower_ops[q + sp * n_sp]
                            acc.add_scaled(op, 0.5 * gv)
    return acc


def number_operator(modes: list[int], n_modes: int) -> PauliOp:
    acc = PauliOp(n_modes, {})
    for j in modes:
        acc.add_scaled(raising(j, n_modes) * lowering(j, n_modes), 1.0)
    return acc


class ReductionError(RuntimeError):
    pass


def two_qubit_reduce(op: PauliOp, n_alpha: int, n_beta: int) -> PauliOp:
    """Remove the alpha-parity and total-parity qubits, substituting
    their Z eigenvalues (-1)^n_alpha and (-1)^(n_alpha+n_beta)."""
    n_modes = op.n_modes
    n_sp = n_modes // 2
    r1, r2 = n_sp - 1, n_modes - 1
    sign_alpha = -1.0 if n_alpha % 2 else 1.0
    sign_total = -1.0 if (n_alpha + n_beta) % 2 else 1.0

    low = (1 << r1) - 1
    mid_bits = r2 - r1 - 1
    mid = ((1 << mid_bits) - 1) << (r1 + 1)

    def compact(m: int) -> int:
        return (m & low) | (((m & mid) >> (r1 + 1)) << r1)

    out: dict[tuple[int, int], complex] = {}
    for (x, z), c in op.words.items():
        if (x >> r1) & 1 or (x >> r2) & 1:
            raise ReductionError(
                "term acts off-diagonally on a parity-symmetry qubit; "
                "operator does not conserve the required parities"
            )
        if (z >> r1) & 1:
            c = c * sign_alpha
        if (z >> r2) & 1:
            c = c * sign_total
        key = (compact(x), compact(z))
        val = out.get(key, 0.0) + c
        if val == 0.0:
            out.pop(key, None)
        else:
            out[key] = val
    return PauliOp(n_modes - 2, out)


def parity_bitstring(occupations: list[int]) -> list[int]:
    bits = []
    acc = 0
    for f in occupations:
        acc ^= int(f)
        bits.append(acc)
    return bits


def reduced_hf_bitstring(n_sp: int, n_alpha: int, n_beta: int) -> str:
    occ = [1] * n_alpha + [0] * (n_sp - n_alpha) + [1] * n_beta + [0] * (n_sp - n_beta)
    bits = parity_bitstring(occ)
    del bits[2 * n_sp - 1]
    del bits[n_sp - 1]
    return "".join(str(b) for b in bits)


def word_to_string(x: int, z: int, n_qubits: int) -> str:
    chars = []
    for k in range(n_qubits):
        xb = (x >> k) & 1
        zb = (z >> k) & 1
        chars.append("IXZY"[xb + 2 * zb])
    return "".join(chars)


def op_to_real_terms(op: PauliOp, chop: float = 1e-10) -> list[tuple[float, str]]:
    """Hermitian Pauli-sum as (real coeff, word string), dropping |c| < chop.

    Order: descending |coeff|, ties by word, so output is deterministic.
    """
    terms = []
    for (x, z), c in op.words.items():
        if abs(c.imag) > 1e-9:
            raise ReductionError(f"non-real coefficient {c!r} in Hermitian operator")
        if abs(c.real) < chop:
            continue
        terms.append((float(c.real), word_to_string(x, z, op.n_modes)))
    terms.sort(key=lambda t: (-abs(t[0]), t[1]))
    return terms


def dense_from_terms(terms: list[tuple[float, str]]) -> np.ndarray:
    """Dense matrix of a real Pauli-sum (qubit 0 = least-significant bit)."""
    n = len(terms[0][1])
    dim = 1 << n
    idx = np.arange(dim, dtype=np.uint64)
    H = np.zeros((dim, dim), dtype=complex)
    for coeff, word in terms:
        x = z = 0
        ycount = 0
        for k, ch in enumerate(word):
            if ch in "XY":
                x |= 1 << k
            if ch in "ZY":
                z |= 1 << k
            if ch == "Y":
                ycount += 1
        src = idx ^ np.uint64(x)
        signs = np.bitwise_count(src & np.uint64(z)).astype(np.int64)
        phases = np.where(signs & 1, -1.0, 1.0).astype(complex) * (1j) ** (ycount % 4)
        H[idx.astype(np.intp), src.astype(np.intp)] += coeff * phases
    return H
