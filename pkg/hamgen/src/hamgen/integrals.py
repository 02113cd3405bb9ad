"""One- and two-electron integrals over contracted Gaussians.

McMurchie-Davidson scheme: Cartesian Gaussian products are expanded in
Hermite Gaussians (coefficients E_t), Coulomb integrals reduce to
Hermite integrals R_tuv driven by the Boys function. Only s and p
functions are needed for STO-3G H/Li/O, but the recursions are general.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import gammainc, gammaln

from .basis import ContractedGaussian


def boys(n: int, x: float) -> float:
    """F_n(x) = int_0^1 t^{2n} exp(-x t^2) dt."""
    if x < 1e-12:
        return 1.0 / (2 * n + 1) - x / (2 * n + 3)
    a = n + 0.5
    # regularized lower incomplete gamma: gammainc(a, x) = P(a, x)
    return 0.5 * np.exp(gammaln(a)) * gammainc(a, x) / x**a


def hermite_coefs(i: int, j: int, qx: float, a: float, b: float) -> np.ndarray:
    """E_t^{ij} for t = 0..i+j (1D Hermite expansion of g_i(a,A) g_j(b,B),
    qx = Ax - Bx)."""
    p = a + b
    mu = a * b / p
    E = np.zeros((i + 1, j + 1, i + j + 1))
    E[0, 0, 0] = np.exp(-mu * qx * qx)
    for ii in range(1, i + 1):
        for t in range(ii + 1):
            val = 0.0
            if t > 0:
                val += E[ii - 1, 0, t - 1] / (2 * p)
            val += -(b / p) * qx * E[ii - 1, 0, t]
            if t + 1 <= ii - 1:
                val += (t + 1) * E[ii - 1, 0, t + 1]
            E[ii, 0, t] = val
    for ii in range(i + 1):
        for jj in range(1, j + 1):
            for t in range(ii + jj + 1):
                val = 0.0
                if t > 0:
                    val += E[ii, jj - 1, t - 1] / (2 * p)
                val += (a / p) * qx * E[ii, jj - 1, t]
                if t + 1 <= ii + jj - 1:
                    val += (t + 1) * E[ii, jj - 1, t + 1]
                E[ii, jj, t] = val
    return E[i, j]


def _bra_1d(a, la, ax, b, lb, bx):
    return hermite_coefs(la, lb, ax - bx, a, b)


def _overlap_prim(a, lmn1, A, b, lmn2, B) -> float:
    p = a + b
    s = (np.pi / p) ** 1.5
    for k in range(3):
        s *= _bra_1d(a, lmn1[k], A[k], b, lmn2[k], B[k])[0]
    return s


def _kinetic_prim(a, lmn1, A, b, lmn2, B) -> float:
    # 1D decomposition: T = sum_k t_k * prod_{k'!=k} s_k'
    p = a + b
    pre = (np.pi / p) ** 1.5
    s = []
    t = []
    for k in range(3):
        l1, l2 = lmn1[k], lmn2[k]
        s_k = _bra_1d(a, l1, A[k], b, l2, B[k])[0]
        term = -2.0 * b * b * _bra_1d(a, l1, A[k], b, l2 + 2, B[k])[0]
        term += b * (2 * l2 + 1) * s_k
        if l2 >= 2:
            term += -0.5 * l2 * (l2 - 1) * _bra_1d(a, l1, A[k], b, l2 - 2, B[k])[0]
        s.append(s_k)
        t.append(term)
    return pre * (t[0] * s[1] * s[2] + s[0] * t[1] * s[2] + s[0] * s[1] * t[2])


def _hermite_coulomb(t, u, v, n, p, PC):
    """R^n_{tuv}(p, PC) by downward recursion on t, u, v."""
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, p * float(PC @ PC))
    if t > 0:
        val = 0.0
        if t > 1:
            val += (t - 1) * _hermite_coulomb(t - 2, u, v, n + 1, p, PC)
        val += PC[0] * _hermite_coulomb(t - 1, u, v, n + 1, p, PC)
        return val
    if u > 0:
        val = 0.0
        if u > 1:
            val += (u - 1) * _hermite_coulomb(t, u - 2, v, n + 1, p, PC)
        val += PC[1] * _hermite_coulomb(t, u - 1, v, n + 1, p, PC)
        return val
    val = 0.0
    if v > 1:
        val += (v - 1) * _hermite_coulomb(t, u, v - 2, n + 1, p, PC)
    val += PC[2] * _hermite_coulomb(t, u, v - 1, n + 1, p, PC)
    return val


def _nuclear_prim(a, lmn1, A, b, lmn2, B, C) -> float:
    p = a + b
    P = (a * A + b * B) / p
    Ex = _bra_1d(a, lmn1[0], A[0], b, lmn2[0], B[0])
    Ey = _bra_1d(a, lmn1[1], A[1], b, lmn2[1], B[1])
    Ez = _bra_1d(a, lmn1[2], A[2], b, lmn2[2], B[2])
    val = 0.0
    for t in range(len(Ex)):
        for u in range(len(Ey)):
            for v in range(len(Ez)):
                val += Ex[t] * Ey[u] * Ez[v] * _hermite_coulomb(t, u, v, 0, p, P - C)
    return 2.0 * np.pi / p * val


def _eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    E1 = [_bra_1d(a, lmn1[k], A[k], b, lmn2[k], B[k]) for k in range(3)]
    E2 = [_bra_1d(c, lmn3[k], C[k], d, lmn4[k], D[k]) for k in range(3)]
    val = 0.0
    for t in range(len(E1[0])):
        for u in range(len(E1[1])):
            for v in range(len(E1[2])):
                c1 = E1[0][t] * E1[1][u] * E1[2][v]
                if c1 == 0.0:
                    continue
                for tt in range(len(E2[0])):
                    for uu in range(len(E2[1])):
                        for vv in range(len(E2[2])):
                            c2 = E2[0][tt] * E2[1][uu] * E2[2][vv]
                            if c2 == 0.0:
                                continue
                            val += (
                                c1
                                * c2
                                * (-1.0) ** (tt + uu + vv)
                                * _hermite_coulomb(t + tt, u + uu, v + vv, 0, alpha, P - Q)
                            )
    return val * 2.0 * np.pi**2.5 / (p * q * np.sqrt(p + q))


def _contract2(f, g1: ContractedGaussian, g2: ContractedGaussian) -> float:
    total = 0.0
    for a, ca in zip(g1.exponents, g1.coefficients):
        for b, cb in zip(g2.exponents, g2.coefficients):
            total += ca * cb * f(a, g1.lmn, g1.center, b, g2.lmn, g2.center)
    return total


def overlap(g1, g2) -> float:
    return _contract2(_overlap_prim, g1, g2)


def kinetic(g1, g2) -> float:
    return _contract2(_kinetic_prim, g1, g2)


def nuclear(g1, g2, C: np.ndarray) -> float:
    return _contract2(lambda *args: _nuclear_prim(*args, C), g1, g2)


def eri(g1, g2, g3, g4) -> float:
    total = 0.0
    for a, ca in zip(g1.exponents, g1.coefficients):
        for b, cb in zip(g2.exponents, g2.coefficients):
            for c, cc in zip(g3.exponents, g3.coefficients):
                for d, cd in zip(g4.exponents, g4.coefficients):
                    total += ca * cb * cc * cd * _eri_prim(
                        a, g1.lmn, g1.center,
                        b, g2.lmn, g2.center,
                        c, g3.lmn, g3.center,
                        d, g4.lmn, g4.center,
                    )
    return total


def integral_tables(aos, atoms_charges):
    """S, T, V matrices and the full (pq|rs) tensor (chemist notation).

    atoms_charges: list of (Z, xyz_bohr).
    """
    n = len(aos)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = overlap(aos[i], aos[j])
            T[i, j] = T[j, i] = kinetic(aos[i], aos[j])
            v = 0.0
            for Z, C in atoms_charges:
                v -= Z * nuclear(aos[i], aos[j], np.asarray(C, float))
            V[i, j] = V[j, i] = v

    G = np.zeros((n, n, n, n))
    # 8-fold permutational symmetry of real orbitals
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if ij < kl:
                        continue
                    val = eri(aos[i], aos[j], aos[k], aos[l])
                    for a, b in ((i, j), (j, i)):
                        for c, d in ((k, l), (l, k)):
                            G[a, b, c, d] = val
                            G[c, d, a, b] = val
    return S, T, V, G
