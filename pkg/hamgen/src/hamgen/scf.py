"""Restricted Hartree-Fock and the frozen-core active-space reduction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SCFError(RuntimeError):
    pass


@dataclass
class RHFResult:
    energy: float            # total electronic + nuclear energy (Hartree)
    e_nuclear: float
    mo_coefficients: np.ndarray   # AO x MO
    mo_energies: np.ndarray
    n_occupied: int


def nuclear_repulsion(atoms_charges) -> float:
    e = 0.0
    for i in range(len(atoms_charges)):
        zi, ri = atoms_charges[i]
        for j in range(i):
            zj, rj = atoms_charges[j]
            e += zi * zj / np.linalg.norm(np.asarray(ri) - np.asarray(rj))
    return e


def restricted_hartree_fock(
    S, T, V, G, n_electrons: int, e_nuclear: float,
    max_cycles: int = 200, conv: float = 1e-12, diis_depth: int = 8,
) -> RHFResult:
    """Closed-shell SCF with DIIS acceleration."""
    if n_electrons % 2:
        raise SCFError("restricted HF needs an even electron count")
    n_occ = n_electrons // 2
    h = T + V

    s_vals, s_vecs = np.linalg.eigh(S)
    if s_vals.min() < 1e-10:
        raise SCFError("AO overlap is numerically singular")
    X = s_vecs @ np.diag(s_vals**-0.5) @ s_vecs.T

    def fock(D):
        J = np.einsum("pqrs,rs->pq", G, D)
        K = np.einsum("prqs,rs->pq", G, D)
        return h + J - 0.5 * K

    def density(F):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :n_occ]
        return 2.0 * Cocc @ Cocc.T, eps, C

    D, _, _ = density(h)
    energy = 0.0
    errs: list[np.ndarray] = []
    focks: list[np.ndarray] = []
    for _ in range(max_cycles):
        F = fock(D)
        err = F @ D @ S - S @ D @ F
        errs.append(err)
        focks.append(F)
        if len(errs) > diis_depth:
            errs.pop(0)
            focks.pop(0)
        if len(errs) > 1:
            m = len(errs)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    B[i, j] = np.vdot(errs[i], errs[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * Fi for wi, Fi in zip(w, focks))
            except np.linalg.LinAlgError:
                pass
        D_new, eps, C = density(F)
        e_new = 0.5 * np.einsum("pq,pq->", D_new, h + fock(D_new)) + e_nuclear
        if abs(e_new - energy) < conv and np.max(np.abs(D_new - D)) < 1e-8:
            return RHFResult(float(e_new), e_nuclear, C, eps, n_occ)
        D, energy = D_new, e_new
    raise SCFError(f"SCF did not converge in {max_cycles} cycles (last E={energy:.10f})")


def mo_integrals(h_ao, G_ao, C):
    """AO -> MO transform of the core Hamiltonian and (pq|rs)."""
    h = C.T @ h_ao @ C
    g = np.einsum("pi,pqrs->iqrs", C, G_ao, optimize=True)
    g = np.einsum("qj,iqrs->ijrs", C, g, optimize=True)
    g = np.einsum("rk,ijrs->ijks", C, g, optimize=True)
    g = np.einsum("sl,ijks->ijkl", C, g, optimize=True)
    return h, g


def freeze_core(h_mo, g_mo, n_frozen: int):
    """Fold the lowest n_frozen doubly-occupied MOs into a scalar shift
    and an effective one-body term over the remaining orbitals.

    Returns (core_energy_shift, h_eff, g_active); the shift excludes
    nuclear repulsion.
    """
    f = list(range(n_frozen))
    shift = 0.0
    for i in f:
        shift += 2.0 * h_mo[i, i]
        for j in f:
            shift += 2.0 * g_mo[i, i, j, j] - g_mo[i, j, j, i]
    act = list(range(n_frozen, h_mo.shape[0]))
    h_eff = np.zeros((len(act), len(act)))
    for a, p in enumerate(act):
        for b, q in enumerate(act):
            v = h_mo[p, q]
            for i in f:
                v += 2.0 * g_mo[p, q, i, i] - g_mo[p, i, i, q]
            h_eff[a, b] = v
    g_act = g_mo[np.ix_(act, act, act, act)]
    return shift, h_eff, g_act
