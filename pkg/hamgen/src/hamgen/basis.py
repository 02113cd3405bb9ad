"""STO-3G basis data and contracted Gaussian construction.

Exponents/contraction coefficients are the standard published STO-3G
values for H, Li and O. Coordinates are in Bohr; each contracted
function is renormalized numerically after assembly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ANGSTROM_TO_BOHR = 1.0 / 0.52917721067

# element -> list of shells; each shell: (kind, [exponents], {subshell: [coeffs]})
STO3G = {
    "H": [
        ("S", [3.425250914, 0.6239137298, 0.1688554040],
         {"S": [0.1543289673, 0.5353281423, 0.4446345422]}),
    ],
    "Li": [
        ("S", [16.11957475, 2.936200663, 0.7946504870],
         {"S": [0.1543289673, 0.5353281423, 0.4446345422]}),
        ("SP", [0.6362897469, 0.1478600533, 0.04808867840],
         {"S": [-0.09996722919, 0.3995128261, 0.7001154689],
          "P": [0.1559162750, 0.6076837186, 0.3919573931]}),
    ],
    "O": [
        ("S", [130.7093214, 23.80886605, 6.443608313],
         {"S": [0.1543289673, 0.5353281423, 0.4446345422]}),
        ("SP", [5.033151319, 1.169596125, 0.3803889600],
         {"S": [-0.09996722919, 0.3995128261, 0.7001154689],
          "P": [0.1559162750, 0.6076837186, 0.3919573931]}),
    ],
}

ATOMIC_NUMBER = {"H": 1, "Li": 3, "O": 8}


@dataclass
class ContractedGaussian:
    """One AO basis function: sum of primitives sharing a center and
    angular momentum (lx, ly, lz)."""

    center: np.ndarray
    lmn: tuple[int, int, int]
    exponents: np.ndarray
    coefficients: np.ndarray  # includes primitive norms; contraction renormalized


def _primitive_norm(alpha: float, lmn: tuple[int, int, int]) -> float:
    l, m, n = lmn
    df = lambda k: 1.0 if k <= 0 else float(np.prod(np.arange(2 * k - 1, 0, -2)))
    num = (2.0 * alpha / np.pi) ** 0.75 * (4.0 * alpha) ** ((l + m + n) / 2.0)
    return num / np.sqrt(df(l) * df(m) * df(n))


def build_basis(atoms: list[tuple[str, np.ndarray]]) -> list[ContractedGaussian]:
    """AO list for [(element, xyz_bohr), ...], in shell order per atom
    (s functions, then px, py, pz for SP shells)."""
    aos: list[ContractedGaussian] = []
    for elem, xyz in atoms:
        for kind, exps, coeffs in STO3G[elem]:
            exps_a = np.asarray(exps)
            for sub in ("S", "P"):
                if sub not in coeffs:
                    continue
                lmns = [(0, 0, 0)] if sub == "S" else [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
                for lmn in lmns:
                    c = np.array(
                        [c0 * _primitive_norm(a, lmn) for a, c0 in zip(exps_a, coeffs[sub])]
                    )
                    aos.append(ContractedGaussian(np.asarray(xyz, float), lmn, exps_a.copy(), c))
    _renormalize(aos)
    return aos


def _renormalize(aos: list[ContractedGaussian]) -> None:
    from .integrals import overlap

    for ao in aos:
        s = overlap(ao, ao)
        ao.coefficients = ao.coefficients / np.sqrt(s)
