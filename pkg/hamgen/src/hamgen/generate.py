"""Molecule -> qubit-Hamiltonian fixture files.

Pipeline: STO-3G integrals, restricted Hartree-Fock, frozen-core
reduction, block-spin parity mapping with two-qubit reduction, then the
shared on-disk JSON format (see FORMAT.md in the main package). The
exact ground energy written to metadata is recomputed from the rounded
coefficients actually present in the file, so downstream eigensolvers
agree with it to solver precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .basis import ANGSTROM_TO_BOHR, ATOMIC_NUMBER, build_basis
from .integrals import integral_tables
from .mapping import (
    dense_from_terms,
    number_operator,
    op_to_real_terms,
    reduced_hf_bitstring,
    spin_orbital_hamiltonian,
    two_qubit_reduce,
)
from .scf import freeze_core, mo_integrals, nuclear_repulsion, restricted_hartree_fock

GENERATOR_TAG = "hamgen 0.1.0"

# equilibrium geometries (angstrom); the H2O rows are r(OH)=0.9572, HOH=104.52 deg
MOLECULES = {
    "h2": {
        "atoms": [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.735))],
        "bond_length": 0.735,
        "frozen": [],
        "expected_qubits": 2,
    },
    "lih": {
        "atoms": [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.595))],
        "bond_length": 1.595,
        "frozen": [0],
        "expected_qubits": 8,
    },
    "h2o": {
        "atoms": [
            ("O", (0.0, 0.0, 0.0)),
            ("H", (0.0, 0.75691980600452, 0.58584226904649)),
            ("H", (0.0, -0.75691980600452, 0.58584226904649)),
        ],
        "bond_length": 0.9572,
        "frozen": [0],
        "expected_qubits": 10,
    },
}


class GenerationError(RuntimeError):
    pass


@dataclass
class MoleculeSpec:
    atoms: list[tuple[str, tuple[float, float, float]]]  # element, xyz in angstrom
    basis: str = "STO-3G"
    frozen_orbitals: list[int] = field(default_factory=list)
    mapping: str = "parity"
    two_qubit_reduction: bool = True
    name: str = "molecule"
    expected_qubits: int | None = None

    def __post_init__(self):
        if self.basis != "STO-3G":
            raise GenerationError(f"unsupported basis {self.basis!r}")
        if self.mapping != "parity":
            raise GenerationError(f"unsupported mapping {self.mapping!r}")
        if not self.two_qubit_reduction:
            raise GenerationError("generation without two-qubit reduction is unsupported")


def spec_for(molecule: str, bond_length: float | None = None) -> MoleculeSpec:
    key = molecule.lower()
    if key not in MOLECULES:
        raise GenerationError(f"unknown molecule {molecule!r}; choose from {sorted(MOLECULES)}")
    entry = MOLECULES[key]
    atoms = [(el, tuple(xyz)) for el, xyz in entry["atoms"]]
    if bond_length is not None and key in ("h2", "lih"):
        atoms[1] = (atoms[1][0], (0.0, 0.0, float(bond_length)))
    elif bond_length is not None and abs(bond_length - entry["bond_length"]) > 1e-12:
        raise GenerationError("bond-length scans are only supported for diatomics")
    return MoleculeSpec(
        atoms=atoms,
        frozen_orbitals=list(entry["frozen"]),
        name=key,
        expected_qubits=entry["expected_qubits"],
    )


def generate(spec: MoleculeSpec, out_path: str | None = None, chop: float = 1e-10) -> dict:
    """Run the pipeline; returns the file document (and writes it when
    out_path is given)."""
    atoms_bohr = [
        (el, np.asarray(xyz, float) * ANGSTROM_TO_BOHR) for el, xyz in spec.atoms
    ]
    charges = [(ATOMIC_NUMBER[el], xyz) for el, xyz in atoms_bohr]
    n_electrons = sum(z for z, _ in charges)

    aos = build_basis(atoms_bohr)
    S, T, V, G = integral_tables(aos, charges)
    e_nuc = nuclear_repulsion(charges)
    hf = restricted_hartree_fock(S, T, V, G, n_electrons, e_nuc)

    h_mo, g_mo = mo_integrals(T + V, G, hf.mo_coefficients)
    n_frozen = len(spec.frozen_orbitals)
    if sorted(spec.frozen_orbitals) != list(range(n_frozen)):
        raise GenerationError("only lowest-orbital freezing is supported")
    shift, h_eff, g_act = freeze_core(h_mo, g_mo, n_frozen)

    n_sp = h_eff.shape[0]
    n_alpha = n_beta = n_electrons // 2 - n_frozen
    qubit_op = spin_orbital_hamiltonian(h_eff, g_act, shift + e_nuc)
    reduced = two_qubit_reduce(qubit_op, n_alpha, n_beta)
    terms = op_to_real_terms(reduced, chop=chop)
    n_qubits = 2 * n_sp - 2
    if spec.expected_qubits is not None and n_qubits != spec.expected_qubits:
        raise GenerationError(
            f"{spec.name}: got {n_qubits} qubits, expected {spec.expected_qubits}"
        )

    hf_bits = reduced_hf_bitstring(n_sp, n_alpha, n_beta)

    # self-consistency on the rounded coefficients that land in the file
    rounded = [(float(repr(c)), w) for c, w in terms]
    dense = dense_from_terms(rounded)
    vals = np.linalg.eigvalsh(dense)
    exact_energy = float(vals[0])
    hf_index = sum(1 << k for k, b in enumerate(hf_bits) if b == "1")
    hf_energy_qubit = float(np.real(dense[hf_index, hf_index]))
    if abs(hf_energy_qubit - hf.energy) > 5e-9:
        raise GenerationError(
            f"HF energy mismatch: SCF {hf.energy:.12f} vs mapped {hf_energy_qubit:.12f}"
        )

    sym_ops = []
    for label, modes, value in (
        ("n_alpha", list(range(n_sp)), n_alpha),
        ("n_beta", list(range(n_sp, 2 * n_sp)), n_beta),
    ):
        nop = two_qubit_reduce(number_operator(modes, 2 * n_sp), n_alpha, n_beta)
        sym_ops.append(
            {
                "name": label,
                "value": value,
                "terms": [
                    {"coeff": c, "pauli": w} for c, w in op_to_real_terms(nop, chop=1e-14)
                ],
            }
        )

    doc = {
        "name": spec.name,
        "n_qubits": n_qubits,
        "hf_bitstring": hf_bits,
        "terms": [{"coeff": c, "pauli": w} for c, w in terms],
        "metadata": {
            "geometry": [[el, list(xyz)] for el, xyz in spec.atoms],
            "geometry_unit": "angstrom",
            "basis": spec.basis,
            "mapping": "parity+two_qubit_reduction",
            "frozen_orbitals": spec.frozen_orbitals,
            "num_particles": [n_alpha, n_beta],
            "nuclear_repulsion": e_nuc,
            "hf_energy": hf.energy,
            "exact_energy": exact_energy,
            "chop_threshold": chop,
            "symmetry_ops": sym_ops,
            "generator": GENERATOR_TAG,
        },
    }
    if out_path is not None:
        write_document(doc, out_path)
    return doc


def write_document(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_document(doc))


def render_document(doc: dict) -> str:
    """JSON with one term per line (keeps diffs and parse errors legible)."""
    head = json.dumps(
        {k: doc[k] for k in ("name", "n_qubits", "hf_bitstring")}, indent=2
    )[:-2]
    term_lines = ",\n".join(
        "    " + json.dumps(t, separators=(", ", ": ")) for t in doc["terms"]
    )
    meta = json.dumps({"metadata": doc["metadata"]}, indent=2)[1:]
    return head + ',\n  "terms": [\n' + term_lines + "\n  ],\n " + meta


def scan_bond_length(molecule: str, lengths, out_dir: str) -> list[str]:
    """One fixture file per bond length, deterministically named."""
    import os

    paths = []
    for L in lengths:
        spec = spec_for(molecule, bond_length=L)
        path = os.path.join(out_dir, f"{spec.name}_{L:.4f}.json")
        generate(spec, path)
        paths.append(path)
    return paths
