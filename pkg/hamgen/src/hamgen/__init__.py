"""Molecular qubit-Hamiltonian fixture generator (STO-3G, parity mapping)."""

from .generate import MoleculeSpec, generate, scan_bond_length, spec_for

__version__ = "0.1.0"

__all__ = ["MoleculeSpec", "generate", "scan_bond_length", "spec_for", "__version__"]
