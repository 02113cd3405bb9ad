"""Bundled molecular fixtures (generated by the hamgen companion tool
and checked in; provenance lives in each file's metadata)."""

from __future__ import annotations

from importlib import resources

from .io import load_hamiltonian
from .pauli import QubitHamiltonian

FIXTURES = ("h2", "lih", "h2o")


def fixture_path(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {FIXTURES}")
    return str(resources.files("paulivqe").joinpath(f"fixtures/{name}.json"))


def load_fixture(name: str) -> QubitHamiltonian:
    return load_hamiltonian(fixture_path(name))
