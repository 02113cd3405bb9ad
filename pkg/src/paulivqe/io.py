"""On-disk Hamiltonian format.

A UTF-8 JSON document with exactly these keys:

  name          string
  n_qubits      int
  hf_bitstring  string over {0,1}; index k = qubit k
  terms         array of {"coeff": number, "pauli": string (index k = qubit k)}
  metadata      optional object (geometry, basis, mapping, exact_energy, ...)

Coefficients are written with full double precision (repr round-trip),
one term per line. Duplicate Pauli words load with a warning and merged
coefficients; imaginary parts above 1e-12 are rejected (Pauli strings
are Hermitian, so a Hermitian Hamiltonian has real coefficients).
"""

from __future__ import annotations

import json
import warnings

from .pauli import PauliParseError, QubitHamiltonian

IMAG_TOLERANCE = 1e-12


class HamiltonianFormatError(ValueError):
    pass


def _line_of_term(raw: str, ordinal: int) -> str:
    """Best-effort 'line L' tag for the ordinal-th term object."""
    count = -1
    for lineno, line in enumerate(raw.splitlines(), start=1):
        count += line.count('"pauli"')
        if count >= ordinal:
            return f"line {lineno}"
    return f"term {ordinal}"


def _coeff_to_float(value, where: str) -> float:
    if isinstance(value, bool):
        raise HamiltonianFormatError(f"{where}: coeff must be a number")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if abs(float(im)) > IMAG_TOLERANCE:
            raise HamiltonianFormatError(
                f"{where}: coefficient has imaginary part {im!r} beyond {IMAG_TOLERANCE}"
            )
        return float(re)
    raise HamiltonianFormatError(f"{where}: coeff must be a number or [re, im] pair")


def loads_hamiltonian(raw: str, source: str = "<string>") -> QubitHamiltonian:
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise HamiltonianFormatError(
            f"{source}: line {exc.lineno} column {exc.colno}: invalid JSON ({exc.msg})"
        ) from None
    if not isinstance(doc, dict):
        raise HamiltonianFormatError(f"{source}: top level must be an object")
    for key in ("name", "n_qubits", "hf_bitstring", "terms"):
        if key not in doc:
            raise HamiltonianFormatError(f"{source}: missing required key {key!r}")
    name = doc["name"]
    n_qubits = doc["n_qubits"]
    if not isinstance(n_qubits, int) or isinstance(n_qubits, bool):
        raise HamiltonianFormatError(f"{source}: n_qubits must be an integer")
    terms_raw = doc["terms"]
    if not isinstance(terms_raw, list):
        raise HamiltonianFormatError(f"{source}: terms must be an array")

    pairs = []
    seen: dict[str, int] = {}
    duplicates = []
    for k, entry in enumerate(terms_raw):
        where = f"{source}: {_line_of_term(raw, k)}"
        if not isinstance(entry, dict) or "coeff" not in entry or "pauli" not in entry:
            raise HamiltonianFormatError(f"{where}: each term needs 'coeff' and 'pauli'")
        word = entry["pauli"]
        if not isinstance(word, str):
            raise HamiltonianFormatError(f"{where}: pauli must be a string")
        for col, ch in enumerate(word):
            if ch not in "IXYZ":
                raise HamiltonianFormatError(
                    f"{where} column {col}: invalid Pauli character {ch!r} in {word!r}"
                )
        coeff = _coeff_to_float(entry["coeff"], where)
        if word in seen:
            duplicates.append(word)
        else:
            seen[word] = k
        pairs.append((coeff, word))
    if duplicates:
        warnings.warn(
            f"{source}: merged duplicate Pauli terms: {sorted(set(duplicates))}",
            stacklevel=2,
        )

    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise HamiltonianFormatError(f"{source}: metadata must be an object")
    try:
        return QubitHamiltonian.from_terms(
            name, n_qubits, pairs, doc["hf_bitstring"], metadata
        )
    except (ValueError, PauliParseError) as exc:
        raise HamiltonianFormatError(f"{source}: {exc}") from None


def load_hamiltonian(path) -> QubitHamiltonian:
    with open(path, encoding="utf-8") as fh:
        raw = fh.read()
    return loads_hamiltonian(raw, source=str(path))


def dumps_hamiltonian(h: QubitHamiltonian) -> str:
    head = json.dumps(
        {"name": h.name, "n_qubits": h.n_qubits, "hf_bitstring": h.hf_bitstring},
        indent=2,
    )[:-2]
    term_lines = ",\n".join(
        "    " + json.dumps(
            {"coeff": t.coeff, "pauli": t.pauli.word}, separators=(", ", ": ")
        )
        for t in h.terms
    )
    meta = json.dumps({"metadata": dict(h.metadata)}, indent=2)[1:]
    return head + ',\n  "terms": [\n' + term_lines + "\n  ],\n " + meta


def save_hamiltonian(h: QubitHamiltonian, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_hamiltonian(h))
