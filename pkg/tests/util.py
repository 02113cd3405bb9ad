"""Shared test helpers: dense matrix oracles built directly from np.kron.

These deliberately do not reuse the package's statevector kernels, so
matrix-vs-kernel comparisons stay two independent routes. Qubit 0 is the
least-significant bit of the basis index, so a word's character k must
land at kron position (n-1-k).
"""

import numpy as np

SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(word: str) -> np.ndarray:
    """Dense 2^N x 2^N matrix of a Pauli word (char k acts on qubit k)."""
    m = SIGMA[word[-1]]
    for c in reversed(word[:-1]):
        m = np.kron(m, SIGMA[c])
    return m


def hamiltonian_matrix(terms) -> np.ndarray:
    """Dense matrix of [(coeff, word), ...]."""
    words = list(terms)
    dim = 2 ** len(words[0][1])
    m = np.zeros((dim, dim), dtype=complex)
    for coeff, word in words:
        m += coeff * pauli_matrix(word)
    return m


def pauli_exp_matrix(word: str, angle: float) -> np.ndarray:
    """exp(-i*angle*P) via eigendecomposition of the dense P."""
    p = pauli_matrix(word)
    vals, vecs = np.linalg.eigh(p)
    return (vecs * np.exp(-1j * angle * vals)) @ vecs.conj().T


def random_state(n_qubits: int, rng) -> np.ndarray:
    v = rng.standard_normal(2**n_qubits) + 1j * rng.standard_normal(2**n_qubits)
    return v / np.linalg.norm(v)


def random_word(n_qubits: int, rng, alphabet="IXYZ") -> str:
    return "".join(rng.choice(list(alphabet)) for _ in range(n_qubits))


def random_hamiltonian_terms(n_qubits: int, n_terms: int, rng):
    """Distinct random words with standard-normal coefficients."""
    n_terms = min(n_terms, 4**n_qubits)
    seen = set()
    out = []
    while len(out) < n_terms:
        w = random_word(n_qubits, rng)
        if w in seen:
            continue
        seen.add(w)
        out.append((float(rng.standard_normal()), w))
    return out
