"""Acceptance gate: every criterion at its stated tolerance.

Each test is tagged with @pytest.mark.criterion and prints one
``ACCEPTANCE <name>: PASS/FAIL`` line. The multi-hour selection runs
carry the ``slow`` marker and are excluded by default (run them with
``pytest -m slow``); the default gate covers the bundled-fixture
criteria in roughly twenty minutes, dominated by the LiH selection
scans.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from paulivqe.ansatz import AnsatzSpec, Family, build_state, parameter_count
from paulivqe.compiler import compile_ansatz, compile_pauli_exp, simulate_circuit
from paulivqe.fixtures import fixture_path, load_fixture
from paulivqe.oracle import exact_ground, exact_ground_dense, fig3_amplitudes, imaginary_time_evolve
from paulivqe.pauli import QubitHamiltonian, parse_pauli
from paulivqe.selection import SelectionConfig, greedy_select
from paulivqe.statevector import StateVector, apply_pauli_exp, expectation, prepare_basis_state
from paulivqe.vqe import OptimizerConfig, gradient, hf_energy, minimize

from util import hamiltonian_matrix, random_hamiltonian_terms, random_state, random_word

CHEMICAL_ACCURACY = 1.6e-3


# -- shared heavy runs ---------------------------------------------------------

@pytest.fixture(scope="module")
def lih():
    return load_fixture("lih")


@pytest.fixture(scope="module")
def h2o():
    return load_fixture("h2o")


@pytest.fixture(scope="module")
def lih_history_p1(lih):
    # run past the chemical-accuracy crossing so the curve shape (the
    # figures plot K well beyond convergence) is also captured
    return greedy_select(
        lih, Family.IMAG_TIME, layers=1, target_gap=1e-6, max_terms=8,
        config=SelectionConfig(optimizer=OptimizerConfig(restarts=3, max_evals=6000)),
    )


@pytest.fixture(scope="module")
def lih_history_p2(lih):
    return greedy_select(
        lih, Family.IMAG_TIME, layers=2, target_gap=CHEMICAL_ACCURACY, max_terms=3,
        config=SelectionConfig(optimizer=OptimizerConfig(restarts=3, max_evals=6000)),
    )


@pytest.fixture(scope="module")
def h2o_truncated_history(h2o):
    # CI variant of the hours-long H2O scan: first 3 rounds only
    return greedy_select(
        h2o, Family.IMAG_TIME, layers=1, target_gap=CHEMICAL_ACCURACY, max_terms=3,
        config=SelectionConfig(optimizer=OptimizerConfig(restarts=2, max_evals=4000)),
    )


# -- H2 exactness --------------------------------------------------------------

@pytest.mark.criterion("h2-exactness-cli")
def test_h2_exactness_via_cli():
    t0 = time.time()
    res = subprocess.run(
        [sys.executable, "-m", "paulivqe", "solve",
         "--hamiltonian", fixture_path("h2"),
         "--family", "qaoa", "--terms", "XX", "--layers", "1"],
        capture_output=True, text=True, timeout=60,
    )
    elapsed = time.time() - t0
    assert res.returncode == 0, res.stderr
    gap = next(
        float(ln.split()[1]) for ln in res.stdout.splitlines()
        if ln.startswith("gap_to_exact_ha ")
    )
    assert abs(gap) < 1e-6
    assert elapsed < 5.0


@pytest.mark.criterion("h2-paper-parameters")
def test_h2_paper_parameters():
    h = load_fixture("h2")
    exact = exact_ground_dense(h).ground_energy
    xx = next(i for i, t in enumerate(h.terms) if t.pauli.word == "XX")
    spec = AnsatzSpec(Family.QAOA_INSPIRED, (xx,), 1, 2)
    gamma, beta1, beta2 = -0.1118, 0.5448, -0.2406
    gaps = []
    for params in ([beta1, beta2, gamma], [beta2, beta1, gamma]):
        e = expectation(build_state(spec, np.array(params), h), h)
        gaps.append(e - exact)
    assert min(gaps) < 1e-3  # one beta<->qubit assignment must reproduce it


# -- Fig. 2 counts -------------------------------------------------------------

@pytest.mark.criterion("fig2-counts-17-14")
def test_fig2_counts_and_equivalence():
    p = parse_pauli("YXXYXXXX")
    circ = compile_pauli_exp(p, 0.4321)
    assert circ.counts.one_qubit == 17
    assert circ.counts.two_qubit == 14
    rng = np.random.default_rng(20)
    for _ in range(50):
        psi = StateVector(random_state(8, rng), 8)
        via_circuit = simulate_circuit(circ, psi).amplitudes
        direct = apply_pauli_exp(psi, p, 0.4321).amplitudes
        assert np.max(np.abs(via_circuit - direct)) < 1e-10


@pytest.mark.criterion("count-formula-identities")
def test_count_formula_identities():
    rng = np.random.default_rng(21)
    for _ in range(100):
        n = int(rng.integers(2, 11))
        k = int(rng.integers(1, 6))
        p_layers = int(rng.integers(1, 4))
        words = set()
        while len(words) < k:
            words.add("".join(rng.choice(["X", "Y"]) for _ in range(n)))
        h = QubitHamiltonian.from_terms(
            "xy", n, [(float(rng.standard_normal()), w) for w in sorted(words)], "0" * n
        )
        qspec = AnsatzSpec(Family.QAOA_INSPIRED, tuple(range(k)), p_layers, n)
        qc = compile_ansatz(
            qspec, rng.uniform(-1, 1, parameter_count(qspec)), h, z_in_software=False
        )
        assert qc.counts.one_qubit == (3 * n + 1) * k * p_layers
        assert qc.counts.two_qubit == 2 * (n - 1) * k * p_layers
        ispec = AnsatzSpec(Family.IMAG_TIME, tuple(range(k)), p_layers, n)
        ic = compile_ansatz(
            ispec, rng.uniform(-1, 1, parameter_count(ispec)), h, z_in_software=False
        )
        assert ic.counts.one_qubit == (2 * n + 1) * k * p_layers
        assert ic.counts.two_qubit == 2 * (n - 1) * k * p_layers


# -- LiH convergence -----------------------------------------------------------

@pytest.mark.criterion("lih-convergence-p1")
def test_lih_convergence_p1(lih, lih_history_p1):
    gaps = [r.energy_gap_to_exact for r in lih_history_p1.rounds]
    crossing = next((k for k, g in enumerate(gaps, start=1) if g <= CHEMICAL_ACCURACY), None)
    assert crossing is not None and crossing <= 4
    calls_through_crossing = sum(
        r.candidates_evaluated for r in lih_history_p1.rounds[:crossing]
    )
    assert calls_through_crossing <= crossing * lih.n_terms
    # the first selected term already beats the Hartree-Fock point
    assert lih_history_p1.rounds[0].best_energy < hf_energy(lih)


@pytest.mark.criterion("lih-convergence-p2")
def test_lih_convergence_p2(lih_history_p2):
    assert lih_history_p2.converged
    assert len(lih_history_p2.rounds) <= 3
    assert lih_history_p2.rounds[-1].energy_gap_to_exact <= CHEMICAL_ACCURACY


# -- H2O convergence (fast CI variant; full runs are marked slow) ---------------

@pytest.mark.criterion("h2o-truncated-shape")
def test_h2o_truncated_monotone_and_decreasing(h2o_truncated_history):
    rounds = h2o_truncated_history.rounds
    assert len(rounds) == 3
    energies = [r.best_energy for r in rounds]
    assert all(b <= a + 1e-10 for a, b in zip(energies, energies[1:]))
    assert rounds[-1].energy_gap_to_exact < rounds[0].energy_gap_to_exact


@pytest.mark.slow
@pytest.mark.criterion("h2o-convergence-p1-full")
def test_h2o_convergence_p1_full(h2o):
    hist = greedy_select(
        h2o, Family.IMAG_TIME, layers=1, target_gap=CHEMICAL_ACCURACY, max_terms=18,
        config=SelectionConfig(optimizer=OptimizerConfig(restarts=2, max_evals=6000)),
    )
    assert hist.converged and len(hist.rounds) <= 18
    assert hist.minimize_calls <= len(hist.rounds) * h2o.n_terms
    # Fig. 4 shape for the full H2O curve
    g1 = hist.rounds[0].energy_gap_to_exact
    gN = hist.rounds[-1].energy_gap_to_exact
    assert g1 / gN >= 10.0


@pytest.mark.slow
@pytest.mark.criterion("h2o-convergence-p2-full")
def test_h2o_convergence_p2_full(h2o):
    hist = greedy_select(
        h2o, Family.IMAG_TIME, layers=2, target_gap=CHEMICAL_ACCURACY, max_terms=12,
        config=SelectionConfig(optimizer=OptimizerConfig(restarts=2, max_evals=8000)),
    )
    assert hist.converged and len(hist.rounds) <= 12


@pytest.mark.slow
@pytest.mark.criterion("h2o-convergence-p3-full")
def test_h2o_convergence_p3_full(h2o):
    hist = greedy_select(
        h2o, Family.IMAG_TIME, layers=3, target_gap=CHEMICAL_ACCURACY, max_terms=9,
        config=SelectionConfig(optimizer=OptimizerConfig(restarts=2, max_evals=10000)),
    )
    assert hist.converged and len(hist.rounds) <= 9


@pytest.mark.slow
@pytest.mark.criterion("h2o-qaoa-p3-full")
def test_h2o_qaoa_p3_full(h2o):
    hist = greedy_select(
        h2o, Family.QAOA_INSPIRED, layers=3, target_gap=CHEMICAL_ACCURACY, max_terms=10,
        config=SelectionConfig(optimizer=OptimizerConfig(restarts=2, max_evals=20000)),
    )
    assert hist.converged and len(hist.rounds) <= 10


# -- Fig. 1 / Fig. 4 shape -----------------------------------------------------

@pytest.mark.criterion("fig-shape-monotone-10x")
def test_fig_shape_lih(lih_history_p1):
    energies = [r.best_energy for r in lih_history_p1.rounds]
    assert all(b <= a + 1e-10 for a, b in zip(energies, energies[1:]))
    g1 = lih_history_p1.rounds[0].energy_gap_to_exact
    gN = lih_history_p1.rounds[-1].energy_gap_to_exact
    assert g1 / gN >= 10.0


# -- Fig. 3 reproduction -------------------------------------------------------

@pytest.mark.criterion("fig3-closed-form")
def test_fig3_reproduction():
    grid = np.linspace(0.0, np.pi / 2, 101)
    rows = fig3_amplitudes(grid)
    for r in rows:
        c2, s2 = np.cosh(r.t) ** 2, np.sinh(r.t) ** 2
        assert abs(r.a_xx_sq - c2 / (c2 + s2)) < 1e-12
        assert abs(r.b_xx_sq - s2 / (c2 + s2)) < 1e-12
        assert abs(r.a_xy_sq - np.cos(r.t) ** 2) < 1e-12
        assert abs(r.b_xy_sq - np.sin(r.t) ** 2) < 1e-12
        assert abs(r.a_xx_sq + r.b_xx_sq - 1.0) < 1e-12
        assert abs(r.a_xy_sq + r.b_xy_sq - 1.0) < 1e-12
    mid = rows[50]  # the t = pi/4 grid point (machine precision)
    assert abs(mid.t - np.pi / 4) < 1e-15
    assert mid.a_xy_sq == pytest.approx(0.5, abs=1e-15)
    assert mid.b_xy_sq == pytest.approx(0.5, abs=1e-15)


# -- oracle equivalence --------------------------------------------------------

@pytest.mark.criterion("oracle-lanczos-vs-dense")
def test_oracle_lanczos_vs_dense():
    rng = np.random.default_rng(22)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        n_terms = int(rng.integers(4, 14))
        h = QubitHamiltonian.from_terms(
            "rnd", n, random_hamiltonian_terms(n, n_terms, rng), "0" * n
        )
        dense = np.linalg.eigvalsh(
            hamiltonian_matrix([(t.coeff, t.pauli.word) for t in h.terms])
        )[0]
        lanczos = exact_ground(h, seed=int(rng.integers(1 << 30))).ground_energy
        assert abs(lanczos - dense) < 1e-10


@pytest.mark.criterion("oracle-imaginary-time-h2")
def test_oracle_imaginary_time_h2():
    h = load_fixture("h2")
    e0 = exact_ground_dense(h).ground_energy
    state = imaginary_time_evolve(h, 10.0, prepare_basis_state(h.hf_bitstring))
    assert abs(expectation(state, h) - e0) < 1e-6


# -- gradient check ------------------------------------------------------------

@pytest.mark.criterion("parameter-shift-gradients")
def test_parameter_shift_vs_finite_differences():
    rng = np.random.default_rng(23)
    checked = 0
    while checked < 100:
        n = int(rng.integers(2, 7))
        h = QubitHamiltonian.from_terms(
            "g", n, random_hamiltonian_terms(n, int(rng.integers(3, 8)), rng),
            "".join(rng.choice(["0", "1"]) for _ in range(n)),
        )
        family = Family.QAOA_INSPIRED if rng.random() < 0.5 else Family.IMAG_TIME
        eligible = [
            i for i, t in enumerate(h.terms) if set(t.pauli.word) & {"X", "Y"}
        ]
        if not eligible:
            continue
        k = min(len(eligible), int(rng.integers(1, 3)))
        spec = AnsatzSpec(family, tuple(eligible[:k]), int(rng.integers(1, 3)), n)
        params = rng.uniform(-1.2, 1.2, parameter_count(spec))
        g = gradient(spec, params, h)
        step = 1e-5
        for m in range(params.size):
            up = params.copy(); up[m] += step
            dn = params.copy(); dn[m] -= step
            fd = (
                expectation(build_state(spec, up, h), h)
                - expectation(build_state(spec, dn, h), h)
            ) / (2 * step)
            assert abs(g[m] - fd) < 1e-6
        checked += 1


# -- property suites -----------------------------------------------------------

@pytest.mark.criterion("property-suites")
def test_property_suites():
    rng = np.random.default_rng(24)
    h2 = load_fixture("h2")
    lih = load_fixture("lih")

    # norm conservation along a long random program
    state = StateVector(random_state(4, rng), 4)
    for _ in range(2000):
        word = random_word(4, rng)
        state = apply_pauli_exp(state, parse_pauli(word), float(rng.uniform(-np.pi, np.pi)))
    assert abs(state.norm() - 1.0) < 1e-10

    # zero parameters reproduce the HF energy exactly, both families
    for h in (h2, lih):
        e_hf = hf_energy(h)
        eligible = [i for i, t in enumerate(h.terms) if set(t.pauli.word) & {"X", "Y"}]
        for family in Family:
            spec = AnsatzSpec(family, tuple(eligible[:2]), 2, h.n_qubits)
            res = minimize(spec, h, OptimizerConfig(restarts=1, max_evals=1))
            state = build_state(spec, np.zeros(parameter_count(spec)), h)
            assert expectation(state, h) == e_hf

    # gamma -> gamma + pi leaves the energy invariant
    xx = next(i for i, t in enumerate(h2.terms) if t.pauli.word == "XX")
    for family, gamma_slot in ((Family.QAOA_INSPIRED, 2), (Family.IMAG_TIME, 0)):
        spec = AnsatzSpec(family, (xx,), 1, 2)
        params = rng.uniform(-1, 1, parameter_count(spec))
        shifted = params.copy()
        shifted[gamma_slot] += np.pi
        e1 = expectation(build_state(spec, params, h2), h2)
        e2 = expectation(build_state(spec, shifted, h2), h2)
        assert abs(e1 - e2) < 1e-10

    # selection determinism under a fixed seed
    cfg = SelectionConfig(optimizer=OptimizerConfig(seed=7, restarts=2, max_evals=2000))
    a = greedy_select(h2, Family.IMAG_TIME, 1, CHEMICAL_ACCURACY, config=cfg)
    b = greedy_select(h2, Family.IMAG_TIME, 1, CHEMICAL_ACCURACY, config=cfg)
    assert a.selected == b.selected
    assert [r.best_energy for r in a.rounds] == [r.best_energy for r in b.rounds]

    # variational lower bound on both fixtures
    for h in (h2, lih):
        e0 = exact_ground(h).ground_energy
        for _ in range(1000):
            psi = StateVector(random_state(h.n_qubits, rng), h.n_qubits)
            assert expectation(psi, h) >= e0 - 1e-9
