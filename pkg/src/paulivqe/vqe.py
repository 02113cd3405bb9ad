"""Variational energy minimization over ansatz parameters.

Derivative-free Nelder-Mead (adaptive simplex) with a multistart policy:
the first start is all-zero parameters (the Hartree-Fock point) unless a
warm start is supplied, later starts draw uniformly from a seeded
interval. Exact parameter-shift gradients are available because every
generator squares to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .ansatz import AnsatzSpec, build_state
from .pauli import QubitHamiltonian
from .statevector import evaluator, prepare_basis_state


class ObjectiveError(ArithmeticError):
    """The energy came back non-finite; optimization cannot proceed."""


@dataclass
class OptimizerConfig:
    seed: int = 0
    restarts: int = 5
    tol: float = 1e-9          # energy convergence tolerance (Hartree)
    max_evals: int = 20000     # total across restarts
    init_spread: float = 0.25  # random restarts draw from [-spread, spread]
    refine: bool = False       # BFGS polish with parameter-shift gradients


@dataclass
class OptimizationResult:
    best_params: np.ndarray
    best_energy: float
    evaluations: int
    converged: bool
    restarts_used: int


class _Objective:
    def __init__(self, spec: AnsatzSpec, h: QubitHamiltonian):
        self.spec = spec
        self.evaluator = evaluator(h)
        self.h = h
        self.workspace = np.empty(1 << spec.n_qubits, dtype=np.complex128)
        self.evaluations = 0

    def __call__(self, params: np.ndarray) -> float:
        self.evaluations += 1
        state = build_state(self.spec, params, self.h, workspace=self.workspace)
        e = self.evaluator.expectation(state)
        if not np.isfinite(e):
            raise ObjectiveError(
                f"non-finite energy {e!r} at parameters {np.asarray(params)!r}"
            )
        return e


def minimize(
    spec: AnsatzSpec,
    h: QubitHamiltonian,
    config: OptimizerConfig | None = None,
    x0: np.ndarray | None = None,
    free_mask: np.ndarray | None = None,
) -> OptimizationResult:
    """Lowest energy over `config.restarts` Nelder-Mead runs.

    `x0` overrides the zero vector as the first start (used by the
    greedy selector to warm-start each round). `free_mask` restricts the
    optimization to a subset of parameters, holding the rest at their
    x0 values. Results are deterministic for a fixed config; ties
    between restarts keep the earlier one.
    """
    config = config or OptimizerConfig()
    obj = _Objective(spec, h)
    n_params = spec.parameter_count

    base = np.zeros(n_params) if x0 is None else np.asarray(x0, float).copy()
    if base.shape != (n_params,):
        raise ValueError(f"x0 has shape {base.shape}, expected ({n_params},)")
    if free_mask is None:
        free = np.ones(n_params, dtype=bool)
    else:
        free = np.asarray(free_mask, dtype=bool)
        if free.shape != (n_params,):
            raise ValueError("free_mask must match the parameter count")
    n_free = int(free.sum())

    def embed(y: np.ndarray) -> np.ndarray:
        full = base.copy()
        full[free] = y
        return full

    if n_free == 0:
        e = obj(base)
        return OptimizationResult(base, e, obj.evaluations, True, 0)

    rng = np.random.default_rng(config.seed)
    starts = [base[free]]
    for _ in range(max(0, config.restarts - 1)):
        starts.append(rng.uniform(-config.init_spread, config.init_spread, n_free))

    budget = max(1, config.max_evals // len(starts))
    best_y = None
    best_e = np.inf
    converged = False
    runs = 0
    for start in starts:
        if obj.evaluations >= config.max_evals:
            break
        res = optimize.minimize(
            lambda y: obj(embed(y)),
            start,
            method="Nelder-Mead",
            options={
                "adaptive": True,
                "fatol": config.tol,
                "xatol": 1e-8,
                "maxfev": min(budget, config.max_evals - obj.evaluations),
                "disp": False,
            },
        )
        runs += 1
        if res.fun < best_e:
            best_e = float(res.fun)
            best_y = np.asarray(res.x, float)
            converged = bool(res.success)

    if config.refine and best_y is not None and free_mask is None:
        res = optimize.minimize(
            obj,
            embed(best_y),
            jac=lambda x: gradient(spec, x, h),
            method="BFGS",
            options={"gtol": 1e-8, "maxiter": 200},
        )
        if res.fun < best_e:
            best_e = float(res.fun)
            best_y = np.asarray(res.x, float)[free]

    best_x = embed(best_y)
    # pin best_energy to a fresh evaluation at best_params
    best_e = obj(best_x)
    return OptimizationResult(best_x, best_e, obj.evaluations, converged, runs)


def hf_energy(h: QubitHamiltonian) -> float:
    return evaluator(h).expectation(prepare_basis_state(h.hf_bitstring))


def gradient(spec: AnsatzSpec, params: np.ndarray, h: QubitHamiltonian) -> np.ndarray:
    """Parameter-shift gradient: dE/dt_m = E(t_m + pi/4) - E(t_m - pi/4).

    Exact (not an approximation) for these circuits: every generator has
    eigenvalues +-1, so each parameter enters through cos/sin of twice
    the angle.
    """
    params = np.asarray(params, dtype=float)
    obj = _Objective(spec, h)
    grad = np.empty_like(params)
    shifted = params.copy()
    for m in range(params.size):
        shifted[m] = params[m] + np.pi / 4
        e_plus = obj(shifted)
        shifted[m] = params[m] - np.pi / 4
        e_minus = obj(shifted)
        shifted[m] = params[m]
        grad[m] = e_plus - e_minus
    return grad
