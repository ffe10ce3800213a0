"""Training on the full instance or a weighted coreset.

Two methods: deterministic full-batch gradient descent with Armijo
backtracking (subgradient steps with 1/sqrt(t) decay when the objective is
nonsmooth), and a seeded mini-batch SGD baseline for timing comparisons.
Every run starts from beta = 0 and is fully determined by (input, config).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from .errors import NonFiniteError
from .model import (
    Hypothesis,
    LossKind,
    RegularizerKind,
    RlmInstance,
    WeightedCoreset,
    loss_eval,
)


class TrainMethod(Enum):
    FULL_BATCH = "gd"
    SGD = "sgd"


@dataclass(frozen=True)
class TrainConfig:
    method: TrainMethod = TrainMethod.FULL_BATCH
    max_iters: int = 500
    grad_tol: float = 1e-6
    step_init: float = 1.0
    armijo_c: float = 1e-4
    armijo_shrink: float = 0.5
    batch_size: int = 32
    epochs: int = 20
    learning_rate: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.grad_tol <= 0 or self.step_init <= 0 or self.learning_rate <= 0:
            raise ValueError("tolerances and step sizes must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be at least 1")


@dataclass
class TrainTrace:
    """Per-iteration record of (optimizer wall-clock seconds, full-dataset
    objective).  Objective evaluation time is excluded from the clock."""

    seconds: List[float] = field(default_factory=list)
    objectives: List[float] = field(default_factory=list)

    def append(self, t: float, f: float) -> None:
        self.seconds.append(t)
        self.objectives.append(f)

    def rows(self):
        return [
            (i, s, f)
            for i, (s, f) in enumerate(zip(self.seconds, self.objectives))
        ]


def _identity_coreset(n: int) -> WeightedCoreset:
    return WeightedCoreset(indices=np.arange(n), weights=np.ones(n))


def _reg_value_grad(inst: RlmInstance, beta: np.ndarray) -> Tuple[float, np.ndarray]:
    """Value and (sub)gradient of lambda * r(R * beta)."""
    lam, R = inst.lam, inst.R
    if inst.reg is RegularizerKind.L2_SQUARED:
        return lam * R * R * float(beta @ beta), 2.0 * lam * R * R * beta
    if inst.reg is RegularizerKind.L2:
        norm = float(np.linalg.norm(beta))
        grad = lam * R * beta / norm if norm > 0 else np.zeros_like(beta)
        return lam * R * norm, grad
    return lam * R * float(np.sum(np.abs(beta))), lam * R * np.sign(beta)


def weighted_objective_grad(
    inst: RlmInstance, cs: WeightedCoreset, beta: np.ndarray
) -> Tuple[float, np.ndarray]:
    """Objective sum_C u_i f_i(beta) and its (sub)gradient."""
    X = inst.X[cs.indices]
    y = inst.y[cs.indices]
    u = cs.weights
    z = -y * (X @ beta)
    losses = loss_eval(inst.loss, z)
    if inst.loss is LossKind.LOGISTIC:
        # sigmoid(z) without overflow: exp of a nonpositive argument only
        e = np.exp(-np.abs(z))
        dz = np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))
    else:
        dz = (z > -1.0).astype(float)  # 0 at the hinge kink
    loss_grad = -((u * dz * y) @ X)
    reg_val, reg_grad = _reg_value_grad(inst, beta)
    share = cs.weight_sum() / inst.n
    return float(u @ losses) + share * reg_val, loss_grad + share * reg_grad


def gradient(inst: RlmInstance, cs: Optional[WeightedCoreset], h: Hypothesis) -> np.ndarray:
    if cs is None:
        cs = _identity_coreset(inst.n)
    return weighted_objective_grad(inst, cs, h.beta)[1]


def _is_smooth(inst: RlmInstance) -> bool:
    return inst.loss is LossKind.LOGISTIC and inst.reg is not RegularizerKind.L1


def train(
    inst: RlmInstance, cfg: TrainConfig, cs: Optional[WeightedCoreset] = None
) -> Tuple[Hypothesis, TrainTrace]:
    """Train beta from 0 on the (weighted) objective; the trace always
    records the objective evaluated on the full instance."""
    if cs is None:
        cs = _identity_coreset(inst.n)
    if cfg.method is TrainMethod.SGD:
        return _train_sgd(inst, cs, cfg)
    return _train_gd(inst, cs, cfg)


def _trace_point(inst, full_cs, beta, trace, clock):
    f_full, _ = weighted_objective_grad(inst, full_cs, beta)
    trace.append(clock, f_full)


def _train_gd(inst, cs, cfg):
    beta = np.zeros(inst.d)
    trace = TrainTrace()
    full_cs = _identity_coreset(inst.n)
    smooth = _is_smooth(inst)
    clock = 0.0
    best_beta, best_f = beta.copy(), np.inf
    step = cfg.step_init
    for it in range(cfg.max_iters):
        t0 = time.perf_counter()
        f, g = weighted_objective_grad(inst, cs, beta)
        if not (np.isfinite(f) and np.all(np.isfinite(g))):
            raise NonFiniteError(f"non-finite objective/gradient at iter {it}")
        gnorm = float(np.linalg.norm(g))
        if f < best_f:
            best_f, best_beta = f, beta.copy()
        if gnorm <= cfg.grad_tol:
            clock += time.perf_counter() - t0
            _trace_point(inst, full_cs, beta, trace, clock)
            break
        if smooth:
            step *= 2.0  # warm start from the last accepted step
            while True:
                cand = beta - step * g
                f_new, _ = weighted_objective_grad(inst, cs, cand)
                if f_new <= f - cfg.armijo_c * step * gnorm * gnorm:
                    break
                step *= cfg.armijo_shrink
                if step < 1e-20:
                    raise NonFiniteError("Armijo backtracking underflow")
            beta = cand
        else:
            beta = beta - cfg.step_init / np.sqrt(it + 1.0) * g / max(gnorm, 1e-30)
        clock += time.perf_counter() - t0
        _trace_point(inst, full_cs, beta, trace, clock)
    result = beta if smooth else best_beta
    return Hypothesis(beta=result), trace


def _train_sgd(inst, cs, cfg):
    rng = np.random.default_rng(cfg.seed)
    X = inst.X[cs.indices]
    y = inst.y[cs.indices]
    u = cs.weights
    m = len(y)
    beta = np.zeros(inst.d)
    trace = TrainTrace()
    full_cs = _identity_coreset(inst.n)
    clock = 0.0
    for epoch in range(cfg.epochs):
        t0 = time.perf_counter()
        order = rng.permutation(m)
        for lo in range(0, m, cfg.batch_size):
            batch = order[lo : lo + cfg.batch_size]
            Xb, yb, ub = X[batch], y[batch], u[batch]
            z = -yb * (Xb @ beta)
            if inst.loss is LossKind.LOGISTIC:
                dz = 1.0 / (1.0 + np.exp(-z))
            else:
                dz = (z > -1.0).astype(float)
            # mean-objective gradient: per-point loss terms plus the 1/n
            # regularizer share, so the step scale is independent of n
            g = -((ub * dz * yb) @ Xb) / float(np.sum(ub))
            g = g + _reg_value_grad(inst, beta)[1] / inst.n
            beta = beta - cfg.learning_rate * g
        if not np.all(np.isfinite(beta)):
            raise NonFiniteError(f"SGD diverged in epoch {epoch}")
        clock += time.perf_counter() - t0
        _trace_point(inst, full_cs, beta, trace, clock)
    return Hypothesis(beta=beta), trace


def relative_suboptimality(
    inst: RlmInstance, beta_coreset: Hypothesis, beta_full: Hypothesis
) -> float:
    """F(beta_C)/F(beta_full) - 1 on the full instance."""
    full_cs = _identity_coreset(inst.n)
    f_c, _ = weighted_objective_grad(inst, full_cs, beta_coreset.beta)
    f_f, _ = weighted_objective_grad(inst, full_cs, beta_full.beta)
    if f_f <= 0:
        raise ZeroDivisionError("full-data optimum objective is zero")
    return f_c / f_f - 1.0
