import numpy as np
import pytest

from rlm_coreset.model import LossKind, RegularizerKind, RlmInstance, loss_eval, reg_eval

ALL_PAIRS = [(loss, reg) for loss in LossKind for reg in RegularizerKind]


def random_instance(rng, n=50, d=3, loss=LossKind.LOGISTIC,
                    reg=RegularizerKind.L2_SQUARED, kappa=0.5):
    X = rng.standard_normal((n, d))
    y = rng.choice([-1.0, 1.0], size=n)
    return RlmInstance(X=X, y=y, loss=loss, reg=reg, kappa=kappa)


def brute_force_H(inst, cs, h):
    """Direct re-implementation of the relative error definition, point by point."""
    reg_term = inst.lam * reg_eval(inst.reg, inst.R * np.append(h.beta, h.bias)
                                   if h.bias else inst.R * h.beta)
    f = [float(loss_eval(inst.loss, -inst.y[i] * (inst.X[i] @ h.beta + h.bias)))
         + reg_term / inst.n for i in range(inst.n)]
    full = sum(f)
    core = sum(w * f[i] for i, w in zip(cs.indices, cs.weights))
    return abs(full - core) / full


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
