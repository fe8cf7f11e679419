"""Input-oriented weight-restricted envelopment model and WR-efficiency.

For DMU ``o`` the model is::

    min  theta - eps * (1's_in + 1's_out)
    s.t. X lam - P pi + s_in  = theta * x_o
         Y lam + Q tau - s_out = y_o
         1'lam = 1,  lam, pi, tau, s_in, s_out >= 0

The infinitesimal ``eps`` is handled exactly by solving two LPs in turn:
first minimize ``theta``, then fix it and maximize the slack sum.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._base import DEFAULT_TOL, ModelError
from .lp import LpProblem, LpStatus, Sense, solve_lp


class EfficiencyStatus(str, Enum):
    WR_EFFICIENT = "WrEfficient"
    WR_INEFFICIENT = "WrInefficient"


@dataclass(frozen=True, eq=False)
class WrEvaluation:
    dmu_index: int
    theta_star: float
    lambda_: np.ndarray
    pi: np.ndarray
    tau: np.ndarray
    slack_in: np.ndarray
    slack_out: np.ndarray
    slack_sum: float
    projection: tuple

    @property
    def support(self):
        """Indices active in this particular optimal intensity vector (the unary reference set)."""
        return frozenset(np.flatnonzero(self.lambda_ > DEFAULT_TOL.support).tolist())


class _Layout:
    """Column offsets of ``[theta, lam, pi, tau, s_in, s_out]``."""

    def __init__(self, n, k, l, m, s):
        self.n, self.k, self.l, self.m, self.s = n, k, l, m, s
        self.lam = slice(1, 1 + n)
        self.pi = slice(self.lam.stop, self.lam.stop + k)
        self.tau = slice(self.pi.stop, self.pi.stop + l)
        self.s_in = slice(self.tau.stop, self.tau.stop + m)
        self.s_out = slice(self.s_in.stop, self.s_in.stop + s)
        self.size = self.s_out.stop


def envelopment_system(instance, wr, o):
    """Equality system of the model for DMU ``o`` with ``theta`` as column 0.

    Returns ``(A, b, layout)`` with rows ordered inputs, outputs, convexity.
    """
    wr.check_pairing(instance)
    X, Y, P, Q = instance.inputs, instance.outputs, wr.P, wr.Q
    m, s, n, k, l = instance.m, instance.s, instance.n, wr.k, wr.l
    lay = _Layout(n, k, l, m, s)
    A = np.zeros((m + s + 1, lay.size))
    A[:m, 0] = -X[:, o]
    A[:m, lay.lam] = X
    A[:m, lay.pi] = -P
    A[:m, lay.s_in] = np.eye(m)
    A[m:m + s, lay.lam] = Y
    A[m:m + s, lay.tau] = Q
    A[m:m + s, lay.s_out] = -np.eye(s)
    A[m + s, lay.lam] = 1.0
    b = np.concatenate([np.zeros(m), Y[:, o], [1.0]])
    return A, b, lay


def evaluate(instance, wr, o, tol=DEFAULT_TOL):
    """Lexicographic optimum of the WR envelopment model for DMU ``o``.

    Returns one optimal representative; which one depends only on the
    deterministic pivoting of the LP engine.
    """
    if not 0 <= o < instance.n:
        raise IndexError(f"DMU index {o} out of range for {instance.n} DMUs")
    A, b, lay = envelopment_system(instance, wr, o)
    lb = np.zeros(lay.size)
    ub = np.full(lay.size, np.inf)
    lb[0] = -np.inf

    c = np.zeros(lay.size)
    c[0] = 1.0
    phase_a = solve_lp(LpProblem(c, A, b, lb, ub), tol)
    if phase_a.status is LpStatus.UNBOUNDED:
        raise ModelError(
            f"efficiency of DMU {instance.labels[o]!r} is unbounded below: the weight "
            "restrictions leave no admissible positive input weights")
    if not phase_a.is_optimal:
        raise ModelError(
            f"envelopment model for DMU {instance.labels[o]!r} is {phase_a.status.value}; "
            "the data or restrictions are inconsistent")
    theta = min(phase_a.x[0], 1.0)

    lb[0] = ub[0] = theta
    c = np.zeros(lay.size)
    c[lay.s_in] = 1.0
    c[lay.s_out] = 1.0
    phase_b = solve_lp(LpProblem(c, A, b, lb, ub, Sense.MAXIMIZE), tol)
    if not phase_b.is_optimal:
        raise ModelError(
            f"slack maximization for DMU {instance.labels[o]!r} is {phase_b.status.value}")
    return _evaluation(instance, o, theta, phase_b.x, lay)


def _evaluation(instance, o, theta, z, lay):
    lam = np.array(z[lay.lam])
    s_in = np.array(z[lay.s_in])
    s_out = np.array(z[lay.s_out])
    projection = (instance.inputs @ lam, instance.outputs @ lam)
    return WrEvaluation(
        dmu_index=o,
        theta_star=float(theta),
        lambda_=lam,
        pi=np.array(z[lay.pi]),
        tau=np.array(z[lay.tau]),
        slack_in=s_in,
        slack_out=s_out,
        slack_sum=float(s_in.sum() + s_out.sum()),
        projection=projection,
    )


def evaluate_point(instance, wr, x, y, tol=DEFAULT_TOL):
    """Evaluate an arbitrary activity ``(x, y)`` against the observed DMUs plus itself."""
    extended = instance.with_point(x, y)
    return evaluate(extended, wr, extended.n - 1, tol)


def status_of(evaluation, tol=DEFAULT_TOL):
    """WR-efficient iff ``theta* == 1`` and all optimal slacks vanish (within tolerance)."""
    if (abs(evaluation.theta_star - 1.0) <= tol.classification
            and evaluation.slack_sum <= tol.classification):
        return EfficiencyStatus.WR_EFFICIENT
    return EfficiencyStatus.WR_INEFFICIENT


def radial_projection(evaluation):
    """The WR-projection ``(X lam*, Y lam*)`` of an evaluation."""
    x_hat, y_hat = evaluation.projection
    return x_hat.copy(), y_hat.copy()


def projection_from_slacks(instance, wr, evaluation):
    """The same projection written as ``(theta* x_o + P pi - s_in, y_o - Q tau + s_out)``."""
    o = evaluation.dmu_index
    x_hat = (evaluation.theta_star * instance.x(o) + wr.P @ evaluation.pi
             - evaluation.slack_in)
    y_hat = instance.y(o) - wr.Q @ evaluation.tau + evaluation.slack_out
    return x_hat, y_hat
