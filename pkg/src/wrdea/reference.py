"""Global reference set and maximal projection of a DMU.

The set of optimal intensity vectors of the envelopment model is a polytope
(the envelopment equalities with ``theta`` and the slack sum pinned to their
optimal values).  The LP below finds a point of that polytope with the largest
possible support by splitting each intensity into a capped part ``mu1`` and a
free part ``mu2`` and letting a scale variable ``eta`` blow the polytope up::

    max  1'mu1
    s.t. [X  -P  0   I  0] [mu1+mu2, pi, tau, s_in, s_out]' = eta * theta* x_o
         [Y   0  Q   0 -I]                                 = eta * y_o
         [1'  0  0   0  0]                                 = eta
         [0   0  0  1'  1']                                = eta * slack_sum*
         0 <= mu1 <= 1,  mu2, pi, tau, s >= 0,  1 <= eta <= eta_cap

At the optimum every index that is positive in *some* optimal intensity
vector is positive in ``lambda_max = (mu1 + mu2) / eta``.
"""
from dataclasses import dataclass

import numpy as np

from ._base import DEFAULT_TOL, ModelError
from .envelopment import EfficiencyStatus, evaluate_point, status_of
from .lp import LpProblem, Sense, solve_lp


@dataclass(frozen=True, eq=False)
class MaximalSolution:
    mu1: np.ndarray
    mu2: np.ndarray
    pi: np.ndarray
    tau: np.ndarray
    slack_in: np.ndarray
    slack_out: np.ndarray
    eta: float
    objective: float
    lambda_max: np.ndarray


@dataclass(frozen=True, eq=False)
class GlobalReferenceSet:
    dmu_index: int
    members: frozenset
    lambda_max: np.ndarray
    p_max: tuple

    def weights(self):
        """``{index: lambda_max[index]}`` for members, in index order."""
        return {j: float(self.lambda_max[j]) for j in sorted(self.members)}


def eta_cap(n, tol=DEFAULT_TOL):
    """Upper box on ``eta``.

    Large enough that any maximal intensity vector whose positive entries all
    exceed ``10 * tol.support`` saturates ``mu1``; finite so that round-off in
    the pinned right-hand side cannot be amplified into spurious support.
    """
    return max(float(n + 1), 0.1 / tol.support)


def maximal_system(instance, wr, evaluation):
    """Homogeneous equality system in ``[mu1, mu2, pi, tau, s_in, s_out, eta]``."""
    wr.check_pairing(instance)
    X, Y, P, Q = instance.inputs, instance.outputs, wr.P, wr.Q
    m, s, n, k, l = instance.m, instance.s, instance.n, wr.k, wr.l
    o = evaluation.dmu_index
    size = 2 * n + k + l + m + s + 1
    c_mu1 = slice(0, n)
    c_mu2 = slice(n, 2 * n)
    c_pi = slice(2 * n, 2 * n + k)
    c_tau = slice(c_pi.stop, c_pi.stop + l)
    c_sin = slice(c_tau.stop, c_tau.stop + m)
    c_sout = slice(c_sin.stop, c_sin.stop + s)
    eta = size - 1
    A = np.zeros((m + s + 2, size))
    A[:m, c_mu1] = X
    A[:m, c_mu2] = X
    A[:m, c_pi] = -P
    A[:m, c_sin] = np.eye(m)
    A[:m, eta] = -evaluation.theta_star * X[:, o]
    A[m:m + s, c_mu1] = Y
    A[m:m + s, c_mu2] = Y
    A[m:m + s, c_tau] = Q
    A[m:m + s, c_sout] = -np.eye(s)
    A[m:m + s, eta] = -Y[:, o]
    A[m + s, c_mu1] = 1.0
    A[m + s, c_mu2] = 1.0
    A[m + s, eta] = -1.0
    A[m + s + 1, c_sin] = 1.0
    A[m + s + 1, c_sout] = 1.0
    A[m + s + 1, eta] = -evaluation.slack_sum
    layout = dict(mu1=c_mu1, mu2=c_mu2, pi=c_pi, tau=c_tau, s_in=c_sin, s_out=c_sout, eta=eta)
    return A, layout


def solve_maximal(instance, wr, evaluation, tol=DEFAULT_TOL):
    """Solve the maximal-intensity LP for the DMU of ``evaluation``."""
    A, lay = maximal_system(instance, wr, evaluation)
    n = instance.n
    size = A.shape[1]
    lb = np.zeros(size)
    ub = np.full(size, np.inf)
    ub[lay["mu1"]] = 1.0
    lb[lay["eta"]] = 1.0
    ub[lay["eta"]] = eta_cap(n, tol)
    c = np.zeros(size)
    c[lay["mu1"]] = 1.0
    sol = solve_lp(LpProblem(c, A, np.zeros(A.shape[0]), lb, ub, Sense.MAXIMIZE), tol)
    if not sol.is_optimal:
        raise ModelError(
            f"maximal-intensity LP for DMU {instance.labels[evaluation.dmu_index]!r} is "
            f"{sol.status.value}; the envelopment optimum it was built from is inconsistent")
    z = sol.x
    eta = float(z[lay["eta"]])
    mu1 = np.array(z[lay["mu1"]])
    mu2 = np.array(z[lay["mu2"]])
    return MaximalSolution(
        mu1=mu1, mu2=mu2,
        pi=np.array(z[lay["pi"]]), tau=np.array(z[lay["tau"]]),
        slack_in=np.array(z[lay["s_in"]]), slack_out=np.array(z[lay["s_out"]]),
        eta=eta, objective=sol.objective,
        lambda_max=(mu1 + mu2) / eta,
    )


def global_reference_set(instance, wr, evaluation, tol=DEFAULT_TOL, maximal=None):
    """Members of the WR-global reference set and the maximal projection ``P_max``."""
    if maximal is None:
        maximal = solve_maximal(instance, wr, evaluation, tol)
    lam = maximal.lambda_max
    members = frozenset(np.flatnonzero(lam > tol.support).tolist())
    p_max = (instance.inputs @ lam, instance.outputs @ lam)
    return GlobalReferenceSet(evaluation.dmu_index, members, lam, p_max)


def is_wr_efficient_point(instance, wr, x, y, tol=DEFAULT_TOL):
    """Whether ``(x, y)`` is WR-efficient relative to the observed DMUs."""
    ev = evaluate_point(instance, wr, x, y, tol)
    return status_of(ev, tol) is EfficiencyStatus.WR_EFFICIENT
