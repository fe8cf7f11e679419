"""Returns to scale from the bounds of the free multiplier ``u_o``.

At a WR-efficient point ``(x, y)`` the supporting hyperplanes are the
feasible solutions of::

    u'y - u_o = 1,  v'x = 1
    u'Y - v'X - u_o 1' <= 0
    v'P <= 0,  u'Q <= 0,  u, v >= 0,  u_o free

Minimizing and maximizing ``u_o`` over this set gives the lower and upper
bounds; their signs decide increasing, constant or decreasing RTS.
"""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from ._base import DEFAULT_TOL, ModelError, NotWrEfficientError
from .lp import LpProblem, LpStatus, Sense, solve_lp


class RtsClass(str, Enum):
    INCREASING = "I"
    CONSTANT = "C"
    DECREASING = "D"


@dataclass(frozen=True)
class RtsBounds:
    lower: float
    upper: float  # math.inf when the maximization is unbounded

    @property
    def upper_unbounded(self):
        return math.isinf(self.upper)


@dataclass(frozen=True, eq=False)
class MultiplierSolution:
    u: np.ndarray
    v: np.ndarray
    u_o: float


def multiplier_system(instance, wr, x, y):
    """Equality form in ``[u, v, u_o, t (n), r (k), q (l)]`` with slacks t, r, q."""
    wr.check_pairing(instance)
    X, Y, P, Q = instance.inputs, instance.outputs, wr.P, wr.Q
    m, s, n, k, l = instance.m, instance.s, instance.n, wr.k, wr.l
    x = np.asarray(x, dtype=float).reshape(m)
    y = np.asarray(y, dtype=float).reshape(s)
    size = s + m + 1 + n + k + l
    iu, iv, io = slice(0, s), slice(s, s + m), s + m
    it = slice(io + 1, io + 1 + n)
    ir = slice(it.stop, it.stop + k)
    iq = slice(ir.stop, ir.stop + l)
    A = np.zeros((2 + n + k + l, size))
    A[0, iu] = y
    A[0, io] = -1.0
    A[1, iv] = x
    A[2:2 + n, iu] = Y.T
    A[2:2 + n, iv] = -X.T
    A[2:2 + n, io] = -1.0
    A[2:2 + n, it] = np.eye(n)
    A[2 + n:2 + n + k, iv] = P.T
    A[2 + n:2 + n + k, ir] = np.eye(k)
    A[2 + n + k:, iu] = Q.T
    A[2 + n + k:, iq] = np.eye(l)
    b = np.zeros(A.shape[0])
    b[:2] = 1.0
    lb = np.zeros(size)
    lb[io] = -np.inf
    return A, b, lb, (iu, iv, io)


def u_bounds(instance, wr, point, tol=DEFAULT_TOL, return_solutions=False):
    """Lower and upper bound of ``u_o`` at ``point = (x, y)``.

    The ``n`` envelopment constraints range over the observed DMUs only; the
    point enters through the two normalizations.

    Raises
    ------
    NotWrEfficientError
        If the multiplier model is infeasible, i.e. the point lies strictly
        inside the technology.
    """
    x, y = point
    A, b, lb, (iu, iv, io) = multiplier_system(instance, wr, x, y)
    c = np.zeros(A.shape[1])
    c[io] = 1.0
    results = {}
    for sense in (Sense.MINIMIZE, Sense.MAXIMIZE):
        sol = solve_lp(LpProblem(c, A, b, lb, None, sense), tol)
        if sol.status is LpStatus.INFEASIBLE:
            raise NotWrEfficientError(
                f"point x={np.round(np.asarray(x, float), 6).tolist()}, "
                f"y={np.round(np.asarray(y, float), 6).tolist()} is not WR-efficient; "
                "the multiplier model has no feasible solution")
        results[sense] = sol
    low = results[Sense.MINIMIZE]
    if not low.is_optimal:
        raise ModelError("minimization of u_o is unbounded, which cannot happen for u >= 0")
    high = results[Sense.MAXIMIZE]
    upper = math.inf if high.status is LpStatus.UNBOUNDED else high.objective
    bounds = RtsBounds(float(low.objective), float(upper))
    if not return_solutions:
        return bounds
    sols = [MultiplierSolution(np.array(r.x[iu]), np.array(r.x[iv]), float(r.x[io]))
            for r in (low, high) if r.is_optimal]
    return bounds, sols


def classify(bounds, tol=DEFAULT_TOL):
    """RTS class from the sign pattern of the ``u_o`` bounds.

    Increasing when the upper bound is negative, decreasing when the lower
    bound is positive, constant when zero lies in ``[lower, upper]``; all
    sign tests use ``tol.sign``.
    """
    if bounds.upper < -tol.sign:
        return RtsClass.INCREASING
    if bounds.lower > tol.sign:
        return RtsClass.DECREASING
    return RtsClass.CONSTANT
