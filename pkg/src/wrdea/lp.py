"""Dense two-phase primal simplex for boxed, equality-constrained LPs.

Problems are given as::

    min / max  c @ x
    s.t.       A @ x == b
               lb <= x <= ub

with ``lb`` possibly ``-inf`` and ``ub`` possibly ``+inf``.  Pivoting follows
Bland's smallest-index rule for both the entering and the leaving variable,
so the solver terminates on degenerate problems and is fully deterministic:
solving the same problem twice yields bit-identical results.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._base import DEFAULT_TOL, ModelError, StructuralError, Tolerances


class Sense(str, Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _frozen(a, ndim, name):
    arr = np.array(a, dtype=float, copy=True)
    if arr.ndim != ndim:
        raise StructuralError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LpProblem:
    """An LP in computational standard form.  Arrays are copied and frozen."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    lb: np.ndarray = None
    ub: np.ndarray = None
    sense: Sense = Sense.MINIMIZE

    def __post_init__(self):
        c = _frozen(self.c, 1, "c")
        A = np.array(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(-1, c.size) if A.ndim == 2 else np.zeros((0, c.size))
        A = _frozen(A, 2, "A")
        b = _frozen(self.b, 1, "b")
        v = c.size
        lb = _frozen(np.zeros(v) if self.lb is None else self.lb, 1, "lb")
        ub = _frozen(np.full(v, np.inf) if self.ub is None else self.ub, 1, "ub")
        if A.shape != (b.size, v):
            raise StructuralError(
                f"constraint matrix has shape {A.shape}, expected ({b.size}, {v})")
        if lb.size != v or ub.size != v:
            raise StructuralError("bound vectors must have the same length as c")
        for name, arr in (("c", c), ("A", A), ("b", b)):
            if not np.all(np.isfinite(arr)):
                raise StructuralError(f"{name} contains NaN or infinite entries")
        if np.any(np.isnan(lb)) or np.any(np.isnan(ub)):
            raise StructuralError("bounds contain NaN")
        if np.any(lb == np.inf) or np.any(ub == -np.inf):
            raise StructuralError("lower bounds must be < +inf and upper bounds > -inf")
        if np.any(lb > ub):
            raise StructuralError("lower bound exceeds upper bound")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "lb", lb)
        object.__setattr__(self, "ub", ub)
        object.__setattr__(self, "sense", Sense(self.sense))

    @property
    def n_vars(self):
        return self.c.size

    @property
    def n_rows(self):
        return self.b.size


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: np.ndarray = None
    objective: float = None
    iterations: int = 0
    info: dict = field(default_factory=dict, compare=False)

    @property
    def is_optimal(self):
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    """Bounded-variable simplex state over ``M @ z == rhs, 0 <= z <= upper``."""

    refactor_every = 50

    def __init__(self, M, rhs, upper, basis, pivot_tol):
        self.M = M
        self.rhs = rhs
        self.upper = upper
        self.basis = np.asarray(basis, dtype=int)
        self.at_upper = np.zeros(M.shape[1], dtype=bool)
        self.pivot_tol = pivot_tol
        self.iterations = 0
        self._since_refactor = 0
        self.refactor()

    def refactor(self):
        B = self.M[:, self.basis]
        shift = self.rhs - self.M[:, self.at_upper] @ self.upper[self.at_upper]
        try:
            self.T = np.linalg.solve(B, self.M)
            self.beta = np.linalg.solve(B, shift)
        except np.linalg.LinAlgError as exc:
            raise ModelError("singular basis encountered during refactorization") from exc
        self._since_refactor = 0

    def values(self):
        z = np.where(self.at_upper, self.upper, 0.0)
        z[self.basis] = self.beta
        return np.clip(z, 0.0, self.upper)

    def run(self, cost, opt_tol, max_iter):
        """Iterate to optimality; returns True when optimal, False when unbounded."""
        n = self.M.shape[1]
        is_basic = np.zeros(n, dtype=bool)
        movable = self.upper > 0
        while True:
            is_basic[:] = False
            is_basic[self.basis] = True
            d = cost - cost[self.basis] @ self.T
            improving = ~is_basic & movable & (
                (~self.at_upper & (d < -opt_tol)) | (self.at_upper & (d > opt_tol)))
            candidates = np.flatnonzero(improving)
            if candidates.size == 0:
                return True
            if self.iterations >= max_iter:
                raise ModelError(f"simplex iteration limit ({max_iter}) reached")
            self.iterations += 1
            j = candidates[0]
            sgn = -1.0 if self.at_upper[j] else 1.0
            alpha = sgn * self.T[:, j]

            t_flip = self.upper[j]
            beta = self.beta
            ub_basic = self.upper[self.basis]
            lims = np.full(alpha.size, np.inf)
            to_upper = np.zeros(alpha.size, dtype=bool)
            down = alpha > self.pivot_tol
            lims[down] = np.maximum(beta[down], 0.0) / alpha[down]
            up = (alpha < -self.pivot_tol) & np.isfinite(ub_basic)
            lims[up] = np.maximum(ub_basic[up] - beta[up], 0.0) / -alpha[up]
            to_upper[up] = True
            t_min = lims.min() if lims.size else np.inf
            if t_min >= t_flip:
                if not np.isfinite(t_flip):
                    return False
                leave = -1
                t_best = t_flip
            else:
                ties = np.flatnonzero(lims <= t_min + 1e-12 * (1.0 + t_min))
                leave = int(ties[np.argmin(self.basis[ties])])
                t_best = lims[leave]
                leave_to_upper = bool(to_upper[leave])

            if leave < 0:
                # entering variable moves to its opposite bound, basis unchanged
                self.beta = beta - t_best * alpha
                self.at_upper[j] = not self.at_upper[j]
                continue

            entering_value = t_best if sgn > 0 else self.upper[j] - t_best
            self.beta = beta - t_best * alpha
            leaving = self.basis[leave]
            self.at_upper[leaving] = leave_to_upper
            self.at_upper[j] = False
            self.basis[leave] = j
            self._pivot(leave, j)
            self.beta[leave] = entering_value
            self._since_refactor += 1
            if self._since_refactor >= self.refactor_every:
                self.refactor()

    def _pivot(self, r, j):
        T = self.T
        piv = T[r, j]
        T[r] /= piv
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])


def _to_nonnegative(problem):
    """Rewrite every variable as a combination of variables boxed in ``[0, u]``.

    Returns the standard-form data and a recovery map ``x = offset + R @ z``.
    """
    A, c, lb, ub = problem.A, problem.c, problem.lb, problem.ub
    if problem.sense is Sense.MAXIMIZE:
        c = -c
    r, v = A.shape
    cols, costs, uppers, recov = [], [], [], []
    offset = np.zeros(v)
    for i in range(v):
        if np.isfinite(lb[i]):
            offset[i] = lb[i]
            cols.append(A[:, i])
            costs.append(c[i])
            uppers.append(ub[i] - lb[i])
            recov.append((i, 1.0))
        elif np.isfinite(ub[i]):
            offset[i] = ub[i]
            cols.append(-A[:, i])
            costs.append(-c[i])
            uppers.append(np.inf)
            recov.append((i, -1.0))
        else:
            cols.extend([A[:, i], -A[:, i]])
            costs.extend([c[i], -c[i]])
            uppers.extend([np.inf, np.inf])
            recov.extend([(i, 1.0), (i, -1.0)])
    M = np.column_stack(cols) if cols else np.zeros((r, 0))
    rhs = problem.b - A @ offset
    R = np.zeros((v, len(recov)))
    for k, (i, s) in enumerate(recov):
        R[i, k] = s
    return M, rhs, np.array(costs, dtype=float), np.array(uppers, dtype=float), offset, R


def solve_lp(problem, tol=DEFAULT_TOL, max_iter=None):
    """Solve ``problem`` with the two-phase bounded simplex method.

    Parameters
    ----------
    problem : LpProblem
    tol : Tolerances
        ``tol.feas`` decides phase-1 feasibility, ``tol.opt`` is the
        reduced-cost threshold.
    max_iter : int, optional
        Pivot limit per phase; defaults to a generous multiple of the size.

    Returns
    -------
    LpSolution
    """
    if not isinstance(problem, LpProblem):
        raise StructuralError("solve_lp expects an LpProblem")
    if not isinstance(tol, Tolerances):
        raise StructuralError("tol must be a Tolerances instance")
    M, rhs, cost, upper, offset, R = _to_nonnegative(problem)
    r, nz = M.shape
    if max_iter is None:
        max_iter = 20000 + 200 * (r + nz)

    neg = rhs < 0
    M = M.copy()
    M[neg] *= -1.0
    rhs = np.where(neg, -rhs, rhs)

    # crash basis: a positive singleton column with room for its value
    basis = np.full(r, -1, dtype=int)
    nonzero = M != 0.0
    singleton = nonzero.sum(axis=0) == 1
    for j in np.flatnonzero(singleton):
        i = int(np.flatnonzero(nonzero[:, j])[0])
        if basis[i] < 0 and M[i, j] > 0 and rhs[i] / M[i, j] <= upper[j]:
            basis[i] = j
    missing = np.flatnonzero(basis < 0)
    n_art = missing.size
    if n_art:
        art = np.zeros((r, n_art))
        art[missing, np.arange(n_art)] = 1.0
        M = np.hstack([M, art])
        upper = np.concatenate([upper, np.full(n_art, np.inf)])
        basis[missing] = nz + np.arange(n_art)

    scale = 1.0 + (np.abs(rhs).max() if r else 0.0)
    tab = _Tableau(M, rhs, upper, basis, pivot_tol=1e-11 * max(1.0, np.abs(M).max(initial=0.0)))

    if n_art:
        phase1 = np.zeros(nz + n_art)
        phase1[nz:] = 1.0
        tab.run(phase1, tol.opt, max_iter)
        tab.refactor()
        infeas = tab.values()[nz:].sum()
        if infeas > tol.feas * scale:
            return LpSolution(LpStatus.INFEASIBLE, iterations=tab.iterations,
                              info={"phase1_residual": float(infeas)})
        upper[nz:] = 0.0
        _drive_out_artificials(tab, nz)

    phase2 = np.concatenate([cost, np.zeros(n_art)])
    bounded = tab.run(phase2, tol.opt, max_iter)
    if not bounded:
        return LpSolution(LpStatus.UNBOUNDED, iterations=tab.iterations)
    tab.refactor()
    z = tab.values()[:nz]
    x = offset + R @ z
    objective = float(problem.c @ x)
    x.setflags(write=False)
    return LpSolution(LpStatus.OPTIMAL, x=x, objective=objective, iterations=tab.iterations)


def _drive_out_artificials(tab, nz):
    """Pivot zero-level artificials out of the basis where a structural pivot exists.

    Artificials left in the basis sit on redundant rows, fixed at zero.
    """
    changed = False
    for row in range(tab.basis.size):
        if tab.basis[row] < nz:
            continue
        entries = np.abs(tab.T[row, :nz])
        entries[tab.basis[tab.basis < nz]] = 0.0
        if entries.size == 0 or entries.max() <= 1e-9:
            continue
        j = int(np.argmax(entries))
        tab.at_upper[tab.basis[row]] = False
        tab._pivot(row, j)
        tab.basis[row] = j
        tab.at_upper[j] = False
        changed = True
    if changed:
        tab.refactor()
