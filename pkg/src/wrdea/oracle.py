"""Brute-force references for testing: vertex enumeration and exhaustive supports.

Nothing here calls the simplex engine.  Vertices are found by trying every
candidate basis, solving the square system and keeping the nonnegative
solutions, which is exponential and therefore guarded by hard size limits.
"""
from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np

from ._base import DEFAULT_TOL, StructuralError, WrdeaError
from .envelopment import envelopment_system

MAX_VARIABLES = 20
VERTEX_TOL = 1e-9
_CHUNK = 4096


class OracleLimitError(WrdeaError):
    """The polyhedron is too large for exhaustive enumeration."""


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """``{x : A x = b, x_i >= 0 for nonneg_mask[i], x <= upper}``."""

    A: np.ndarray
    b: np.ndarray
    nonneg_mask: np.ndarray = None
    upper: np.ndarray = None

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.shape[0] != b.size:
            raise StructuralError(f"A has {A.shape[0]} rows but b has {b.size} entries")
        v = A.shape[1]
        mask = np.ones(v, bool) if self.nonneg_mask is None else np.asarray(self.nonneg_mask, bool)
        upper = np.full(v, np.inf) if self.upper is None else np.asarray(self.upper, float)
        if mask.size != v or upper.size != v:
            raise StructuralError("nonneg_mask and upper must have one entry per variable")
        if np.any(np.isfinite(upper) & ~mask):
            raise StructuralError("upper bounds are only supported on nonnegative variables")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "nonneg_mask", mask)
        object.__setattr__(self, "upper", upper)

    @property
    def n_vars(self):
        return self.A.shape[1]


def _with_box_slacks(poly):
    boxed = np.flatnonzero(np.isfinite(poly.upper))
    v = poly.n_vars
    if boxed.size == 0:
        return poly.A, poly.b, poly.nonneg_mask
    A = np.zeros((poly.A.shape[0] + boxed.size, v + boxed.size))
    A[:poly.A.shape[0], :v] = poly.A
    for t, i in enumerate(boxed):
        A[poly.A.shape[0] + t, i] = 1.0
        A[poly.A.shape[0] + t, v + t] = 1.0
    b = np.concatenate([poly.b, poly.upper[boxed]])
    mask = np.concatenate([poly.nonneg_mask, np.ones(boxed.size, bool)])
    return A, b, mask


def _independent_rows(A, b, tol):
    """Drop redundant rows; ``None`` if the system is inconsistent."""
    keep = []
    rank = 0
    for i in range(A.shape[0]):
        cand = keep + [i]
        r = np.linalg.matrix_rank(A[cand], tol=tol) if A.shape[1] else 0
        if r > rank:
            keep.append(i)
            rank = r
    Ab = np.column_stack([A, b])
    if np.linalg.matrix_rank(Ab, tol=tol) > rank:
        return None
    return A[keep], b[keep]


def enumerate_vertices(poly, cap=10000):
    """All basic feasible solutions of ``poly``, deduplicated.

    Parameters
    ----------
    poly : Polyhedron
    cap : int
        Maximum number of vertices; exceeding it raises ``OracleLimitError``.

    Returns
    -------
    list of ndarray
        Vertices in the original variables (box slacks are dropped).
    """
    A, b, mask = _with_box_slacks(poly)
    v0 = poly.n_vars
    if A.shape[1] > MAX_VARIABLES:
        raise OracleLimitError(
            f"{A.shape[1]} variables (after box slacks) exceed the oracle limit of {MAX_VARIABLES}")
    scale = 1.0 + max(np.abs(A).max(initial=0.0), np.abs(b).max(initial=0.0))
    reduced = _independent_rows(A, b, 1e-10 * scale)
    if reduced is None:
        return []
    A, b = reduced
    r = A.shape[0]
    free = np.flatnonzero(~mask)
    nonneg = np.flatnonzero(mask)
    if free.size > r or (free.size and np.linalg.matrix_rank(A[:, free]) < free.size):
        # a line inside the polyhedron: no vertices
        return []
    feas_tol = VERTEX_TOL * scale
    k = r - free.size
    vertices = []
    combos = combinations(nonneg.tolist(), k)
    while True:
        picked = list(islice(combos, _CHUNK))
        if not picked:
            break
        chunk = np.array(picked, dtype=int).reshape(len(picked), k)
        cols = np.hstack([np.broadcast_to(free, (chunk.shape[0], free.size)), chunk])
        for x in _basic_solutions(A, b, cols, mask, feas_tol):
            x = x[:v0]
            if any(np.abs(x - w).max() <= VERTEX_TOL * (1.0 + np.abs(w).max()) for w in vertices):
                continue
            vertices.append(x)
            if len(vertices) > cap:
                raise OracleLimitError(f"more than {cap} vertices")
        if r == 0:
            break
    return vertices


def _basic_solutions(A, b, cols, mask, feas_tol):
    """Feasible basic solutions for a batch of candidate bases (one per row of ``cols``)."""
    r = A.shape[0]
    if r == 0:
        yield np.zeros(A.shape[1])
        return
    B = np.transpose(A[:, cols], (1, 0, 2))  # (batch, r, r)
    # Hadamard-scaled determinant screens out singular bases
    norms = np.prod(np.linalg.norm(B, axis=1), axis=1)
    det = np.abs(np.linalg.det(B))
    ok = (norms > 0) & (det > 1e-10 * norms)
    if not np.any(ok):
        return
    B, cols = B[ok], cols[ok]
    xb = np.linalg.solve(B, np.broadcast_to(b, (B.shape[0], r))[..., None])[..., 0]
    X = np.zeros((B.shape[0], A.shape[1]))
    np.put_along_axis(X, cols, xb, axis=1)
    feasible = np.all(X[:, mask] >= -feas_tol, axis=1)
    X = X[feasible]
    X[:, mask] = np.maximum(X[:, mask], 0.0)
    resid = np.abs(X @ A.T - b).max(axis=1)
    for x in X[resid <= feas_tol]:
        yield x


def omega_polyhedron(instance, wr, evaluation):
    """Optimal intensity set of the envelopment model for the evaluated DMU.

    Variables are ``[lam, pi, tau, s_in, s_out]``; ``theta`` is fixed at its
    optimum and the slack sum at its optimum.
    """
    A, b, lay = envelopment_system(instance, wr, evaluation.dmu_index)
    # fold the fixed theta column into the right-hand side
    b = b - A[:, 0] * evaluation.theta_star
    A = A[:, 1:]
    row = np.zeros(A.shape[1])
    row[lay.s_in.start - 1:lay.s_out.stop - 1] = 1.0
    A = np.vstack([A, row])
    b = np.concatenate([b, [evaluation.slack_sum]])
    return Polyhedron(A, b)


def omega_support_union(instance, wr, evaluation, tol=DEFAULT_TOL, cap=10000):
    """Union of intensity supports over every vertex of the optimal intensity set."""
    vertices = enumerate_vertices(omega_polyhedron(instance, wr, evaluation), cap)
    n = instance.n
    union = set()
    for vert in vertices:
        union.update(np.flatnonzero(vert[:n] > tol.support).tolist())
    return frozenset(union)


def omega_vertex_supports(instance, wr, evaluation, tol=DEFAULT_TOL, cap=10000):
    """Distinct intensity supports of the vertices, sorted."""
    vertices = enumerate_vertices(omega_polyhedron(instance, wr, evaluation), cap)
    n = instance.n
    supports = {frozenset(np.flatnonzero(v[:n] > tol.support).tolist()) for v in vertices}
    return sorted(supports, key=lambda s: (len(s), sorted(s)))


def bcc_score(instance, o, cap=10000):
    """Input-oriented BCC efficiency of DMU ``o`` by minimizing over vertices."""
    X, Y = instance.inputs, instance.outputs
    m, s, n = instance.m, instance.s, instance.n
    # variables: lam (n), theta, s_in (m), s_out (s)
    A = np.zeros((m + s + 1, n + 1 + m + s))
    A[:m, :n] = X
    A[:m, n] = -X[:, o]
    A[:m, n + 1:n + 1 + m] = np.eye(m)
    A[m:m + s, :n] = Y
    A[m:m + s, n + 1 + m:] = -np.eye(s)
    A[m + s, :n] = 1.0
    b = np.concatenate([np.zeros(m), Y[:, o], [1.0]])
    vertices = enumerate_vertices(Polyhedron(A, b), cap)
    return min(v[n] for v in vertices)


def bcc_scores(instance, cap=10000):
    return np.array([bcc_score(instance, o, cap) for o in range(instance.n)])


def lp_vertex_minimum(c, A, b, lb, ub, cap=10000):
    """Minimum of ``c @ x`` over ``{A x = b, lb <= x <= ub}`` with finite boxes.

    Returns ``None`` when the set is empty.
    """
    c, A, b = (np.asarray(a, dtype=float) for a in (c, A, b))
    lb, ub = np.asarray(lb, float), np.asarray(ub, float)
    if not (np.all(np.isfinite(lb)) and np.all(np.isfinite(ub))):
        raise StructuralError("lp_vertex_minimum needs finite boxes")
    A = A.reshape(-1, c.size)
    poly = Polyhedron(A, b - A @ lb, upper=ub - lb)
    vertices = enumerate_vertices(poly, cap)
    if not vertices:
        return None
    return min(float(c @ (lb + z)) for z in vertices)
