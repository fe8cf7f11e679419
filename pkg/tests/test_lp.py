import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wrdea import DEFAULT_TOL, StructuralError
from wrdea.lp import LpProblem, LpStatus, Sense, solve_lp
from wrdea.oracle import lp_vertex_minimum


def test_forced_by_equality():
    sol = solve_lp(LpProblem([1.0], [[1.0]], [1.0]))
    assert sol.status is LpStatus.OPTIMAL
    assert sol.x[0] == pytest.approx(1.0)
    assert sol.objective == pytest.approx(1.0)


def test_constant_objective_on_feasible_set():
    sol = solve_lp(LpProblem([-1.0, -1.0], [[1.0, 1.0]], [1.0]))
    assert sol.is_optimal
    assert sol.objective == pytest.approx(-1.0)


def test_unbounded_ray():
    sol = solve_lp(LpProblem([-1.0], [[0.0]], [0.0]))
    assert sol.status is LpStatus.UNBOUNDED


def test_infeasible_negative_sum():
    sol = solve_lp(LpProblem([0.0, 0.0], [[1.0, 1.0]], [-1.0]))
    assert sol.status is LpStatus.INFEASIBLE


def test_maximize_with_free_and_boxed_variables():
    # max x1 + x2 with x1 free, x2 in [0, 2], x1 - x2 = 1 ... x1 <= 4 via slack
    A = [[1.0, -1.0, 0.0], [1.0, 0.0, 1.0]]
    b = [1.0, 4.0]
    sol = solve_lp(LpProblem([1.0, 1.0, 0.0], A, b, lb=[-np.inf, 0, 0], ub=[np.inf, 2, np.inf],
                             sense=Sense.MAXIMIZE))
    assert sol.is_optimal
    assert sol.x[:2] == pytest.approx([3.0, 2.0])
    assert sol.objective == pytest.approx(5.0)


def test_structural_errors():
    with pytest.raises(StructuralError):
        LpProblem([1.0, 2.0], [[1.0]], [1.0])
    with pytest.raises(StructuralError):
        LpProblem([np.nan], [[1.0]], [1.0])
    with pytest.raises(StructuralError):
        LpProblem([1.0], [[1.0]], [1.0], lb=[2.0], ub=[1.0])


def test_beale_cycling_instance_terminates():
    # classic degenerate instance on which textbook Dantzig pivoting cycles
    c = [0, 0, 0, -0.75, 20, -0.5, 6]
    A = [[1, 0, 0, 0.25, -8, -1, 9],
         [0, 1, 0, 0.5, -12, -0.5, 3],
         [0, 0, 1, 0, 0, 1, 0]]
    b = [0, 0, 1]
    sol = solve_lp(LpProblem(c, A, b))
    assert sol.is_optimal
    assert sol.iterations < 100
    ub = np.full(7, 10.0)
    assert sol.objective == pytest.approx(lp_vertex_minimum(c, A, b, np.zeros(7), ub), abs=1e-9)
    assert sol.objective == pytest.approx(-1.25)


def test_degenerate_rows_and_redundancy():
    # duplicated equality row and a zero row must not trip phase 1
    A = [[1, 1, 0], [1, 1, 0], [0, 0, 0], [0, 1, 1]]
    b = [1, 1, 0, 1]
    sol = solve_lp(LpProblem([1, 2, 3], A, b))
    assert sol.is_optimal
    assert sol.objective == pytest.approx(lp_vertex_minimum([1, 2, 3], A, b, np.zeros(3),
                                                            np.full(3, 5.0)))


def test_deterministic():
    rng = np.random.default_rng(3)
    A = rng.integers(-3, 4, size=(4, 7)).astype(float)
    b = A @ rng.integers(0, 3, size=7)
    c = rng.standard_normal(7)
    first = solve_lp(LpProblem(c, A, b, ub=np.full(7, 4.0)))
    for _ in range(3):
        again = solve_lp(LpProblem(c, A, b, ub=np.full(7, 4.0)))
        assert np.array_equal(first.x, again.x)
        assert first.iterations == again.iterations


@st.composite
def boxed_lps(draw):
    n_vars = draw(st.integers(1, 6))
    n_rows = draw(st.integers(0, 4))
    ints = st.integers(-3, 3)
    A = np.array(draw(st.lists(st.lists(ints, min_size=n_vars, max_size=n_vars),
                               min_size=n_rows, max_size=n_rows)), dtype=float).reshape(n_rows, n_vars)
    lb = np.array(draw(st.lists(st.integers(-2, 1), min_size=n_vars, max_size=n_vars)), float)
    width = np.array(draw(st.lists(st.integers(0, 3), min_size=n_vars, max_size=n_vars)), float)
    c = np.array(draw(st.lists(ints, min_size=n_vars, max_size=n_vars)), float)
    # half the time make the system feasible by construction
    if draw(st.booleans()):
        x0 = lb + width * np.array(draw(st.lists(st.sampled_from([0.0, 0.5, 1.0]),
                                                 min_size=n_vars, max_size=n_vars)))
        b = A @ x0
    else:
        b = np.array(draw(st.lists(ints, min_size=n_rows, max_size=n_rows)), float)
    return c, A, b, lb, lb + width


@settings(max_examples=300, deadline=None)
@given(boxed_lps())
def test_matches_vertex_enumeration(lp):
    c, A, b, lb, ub = lp
    sol = solve_lp(LpProblem(c, A, b, lb, ub))
    expected = lp_vertex_minimum(c, A, b, lb, ub)
    if expected is None:
        assert sol.status is LpStatus.INFEASIBLE
    else:
        assert sol.is_optimal
        assert sol.objective == pytest.approx(expected, abs=1e-8)
        # phase-1 feasibility of the reported point
        scale = 1.0 + np.abs(b).max(initial=0.0)
        assert np.abs(A @ sol.x - b).max(initial=0.0) <= DEFAULT_TOL.feas * scale * 10
        assert np.all(sol.x >= lb - 1e-9) and np.all(sol.x <= ub + 1e-9)


def test_agrees_with_scipy_on_random_unboxed_lps():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = np.random.default_rng(11)
    for _ in range(200):
        rows, cols = rng.integers(1, 6), rng.integers(2, 9)
        A = rng.integers(-4, 5, size=(rows, cols)).astype(float)
        b = A @ rng.integers(0, 3, size=cols) if rng.random() < 0.8 else rng.integers(-5, 6, rows)
        c = rng.integers(-3, 4, size=cols).astype(float)
        ref = scipy_opt.linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
        sol = solve_lp(LpProblem(c, A, b))
        expected = {0: LpStatus.OPTIMAL, 2: LpStatus.INFEASIBLE, 3: LpStatus.UNBOUNDED}[ref.status]
        assert sol.status is expected
        if expected is LpStatus.OPTIMAL:
            assert sol.objective == pytest.approx(ref.fun, abs=1e-7)
