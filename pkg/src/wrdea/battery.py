"""A reproducible battery of small, deliberately degenerate DEA instances.

Used by ``wrdea check`` and by the test suite.  Sizes stay inside the
oracle's enumeration limits (n <= 8, m <= 3, s <= 2).
"""
from dataclasses import dataclass

import numpy as np

from .data import DeaInstance, RestrictionSpec, WeightRestrictions, compile_restrictions


@dataclass(frozen=True, eq=False)
class Case:
    name: str
    instance: DeaInstance
    wr: WeightRestrictions


def _labels(n):
    return [chr(ord("A") + j) for j in range(n)]


def toy_two_inputs():
    """A=(1,3|1), B=(3,1|1), E=(2,2|1), C=(4,4|1)."""
    inst = DeaInstance(["A", "B", "E", "C"], [[1, 3, 2, 4], [3, 1, 2, 4]], [[1, 1, 1, 1]])
    return Case("toy-ABEC", inst, WeightRestrictions.none(2, 1))


def toy_single_input():
    """A=(1|1), B=(2|3), C=(3|3)."""
    inst = DeaInstance(["A", "B", "C"], [[1, 2, 3]], [[1, 3, 3]])
    return Case("toy-ABC", inst, WeightRestrictions.none(1, 1))


def chain_restrictions(rng, m, s):
    """Assurance-region chains ``w_i - c w_j <= 0`` with ``i < j``; always admit positive weights."""
    specs = []
    for side, size in (("input", m), ("output", s)):
        if size < 2:
            continue
        for i in range(size - 1):
            if rng.random() < 0.75:
                j = int(rng.integers(i + 1, size))
                c = float(rng.choice([1 / 3, 0.5, 1.0, 2.0, 3.0]))
                specs.append(RestrictionSpec(side, {i + 1: 1.0, j + 1: -c}))
    if not specs and m >= 2:
        specs.append(RestrictionSpec("input", {1: 1.0, 2: -0.5}))
    return specs


def _random_integer(rng, n, m, s, low=1, high=9):
    X = rng.integers(low, high + 1, size=(m, n)).astype(float)
    Y = rng.integers(low, high + 1, size=(s, n)).astype(float)
    return X, Y


def _collinear(rng, n, m, s):
    """Frontier units plus convex combinations of them (ties and alternate optima)."""
    base = max(2, n // 2)
    X, Y = _random_integer(rng, base, m, s, 1, 6)
    cols_x, cols_y = [X], [Y]
    while sum(c.shape[1] for c in cols_x) < n:
        i, j = rng.choice(base, size=2, replace=False)
        w = float(rng.choice([0.25, 0.5, 0.75]))
        x = w * X[:, i] + (1 - w) * X[:, j]
        y = w * Y[:, i] + (1 - w) * Y[:, j]
        if rng.random() < 0.5:
            # push it inside: inflate one input so it carries slack
            x = x.copy()
            x[rng.integers(m)] += float(rng.integers(1, 3))
        cols_x.append(x[:, None])
        cols_y.append(y[:, None])
    return np.hstack(cols_x), np.hstack(cols_y)


def _with_duplicates(rng, n, m, s):
    X, Y = _random_integer(rng, n - 2, m, s, 1, 5)
    idx = rng.integers(0, n - 2, size=2)
    return np.hstack([X, X[:, idx]]), np.hstack([Y, Y[:, idx]])


def _staircase(rng, n, m, s):
    """Units on axis-parallel frontier pieces, which produce weakly efficient points."""
    X, Y = _random_integer(rng, n, m, s, 2, 6)
    j = int(rng.integers(n))
    X[:, j] = X[:, j].min()
    Y[:, j] = Y.max(axis=1)
    k = (j + 1) % n
    X[:, k] = X[:, j]
    X[0, k] += 2.0
    Y[:, k] = Y[:, j]
    return X, Y


def build_battery(seed=7, size=36):
    """Return ``size`` (at least 30) cases generated from ``seed``."""
    rng = np.random.default_rng(seed)
    cases = [toy_two_inputs(), toy_single_input()]
    makers = [
        ("random", lambda n, m, s: _random_integer(rng, n, m, s)),
        ("collinear", lambda n, m, s: _collinear(rng, n, m, s)),
        ("duplicates", lambda n, m, s: _with_duplicates(rng, n, m, s)),
        ("staircase", lambda n, m, s: _staircase(rng, n, m, s)),
    ]
    t = 0
    while len(cases) < size:
        kind, make = makers[t % len(makers)]
        restricted = (t // len(makers)) % 2 == 1
        n = int(rng.integers(4, 9))
        m = int(rng.integers(1, 4))
        s = int(rng.integers(1, 3))
        if restricted and m == 1 and s == 1:
            m = 2
        X, Y = make(n, m, s)
        inst = DeaInstance(_labels(X.shape[1]), X, Y)
        if restricted:
            wr = compile_restrictions(chain_restrictions(rng, m, s), m, s)
        else:
            wr = WeightRestrictions.none(m, s)
        tag = "wr" if restricted else "bcc"
        cases.append(Case(f"{kind}-{tag}-{t:02d}", inst, wr))
        t += 1
    return cases
