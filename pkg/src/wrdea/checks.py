"""Oracle-backed property checks over a set of instances.

Each ``check_*`` function returns a list of human-readable violations; an
empty list means the property held.
"""
from dataclasses import dataclass, field
import time

import numpy as np

from ._base import DEFAULT_TOL
from .envelopment import (
    EfficiencyStatus, envelopment_system, evaluate, evaluate_point, status_of)
from .lp import LpProblem, solve_lp
from .oracle import bcc_scores, omega_support_union
from .reference import global_reference_set
from .pipeline import run_all


def alternate_optima(instance, wr, evaluation, rng, count=50, tol=DEFAULT_TOL):
    """Optimal intensity vectors found by random linear objectives.

    ``theta`` and the slack sum are pinned to their optimal values, so every
    returned vector is an alternative optimum of the envelopment model.
    """
    A, b, lay = envelopment_system(instance, wr, evaluation.dmu_index)
    row = np.zeros(lay.size)
    row[lay.s_in] = 1.0
    row[lay.s_out] = 1.0
    A = np.vstack([A, row])
    b = np.concatenate([b, [evaluation.slack_sum]])
    lb = np.zeros(lay.size)
    ub = np.full(lay.size, np.inf)
    lb[0] = ub[0] = evaluation.theta_star
    out = []
    for _ in range(count):
        c = np.zeros(lay.size)
        c[lay.lam] = rng.standard_normal(instance.n)
        sol = solve_lp(LpProblem(c, A, b, lb, ub), tol)
        if sol.is_optimal:
            out.append(np.array(sol.x[lay.lam]))
    return out


def check_grs_oracle(instance, wr, tol=DEFAULT_TOL):
    bad = []
    for o in range(instance.n):
        ev = evaluate(instance, wr, o, tol)
        members = global_reference_set(instance, wr, ev, tol).members
        union = omega_support_union(instance, wr, ev, tol)
        if members != union:
            bad.append(f"{instance.labels[o]}: GRS {sorted(members)} != oracle {sorted(union)}")
    return bad


def check_projection_efficient(instance, wr, tol=DEFAULT_TOL, slack_limit=1e-5):
    bad = []
    for o in range(instance.n):
        ev = evaluate(instance, wr, o, tol)
        again = evaluate_point(instance, wr, *ev.projection, tol=tol)
        if abs(again.theta_star - 1.0) > tol.classification or again.slack_sum > slack_limit:
            bad.append(f"{instance.labels[o]}: projection re-evaluates to theta="
                       f"{again.theta_star:.10g}, slack_sum={again.slack_sum:.3g}")
    return bad


def check_support_maximality(instance, wr, rng, count=50, tol=DEFAULT_TOL):
    bad = []
    for o in range(instance.n):
        ev = evaluate(instance, wr, o, tol)
        members = global_reference_set(instance, wr, ev, tol).members
        for lam in alternate_optima(instance, wr, ev, rng, count, tol):
            support = frozenset(np.flatnonzero(lam > tol.support).tolist())
            if not support <= members:
                bad.append(f"{instance.labels[o]}: alternate support {sorted(support)} "
                           f"not within GRS {sorted(members)}")
    return bad


def check_bcc_reduction(instance, wr, tol=DEFAULT_TOL, atol=1e-7):
    if not wr.is_empty:
        return []
    expected = bcc_scores(instance)
    bad = []
    for o in range(instance.n):
        theta = evaluate(instance, wr, o, tol).theta_star
        if abs(theta - expected[o]) > atol:
            bad.append(f"{instance.labels[o]}: theta {theta:.12g} != oracle {expected[o]:.12g}")
    return bad


def check_pmax_efficient(instance, wr, tol=DEFAULT_TOL):
    bad = []
    for o in range(instance.n):
        ev = evaluate(instance, wr, o, tol)
        grs = global_reference_set(instance, wr, ev, tol)
        again = evaluate_point(instance, wr, *grs.p_max, tol=tol)
        if abs(again.theta_star - 1.0) > tol.classification or \
                again.slack_sum > 10 * tol.classification:
            bad.append(f"{instance.labels[o]}: P_max not WR-efficient "
                       f"(theta={again.theta_star:.10g}, slack={again.slack_sum:.3g})")
        for j in grs.members:
            if status_of(evaluate(instance, wr, j, tol), tol) is not EfficiencyStatus.WR_EFFICIENT:
                bad.append(f"{instance.labels[o]}: GRS member {instance.labels[j]} is inefficient")
    return bad


def check_lower_bound(instance, wr, tol=DEFAULT_TOL):
    bad = []
    for rep in run_all(instance, wr, tol):
        if not rep.ok:
            bad.append(f"{rep.label}: {rep.error}")
        elif rep.bounds.lower < -1.0 - 1e-9:
            bad.append(f"{rep.label}: lower bound {rep.bounds.lower!r} < -1")
    return bad


@dataclass
class CheckResult:
    name: str
    violations: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return not self.violations


def run_checks(cases, seed=0, tol=DEFAULT_TOL, count=50):
    """Run every property over ``cases``; one :class:`CheckResult` per property."""
    rng = np.random.default_rng(seed)
    plan = [
        ("GRS equals oracle support union", lambda c: check_grs_oracle(c.instance, c.wr, tol)),
        ("WR-projections are WR-efficient",
         lambda c: check_projection_efficient(c.instance, c.wr, tol)),
        ("alternate optima lie within the GRS",
         lambda c: check_support_maximality(c.instance, c.wr, rng, count, tol)),
        ("BCC reduction matches oracle scores", lambda c: check_bcc_reduction(c.instance, c.wr, tol)),
        ("P_max and GRS members are WR-efficient",
         lambda c: check_pmax_efficient(c.instance, c.wr, tol)),
        ("u_o lower bound >= -1", lambda c: check_lower_bound(c.instance, c.wr, tol)),
    ]
    results = []
    for name, fn in plan:
        start = time.perf_counter()
        res = CheckResult(name)
        for case in cases:
            res.violations.extend(f"[{case.name}] {v}" for v in fn(case))
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results


__all__ = [
    "alternate_optima", "check_grs_oracle", "check_projection_efficient",
    "check_support_maximality", "check_bcc_reduction", "check_pmax_efficient",
    "check_lower_bound", "run_checks", "CheckResult",
]
