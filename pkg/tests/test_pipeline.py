import math
import time

import numpy as np
import pytest

import wrdea.pipeline as pipeline
from wrdea import ModelError
from wrdea.data import (
    DeaInstance, RestrictionSpec, WeightRestrictions, compile_restrictions)
from wrdea.envelopment import evaluate_point
from wrdea.pipeline import Group, RunOptions, analyze_dmu, run_all
from wrdea.rts import RtsClass

from conftest import random_instance


def test_single_dmu(single):
    inst, wr = single
    (rep,) = run_all(inst, wr)
    assert rep.group is Group.GROUP1_EFFICIENT
    assert rep.bounds.lower == pytest.approx(-1.0)
    assert math.isinf(rep.bounds.upper)
    assert rep.rts is RtsClass.CONSTANT


def test_toy_zero_slack_branch(abec):
    reports = run_all(abec.instance, abec.wr)
    assert [r.group for r in reports[:3]] == [Group.GROUP1_EFFICIENT] * 3
    c = reports[3]
    assert c.group is Group.GROUP1_ZERO_SLACK
    assert c.grs is None
    np.testing.assert_allclose(np.concatenate(c.rts_point), [2, 2, 1], atol=1e-9)


def test_single_input_toy_classes(abc):
    reports = run_all(abc.instance, abc.wr)
    assert [r.rts for r in reports] == [RtsClass.INCREASING, RtsClass.CONSTANT,
                                       RtsClass.CONSTANT]
    assert reports[0].bounds.upper == pytest.approx(-0.5)


def test_group_two_uses_pmax():
    # B carries input slack behind A
    inst = DeaInstance(["A", "B", "C"], [[1, 3, 4], [1, 1, 4]], [[1, 1, 3]])
    reports = run_all(inst, WeightRestrictions.none(2, 1))
    b = reports[1]
    assert b.group is Group.GROUP2
    assert b.grs is not None and b.grs.members == {0}
    np.testing.assert_allclose(np.concatenate(b.rts_point), [1, 1, 1], atol=1e-9)


def test_partition_is_exhaustive(battery):
    for case in battery:
        for rep in run_all(case.instance, case.wr):
            assert rep.ok
            assert rep.group in set(Group)
            efficient = rep.status.value == "WrEfficient"
            assert efficient == (rep.group is Group.GROUP1_EFFICIENT)


def test_zero_slack_projection_matches_radial_point_without_restriction_terms(battery):
    seen = 0
    for case in battery:
        for rep in run_all(case.instance, case.wr):
            if rep.group is not Group.GROUP1_ZERO_SLACK:
                continue
            ev = rep.evaluation
            if ev.pi.sum() + ev.tau.sum() > 1e-9:
                continue
            seen += 1
            x_o, y_o = case.instance.x(rep.dmu_index), case.instance.y(rep.dmu_index)
            np.testing.assert_allclose(rep.rts_point[0], ev.theta_star * x_o, atol=1e-8)
            np.testing.assert_allclose(rep.rts_point[1], y_o, atol=1e-8)
    assert seen > 0


def test_zero_slack_point_follows_the_restriction_direction():
    # A's radial point (1, 2.5) is reached through pi > 0; the projection is B = (4, 1)
    inst = DeaInstance(["A", "B"], [[2, 4], [5, 1]], [[5, 5]])
    wr = compile_restrictions([RestrictionSpec("input", {1: 1, 2: -0.5})], 2, 1)
    rep = analyze_dmu(inst, wr, 0)
    assert rep.group is Group.GROUP1_ZERO_SLACK
    assert rep.theta_star == pytest.approx(0.5)
    np.testing.assert_allclose(rep.evaluation.pi, [3.0], atol=1e-9)
    np.testing.assert_allclose(rep.rts_point[0], [4.0, 1.0], atol=1e-9)
    assert not np.allclose(rep.rts_point[0], rep.theta_star * inst.x(0))


def test_permutation(battery, rng):
    for case in battery[:12]:
        inst, wr = case.instance, case.wr
        order = rng.permutation(inst.n)
        base = run_all(inst, wr)
        shuffled = run_all(inst.permuted(order), wr)
        for pos, j in enumerate(order):
            a, b = base[j], shuffled[pos]
            assert a.label == b.label
            assert a.group is b.group and a.rts is b.rts
            assert a.theta_star == pytest.approx(b.theta_star, abs=1e-9)
            np.testing.assert_allclose(np.concatenate(a.rts_point), np.concatenate(b.rts_point),
                                       atol=1e-7)


def test_force_grs(battery):
    for case in battery[:8]:
        for rep in run_all(case.instance, case.wr, options=RunOptions(force_grs=True)):
            assert rep.grs is not None
            again = evaluate_point(case.instance, case.wr, *rep.grs.p_max)
            assert again.theta_star == pytest.approx(1.0, abs=1e-6)
            assert again.slack_sum <= 1e-5


def test_errors_are_isolated(abc, monkeypatch, caplog):
    real = pipeline.u_bounds

    def flaky(instance, wr, point, tol):
        if np.allclose(point[0], instance.x(1)):
            raise ModelError("solver gave up")
        return real(instance, wr, point, tol)

    monkeypatch.setattr(pipeline, "u_bounds", flaky)
    reports = run_all(abc.instance, abc.wr)
    assert [r.ok for r in reports] == [True, False, False]  # C projects onto B
    assert "solver gave up" in reports[1].error
    assert "DMU B failed" in caplog.text


def test_inconsistent_restrictions_reported_per_dmu():
    inst = DeaInstance(["A", "B"], [[1, 2]], [[1, 2]])
    wr = compile_restrictions([RestrictionSpec("input", {1: 1.0})], 1, 1)
    reports = run_all(inst, wr)
    assert all(not r.ok and r.error.startswith("ModelError") for r in reports)


def test_deterministic(battery):
    case = battery[5]
    a = run_all(case.instance, case.wr, options=RunOptions(force_grs=True))
    b = run_all(case.instance, case.wr, options=RunOptions(force_grs=True))
    for ra, rb in zip(a, b):
        assert ra.theta_star == rb.theta_star
        assert np.array_equal(ra.grs.lambda_max, rb.grs.lambda_max)
        assert ra.bounds == rb.bounds


def test_eighty_dmus_four_inputs_within_budget():
    rng = np.random.default_rng(2024)
    inst = random_instance(rng, 80, 4, 1, 1, 60)
    specs = [RestrictionSpec("input", {1: 1.0, 2: -1 / 3}),
             RestrictionSpec("input", {2: 1.0, 3: -0.5}),
             RestrictionSpec("input", {3: 1.0, 4: -1.0})]
    wr = compile_restrictions(specs, 4, 1)
    start = time.perf_counter()
    reports = run_all(inst, wr)
    elapsed = time.perf_counter() - start
    assert all(r.ok for r in reports)
    assert elapsed < 10.0
