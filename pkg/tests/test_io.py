import json

import numpy as np
import pytest

from wrdea import ParseError, StructuralError
from wrdea.battery import toy_two_inputs
from wrdea.data import DeaInstance, WeightRestrictions, compile_restrictions
from wrdea.io import (
    parse_dataset, parse_restrictions, read_report, render_report, write_dataset, write_report)
from wrdea.pipeline import RunOptions, run_all


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_bytes(text.encode("utf-8"))
    return path


def test_parse_small_dataset(tmp_path):
    inst = parse_dataset(_write(tmp_path, "d.csv", "dmu,x1,y1\nA,1,1\nB,2,3\nC,3,3"))
    assert (inst.n, inst.m, inst.s) == (3, 1, 1)
    assert inst.labels == ("A", "B", "C")
    np.testing.assert_array_equal(inst.outputs, [[1, 3, 3]])


def test_outputs_before_inputs_rejected(tmp_path):
    with pytest.raises(ParseError, match="precede"):
        parse_dataset(_write(tmp_path, "d.csv", "dmu,y1,x1\nA,1,1\n"))


@pytest.mark.parametrize("text, row, column", [
    ("", 1, None),
    ("name,x1,y1\nA,1,1\n", 1, 1),
    ("dmu,x1,y1\nA,1,abc\n", 2, 3),
    ("dmu,x1,y1\nA,1,1\nA,2,2\n", 3, 1),
    ("dmu,x1,y1\nA,1,1\nB,-2,2\n", 3, 2),
    ("dmu,x1,y1\nA,1\n", 2, None),
    ("dmu,x1,z1\nA,1,1\n", 1, 3),
])
def test_parse_errors_carry_coordinates(tmp_path, text, row, column):
    with pytest.raises(ParseError) as info:
        parse_dataset(_write(tmp_path, "d.csv", text))
    assert info.value.row == row
    assert info.value.column == column


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="not found"):
        parse_dataset(tmp_path / "nope.csv")


def test_crlf_and_whitespace_tolerated(tmp_path):
    inst = parse_dataset(_write(tmp_path, "d.csv", "dmu, x1 ,y1\r\nA, 1,2\r\n\r\n"))
    assert inst.n == 1


def test_dataset_round_trip(tmp_path):
    inst = toy_two_inputs().instance
    path = tmp_path / "toy.csv"
    write_dataset(inst, path)
    again = parse_dataset(path)
    assert again.labels == inst.labels
    np.testing.assert_array_equal(again.inputs, inst.inputs)
    np.testing.assert_array_equal(again.outputs, inst.outputs)


def test_school_restrictions_file(tmp_path):
    doc = [{"side": "input", "coeffs": {"1": 1.0, "2": -0.3333333333}},
           {"side": "input", "coeffs": {"2": 1.0, "3": -0.5}},
           {"side": "input", "coeffs": {"3": 1.0, "4": -1.0}}]
    specs = parse_restrictions(_write(tmp_path, "r.json", json.dumps(doc)))
    wr = compile_restrictions(specs, 4, 1)
    assert wr.k == 3
    np.testing.assert_allclose(wr.P, [[1, 0, 0], [-1 / 3, 1, 0], [0, -0.5, 1], [0, 0, -1]],
                               atol=1e-9)


def test_empty_restrictions_file(tmp_path):
    assert parse_restrictions(_write(tmp_path, "r.json", "[]")) == []


def test_output_restriction_file(tmp_path):
    specs = parse_restrictions(_write(tmp_path, "r.json",
                                      '[{"side":"output","coeffs":{"1":1,"2":-2}}]'))
    np.testing.assert_array_equal(compile_restrictions(specs, 1, 2).Q, [[1.0], [-2.0]])


@pytest.mark.parametrize("doc, m, s", [
    ('[{"side":"sideways","coeffs":{"1":1}}]', None, None),
    ('[{"side":"input","coeffs":{}}]', None, None),
    ('[{"side":"input","coeffs":{"0":1}}]', None, None),
    ('[{"side":"input","coeffs":{"a":1}}]', None, None),
    ('[{"side":"input","coeffs":{"1":"x"}}]', None, None),
    ('[{"side":"input","coeffs":{"5":1}}]', 2, 1),
    ('[{"side":"input","coeffs":{"1":1},"rhs":2}]', None, None),
    ('{"side":"input"}', None, None),
    ('[{"side":"input",', None, None),
])
def test_bad_restrictions(tmp_path, doc, m, s):
    with pytest.raises(ParseError):
        parse_restrictions(_write(tmp_path, "r.json", doc), m, s)


def test_single_dmu_report(tmp_path):
    inst = DeaInstance(["A"], [[2.0]], [[5.0]])
    reports = run_all(inst, WeightRestrictions.none(1, 1))
    path = tmp_path / "out.json"
    write_report(reports, "json", path)
    (rec,) = json.loads(path.read_text())
    assert rec["rts"] == "C"
    assert rec["u_upper"] == "inf"
    assert rec["u_lower"] == -1
    assert list(rec) == ["dmu", "theta_star", "slack_sum", "group", "rts", "u_lower", "u_upper",
                         "projection", "grs_members", "grs_weights"]


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_report_round_trip(tmp_path, fmt, battery):
    for case in battery[:8]:
        reports = run_all(case.instance, case.wr, options=RunOptions(force_grs=True))
        path = tmp_path / f"r.{fmt}"
        write_report(reports, fmt, path)
        records = read_report(path)
        assert [r["dmu"] for r in records] == list(case.instance.labels)
        for rep, rec in zip(reports, records):
            assert rec["theta_star"] == pytest.approx(rep.theta_star, rel=1e-5, abs=1e-9)
            assert rec["slack_sum"] == pytest.approx(rep.slack_sum, rel=1e-5, abs=1e-9)
            assert rec["u_lower"] == pytest.approx(rep.bounds.lower, rel=1e-5, abs=1e-9)
            assert rec["u_upper"] == pytest.approx(rep.bounds.upper, rel=1e-5, abs=1e-9)
            assert rec["rts"] == rep.rts.value and rec["group"] == rep.group.value
            np.testing.assert_allclose(rec["projection"]["x"], rep.rts_point[0], rtol=1e-5,
                                       atol=1e-9)
            members = sorted(rep.grs.members)
            assert rec["grs_members"] == [case.instance.labels[j] for j in members]
            np.testing.assert_allclose(rec["grs_weights"], rep.grs.lambda_max[members],
                                       rtol=1e-5)
        # write what we read back: byte-identical
        assert render_report(reports, fmt) == path.read_text(encoding="utf-8")


def test_csv_weight_pairs(abec):
    reports = run_all(abec.instance, abec.wr, options=RunOptions(force_grs=True))
    text = render_report(reports, "csv")
    assert "\r" not in text
    row_c = text.splitlines()[4].split(",")
    assert row_c[0] == "C"
    assert row_c[8] == "A;B;E"
    assert all(":" in pair for pair in row_c[9].split(";"))


def test_failed_dmu_rendered_with_error():
    from wrdea.pipeline import DmuReport

    reports = [DmuReport(dmu_index=0, label="A", error="ModelError: boom")]
    rec = json.loads(render_report(reports, "json"))[0]
    assert rec["error"] == "ModelError: boom"
    assert rec["theta_star"] is None
    assert "boom" in render_report(reports, "csv")


def test_write_errors(tmp_path, abc):
    reports = run_all(abc.instance, abc.wr)
    with pytest.raises(StructuralError):
        write_report([], "json", tmp_path / "x.json")
    with pytest.raises(StructuralError):
        write_report(reports, "xml", tmp_path / "x.xml")
    with pytest.raises(StructuralError):
        write_report(reports, "json", tmp_path / "missing-dir" / "x.json")


def test_six_significant_digits(abc):
    text = render_report(run_all(abc.instance, abc.wr), "json")
    assert "0.666667" in text
    assert "0.6666666" not in text
