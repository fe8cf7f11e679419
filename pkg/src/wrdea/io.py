"""Dataset and restriction parsing, report rendering."""
import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from ._base import ParseError, StructuralError
from .data import DeaInstance, RestrictionSpec

REPORT_FIELDS = ("dmu", "theta_star", "slack_sum", "group", "rts", "u_lower", "u_upper",
                 "projection", "grs_members", "grs_weights")


def _read_text(path):
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError("file not found", path=path) from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8 ({exc.reason})", path=path) from None


def parse_dataset(path):
    """Read a ``dmu,x1..xm,y1..ys`` CSV file into a :class:`DeaInstance`.

    Columns whose names start with ``x`` are inputs and those starting with
    ``y`` outputs; all inputs must come before all outputs.
    """
    text = _read_text(path)
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError("empty file, expected a header 'dmu,x1,...,y1,...'", row=1, path=path)
    header = [h.strip() for h in rows[0]]
    if not header or header[0].lower() != "dmu":
        raise ParseError("first header column must be 'dmu'", row=1, column=1, path=path)
    kinds = []
    for col, name in enumerate(header[1:], start=2):
        kind = name[:1].lower()
        if kind not in ("x", "y"):
            raise ParseError(f"column {name!r} is neither an input (x...) nor an output (y...)",
                             row=1, column=col, path=path)
        if kind == "x" and "y" in kinds:
            raise ParseError(f"input column {name!r} follows an output column; "
                             "inputs must precede outputs", row=1, column=col, path=path)
        kinds.append(kind)
    m, s = kinds.count("x"), kinds.count("y")
    if m == 0 or s == 0:
        raise ParseError("need at least one input (x...) and one output (y...) column",
                         row=1, path=path)

    labels, values, seen = [], [], {}
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(row)}", row=r, path=path)
        label = row[0].strip()
        if not label:
            raise ParseError("empty DMU label", row=r, column=1, path=path)
        if label in seen:
            raise ParseError(f"duplicate DMU label {label!r} (first seen on row {seen[label]})",
                             row=r, column=1, path=path)
        seen[label] = r
        nums = []
        for c, cell in enumerate(row[1:], start=2):
            try:
                val = float(cell.strip())
            except ValueError:
                raise ParseError(f"non-numeric value {cell!r}", row=r, column=c, path=path) from None
            if not math.isfinite(val):
                raise ParseError(f"non-finite value {cell!r}", row=r, column=c, path=path)
            if val < 0:
                raise ParseError(f"negative value {val}", row=r, column=c, path=path)
            nums.append(val)
        labels.append(label)
        values.append(nums)
    if not values:
        raise ParseError("no DMU rows", row=2, path=path)
    data = np.array(values)
    try:
        return DeaInstance(labels, data[:, :m].T, data[:, m:].T)
    except StructuralError as exc:
        raise ParseError(str(exc), path=path) from None


def parse_restrictions(path, m=None, s=None):
    """Read a JSON array of ``{"side": ..., "coeffs": {...}}`` restriction objects.

    Each object means ``sum coeffs[i] * w_i <= 0`` for the input (``v``) or
    output (``u``) weights.  When ``m`` and ``s`` are given, indices are also
    range-checked.
    """
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", row=exc.lineno, column=exc.colno,
                         path=path) from None
    if not isinstance(doc, list):
        raise ParseError("top level must be a JSON array", path=path)
    specs = []
    for pos, item in enumerate(doc, start=1):
        where = f"restriction #{pos}"
        if not isinstance(item, dict):
            raise ParseError(f"{where} is not an object", path=path)
        extra = set(item) - {"side", "coeffs"}
        if extra:
            raise ParseError(f"{where} has unsupported keys {sorted(extra)}; only homogeneous "
                             "restrictions of the form sum(c_i w_i) <= 0 are supported", path=path)
        side = item.get("side")
        if side not in ("input", "output"):
            raise ParseError(f"{where} has unknown side {side!r}", path=path)
        coeffs = item.get("coeffs")
        if not isinstance(coeffs, dict) or not coeffs:
            raise ParseError(f"{where} has empty or missing coeffs", path=path)
        parsed = {}
        for key, value in coeffs.items():
            if not (isinstance(key, str) and key.isdigit() and int(key) >= 1):
                raise ParseError(f"{where}: bad factor index {key!r}", path=path)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParseError(f"{where}: coefficient for {key} is not a number", path=path)
            parsed[int(key)] = float(value)
        try:
            spec = RestrictionSpec(side, parsed)
            if m is not None and s is not None:
                spec.validate(m, s)
        except StructuralError as exc:
            raise ParseError(f"{where}: {exc}", path=path) from None
        specs.append(spec)
    return specs


def _num(x):
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    out = float(f"{x:.6g}")
    return 0.0 if out == 0 else out


def _fmt(x):
    """Six significant digits, locale independent."""
    v = _num(x)
    if isinstance(v, str):
        return v
    return f"{v:.6g}"


def report_records(reports):
    """Plain dicts (rounded to 6 significant digits) in report field order."""
    labels = [r.label for r in reports]
    records = []
    for rep in reports:
        rec = {"dmu": rep.label}
        if not rep.ok:
            rec.update({k: None for k in REPORT_FIELDS[1:]})
            rec["error"] = rep.error
            records.append(rec)
            continue
        members = weights = None
        if rep.grs is not None:
            idx = sorted(rep.grs.members)
            members = [labels[j] if j < len(labels) else str(j) for j in idx]
            weights = [_num(rep.grs.lambda_max[j]) for j in idx]
        rec.update({
            "theta_star": _num(rep.theta_star),
            "slack_sum": _num(rep.slack_sum),
            "group": rep.group.value,
            "rts": rep.rts.value,
            "u_lower": _num(rep.bounds.lower),
            "u_upper": _num(rep.bounds.upper),
            "projection": {"x": [_num(v) for v in rep.rts_point[0]],
                           "y": [_num(v) for v in rep.rts_point[1]]},
            "grs_members": members,
            "grs_weights": weights,
        })
        records.append(rec)
    return records


def render_report(reports, fmt="json"):
    records = report_records(reports)
    if fmt == "json":
        return json.dumps(records, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_FIELDS + ("error",))
        for rec in records:
            if rec.get("error"):
                writer.writerow([rec["dmu"]] + [""] * (len(REPORT_FIELDS) - 1) + [rec["error"]])
                continue
            proj = rec["projection"]
            members = rec["grs_members"]
            writer.writerow([
                rec["dmu"], _fmt(rec["theta_star"]), _fmt(rec["slack_sum"]), rec["group"],
                rec["rts"], _fmt(rec["u_lower"]), _fmt(rec["u_upper"]),
                ";".join(_fmt(v) for v in proj["x"]) + "|" + ";".join(_fmt(v) for v in proj["y"]),
                "" if members is None else ";".join(members),
                "" if members is None else ";".join(
                    f"{lab}:{_fmt(w)}" for lab, w in zip(members, rec["grs_weights"])),
                "",
            ])
        return buf.getvalue()
    raise StructuralError(f"unknown report format {fmt!r}; expected 'json' or 'csv'")


def write_report(reports, fmt, path):
    """Write ``reports`` to ``path`` as JSON or CSV (UTF-8, LF line endings)."""
    if not reports:
        raise StructuralError("nothing to write: empty report list")
    text = render_report(reports, fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise StructuralError(f"cannot write report to {path}: {exc.strerror}") from None


def _parse_number(text):
    text = text.strip()
    if text == "":
        return None
    if text in ("inf", "-inf"):
        return float(text)
    return float(text)


def read_report(path, fmt=None):
    """Load a report written by :func:`write_report` back into records.

    ``u_upper`` of ``"inf"`` becomes ``float('inf')``.
    """
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    text = _read_text(path)
    if fmt == "json":
        records = json.loads(text)
        for rec in records:
            for key in ("u_lower", "u_upper"):
                if isinstance(rec.get(key), str):
                    rec[key] = float(rec[key])
        return records
    records = []
    for row in csv.DictReader(io.StringIO(text)):
        if row.get("error"):
            rec = {"dmu": row["dmu"], **{k: None for k in REPORT_FIELDS[1:]},
                   "error": row["error"]}
            records.append(rec)
            continue
        xs, ys = row["projection"].split("|")
        members = row["grs_members"].split(";") if row["grs_members"] else None
        weights = None
        if members is not None:
            weights = [float(pair.rsplit(":", 1)[1]) for pair in row["grs_weights"].split(";")]
        records.append({
            "dmu": row["dmu"],
            "theta_star": _parse_number(row["theta_star"]),
            "slack_sum": _parse_number(row["slack_sum"]),
            "group": row["group"],
            "rts": row["rts"],
            "u_lower": _parse_number(row["u_lower"]),
            "u_upper": _parse_number(row["u_upper"]),
            "projection": {"x": [float(v) for v in xs.split(";")],
                           "y": [float(v) for v in ys.split(";")]},
            "grs_members": members,
            "grs_weights": weights,
        })
    return records


def write_dataset(instance, path):
    """Write ``instance`` in the format read by :func:`parse_dataset`."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dmu"] + [f"x{i + 1}" for i in range(instance.m)]
                        + [f"y{r + 1}" for r in range(instance.s)])
        for j, label in enumerate(instance.labels):
            writer.writerow([label] + [repr(float(v)) for v in instance.x(j)]
                            + [repr(float(v)) for v in instance.y(j)])
