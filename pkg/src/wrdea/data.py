"""Production data and weight-restriction matrices."""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._base import StructuralError


class Side(str, Enum):
    INPUT = "input"
    OUTPUT = "output"


def _readonly(a):
    arr = np.array(a, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DeaInstance:
    """Observed DMUs.

    ``inputs`` is the ``m x n`` matrix X and ``outputs`` the ``s x n``
    matrix Y; column ``j`` belongs to ``labels[j]``.
    """

    labels: tuple
    inputs: np.ndarray
    outputs: np.ndarray

    def __post_init__(self):
        X = np.array(self.inputs, dtype=float)
        Y = np.array(self.outputs, dtype=float)
        if X.ndim != 2 or Y.ndim != 2:
            raise StructuralError("inputs and outputs must be 2-D (factors x DMUs)")
        m, n = X.shape
        s, n_y = Y.shape
        if n != n_y:
            raise StructuralError(f"inputs describe {n} DMUs but outputs describe {n_y}")
        if n < 1 or m < 1 or s < 1:
            raise StructuralError("need at least one DMU, one input and one output")
        labels = tuple(str(lab) for lab in self.labels)
        if len(labels) != n:
            raise StructuralError(f"got {len(labels)} labels for {n} DMUs")
        if len(set(labels)) != n:
            dup = sorted({lab for lab in labels if labels.count(lab) > 1})
            raise StructuralError(f"duplicate DMU labels: {dup}")
        for name, M in (("input", X), ("output", Y)):
            if not np.all(np.isfinite(M)):
                raise StructuralError(f"{name} data contains NaN or infinite values")
            if np.any(M < 0):
                i, j = np.argwhere(M < 0)[0]
                raise StructuralError(
                    f"negative {name} {i + 1} for DMU {labels[j]!r}: {M[i, j]}")
            zero_rows = np.flatnonzero(~np.any(M > 0, axis=1))
            if zero_rows.size:
                raise StructuralError(
                    f"{name} {zero_rows[0] + 1} is zero for every DMU")
            zero_cols = np.flatnonzero(~np.any(M > 0, axis=0))
            if zero_cols.size:
                raise StructuralError(
                    f"DMU {labels[zero_cols[0]]!r} has no positive {name}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "inputs", _readonly(X))
        object.__setattr__(self, "outputs", _readonly(Y))

    @classmethod
    def from_samples(cls, X, Y, labels=None):
        """Build from row-per-DMU arrays (``X`` is ``n x m``, ``Y`` is ``n x s``)."""
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        if Y.ndim == 1:
            Y = Y[:, None]
        if X.ndim == 1:
            X = X[:, None]
        if labels is None:
            labels = [f"DMU{j + 1}" for j in range(X.shape[0])]
        return cls(labels, X.T, Y.T)

    @property
    def n(self):
        return self.inputs.shape[1]

    @property
    def m(self):
        return self.inputs.shape[0]

    @property
    def s(self):
        return self.outputs.shape[0]

    def x(self, j):
        return self.inputs[:, j]

    def y(self, j):
        return self.outputs[:, j]

    def index(self, label):
        return self.labels.index(str(label))

    def with_point(self, x, y, label="__point__"):
        """Return a copy with an extra DMU ``(x, y)`` appended as the last column."""
        x = np.asarray(x, dtype=float).reshape(self.m, 1)
        y = np.asarray(y, dtype=float).reshape(self.s, 1)
        label = str(label)
        while label in self.labels:
            label = label + "'"
        return DeaInstance(self.labels + (label,),
                           np.hstack([self.inputs, x]), np.hstack([self.outputs, y]))

    def permuted(self, order):
        order = list(order)
        return DeaInstance([self.labels[j] for j in order],
                           self.inputs[:, order], self.outputs[:, order])


@dataclass(frozen=True, eq=False)
class WeightRestrictions:
    """Homogeneous restrictions ``v @ P <= 0`` and ``u @ Q <= 0``.

    ``input_matrix`` is P (``m x k``), ``output_matrix`` is Q (``s x l``).
    """

    input_matrix: np.ndarray
    output_matrix: np.ndarray

    def __post_init__(self):
        P = np.asarray(self.input_matrix, dtype=float)
        Q = np.asarray(self.output_matrix, dtype=float)
        for name, M in (("P", P), ("Q", Q)):
            if M.ndim != 2:
                raise StructuralError(f"{name} must be 2-D, got shape {M.shape}")
            if not np.all(np.isfinite(M)):
                raise StructuralError(f"{name} contains NaN or infinite values")
            if M.shape[1] and np.any(~np.any(M != 0, axis=0)):
                raise StructuralError(f"{name} has an all-zero column")
        object.__setattr__(self, "input_matrix", _readonly(P))
        object.__setattr__(self, "output_matrix", _readonly(Q))

    @classmethod
    def none(cls, m, s):
        """No restrictions: the plain BCC technology."""
        return cls(np.zeros((m, 0)), np.zeros((s, 0)))

    @property
    def P(self):
        return self.input_matrix

    @property
    def Q(self):
        return self.output_matrix

    @property
    def k(self):
        return self.input_matrix.shape[1]

    @property
    def l(self):  # noqa: E743
        return self.output_matrix.shape[1]

    @property
    def is_empty(self):
        return self.k == 0 and self.l == 0

    def check_pairing(self, instance):
        if self.input_matrix.shape[0] != instance.m:
            raise StructuralError(
                f"P has {self.input_matrix.shape[0]} rows but the data has {instance.m} inputs")
        if self.output_matrix.shape[0] != instance.s:
            raise StructuralError(
                f"Q has {self.output_matrix.shape[0]} rows but the data has {instance.s} outputs")


@dataclass(frozen=True)
class RestrictionSpec:
    """One restriction ``sum_i coeffs[i] * w_i <= 0`` on input (v) or output (u) weights.

    Keys of ``coeffs`` are 1-based factor indices.
    """

    side: Side
    coeffs: tuple

    def __init__(self, side, coeffs):
        side = Side(side.value if isinstance(side, Side) else str(side).lower())
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        pairs = []
        for key, value in items:
            idx = int(key)
            if str(key).strip() != str(idx) and not isinstance(key, (int, np.integer)):
                raise StructuralError(f"factor index {key!r} is not an integer")
            value = float(value)
            if not np.isfinite(value):
                raise StructuralError(f"coefficient of factor {idx} is not finite")
            pairs.append((idx, value))
        pairs.sort()
        if len({i for i, _ in pairs}) != len(pairs):
            raise StructuralError("repeated factor index in restriction")
        if not any(v != 0 for _, v in pairs):
            raise StructuralError("restriction needs at least one nonzero coefficient")
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "coeffs", tuple(pairs))

    def validate(self, m, s):
        limit = m if self.side is Side.INPUT else s
        for idx, _ in self.coeffs:
            if not 1 <= idx <= limit:
                raise StructuralError(
                    f"{self.side.value} factor index {idx} out of range 1..{limit}")

    def as_dict(self):
        return {"side": self.side.value,
                "coeffs": {str(i): v for i, v in self.coeffs}}


def compile_restrictions(specs, m, s):
    """Turn restriction specs into the matrices P (``m x k``) and Q (``s x l``).

    Each input spec becomes one column of P and each output spec one column
    of Q, in the order given.

    >>> specs = [RestrictionSpec("input", {1: 1, 2: -0.5})]
    >>> compile_restrictions(specs, 2, 1).P
    array([[ 1. ],
           [-0.5]])
    """
    p_cols, q_cols = [], []
    for spec in specs:
        spec.validate(m, s)
        col = np.zeros(m if spec.side is Side.INPUT else s)
        for idx, value in spec.coeffs:
            col[idx - 1] = value
        (p_cols if spec.side is Side.INPUT else q_cols).append(col)
    P = np.column_stack(p_cols) if p_cols else np.zeros((m, 0))
    Q = np.column_stack(q_cols) if q_cols else np.zeros((s, 0))
    return WeightRestrictions(P, Q)


def decompile_restrictions(wr):
    """Inverse of :func:`compile_restrictions` (input columns first)."""
    specs = []
    for side, M in ((Side.INPUT, wr.P), (Side.OUTPUT, wr.Q)):
        for col in M.T:
            specs.append(RestrictionSpec(
                side, {i + 1: float(v) for i, v in enumerate(col) if v != 0}))
    return specs
