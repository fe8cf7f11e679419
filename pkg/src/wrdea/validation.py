"""Input checks for array-style callers."""
import numpy as np
from sklearn.utils.validation import check_array, check_non_negative

from ._base import StructuralError
from .data import RestrictionSpec, WeightRestrictions, compile_restrictions


def check_production_data(X, Y, labels=None):
    """Validate row-per-DMU inputs ``X`` (n, m) and outputs ``Y`` (n,) or (n, s).

    Returns float arrays ``X`` (n, m), ``Y`` (n, s) and a label list.
    """
    X = check_array(X, dtype=np.float64, ensure_2d=True, input_name="X")
    Y = check_array(Y, dtype=np.float64, ensure_2d=False, input_name="Y")
    if Y.ndim == 1:
        Y = Y[:, None]
    if Y.ndim != 2:
        raise StructuralError(f"Y must be 1-D or 2-D, got {Y.ndim} dimensions")
    if X.shape[0] != Y.shape[0]:
        raise StructuralError(f"X has {X.shape[0]} rows but Y has {Y.shape[0]}")
    check_non_negative(X, "X")
    check_non_negative(Y, "Y")
    if labels is None:
        labels = [f"DMU{j + 1}" for j in range(X.shape[0])]
    else:
        labels = [str(lab) for lab in labels]
        if len(labels) != X.shape[0]:
            raise StructuralError(f"got {len(labels)} labels for {X.shape[0]} rows")
    return X, Y, labels


def check_restrictions(restrictions, m, s):
    """Accept ``None``, a :class:`WeightRestrictions`, or an iterable of specs.

    Specs may be :class:`RestrictionSpec` objects or dicts with ``side`` and
    ``coeffs`` keys.
    """
    if restrictions is None:
        return WeightRestrictions.none(m, s)
    if isinstance(restrictions, WeightRestrictions):
        if restrictions.P.shape[0] != m or restrictions.Q.shape[0] != s:
            raise StructuralError(
                f"restrictions are for {restrictions.P.shape[0]} inputs and "
                f"{restrictions.Q.shape[0]} outputs, data has {m} and {s}")
        return restrictions
    specs = []
    for item in restrictions:
        if isinstance(item, RestrictionSpec):
            specs.append(item)
        elif isinstance(item, dict):
            specs.append(RestrictionSpec(item["side"], item["coeffs"]))
        else:
            raise StructuralError(f"cannot interpret {item!r} as a weight restriction")
    return compile_restrictions(specs, m, s)
