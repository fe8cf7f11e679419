"""scikit-learn style wrapper around the RTS pipeline."""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._base import Tolerances
from .data import DeaInstance
from .pipeline import RunOptions, analyze_dmu, run_all
from .validation import check_production_data, check_restrictions


class WRReturnsToScale(TransformerMixin, BaseEstimator):
    """Returns to scale of each DMU under homogeneous weight restrictions.

    Parameters
    ----------
    restrictions : None, WeightRestrictions or list of RestrictionSpec / dict
        Restrictions on the input and output weights.  ``None`` gives the
        unrestricted variable-returns technology.
    force_grs : bool
        Compute the global reference set for every DMU, not only for those
        with nonzero slacks.
    tol_feas, tol_opt, tol_class, tol_support, tol_sign : float
        See :class:`wrdea.Tolerances`.

    Attributes
    ----------
    instance_ : DeaInstance
    restrictions_ : WeightRestrictions
    reports_ : list of DmuReport
    efficiency_ : ndarray of shape (n,)
        Optimal radial score, NaN for DMUs whose analysis failed.
    rts_ : ndarray of str
        ``"I"``, ``"C"`` or ``"D"``; empty string on failure.
    u_lower_, u_upper_ : ndarray of shape (n,)
        Bounds on the free multiplier at the measured point (``inf`` upper
        bound when unbounded).
    rts_points_ : ndarray of shape (n, m + s)
        The point where RTS was measured, inputs then outputs.

    Examples
    --------
    >>> est = WRReturnsToScale().fit([[1], [2], [3]], [1, 3, 3])
    >>> est.rts_.tolist()
    ['I', 'C', 'C']
    """

    def __init__(self, restrictions=None, force_grs=False, tol_feas=1e-8, tol_opt=1e-9,
                 tol_class=1e-6, tol_support=1e-7, tol_sign=1e-6):
        self.restrictions = restrictions
        self.force_grs = force_grs
        self.tol_feas = tol_feas
        self.tol_opt = tol_opt
        self.tol_class = tol_class
        self.tol_support = tol_support
        self.tol_sign = tol_sign

    def _tolerances(self):
        return Tolerances(feas=self.tol_feas, opt=self.tol_opt, classification=self.tol_class,
                          support=self.tol_support, sign=self.tol_sign)

    def fit(self, X, y, labels=None):
        """Analyze every row of ``(X, y)``.

        Parameters
        ----------
        X : array-like of shape (n, m)
            Inputs, one row per DMU.
        y : array-like of shape (n,) or (n, s)
            Outputs.
        labels : sequence of str, optional
        """
        X, Y, labels = check_production_data(X, y, labels)
        tol = self._tolerances()
        self.instance_ = DeaInstance.from_samples(X, Y, labels)
        self.restrictions_ = check_restrictions(self.restrictions, X.shape[1], Y.shape[1])
        self.reports_ = run_all(self.instance_, self.restrictions_, tol,
                                RunOptions(force_grs=self.force_grs))
        self.n_features_in_ = X.shape[1]
        self.n_outputs_ = Y.shape[1]
        self._collect(self.reports_)
        return self

    def _collect(self, reports):
        m, s = self.n_features_in_, self.n_outputs_
        n = len(reports)
        self.efficiency_ = np.full(n, np.nan)
        self.slack_sum_ = np.full(n, np.nan)
        self.u_lower_ = np.full(n, np.nan)
        self.u_upper_ = np.full(n, np.nan)
        self.rts_points_ = np.full((n, m + s), np.nan)
        self.rts_ = np.array([""] * n, dtype=object)
        self.group_ = np.array([""] * n, dtype=object)
        self.grs_ = [None] * n
        for j, rep in enumerate(reports):
            if not rep.ok:
                continue
            self.efficiency_[j] = rep.theta_star
            self.slack_sum_[j] = rep.slack_sum
            self.u_lower_[j] = rep.bounds.lower
            self.u_upper_[j] = rep.bounds.upper
            self.rts_points_[j] = np.concatenate(rep.rts_point)
            self.rts_[j] = rep.rts.value
            self.group_[j] = rep.group.value
            if rep.grs is not None:
                self.grs_[j] = sorted(self.instance_.labels[i] for i in rep.grs.members)

    def _analyze_new(self, X, y):
        check_is_fitted(self, "reports_")
        X, Y, _ = check_production_data(X, y)
        if X.shape[1] != self.n_features_in_ or Y.shape[1] != self.n_outputs_:
            raise ValueError(
                f"expected {self.n_features_in_} inputs and {self.n_outputs_} outputs, "
                f"got {X.shape[1]} and {Y.shape[1]}")
        tol = self._tolerances()
        out = []
        for x_row, y_row in zip(X, Y):
            inst = self.instance_.with_point(x_row, y_row)
            out.append(analyze_dmu(inst, self.restrictions_, inst.n - 1, tol,
                                   RunOptions(force_grs=self.force_grs)))
        return out

    def predict(self, X, y):
        """RTS class of new points, each analyzed against the fitted sample.

        The point is added to the sample as an extra DMU, so it may itself
        become part of the frontier.
        """
        return np.array([r.rts.value for r in self._analyze_new(X, y)], dtype=object)

    def transform(self, X, y):
        """Points where RTS is measured for new ``(X, y)``, shape (n, m + s)."""
        return np.array([np.concatenate(r.rts_point) for r in self._analyze_new(X, y)])

    def fit_transform(self, X, y, labels=None):
        return self.fit(X, y, labels).rts_points_.copy()
