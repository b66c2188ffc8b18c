"""Sparse surrogates: fitting, prediction, prediction intervals, envelope maxima
and validation against a reference database."""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .errors import (
    DegreesOfFreedomExhausted,
    DimensionMismatch,
    DomainError,
    StationMismatch,
    ZeroReference,
)
from .features import expand_all
from .numerics import (
    ks_statistic_vs_normal,
    lilliefors_critical_value,
    qr_decompose,
    student_t_quantile,
)

@dataclass(eq=False)
class SparseSurrogate:
    """Fitted response surface for one wing station.

    ``r`` is the triangular factor of the QR decomposition of the selected
    training columns, so that ``(Phi_s^T Phi_s)^-1 = r^-1 r^-T``.
    """

    station: float
    feature_map: object
    support: tuple
    coefficients: np.ndarray
    sigma2: float
    n_train: int
    r: np.ndarray
    ks_statistic: float = float("nan")
    selection: object = field(default=None, repr=False)

    @property
    def normality_ok(self):
        """Residual KS statistic below the approximate 1% Lilliefors critical value."""
        return bool(self.ks_statistic <= lilliefors_critical_value(self.n_train, 0.01))

    @property
    def p(self):
        return len(self.support)

    @property
    def dof(self):
        return self.n_train - self.p


def fit_surrogate(phi, y, feature_map, support, station=0.0, selection=None):
    """Least-squares fit on a fixed support plus the interval bookkeeping."""
    y = np.asarray(y, dtype=float)
    support = tuple(int(i) for i in support)
    sub = np.asarray(phi, dtype=float)[:, list(support)]
    q, r = qr_decompose(sub)
    coef = linalg.solve_triangular(r, q.T @ y)
    resid = y - sub @ coef
    n, p = sub.shape
    sigma2 = float(resid @ resid) / (n - p) if n > p else 0.0
    ks = ks_statistic_vs_normal(resid) if n >= 8 else float("nan")
    return SparseSurrogate(
        station=float(station),
        feature_map=feature_map,
        support=support,
        coefficients=coef,
        sigma2=sigma2,
        n_train=n,
        r=r,
        ks_statistic=ks,
        selection=selection,
    )


def _features(model, points):
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != model.feature_map.d:
        raise DimensionMismatch(f"expected {model.feature_map.d} parameters, got {points.shape[1]}")
    return expand_all(model.feature_map, points)[:, list(model.support)]


def predict_points(model, points):
    """Vectorized :func:`predict` over the rows of ``points``."""
    return _features(model, points) @ model.coefficients


def predict(model, x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise DimensionMismatch("predict takes one parameter vector; use predict_points")
    return float(predict_points(model, x[None, :])[0])


def interval_half_widths(model, points, alpha=0.01):
    """Prediction-interval half-widths ``t * sigma * sqrt(1 + leverage)``."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if model.dof < 1:
        raise DegreesOfFreedomExhausted(f"{model.n_train} points for {model.p} coefficients")
    phi_s = _features(model, points)
    w = linalg.solve_triangular(model.r, phi_s.T, trans="T")
    leverage = np.sum(w * w, axis=0)
    t = student_t_quantile(1.0 - alpha / 2.0, model.dof)
    return t * np.sqrt(model.sigma2) * np.sqrt(1.0 + leverage)


def prediction_interval(model, x, alpha=0.01):
    """Two-sided ``1 - alpha`` prediction interval for a new observation at ``x``.

    Returns
    -------
    lower, upper : float
    """
    yhat = predict(model, x)
    half = float(interval_half_widths(model, np.asarray(x, dtype=float)[None, :], alpha)[0])
    return yhat - half, yhat + half


@dataclass
class PredictionBand:
    station: float
    predicted_max: float
    lower: float
    upper: float
    argmax_point_index: int
    alpha: float


def envelope_max(model, variant_points, alpha=0.01):
    """Largest prediction over an envelope, with the interval taken at its argmax."""
    variant_points = np.asarray(variant_points, dtype=float)
    if variant_points.ndim != 2 or variant_points.shape[0] < 1:
        raise DimensionMismatch("need at least one variant point")
    preds = predict_points(model, variant_points)
    i = int(np.argmax(preds))
    half = float(interval_half_widths(model, variant_points[i : i + 1], alpha)[0])
    return PredictionBand(model.station, float(preds[i]), float(preds[i] - half),
                          float(preds[i] + half), i, alpha)


@dataclass
class ValidationMetrics:
    """Envelope-maximum accuracy of a set of station surrogates.

    Stations whose reference maximum is zero carry ``nan`` relative figures,
    are listed in ``zero_reference_stations`` and are left out of every
    maximum.
    """

    stations: np.ndarray
    reference_max: np.ndarray
    predicted_max: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    argmax_point_index: np.ndarray
    relative_error: np.ndarray
    relative_width: np.ndarray
    max_relative_error: float
    root_relative_error: float
    max_relative_width: float
    zero_reference_stations: list
    alpha: float

    @property
    def covered(self):
        return (self.lower <= self.reference_max) & (self.reference_max <= self.upper)

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "max_relative_error": self.max_relative_error,
            "root_relative_error": self.root_relative_error,
            "max_relative_width": self.max_relative_width,
            "stations_covered": int(np.sum(self.covered)),
            "n_stations": int(self.stations.size),
            "zero_reference_stations": [float(s) for s in self.zero_reference_stations],
            "per_station": [
                {
                    "station": float(s),
                    "reference_max": float(ref),
                    "predicted_max": float(pm),
                    "lower": float(lo),
                    "upper": float(hi),
                    "argmax_point_index": int(ix),
                    "relative_error": float(e),
                    "relative_width": float(w),
                }
                for s, ref, pm, lo, hi, ix, e, w in zip(
                    self.stations, self.reference_max, self.predicted_max, self.lower,
                    self.upper, self.argmax_point_index, self.relative_error, self.relative_width,
                )
            ],
        }


def validate(models, reference, alpha=0.01):
    """Compare predicted envelope maxima against a reference database.

    Parameters
    ----------
    models : sequence of SparseSurrogate
        One per station, in the reference database's station order.
    reference : LoadDatabase
        Must carry responses.
    """
    if reference.responses is None:
        raise StationMismatch("reference database has no response columns")
    stations = np.asarray(reference.stations, dtype=float)
    mine = np.array([m.station for m in models], dtype=float)
    if mine.shape != stations.shape or np.any(mine != stations):
        raise StationMismatch("model stations do not match the reference stations")
    bands = [envelope_max(m, reference.points, alpha) for m in models]
    ref_max = reference.responses.max(axis=0)
    pm = np.array([b.predicted_max for b in bands])
    lo = np.array([b.lower for b in bands])
    hi = np.array([b.upper for b in bands])
    zero = ref_max == 0
    if np.all(zero):
        raise ZeroReference("every reference station maximum is zero")
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(zero, np.nan, np.abs(pm - ref_max) / ref_max)
        width = np.where(zero, np.nan, (hi - lo) / ref_max)
    root = int(np.argmin(stations))
    return ValidationMetrics(
        stations=stations,
        reference_max=ref_max,
        predicted_max=pm,
        lower=lo,
        upper=hi,
        argmax_point_index=np.array([b.argmax_point_index for b in bands]),
        relative_error=rel,
        relative_width=width,
        max_relative_error=float(np.nanmax(rel)),
        root_relative_error=float(rel[root]),
        max_relative_width=float(np.nanmax(width)),
        zero_reference_stations=[float(s) for s in stations[zero]],
        alpha=alpha,
    )
