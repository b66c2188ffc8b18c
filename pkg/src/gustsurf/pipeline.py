"""End-to-end orchestration: fit a base database, predict weight variants,
compare against simulated ground truth."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import simdb
from .errors import DimensionMismatch
from .features import build_feature_map, destandardize, expand_all
from .inference import envelope_max, fit_surrogate, interval_half_widths, predict_points, validate
from .selection import select

log = logging.getLogger(__name__)


def thread_count():
    """Worker cap from ``GUSTSURF_THREADS`` (default: CPU count)."""
    value = os.environ.get("GUSTSURF_THREADS")
    if value:
        return max(1, int(value))
    return os.cpu_count() or 1


def _map(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def fit_database(db, l=80, criterion="cv", k_folds=6, seed=42, threads=None):
    """One surrogate per station, each with its own size selection.

    ``l`` is clipped to the number of basis functions.
    """
    fmap = build_feature_map(db.points, db.parameter_names)
    phi = expand_all(fmap, db.points)
    l = min(l, phi.shape[1], phi.shape[0])

    def fit_one(k):
        y = db.responses[:, k]
        report = select(phi, y, l, criterion, k_folds, seed)
        return fit_surrogate(phi, y, fmap, report.chosen_support, db.stations[k], report)

    models = _map(fit_one, range(db.stations.size), threads or thread_count())
    failing = [m.station for m in models if not m.normality_ok]
    if failing:
        log.warning("%d of %d stations fail the 1%% residual normality screen; "
                    "intervals there rest on an unverified assumption", len(failing), len(models))
    return models


def raw_coefficients(models):
    return [{k: float(v) for k, v in destandardize(m.feature_map, m.support, m.coefficients).items()}
            for m in models]


def check_parameters(models, db):
    names = models[0].feature_map.names
    if tuple(db.parameter_names) != tuple(names):
        raise DimensionMismatch(f"database parameters {db.parameter_names} differ from model {names}")


def predict_database(models, db, alpha=None):
    """Predictions (n x K) and, if ``alpha`` is given, interval bounds."""
    check_parameters(models, db)
    pred = np.column_stack([predict_points(m, db.points) for m in models])
    if alpha is None:
        return pred, None, None
    half = np.column_stack([interval_half_widths(m, db.points, alpha) for m in models])
    return pred, pred - half, pred + half


def outside_box(points, lo, hi):
    """Per point: True when any coordinate leaves the training bounding box."""
    points = np.asarray(points, dtype=float)
    return np.any((points < lo) | (points > hi), axis=1)


def envelope_bands(models, db, alpha=0.01):
    check_parameters(models, db)
    return [envelope_max(m, db.points, alpha) for m in models]


@dataclass
class VariantStudy:
    base: object
    models: list
    variants: dict
    metrics: dict


def run_variant_study(n=1560, seed=42, l=80, k_folds=6, alpha=0.01, criterion="cv",
                      mass_scales=(0.9, 1.1), d_nuisance=14, dt=simdb.DEFAULT_DT, model=None,
                      envelope=None, threads=None):
    """Base-aircraft fit plus one validation per mass-scaled variant envelope.

    Variant ``i`` is sampled with seed ``seed + 1 + i`` and simulated with
    the same wing so that its database serves as ground truth.
    """
    model = model or simdb.reference_model()
    envelope = envelope or simdb.DEFAULT_ENVELOPE
    base = simdb.generate_database(model, envelope, n, seed, d_nuisance, dt)
    models = fit_database(base, l, criterion, k_folds, seed, threads)
    variants, metrics = {}, {}
    for i, scale in enumerate(mass_scales):
        env = simdb.scale_envelope(envelope, "mass", scale)
        vdb = simdb.generate_database(model, env, n, seed + 1 + i, d_nuisance, dt)
        variants[scale] = vdb
        metrics[scale] = validate(models, vdb, alpha)
    return VariantStudy(base, models, variants, metrics)
