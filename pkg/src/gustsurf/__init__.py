"""Sparse quadratic response surfaces for gust-load envelopes.

The Orthogonal Greedy Algorithm selects a few second-order polynomial terms
per wing station from a load database; the resulting surrogates predict
envelope-maximum bending moments, with prediction intervals, for aircraft
weight variants.  A synthetic modal wing model supplies databases with a
known ground truth.
"""

from .features import FeatureMap, build_feature_map, expand, expand_all
from .gust import GustSpec, gust_velocity, sample_gust, u_max
from .inference import (
    PredictionBand,
    SparseSurrogate,
    envelope_max,
    fit_surrogate,
    predict,
    predict_points,
    prediction_interval,
    validate,
)
from .oga import GreedyPath, greedy_fit, refit
from .pipeline import fit_database, run_variant_study
from .selection import SelectionReport, ic_select, kfold_select
from .simdb import LoadDatabase, ModalModel, generate_database, reference_model, simulate_response

__version__ = "0.1.0"
