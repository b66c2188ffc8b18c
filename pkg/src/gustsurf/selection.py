"""Choosing the model size along a greedy path: k-fold cross-validation, AIC, BIC."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TooFewPoints
from .oga import greedy_fit
from .rng import Xoshiro256StarStar

CRITERIA = ("cv", "aic", "bic")


@dataclass
class SelectionReport:
    """Outcome of a size selection.

    ``scores[j]`` is the score of the model with ``j + 1`` terms and
    ``chosen_support`` lists the first ``chosen_size`` columns selected by a
    greedy fit on all the data.
    """

    criterion: str
    folds: object
    scores: np.ndarray
    chosen_size: int
    chosen_support: tuple
    path: object = None

    def to_dict(self):
        return {
            "criterion": self.criterion,
            "folds": self.folds,
            "scores": [float(s) for s in self.scores],
            "chosen_size": int(self.chosen_size),
            "chosen_support": [int(i) for i in self.chosen_support],
        }


def fold_assignment(n, k_folds, seed):
    """Split a seeded permutation of ``range(n)`` into ``k_folds`` contiguous blocks."""
    perm = np.array(Xoshiro256StarStar(seed).permutation(n), dtype=int)
    return np.array_split(perm, k_folds)


def _argmin_first(scores):
    # np.argmin returns the first minimum, so ties resolve to the smaller model
    return int(np.argmin(scores)) + 1


def kfold_select(phi, y, l, k_folds=6, seed=0):
    """Pick the path length that minimizes mean held-out RMSE.

    Each fold re-runs the greedy selection on its own training rows, so the
    selected columns may differ between folds.
    """
    phi = np.asarray(phi, dtype=float)
    y = np.asarray(y, dtype=float)
    n = phi.shape[0]
    if k_folds < 2:
        raise DomainError(f"need at least 2 folds, got {k_folds}")
    if n < 2 * k_folds:
        raise TooFewPoints(f"{n} points cannot fill {k_folds} folds of at least 2")
    folds = fold_assignment(n, k_folds, seed)
    rmse = np.zeros((k_folds, l))
    mask = np.ones(n, dtype=bool)
    for f, test in enumerate(folds):
        mask[:] = True
        mask[test] = False
        train = np.flatnonzero(mask)
        assert not np.intersect1d(train, test).size
        path = greedy_fit(phi[train], y[train], min(l, train.size))
        for j, coef in enumerate(path.coefficients_per_step):
            pred = phi[np.ix_(test, path.selected[: j + 1])] @ coef
            rmse[f, j] = np.sqrt(np.mean((y[test] - pred) ** 2))
        if path.l < l:
            rmse[f, path.l:] = np.inf
    scores = rmse.mean(axis=0)
    size = _argmin_first(scores)
    full = greedy_fit(phi, y, l)
    return SelectionReport("cv", k_folds, scores, size, full.support(size), full)


def information_scores(rss, n, criterion):
    """``n ln(rss_j / n) + penalty * j`` for ``j = 1..len(rss)``."""
    rss = np.asarray(rss, dtype=float)
    if criterion == "aic":
        penalty = 2.0
    elif criterion == "bic":
        penalty = np.log(n)
    else:
        raise DomainError(f"unknown information criterion {criterion!r}")
    sizes = np.arange(1, rss.size + 1)
    with np.errstate(divide="ignore"):
        return n * np.log(rss / n) + penalty * sizes


def ic_select(phi, y, l, criterion="bic"):
    """Pick the path length that minimizes AIC or BIC."""
    phi = np.asarray(phi, dtype=float)
    path = greedy_fit(phi, y, l)
    scores = information_scores(path.rss_per_step, phi.shape[0], criterion)
    size = _argmin_first(scores)
    return SelectionReport(criterion, None, scores, size, path.support(size), path)


def select(phi, y, l, criterion="cv", k_folds=6, seed=0):
    if criterion == "cv":
        return kfold_select(phi, y, l, k_folds, seed)
    return ic_select(phi, y, l, criterion)
