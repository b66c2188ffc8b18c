"""Orthogonal Greedy Algorithm (orthogonal matching pursuit) for sparse regression.

At each step the column most correlated with the current residual joins the
active set, and the response is re-projected onto the span of every column
selected so far.  The projection is maintained incrementally with
Gram-Schmidt (with one re-orthogonalization pass); the resulting
coefficients agree with a from-scratch QR refit of the selected sub-matrix.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .errors import DomainError, RankDeficient
from .numerics import ols_solve

# A candidate whose component orthogonal to the current span is below this
# fraction of its own norm is treated as dependent and skipped.
DEPENDENCE_TOL = 1e-10


@dataclass
class GreedyPath:
    """Trace of a greedy fit.

    Attributes
    ----------
    selected : tuple of int
        Column indices in order of selection.
    coefficients_per_step : list of ndarray
        Entry ``j`` holds the ``j + 1`` least-squares coefficients of the
        first ``j + 1`` selected columns.
    rss_per_step : ndarray
        Residual sum of squares after each step.
    """

    selected: tuple
    coefficients_per_step: list = field(repr=False)
    rss_per_step: np.ndarray

    @property
    def l(self):
        return len(self.selected)

    def support(self, size):
        return self.selected[:size]


def greedy_fit(phi, y, l, rule="max"):
    """Run ``l`` steps of the Orthogonal Greedy Algorithm.

    Parameters
    ----------
    phi : ndarray, shape (n, D)
        Design matrix; no column may be identically zero.
    y : ndarray, shape (n,)
    l : int
        Number of columns to select, ``1 <= l <= min(n, D)``.
    rule : {"max", "frozen_min"}
        ``"max"`` picks the column with the largest absolute correlation
        with the current residual (ties go to the lowest index).
        ``"frozen_min"`` is a diagnostic that always scores columns against
        the raw response and picks the *smallest* correlation; it exists
        only to show how badly that variant behaves.

    Returns
    -------
    GreedyPath

    Raises
    ------
    RankDeficient
        When no admissible (independent) column remains before ``l`` steps.
    """
    phi = np.asarray(phi, dtype=float)
    y = np.asarray(y, dtype=float)
    n, D = phi.shape
    if y.shape != (n,):
        raise DomainError(f"response of shape {y.shape} does not match design {phi.shape}")
    if not 1 <= l <= min(n, D):
        raise DomainError(f"l must lie in [1, {min(n, D)}], got {l}")
    if rule not in ("max", "frozen_min"):
        raise DomainError(f"unknown selection rule {rule!r}")
    norms = np.linalg.norm(phi, axis=0)
    if np.any(norms == 0):
        raise DomainError(f"column {int(np.flatnonzero(norms == 0)[0])} is identically zero")

    q = np.empty((n, l))
    r = np.zeros((l, l))
    qty = np.empty(l)
    admissible = np.ones(D, dtype=bool)
    resid = y.copy()
    frozen = np.abs(phi.T @ y) / (n * norms) if rule == "frozen_min" else None

    selected = []
    coefs = []
    rss = np.empty(l)
    for j in range(l):
        if rule == "max":
            score = np.abs(phi.T @ resid) / (n * norms)
            score[~admissible] = -1.0
        else:
            score = -frozen.copy()
            score[~admissible] = -np.inf
        while True:
            k = int(np.argmax(score))
            if not admissible[k]:
                raise RankDeficient(f"no independent column left after {j} selections")
            a = phi[:, k]
            v = a.copy()
            h = np.zeros(j)
            for _ in range(2):
                c = q[:, :j].T @ v
                v -= q[:, :j] @ c
                h += c
            nv = np.linalg.norm(v)
            if nv > DEPENDENCE_TOL * norms[k]:
                break
            admissible[k] = False
            score[k] = -1.0 if rule == "max" else -np.inf
        admissible[k] = False
        q[:, j] = v / nv
        r[:j, j] = h
        r[j, j] = nv
        qty[j] = q[:, j] @ y
        resid = resid - q[:, j] * (q[:, j] @ resid)
        selected.append(k)
        coefs.append(linalg.solve_triangular(r[: j + 1, : j + 1], qty[: j + 1]))
        rss[j] = resid @ resid
    return GreedyPath(tuple(selected), coefs, rss)


def refit(phi, y, support):
    """Ordinary least squares restricted to ``support``.

    Returns
    -------
    coefficients : ndarray
    rss : float
    """
    support = list(support)
    if len(set(support)) != len(support):
        raise DomainError("support indices must be distinct")
    phi = np.asarray(phi, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(support) > phi.shape[0]:
        raise DomainError("support larger than the number of points")
    coef, _, rss = ols_solve(phi[:, support], y)
    return coef, rss
