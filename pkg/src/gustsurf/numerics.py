"""Dense linear-algebra and statistical kernels shared by fitting and inference."""

from typing import NamedTuple

import numpy as np
from scipy import linalg, special

from .errors import DomainError, RankDeficient, TooFewSamples

RANK_TOL = 1e-12

# Asymptotic Lilliefors critical values c such that D_crit ~ c / sqrt(n).
LILLIEFORS_CRITICAL = {0.20: 0.736, 0.15: 0.768, 0.10: 0.805, 0.05: 0.886, 0.01: 1.035}


class QrFactors(NamedTuple):
    """Thin QR factors: ``q`` has orthonormal columns, ``r`` is upper triangular."""

    q: np.ndarray
    r: np.ndarray


def qr_decompose(a):
    """Householder thin QR of a tall full-column-rank matrix.

    The signs are fixed so that ``diag(r) >= 0``, which makes the
    factorization unique.

    Raises
    ------
    RankDeficient
        If ``|r_jj|`` falls below ``1e-12`` times the largest column norm.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise DomainError("qr_decompose expects a 2-D array")
    rows, cols = a.shape
    if rows < cols:
        raise DomainError(f"need rows >= cols, got {rows}x{cols}")
    if cols == 0:
        return QrFactors(np.zeros((rows, 0)), np.zeros((0, 0)))
    q, r = np.linalg.qr(a, mode="reduced")
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    q = q * signs
    r = r * signs[:, None]
    colmax = np.max(np.linalg.norm(a, axis=0))
    diag = np.abs(np.diag(r))
    bad = np.flatnonzero(diag <= RANK_TOL * colmax)
    if colmax == 0 or bad.size:
        col = int(bad[0]) if bad.size else 0
        raise RankDeficient(f"column {col} is numerically dependent on earlier columns")
    return QrFactors(q, np.triu(r))


def ols_solve(phi, y):
    """Least-squares coefficients via QR.

    Returns
    -------
    coefficients : ndarray, shape (p,)
    residual : ndarray, shape (n,)
    rss : float
    """
    phi = np.asarray(phi, dtype=float)
    y = np.asarray(y, dtype=float)
    if phi.ndim != 2 or phi.shape[0] != y.shape[0]:
        raise DomainError(f"design {phi.shape} does not match response of length {y.shape[0]}")
    if phi.shape[1] == 0:
        return np.zeros(0), y.copy(), float(y @ y)
    q, r = qr_decompose(phi)
    coef = linalg.solve_triangular(r, q.T @ y, lower=False)
    residual = y - phi @ coef
    return coef, residual, float(residual @ residual)


def student_t_quantile(p, dof):
    """Quantile of Student's t distribution with ``dof`` degrees of freedom."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"probability must lie in (0, 1), got {p}")
    if dof < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {dof}")
    if p == 0.5:
        return 0.0
    # stdtrit inverts the regularized incomplete-beta form of the t CDF
    if p > 0.5:
        return float(special.stdtrit(dof, p))
    return -float(special.stdtrit(dof, 1.0 - p))


def ks_statistic_vs_normal(sample):
    """Kolmogorov-Smirnov distance to a normal with estimated mean and scale.

    The normal is fitted with the sample mean and the ``ddof=1`` standard
    deviation, i.e. this is the Lilliefors statistic.
    """
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    if n < 8:
        raise TooFewSamples(f"need at least 8 samples, got {n}")
    sd = x.std(ddof=1)
    if sd == 0:
        return 1.0
    cdf = special.ndtr((x - x.mean()) / sd)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - cdf)
    d_minus = np.max(cdf - (i - 1) / n)
    return float(min(1.0, max(d_plus, d_minus)))


def lilliefors_critical_value(n, alpha=0.01):
    """Approximate critical value of :func:`ks_statistic_vs_normal` at level ``alpha``."""
    try:
        c = LILLIEFORS_CRITICAL[alpha]
    except KeyError:
        raise DomainError(f"no tabulated critical value for alpha={alpha}") from None
    return c / np.sqrt(n)
