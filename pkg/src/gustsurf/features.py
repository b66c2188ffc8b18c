"""Second-order polynomial features over standardized inputs."""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateColumn, DimensionMismatch, InvalidParameter


def term_count(d):
    """Number of terms of a full quadratic in ``d`` variables."""
    return (d * d + 3 * d + 2) // 2


def canonical_terms(d):
    """Constant ``()``, then linear ``(i,)``, then quadratic ``(i, j)`` with ``i <= j``."""
    terms = [()]
    terms.extend((i,) for i in range(d))
    terms.extend((i, j) for i in range(d) for j in range(i, d))
    return tuple(terms)


@dataclass(frozen=True, eq=False)
class FeatureMap:
    """Standardization constants plus the canonical quadratic term list."""

    names: tuple
    means: np.ndarray
    scales: np.ndarray

    def __post_init__(self):
        if len(self.names) != len(self.means) or len(self.names) != len(self.scales):
            raise DimensionMismatch("names, means and scales must have equal length")
        if len(set(self.names)) != len(self.names):
            raise InvalidParameter("parameter names must be unique")
        if np.any(~(np.asarray(self.scales) > 0)):
            raise DegenerateColumn("all scales must be > 0")
        object.__setattr__(self, "means", np.asarray(self.means, dtype=float))
        object.__setattr__(self, "scales", np.asarray(self.scales, dtype=float))
        object.__setattr__(self, "terms", canonical_terms(len(self.names)))
        pairs = [t for t in self.terms if len(t) == 2]
        object.__setattr__(self, "_lin", np.arange(self.d))
        object.__setattr__(self, "_qi", np.array([i for i, _ in pairs], dtype=int))
        object.__setattr__(self, "_qj", np.array([j for _, j in pairs], dtype=int))

    @property
    def d(self):
        return len(self.names)

    @property
    def size(self):
        return len(self.terms)

    def descriptors(self):
        """Term labels: ``"1"``, ``"x:<name>"`` or ``"x:<a>*x:<b>"``."""
        out = []
        for t in self.terms:
            out.append("1" if not t else "*".join(f"x:{self.names[i]}" for i in t))
        return out

    def standardize(self, points):
        return (np.asarray(points, dtype=float) - self.means) / self.scales


def build_feature_map(points, names=None):
    """Fit per-column mean and sample standard deviation on training points."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[0] < 2:
        raise InvalidParameter("need an n x d array with n >= 2")
    d = points.shape[1]
    if names is None:
        names = tuple(f"x{i}" for i in range(d))
    if len(names) != d:
        raise DimensionMismatch(f"{len(names)} names for {d} columns")
    means = points.mean(axis=0)
    scales = points.std(axis=0, ddof=1)
    flat = np.flatnonzero(~(scales > 0))
    if flat.size:
        raise DegenerateColumn(f"column {names[flat[0]]!r} is constant")
    return FeatureMap(tuple(names), means, scales)


def expand_all(fmap, points):
    """Feature matrix with row ``i`` equal to ``expand(fmap, points[i])``."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != fmap.d:
        raise DimensionMismatch(f"expected n x {fmap.d} points, got shape {points.shape}")
    z = fmap.standardize(points)
    return np.hstack([np.ones((z.shape[0], 1)), z, z[:, fmap._qi] * z[:, fmap._qj]])


def expand(fmap, x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise DimensionMismatch("expand takes a single parameter vector")
    return expand_all(fmap, x[None, :])[0]


def destandardize(fmap, support, coefficients):
    """Re-express a sparse standardized polynomial in raw parameter units.

    Returns
    -------
    dict
        Maps a raw-unit term descriptor to its coefficient; terms with an
        exactly zero coefficient are omitted.
    """
    d = fmap.d
    const = 0.0
    lin = np.zeros(d)
    quad = np.zeros((d, d))
    m, s = fmap.means, fmap.scales
    for idx, w in zip(support, coefficients):
        t = fmap.terms[idx]
        if not t:
            const += w
        elif len(t) == 1:
            (i,) = t
            lin[i] += w / s[i]
            const -= w * m[i] / s[i]
        else:
            i, j = t
            c = w / (s[i] * s[j])
            quad[i, j] += c
            lin[i] -= c * m[j]
            lin[j] -= c * m[i]
            const += c * m[i] * m[j]
    out = {}
    labels = fmap.descriptors()
    if const != 0.0:
        out["1"] = const
    for k, t in enumerate(fmap.terms):
        if len(t) == 1 and lin[t[0]] != 0.0:
            out[labels[k]] = lin[t[0]]
        elif len(t) == 2 and quad[t] != 0.0:
            out[labels[k]] = quad[t]
    return out
