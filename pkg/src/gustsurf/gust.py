"""Discrete 1-cosine gust: peak-velocity scaling and velocity time history.

The cosine argument is the penetration distance ``V t`` over the wavelength,
so the gust lasts exactly ``H / V`` seconds; after that the velocity is 0.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, NegativeTime, StepTooLarge

REFERENCE_WAVELENGTH = 350.0  # m, wavelength at which u_max equals u_ref * fg


@dataclass(frozen=True)
class GustSpec:
    """One discrete gust encounter.

    Attributes
    ----------
    u_ref : float
        Reference gust velocity, m/s.
    h : float
        Gust wavelength, m.
    fg : float
        Flight profile alleviation factor, ``0 < fg <= 1``.
    v : float
        True air speed, m/s.
    """

    u_ref: float
    h: float
    fg: float
    v: float

    def __post_init__(self):
        if not self.u_ref > 0:
            raise InvalidParameter(f"u_ref must be > 0, got {self.u_ref}")
        if not self.h > 0:
            raise InvalidParameter(f"gust wavelength must be > 0, got {self.h}")
        if not 0 < self.fg <= 1:
            raise InvalidParameter(f"fg must lie in (0, 1], got {self.fg}")
        if not self.v > 0:
            raise InvalidParameter(f"air speed must be > 0, got {self.v}")

    @property
    def duration(self):
        """Time to traverse the gust, ``H / V``."""
        return self.h / self.v


def u_max(spec):
    """Design gust amplitude ``u_ref * fg * (H / 350) ** (1/6)``."""
    return spec.u_ref * spec.fg * (spec.h / REFERENCE_WAVELENGTH) ** (1.0 / 6.0)


def gust_velocity(spec, t):
    """Gust velocity at time ``t`` (scalar or array), zero once the gust has passed."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise NegativeTime("gust time must be >= 0")
    u = 0.5 * u_max(spec) * (1.0 - np.cos(2.0 * np.pi * spec.v * t_arr / spec.h))
    u = np.where(t_arr <= spec.duration, u, 0.0)
    return float(u) if u.ndim == 0 else u


def sample_gust(spec, t_end, dt):
    """Sample the gust uniformly on ``[0, t_end]`` with both endpoints included.

    The grid uses ``ceil(t_end / dt)`` equal intervals, so the realized step
    never exceeds ``dt``.

    Returns
    -------
    t, u : ndarray
    """
    if not dt > 0 or not t_end >= dt:
        raise InvalidParameter(f"need dt > 0 and t_end >= dt, got dt={dt}, t_end={t_end}")
    if dt > spec.duration / 20.0:
        raise StepTooLarge(f"dt={dt} under-resolves a gust lasting {spec.duration} s")
    steps = int(np.ceil(t_end / dt - 1e-9))
    t = np.linspace(0.0, t_end, steps + 1)
    return t, gust_velocity(spec, t)
