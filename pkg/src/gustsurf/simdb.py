"""Synthetic gust-load database generator.

A clamped semi-wing is cut into ``K`` spanwise strips, one per monitoring
station.  Its elastic motion is represented by a few bending modes with
quasi-steady aerodynamics: the gust adds lift proportional to ``q u / V``
on every strip and the strip velocity subtracts lift the same way
(aerodynamic damping).  The rest of the aircraft follows the gust lift as a
rigid body, which relieves the wing through strip inertia.  Bending moments
come from summing strip forces (aerodynamic plus gust minus inertia)
outboard of each station, and each database entry is the largest magnitude
over ``0 <= t <= 2H/V``.

Only six parameters drive the response (see :data:`ACTIVE_PARAMETERS`);
every other column is sampled but has no effect.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyHistory,
    InvalidParameter,
    InvalidRange,
    StepTooLarge,
    UnstableModel,
)
from .rng import latin_hypercube

PARAMETER_NAMES = (
    "mass", "zero_fuel_mass", "fuel", "tas", "mach", "altitude",
    "nx", "ny", "nz", "cgx", "cgy", "cgz",
    "ixx", "ixy", "ixz", "iyy", "iyz", "izz",
    "gust_h", "fg",
)
ACTIVE_PARAMETERS = ("mass", "tas", "altitude", "cgx", "gust_h", "fg")
NUISANCE_PARAMETERS = tuple(p for p in PARAMETER_NAMES if p not in ACTIVE_PARAMETERS)

# Parameter-to-model couplings.  Strip masses (and so modal masses) scale by
# mu = 1 + MASS_TO_WING * (mass / MASS_REF - 1); inertial relief is weighted by
# lam = 1 + CGX_RELIEF_SLOPE * (cgx - CGX_REF); the rigid-body acceleration is
# AIRCRAFT_LIFT_FACTOR times the lift of both wings over the aircraft mass.
MASS_REF = 200.0e3
MASS_TO_WING = 0.5
CGX_REF = 27.0
CGX_RELIEF_SLOPE = 0.08
AIRCRAFT_LIFT_FACTOR = 1.15
U_REF = 17.07
DEFAULT_DT = 5.0e-4
MAX_MOMENT = 1e12

DEFAULT_ENVELOPE = {
    "mass": (150.0e3, 235.0e3),
    "zero_fuel_mass": (120.0e3, 170.0e3),
    "fuel": (10.0e3, 100.0e3),
    "tas": (140.0, 240.0),
    "mach": (0.42, 0.82),
    "altitude": (0.0, 6000.0),
    "nx": (-0.1, 0.1),
    "ny": (-0.1, 0.1),
    "nz": (0.9, 1.1),
    "cgx": (25.0, 29.0),
    "cgy": (-0.2, 0.2),
    "cgz": (-1.0, 1.0),
    "ixx": (1.0e7, 2.0e7),
    "ixy": (-1.0e5, 1.0e5),
    "ixz": (-5.0e5, 5.0e5),
    "iyy": (2.0e7, 4.0e7),
    "iyz": (-1.0e5, 1.0e5),
    "izz": (3.0e7, 6.0e7),
    "gust_h": (9.144, 106.68),
    "fg": (0.6, 1.0),
}

_CANTILEVER_BETA = (1.8751040687, 4.6940911330, 7.8547574382, 10.9955407349, 14.1371683910)


def air_density(altitude):
    """ISA troposphere density, kg/m^3, altitude in m."""
    return 1.225 * (1.0 - 2.2558e-5 * np.asarray(altitude, dtype=float)) ** 4.2559


@dataclass(eq=False)
class ModalModel:
    """Low-order modal model of a clamped semi-wing.

    ``mode_shapes[m, j]`` is the deflection of mode ``m`` at the centroid of
    the strip that starts at station ``j``; the shapes are orthogonal with
    respect to the reference strip masses, so ``modal_mass`` is exact.
    """

    station_positions: np.ndarray
    strip_centroids: np.ndarray
    strip_area: np.ndarray
    strip_mass: np.ndarray
    mode_shapes: np.ndarray
    modal_mass: np.ndarray
    modal_damping: np.ndarray
    modal_stiffness: np.ndarray
    cl_alpha: float = 5.5

    def __post_init__(self):
        pos = np.asarray(self.station_positions, dtype=float)
        if pos.size < 2 or np.any(np.diff(pos) <= 0):
            raise InvalidParameter("need K >= 2 strictly increasing station positions")
        if np.any(self.modal_mass <= 0) or np.any(self.modal_stiffness <= 0):
            raise InvalidParameter("modal masses and stiffnesses must be > 0")
        if np.any(self.modal_damping < 0):
            raise InvalidParameter("modal damping must be >= 0")
        if self.mode_shapes.shape != (self.n_modes, pos.size):
            raise DimensionMismatch("mode_shapes must be n_modes x K")
        # arm of strip j about station k, zero for strips inboard of k
        arms = self.strip_centroids[None, :] - pos[:, None]
        self.arms = np.where(arms > 0, arms, 0.0)
        self.station_arms = self.arms @ self.strip_area

    @property
    def n_modes(self):
        return len(self.modal_mass)

    @property
    def n_stations(self):
        return len(self.station_positions)


def reference_model(n_stations=45, n_modes=3, semi_span=30.0, root_chord=8.0, tip_chord=2.5,
                    wing_mass=20.0e3, frequencies=(1.2, 3.6, 7.5), damping_ratio=0.02):
    """Build the default synthetic wing.

    Strips have equal width; chord tapers linearly and strip mass follows
    chord squared.  Mode shapes start from clamped-free beam eigenfunctions
    and are Gram-Schmidt orthogonalized in the strip-mass inner product.
    """
    if n_modes > len(_CANTILEVER_BETA) or len(frequencies) < n_modes:
        raise InvalidParameter(f"at most {len(_CANTILEVER_BETA)} modes with one frequency each")
    width = semi_span / n_stations
    pos = np.arange(n_stations) * width
    cen = pos + 0.5 * width
    eta = cen / semi_span
    chord = root_chord + (tip_chord - root_chord) * eta
    area = chord * width
    mass = wing_mass * chord**2 / np.sum(chord**2)
    shapes = []
    for b in _CANTILEVER_BETA[:n_modes]:
        s = (math.cosh(b) + math.cos(b)) / (math.sinh(b) + math.sin(b))
        phi = np.cosh(b * eta) - np.cos(b * eta) - s * (np.sinh(b * eta) - np.sin(b * eta))
        for prev in shapes:
            phi = phi - (np.sum(mass * phi * prev) / np.sum(mass * prev * prev)) * prev
        shapes.append(phi / np.max(np.abs(phi)) * np.sign(phi[-1]))
    shapes = np.array(shapes)
    m_modal = np.sum(mass * shapes**2, axis=1)
    omega = 2.0 * np.pi * np.asarray(frequencies[:n_modes], dtype=float)
    k_modal = m_modal * omega**2
    c_modal = 2.0 * damping_ratio * m_modal * omega
    return ModalModel(pos, cen, area, mass, shapes, m_modal, c_modal, k_modal)


class _Batch:
    """Per-point constants and the vectorized equations of motion.

    With ``a = q_inf CLa / V`` the modal equations read
    ``mu M qdd = F u - C_eff qd - K q`` where ``C_eff`` gathers structural
    damping, aerodynamic damping and the relief coupling.
    """

    _PER_POINT = ("tas", "gust_h", "half_umax", "duration", "alpha", "mu", "relief_gain",
                  "ceff", "fu", "inv_m")

    def __init__(self, model, mass, tas, altitude, cgx, gust_h, fg, u_ref):
        phi = model.mode_shapes
        S, m = model.strip_area, model.strip_mass
        s_total = float(np.sum(S))
        g = phi @ S
        e = phi @ m
        G = (phi * S) @ phi.T

        self.tas = tas
        self.gust_h = gust_h
        self.half_umax = 0.5 * u_ref * fg * (gust_h / 350.0) ** (1.0 / 6.0)
        self.duration = gust_h / tas
        self.alpha = 0.5 * air_density(altitude) * tas * model.cl_alpha
        self.mu = 1.0 + MASS_TO_WING * (mass / MASS_REF - 1.0)
        lam = 1.0 + CGX_RELIEF_SLOPE * (cgx - CGX_REF)
        # relief force per unit strip mass = relief_gain * (S_total u - g . qd)
        self.relief_gain = lam * self.mu * 2.0 * AIRCRAFT_LIFT_FACTOR * self.alpha / mass
        self.ceff = (self.alpha[:, None, None] * G + np.diag(model.modal_damping)
                     - self.relief_gain[:, None, None] * np.outer(e, g))
        self.fu = self.alpha[:, None] * g - (self.relief_gain * s_total)[:, None] * e
        self.inv_m = 1.0 / (self.mu[:, None] * model.modal_mass[None, :])
        self.stiffness = model.modal_stiffness
        self.g = g
        self.s_total = s_total
        # station moment = [a u, a qd, mu qdd, relief] . basis
        self.basis = np.vstack([model.arms @ S, -((model.arms * S) @ phi.T).T,
                                -((model.arms * m) @ phi.T).T, -(model.arms @ m)])

    def take(self, index):
        """Batch restricted to ``index`` (slice or index array) of the points."""
        view = object.__new__(_Batch)
        view.__dict__.update(self.__dict__)
        for name in self._PER_POINT:
            setattr(view, name, getattr(self, name)[index])
        return view

    def gust(self, t):
        u = self.half_umax * (1.0 - np.cos(2.0 * np.pi * self.tas * t / self.gust_h))
        return np.where(t <= self.duration, u, 0.0)

    def accel(self, t, q, v):
        u = self.gust(t)
        acc = self.fu * u[:, None] - np.einsum("nij,nj->ni", self.ceff, v) - self.stiffness * q
        return acc * self.inv_m, u, v

    def moments(self, u, v, acc):
        relief = self.relief_gain * (self.s_total * u - np.einsum("j,nj->n", self.g, v))
        coeffs = np.column_stack([self.alpha * u, self.alpha[:, None] * v,
                                  self.mu[:, None] * acc, relief])
        return np.einsum("nc,ck->nk", coeffs, self.basis)


def _step_counts(model, batch, dt):
    if not dt > 0:
        raise InvalidParameter(f"dt must be > 0, got {dt}")
    f_max = np.sqrt(np.max(model.modal_stiffness[None, :] * batch.inv_m, axis=1)) / (2 * np.pi)
    limit = np.minimum(batch.duration / 20.0, 1.0 / (20.0 * f_max))
    if np.any(dt > limit):
        raise StepTooLarge(f"dt={dt} exceeds the resolution limit {float(np.min(limit)):.3g} s")
    window = 2.0 * batch.duration
    return window, np.ceil(window / dt - 1e-9).astype(int)


def _integrate(model, params, dt, u_ref, record=False):
    """Fixed-step RK4 from rest over each point's window ``[0, 2H/V]``.

    Returns per-point peak ``|M|`` (n x K) and, if ``record``, the moment
    history of the single point.
    """
    batch = _Batch(model, *(np.asarray(params[name], dtype=float) for name in ACTIVE_PARAMETERS),
                   u_ref=u_ref)
    window, steps = _step_counts(model, batch, dt)
    n = steps.size
    order = np.argsort(-steps, kind="stable")
    sb = batch.take(order)
    steps_sorted = steps[order]
    h = window[order] / steps_sorted
    q = np.zeros((n, model.n_modes))
    v = np.zeros((n, model.n_modes))
    peak = np.zeros((n, model.n_stations))
    history = []
    last = int(steps_sorted[0])
    # active[k]: points whose window still contains step k form a prefix
    active = np.searchsorted(-steps_sorted, -np.arange(last + 1), side="right")
    a = n
    for k in range(last + 1):
        if active[k] < a:
            a = int(active[k])
            sb = sb.take(slice(0, a))
            q, v, h = q[:a], v[:a], h[:a]
        t = k * h
        acc1, u, _ = sb.accel(t, q, v)
        mom = sb.moments(u, v, acc1)
        np.maximum(peak[:a], np.abs(mom), out=peak[:a])
        if record:
            history.append(mom[0].copy())
        if k == last:
            break
        hh = h[:, None]
        q2, v2 = q + 0.5 * hh * v, v + 0.5 * hh * acc1
        acc2 = sb.accel(t + 0.5 * h, q2, v2)[0]
        q3, v3 = q + 0.5 * hh * v2, v + 0.5 * hh * acc2
        acc3 = sb.accel(t + 0.5 * h, q3, v3)[0]
        q4, v4 = q + hh * v3, v + hh * acc3
        acc4 = sb.accel(t + h, q4, v4)[0]
        q = q + hh / 6.0 * (v + 2.0 * v2 + 2.0 * v3 + v4)
        v = v + hh / 6.0 * (acc1 + 2.0 * acc2 + 2.0 * acc3 + acc4)
    if not np.all(np.isfinite(peak)) or np.max(peak, initial=0.0) > MAX_MOMENT:
        raise UnstableModel("bending moment exceeded 1e12 N m")
    out = np.empty_like(peak)
    out[order] = peak
    if record:
        t = np.arange(steps[0] + 1) * (window[0] / steps[0])
        return out, t, np.array(history)
    return out


def _point_dict(x):
    if isinstance(x, dict):
        missing = [p for p in ACTIVE_PARAMETERS if p not in x]
        if missing:
            raise InvalidParameter(f"parameter vector lacks {missing}")
        return {p: np.array([float(x[p])]) for p in ACTIVE_PARAMETERS}
    raise InvalidParameter("parameter vector must be a mapping of name to value")


def _check_point(x):
    if not x["tas"][0] > 0 or not x["gust_h"][0] > 0:
        raise InvalidParameter("tas and gust_h must be > 0")
    if not 0 < x["fg"][0] <= 1:
        raise InvalidParameter("fg must lie in (0, 1]")


def simulate_response(model, x, dt=DEFAULT_DT, u_ref=U_REF):
    """Time histories of bending moment at every station for one load case.

    Parameters
    ----------
    model : ModalModel
    x : dict
        Parameter vector by name; only the active parameters are read.
    dt : float
        Largest admissible time step; the window ``[0, 2H/V]`` is split into
        ``ceil(2H / (V dt))`` equal steps.
    u_ref : float
        Reference gust velocity; ``0`` gives the zero-forcing case.

    Returns
    -------
    t : ndarray, shape (n_t,)
    moments : ndarray, shape (n_t, K)
        Signed bending moment, N m.
    """
    x = _point_dict(x)
    _check_point(x)
    if u_ref < 0:
        raise InvalidParameter("u_ref must be >= 0")
    _, t, hist = _integrate(model, x, dt, u_ref, record=True)
    return t, hist


def max_temporal(histories):
    """Largest magnitude over time at each station of an ``(n_t, K)`` history."""
    h = np.asarray(histories, dtype=float)
    if h.size == 0:
        raise EmptyHistory("no samples in the moment history")
    if h.ndim == 1:
        h = h[:, None]
    return np.max(np.abs(h), axis=0)


def simulate_maxima(model, params, dt=DEFAULT_DT, u_ref=U_REF):
    """Envelope entries for many load cases at once.

    ``params`` maps each active parameter name to an array of length ``n``;
    the result is ``(n, K)`` and row ``i`` equals
    ``max_temporal(simulate_response(model, point_i, dt)[1])``.
    """
    params = {p: np.asarray(params[p], dtype=float) for p in ACTIVE_PARAMETERS}
    return _integrate(model, params, dt, u_ref)


@dataclass(eq=False)
class LoadDatabase:
    """Parameter points and, optionally, per-station max-temporal moments."""

    parameter_names: tuple
    points: np.ndarray
    stations: np.ndarray
    responses: object = None

    def __post_init__(self):
        self.parameter_names = tuple(self.parameter_names)
        self.points = np.asarray(self.points, dtype=float)
        self.stations = np.asarray(self.stations, dtype=float)
        if self.points.ndim != 2 or self.points.shape[1] != len(self.parameter_names):
            raise DimensionMismatch("points must be n x d with one name per column")
        if self.responses is not None:
            self.responses = np.asarray(self.responses, dtype=float)
            if self.responses.shape != (self.points.shape[0], self.stations.size):
                raise DimensionMismatch("responses must be n x K")

    @property
    def n(self):
        return self.points.shape[0]

    def column(self, name):
        return self.points[:, self.parameter_names.index(name)]

    def active_params(self):
        return {p: self.column(p) for p in ACTIVE_PARAMETERS}


def scale_envelope(envelope, name, factor):
    """Copy of ``envelope`` with the range of one parameter multiplied by ``factor``."""
    out = dict(envelope)
    lo, hi = out[name]
    out[name] = (lo * factor, hi * factor)
    return out


def database_columns(d_nuisance):
    if d_nuisance < 0:
        raise InvalidParameter("d_nuisance must be >= 0")
    extra = [f"nuisance_{i}" for i in range(len(NUISANCE_PARAMETERS), d_nuisance)]
    return ACTIVE_PARAMETERS + NUISANCE_PARAMETERS[:d_nuisance] + tuple(extra)


def _bounds(envelope, names):
    bounds = []
    for name in names:
        lo, hi = envelope.get(name, (0.0, 1.0) if name.startswith("nuisance_") else (None, None))
        if lo is None:
            raise InvalidRange(f"no range given for parameter {name!r}")
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise InvalidRange(f"invalid range for {name!r}: ({lo}, {hi})")
        bounds.append((float(lo), float(hi)))
    checks = {"tas": 0.0, "gust_h": 0.0, "mass": 0.0, "fg": 0.0}
    for name, low in checks.items():
        lo, hi = bounds[names.index(name)]
        if lo <= low:
            raise InvalidRange(f"{name} range must stay above {low}")
    if bounds[names.index("fg")][1] > 1.0:
        raise InvalidRange("fg range must stay within (0, 1]")
    return bounds


def generate_database(model, envelope=None, n=1560, seed=42, d_nuisance=14,
                      dt=DEFAULT_DT, u_ref=U_REF):
    """Latin-hypercube sample an envelope and simulate every point.

    Columns are the active parameters followed by ``d_nuisance`` inert ones.
    """
    if n < 10:
        raise InvalidParameter(f"need n >= 10 points, got {n}")
    envelope = DEFAULT_ENVELOPE if envelope is None else envelope
    names = database_columns(d_nuisance)
    points = np.array(latin_hypercube(n, _bounds(envelope, names), seed))
    params = {p: points[:, names.index(p)] for p in ACTIVE_PARAMETERS}
    responses = simulate_maxima(model, params, dt, u_ref)
    return LoadDatabase(names, points, model.station_positions, responses)
