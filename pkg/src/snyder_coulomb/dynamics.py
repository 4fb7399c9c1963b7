"""Classical planar orbits under the Snyder bracket structure.

The fundamental brackets are

    {x_i, p_j} = delta_ij + beta^2 p_i p_j,
    {x_i, x_j} = beta^2 (x_i p_j - x_j p_i),
    {p_i, p_j} = 0,

with the usual Coulomb Hamiltonian H = p^2/2m - e2/r.  The flow they
generate is

    dx_i/dt = p_i (1 + beta^2 p^2)/m + beta^2 e2 (x_i (p.x) - r^2 p_i)/r^3,
    dp_i/dt = -e2 (x_i + beta^2 p_i (p.x))/r^3,

reducing exactly to Kepler at beta = 0.  Both H and the angular momentum
J = x1 p2 - x2 p1 are conserved by the deformed flow (rotational
invariance), so conservation drift is a pure integrator diagnostic.
Motion stays in the plane; the orbit is no longer a closed ellipse for
beta > 0 and the perihelion advance per radial period measures the
deformation (it grows as beta^2).

Integration uses an adaptive embedded explicit Runge-Kutta pair (DOP853
via scipy); no structure-preserving scheme exists for this noncanonical
bracket, so drift is monitored instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    CollisionSingularity,
    InsufficientPeriods,
    StepUnderflow,
)
from .model import PhysicalParams

__all__ = [
    "OrbitState",
    "Trajectory",
    "PrecessionResult",
    "DEFAULT_COLLISION_FLOOR",
    "equations_of_motion",
    "invariants",
    "poisson_bracket",
    "hamiltonian_gradients",
    "integrate_orbit",
    "precession_per_orbit",
]

DEFAULT_COLLISION_FLOOR = 1e-8

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OrbitState:
    """Planar cartesian phase-space point (x1, x2, p1, p2) at time t."""

    x1: float
    x2: float
    p1: float
    p2: float
    t: float = 0.0

    def __post_init__(self):
        if not all(
            math.isfinite(v) for v in (self.x1, self.x2, self.p1, self.p2, self.t)
        ):
            raise ValueError("orbit state components must be finite")
        if self.x1 == 0.0 and self.x2 == 0.0:
            raise ValueError("collision state r = 0 rejected")

    @property
    def r(self) -> float:
        return math.hypot(self.x1, self.x2)


@dataclass(frozen=True)
class Trajectory:
    """Sampled orbit with worst-case relative drift of H and J."""

    samples: tuple[OrbitState, ...]
    h_drift: float
    j_drift: float

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Return (t, x1, x2, p1, p2) as numpy arrays."""
        data = np.array(
            [(s.t, s.x1, s.x2, s.p1, s.p2) for s in self.samples], dtype=float
        )
        return data[:, 0], data[:, 1], data[:, 2], data[:, 3], data[:, 4]


@dataclass(frozen=True)
class PrecessionResult:
    """Mean perihelion advance per radial period, minus 2 pi.

    ``circular`` flags orbits with no measurable radial oscillation, for
    which the advance is 0 by convention.
    """

    angle_per_orbit: float
    n_orbits: int
    circular: bool = False


def _deriv(
    x1: float, x2: float, p1: float, p2: float, m: float, e2: float, beta: float
) -> tuple[float, float, float, float]:
    r2 = x1 * x1 + x2 * x2
    r3 = r2 * math.sqrt(r2)
    p_sq = p1 * p1 + p2 * p2
    p_dot_x = p1 * x1 + p2 * x2
    b2 = beta * beta
    kin = (1.0 + b2 * p_sq) / m
    dx1 = p1 * kin + b2 * e2 * (x1 * p_dot_x - r2 * p1) / r3
    dx2 = p2 * kin + b2 * e2 * (x2 * p_dot_x - r2 * p2) / r3
    dp1 = -e2 * (x1 + b2 * p1 * p_dot_x) / r3
    dp2 = -e2 * (x2 + b2 * p2 * p_dot_x) / r3
    return dx1, dx2, dp1, dp2


def equations_of_motion(
    state: OrbitState,
    params: PhysicalParams,
    r_floor: float = DEFAULT_COLLISION_FLOOR,
) -> tuple[float, float, float, float]:
    """Time derivatives (dx1, dx2, dp1, dp2) of the deformed flow.

    Raises CollisionSingularity when r is below ``r_floor``.
    """
    if state.r < r_floor:
        raise CollisionSingularity(
            f"r = {state.r!r} below collision floor {r_floor!r}", t_last=state.t
        )
    return _deriv(
        state.x1, state.x2, state.p1, state.p2, params.m, params.e2, params.beta
    )


def invariants(state: OrbitState, params: PhysicalParams) -> tuple[float, float]:
    """Conserved pair (H, J) at ``state``."""
    h = (state.p1**2 + state.p2**2) / (2.0 * params.m) - params.e2 / state.r
    j = state.x1 * state.p2 - state.x2 * state.p1
    return h, j


def poisson_bracket(
    df_dx: np.ndarray,
    df_dp: np.ndarray,
    dg_dx: np.ndarray,
    dg_dp: np.ndarray,
    x: np.ndarray,
    p: np.ndarray,
    beta: float,
) -> float:
    """Deformed bracket {f, g} from the gradients of f and g at (x, p).

    Evaluates
    beta^2 sum_ij J_ij (df/dx_i)(dg/dx_j)
    + sum_ij (delta_ij + beta^2 p_i p_j)
             ((df/dx_i)(dg/dp_j) - (dg/dx_i)(df/dp_j)).
    """
    b2 = beta * beta
    a, b = np.asarray(df_dx, float), np.asarray(dg_dx, float)
    ap, bp = np.asarray(df_dp, float), np.asarray(dg_dp, float)
    xx_term = b2 * (np.dot(a, x) * np.dot(b, p) - np.dot(b, x) * np.dot(a, p))
    xp_term = (
        np.dot(a, bp)
        - np.dot(b, ap)
        + b2 * (np.dot(p, a) * np.dot(p, bp) - np.dot(p, b) * np.dot(p, ap))
    )
    return float(xx_term + xp_term)


def hamiltonian_gradients(
    state: OrbitState, params: PhysicalParams
) -> tuple[np.ndarray, np.ndarray]:
    """(dH/dx, dH/dp) of the Coulomb Hamiltonian at ``state``."""
    r3 = state.r**3
    dh_dx = np.array([params.e2 * state.x1 / r3, params.e2 * state.x2 / r3])
    dh_dp = np.array([state.p1 / params.m, state.p2 / params.m])
    return dh_dx, dh_dp


def integrate_orbit(
    state0: OrbitState,
    params: PhysicalParams,
    t_end: float,
    local_tol: float = 1e-10,
    n_samples: int | None = None,
    r_floor: float = DEFAULT_COLLISION_FLOOR,
) -> Trajectory:
    """Integrate the deformed flow from ``state0`` for ``t_end`` time units.

    Adaptive DOP853 with rtol = atol = ``local_tol``.  The trajectory is
    sampled on a uniform grid (default about 60 samples per unit time,
    enough for sub-sample perihelion interpolation) and carries the
    worst-case relative drift of H and J as integrator diagnostics.

    Raises CollisionSingularity if the orbit reaches ``r_floor`` and
    StepUnderflow if the controller's step collapses before ``t_end``.
    """
    if not t_end > 0:
        raise ValueError(f"t_end must be > 0, got {t_end!r}")
    if not local_tol > 0:
        raise ValueError(f"local_tol must be > 0, got {local_tol!r}")
    if n_samples is None:
        n_samples = int(min(400_000, max(2000, 60.0 * t_end)))

    m, e2, beta = params.m, params.e2, params.beta

    def rhs(t: float, y: np.ndarray):
        return _deriv(y[0], y[1], y[2], y[3], m, e2, beta)

    def collision(t: float, y: np.ndarray) -> float:
        return y[0] * y[0] + y[1] * y[1] - r_floor * r_floor

    collision.terminal = True
    collision.direction = -1.0

    t_eval = np.linspace(0.0, t_end, n_samples)
    sol = solve_ivp(
        rhs,
        (0.0, t_end),
        np.array([state0.x1, state0.x2, state0.p1, state0.p2], dtype=float),
        method="DOP853",
        t_eval=t_eval,
        rtol=local_tol,
        atol=local_tol,
        events=collision,
        dense_output=False,
    )
    if sol.status == 1:
        t_hit = float(sol.t_events[0][0]) if len(sol.t_events[0]) else float(sol.t[-1])
        t_last = float(sol.t[-1]) if len(sol.t) else 0.0
        raise CollisionSingularity(
            f"orbit reached the collision floor r = {r_floor!r} at t = {t_hit!r}",
            t_last=t_last,
        )
    if sol.status != 0:
        message = sol.message or "integration failed"
        if "step size" in message.lower():
            raise StepUnderflow(message)
        raise StepUnderflow(f"integrator stopped early: {message}")

    t0 = float(state0.t)
    samples = tuple(
        OrbitState(
            x1=float(sol.y[0, k]),
            x2=float(sol.y[1, k]),
            p1=float(sol.y[2, k]),
            p2=float(sol.y[3, k]),
            t=t0 + float(sol.t[k]),
        )
        for k in range(sol.t.size)
    )

    h0, j0 = invariants(samples[0], params)
    h_scale = max(abs(h0), 1e-300)
    j_scale = max(abs(j0), 1e-300)
    h_drift = 0.0
    j_drift = 0.0
    for s in samples:
        h, j = invariants(s, params)
        h_drift = max(h_drift, abs(h - h0) / h_scale)
        j_drift = max(j_drift, abs(j - j0) / j_scale)
    return Trajectory(samples=samples, h_drift=h_drift, j_drift=j_drift)


def precession_per_orbit(traj: Trajectory) -> PrecessionResult:
    """Mean azimuthal advance between successive perihelia, minus 2 pi.

    Perihelion times are located by a three-point quadratic fit around the
    discrete minima of r(t); the unwrapped azimuth is interpolated to the
    fitted times with the quadratic through the same three samples.
    Requires at least three detected perihelia (about three radial
    periods), else raises InsufficientPeriods.  A trajectory with no radial
    oscillation is flagged circular and reports 0 by convention.
    """
    t, x1, x2, _, _ = traj.arrays()
    r = np.hypot(x1, x2)
    r_span = float(r.max() - r.min())
    if r_span < 1e-8 * float(r.mean()):
        return PrecessionResult(angle_per_orbit=0.0, n_orbits=0, circular=True)

    phi = np.unwrap(np.arctan2(x2, x1))
    interior = np.arange(1, r.size - 1)
    is_min = (r[interior] < r[interior - 1]) & (r[interior] < r[interior + 1])
    minima = interior[is_min]
    if minima.size < 3:
        raise InsufficientPeriods(
            f"found {minima.size} perihelia; need >= 3 (about 3 radial periods)"
        )

    phi_peri = []
    for i in minima:
        ts, rs, ps = t[i - 1 : i + 2], r[i - 1 : i + 2], phi[i - 1 : i + 2]
        ca, cb, _ = np.polyfit(ts - ts[1], rs, 2)
        t_star = -cb / (2.0 * ca)
        qa, qb, qc = np.polyfit(ts - ts[1], ps, 2)
        phi_peri.append(qa * t_star * t_star + qb * t_star + qc)

    phi_peri = np.asarray(phi_peri)
    n_orbits = phi_peri.size - 1
    advance = float((phi_peri[-1] - phi_peri[0]) / n_orbits)
    return PrecessionResult(angle_per_orbit=advance - TWO_PI, n_orbits=n_orbits)
