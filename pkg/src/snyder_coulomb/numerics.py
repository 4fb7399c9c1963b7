"""Quadrature of the raw phase-integral integrands and spectrum solving.

This module deliberately never reuses the closed forms to produce a number:
the integrands are integrated as written, so closed form and quadrature are
two independent routes to every phase integral.  Agreement between them is
the core cross-check of the package (see ``verify-integrals`` in the CLI
and the acceptance tests).

Quadrature strategy: the integrands are regularized by an explicit change
of variable before being handed to an adaptive Gauss-Kronrod rule
(scipy.integrate.quad):

* real-line integrands use p = tan(theta), compactifying (-inf, inf) to
  (-pi/2, pi/2);
* band integrands use z = a + (b - a) sin^2(phi), which absorbs the
  square-root vanishing of the integrand at both band edges.

The energy solver brackets the root of Phi(E) = 2 pi n starting from the
undeformed level m e2^2 / (2 n'^2), expanding geometrically inside the
energy window, then polishes with Brent's method.  Phi is strictly
decreasing in E throughout the tested regime; close to the deformation
pole (beta*m*e2 of order l and beyond) monotonicity can fail and root
reporting is best effort.

All operations are pure; tables are evaluated sequentially and ordered by
(n', l) regardless of how callers might parallelize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .analytic import (
    energy_1d_series,
    energy_3d_series,
    phase_integral_1d_closed,
    PhaseIntegralResult,
    radial_phase_integral_closed,
    turning_points,
)
from .errors import (
    DegenerateFit,
    NoRootInWindow,
    OutOfWindow,
    SnyderCoulombError,
    ToleranceNotReached,
)
from .model import PhysicalParams, QuantumNumbers, energy_window

__all__ = [
    "QuadratureSpec",
    "DEFAULT_QUADRATURE",
    "SpectrumEntry",
    "CorrectionFit",
    "LLimitRow",
    "integrate_real_line",
    "integrate_band",
    "phase_integral_numeric",
    "solve_bs_energy",
    "spectrum_table",
    "correction_order",
    "l_limit_study",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and subdivision budget for the adaptive quadrature."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 60

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class SpectrumEntry:
    """One (n', l) level with all four energy determinations.

    ``error`` carries a per-entry solver failure; the solved energies are
    NaN in that case while e_newton and e_series stay populated.
    """

    qn: QuantumNumbers
    e_newton: float
    e_closed: float
    e_numeric: float
    e_series: float
    error: str | None = None


@dataclass(frozen=True)
class CorrectionFit:
    """Least-squares fit of log|E(beta)/E(0) - 1| against log beta."""

    slope: float
    intercept: float
    rms_residual: float
    n_used: int


@dataclass(frozen=True)
class LLimitRow:
    """Radial closed form at small l next to the 1D closed form."""

    l: float
    phi_radial: float
    phi_one_dim: float
    gap: float


def _quad_checked(
    func: Callable[[float], float], a: float, b: float, spec: QuadratureSpec
) -> tuple[float, float]:
    """Run scipy's adaptive rule, turning non-convergence into an error."""
    result = quad(
        func,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    if len(result) > 3:
        raise ToleranceNotReached(
            f"quadrature did not converge within {spec.max_subdivisions} "
            f"subdivisions: {result[3]}"
        )
    value, err = result[0], result[1]
    return value, err


def integrate_real_line(
    func: Callable[[float], float], spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> tuple[float, float]:
    """Integrate ``func`` over the whole real line.

    Assumes decay at least as fast as 1/p^2 at infinity (true for every
    rational integrand in this package).  Returns (value, error estimate).
    """

    def compactified(theta: float) -> float:
        c = math.cos(theta)
        return func(math.tan(theta)) / (c * c)

    return _quad_checked(compactified, -math.pi / 2.0, math.pi / 2.0, spec)


def integrate_band(
    func: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """Integrate ``func`` over [a, b] with square-root-friendly endpoints.

    The substitution z = a + (b - a) sin^2(phi) makes integrands vanishing
    like sqrt(z - a) and sqrt(b - z) smooth at the edges; smooth integrands
    are unaffected.  Returns (value, error estimate).
    """
    if not a < b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")
    width = b - a

    def substituted(phi: float) -> float:
        s = math.sin(phi)
        z = a + width * s * s
        return func(z) * width * math.sin(2.0 * phi)

    return _quad_checked(substituted, 0.0, math.pi / 2.0, spec)


def phase_integral_numeric(
    params: PhysicalParams,
    energy: float,
    l: int,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> PhaseIntegralResult:
    """Loop phase integral evaluated from the raw integrand.

    l = 0: integrates 2 m e2 / ((p^2 + 2mE)(1 + beta^2 p^2)) over the real
    line.  l >= 1: integrates
    l sqrt((z - z-)(z+ - z)) / (z (z + 2mE)(1 + beta^2 z)) over the band.
    Must agree with the closed-form counterpart within quadrature tolerance.
    """
    m, e2, beta = params.m, params.e2, params.beta
    window = energy_window(params, l if l >= 1 else 0)
    if not window.contains(energy) and not (l >= 1 and energy == window.e_max):
        raise OutOfWindow(f"E={energy!r} outside window {window} at l={l}")
    two_m_e = 2.0 * m * energy
    b2 = beta * beta

    if l == 0:

        def line_integrand(p: float) -> float:
            p2 = p * p
            return 2.0 * m * e2 / ((p2 + two_m_e) * (1.0 + b2 * p2))

        value, err = integrate_real_line(line_integrand, spec)
        return PhaseIntegralResult(value=value, kind="numeric", err_estimate=err)

    tp = turning_points(params, energy, l)
    if tp.degenerate:
        return PhaseIntegralResult(value=0.0, kind="numeric", err_estimate=0.0)
    z_minus, z_plus = tp.z_minus, tp.z_plus

    def band_integrand(z: float) -> float:
        radicand = (z - z_minus) * (z_plus - z)
        if radicand <= 0.0:
            return 0.0
        return l * math.sqrt(radicand) / (z * (z + two_m_e) * (1.0 + b2 * z))

    value, err = integrate_band(band_integrand, z_minus, z_plus, spec)
    return PhaseIntegralResult(value=value, kind="numeric", err_estimate=err)


def _phase_value(
    params: PhysicalParams,
    energy: float,
    l: int,
    method: str,
    spec: QuadratureSpec,
) -> float:
    if method == "closed_form":
        if l == 0:
            return phase_integral_1d_closed(params, energy).value
        return radial_phase_integral_closed(params, energy, l).value
    return phase_integral_numeric(params, energy, l, spec).value


def solve_bs_energy(
    params: PhysicalParams,
    qn: QuantumNumbers,
    method: str = "closed_form",
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    root_rtol: float = 1e-12,
) -> float:
    """Solve the quantization condition Phi(E) = 2 pi n for the level ``qn``.

    ``method`` selects the closed-form or the quadrature evaluation of Phi.
    The bracket starts at [E0/4, min(4 E0, window top)] around the
    undeformed level E0 = m e2^2/(2 n'^2) and expands geometrically until
    the residual changes sign; Brent's method then refines to relative
    width ``root_rtol``.  Raises NoRootInWindow when Phi - 2 pi n has no
    sign change inside the window (the level is infeasible at this
    deformation).
    """
    if method not in ("closed_form", "numeric"):
        raise ValueError(f"method must be 'closed_form' or 'numeric', got {method!r}")
    n, l = qn.n, qn.l
    target = TWO_PI * n
    window = energy_window(params, l)
    e0 = params.m * params.e2**2 / (2.0 * qn.n_prime**2)

    def residual(energy: float) -> float:
        return _phase_value(params, energy, l, method, spec) - target

    top = window.e_max * (1.0 - 1e-9) if math.isfinite(window.e_max) else math.inf
    lo = min(e0 / 4.0, top / 4.0 if math.isfinite(top) else e0 / 4.0)
    hi = min(4.0 * e0, top) if math.isfinite(top) else 4.0 * e0

    f_lo = residual(lo)
    for _ in range(100):
        if f_lo > 0.0:
            break
        lo /= 4.0
        f_lo = residual(lo)
    else:
        raise NoRootInWindow(f"Phi never exceeds 2 pi n near E -> 0 for {qn}")

    f_hi = residual(hi)
    for _ in range(100):
        if f_hi < 0.0:
            break
        if hi >= top:
            raise NoRootInWindow(
                f"Phi(E) - 2 pi n = {f_hi!r} does not change sign inside "
                f"(0, {window.e_max!r}) for {qn}: level infeasible at beta={params.beta!r}"
            )
        hi = min(4.0 * hi, top)
        f_hi = residual(hi)
    else:
        raise NoRootInWindow(f"no sign change found up to E={hi!r} for {qn}")

    return float(
        brentq(residual, lo, hi, xtol=e0 * 1e-15, rtol=max(root_rtol, 9e-16))
    )


def spectrum_table(
    params: PhysicalParams,
    n_prime_max: int,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    root_rtol: float = 1e-12,
) -> list[SpectrumEntry]:
    """All levels with 1 <= n' <= n_prime_max, 0 <= l <= n' - 1.

    Entries are ordered by (n', l).  Solver failures are recorded in-row
    and do not abort the table.
    """
    if n_prime_max < 1:
        raise ValueError(f"n_prime_max must be >= 1, got {n_prime_max!r}")
    entries: list[SpectrumEntry] = []
    for n_prime in range(1, n_prime_max + 1):
        e_newton = params.m * params.e2**2 / (2.0 * n_prime**2)
        for l in range(0, n_prime):
            qn = QuantumNumbers(n=n_prime - l, l=l)
            e_series = (
                energy_1d_series(params, n_prime)
                if l == 0
                else energy_3d_series(params, qn)
            )
            try:
                e_closed = solve_bs_energy(params, qn, "closed_form", spec, root_rtol)
                e_numeric = solve_bs_energy(params, qn, "numeric", spec, root_rtol)
                entries.append(
                    SpectrumEntry(qn, e_newton, e_closed, e_numeric, e_series)
                )
            except SnyderCoulombError as exc:  # per-entry isolation
                entries.append(
                    SpectrumEntry(
                        qn,
                        e_newton,
                        math.nan,
                        math.nan,
                        e_series,
                        error=f"{type(exc).__name__}: {exc}",
                    )
                )
    return entries


def correction_order(
    params_base: PhysicalParams,
    qn: QuantumNumbers,
    beta_grid: Sequence[float],
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    root_rtol: float = 9e-16,
    noise_floor: float = 1e-13,
) -> CorrectionFit:
    """Fitted power of beta of the relative energy correction for ``qn``.

    Solves the closed-form quantization at each beta in ``beta_grid`` and
    fits log|E(beta)/E(0) - 1| against log beta by least squares.  The 1D
    channel has slope 1, the l >= 1 channels slope 2.  Grid points with a
    correction below ``noise_floor`` are excluded; fewer than two usable
    points raise DegenerateFit.  The root tolerance defaults to machine
    precision so that solver noise stays below the noise floor.
    """
    betas = [float(b) for b in beta_grid]
    if len(betas) < 4:
        raise ValueError("beta_grid needs at least 4 points")
    if any(b <= 0 for b in betas):
        raise ValueError("beta_grid entries must be > 0")
    if math.log10(max(betas) / min(betas)) < 1.5 - 1e-12:
        raise ValueError("beta_grid must span at least 1.5 decades")

    e_ref = params_base.m * params_base.e2**2 / (2.0 * qn.n_prime**2)
    log_b, log_c = [], []
    for beta in betas:
        deformed = PhysicalParams(params_base.m, params_base.e2, beta)
        energy = solve_bs_energy(deformed, qn, "closed_form", spec, root_rtol)
        corr = abs(energy / e_ref - 1.0)
        if corr < noise_floor:
            continue
        log_b.append(math.log(beta))
        log_c.append(math.log(corr))
    if len(log_b) < 2:
        raise DegenerateFit(
            f"only {len(log_b)} correction(s) above the {noise_floor!r} noise floor for {qn}"
        )
    slope, intercept = np.polyfit(log_b, log_c, 1)
    fitted = slope * np.asarray(log_b) + intercept
    rms = float(np.sqrt(np.mean((np.asarray(log_c) - fitted) ** 2)))
    return CorrectionFit(
        slope=float(slope),
        intercept=float(intercept),
        rms_residual=rms,
        n_used=len(log_b),
    )


def l_limit_study(
    params: PhysicalParams, energy: float, l_grid: Sequence[float]
) -> list[LLimitRow]:
    """Radial closed form along a grid of small l > 0 next to the 1D value.

    The gap column is the raw difference phi_radial(l) - phi_one_dim; it is
    dominated by the -pi*l band-offset term at small l, and the l -> 0
    limit of the radial closed form reproduces the 1D closed form exactly
    (for every beta), as the rows make visible.
    """
    phi_1d = phase_integral_1d_closed(params, energy).value
    rows: list[LLimitRow] = []
    for l in l_grid:
        phi_r = radial_phase_integral_closed(params, energy, float(l)).value
        rows.append(
            LLimitRow(
                l=float(l), phi_radial=phi_r, phi_one_dim=phi_1d, gap=phi_r - phi_1d
            )
        )
    return rows
