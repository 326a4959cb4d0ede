"""Closed-form time-harmonic creeping flow past a circular cylinder.

A cylinder of radius a sits in fluid whose velocity far away oscillates
as v0 e^{-i omega t} along x.  With beta = sqrt(omega/nu0) and
j- = (1-i)/sqrt(2), the phasor fields for r >= a are

    v_r     = v0 cos(theta) e^{-i omega t} [ 1 - a^2/r^2 + f(r)/(beta r)
                                             - a f(a)/(beta r^2) ]
    v_theta = v0 sin(theta) e^{-i omega t} [ -1 - a^2/r^2
                                             + 2 K0(j- beta r)/K0(j- beta a)
                                             + f(r)/(beta r) - a f(a)/(beta r^2) ]
    p       = i v0 rho0 omega cos(theta) e^{-i omega t} [ r + a^2/r
                                             + a f(a)/(beta r) ]

with f(r) = 2 j+ K1(j- beta r)/K0(j- beta a).  Physical fields are the
real parts.

Internally everything is nondimensionalized by v0 and a; with
rho = r/a and ba = beta a, the square brackets become functions of rho
and ba only.  They are arranged so that at rho = 1 the no-slip zeros
come out exactly (the evaluations of the r-dependent and a-dependent
terms share the same floats and cancel bitwise).

Two evaluation branches keep the brackets well-conditioned:

* ba < 1: K1(z) carries a 1/z pole that makes f(r)/(beta r) and
  a f(a)/(beta r^2) blow up like 1/(ba)^2 individually while their
  difference stays O(1).  The pole is split off analytically
  (bessel_k1_minus_pole) and cancelled in exact arithmetic, leaving
  only the regular remainder W(rho) in the brackets.
* ba >= 1: no pole problem, but K decays like e^{-beta r/sqrt(2)}, so
  ratios are formed from scaled Bessel values with an explicit
  e^{-j- ba (rho-1)} factor that can underflow harmlessly.

The pole-subtracted form develops its own cancellation once ba is
large, hence the branch switch at ba = 1 where both forms are healthy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

from .bessel import (SERIES_RADIUS, bessel_k0, bessel_k1,
                     bessel_k1_minus_pole)

_SQRT1_2 = 1.0 / math.sqrt(2.0)
J_PLUS = complex(_SQRT1_2, _SQRT1_2)    # (1+i)/sqrt(2)
J_MINUS = complex(_SQRT1_2, -_SQRT1_2)  # (1-i)/sqrt(2)

#: bracket-evaluation branch switch (see module docstring)
SMALL_BA = 1.0

#: coefficients that can be perturbed for sensitivity checks
PERTURBABLE = ("B", "C", "f_a", "beta")


class RecoveryNotFoundError(RuntimeError):
    """Velocity never recovers to the requested fraction within the scan range."""


def _positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class Fluid:
    """Newtonian fluid, described by kinematic viscosity and density."""

    nu0: float   # kinematic viscosity [m^2/s]
    rho0: float  # density [kg/m^3]

    def __post_init__(self):
        _positive("nu0", self.nu0)
        _positive("rho0", self.rho0)

    @property
    def mu0(self) -> float:
        """Dynamic viscosity [Pa s], always rho0 * nu0."""
        return self.rho0 * self.nu0


#: dry air at 20 C
AIR_20C = Fluid(nu0=15.11e-6, rho0=1.204)


@dataclass(frozen=True)
class Perturbation:
    """Multiply one solution coefficient by `factor` (sensitivity hook).

    Coefficient names: "B" and "C" are the constants of the general
    radial solution, "f_a" is the surface value f(a), "beta" the
    inverse viscous length.  Exactly one coefficient is perturbed.
    """

    coefficient: str
    factor: float

    def __post_init__(self):
        if self.coefficient not in PERTURBABLE:
            raise ValueError(
                f"coefficient must be one of {PERTURBABLE}, got {self.coefficient!r}")
        _positive("factor", self.factor)


@dataclass(frozen=True)
class PolarPoint:
    r: float       # radius [m]
    theta: float   # azimuth [rad]; any real value, used through cos/sin

    def __post_init__(self):
        if not (math.isfinite(self.r) and math.isfinite(self.theta)):
            raise ValueError("PolarPoint components must be finite")


@dataclass(frozen=True)
class FlowState:
    """Field phasors at one point: multiply by nothing, take .real for physics."""

    vr: complex      # [m/s]
    vtheta: complex  # [m/s]
    p: complex       # [Pa]


class _Kernel:
    """Scenario-level cache of Bessel data at the surface argument za."""

    __slots__ = ("small", "za", "k0_za", "w1", "q", "k0s_za", "k1s_za", "g1")

    def __init__(self, ba: float):
        self.za = J_MINUS * ba
        self.small = ba < SMALL_BA
        if self.small:
            self.k0_za = bessel_k0(self.za)
            self.k0s_za = None
            self.k1s_za = None
            self.w1 = _w_small(ba, self.k0_za, 1.0)
            # pole part of G(rho) is q/rho with q = 2i/(ba^2 K0(za))
            self.q = 2j / (ba * ba * self.k0_za)
            self.g1 = self.q + self.w1
        else:
            self.k0_za = None
            self.w1 = None
            self.q = None
            self.k0s_za = bessel_k0(self.za, scaled=True)
            self.k1s_za = bessel_k1(self.za, scaled=True)
            self.g1 = _g_direct(ba, self.k0s_za, 1.0)


@dataclass(frozen=True)
class Scenario:
    """One flow problem: fluid, cylinder radius, far-field amplitude, frequency."""

    fluid: Fluid
    a: float       # cylinder radius [m]
    v0: float      # far-field speed amplitude [m/s]
    omega: float   # angular frequency [rad/s]
    perturbation: Perturbation | None = None

    def __post_init__(self):
        _positive("a", self.a)
        _positive("omega", self.omega)  # omega = 0 has no bounded 2-D solution
        if not (isinstance(self.v0, (int, float)) and math.isfinite(self.v0)
                and self.v0 >= 0):
            raise ValueError(f"v0 must be finite and >= 0, got {self.v0!r}")

    @classmethod
    def from_frequency(cls, fluid: Fluid, a: float, v0: float, f: float,
                       perturbation: Perturbation | None = None) -> "Scenario":
        _positive("f", f)
        return cls(fluid=fluid, a=a, v0=v0, omega=2.0 * math.pi * f,
                   perturbation=perturbation)

    @property
    def beta(self) -> float:
        """Inverse viscous length sqrt(omega/nu0) [1/m]."""
        return math.sqrt(self.omega / self.fluid.nu0)

    @property
    def ba(self) -> float:
        """Dimensionless frequency parameter beta * a."""
        return self.beta * self.a

    @property
    def delta(self) -> float:
        """Oscillatory boundary-layer thickness sqrt(2 nu0/omega) [m]."""
        return math.sqrt(2.0 * self.fluid.nu0 / self.omega)

    @property
    def frequency(self) -> float:
        return self.omega / (2.0 * math.pi)

    # --- perturbation plumbing -------------------------------------------

    @property
    def ba_eff(self) -> float:
        """beta*a as used in field evaluation (beta perturbation applied)."""
        if self.perturbation is not None and self.perturbation.coefficient == "beta":
            return self.ba * self.perturbation.factor
        return self.ba

    @property
    def _fa_factor(self) -> float:
        if self.perturbation is not None and self.perturbation.coefficient == "f_a":
            return self.perturbation.factor
        return 1.0

    @cached_property
    def _kernel(self) -> _Kernel:
        return _Kernel(self.ba_eff)

    @property
    def g1_eff(self) -> complex:
        """f(a)/(beta a) as used in the solution, perturbations included."""
        return self._kernel.g1 * self._fa_factor


# ----------------------------------------------------------------------
# bracket evaluation
# ----------------------------------------------------------------------

def _w_small(ba: float, k0_za: complex, rho: float) -> complex:
    """Regular part W(rho) of G(rho) after the K1 pole is split off (ba < 1)."""
    z = J_MINUS * (ba * rho)
    return 2.0 * J_PLUS * bessel_k1_minus_pole(z) / (ba * k0_za)


def _g_direct(ba: float, k0s_za: complex, rho: float) -> complex:
    """G(rho) = f(a rho)/(ba) by scaled-Bessel ratio (ba >= 1)."""
    z = J_MINUS * (ba * rho)
    decay = cmath.exp(-J_MINUS * (ba * (rho - 1.0)))
    return 2.0 * J_PLUS * bessel_k1(z, scaled=True) * decay / (ba * k0s_za)


def _k0_ratio(s: Scenario, rho: float) -> complex:
    """K0(j- beta a rho) / K0(j- beta a), underflow-safe on both branches."""
    k = s._kernel
    ba = s.ba_eff
    z = J_MINUS * (ba * rho)
    if k.small:
        if abs(z) <= SERIES_RADIUS:
            return bessel_k0(z) / k.k0_za
        return bessel_k0(z, scaled=True) * cmath.exp(-z) / k.k0_za
    decay = cmath.exp(-J_MINUS * (ba * (rho - 1.0)))
    return bessel_k0(z, scaled=True) * decay / k.k0s_za


def _brackets(s: Scenario, rho: float) -> tuple[complex, complex]:
    """Dimensionless velocity brackets (radial, azimuthal) at rho = r/a.

    Both are exactly zero (bitwise) at rho = 1: every term evaluated at
    rho = 1 reuses the float cached at scenario construction, so the
    subtractions cancel without roundoff.
    """
    k = s._kernel
    inv2 = 1.0 / (rho * rho)
    if k.small:
        w = _w_small(s.ba_eff, k.k0_za, rho)
        tail = w / rho - k.w1 * inv2
    else:
        g = _g_direct(s.ba_eff, k.k0s_za, rho)
        tail = g / rho - k.g1 * inv2
    br = (1.0 - inv2) + tail
    bth = (-1.0 - inv2 + 2.0 * _k0_ratio(s, rho)) + tail
    d_fa = s._fa_factor - 1.0
    if d_fa != 0.0:
        corr = d_fa * k.g1 * inv2
        br -= corr
        bth -= corr
    return br, bth


def _bracket_derivs(s: Scenario, rho: float) -> tuple[complex, complex]:
    """d/d rho of the velocity brackets, by the Bessel recurrences.

    Uses dK0/dz = -K1 and dK1/dz = -K0 - K1/z, which collapse to
        W'(rho) = -2 k0r(rho) - W(rho)/rho         (ba < 1)
        G'(rho) = -2 k0r(rho) - G(rho)/rho         (ba >= 1)
    where k0r is the K0 ratio of _k0_ratio.  At rho = 1 the radial
    derivative vanishes bitwise and the azimuthal one reduces to
    i ba^2 G(1), which is what the surface traction needs.
    """
    k = s._kernel
    ba = s.ba_eff
    inv = 1.0 / rho
    inv2 = inv * inv
    inv3 = inv2 * inv
    k0r = _k0_ratio(s, rho)
    if k.small:
        w = _w_small(ba, k.k0_za, rho)
        dbr = 2.0 * inv3 - 2.0 * k0r * inv - 2.0 * w * inv2 + 2.0 * k.w1 * inv3
        # i ba^2 Q/rho = -2/(K0(za) rho) is kept explicit: no ba^2 blow-up
        dbth = dbr + 1j * (ba * ba) * w - 2.0 * inv / k.k0_za
    else:
        g = _g_direct(ba, k.k0s_za, rho)
        dbr = 2.0 * inv3 - 2.0 * k0r * inv - 2.0 * g * inv2 + 2.0 * k.g1 * inv3
        dbth = dbr + 1j * (ba * ba) * g
    d_fa = s._fa_factor - 1.0
    if d_fa != 0.0:
        corr = 2.0 * d_fa * k.g1 * inv3
        dbr += corr
        dbth += corr
    return dbr, dbth


def _pressure_bracket(s: Scenario, rho: float) -> complex:
    return rho + 1.0 / rho + s.g1_eff / rho


def _pressure_bracket_deriv(s: Scenario, rho: float) -> complex:
    inv2 = 1.0 / (rho * rho)
    return 1.0 - inv2 - s.g1_eff * inv2


def _check_radius(s: Scenario, r: float) -> float:
    if not math.isfinite(r) or r < s.a:
        raise ValueError(f"field point radius {r!r} is below the cylinder surface a={s.a!r}")
    return r / s.a


def _phase(s: Scenario, t: float) -> complex:
    return cmath.exp(complex(0.0, -s.omega * t))


def _k0_unscaled(z: complex) -> complex:
    if abs(z) <= SERIES_RADIUS:
        return bessel_k0(z)
    return bessel_k0(z, scaled=True) * cmath.exp(-z)


def _k1_unscaled(z: complex) -> complex:
    if abs(z) <= SERIES_RADIUS:
        return bessel_k1(z)
    return bessel_k1(z, scaled=True) * cmath.exp(-z)


def _coefficient_delta_fields(s: Scenario, r: float, theta: float,
                              phase: complex) -> tuple[complex, complex, complex]:
    """Field increments from a B or C perturbation.

    The solution is linear in B and C, so the perturbed field is the
    closed form plus (factor-1) * coefficient * mode shape.  The mode
    shapes come from the constants form of the radial solution:

        dv_r/dB = cos(theta) e^{-iwt} K1(j- beta r)/(rho0 omega r)
        dv_t/dB = sin(theta) e^{-iwt} [K1(j- beta r)/(rho0 omega r)
                                       + j- beta K0(j- beta r)/(rho0 omega)]
        dv_r/dC = i cos(theta) e^{-iwt}/(rho0 omega r^2)
        dv_t/dC = i sin(theta) e^{-iwt}/(rho0 omega r^2)
        dp/dC   = cos(theta) e^{-iwt}/r
    """
    pert = s.perturbation
    if pert is None or pert.coefficient not in ("B", "C"):
        return 0j, 0j, 0j
    rho0 = s.fluid.rho0
    omega = s.omega
    d = pert.factor - 1.0
    c = math.cos(theta)
    sn = math.sin(theta)
    if pert.coefficient == "C":
        dC = d * coefficient_C(s)
        dvr = dC * 1j * c * phase / (rho0 * omega * r * r)
        dvt = dC * 1j * sn * phase / (rho0 * omega * r * r)
        dp = dC * c * phase / r
        return dvr, dvt, dp
    dB = d * coefficient_B(s)
    z = J_MINUS * (s.beta * r)
    k0 = _k0_unscaled(z)
    k1 = _k1_unscaled(z)
    dvr = dB * k1 * c * phase / (rho0 * omega * r)
    dvt = dB * (k1 / (rho0 * omega * r) + J_MINUS * s.beta * k0 / (rho0 * omega)) * sn * phase
    return dvr, dvt, 0j


# ----------------------------------------------------------------------
# public field evaluation
# ----------------------------------------------------------------------

def velocity(s: Scenario, pt: PolarPoint, t: float) -> tuple[complex, complex]:
    """Velocity phasors (v_r, v_theta) at a point, time t [s]."""
    rho = _check_radius(s, pt.r)
    br, bth = _brackets(s, rho)
    ph = _phase(s, t)
    vr = s.v0 * math.cos(pt.theta) * ph * br
    vth = s.v0 * math.sin(pt.theta) * ph * bth
    if s.perturbation is not None and s.perturbation.coefficient in ("B", "C"):
        dvr, dvt, _ = _coefficient_delta_fields(s, pt.r, pt.theta, ph)
        vr += dvr
        vth += dvt
    return vr, vth


def pressure(s: Scenario, pt: PolarPoint, t: float) -> complex:
    """Pressure phasor [Pa] at a point, time t [s]."""
    rho = _check_radius(s, pt.r)
    ph = _phase(s, t)
    p = (1j * s.v0 * s.fluid.rho0 * s.omega * s.a
         * math.cos(pt.theta) * ph * _pressure_bracket(s, rho))
    if s.perturbation is not None and s.perturbation.coefficient == "C":
        _, _, dp = _coefficient_delta_fields(s, pt.r, pt.theta, ph)
        p += dp
    return p


def flow_state(s: Scenario, pt: PolarPoint, t: float) -> FlowState:
    vr, vth = velocity(s, pt, t)
    return FlowState(vr=vr, vtheta=vth, p=pressure(s, pt, t))


def f_of_r(s: Scenario, r: float) -> complex:
    """The Bessel abbreviation f(r) = 2 j+ K1(j- beta r)/K0(j- beta a)."""
    rho = _check_radius(s, r)
    k = s._kernel
    ba = s.ba_eff
    if k.small:
        g = k.q / rho + _w_small(ba, k.k0_za, rho)
    else:
        g = _g_direct(ba, k.k0s_za, rho)
    return ba * g


def coefficient_C(s: Scenario) -> complex:
    """Pressure-dipole constant C [Pa m] of the closed-form solution."""
    return (1j * s.fluid.rho0 * s.a * s.a * s.omega * s.v0
            * (1.0 + s._kernel.g1))


def coefficient_B(s: Scenario) -> complex:
    """Constant B multiplying K1(j- beta r) in the radial solution.

    Algebraically B = -(rho0 a^2 omega v0 + iC)/(a K1(j- beta a)), which
    collapses to 2 j+ rho0 a omega v0/(ba K0(j- beta a)).  The collapsed
    form avoids dividing by K1 values that underflow at large ba; B
    itself still grows like e^{ba/sqrt 2} and raises OverflowError once
    it leaves double range.
    """
    k = s._kernel
    ba = s.ba_eff
    num = 2.0 * J_PLUS * s.fluid.rho0 * s.a * s.omega * s.v0
    if k.small:
        return num / (ba * k.k0_za)
    if k.za.real > 709.0:
        raise OverflowError(
            f"coefficient B ~ e^(beta a/sqrt 2) exceeds double range at beta a = {ba:g}")
    return num * cmath.exp(k.za) / (ba * k.k0s_za)


def radial_velocity_from_constants(s: Scenario, pt: PolarPoint, t: float) -> complex:
    """v_r rebuilt from the constants form
    [v0 + B K1(j- beta r)/(rho0 omega r) + iC/(rho0 omega r^2)] cos(theta) e^{-iwt}.

    Exists as an independent consistency path for tests; production
    evaluation goes through the conditioned brackets of velocity().
    """
    _check_radius(s, pt.r)
    B = coefficient_B(s)
    C = coefficient_C(s)
    r = pt.r
    rho0, omega = s.fluid.rho0, s.omega
    k1 = _k1_unscaled(J_MINUS * (s.beta * r))
    bracket = s.v0 + B * k1 / (rho0 * omega * r) + 1j * C / (rho0 * omega * r * r)
    return bracket * math.cos(pt.theta) * _phase(s, t)


def far_field_velocity(s: Scenario, t: float) -> tuple[complex, complex]:
    """Cartesian velocity phasor (vx, vy) of the undisturbed stream."""
    return s.v0 * _phase(s, t), 0j


def far_field_pressure(s: Scenario, x: float, t: float) -> complex:
    """Pressure phasor of the undisturbed stream at Cartesian station x."""
    return 1j * x * s.fluid.rho0 * s.omega * s.v0 * _phase(s, t)


def reynolds_number(s: Scenario) -> float:
    """Re = v0 a / nu0 (convective scale; report ba separately)."""
    return s.v0 * s.a / s.fluid.nu0


#: grid used by recovery_radius: 513 log-spaced points spanning [a, 1e6 a]
_RECOVERY_GRID_DECADES = 6.0
_RECOVERY_GRID_N = 512


def recovery_radius(s: Scenario, fraction: float) -> float:
    """Smallest radius where |v_r(r, 0)|/v0 has recovered to `fraction`.

    Scans a log-spaced grid out to 1e6 a for the last crossing, then
    bisects to 1e-6 relative tolerance in r.  Raises
    RecoveryNotFoundError when even the outermost sample is below the
    fraction.
    """
    if not (0.0 < fraction < 1.0):
        raise ValueError(f"fraction must lie in (0, 1), got {fraction!r}")

    def g(rho: float) -> float:
        return abs(_brackets(s, rho)[0])

    n = _RECOVERY_GRID_N
    rhos = [10.0 ** (_RECOVERY_GRID_DECADES * j / n) for j in range(n + 1)]
    last_below = None
    for j, rho in enumerate(rhos):
        if g(rho) < fraction:
            last_below = j
    if last_below is None:
        return s.a
    if last_below == n:
        raise RecoveryNotFoundError(
            f"|v_r|/v0 stays below {fraction} out to 1e6 a (beta a = {s.ba:g})")
    lo, hi = rhos[last_below], rhos[last_below + 1]
    while hi - lo > 1e-6 * lo:
        mid = math.sqrt(lo * hi)
        if g(mid) >= fraction:
            hi = mid
        else:
            lo = mid
    return s.a * 0.5 * (lo + hi)


@dataclass(frozen=True)
class ValidityReport:
    """Regime diagnostics for one scenario."""

    reynolds: float                 # v0 a / nu0
    frequency_parameter: float      # beta a
    boundary_layer_thickness: float  # sqrt(2 nu0/omega) [m]
    recovery_radius_90: float | None  # [m]; None if not reached within 1e6 a
    warn_nonlinear: bool            # Re >= 0.1: convective term not negligible
    warn_long_range: bool           # 90 % recovery farther than 1e3 a


def validity_report(s: Scenario) -> ValidityReport:
    re = reynolds_number(s)
    try:
        r90 = recovery_radius(s, 0.9)
        long_range = r90 > 1e3 * s.a
    except RecoveryNotFoundError:
        r90 = None
        long_range = True
    return ValidityReport(
        reynolds=re,
        frequency_parameter=s.ba,
        boundary_layer_thickness=s.delta,
        recovery_radius_90=r90,
        warn_nonlinear=re >= 0.1,
        warn_long_range=long_range,
    )
