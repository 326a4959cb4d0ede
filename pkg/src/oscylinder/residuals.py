"""Finite-difference verification that the fields satisfy the governing
equations, plus boundary-condition spot checks.

The closed-form fields are treated as a black box: residuals are formed
by differencing velocity() and pressure() on small stencils and
substituting into the continuity equation, both linearized momentum
equations, and the pressure Laplace equation.  Every residual is
reported dimensionless:

    continuity          |div v|            / (v0/a)
    momentum            |dv/dt + grad p/rho0 - nu0 lap v| / (v0 omega)
    pressure Laplacian  |lap p|            / (rho0 omega v0 / a)

Radial steps use central second-order differences, switching to
one-sided second-order stencils (into the fluid) when r - h would fall
below the surface, so no stencil ever crosses r = a.  Azimuthal steps
use the arc-length-matched h_theta = h/r.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .flow import PolarPoint, Scenario, _check_radius, flow_state, velocity, pressure

#: boundary_suite thresholds
NO_SLIP_TOL = 1e-12
FAR_FIELD_TOL = 1e-3
PRESSURE_FORM_TOL = 1e-13
SYMMETRY_TOL = 1e-13

_QUANTITIES = ("continuity", "momentum_r", "momentum_theta", "pressure_laplacian")


@dataclass(frozen=True)
class ResidualReport:
    """Dimensionless equation residuals at one point and step size."""

    location: PolarPoint
    t: float
    h: float              # radial step [m]
    one_sided: bool       # True when the wall forced a one-sided stencil
    continuity: float
    momentum_r: float
    momentum_theta: float
    pressure_laplacian: float


class _Stencil:
    """Field samples around one point plus second-order difference operators."""

    def __init__(self, s: Scenario, pt: PolarPoint, t: float, h: float):
        r, theta = pt.r, pt.theta
        self.h = h
        self.ht = h / r
        self.one_sided = (r - h) < s.a
        if self.one_sided:
            radii = (r, r + h, r + 2.0 * h, r + 3.0 * h)
        else:
            radii = (r - h, r, r + h)
        self.radial = tuple(flow_state(s, PolarPoint(rr, theta), t) for rr in radii)
        self.west = flow_state(s, PolarPoint(r, theta - self.ht), t)
        self.east = flow_state(s, PolarPoint(r, theta + self.ht), t)
        self.center = self.radial[0] if self.one_sided else self.radial[1]

    def d1r(self, attr: str) -> complex:
        f = [getattr(st, attr) for st in self.radial]
        if self.one_sided:
            return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * self.h)
        return (f[2] - f[0]) / (2.0 * self.h)

    def d2r(self, attr: str) -> complex:
        f = [getattr(st, attr) for st in self.radial]
        if self.one_sided:
            return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (self.h * self.h)
        return (f[2] - 2.0 * f[1] + f[0]) / (self.h * self.h)

    def d1t(self, attr: str) -> complex:
        return (getattr(self.east, attr) - getattr(self.west, attr)) / (2.0 * self.ht)

    def d2t(self, attr: str) -> complex:
        return ((getattr(self.east, attr) - 2.0 * getattr(self.center, attr)
                 + getattr(self.west, attr)) / (self.ht * self.ht))


def _resolve_step(pt: PolarPoint, h: float | None) -> float:
    if h is None:
        h = 1e-4 * pt.r
    if not (isinstance(h, (int, float)) and math.isfinite(h) and h > 0):
        raise ValueError(f"step h must be positive and finite, got {h!r}")
    return h


def residual_report(s: Scenario, pt: PolarPoint, t: float = 0.0,
                    h: float | None = None) -> ResidualReport:
    """All four equation residuals at one point (default step 1e-4 r)."""
    _check_radius(s, pt.r)
    h = _resolve_step(pt, h)
    st = _Stencil(s, pt, t, h)
    r = pt.r
    inv_r = 1.0 / r
    inv_r2 = inv_r * inv_r
    nu0 = s.fluid.nu0
    rho0 = s.fluid.rho0
    omega = s.omega
    vnorm = s.v0 if s.v0 > 0 else 1.0

    vr0 = st.center.vr
    vt0 = st.center.vtheta
    d1r_vr = st.d1r("vr")
    d1r_vt = st.d1r("vtheta")
    d1r_p = st.d1r("p")
    d1t_vr = st.d1t("vr")
    d1t_vt = st.d1t("vtheta")
    d1t_p = st.d1t("p")

    cont = d1r_vr + vr0 * inv_r + d1t_vt * inv_r

    lap_vr = (st.d2r("vr") + st.d2t("vr") * inv_r2 + d1r_vr * inv_r
              - 2.0 * d1t_vt * inv_r2 - vr0 * inv_r2)
    lap_vt = (st.d2r("vtheta") + st.d2t("vtheta") * inv_r2 + d1r_vt * inv_r
              + 2.0 * d1t_vr * inv_r2 - vt0 * inv_r2)
    mom_r = -1j * omega * vr0 + d1r_p / rho0 - nu0 * lap_vr
    mom_t = -1j * omega * vt0 + d1t_p * inv_r / rho0 - nu0 * lap_vt

    lap_p = st.d2r("p") + d1r_p * inv_r + st.d2t("p") * inv_r2

    return ResidualReport(
        location=pt,
        t=t,
        h=h,
        one_sided=st.one_sided,
        continuity=abs(cont) * s.a / vnorm,
        momentum_r=abs(mom_r) / (vnorm * omega),
        momentum_theta=abs(mom_t) / (vnorm * omega),
        pressure_laplacian=abs(lap_p) * s.a / (rho0 * omega * vnorm),
    )


def continuity_residual(s: Scenario, pt: PolarPoint, t: float = 0.0,
                        h: float | None = None) -> float:
    return residual_report(s, pt, t, h).continuity


def momentum_residual(s: Scenario, pt: PolarPoint, t: float = 0.0,
                      h: float | None = None) -> tuple[float, float]:
    """(radial, azimuthal) momentum residuals."""
    rep = residual_report(s, pt, t, h)
    return rep.momentum_r, rep.momentum_theta


def pressure_laplacian_residual(s: Scenario, pt: PolarPoint, t: float = 0.0,
                                h: float | None = None) -> float:
    return residual_report(s, pt, t, h).pressure_laplacian


def continuity_pair(s: Scenario, pt: PolarPoint, t: float = 0.0,
                    h: float | None = None) -> tuple[float, float]:
    """Continuity residual by two groupings of the same stencil values.

    The mass balance can be written div v = dv_r/dr + v_r/r
    + (1/r) dv_theta/dtheta, or regrouped through d(r v_r)/dr
    + dv_theta/dtheta = 0.  Both forms are evaluated from the same
    field samples, so they agree to regrouping roundoff (~1e-15); a
    larger gap would mean the two code paths diverged.
    """
    _check_radius(s, pt.r)
    h = _resolve_step(pt, h)
    st = _Stencil(s, pt, t, h)
    r = pt.r
    vnorm = s.v0 if s.v0 > 0 else 1.0
    vr0 = st.center.vr
    d1r_vr = st.d1r("vr")
    d1t_vt = st.d1t("vtheta")
    expanded = abs(d1r_vr + vr0 / r + d1t_vt / r) * s.a / vnorm
    regrouped = abs(vr0 + r * d1r_vr + d1t_vt) * s.a / (r * vnorm)
    return expanded, regrouped


def convergence_order(s: Scenario, pt: PolarPoint, t: float = 0.0,
                      h: float | None = None,
                      quantity: str = "momentum_theta") -> float:
    """Measured convergence order of one residual under step halving.

    Evaluates the residual at h, h/2 and h/4 and averages the two
    log2 ratios.  Central differencing should give ~2 while truncation
    dominates; pick h large enough that roundoff does not (default
    1e-3 r).
    """
    if quantity not in _QUANTITIES:
        raise ValueError(f"quantity must be one of {_QUANTITIES}, got {quantity!r}")
    if h is None:
        h = 1e-3 * pt.r
    vals = [getattr(residual_report(s, pt, t, hh), quantity)
            for hh in (h, 0.5 * h, 0.25 * h)]
    if min(vals) <= 0.0:
        raise ArithmeticError("residual vanished exactly; order is undefined")
    return 0.5 * (math.log2(vals[0] / vals[1]) + math.log2(vals[1] / vals[2]))


def residual_tolerance(s: Scenario, rho: float, h_rel: float = 1e-4) -> float:
    """Pass threshold for equation residuals at rho = r/a, step h = h_rel r.

    The floor is 1e-6.  Two mechanistic error sources can exceed it at
    extreme parameters and are folded into the envelope:

    * O(h^2) truncation of the algebraic a^2/r^2 terms, which scales
      like h_rel^2/((beta a)^2 rho^4) (calibrated so it equals
      3e-7/((beta a)^2 rho^4) at h_rel = 1e-4);
    * roundoff amplification of second differences, ~eps/h^2 on fields
      of size v0, i.e. ~40 eps/((beta a) rho h_rel)^2 after the
      momentum normalization by v0 omega.
    """
    ba = s.ba
    eps = sys.float_info.epsilon
    truncation = 3e-7 * (h_rel / 1e-4) ** 2 / ((ba * ba) * rho ** 4)
    roundoff = 40.0 * eps / ((ba * rho * h_rel) ** 2)
    return max(1e-6, truncation, roundoff)


@dataclass(frozen=True)
class BoundaryReport:
    """Maximum deviations from the four boundary/structure conditions.

    All maxima are normalized: velocities by v0, pressures by the
    reference pressure at theta = 0 of the same radius and time.
    """

    no_slip_max: float        # |v(a, theta, t)|/v0
    far_field_max: float      # |v(R) - v_inf|/v0 at R = far_radius
    pressure_form_max: float  # theta-dependence of p/cos(theta)
    symmetry_max: float       # p(r,-theta)=p(r,theta), p(r,pi-theta)=-p(r,theta)
    far_radius: float         # [m]
    no_slip_ok: bool
    far_field_ok: bool
    pressure_form_ok: bool
    symmetry_ok: bool

    @property
    def passed(self) -> bool:
        return (self.no_slip_ok and self.far_field_ok
                and self.pressure_form_ok and self.symmetry_ok)


def boundary_suite(s: Scenario) -> BoundaryReport:
    """Check no slip, far-field recovery, and the pressure ansatz shape.

    * no slip: |v| <= 1e-12 v0 on 64 angles x 4 phases at r = a;
    * far field: |v - v_inf| <= 1e-3 v0 at R = max(1e3 a, 20 delta),
      where delta is the boundary-layer thickness (the max keeps R
      outside both the algebraic 1/r^2 tails and the Bessel skin);
    * pressure form: p/cos(theta) is theta-independent to 1e-13;
    * pressure symmetry: p even under theta -> -theta and odd under
      theta -> pi - theta, to 1e-13.
    """
    vnorm = s.v0 if s.v0 > 0 else 1.0
    period = 2.0 * math.pi / s.omega
    times4 = (0.0, period / 6.0, period / 4.0, period / 2.0)

    no_slip = 0.0
    for t in times4:
        for k in range(64):
            theta = 2.0 * math.pi * k / 64.0
            vr, vt = velocity(s, PolarPoint(s.a, theta), t)
            no_slip = max(no_slip, math.hypot(abs(vr), abs(vt)) / vnorm)

    far_radius = max(1e3 * s.a, 20.0 * s.delta)
    far = 0.0
    for t in (0.0, period / 5.0):
        ph = complex(math.cos(s.omega * t), -math.sin(s.omega * t))
        for k in range(32):
            theta = 2.0 * math.pi * k / 32.0
            vr, vt = velocity(s, PolarPoint(far_radius, theta), t)
            vinf_r = s.v0 * math.cos(theta) * ph
            vinf_t = -s.v0 * math.sin(theta) * ph
            far = max(far, math.hypot(abs(vr - vinf_r), abs(vt - vinf_t)) / vnorm)

    # angles keep |cos| >= 0.25 so the division is well-conditioned
    form_thetas = (0.3, 0.8, 1.2, 2.1, 2.8, 3.6, 4.2, 5.1)
    form = 0.0
    sym = 0.0
    for rr in (1.5 * s.a, 3.0 * s.a):
        for t in (0.0, period / 5.0):
            p0 = pressure(s, PolarPoint(rr, 0.0), t)
            pnorm = abs(p0) if abs(p0) > 0.0 else 1.0
            for theta in form_thetas:
                p = pressure(s, PolarPoint(rr, theta), t)
                form = max(form, abs(p / math.cos(theta) - p0) / pnorm)
                p_neg = pressure(s, PolarPoint(rr, -theta), t)
                p_sup = pressure(s, PolarPoint(rr, math.pi - theta), t)
                sym = max(sym, abs(p_neg - p) / pnorm, abs(p_sup + p) / pnorm)

    return BoundaryReport(
        no_slip_max=no_slip,
        far_field_max=far,
        pressure_form_max=form,
        symmetry_max=sym,
        far_radius=far_radius,
        no_slip_ok=no_slip <= NO_SLIP_TOL,
        far_field_ok=far <= FAR_FIELD_TOL,
        pressure_form_ok=form <= PRESSURE_FORM_TOL,
        symmetry_ok=sym <= SYMMETRY_TOL,
    )
