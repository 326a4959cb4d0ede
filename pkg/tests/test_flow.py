"""Tests for the closed-form flow fields.

Frozen expected values were computed with an mpmath oracle at 50
significant digits (scripts/reference_values.py) for three scenarios in
air at 20 C with v0 = 1 m/s:

    S1: a = 1e-6 m, f = 10 Hz     (beta a ~ 2.0e-3, pole-subtracted branch)
    S2: a = 1e-6 m, f = 100 Hz    (beta a ~ 6.4e-3, pole-subtracted branch)
    S3: a = 1e-4 m, f = 1000 Hz   (beta a ~ 2.0,    direct scaled branch)
"""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscylinder import (AIR_20C, J_MINUS, J_PLUS, Fluid, Perturbation,
                        PolarPoint, RecoveryNotFoundError, Scenario,
                        bessel_k0, bessel_k1, coefficient_B, coefficient_C,
                        f_of_r, far_field_pressure, far_field_velocity,
                        flow_state, pressure, radial_velocity_from_constants,
                        recovery_radius, reynolds_number, validity_report,
                        velocity)
from oscylinder.flow import _brackets, _g_direct, _w_small


def scenario(a, f, pert=None):
    return Scenario.from_frequency(AIR_20C, a, 1.0, f, perturbation=pert)


S1 = scenario(1e-6, 10.0)
S2 = scenario(1e-6, 100.0)
S3 = scenario(1e-4, 1000.0)

EXPECTED = {
    "S1": dict(s=S1, ba=0.0020391900435887123,
               C=complex(-5.6772672192718264e-6, 7.0650276524715860e-7),
               B=complex(0.0092049256752232054, 0.0071674605028229278),
               fa=complex(19.042269516892889, 153.03497007228213)),
    "S2": dict(s=S2, ba=0.0064484851196783687,
               C=complex(-6.8918981039108663e-6, 1.0488802640370370e-6),
               B=complex(0.036208380564175051, 0.026642426785513452),
               fa=complex(8.9343696383951745, 58.747608841163293)),
    "S3": dict(s=S3, ba=2.0391900435887123,
               C=complex(-6.9277529827877973e-5, 0.00012902332214714369),
               B=complex(1.9600786549922940, -3.1671652403914584),
               fa=complex(1.4387297866402901, 1.8674274601523424)),
}


def rel(x, ref):
    return abs(x - ref) / abs(ref)


# ----------------------------------------------------------------------
# frozen-value checks
# ----------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_frequency_parameter(name):
    case = EXPECTED[name]
    assert rel(case["s"].ba, case["ba"]) < 1e-14


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_coefficient_C(name):
    case = EXPECTED[name]
    assert rel(coefficient_C(case["s"]), case["C"]) < 1e-13


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_coefficient_B(name):
    case = EXPECTED[name]
    assert rel(coefficient_B(case["s"]), case["B"]) < 1e-13


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_f_at_surface(name):
    case = EXPECTED[name]
    assert rel(f_of_r(case["s"], case["s"].a), case["fa"]) < 1e-13


def test_velocity_samples():
    vr = velocity(S1, PolarPoint(5e-6, 0.0), 0.0)[0]
    assert rel(vr, complex(0.17623023588678838, -0.021919936617313416)) < 5e-13
    vt = velocity(S1, PolarPoint(5e-6, math.pi / 2), 0.0)[1]
    assert rel(vt, complex(-0.32602212827417504, 0.040538417696708978)) < 5e-13


def test_pressure_sample():
    p = pressure(S1, PolarPoint(2e-6, 0.0), 0.0)
    assert rel(p, complex(-2.8386336096359132, 0.35340268172577619)) < 5e-13


def test_recovery_radius_values():
    assert rel(recovery_radius(S1, 0.9), 0.00056375274256251538) < 5e-6
    assert rel(recovery_radius(S2, 0.9), 0.00020911814882357216) < 5e-6
    s1k = scenario(1e-6, 1000.0)
    assert rel(recovery_radius(s1k, 0.9), 7.9113301885485264e-5) < 5e-6


def test_azimuthal_overshoot_exists():
    # |v_theta| exceeds the far-field amplitude in an annulus (peak
    # ~1.047 v0 near r ~ 940 a for S1)
    peak = abs(velocity(S1, PolarPoint(940.0 * S1.a, math.pi / 2), 0.0)[1])
    assert peak > 1.04


# ----------------------------------------------------------------------
# structure: no slip, separability, symmetry
# ----------------------------------------------------------------------

@pytest.mark.parametrize("s", [S1, S2, S3], ids=["S1", "S2", "S3"])
def test_no_slip_is_exact(s):
    for k in range(32):
        theta = 2.0 * math.pi * k / 32.0
        for t in (0.0, 0.0123, 1.0 / 7.0):
            vr, vt = velocity(s, PolarPoint(s.a, theta), t)
            assert vr == 0j
            assert vt == 0j


def test_bracket_zero_bitwise():
    for s in (S1, S2, S3):
        br, bth = _brackets(s, 1.0)
        assert br == 0j and bth == 0j


@given(st.floats(min_value=1e-7, max_value=1e-3),
       st.floats(min_value=1.0, max_value=1e4))
@settings(max_examples=60, deadline=None)
def test_no_slip_across_parameters(a, f):
    s = scenario(a, f)
    vr, vt = velocity(s, PolarPoint(a, 0.87), 0.001)
    assert math.hypot(abs(vr), abs(vt)) <= 1e-15


@given(st.floats(min_value=0.1, max_value=10.0),
       st.floats(min_value=1.001, max_value=80.0))
@settings(max_examples=80, deadline=None)
def test_linearity_in_v0(lam, rho):
    base = Scenario.from_frequency(AIR_20C, 1e-5, 1.0, 50.0)
    scaled = Scenario.from_frequency(AIR_20C, 1e-5, lam, 50.0)
    pt = PolarPoint(rho * base.a, 0.8)
    vr1, vt1 = velocity(base, pt, 0.002)
    vr2, vt2 = velocity(scaled, pt, 0.002)
    assert abs(vr2 - lam * vr1) <= 1e-14 * lam * abs(vr1)
    assert abs(vt2 - lam * vt1) <= 1e-14 * lam * abs(vt1)
    p1 = pressure(base, pt, 0.002)
    p2 = pressure(scaled, pt, 0.002)
    assert abs(p2 - lam * p1) <= 1e-14 * lam * abs(p1)


def test_angular_separability():
    for s in (S1, S3):
        pt0 = PolarPoint(3.0 * s.a, 0.0)
        vr0 = velocity(s, pt0, 0.0)[0]
        for theta in (0.4, 1.0, 2.2, -0.9, 3.0):
            vr = velocity(s, PolarPoint(3.0 * s.a, theta), 0.0)[0]
            assert abs(vr / math.cos(theta) - vr0) <= 1e-14 * abs(vr0)


def test_phasor_separability():
    for s in (S1, S3):
        pt = PolarPoint(2.5 * s.a, 0.7)
        base = flow_state(s, pt, 0.0)
        for t in (0.001, 0.02, 0.31):
            ph = cmath.exp(-1j * s.omega * t)
            st_t = flow_state(s, pt, t)
            assert abs(st_t.vr - base.vr * ph) <= 1e-15 * abs(base.vr)
            assert abs(st_t.vtheta - base.vtheta * ph) <= 1e-15 * abs(base.vtheta)
            assert abs(st_t.p - base.p * ph) <= 1e-15 * abs(base.p)


def test_pressure_symmetries():
    for s in (S1, S3):
        for rr in (1.3 * s.a, 4.0 * s.a):
            for theta in (0.3, 1.1, 2.0):
                p = pressure(s, PolarPoint(rr, theta), 0.0)
                p_neg = pressure(s, PolarPoint(rr, -theta), 0.0)
                p_sup = pressure(s, PolarPoint(rr, math.pi - theta), 0.0)
                assert abs(p_neg - p) <= 1e-14 * abs(p)
                assert abs(p_sup + p) <= 1e-14 * abs(p)


# ----------------------------------------------------------------------
# far field and decay
# ----------------------------------------------------------------------

def test_far_field_recovery():
    for s in (S1, S2, S3):
        R = max(1e3 * s.a, 20.0 * s.delta)
        ph = cmath.exp(-1j * s.omega * 0.003)
        vr, vt = velocity(s, PolarPoint(R, 0.6), 0.003)
        vinf_r = s.v0 * math.cos(0.6) * ph
        vinf_t = -s.v0 * math.sin(0.6) * ph
        assert math.hypot(abs(vr - vinf_r), abs(vt - vinf_t)) <= 1e-3 * s.v0


def test_far_field_helpers():
    vx, vy = far_field_velocity(S1, 0.01)
    assert vy == 0j
    assert rel(vx, cmath.exp(-1j * S1.omega * 0.01)) < 1e-15
    x = 1e5 * S3.a
    p_exact = pressure(S3, PolarPoint(x, 0.0), 0.02)
    assert rel(far_field_pressure(S3, x, 0.02), p_exact) < 1e-9


def test_f_of_r_decays():
    for s in (S1, S3):
        fa = f_of_r(s, s.a)
        far = f_of_r(s, s.a + 60.0 / s.beta)
        assert abs(far) <= 1e-15 * abs(fa)
        # deep in the wake the Bessel tail underflows gracefully
        assert abs(f_of_r(s, 1e9 * s.a)) < math.inf


# ----------------------------------------------------------------------
# consistency between evaluation forms
# ----------------------------------------------------------------------

def test_constants_form_matches_brackets_direct_branch():
    # beta a ~ 2: the B/C constants form is well conditioned and must
    # reproduce v_r from the bracket evaluation
    for rho in (1.5, 3.0, 7.0):
        pt = PolarPoint(rho * S3.a, 0.7)
        v_b = velocity(S3, pt, 0.0)[0]
        v_c = radial_velocity_from_constants(S3, pt, 0.0)
        assert rel(v_c, v_b) < 1e-12


def test_constants_form_small_ba_sanity():
    # at beta a ~ 2e-3 the constants form loses ~5 digits to
    # cancellation; it must still agree at that reduced accuracy
    pt = PolarPoint(3.0 * S1.a, 0.0)
    v_b = velocity(S1, pt, 0.0)[0]
    v_c = radial_velocity_from_constants(S1, pt, 0.0)
    assert rel(v_c, v_b) < 1e-9


def test_branch_forms_agree_above_switch():
    # ba = 1.3 uses the direct scaled ratio; rebuild the brackets from
    # the pole-subtracted form and compare
    f = (1.3 / 1e-4) ** 2 * AIR_20C.nu0 / (2.0 * math.pi)
    s = Scenario.from_frequency(AIR_20C, 1e-4, 1.0, f)
    assert s.ba == pytest.approx(1.3, rel=1e-12)
    za = J_MINUS * s.ba
    k0_za = bessel_k0(za)
    w1 = _w_small(s.ba, k0_za, 1.0)
    for rho in (1.2, 2.0, 5.0):
        w = _w_small(s.ba, k0_za, rho)
        br_small = (1.0 - 1.0 / rho ** 2) + w / rho - w1 / rho ** 2
        br = _brackets(s, rho)[0]
        assert abs(br_small - br) < 1e-12 * max(1.0, abs(br))


def test_branch_forms_agree_below_switch():
    # ba = 0.8 uses the pole-subtracted form; rebuild from the direct
    # scaled ratio and compare
    f = (0.8 / 1e-4) ** 2 * AIR_20C.nu0 / (2.0 * math.pi)
    s = Scenario.from_frequency(AIR_20C, 1e-4, 1.0, f)
    assert s.ba == pytest.approx(0.8, rel=1e-12)
    k0s_za = bessel_k0(J_MINUS * s.ba, scaled=True)
    g1 = _g_direct(s.ba, k0s_za, 1.0)
    for rho in (1.2, 2.0, 5.0):
        g = _g_direct(s.ba, k0s_za, rho)
        br_direct = (1.0 - 1.0 / rho ** 2) + g / rho - g1 / rho ** 2
        br = _brackets(s, rho)[0]
        assert abs(br_direct - br) < 1e-12 * max(1.0, abs(br))


def test_coefficient_relations():
    for s in (S1, S2, S3):
        g1 = f_of_r(s, s.a) / s.ba
        want = 1j * s.fluid.rho0 * s.a ** 2 * s.omega * s.v0 * (1.0 + g1)
        assert rel(coefficient_C(s), want) < 1e-14
        # B from its defining relation -(rho0 a^2 omega v0 + iC)/(a K1(za))
        k1_za = bessel_k1(J_MINUS * s.ba)
        b_def = -(s.fluid.rho0 * s.a ** 2 * s.omega * s.v0
                  + 1j * coefficient_C(s)) / (s.a * k1_za)
        assert rel(coefficient_B(s), b_def) < 1e-10


def test_coefficient_B_overflow():
    # B grows like e^{beta a/sqrt 2}; past double range it must raise
    s = scenario(1e-2, 2.5e5)
    assert s.ba > 1100.0
    with pytest.raises(OverflowError):
        coefficient_B(s)


# ----------------------------------------------------------------------
# validation and errors
# ----------------------------------------------------------------------

def test_inputs_rejected():
    with pytest.raises(ValueError):
        Fluid(nu0=0.0, rho0=1.2)
    with pytest.raises(ValueError):
        Fluid(nu0=1e-5, rho0=-1.0)
    with pytest.raises(ValueError):
        Scenario(AIR_20C, a=-1e-6, v0=1.0, omega=10.0)
    with pytest.raises(ValueError):
        Scenario(AIR_20C, a=1e-6, v0=1.0, omega=0.0)
    with pytest.raises(ValueError):
        Scenario(AIR_20C, a=1e-6, v0=-0.5, omega=10.0)
    with pytest.raises(ValueError):
        Scenario.from_frequency(AIR_20C, 1e-6, 1.0, f=-10.0)
    with pytest.raises(ValueError):
        Perturbation("X", 1.001)
    with pytest.raises(ValueError):
        Perturbation("B", -1.0)
    with pytest.raises(ValueError):
        PolarPoint(float("nan"), 0.0)


def test_inside_cylinder_rejected():
    for fn in (lambda: velocity(S1, PolarPoint(0.5 * S1.a, 0.0), 0.0),
               lambda: pressure(S1, PolarPoint(0.9999 * S1.a, 0.0), 0.0),
               lambda: f_of_r(S1, 0.0)):
        with pytest.raises(ValueError):
            fn()


def test_recovery_errors():
    with pytest.raises(ValueError):
        recovery_radius(S1, 0.0)
    with pytest.raises(ValueError):
        recovery_radius(S1, 1.0)
    with pytest.raises(RecoveryNotFoundError):
        recovery_radius(S3, 1.0 - 1e-13)


def test_fluid_properties():
    assert AIR_20C.mu0 == pytest.approx(15.11e-6 * 1.204, rel=1e-15)
    assert S1.frequency == pytest.approx(10.0, rel=1e-15)
    assert S1.delta == pytest.approx(math.sqrt(2.0 * AIR_20C.nu0 / S1.omega),
                                     rel=1e-15)


def test_direction_constants():
    assert abs(J_PLUS * J_PLUS - 1j) < 1e-15
    assert abs(J_MINUS * J_MINUS + 1j) < 1e-15
    assert abs(J_PLUS * J_MINUS - 1.0) < 1e-15
    assert abs(abs(J_PLUS) - 1.0) < 1e-15


def test_reynolds_and_validity():
    assert reynolds_number(S1) == pytest.approx(1e-6 / 15.11e-6, rel=1e-14)
    rep = validity_report(S1)
    assert not rep.warn_nonlinear
    assert not rep.warn_long_range
    assert rep.recovery_radius_90 == pytest.approx(0.00056375274256251538,
                                                   rel=1e-5)
    fast = Scenario.from_frequency(AIR_20C, 1e-6, 10.0, 10.0)
    assert validity_report(fast).warn_nonlinear
    slow = scenario(1e-6, 1.0)
    assert validity_report(slow).warn_long_range


def test_v0_zero_gives_null_field():
    s = Scenario.from_frequency(AIR_20C, 1e-6, 0.0, 10.0)
    st0 = flow_state(s, PolarPoint(3e-6, 0.8), 0.01)
    assert st0.vr == 0j and st0.vtheta == 0j and st0.p == 0j
