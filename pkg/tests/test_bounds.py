"""Certificate levels 1-3: frozen values, brute-force cross-checks,
closed-form constants, scale laws, and the log-space high-exponent path."""

import math

import mpmath
import numpy as np
import pytest

from certquad import (
    INF,
    Interval,
    L1,
    LINF,
    bound_level1,
    bound_level2,
    bound_level3,
    closed_form_constant,
    conjugate_exponent,
    interval_exponent,
    level3_factor,
    lp,
    make_function,
    make_rule,
    mu,
    mu_well_placed,
    preset,
    seminorm,
    seminorm_profile,
)
from helpers import riemann_weighted_df

UNIT = Interval(0.0, 1.0)


class TestLevel1:
    def test_trapezoid_quadratic(self):
        # segments collapse to one integral of |t - 1/2| * 2t over [0, 1],
        # which evaluates to 1/4
        cert = bound_level1(make_function("quadratic"), preset("trapezoid"), UNIT)
        assert cert.bound == pytest.approx(0.25, rel=1e-12)
        assert cert.level == 1
        assert not cert.certified
        assert cert.regime is None

    def test_qt_quadratic(self):
        # int_0^{1/4} t*2t + int_{1/4}^{3/4} |t-1/2|*2t + int_{3/4}^1 (1-t)*2t
        # = 1/96 + 1/16 + 5/96 = 1/8
        cert = bound_level1(make_function("quadratic"), preset("qt"), UNIT)
        assert cert.bound == pytest.approx(0.125, rel=1e-12)
        contribs = cert.segment_contributions
        assert len(contribs) == 3
        assert contribs[0] == pytest.approx(1.0 / 96.0, rel=1e-12)
        assert contribs[1] == pytest.approx(1.0 / 16.0, rel=1e-12)
        assert contribs[2] == pytest.approx(5.0 / 96.0, rel=1e-12)

    def test_brute_force_cross_check(self):
        # independent dense quadrature of the same weighted integrals
        fn = make_function("exp")
        rule = preset("simpson")
        cert = bound_level1(fn, rule, UNIT)
        xs = (0.0, 0.5, 1.0)
        xi = (1.0 / 6.0, 5.0 / 6.0)
        expected = (
            riemann_weighted_df(fn, 0.0, 0.0, 0.0)
            + riemann_weighted_df(fn, 0.0, 0.5, xi[0], n=50_000)
            + riemann_weighted_df(fn, 0.5, 1.0, xi[1], n=50_000)
            + riemann_weighted_df(fn, 1.0, 1.0, 1.0)
        )
        assert cert.bound == pytest.approx(expected, rel=1e-7)

    def test_vector_valued(self):
        # trig_circle has norm(f') = 1, so level 1 equals the pure geometry
        # integral: for the trapezoid that is mu_1(0, 1/2, 1) = 1/4
        cert = bound_level1(make_function("trig_circle"), preset("trapezoid"), UNIT)
        assert cert.bound == pytest.approx(0.25, rel=1e-12)

    def test_regime_stamp(self):
        cert = bound_level1(
            make_function("exp"), preset("qt"), UNIT, regime=lp(2.0)
        )
        assert cert.regime == lp(2.0)

    def test_degenerate_interval(self):
        cert = bound_level1(make_function("exp"), preset("qt"), Interval(1.0, 1.0))
        assert cert.bound == 0.0

    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            bound_level1(make_function("exp"), preset("qt"), UNIT, resolution=1)


class TestLevel2:
    def test_trapezoid_quadratic_linf(self):
        fn = make_function("quadratic")
        rule = preset("trapezoid")
        prof = seminorm_profile(fn, rule, UNIT, LINF)
        cert = bound_level2(prof, rule, UNIT)
        # mu_1(0, 1/2, 1) * sup|2t| = 1/4 * 2, end segments degenerate
        assert cert.bound == 0.5
        assert cert.segment_contributions == (0.0, 0.5, 0.0)
        assert cert.certified
        assert cert.level == 2

    def test_qt_quadratic_linf(self):
        fn = make_function("quadratic")
        rule = preset("qt")
        prof = seminorm_profile(fn, rule, UNIT, LINF)
        cert = bound_level2(prof, rule, UNIT)
        # (1/32)*0.5 + (1/16)*1.5 + (1/32)*2 with per-segment sups
        assert cert.bound == 0.171875
        assert cert.segment_contributions == (0.015625, 0.09375, 0.0625)

    def test_qt_exp_linf_formula(self):
        fn = make_function("exp")
        rule = preset("qt")
        prof = seminorm_profile(fn, rule, UNIT, LINF)
        cert = bound_level2(prof, rule, UNIT)
        expected = (
            0.5 * 0.0625 * math.exp(0.25)
            + 0.0625 * math.exp(0.75)
            + 0.5 * 0.0625 * math.e
        )
        assert cert.bound == pytest.approx(expected, rel=1e-15)

    def test_trapezoid_quadratic_l1(self):
        fn = make_function("quadratic")
        rule = preset("trapezoid")
        prof = seminorm_profile(fn, rule, UNIT, L1)
        cert = bound_level2(prof, rule, UNIT)
        # mu_inf(0, 1/2, 1) * L1-seminorm = 1/2 * 1
        assert cert.bound == pytest.approx(0.5, rel=1e-13)
        assert not cert.certified  # L1 seminorms are sampled

    def test_trapezoid_quadratic_l2(self):
        fn = make_function("quadratic")
        rule = preset("trapezoid")
        prof = seminorm_profile(fn, rule, UNIT, lp(2.0))
        cert = bound_level2(prof, rule, UNIT)
        # mu_2(0,1/2,1)^(1/2) * (4/3)^(1/2) = (1/12)^(1/2) * (4/3)^(1/2) = 1/3
        assert cert.bound == pytest.approx(1.0 / 3.0, rel=1e-12)

    def test_segment_count_mismatch(self):
        fn = make_function("exp")
        prof = seminorm_profile(fn, preset("qt"), UNIT, LINF)
        with pytest.raises(ValueError, match="segments"):
            bound_level2(prof, preset("simpson"), UNIT)

    def test_interval_mismatch(self):
        fn = make_function("exp")
        prof = seminorm_profile(fn, preset("qt"), Interval(0.0, 2.0), LINF)
        with pytest.raises(ValueError, match="does not match"):
            bound_level2(prof, preset("qt"), UNIT)


class TestLevel3:
    def test_linf_values(self):
        fn = make_function("quadratic")
        est = seminorm(fn, UNIT, LINF)
        assert bound_level3(est, preset("trapezoid"), UNIT).bound == 0.5
        assert bound_level3(est, preset("qt"), UNIT).bound == 0.25
        assert bound_level3(est, preset("qs"), UNIT).bound == 0.25
        assert bound_level3(est, preset("simpson"), UNIT).bound == pytest.approx(
            5.0 / 18.0, rel=1e-15
        )

    def test_certified_follows_seminorm(self):
        fn = make_function("quadratic")
        assert bound_level3(seminorm(fn, UNIT, LINF), preset("qt"), UNIT).certified
        assert not bound_level3(seminorm(fn, UNIT, L1), preset("qt"), UNIT).certified

    def test_alignment_check(self):
        est = seminorm(make_function("exp"), Interval(0.0, 2.0), LINF)
        with pytest.raises(ValueError, match="does not match"):
            bound_level3(est, preset("qt"), UNIT)

    def test_no_segment_contributions(self):
        est = seminorm(make_function("exp"), UNIT, LINF)
        assert bound_level3(est, preset("qt"), UNIT).segment_contributions == ()


class TestLevel3Factor:
    def test_l1_factors(self):
        assert level3_factor(preset("trapezoid"), UNIT, L1) == 0.5
        assert level3_factor(preset("qt"), UNIT, L1) == 0.25
        assert level3_factor(preset("qs"), UNIT, L1) == 0.25
        assert level3_factor(preset("simpson"), UNIT, L1) == pytest.approx(
            1.0 / 3.0, rel=1e-15
        )

    def test_linf_factors(self):
        assert level3_factor(preset("trapezoid"), UNIT, LINF) == 0.25
        assert level3_factor(preset("qt"), UNIT, LINF) == 0.125
        assert level3_factor(preset("qs"), UNIT, LINF) == 0.125
        assert level3_factor(preset("simpson"), UNIT, LINF) == pytest.approx(
            5.0 / 36.0, rel=1e-15
        )

    @pytest.mark.parametrize("rule_name", ["trapezoid", "qt", "simpson"])
    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 7.0, 25.0])
    def test_lp_factor_matches_closed_form(self, rule_name, p):
        regime = lp(p)
        factor = level3_factor(preset(rule_name), UNIT, regime)
        assert factor == pytest.approx(
            closed_form_constant(rule_name, regime), rel=1e-14
        )

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 7.0])
    def test_qs_lp_factor_hoelder_gap(self, p):
        # the general machinery folds the two identical qs half-brackets by
        # a discrete Hoelder step, so it exceeds the tabulated coefficient
        # by exactly 2^(1/q)
        regime = lp(p)
        q = regime.q
        factor = level3_factor(preset("qs"), UNIT, regime)
        assert factor == pytest.approx(
            2.0 ** (1.0 / q) * closed_form_constant("qs", regime), rel=1e-14
        )

    def test_scale_covariance(self):
        rng = np.random.default_rng(1203)
        rules = [preset("qt"), preset("simpson"), preset("quarter_three_point")]
        regimes = [L1, lp(2.0), lp(3.7), LINF]
        for _ in range(40):
            a = rng.uniform(-5.0, 5.0)
            b = a + rng.uniform(0.01, 10.0)
            iv = Interval(a, b)
            for rule in rules:
                for regime in regimes:
                    factor = level3_factor(rule, iv, regime)
                    unit_factor = level3_factor(rule, UNIT, regime)
                    power = interval_exponent(regime)
                    assert factor == pytest.approx(
                        unit_factor * iv.length**power, rel=1e-11
                    ), (a, b, rule.name, regime.label)

    def test_degenerate_interval(self):
        point = Interval(2.0, 2.0)
        for regime in (L1, lp(2.0), lp(40.0), LINF):
            assert level3_factor(preset("qt"), point, regime) == 0.0


class TestHalving:
    """qt halves the trapezoid bound; exact on dyadic intervals."""

    @pytest.mark.parametrize("iv", [Interval(0.0, 1.0), Interval(-1.0, 3.0)])
    @pytest.mark.parametrize("regime", [L1, LINF])
    def test_exact_on_dyadic(self, iv, regime):
        assert level3_factor(preset("qt"), iv, regime) == 0.5 * level3_factor(
            preset("trapezoid"), iv, regime
        )

    def test_bound_halves_with_shared_seminorm(self):
        est = seminorm(make_function("exp"), UNIT, LINF)
        b_qt = bound_level3(est, preset("qt"), UNIT).bound
        b_tz = bound_level3(est, preset("trapezoid"), UNIT).bound
        assert b_qt == 0.5 * b_tz

    def test_messy_floats(self):
        iv = Interval(0.1, 0.7)
        for regime in (L1, LINF):
            assert level3_factor(preset("qt"), iv, regime) == pytest.approx(
                0.5 * level3_factor(preset("trapezoid"), iv, regime), rel=1e-14
            )


class TestClosedFormTable:
    def test_l1(self):
        assert closed_form_constant("trapezoid", L1) == 0.5
        assert closed_form_constant("qt", L1) == 0.25
        assert closed_form_constant("qs", L1) == 0.25
        assert closed_form_constant("simpson", L1) == pytest.approx(
            1.0 / 3.0, rel=1e-15
        )

    def test_linf(self):
        assert closed_form_constant("trapezoid", LINF) == 0.25
        assert closed_form_constant("qt", LINF) == 0.125
        assert closed_form_constant("qs", LINF) == 0.125
        assert closed_form_constant("simpson", LINF) == pytest.approx(
            5.0 / 36.0, rel=1e-15
        )

    def test_lp_at_p2(self):
        regime = lp(2.0)
        root3 = math.sqrt(3.0)
        assert closed_form_constant("trapezoid", regime) == pytest.approx(
            1.0 / (2.0 * root3), rel=1e-14
        )
        assert closed_form_constant("qt", regime) == pytest.approx(
            1.0 / (4.0 * root3), rel=1e-14
        )
        assert closed_form_constant("qs", regime) == pytest.approx(
            1.0 / (2.0**2.5 * root3), rel=1e-14
        )
        # (2^3 + 1)^(1/2) / (2 * 3^(3/2) * 3^(1/2)) simplifies to 1/6
        assert closed_form_constant("simpson", regime) == pytest.approx(
            1.0 / 6.0, rel=1e-14
        )

    def test_lp_general_q(self):
        q = conjugate_exponent(3.0)  # q = 1.5
        assert closed_form_constant("qt", lp(3.0)) == pytest.approx(
            1.0 / (4.0 * 2.5 ** (1.0 / 1.5)), rel=1e-14
        )

    def test_unknown_rule(self):
        with pytest.raises(ValueError, match="closed-form"):
            closed_form_constant("ostrowski", LINF)

    def test_interval_exponent(self):
        assert interval_exponent(L1) == 1.0
        assert interval_exponent(LINF) == 2.0
        assert interval_exponent(lp(2.0)) == 1.5
        assert interval_exponent(lp(3.0)) == pytest.approx(1.0 + 1.0 / 1.5)


class TestOstrowskiReduction:
    def test_linf_factor_unit_interval(self):
        for s in (0.0, 0.25, 0.5, 0.75, 1.0):
            factor = level3_factor(preset("ostrowski", s), UNIT, LINF)
            assert factor == pytest.approx(0.25 + (s - 0.5) ** 2, rel=1e-15)

    def test_linf_factor_general_interval(self):
        iv = Interval(-2.0, 5.0)
        L = iv.length
        for s in (0.0, 0.3, 0.5, 0.9, 1.0):
            x = iv.a + s * L
            factor = level3_factor(preset("ostrowski", s), iv, LINF)
            expected = (0.25 + ((x - iv.midpoint) / L) ** 2) * L * L
            assert factor == pytest.approx(expected, rel=1e-13)

    def test_l1_factor_is_max_reach(self):
        iv = Interval(0.0, 1.0)
        for s in (0.0, 0.25, 0.5, 0.8, 1.0):
            factor = level3_factor(preset("ostrowski", s), iv, L1)
            assert factor == pytest.approx(max(s, 1.0 - s), rel=1e-15)


class TestMuWellPlaced:
    def test_agrees_with_general_mu(self):
        rng = np.random.default_rng(808)
        for _ in range(300):
            lo = rng.uniform(-3.0, 3.0)
            hi = lo + rng.uniform(0.0, 4.0)
            point = rng.uniform(lo, hi)
            for exponent in (1.0, 2.0, float(rng.uniform(1.0, 9.0)), INF):
                assert mu_well_placed(exponent, lo, point, hi) == pytest.approx(
                    mu(exponent, lo, point, hi), rel=1e-13, abs=1e-300
                )

    def test_rejects_outside_window(self):
        with pytest.raises(ValueError, match="outside"):
            mu_well_placed(2.0, 0.0, 1.5, 1.0)
        with pytest.raises(ValueError, match="outside"):
            mu_well_placed(INF, 0.0, -0.5, 1.0)

    def test_rejects_small_exponent(self):
        with pytest.raises(ValueError):
            mu_well_placed(0.5, 0.0, 0.5, 1.0)


def _mp_level3_lp(rule, iv, q, dps=60):
    """High-precision reference for the lp level-3 factor."""
    with mpmath.workdps(dps):
        qm = mpmath.mpf(q)
        r = qm + 1
        a = mpmath.mpf(iv.a)
        b = mpmath.mpf(iv.b)
        length = b - a
        xs = [a + mpmath.mpf(u) * length for u in rule.nodes_rel]
        P = []
        total = mpmath.mpf(0)
        for w in rule.weights:
            total += mpmath.mpf(w)
            P.append(total)
        bracket = (xs[0] - a) ** r / r
        for i in range(len(xs) - 1):
            c = P[i] * b + (1 - P[i]) * a
            bracket += ((c - xs[i]) ** r + (xs[i + 1] - c) ** r) / r
        bracket += (b - xs[-1]) ** r / r
        return float(bracket ** (1 / qm))


class TestLogSpacePath:
    """Conjugate exponents above 30 route q-th powers through logarithms."""

    @pytest.mark.parametrize("q", [31.0, 50.0, 200.0])
    def test_matches_high_precision_unit(self, q):
        regime = lp(q / (q - 1.0))
        assert regime.q == pytest.approx(q, rel=1e-13)
        for name in ("trapezoid", "qt", "qs", "simpson"):
            rule = preset(name)
            factor = level3_factor(rule, UNIT, regime)
            ref = _mp_level3_lp(rule, UNIT, regime.q)
            assert factor == pytest.approx(ref, rel=1e-12), (name, q)

    def test_direct_path_matches_high_precision(self):
        # below the threshold the plain float formula is used; same oracle
        for q in (1.5, 2.0, 8.0, 29.0):
            regime = lp(q / (q - 1.0))
            for name in ("qt", "simpson"):
                rule = preset(name)
                assert level3_factor(rule, UNIT, regime) == pytest.approx(
                    _mp_level3_lp(rule, UNIT, regime.q), rel=1e-12
                )

    def test_wide_interval_no_overflow(self):
        # (2500)^102 overflows a float; the log-space path must survive
        iv = Interval(0.0, 1.0e4)
        regime = lp(1.01)  # q = 101
        factor = level3_factor(preset("qt"), iv, regime)
        assert math.isfinite(factor)
        assert factor == pytest.approx(_mp_level3_lp(preset("qt"), iv, regime.q), rel=1e-10)

    def test_wide_interval_scale_covariance(self):
        regime = lp(1.01)
        iv = Interval(0.0, 1.0e4)
        power = interval_exponent(regime)
        lhs = level3_factor(preset("qt"), iv, regime)
        rhs = level3_factor(preset("qt"), UNIT, regime) * iv.length**power
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_level2_log_space_segments(self):
        # per-segment factors also take the log route for q > 30
        fn = make_function("exp")
        rule = preset("qt")
        q = 40.0
        regime = lp(q / (q - 1.0))
        prof = seminorm_profile(fn, rule, UNIT, regime)
        cert = bound_level2(prof, rule, UNIT)
        with mpmath.workdps(50):
            qm = mpmath.mpf(regime.q)
            quarter = mpmath.mpf("0.25")
            outer = float(quarter ** (1 + 1 / qm) / (qm + 1) ** (1 / qm))
            mid = float((quarter ** (qm + 1) * 2 / (qm + 1)) ** (1 / qm))
        expected = (
            outer * prof.segments[0].value
            + mid * prof.segments[1].value
            + outer * prof.segments[2].value
        )
        assert cert.bound == pytest.approx(expected, rel=1e-11)

    def test_tail_exponent_approaches_l1(self):
        # as p -> 1+, q -> inf and the lp factor tends to the L1 factor:
        # (4 * (1/4)^(q+1) / (q+1))^(1/q) = (1/4) * (q+1)^(-1/q) from below
        factor = level3_factor(preset("qt"), UNIT, lp(1.0001))
        assert factor == pytest.approx(0.25, rel=0.01)
        assert factor < 0.25


class TestHierarchy:
    @pytest.mark.parametrize("rule_name", ["qt", "simpson", "ostrowski"])
    @pytest.mark.parametrize(
        "regime", [L1, lp(2.0), lp(3.0), LINF], ids=lambda r: r.label
    )
    def test_chain_for_exp(self, rule_name, regime):
        fn = make_function("exp")
        rule = preset(rule_name)
        l1 = bound_level1(fn, rule, UNIT).bound
        prof = seminorm_profile(fn, rule, UNIT, regime)
        l2 = bound_level2(prof, rule, UNIT).bound
        l3 = bound_level3(prof.global_estimate, rule, UNIT).bound
        assert l1 <= l2 + 1e-12
        assert l2 <= l3 + 1e-12

    def test_chain_shifted_interval(self):
        fn = make_function("trig_circle")
        rule = preset("qs")
        iv = Interval(-1.0, 2.5)
        l1 = bound_level1(fn, rule, iv).bound
        for regime in (L1, lp(2.0), LINF):
            prof = seminorm_profile(fn, rule, iv, regime)
            l2 = bound_level2(prof, rule, iv).bound
            l3 = bound_level3(prof.global_estimate, rule, iv).bound
            assert l1 <= l2 + 1e-12 <= l3 + 2e-12
