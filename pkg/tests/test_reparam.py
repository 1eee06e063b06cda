import io
from fractions import Fraction as F

import pytest

from fillcurve.knopp import KnoppCurve
from fillcurve.lance_thomas import LanceThomasCurve, build_map
from fillcurve.reparam import (
    AreaProfile,
    Enclosure,
    NotPositiveCurveError,
    SquaredParameter,
    area_fraction,
    knopp_profile,
    lt_profile,
    parameter_for_fraction,
    reparametrize,
    square_pullback_profile,
    square_pullback_split,
    write_profile_csv,
)
from fillcurve.schedules import knopp_schedule, lance_thomas_schedule


@pytest.fixture(scope="module")
def knopp_half():
    return knopp_schedule(F(1, 2), 12)


@pytest.fixture(scope="module")
def lt_half():
    return lance_thomas_schedule(F(1, 2), 6)


class TestEnclosure:
    def test_order_enforced(self):
        with pytest.raises(ValueError):
            Enclosure(F(1), F(0))

    def test_width_and_contains(self):
        e = Enclosure(F(1, 4), F(1, 2))
        assert e.width == F(1, 4)
        assert F(1, 3) in e and F(3, 4) not in e


class TestAreaProfile:
    def test_validation(self):
        with pytest.raises(ValueError):
            AreaProfile((F(0), F(1)), (F(0), F(1, 2)), F(1, 3))
        with pytest.raises(ValueError):
            AreaProfile((F(0), F(1, 2), F(1, 2), F(1)),
                        (F(0), F(1, 4), F(1, 3), F(1, 2)), F(1, 2))
        with pytest.raises(ValueError):
            AreaProfile((F(0), F(1, 2), F(1)),
                        (F(0), F(1, 2), F(1, 4)), F(1, 4))

    def test_flat_profile_is_allowed_but_not_positive(self):
        flat = AreaProfile((F(0), F(1, 2), F(3, 4), F(1)),
                           (F(0), F(1, 4), F(1, 4), F(1, 2)), F(1, 2))
        assert not flat.strictly_increasing

    def test_mass_between_breakpoints_is_enclosed(self):
        profile = AreaProfile((F(0), F(1, 2), F(1)),
                              (F(0), F(1, 4), F(1, 2)), F(1, 2))
        mass = profile.mass_at(F(1, 3))
        assert isinstance(mass, Enclosure)
        assert mass.lo == F(0) and mass.hi == F(1, 4)


class TestAreaFraction:
    def test_homogeneous_identity_at_dyadics(self, knopp_half):
        profile = knopp_profile(knopp_half, 6)
        for j in range(0, 65, 7):
            t = F(j, 64)
            assert area_fraction(profile, t) == t

    def test_endpoints(self, knopp_half):
        profile = knopp_profile(knopp_half, 3)
        assert area_fraction(profile, F(0)) == 0
        assert area_fraction(profile, F(1)) == 1

    def test_lt_first_interval_endpoint(self, lt_half):
        pmap = build_map(lt_half, 1)
        profile = lt_profile(lt_half, pmap)
        assert area_fraction(profile, F(9, 64)) == F(1, 4)

    def test_point_evaluator_makes_general_parameters_exact(self, knopp_half):
        profile = knopp_profile(knopp_half, 4)
        assert area_fraction(profile, F(1, 3)) == F(1, 3)

    def test_flat_profile_rejected(self):
        flat = AreaProfile((F(0), F(1, 2), F(3, 4), F(1)),
                           (F(0), F(1, 4), F(1, 4), F(1, 2)), F(1, 2))
        with pytest.raises(NotPositiveCurveError):
            area_fraction(flat, F(1, 2))


class TestParameterForFraction:
    def test_exact_at_breakpoints(self, knopp_half):
        profile = knopp_profile(knopp_half, 5)
        for j in (0, 1, 13, 32):
            assert parameter_for_fraction(profile, F(j, 32)) == F(j, 32)

    def test_bisection_narrows_with_exact_evaluator(self, knopp_half):
        profile = knopp_profile(knopp_half, 3)
        got = parameter_for_fraction(profile, F(1, 3), max_denominator=2**12)
        assert isinstance(got, Enclosure)
        assert F(1, 3) in got
        assert got.width <= F(1, 2**10)

    def test_enclosure_between_lt_breakpoints(self, lt_half):
        pmap = build_map(lt_half, 2)
        profile = lt_profile(lt_half, pmap)
        got = parameter_for_fraction(profile, F(1, 32), max_denominator=2**20)
        assert isinstance(got, Enclosure)
        lo_mass = profile.point_evaluator(got.lo)[0]
        hi_mass = profile.point_evaluator(got.hi)[1]
        assert lo_mass <= profile.total * F(1, 32) <= hi_mass

    def test_flat_profile_rejected(self):
        flat = AreaProfile((F(0), F(1, 2), F(3, 4), F(1)),
                           (F(0), F(1, 4), F(1, 4), F(1, 2)), F(1, 2))
        with pytest.raises(NotPositiveCurveError):
            parameter_for_fraction(flat, F(1, 2))

    def test_inverse_composes_to_identity_on_breakpoints(self, knopp_half):
        # forward then backward through a genuinely non-linear profile
        profile = square_pullback_profile(F(1, 2), 4)
        for t in profile.parameters:
            share = area_fraction(profile, t)
            assert parameter_for_fraction(profile, share) == t


class TestReparametrize:
    def test_identity_on_homogeneous_input(self, knopp_half):
        depth = 5
        curve = KnoppCurve(knopp_half, depth)
        profile = knopp_profile(knopp_half, depth)
        homog = reparametrize(curve, profile)
        assert homog.profile.parameters == profile.parameters
        for j in (0, 3, 17, 32):
            s = F(j, 32)
            assert homog.eval(s) == curve.eval(s)

    def test_lt_breakpoints_become_homogeneous(self, lt_half):
        generation = 3
        pmap = build_map(lt_half, generation)
        profile = lt_profile(lt_half, pmap)
        homog = reparametrize(LanceThomasCurve(lt_half, generation), profile)
        beta = lt_half.beta
        count = 4**generation
        for k, (s, mass) in enumerate(homog.profile.breakpoints()):
            assert s == F(k, count)
            assert mass == beta * s
        # the mapped value at s_k is the curve at the k-th interval end
        for k in (1, 5, 40, count):
            t_k = profile.parameters[k]
            expected, err = LanceThomasCurve(lt_half, generation).eval(t_k)
            got, got_err = homog.eval(F(k, count))
            assert (got, got_err) == (expected, err) == (expected, F(0))

    def test_square_pullback_recovers_homogeneity(self, knopp_half):
        depth = 4
        base = KnoppCurve(knopp_half, 8)
        pulled = SquaredParameter(base)
        profile = square_pullback_profile(F(1, 2), depth)
        homog = reparametrize(pulled, profile)
        for j in range(2**depth + 1):
            t = F(j, 2**depth)
            s = t * t  # mapped breakpoint: the normalized mass of [0, t]
            mass = homog.base_profile.masses[j]
            assert mass == F(1, 2) * s
            # evaluating the homogenized curve at s recovers the base
            # homogeneous curve at the same parameter
            assert homog.eval(s) == base.eval(s)

    def test_flat_profile_rejected(self, lt_half):
        flat = AreaProfile((F(0), F(1, 2), F(3, 4), F(1)),
                           (F(0), F(1, 8), F(1, 8), F(1, 4)), F(1, 4))
        with pytest.raises(NotPositiveCurveError):
            reparametrize(LanceThomasCurve(lt_half, 1), flat)


class TestSquarePullbackSplit:
    def test_worked_example(self, knopp_half):
        assert square_pullback_split(knopp_half, 3) == (F(9, 64), F(27, 64))

    def test_mass_conservation(self, knopp_half):
        for m in range(2, 13):
            left, right = square_pullback_split(knopp_half, m)
            assert left + right == knopp_half.partial_product(m)
            assert right == 3 * left  # exact 1:3 split at every horizon

    def test_limits(self, knopp_half):
        left, right = square_pullback_split(knopp_half, 12)
        assert left - F(1, 2) / 4 == (1 - F(1, 2)) / 2**12 / 4
        assert abs(right - 3 * F(1, 2) / 4) == 3 * (1 - F(1, 2)) / 2**12 / 4

    def test_other_beta(self):
        sched = knopp_schedule(F(3, 4), 4)
        left, right = square_pullback_split(sched, 4)
        assert left == sched.partial_product(4) / 4
        assert right == 3 * sched.partial_product(4) / 4

    def test_horizon_guard(self, knopp_half):
        with pytest.raises(ValueError):
            square_pullback_split(knopp_half, 1)


class TestResidualDecay:
    def test_horizon_profile_converges_monotonically(self, knopp_half):
        # accounting at horizon m instead of the limit scales the profile by
        # p_m: the gap to beta*t shrinks monotonically to zero
        t = F(5, 8)
        gaps = []
        for m in range(3, 13):
            value = knopp_half.partial_product(m) * t
            gaps.append(value - knopp_half.beta * t)
        assert all(a > b > 0 for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] == (1 - F(1, 2)) / 2**12 * t


class TestCsvExport:
    def test_rational_rows(self, knopp_half):
        profile = knopp_profile(knopp_half, 2)
        buf = io.StringIO()
        write_profile_csv(profile, buf)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "t,area"
        assert lines[1] == "0/1,0/1"
        assert lines[2] == "1/4,1/8"
        assert len(lines) == 6

    def test_decimal_columns(self, knopp_half):
        profile = knopp_profile(knopp_half, 1)
        buf = io.StringIO()
        write_profile_csv(profile, buf, decimal=True)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "t,area,t_decimal,area_decimal"
        assert lines[2] == "1/2,1/4,0.5,0.25"
