from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from seqlim.arith import OO, BigFloat, Poly
from seqlim.limits import (
    DegenerateSystem,
    NoStabilization,
    NotConverging,
    UnderdeterminedSolution,
    ZeroDenominatorTerm,
    apery_limit,
    difference_identity_check,
    difference_ratio_limit,
    extrapolate_power_tail,
    franel_secondary,
    linear_form_decay,
    quotients,
    series_limit,
    solve_vanishing_init,
    telescoped_limit,
    telescoped_partial_sums,
    vanishing_start_solution,
)
from seqlim.recognize import eval_constant
from seqlim.recurrence import InitialConditions, Recurrence, SolutionTable
from seqlim.sums import (
    FamilySpec,
    delannoy_x_symbolic_pair,
    family_pair,
    family_terms,
    guessed_family_recurrence,
)

F = Fraction


@pytest.fixture(scope="module")
def delannoy():
    return family_pair(FamilySpec("delannoy"))


@pytest.fixture(scope="module")
def apery():
    return family_pair(FamilySpec("apery3"))


class TestQuotients:
    def test_delannoy_values(self, delannoy):
        assert quotients(*delannoy, 3) == [0, F(1, 3), F(9, 26), F(131, 378)]

    def test_apery_start(self, apery):
        assert quotients(*apery, 1) == [0, F(1, 5)]

    def test_equal_solutions(self, delannoy):
        a, _ = delannoy
        assert quotients(a, a, 5) == [F(1)] * 6

    def test_zero_denominator(self):
        # u(n+2) = u(n+1) - u(n) from 1, 1 hits zero at n = 2
        rec = Recurrence([Poly([1]), Poly([-1]), Poly([1])])
        a = SolutionTable(rec, InitialConditions(0, [1, 1]))
        b = SolutionTable(rec, InitialConditions(0, [0, 1]))
        with pytest.raises(ZeroDenominatorTerm) as err:
            quotients(a, b, 4)
        assert err.value.n == 2


class TestDifferenceIdentity:
    def test_delannoy(self, delannoy):
        assert difference_identity_check(*delannoy, 100)
        q = quotients(*delannoy, 6)
        diffs = [q[n] - q[n - 1] for n in range(1, 7)]
        assert diffs == [F(1, 3), F(1, 78), F(1, 2457), F(1, 80892),
                         F(1, 2701215), F(1, 90770922)]

    def test_delannoy_x_at_two(self):
        x = F(2)
        pair = family_pair(FamilySpec("delannoy_x", x=x))
        assert difference_identity_check(*pair, 50)
        q = quotients(*pair, 2)
        denominator = 2 * (1 + 2 * x) * (1 + 6 * x + 6 * x * x)
        assert q[2] - q[1] == F(1, 1) / denominator

    def test_apery(self, apery):
        assert difference_identity_check(*apery, 50)


class TestTelescoped:
    @pytest.mark.parametrize("x", [F(1), F(2), F(3), F(1, 2)])
    def test_partial_sums_equal_quotients(self, x):
        a, b = family_pair(FamilySpec("delannoy_x", x=x))
        assert telescoped_partial_sums(a.recurrence, a, 100) == quotients(a, b, 100)

    def test_limit_value_at_two(self):
        a, _ = family_pair(FamilySpec("delannoy_x", x=F(2)))
        got = telescoped_limit(a.recurrence, a, 90, 50)
        with mpmath.workdps(60):
            want = mpmath.ln(mpf(3) / 2) / 2
            assert abs(got.val - want) < mpf(10) ** -45


class TestAperyLimit:
    def test_delannoy_digits(self, delannoy):
        rep = apery_limit(*delannoy, 47)
        assert rep.certified_digits >= 47
        assert rep.limit_estimate.str_digits(47) == \
            "0.34657359027997265470861606072908828403775006718"

    @pytest.mark.parametrize("name,d", [("delannoy", None), ("apery3", None),
                                        ("franel", 3)])
    def test_certification_honest_under_doubling(self, name, d):
        a, b = family_pair(FamilySpec(name, d=d))
        rep1 = apery_limit(a, b, 30)
        rep2 = apery_limit(a, b, 60)
        gap = abs(rep1.limit_estimate.to_fraction() - rep2.limit_estimate.to_fraction())
        assert gap < F(1, 10) ** rep1.certified_digits

    def test_digit_agreement_grows(self, apery):
        rep = apery_limit(*apery, 60)
        digits = [d for _, d in rep.digit_agreement]
        assert digits == sorted(digits)
        assert 0 < float(rep.difference_ratio.val) < 1

    def test_not_converging_for_constant_quotient(self, delannoy):
        a, _ = delannoy
        with pytest.raises(NotConverging):
            apery_limit(a, a, 20)


class TestDifferenceRatio:
    def test_delannoy_matches_root_ratio(self, delannoy):
        got = difference_ratio_limit(*delannoy, 120, 30)
        with mpmath.workdps(40):
            assert abs(got.val - (17 - 12 * mpmath.sqrt(2))) < mpf(10) ** -20

    def test_apery_matches_root_ratio(self, apery):
        got = difference_ratio_limit(*apery, 120, 30)
        with mpmath.workdps(40):
            s = mpmath.sqrt(2)
            want = (17 - 12 * s) / (17 + 12 * s)
            assert abs(got.val - want) < mpf(10) ** -20

    def test_arctan_matches_root_ratio(self):
        pair = family_pair(FamilySpec("trinomial_x", x=F(1, 2)))
        got = difference_ratio_limit(*pair, 120, 30)
        with mpmath.workdps(40):
            s = mpmath.sqrt(2)
            assert abs(got.val - (1 - s) / (1 + s)) < mpf(10) ** -20

    def test_constant_quotient_rejected(self, delannoy):
        a, _ = delannoy
        with pytest.raises(NotConverging):
            difference_ratio_limit(a, a, 40, 20)

    def test_extrapolation_recovers_exact_tail(self):
        vals = [F(3) + F(1, n) + F(7, n * n) for n in range(10, 30)]
        got = extrapolate_power_tail(vals, list(range(10, 30)), 30)
        assert got.to_fraction() == 3  # polynomial tails extrapolate exactly


class TestLinearForm:
    def test_zero_inputs(self, apery):
        vals = linear_form_decay(*apery, BigFloat(0, 30), F(0), 5)
        assert all(v.val == 0 for v in vals)

    def test_apery_form_decays(self, apery):
        z3 = eval_constant("zeta3", 200)
        vals = linear_form_decay(*apery, z3, F(6), 30)
        mags = [abs(v.val) for v in vals]
        assert all(mags[i + 1] < mags[i] for i in range(30))
        # F(n) shrinks like the smallest root to the n-th power, ~10^(-1.53 n)
        assert mags[30] < mpf(10) ** -44


class TestSeriesLimit:
    def test_finite_center_one(self):
        ap, bp = delannoy_x_symbolic_pair(44)
        got = series_limit(ap, bp, 1, 4)
        assert dict(got.coefficients) == {1: F(-1, 4), 2: F(3, 16),
                                          3: F(-7, 48), 4: F(15, 128)}

    def test_infinity_from_three_terms(self):
        ap, bp = delannoy_x_symbolic_pair(3)
        got = series_limit(ap, bp, OO, 6)
        assert [v for _, v in got.coefficients] == [
            0, F(1, 2), F(-1, 4), F(1, 6), F(-1, 8), F(1, 10), F(-1, 12)]
        assert got.stable_through == 6

    def test_center_zero_blows_up(self):
        ap, bp = delannoy_x_symbolic_pair(21)
        with pytest.raises(NoStabilization) as err:
            series_limit(ap, bp, 0, 3)
        table = err.value.coefficient_table
        assert all(v == -n * (n + 1) for n, v in table[1])
        assert all(v == F(n * (n + 1) * (5 * n * n + 5 * n + 6), 8)
                   for n, v in table[2])


class TestFranelSecondary:
    def test_low_power_inits(self):
        b3 = franel_secondary(3, 5)
        assert b3.term(0) == 0 and b3.term(1) == 1

    def test_d5_negative_index_enforcement(self):
        b5 = franel_secondary(5, 5)
        assert b5.term(2) == F(89, 12)
        # the relation at n = -1 holds with the terms below index 0 absent:
        # c0(-1) vanishes, so only u(0), u(1), u(2) enter
        rec = guessed_family_recurrence(FamilySpec("franel", d=5))
        assert rec.coeffs[0](F(-1)) == 0
        total = sum(rec.coeffs[k](F(-1)) * b5.term(k - 1) for k in range(1, 4))
        assert total == 0

    def test_d10_needs_explicit_pin(self):
        b10 = franel_secondary(10, 4)
        assert b10.term(1) == 1 and b10.term(2) == F(381, 4)

    def test_underdetermined_without_pin(self):
        rec = guessed_family_recurrence(FamilySpec("franel", d=10))
        with pytest.raises(UnderdeterminedSolution) as err:
            vanishing_start_solution(rec, 4)
        assert err.value.dim == 2


class TestSolveVanishingInit:
    def test_franel5_tertiary(self):
        rec = guessed_family_recurrence(FamilySpec("franel", d=5))
        a_init = family_terms(FamilySpec("franel", d=5), rec.order - 1)
        got = solve_vanishing_init(rec, a_init, "zeta4", ["zeta2"], 40)
        assert got.free_values == (F(48, 7),)
        assert got.multiple == F(27, 112)

    def test_wrong_kill_count(self):
        rec = guessed_family_recurrence(FamilySpec("franel", d=5))
        a_init = family_terms(FamilySpec("franel", d=5), rec.order - 1)
        with pytest.raises(DegenerateSystem):
            solve_vanishing_init(rec, a_init, "zeta4", ["zeta2", "zeta6"], 30)

    def test_synthetic_fixture_recovers_planted_value(self):
        # compose the half-log recurrence with (S - 2): the kernel picks up a
        # solution growing like 2^n whose quotient limit vanishes, so limits
        # of the order-3 solutions live in span{1, log-limit}
        base = family_pair(FamilySpec("delannoy"))[0].recurrence
        c0, c1, c2 = base.coeffs
        composed = Recurrence([
            -2 * c0,
            c0.taylor_shift(1) - 2 * c1,
            c1.taylor_shift(1) - 2 * c2,
            c2.taylor_shift(1),
        ])
        a_init = [F(1), F(3), F(13)]  # dominant solution: the family itself
        got = solve_vanishing_init(composed, a_init, "ln2", ["one"], 40)
        # verify independently: the returned solution tends to multiple*ln2
        tab = SolutionTable(composed, InitialConditions(0, got.init_values))
        a = SolutionTable(composed, InitialConditions(0, a_init))
        q = quotients(a, tab, 260)[-1]
        with mpmath.workdps(60):
            want = mpmath.ln(2) * mpf(got.multiple.numerator) / mpf(got.multiple.denominator)
            gotv = mpf(q.numerator) / mpf(q.denominator)
            assert abs(gotv - want) < mpf(10) ** -35
        # a perturbed free value must not give a pure ln2 multiple
        bad = SolutionTable(composed, InitialConditions(
            0, [F(0), F(1), got.free_values[0] + 1]))
        qbad = quotients(a, bad, 260)[-1]
        with mpmath.workdps(60):
            ratio = (mpf(qbad.numerator) / mpf(qbad.denominator)) / mpmath.ln(2)
            nearest = mpmath.nint(ratio * 10**6) / 10**6
            assert abs(ratio - nearest) > mpf(10) ** -12
