import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from seqlim.arith import BigFloat
from seqlim.recognize import (
    CATALOG_NAMES,
    REFERENCE_50,
    DependentRows,
    PrecisionTooLow,
    UnknownConstant,
    bernoulli,
    eval_constant,
    integer_relation,
    lll_reduce,
    log_rational,
    recognize_constant,
)

F = Fraction

# Pinned by an independent arbitrary-precision oracle (truncated, 49 places).
ORACLE_50 = {
    "one": "1.0000000000000000000000000000000000000000000000000",
    "ln2": "0.6931471805599453094172321214581765680755001343602",
    "pi": "3.1415926535897932384626433832795028841971693993751",
    "zeta2": "1.6449340668482264364724151666460251892189499012067",
    "zeta3": "1.2020569031595942853997381615114499907649862923404",
    "zeta4": "1.0823232337111381915160036965411679027747509519187",
    "zeta6": "1.0173430619844491397145179297909205279018174900328",
    "zeta8": "1.0040773561979443393786852385086524652589607906498",
    "catalan": "0.9159655941772190150546035149323841107741493742816",
    "L3": "0.7813024128964862968671874296240923563651343365452",
}


class TestConstants:
    def test_module_references_match_oracle(self):
        assert REFERENCE_50 == ORACLE_50

    @pytest.mark.parametrize("name", sorted(ORACLE_50))
    def test_evaluator_against_oracle(self, name):
        got = eval_constant(name, 60).str_digits(49)
        assert got == ORACLE_50[name]

    def test_unknown_constant(self):
        with pytest.raises(UnknownConstant):
            eval_constant("feigenbaum", 30)

    def test_doubling_consistency(self):
        for name in CATALOG_NAMES:
            lo = eval_constant(name, 40)
            hi = eval_constant(name, 80)
            assert abs((lo - hi).val) < mpf(10) ** -35

    def test_zeta2_is_pi_squared_over_six(self):
        z2 = eval_constant("zeta2", 60)
        pi = eval_constant("pi", 60)
        assert abs((z2 - pi * pi * F(1, 6)).val) < mpf(10) ** -55

    def test_bernoulli_values(self):
        assert [bernoulli(k) for k in range(7)] == [
            1, F(-1, 2), F(1, 6), 0, F(-1, 30), 0, F(1, 42)]

    def test_log_rational(self):
        with mpmath.workdps(60):
            want = mpmath.ln(mpf(3) / 2)
            got = log_rational(F(3, 2), 50)
            assert abs(got.val - want) < mpf(10) ** -48


def _rational_gram_schmidt(rows):
    """Independent exact Gram-Schmidt for checking the LLL conditions."""
    star = []
    mu = []
    for i, row in enumerate(rows):
        v = [F(x) for x in row]
        mu.append([])
        for j in range(i):
            denom = sum(x * x for x in star[j])
            coeff = F(sum(F(a) * b for a, b in zip(row, star[j])), 1) / denom
            mu[i].append(coeff)
            v = [x - coeff * y for x, y in zip(v, star[j])]
        star.append(v)
    return star, mu


def _assert_lll_reduced(rows, delta=F(3, 4)):
    star, mu = _rational_gram_schmidt(rows)
    for i in range(len(rows)):
        for j in range(i):
            assert abs(mu[i][j]) <= F(1, 2), "size reduction violated"
    for k in range(1, len(rows)):
        lhs = sum(x * x for x in star[k]) \
            + mu[k][k - 1] ** 2 * sum(x * x for x in star[k - 1])
        assert lhs >= delta * sum(x * x for x in star[k - 1]), "Lovasz violated"


class TestLLL:
    def test_identity_fixed(self):
        assert lll_reduce([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]

    def test_small_relation_lattice(self):
        reduced = lll_reduce([[1, 0, 1000], [0, 1, 999]])
        # brute-force shortest vector on this instance: c1 r1 + c2 r2
        best = None
        for c1 in range(-6, 7):
            for c2 in range(-6, 7):
                if c1 == c2 == 0:
                    continue
                v = (c1, c2, 1000 * c1 + 999 * c2)
                norm = sum(x * x for x in v)
                if best is None or norm < best[0]:
                    best = (norm, v)
        assert best[1] in ((1, -1, 1), (-1, 1, -1))
        assert any(tuple(r) in ((1, -1, 1), (-1, 1, -1)) for r in reduced)
        _assert_lll_reduced(reduced)

    def test_unimodular_scramble_bound(self):
        rng = random.Random(5)
        basis = [[int(i == j) for j in range(5)] for i in range(5)]
        for _ in range(40):  # random unimodular row operations
            i, j = rng.sample(range(5), 2)
            c = rng.randint(-6, 6)
            basis[i] = [a + c * b for a, b in zip(basis[i], basis[j])]
        reduced = lll_reduce(basis)
        _assert_lll_reduced(reduced)
        bound = 2 ** ((5 - 1) / 2)  # LLL guarantee for the Z^5 lattice
        for row in reduced:
            assert sum(x * x for x in row) ** 0.5 <= bound + 1e-9

    def test_conditions_on_scaled_column_lattice(self):
        v = [eval_constant("ln2", 40), eval_constant("pi", 40)]
        scale = 10 ** 30
        rows = [[1, 0, round(v[0].to_fraction() * scale)],
                [0, 1, round(v[1].to_fraction() * scale)]]
        _assert_lll_reduced(lll_reduce(rows))

    def test_dependent_rows(self):
        with pytest.raises(DependentRows):
            lll_reduce([[1, 2], [2, 4]])

    def test_transform_recorded(self):
        rows = [[7, 3], [5, 2]]
        res = lll_reduce(rows, want_transform=True)
        for out_row, t_row in zip(res.basis, res.transform):
            recomposed = [sum(t * rows[i][c] for i, t in enumerate(t_row))
                          for c in range(2)]
            assert recomposed == out_row
        det = res.transform[0][0] * res.transform[1][1] \
            - res.transform[0][1] * res.transform[1][0]
        assert det in (1, -1)


class TestIntegerRelation:
    def test_half_log_two(self):
        half = eval_constant("ln2", 50) * F(1, 2)
        rel = integer_relation([half, eval_constant("ln2", 50)], 100, 50)
        assert rel in ([2, -1], [-2, 1])

    def test_trivial_half(self):
        rel = integer_relation([BigFloat(1, 40), BigFloat(F(1, 2), 40)], 100, 40)
        assert rel in ([1, -2], [-1, 2])

    def test_zeta3_over_six(self):
        v = eval_constant("zeta3", 100) * F(1, 6)
        rel = integer_relation([v, eval_constant("zeta3", 100)], 100, 100)
        assert rel in ([6, -1], [-6, 1])

    def test_precision_floor(self):
        vals = [BigFloat(1, 25), BigFloat(2, 25), BigFloat(3, 25)]
        with pytest.raises(PrecisionTooLow):
            integer_relation(vals, 10, 25)

    def test_no_relation_for_independent_values(self):
        vals = [eval_constant("ln2", 60), eval_constant("pi", 60)]
        assert integer_relation(vals, 10**6, 60) is None


class TestRecognizeConstant:
    def test_half_log_two(self):
        v = eval_constant("ln2", 60) * F(1, 2)
        form = recognize_constant(v, ["ln2"])
        assert dict(form.terms) == {"ln2": F(1, 2)}
        assert form.residual.val < mpf(10) ** -45

    def test_quarter_zeta2(self):
        v = eval_constant("zeta2", 60) * F(1, 4)
        form = recognize_constant(v, ["zeta2"])
        assert dict(form.terms) == {"zeta2": F(1, 4)}

    def test_none_for_shuffled_basis(self):
        v = eval_constant("catalan", 60) * F(7, 3)
        assert recognize_constant(v, ["zeta3"]) is None

    def test_two_element_basis(self):
        v = eval_constant("zeta2", 90) * F(4, 3) + eval_constant("L3", 90) * F(-5, 2)
        form = recognize_constant(v, ["zeta2", "L3"])
        assert dict(form.terms) == {"zeta2": F(4, 3), "L3": F(-5, 2)}

    def test_random_rational_multiples(self):
        rng = random.Random(1234)
        for _ in range(12):
            name = rng.choice(CATALOG_NAMES)
            q = F(rng.randint(-100, 100) or 1, rng.randint(1, 100))
            v = eval_constant(name, 60) * q
            form = recognize_constant(v, [name])
            assert form is not None and dict(form.terms)[name] == q
