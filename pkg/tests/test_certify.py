import math
import random
from fractions import Fraction

import pytest

from pstlab import (
    InvalidPolynomial,
    NonIntegerFrequency,
    NotAdmissible,
    NotIsolating,
    NumericUncertain,
    RatPolynomial,
    Spectrum,
    SymmetricSpectrum,
    amplitude_series,
    cosine_to_poly,
    count_roots_open_interval,
    detect_ese,
    evaluate,
    isolate_roots,
    multiplicity_at_minus_one,
    refine_root,
)

PI = math.pi


def F(a, b=1):
    return Fraction(a, b)


def series_for(*pos):
    return amplitude_series(SymmetricSpectrum(tuple(pos), True))


def sym_spectrum(*pos):
    vals = [0] + [v for p in pos for v in (p, -p)]
    return Spectrum(tuple(vals))


class TestCosineToPoly:
    def test_one_four_five_factored_form(self):
        # (4x^5 + 5x^4 - 5x^3 - 5x^2 + 5x + 4)/8 = (1/8)(x+1)^3 (4x^2 - 7x + 4)
        p = cosine_to_poly(series_for(1, 4, 5))
        assert p.coeffs == (F(1, 2), F(5, 8), F(-5, 8), F(-5, 8), F(5, 8), F(1, 2))

    def test_one_six_seven_factored_form(self):
        # (1/72)(x+1)^3 (120x^4 - 248x^3 + 174x^2 - 66x + 29)
        p = cosine_to_poly(series_for(1, 6, 7))
        assert p.coeffs == (F(29, 72), F(7, 24), F(7, 8), F(35, 24),
                            F(-7, 3), F(-35, 12), F(14, 9), F(5, 3))

    def test_constant_series(self):
        from pstlab import CosineSeries
        p = cosine_to_poly(CosineSeries(F(1), (), exact=True))
        assert p.coeffs == (F(1),)

    def test_value_at_one_is_one(self):
        rng = random.Random(11)
        for _ in range(15):
            pos = tuple(sorted(rng.sample(range(1, 30), rng.randint(1, 5))))
            p = cosine_to_poly(series_for(*pos))
            assert p(1) == 1

    def test_degree_is_max_frequency(self):
        assert cosine_to_poly(series_for(2, 5, 9)).degree == 9

    def test_non_integer_frequency(self):
        from pstlab import CosineSeries
        s = CosineSeries(0.5, ((1.5, 0.5),))
        with pytest.raises(NonIntegerFrequency):
            cosine_to_poly(s)

    def test_substitution_identity(self):
        s = series_for(3, 4, 5)
        p = cosine_to_poly(s)
        for t in (0.3, 1.1, 2.0, 2.9):
            x = Fraction(math.cos(t)).limit_denominator(10**12)
            assert float(p(x)) == pytest.approx(evaluate(s, t), abs=1e-9)


class TestMultiplicity:
    def test_one_four_five(self):
        assert multiplicity_at_minus_one(cosine_to_poly(series_for(1, 4, 5))) == 3

    def test_three_four_five(self):
        assert multiplicity_at_minus_one(cosine_to_poly(series_for(3, 4, 5))) == 3

    def test_constant(self):
        assert multiplicity_at_minus_one(RatPolynomial((F(1),))) == 0

    def test_pure_power(self):
        # (x+1)^3
        assert multiplicity_at_minus_one(RatPolynomial((1, 3, 3, 1))) == 3

    def test_all_families_at_least_three(self):
        for pos in [(1, 2, 3), (1, 4, 5), (5, 6, 7), (3, 6, 11), (1, 8, 9)]:
            p = cosine_to_poly(series_for(*pos))
            assert multiplicity_at_minus_one(p) >= 3

    def test_zero_poly_rejected(self):
        with pytest.raises(InvalidPolynomial):
            multiplicity_at_minus_one(RatPolynomial((0,)))


class TestCountRoots:
    def test_one_four_five_has_none(self):
        assert count_roots_open_interval(cosine_to_poly(series_for(1, 4, 5)), -1, 1) == 0

    def test_three_four_five_has_two(self):
        assert count_roots_open_interval(cosine_to_poly(series_for(3, 4, 5)), -1, 1) == 2

    def test_trivial_quadratic(self):
        p = RatPolynomial((F(-1, 4), F(0), F(1)))  # x^2 - 1/4
        assert count_roots_open_interval(p, -1, 1) == 2

    def test_open_interval_excludes_endpoints(self):
        p = RatPolynomial((F(-1, 4), F(0), F(1)))
        assert count_roots_open_interval(p, F(-1, 2), F(1, 2)) == 0
        assert count_roots_open_interval(p, F(-1, 2), F(3, 4)) == 1

    def test_multiple_roots_counted_once(self):
        # (x - 1/3)^2 (x + 1/2) = x^3 - x^2/6 - 2x/9 + 1/18
        p = RatPolynomial((F(1, 18), F(-2, 9), F(-1, 6), F(1)))
        assert count_roots_open_interval(p, -1, 1) == 2

    def test_zero_rejected(self):
        with pytest.raises(InvalidPolynomial):
            count_roots_open_interval(RatPolynomial((0,)), -1, 1)


class TestRefineRoot:
    def test_exact_dyadic_root(self):
        p = RatPolynomial((F(-1, 2), F(1)))  # x - 1/2
        tau = refine_root(p, (F(0), F(1)))
        assert tau == pytest.approx(PI / 3, abs=1e-12)

    def test_quadratic_root(self):
        p = RatPolynomial((F(-2), F(0), F(1)))  # x^2 - 2 has no root in (-1, 1)
        with pytest.raises(NotIsolating):
            refine_root(p, (F(-1), F(1)))

    def test_not_isolating_two_roots(self):
        p = RatPolynomial((F(-1, 4), F(0), F(1)))
        with pytest.raises(NotIsolating):
            refine_root(p, (F(-1), F(1)))

    def test_first_root_of_three_four_five(self):
        p = cosine_to_poly(series_for(3, 4, 5))
        ivs = isolate_roots(p, -1, 1)
        assert len(ivs) == 2
        taus = sorted(refine_root(p, iv) for iv in ivs)
        assert 0 < taus[0] < PI / 4
        assert taus[0] == pytest.approx(0.4621843246057565, abs=1e-11)
        assert taus[1] == pytest.approx(1.2459057590197462, abs=1e-11)


class TestIsolateRoots:
    def test_disjoint_and_complete(self):
        p = cosine_to_poly(series_for(5, 6, 7))
        ivs = isolate_roots(p, -1, 1)
        assert len(ivs) == 4
        for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]):
            assert b1 <= a2
        for iv in ivs:
            assert count_roots_open_interval(p, iv[0], iv[1]) == 1

    def test_dense_cluster_fallback(self):
        # roots at k/16, k = 1..9: forces tiny isolating intervals
        p = [1]
        for k in range(1, 10):
            root = F(k, 16)
            nxt = [F(0)] * (len(p) + 1)
            for i, c in enumerate(p):
                nxt[i] += -root * c
                nxt[i + 1] += c
            p = nxt
        poly = RatPolynomial(tuple(p))
        ivs = isolate_roots(poly, 0, 1)
        assert len(ivs) == 9
        taus = sorted(refine_root(poly, iv) for iv in ivs)
        for k, tau in zip(range(1, 10), sorted(taus, reverse=True)):
            assert math.cos(tau) == pytest.approx(k / 16, abs=1e-12)


class TestDetectEse:
    def test_equidistant_none(self):
        r = detect_ese(sym_spectrum(1, 2, 3))
        assert r.count == 0 and r.method == "exact-sturm"

    def test_three_four_five_two(self):
        r = detect_ese(sym_spectrum(3, 4, 5))
        assert r.count == 2
        assert [round(x.tau, 6) for x in r.roots] == [0.462184, 1.245906]
        for x in r.roots:
            assert 0 < x.lo < x.tau < x.hi < r.pst_time

    def test_five_six_seven_four(self):
        r = detect_ese(sym_spectrum(5, 6, 7))
        assert r.count == 4

    def test_not_admissible(self):
        with pytest.raises(NotAdmissible):
            detect_ese(Spectrum((0, 1, 2, 4, -1, -2, -4)))

    def test_scaling_invariance_exact(self):
        base = sym_spectrum(3, 4, 5)
        scaled = Spectrum(tuple(5 * v for v in base.values))
        r0, r1 = detect_ese(base), detect_ese(scaled)
        assert r0.count == r1.count
        for a, b in zip(r0.roots, r1.roots):
            assert b.tau == pytest.approx(a.tau / 5, rel=1e-12)
        assert r1.pst_time == pytest.approx(r0.pst_time / 5, rel=1e-12)

    def test_translation_invariance_exact(self):
        base = sym_spectrum(3, 4, 5)
        moved = Spectrum(tuple(v + 4 for v in base.values))
        r0, r1 = detect_ese(base), detect_ese(moved)
        assert r0.count == r1.count
        for a, b in zip(r0.roots, r1.roots):
            assert b.tau == pytest.approx(a.tau, rel=1e-12)

    def test_numeric_matches_exact(self):
        rng = random.Random(12)
        checked = 0
        while checked < 25:
            a = rng.randrange(1, 16, 2)
            b = a + rng.randrange(1, 12, 2)
            c = b + rng.randrange(1, 12, 2)
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            checked += 1
            spec = sym_spectrum(a, b, c)
            exact = detect_ese(spec, method="exact")
            numeric = detect_ese(spec, method="numeric")
            assert exact.count == numeric.count, (a, b, c)
            for x, y in zip(exact.roots, numeric.roots):
                assert y.tau == pytest.approx(x.tau, abs=1e-8)

    def test_numeric_on_irrational_scaling(self):
        c = math.sqrt(2)
        spec = Spectrum(tuple(c * v for v in (-5, -4, -3, 0, 3, 4, 5)))
        r = detect_ese(spec)
        # normalization recovers the integer form, so this is still exact
        assert r.method == "exact-sturm"
        assert r.count == 2
        assert r.pst_time == pytest.approx(PI / c, rel=1e-9)
        assert r.roots[0].tau == pytest.approx(0.4621843246057565 / c, rel=1e-6)

    def test_even_order_symmetric(self):
        # {±1, ±3}: A(t) = (3 cos t + cos 3t)/4, first transfer at pi/2
        spec = Spectrum((1, 3, -1, -3))
        r = detect_ese(spec)
        assert r.method == "exact-sturm"
        assert r.pst_time == pytest.approx(PI / 2)
        # 3 cos t + cos 3t = 0 at t = pi/2 only; no interior root
        assert r.count == 0

    def test_asymmetric_centered_counts_zero(self):
        # admissible but not symmetric after centering: complex amplitude
        spec = Spectrum((0, 1, 2, 5))
        r = detect_ese(spec)
        assert r.method == "numeric-scan"
        assert r.count == 0

    def test_degree_bound(self):
        rng = random.Random(13)
        for _ in range(10):
            a = rng.randrange(1, 10, 2)
            b = a + rng.randrange(1, 10, 2)
            c = b + rng.randrange(1, 10, 2)
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            p = cosine_to_poly(series_for(a, b, c))
            count = count_roots_open_interval(p, -1, 1)
            assert count <= p.degree - multiplicity_at_minus_one(p)

    def test_report_json_schema(self):
        d = detect_ese(sym_spectrum(3, 4, 5)).to_json_dict()
        assert set(d) == {"spectrum", "T", "method", "count", "roots"}
        assert d["count"] == 2 and len(d["roots"]) == 2
        assert set(d["roots"][0]) == {"lo", "hi", "tau"}
