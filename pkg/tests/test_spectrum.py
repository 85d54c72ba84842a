import math
import random
from fractions import Fraction

import pytest

from pstlab import (
    NonSimpleSpectrum,
    NotSymmetric,
    Spectrum,
    normalize,
    parse_spectrum,
    to_symmetric,
    validate_pst,
)


def spec(*vals):
    return Spectrum(tuple(vals))


class TestSpectrumType:
    def test_sorted_and_flagged(self):
        s = spec(3, -3, 0, 1, -1, 2, -2)
        assert s.values == (-3, -2, -1, 0, 1, 2, 3)
        assert s.is_integer and s.is_symmetric

    def test_integral_floats_coerced(self):
        s = spec(0.0, 1.0, 2.0)
        assert s.values == (0, 1, 2)
        assert s.is_integer

    def test_duplicates_rejected(self):
        with pytest.raises(NonSimpleSpectrum):
            spec(1, 1, 2)
        with pytest.raises(NonSimpleSpectrum):
            spec(0.5, 0.5 + 1e-14, 2.0)

    def test_too_short(self):
        with pytest.raises(ValueError):
            spec(1)

    def test_not_symmetric_flag(self):
        assert not spec(-1, 0, 2).is_symmetric
        assert spec(-1.5, 0, 1.5).is_symmetric


class TestValidatePst:
    def test_equidistant(self):
        info = validate_pst(spec(0, 1, 2, 3, -1, -2, -3))
        assert info.admissible
        assert info.first_time == pytest.approx(math.pi, abs=0)
        assert info.gap_multipliers == (1, 1, 1, 1, 1, 1)

    def test_mixed_parity_rejected(self):
        info = validate_pst(spec(0, 1, 2, 4, -1, -2, -4))
        assert not info.admissible

    def test_even_gaps_halve_the_time(self):
        info = validate_pst(spec(0, 2, 4, 6, -2, -4, -6))
        assert info.admissible
        assert info.first_time == pytest.approx(math.pi / 2)

    def test_real_commensurable(self):
        c = 0.7310562341
        vals = tuple(c * v for v in (-5, -4, -3, 0, 3, 4, 5))
        info = validate_pst(spec(*vals))
        assert info.admissible
        assert info.first_time == pytest.approx(math.pi / c, rel=1e-9)

    def test_incommensurable_not_admissible(self):
        info = validate_pst(spec(0.0, 1.0, 1.0 + math.sqrt(2)))
        assert not info.admissible

    def test_scaling_translation_property(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(3, 9)
            vals = sorted(rng.sample(range(-30, 31), n))
            base = validate_pst(spec(*vals))
            c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            lam = Fraction(rng.randint(-12, 12), rng.randint(1, 7))
            moved = spec(*[c * v + lam for v in vals])
            info = validate_pst(moved)
            assert info.admissible == base.admissible
            if base.admissible:
                assert info.first_time == pytest.approx(base.first_time / float(c), rel=1e-12)

    def test_coprime_odd_gap_symmetric_has_t_pi(self):
        rng = random.Random(11)
        found = 0
        while found < 30:
            a = rng.randrange(1, 20, 2)
            b = a + rng.randrange(1, 20, 2)
            c = b + rng.randrange(1, 20, 2)
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            found += 1
            info = validate_pst(spec(0, a, b, c, -a, -b, -c))
            assert info.admissible
            assert info.first_time == math.pi / 1


class TestNormalize:
    def test_shifted_pair(self):
        out, scale, shift = normalize(spec(3, 5, 7))
        assert out.values == (-1, 0, 1)
        assert scale == 2 and shift == 5

    def test_identity(self):
        out, scale, shift = normalize(spec(0, 1, 2, 3, -1, -2, -3))
        assert out.values == (-3, -2, -1, 0, 1, 2, 3)
        assert scale == 1 and shift == 0

    def test_common_factor(self):
        out, scale, shift = normalize(spec(0, 3, 6, 9, -3, -6, -9))
        assert out.values == (-3, -2, -1, 0, 1, 2, 3)
        assert scale == 3 and shift == 0

    def test_fractional_mean(self):
        out, scale, shift = normalize(spec(0, 1, 3))
        assert out.values == (-4, -1, 5)
        assert scale == Fraction(1, 3) and shift == Fraction(4, 3)

    def test_irrational_scale_recovered(self):
        c = math.sqrt(2)
        out, scale, shift = normalize(spec(*(c * v for v in (-5, -4, -3, 0, 3, 4, 5))))
        assert out.values == (-5, -4, -3, 0, 3, 4, 5)
        assert scale == pytest.approx(c, rel=1e-12)
        assert shift == pytest.approx(0.0, abs=1e-12)

    def test_incommensurable_returns_centered(self):
        vals = (0.0, 1.0, 1.0 + math.pi)
        out, scale, shift = normalize(spec(*vals))
        assert scale == 1.0
        assert shift == pytest.approx(sum(vals) / 3)
        assert sum(out.values) == pytest.approx(0.0, abs=1e-12)

    def test_roundtrip_identity(self):
        rng = random.Random(3)
        for _ in range(25):
            vals = sorted(rng.sample(range(-40, 40), rng.randint(2, 9)))
            s = spec(*vals)
            out, scale, shift = normalize(s)
            back = [scale * v + shift for v in out.values]
            assert all(b == v for b, v in zip(back, vals))


class TestToSymmetric:
    def test_with_zero(self):
        sym = to_symmetric(spec(0, 1, 4, 5, -1, -4, -5))
        assert sym.positive_part == (1, 4, 5)
        assert sym.includes_zero

    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetric):
            to_symmetric(spec(-1, 0, 2))

    def test_even_order(self):
        sym = to_symmetric(spec(1, 3, -1, -3))
        assert sym.positive_part == (1, 3)
        assert not sym.includes_zero

    def test_full_expansion_roundtrip(self):
        s = spec(0, 2, 5, -2, -5)
        assert to_symmetric(s).to_spectrum().values == s.values


class TestParse:
    def test_plus_minus_sugar(self):
        assert parse_spectrum("0,±1,±4,±5").values == (-5, -4, -1, 0, 1, 4, 5)

    def test_ascii_spelling(self):
        assert parse_spectrum("0,+-1,+-2,+-3").values == (-3, -2, -1, 0, 1, 2, 3)

    def test_json_array(self):
        assert parse_spectrum("[3, 5, 7]").values == (3, 5, 7)

    def test_floats(self):
        assert parse_spectrum("0,±1.5").values == (-1.5, 0, 1.5)

    def test_bad_plusminus(self):
        with pytest.raises(ValueError):
            parse_spectrum("±-3,0,3")
