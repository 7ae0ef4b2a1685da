import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from halfline.errors import InvalidInputError
from halfline.measures import (
    LatticeMeasure,
    convolve,
    is_nondegenerate,
    linear_combine,
    power,
    restrict_nonpos,
    restrict_pos,
)

from strategies import lattice_measures

F = Fraction
D = LatticeMeasure.dirac


def simple_walk():
    return LatticeMeasure.from_sites({-1: F(1, 2), 1: F(1, 2)})


class TestConvolve:
    def test_dirac_is_identity(self):
        m = LatticeMeasure.from_sites({-2: F(1, 4), 0: F(1, 2), 3: F(-1, 3)})
        assert convolve(D(0), m) == m
        assert convolve(m, D(0)) == m

    def test_symmetric_two_point_square(self):
        sq = convolve(simple_walk(), simple_walk())
        assert sq == LatticeMeasure.from_sites({-2: F(1, 4), 0: F(1, 2), 2: F(1, 4)})

    def test_translation_additivity(self):
        assert convolve(D(1), D(2)) == D(3)

    def test_step_mismatch_rejected(self):
        a = LatticeMeasure.from_sites({1: 1}, step=1.0)
        b = LatticeMeasure.from_sites({1: 1}, step=0.5)
        with pytest.raises(InvalidInputError):
            convolve(a, b)

    def test_zero_absorbs(self):
        z = LatticeMeasure.zero()
        assert convolve(z, simple_walk()).is_zero
        # zero is lattice-agnostic
        assert convolve(LatticeMeasure.zero(step=0.25), simple_walk()).is_zero


class TestPower:
    def test_power_zero_is_dirac(self):
        assert power(simple_walk(), 0) == D(0)
        assert power(LatticeMeasure.zero(), 0) == D(0)

    def test_power_two_matches_convolve(self):
        assert power(simple_walk(), 2) == convolve(simple_walk(), simple_walk())

    def test_power_four_binomial(self):
        # oracle: repeated convolution
        m = simple_walk()
        expected = m
        for _ in range(3):
            expected = convolve(expected, m)
        got = power(m, 4)
        assert got == expected
        # frozen values: binomial(4, k) / 16 at sites -4, -2, 0, 2, 4
        assert got == LatticeMeasure.from_sites(
            {-4: F(1, 16), -2: F(4, 16), 0: F(6, 16), 2: F(4, 16), 4: F(1, 16)}
        )

    @given(lattice_measures())
    def test_power_matches_repeated_convolve(self, m):
        expected = D(0, 1, m.step)
        for n in range(7):
            assert power(m, n) == expected
            expected = convolve(expected, m)

    def test_negative_exponent_rejected(self):
        with pytest.raises(InvalidInputError):
            power(simple_walk(), -1)


class TestRestrict:
    def test_positive_site_only(self):
        m = LatticeMeasure.from_sites({-2: F(1, 4), 0: F(1, 2), 2: F(1, 4)})
        assert restrict_pos(m) == LatticeMeasure.from_sites({2: F(1, 4)})

    def test_atom_at_zero_goes_nonpositive(self):
        m = LatticeMeasure.from_sites({-2: F(1, 4), 0: F(1, 2), 2: F(1, 4)})
        assert restrict_nonpos(m) == LatticeMeasure.from_sites({-2: F(1, 4), 0: F(1, 2)})

    def test_no_positive_support(self):
        assert restrict_pos(D(-1)).is_zero

    @given(lattice_measures())
    def test_split_reconstructs(self, m):
        assert restrict_pos(m) + restrict_nonpos(m) == m


class TestLinearCombine:
    def test_cancellation(self):
        m = LatticeMeasure.from_sites({-1: F(2, 3), 2: F(1, 5)})
        assert linear_combine([(1, m), (-1, m)]).is_zero

    def test_eta_with_nu_equal_mu(self):
        mu = simple_walk()
        eta = linear_combine(
            [(1, mu.positive_part()), (1, mu.nonpositive_part()), (-1, mu.nonpositive_part())]
        )
        assert eta == mu.positive_part()

    def test_scalar_linearity(self):
        assert linear_combine([(F(1, 2), D(0)), (F(1, 2), D(0))]) == D(0)

    def test_step_mismatch_rejected(self):
        a = LatticeMeasure.from_sites({1: 1}, step=1.0)
        b = LatticeMeasure.from_sites({1: 1}, step=0.5)
        with pytest.raises(InvalidInputError):
            linear_combine([(1, a), (1, b)])


class TestNondegenerate:
    def test_mass_at_plus_one(self):
        assert is_nondegenerate(simple_walk())

    def test_negative_dirac(self):
        assert not is_nondegenerate(D(-1))

    def test_atom_at_zero_is_degenerate(self):
        assert not is_nondegenerate(D(0))


class TestAlgebraProperties:
    @given(lattice_measures(), lattice_measures())
    def test_commutative(self, a, b):
        assert convolve(a, b) == convolve(b, a)

    @settings(max_examples=40)
    @given(lattice_measures(lo=-3, hi=3), lattice_measures(lo=-3, hi=3), lattice_measures(lo=-3, hi=3))
    def test_associative(self, a, b, c):
        assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))

    @given(lattice_measures(), lattice_measures(), lattice_measures())
    def test_bilinear(self, a, b, c):
        lhs = convolve(a, b + c)
        assert lhs == convolve(a, b) + convolve(a, c)
        s = F(3, 7)
        assert convolve(a.scale(s), b) == convolve(a, b).scale(s)

    @given(lattice_measures(), lattice_measures())
    def test_mass_multiplicative(self, a, b):
        assert convolve(a, b).total_mass() == a.total_mass() * b.total_mass()

    @given(lattice_measures(allow_zero=False), lattice_measures(allow_zero=False))
    def test_support_in_minkowski_sum(self, a, b):
        c = convolve(a, b)
        if not c.is_zero:
            assert c.min_site >= a.min_site + b.min_site
            assert c.max_site <= a.max_site + b.max_site

    @given(lattice_measures())
    def test_total_variation_dominates_mass(self, m):
        assert m.total_variation() >= abs(m.total_mass())

    @given(lattice_measures())
    def test_canonical_trim(self, m):
        if not m.is_zero:
            assert m.coeffs[0] != 0 and m.coeffs[-1] != 0
        else:
            assert m.coeffs == () and m.min_index == 0


class TestJson:
    def test_round_trip_exact(self):
        m = LatticeMeasure.from_sites({-3: F(1, 3), 0: F(-2, 7), 5: F(22, 9)}, step=0.5)
        text = json.dumps(m.to_json_obj())
        back = LatticeMeasure.from_json_obj(json.loads(text, parse_float=Fraction))
        assert back == m

    @given(lattice_measures())
    def test_round_trip_random(self, m):
        text = json.dumps(m.to_json_obj())
        back = LatticeMeasure.from_json_obj(json.loads(text, parse_float=Fraction))
        assert back == m

    def test_bare_decimal_parses_exactly(self):
        obj = json.loads('{"step": 1.0, "min_index": 0, "coeffs": [0.1, "9/10"]}',
                         parse_float=Fraction)
        m = LatticeMeasure.from_json_obj(obj)
        assert m.coeff(0) == F(1, 10)
        assert m.coeff(1) == F(9, 10)
        assert m.total_mass() == 1

    def test_rational_strings(self):
        m = LatticeMeasure.from_json_obj(
            {"step": 1, "min_index": -1, "coeffs": ["1/2", "0", "1/2"]}
        )
        assert m == simple_walk()

    def test_missing_field_rejected(self):
        with pytest.raises(InvalidInputError, match="coeffs"):
            LatticeMeasure.from_json_obj({"step": 1, "min_index": 0})

    def test_bad_coefficient_rejected(self):
        with pytest.raises(InvalidInputError, match="coeffs"):
            LatticeMeasure.from_json_obj({"step": 1, "min_index": 0, "coeffs": ["x"]})


class TestRecordSemantics:
    def test_zero_measures_equal_across_lattices(self):
        assert LatticeMeasure.zero(1.0) == LatticeMeasure.zero(0.5)

    def test_invalid_step_rejected(self):
        with pytest.raises(InvalidInputError):
            LatticeMeasure(step=0.0, min_index=0, coeffs=(1,))

    def test_coeff_lookup(self):
        m = simple_walk()
        assert m.coeff(-1) == F(1, 2)
        assert m.coeff(0) == 0
        assert m.coeff(99) == 0
