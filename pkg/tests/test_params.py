from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik.params import (
    ParamKS,
    PreconditionError,
    c_of,
    dominant_reduce,
    eps_from_c,
    eps_of,
    h_of,
    hecke_params,
    integral_difference,
    is_faithful,
    is_faithful_h,
    is_spherical,
    param_classes,
    sl_act,
    star_params,
)
from cherednik.scalars import Scalar

from conftest import charges

K = Scalar.k(2)


def _perm_len(w) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


class TestCoordinates:
    def test_eps_two_components(self):
        p = ParamKS.symbolic((1, 0))
        assert eps_of(p, 1) == K

    def test_eps_constant_charge(self):
        p = ParamKS.symbolic((3, 3, 3))
        assert all(eps_of(p, i).is_zero() for i in (1, 2))

    def test_c0_is_minus_kappa(self):
        for s in [(0,), (1, 0), (2, -1, 3)]:
            p = ParamKS.symbolic(s)
            assert c_of(p)[0] == -p.k()

    def test_c1_constant_charge(self):
        assert c_of(ParamKS.symbolic((4, 4)))[1] == Fraction(-1, 2)

    @given(st.integers(2, 4).flatmap(lambda ell: charges(ell)))
    def test_eps_reconstructed_from_c(self, s):
        p = ParamKS.symbolic(s)
        eps = eps_from_c(p, c_of(p))
        assert list(eps[1:]) == [eps_of(p, i) for i in range(1, p.ell)]

    def test_eps_index_range(self):
        with pytest.raises(IndexError):
            eps_of(ParamKS.symbolic((1, 0)), 2)


class TestSlAction:
    def test_identity(self):
        p = ParamKS.symbolic((-1, 0), 2)
        assert sl_act((0, 1), p) == p

    def test_swap(self):
        assert sl_act((1, 0), ParamKS.symbolic((-1, 0), 2)).s == (0, -1)

    @given(st.permutations(range(3)), st.permutations(range(3)), charges(3))
    def test_composition(self, a, b, s):
        p = ParamKS.symbolic(s)
        ab = tuple(a[b[i]] for i in range(3))
        assert sl_act(a, sl_act(b, p)) == sl_act(ab, p)


class TestSpherical:
    def test_b2_vector(self):
        res = is_spherical(ParamKS.symbolic((-1, 0), 2))
        assert not res.spherical
        assert res.family == "hyperplane"
        assert (res.certificate["u"], res.certificate["k"], res.certificate["m"]) == (1, 1, 1)
        assert res.certificate["k_hat"] == 1
        assert str(res) == "aspherical u=1 k=1 m=1"

    def test_kappa_family(self):
        res = is_spherical(ParamKS(2, 2, Fraction(1, 2), (5, 0)))
        assert res.family == "kappa" and res.certificate == {"a": 1, "b": 2}

    def test_spherical(self):
        assert is_spherical(ParamKS.symbolic((5, 0), 2)).spherical

    def test_kappa_zero_rejected(self):
        with pytest.raises(PreconditionError):
            is_spherical(ParamKS(2, 2, 0, (0, 0)))

    @given(
        st.integers(1, 3).flatmap(lambda ell: st.tuples(st.just(ell), charges(ell))),
        st.integers(1, 4),
        st.sampled_from([None, Fraction(1, 2), Fraction(2, 3)]),
    )
    def test_orbit_stable(self, ell_s, n, kappa):
        ell, s = ell_s
        p = ParamKS(ell, n, kappa, s)
        base = is_spherical(p).spherical
        for sigma in itertools.permutations(range(ell)):
            assert is_spherical(sl_act(sigma, p)).spherical == base


class TestFaithful:
    def test_examples(self):
        assert is_faithful(ParamKS.symbolic((1, 0)))
        assert not is_faithful(ParamKS.symbolic((1, 1)))
        assert not is_faithful(ParamKS(2, 1, Fraction(1, 2), (1, 0)))

    @given(charges(2, -2, 2), st.sampled_from([None, Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)]))
    def test_h_form_agrees(self, s, kappa):
        p = ParamKS(2, 1, kappa, s)
        assert is_faithful(p) == is_faithful_h(h_of(p), (2, 2))


class TestIntegralDifference:
    def test_reflexive(self):
        p = ParamKS.symbolic((1, 3))
        assert integral_difference(p, p)

    def test_kappa_shift(self):
        p = ParamKS(2, 1, Fraction(1, 3), (0, 0))
        q = ParamKS(2, 1, Fraction(7, 3), (0, 0))
        assert integral_difference(p, q)

    def test_symbolic_negative(self):
        assert not integral_difference(ParamKS.symbolic((0, 0)), ParamKS.symbolic((0, 1)))


class TestClasses:
    def test_all_equal(self):
        assert param_classes(Scalar.k(3), [(0, 0)] * 3)[0] == [[1, 2, 3]]

    def test_shift_by_inverse_kappa(self):
        classes, info = param_classes(Scalar.k(2), [(0, 0), (0, 1)])
        assert classes == [[1, 2]] and info[0]["shifts"][2] in (0, -0)

    def test_half_inverse_kappa(self):
        half_inv = Scalar.k(2, power=-1) * Fraction(1, 2)
        assert param_classes(Scalar.k(2), [(0, 0), (half_inv, 0)])[0] == [[1], [2]]

    def test_rational_kappa_rejected(self):
        with pytest.raises(PreconditionError):
            param_classes(Scalar.k(2, Fraction(1, 2)), [(0, 0), (0, 0)])


class TestDominantReduce:
    def test_already_dominant(self):
        assert dominant_reduce((2, 1, 3)) == ((0, 1, 2), (2, 1, 3))

    def test_example(self):
        w, wm = dominant_reduce((1, 3, 2))
        assert wm == (2, 1, 3)
        # minimal among all permutations reaching a dominant vector
        best = min(
            _perm_len(v)
            for v in itertools.permutations(range(3))
            if (lambda x: x[2] >= x[0] >= x[1])([(1, 3, 2)[v.index(j)] for j in range(3)])
        )
        assert _perm_len(w) == best

    def test_ties_not_swapped(self):
        w, wm = dominant_reduce((1, 1, 5))
        assert w == (0, 1, 2) and wm == (1, 1, 5)


class TestStarParams:
    def test_zero(self):
        assert star_params((0, 0, 0)) == (0, 0, 0)

    def test_example(self):
        assert star_params((7, 5, 4)) == (-5, -7, -4)

    @given(st.integers(1, 5).flatmap(lambda ell: charges(ell, -9, 9)))
    def test_involution(self, s):
        assert star_params(star_params(s)) == s

    def test_hecke_record(self):
        rec = hecke_params(ParamKS.symbolic((1, 0)))
        assert rec["degenerate"] is False and rec["sigma_charge"] == ["-1", "0"]
        assert hecke_params(ParamKS(2, 1, 1, (1, 0)))["degenerate"] is True


class TestConfig:
    def test_round_trip(self):
        p = ParamKS(2, 3, Fraction(2, 3), (1, 0), (0, 1))
        assert ParamKS.from_config(p.to_config()) == p

    def test_bad_length(self):
        with pytest.raises(ValueError):
            ParamKS(2, 1, None, (1, 2, 3))
