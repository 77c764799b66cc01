from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given

from cherednik.combinatorics import Multipartition, enumerate_multipartitions, residue_multiset
from cherednik.kgroup import (
    RecoveryError,
    dagger_family,
    dagger_independence,
    ind_matrix,
    joint_injectivity,
    order_prime,
    order_sm,
    order_sstar,
    recover_from_removals,
    removal_set,
    res_matrix,
)
from cherednik.params import ParamKS, dominant_reduce, is_spherical, star_params

from conftest import multipartitions

M = Multipartition.parse


def _column(mat, lam):
    j = list(mat.cols).index(lam)
    return {mat.rows[i]: row[j] for i, row in enumerate(mat.dense()) if row[j]}


class TestResInd:
    def test_one_box(self):
        assert _column(res_matrix(1, 2), M("[[1],[]]")) == {M("[[],[]]"): 1}

    def test_two_boxes(self):
        assert _column(res_matrix(2, 2), M("[[1],[1]]")) == {M("[[1],[]]"): 1, M("[[],[1]]"): 1}

    def test_ind_is_transpose(self):
        R, I = res_matrix(3, 2), ind_matrix(2, 2)
        assert [list(r) for r in zip(*R.dense())] == I.dense()

    @pytest.mark.parametrize("n,ell", [(n, ell) for n in range(2, 6) for ell in (1, 2, 3)])
    def test_commutator(self, n, ell):
        comm = res_matrix(n + 1, ell) @ ind_matrix(n, ell) - ind_matrix(n - 1, ell) @ res_matrix(n, ell)
        assert comm.is_scalar(ell)

    def test_csv(self):
        text = res_matrix(1, 2).to_csv().splitlines()
        assert text[0] == ',"[[],[1]]","[[1],[]]"'
        assert text[1] == '"[[],[]]",1,1'


class TestRecovery:
    def test_example(self):
        assert recover_from_removals({M("[[1],[]]"), M("[[],[1]]")}) == M("[[1],[1]]")

    def test_empty(self):
        with pytest.raises(RecoveryError):
            recover_from_removals(set())

    @pytest.mark.parametrize("n,ell", [(n, ell) for n in range(3, 6) for ell in (1, 2, 3) if (n, ell) != (5, 3)])
    def test_round_trip(self, n, ell):
        for lam in enumerate_multipartitions(n, ell):
            assert recover_from_removals(removal_set(lam)) == lam

    @pytest.mark.parametrize("ell", [2, 3])
    def test_size_two_is_ambiguous(self, ell):
        # ((2),0..) and ((1,1),0..) both have the single removal ((1),0..)
        lam = Multipartition([(2,)] + [()] * (ell - 1))
        with pytest.raises(RecoveryError):
            recover_from_removals(removal_set(lam))


class TestOrders:
    def test_strict(self):
        lam = M("[[1],[1]]")
        assert not order_sm(lam, lam, (1, 0), (0, 0))
        assert not order_sstar(lam, lam, (-1, 0))
        assert not order_prime(lam, lam, (0, 1), (1, 0))

    def test_sstar_residues_differ(self):
        assert not order_sstar(M("[[1],[1]]"), M("[[],[1,1]]"), (1, 0))

    @given(multipartitions(level=3, max_size=4))
    def test_residue_transpose(self, lam):
        s = (3, -1, 2)
        neg = {-k: v for k, v in residue_multiset(lam.star(), star_params(s)).items()}
        assert residue_multiset(lam, s) == neg

    @pytest.mark.parametrize("trial", range(6))
    def test_implication(self, trial):
        rng = random.Random(trial)
        ell = rng.choice([2, 3])
        s = tuple(rng.randint(-3, 3) for _ in range(ell))
        _, m = dominant_reduce([rng.randint(-2, 2) for _ in range(ell)])
        labels = enumerate_multipartitions(rng.randint(2, 4), ell)
        s_star = star_params(s)
        for lam, mu in product(labels, repeat=2):
            if order_sstar(lam.star(), mu.star(), s_star):
                assert order_sm(lam, mu, s, m)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            order_sm(M("[[1],[]]"), M("[[1],[1]]"), (0, 0), (0, 0))


class TestInjectivity:
    def test_single_box(self):
        for ell in (1, 2, 3):
            p = ParamKS.symbolic(tuple(range(ell)), 1)
            assert joint_injectivity(1, ell, p).injective

    def test_spherical_example(self):
        p = ParamKS.symbolic((5, 0), 2)
        assert is_spherical(p).spherical
        res = joint_injectivity(2, 2, p)
        assert res.injective and res.rank == res.dimension == 5

    def test_kernel_vector_reported(self):
        res = joint_injectivity(2, 2, ParamKS(2, 2, 1, (0, 0)))
        assert not res.injective and any(res.kernel)

    def test_dagger_family(self):
        fam = dagger_family(M("[[1,1],[]]"))
        assert M("[[1,1],[]]") in fam
        assert all(len(x) == 2 for x in fam)

    def test_degeneration_at_kappa_one(self):
        lam = M("[[1,1],[]]")
        assert dagger_independence(lam, ParamKS.symbolic((0, 0), 2)).injective
        drop = dagger_independence(lam, ParamKS(2, 2, 1, (0, 0)))
        assert not drop.injective and drop.rank < drop.dimension
