from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik.combinatorics import Box, Multipartition, enumerate_multipartitions, residue_multiset
from cherednik.fock import (
    RELATION_FAMILIES,
    FockSpace,
    FockVector,
    quantum_integer,
    singular_space_dim,
    verify_relations,
    weight_blocks,
)
from cherednik.kl_oracle import FockEmbedding, tensor_E, tensor_F
from cherednik.laurent import Laurent

from conftest import multipartitions

M = Multipartition.parse
V = Laurent.monomial


def _cartan(i: int, j: int) -> int:
    return 2 if i == j else (-1 if abs(i - j) == 1 else 0)


class TestStatistics:
    def test_vacuum(self):
        sp = FockSpace((2, 0, 2))
        assert sp.d_i(Multipartition.empty(3), 2) == 2
        assert sp.d_i(Multipartition.empty(3), 0) == 1
        assert sp.d_i(Multipartition.empty(3), 1) == 0

    def test_one_box(self):
        sp = FockSpace((1, 0))
        lam = M("[[1],[]]")
        assert sp.d_i(lam, 0) == 2
        assert sp.d_i(lam, 1) == -1
        assert sp.d_A(lam, Box(1, 1, 1)) == 0

    def test_not_removable(self):
        with pytest.raises(ValueError):
            FockSpace((1, 0)).d_A(M("[[1],[]]"), Box(1, 1, 2))


class TestOperators:
    def test_vacuum_killed_by_E(self):
        sp = FockSpace((1, 0))
        for i in range(-3, 4):
            assert sp.E(i, FockVector.basis(Multipartition.empty(2))).is_zero()

    def test_hand_computed_F0(self):
        sp = FockSpace((1, 0))
        got = sp.F(0, FockVector.basis(M("[[1],[]]")))
        want = FockVector({M("[[1,1],[]]"): Laurent.const(1), M("[[1],[1]]"): V(-1)})
        assert got == want

    @given(multipartitions(level=2, max_size=5), st.integers(-4, 4))
    def test_K_diagonal(self, lam, i):
        sp = FockSpace((1, 0))
        assert sp.K(i, FockVector.basis(lam)) == FockVector.basis(lam, V(sp.d_i(lam, i)))

    @given(multipartitions(level=3, max_size=4), st.integers(-3, 4))
    def test_commutator_on_basis(self, lam, i):
        sp = FockSpace((2, 0, 1))
        x = FockVector.basis(lam)
        lhs = sp.E(i, sp.F(i, x)) - sp.F(i, sp.E(i, x))
        assert lhs == FockVector.basis(lam, quantum_integer(sp.d_i(lam, i)))

    @given(multipartitions(level=2, max_size=4), st.integers(-3, 3), st.integers(-3, 3))
    def test_conjugation_on_basis(self, lam, i, j):
        sp = FockSpace((1, 0))
        x = FockVector.basis(lam)
        for op in ("E", "F"):
            lhs = sp.K(i, sp.apply(op, j, sp.K(i, x, -1)))
            sign = 1 if op == "E" else -1
            assert lhs == sp.apply(op, j, x).scale(V(sign * _cartan(i, j)))

    @given(multipartitions(level=2, max_size=3), st.integers(-3, 3))
    def test_serre_on_basis(self, lam, i):
        sp = FockSpace((1, 0))
        x = FockVector.basis(lam)
        two = quantum_integer(2)
        for j in (i - 1, i + 1):
            F = sp.F
            serre = F(i, F(i, F(j, x))) - F(i, F(j, F(i, x))).scale(two) + F(j, F(i, F(i, x)))
            assert serre.is_zero()


class TestAgainstTensorSpace:
    """F and E agree with the coproduct action on a tensor product of q-wedges."""

    @pytest.mark.parametrize("s", [(0,), (1, 0), (0, 0), (0, 1), (1, 0, 1)])
    def test_intertwines(self, s):
        sp = FockSpace(s)
        for n in range(3):
            for lam in enumerate_multipartitions(n, len(s)):
                lo = min(min(s), min(residue_multiset(lam, s), default=0)) - 1
                emb = FockEmbedding(s, lo)
                image = emb.basis(lam)
                for i in range(lo + 1, max(s) + n + 2):
                    assert emb.vector(sp.F(i, FockVector.basis(lam))) == tensor_F(i, image)
                    assert emb.vector(sp.E(i, FockVector.basis(lam))) == tensor_E(i, image)


class TestRelationSuite:
    @pytest.mark.parametrize("s,n", [((0,), 3), ((1, 0), 3), ((0, 0), 3), ((2, 0, 1), 2)])
    def test_all_pass(self, s, n):
        rep = verify_relations(FockSpace(s), n)
        assert rep.ok, str(rep)
        assert rep.checked > 0

    def test_negative_control(self):
        rep = verify_relations(FockSpace((1, 0), db_offset=1), 2, families=["serre"])
        assert not rep.ok
        assert "Serre" in rep.failures[0]

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            verify_relations(FockSpace((0,)), 1, families=["jacobi"])

    def test_family_names(self):
        assert set(RELATION_FAMILIES) == {"commutator", "conjugation", "locality", "serre"}


class TestSingularSpace:
    def test_degree_zero(self):
        assert singular_space_dim(0, (1, 0)) == 1

    def test_degree_one(self):
        assert singular_space_dim(1, (1, 0)) == 0

    def test_level_one(self):
        assert [singular_space_dim(n, (0,)) for n in range(5)] == [1, 0, 0, 0, 0]

    def test_blocks_partition_labels(self):
        labels = enumerate_multipartitions(3, 2)
        blocks = weight_blocks(3, (1, 0))
        flat = [x for b in blocks for x in b]
        assert sorted(map(str, flat)) == sorted(map(str, labels))
        for b in blocks:
            assert len({tuple(sorted(residue_multiset(x, (1, 0)).items())) for x in b}) == 1
