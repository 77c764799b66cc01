from __future__ import annotations

from collections import Counter
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik.combinatorics import (
    Box,
    Multipartition,
    Partition,
    ResourceCapError,
    addable_boxes,
    addable_removable,
    count_multipartitions,
    dominance,
    dominates,
    enumerate_multipartitions,
    hooks,
    lex_compare,
    removable_boxes,
    residue,
    residue_multiset,
    star,
    t_of,
)

from conftest import multipartitions, partitions

M = Multipartition.parse


def _series_count(n: int, ell: int) -> int:
    # coefficient of q^n in prod_i (1 - q^i)^(-ell), by repeated convolution
    coeffs = [1] + [0] * n
    for _ in range(ell):
        for i in range(1, n + 1):
            for k in range(i, n + 1):
                coeffs[k] += coeffs[k - i]
    return coeffs[n]


def _all_multipartitions_brute(n: int, ell: int) -> set:
    out = set()

    def parts(m, top):
        if m == 0:
            yield ()
            return
        for x in range(min(m, top), 0, -1):
            for rest in parts(m - x, x):
                yield (x,) + rest

    for sizes in product(range(n + 1), repeat=ell):
        if sum(sizes) != n:
            continue
        for comps in product(*[list(parts(k, k)) for k in sizes]):
            out.add(Multipartition(comps))
    return out


class TestEnumerate:
    def test_empty(self):
        assert list(enumerate_multipartitions(0, 3)) == [Multipartition.empty(3)]

    def test_two_two(self):
        got = enumerate_multipartitions(2, 2)
        want = {M("[[2],[]]"), M("[[1,1],[]]"), M("[[1],[1]]"), M("[[],[2]]"), M("[[],[1,1]]")}
        assert len(got) == 5 and set(got) == want

    def test_three_two(self):
        assert len(enumerate_multipartitions(3, 2)) == 10

    @pytest.mark.parametrize("n,ell", [(n, ell) for n in range(6) for ell in (1, 2, 3)])
    def test_counts_match_series_and_brute_force(self, n, ell):
        labels = enumerate_multipartitions(n, ell)
        assert len(labels) == _series_count(n, ell) == count_multipartitions(n, ell)
        assert set(labels) == _all_multipartitions_brute(n, ell)

    def test_cap(self):
        with pytest.raises(ResourceCapError):
            enumerate_multipartitions(8, 3, cap=10)


class TestStar:
    def test_example(self):
        assert star(M("[[3,1],[4,2]]")) == M("[[2,1,1],[2,2,1,1]]")

    def test_empty(self):
        assert star(Multipartition.empty(3)) == Multipartition.empty(3)

    def test_involution_p3_3(self):
        assert all(star(star(lam)) == lam for lam in enumerate_multipartitions(3, 3))

    @given(multipartitions())
    def test_involution(self, lam):
        assert lam.star().star() == lam

    @given(multipartitions())
    def test_preserves_size(self, lam):
        assert lam.star().size == lam.size


class TestResidue:
    def test_single(self):
        assert residue(Box(1, 1, 1), (0,)) == 0

    def test_worked(self):
        assert residue(Box(2, 3, 2), (7, 5, 4)) == 6

    def test_multiset(self):
        assert residue_multiset(M("[[1],[1]]"), (1, 0)) == Counter({1: 1, 0: 1})

    @given(multipartitions(level=2), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
    def test_multiset_size(self, lam, s):
        assert sum(residue_multiset(lam, s).values()) == lam.size


def _hooks_by_definition(p: Partition) -> list[int]:
    conj = p.transpose()
    return sorted(
        (p.part(a) - b) + (conj.part(b) - a) + 1 for a, b in p.cells()
    )


class TestHooks:
    def test_examples(self):
        assert hooks((1,)) == [1]
        assert sorted(hooks((3, 1))) == [1, 1, 2, 4]

    @given(partitions(8))
    def test_arm_leg_oracle(self, p):
        assert sorted(hooks(p)) == _hooks_by_definition(p)
        assert len(hooks(p)) == p.size


class TestDominance:
    def test_equal(self):
        lam = M("[[2],[1]]")
        assert dominance(lam, lam) == "equal"

    def test_examples(self):
        assert dominates(M("[[1],[1]]"), M("[[],[2]]"))
        assert dominates(M("[[2],[]]"), M("[[],[1,1]]"))

    @given(multipartitions(level=2, max_size=4), multipartitions(level=2, max_size=4))
    def test_antisymmetric(self, lam, mu):
        if lam.size == mu.size and dominates(lam, mu) and dominates(mu, lam):
            assert lam == mu

    def test_transitive_p2_3(self):
        labels = enumerate_multipartitions(3, 2)
        for a, b, c in product(labels, repeat=3):
            if dominates(a, b) and dominates(b, c):
                assert dominates(a, c)


class TestAddableRemovable:
    def test_empty(self):
        items = addable_removable(Multipartition.empty(3), (0, 1, 2))
        assert [b for b, _ in items] == [Box(1, 1, 1), Box(1, 1, 2), Box(1, 1, 3)]
        assert all(kind == "addable" for _, kind in items)

    def test_order_i0(self):
        assert addable_removable(M("[[1],[]]"), (1, 0), 0) == [
            (Box(2, 1, 1), "addable"),
            (Box(1, 1, 2), "addable"),
        ]

    def test_i1(self):
        assert addable_removable(M("[[1],[]]"), (1, 0), 1) == [(Box(1, 1, 1), "removable")]

    @given(multipartitions())
    def test_addable_minus_removable_is_level(self, lam):
        assert len(addable_boxes(lam)) - len(removable_boxes(lam)) == lam.level


class TestTOf:
    def test_single_box(self):
        assert t_of(M("[[1],[]]")) == M("[[],[]]")

    def test_example(self):
        assert t_of(M("[[2,2],[]]")) == M("[[2,1],[]]")

    def test_monotone_p2_4(self):
        labels = enumerate_multipartitions(4, 2)
        for lam, mu in product(labels, repeat=2):
            if lex_compare(lam, mu) > 0:
                assert lex_compare(t_of(lam), t_of(mu)) >= 0
