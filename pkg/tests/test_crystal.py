from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik.combinatorics import Box, Multipartition, enumerate_multipartitions
from cherednik.crystal import (
    N_of,
    SupportLabel,
    check_theorem_domain,
    crystal,
    crystal_graph,
    crystal_graph_json,
    finite_dim_labels,
    full_signature,
    is_singular,
    reduced_signature,
    residue_scan,
    support_of,
)
from cherednik.fock import singular_space_dim
from cherednik.params import ParamKS, PreconditionError

from conftest import multipartitions

M = Multipartition.parse


def _naive_reduce(signs: str) -> str:
    while "-+" in signs:
        signs = signs.replace("-+", "", 1)
    return signs


def _longest_e_chain(lam, s) -> int:
    best = 0
    for i in residue_scan(lam, s):
        e = crystal(lam, s, i).e
        if e is not None:
            best = max(best, 1 + _longest_e_chain(e, s))
    return best


class TestSignature:
    def test_vacuum_all_plus(self):
        sig = reduced_signature(Multipartition.empty(3), (2, 2, 0), 2)
        assert sig.signs == "++"

    def test_two_addable(self):
        sig = reduced_signature(M("[[1],[]]"), (1, 0), 0)
        assert sig.signs == "++"
        assert [b for b, _ in sig.entries] == [Box(2, 1, 1), Box(1, 1, 2)]

    def test_one_removable(self):
        assert str(reduced_signature(M("[[1],[]]"), (1, 0), 1)) == "(-)"

    @given(multipartitions(level=3, max_size=6), st.integers(-5, 6))
    def test_stack_matches_repeated_cancellation(self, lam, i):
        s = (2, 0, 1)
        assert reduced_signature(lam, s, i).signs == _naive_reduce(full_signature(lam, s, i).signs)


class TestOperators:
    def test_e_one(self):
        d = crystal(M("[[1],[]]"), (1, 0), 1)
        assert d.eps == 1 and d.e == Multipartition.empty(2)

    def test_f_zero(self):
        d = crystal(M("[[1],[]]"), (1, 0), 0)
        assert d.phi == 2 and d.f == M("[[1],[1]]")

    def test_e_inverts_f_exhaustive(self):
        for n in range(4):
            for lam in enumerate_multipartitions(n, 2):
                for i in range(-4, 5):
                    f = crystal(lam, (1, 0), i).f
                    if f is not None:
                        assert crystal(f, (1, 0), i).e == lam

    @given(multipartitions(level=2, max_size=5), st.integers(-4, 5))
    def test_f_inverts_e(self, lam, i):
        e = crystal(lam, (1, 0), i).e
        if e is not None:
            assert crystal(e, (1, 0), i).f == lam

    def test_json(self):
        assert crystal(M("[[1],[]]"), (1, 0), 1).to_json() == {"eps": 1, "phi": 0, "e": [[], []], "f": None}


class TestSingular:
    def test_vacuum(self):
        assert is_singular(Multipartition.empty(2), (1, 0))

    def test_single_boxes(self):
        assert not any(is_singular(lam, (1, 0)) for lam in enumerate_multipartitions(1, 2))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_level_one_only_empty(self, n):
        assert not any(is_singular(lam, (0,)) for lam in enumerate_multipartitions(n, 1))

    @pytest.mark.parametrize("s", [(0,), (1, 0), (0, 0), (3, 0), (2, 1, 0), (0, 0, 0), (4, 2, 0)])
    def test_count_equals_kernel_dimension(self, s):
        for n in range(5 if len(s) < 3 else 4):
            count = sum(is_singular(lam, s) for lam in enumerate_multipartitions(n, len(s)))
            assert count == singular_space_dim(n, s), (s, n)


class TestSupports:
    def test_singular_is_point(self):
        p = ParamKS.symbolic((1, 0), 2)
        lam = M("[[1,1],[]]")
        assert is_singular(lam, (1, 0)) and N_of(lam, (1, 0)) == 0
        assert support_of(lam, p) == SupportLabel(2, 0)

    def test_one_box(self):
        p = ParamKS.symbolic((1, 0), 1)
        assert N_of(M("[[1],[]]"), (1, 0)) == 1
        assert str(support_of(M("[[1],[]]"), p)) == "X^1_1"

    @given(multipartitions(level=2, max_size=5))
    def test_N_matches_recursive_definition(self, lam):
        assert N_of(lam, (1, 0)) == _longest_e_chain(lam, (1, 0))

    @given(multipartitions(level=3, max_size=4))
    def test_N_bounded_by_size(self, lam):
        assert 0 <= N_of(lam, (2, 1, 0)) <= lam.size

    def test_finite_dim_count(self):
        p = ParamKS.symbolic((2, 0))
        for n in range(5):
            assert len(finite_dim_labels(n, p)) == singular_space_dim(n, (2, 0))

    def test_finite_dim_labels_are_stars(self):
        p = ParamKS.symbolic((1, 0))
        assert finite_dim_labels(2, p) == [M("[[1,1],[]]").star()]

    def test_domain(self):
        with pytest.raises(PreconditionError):
            check_theorem_domain(ParamKS(2, 1, 1, (1, 0)))
        with pytest.raises(PreconditionError):
            check_theorem_domain(ParamKS.symbolic((0, 1)))
        with pytest.raises(PreconditionError):
            check_theorem_domain(ParamKS.symbolic((2, 1, 0), m=(0, 1, 0)))
        check_theorem_domain(ParamKS.symbolic((2, 1, 0), m=(1, 0, 2)))

    def test_label_range(self):
        with pytest.raises(ValueError):
            SupportLabel(2, 3)


class TestGraph:
    def test_edges_follow_f(self):
        nodes, edges = crystal_graph(3, (1, 0))
        assert len(nodes) == 1 + 2 + 5 + 10
        for a, b, i in edges:
            assert crystal(a, (1, 0), i).f == b

    def test_json_stable(self):
        text = crystal_graph_json(2, (1, 0))
        assert text == crystal_graph_json(2, (1, 0))
        data = json.loads(text)
        assert data["s"] == [1, 0] and len(data["nodes"]) == 8
