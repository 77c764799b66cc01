"""Grothendieck-group shadows: restriction and induction matrices, highest-weight
orderings on labels, and the joint injectivity test for ([Res], ch-hat)."""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .characters import chhat_delta, one_minus_product
from .combinatorics import (
    DEFAULT_ENUMERATION_CAP,
    Multipartition,
    addable_boxes,
    dominates,
    enumerate_multipartitions,
    lex_key,
    removable_boxes,
    residue_multiset,
    t_of,
)
from .laurent import Laurent
from .linalg import kernel_q, rank_q
from .params import ParamKS, star_params

__all__ = [
    "KMatrix",
    "res_matrix",
    "ind_matrix",
    "removal_set",
    "recover_from_removals",
    "RecoveryError",
    "order_sm",
    "order_sstar",
    "order_prime",
    "permute_multipartition",
    "InjectivityResult",
    "joint_injectivity",
    "dagger_family",
    "dagger_independence",
]


@dataclass
class KMatrix:
    """Sparse integer matrix with multipartition-labelled rows and columns."""

    rows: list[Multipartition]
    cols: list[Multipartition]
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def dense(self) -> list[list[int]]:
        out = [[0] * len(self.cols) for _ in self.rows]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def __matmul__(self, other: KMatrix) -> KMatrix:
        if self.cols != other.rows:
            raise ValueError("inner labels do not match")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), y in other.entries.items():
            by_row.setdefault(k, []).append((j, y))
        out: dict[tuple[int, int], int] = {}
        for (i, k), x in self.entries.items():
            for j, y in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + x * y
        return KMatrix(self.rows, other.cols, {key: x for key, x in out.items() if x})

    def __sub__(self, other: KMatrix) -> KMatrix:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("labels do not match")
        out = dict(self.entries)
        for key, x in other.entries.items():
            out[key] = out.get(key, 0) - x
        return KMatrix(self.rows, self.cols, {key: x for key, x in out.items() if x})

    def is_scalar(self, c: int) -> bool:
        if self.rows != self.cols:
            return False
        want = {(i, i): c for i in range(len(self.rows))} if c else {}
        return self.entries == want

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + [str(c) for c in self.cols])
        for i, row in enumerate(self.dense()):
            writer.writerow([str(self.rows[i])] + row)
        return buf.getvalue()


def res_matrix(n: int, ell: int, cap: int | None = DEFAULT_ENUMERATION_CAP) -> KMatrix:
    """[Res]: column lam is the sum of all lam minus one box."""
    if n < 1:
        raise ValueError("restriction needs n >= 1")
    cols = enumerate_multipartitions(n, ell, cap)
    rows = enumerate_multipartitions(n - 1, ell, cap)
    index = {mu: i for i, mu in enumerate(rows)}
    entries = {}
    for j, lam in enumerate(cols):
        for box in removable_boxes(lam):
            entries[(index[lam.remove_box(box)], j)] = 1
    return KMatrix(rows, cols, entries)


def ind_matrix(n: int, ell: int, cap: int | None = DEFAULT_ENUMERATION_CAP) -> KMatrix:
    """[Ind] from degree n to n + 1: the transpose of [Res] at n + 1."""
    cols = enumerate_multipartitions(n, ell, cap)
    rows = enumerate_multipartitions(n + 1, ell, cap)
    index = {mu: i for i, mu in enumerate(rows)}
    entries = {}
    for j, lam in enumerate(cols):
        for box in addable_boxes(lam):
            entries[(index[lam.add_box(box)], j)] = 1
    return KMatrix(rows, cols, entries)


class RecoveryError(ValueError):
    """No unique multipartition has the given removal set."""


def removal_set(lam: Multipartition) -> frozenset[Multipartition]:
    return frozenset(lam.remove_box(b) for b in removable_boxes(lam))


def recover_from_removals(S) -> Multipartition:
    """The unique lam whose one-box removals are exactly ``S``."""
    S = frozenset(S)
    if not S:
        raise RecoveryError("empty removal set has no preimage")
    sizes = {mu.size for mu in S}
    levels = {mu.level for mu in S}
    if len(sizes) != 1 or len(levels) != 1:
        raise RecoveryError("removal set mixes sizes or levels")
    (n1,), (ell,) = sizes, levels
    if n1 < 1:
        raise RecoveryError("n = 1 is excluded: every single box has the empty removal set")
    candidates = set()
    for mu in S:
        for box in addable_boxes(mu):
            lam = mu.add_box(box)
            if removal_set(lam) == S:
                candidates.add(lam)
    if not candidates:
        raise RecoveryError("no multipartition has this removal set")
    if len(candidates) > 1:
        names = ", ".join(sorted(str(c) for c in candidates))
        raise RecoveryError(f"removal set is shared by {names}")
    return candidates.pop()


# orderings -------------------------------------------------------------------


def _check_pair(lam: Multipartition, mu: Multipartition):
    if lam.size != mu.size or lam.level != mu.level:
        raise ValueError("orderings need labels of equal size and level")


def _weight_sum(lam: Multipartition, m: Sequence[int]) -> int:
    ell = lam.level
    total = 0
    for r in range(ell):
        idx = ell if r == 0 else r
        total += lam[idx - 1].size * (ell * m[idx - 1] - r)
    return total


def order_sm(lam: Multipartition, mu: Multipartition, s: Sequence, m: Sequence[int]) -> bool:
    """lam >_{s,m} mu: equal residue multisets and a strictly larger weighted size sum for mu."""
    _check_pair(lam, mu)
    if residue_multiset(lam, s) != residue_multiset(mu, s):
        return False
    return _weight_sum(mu, m) > _weight_sum(lam, m)


def order_sstar(lam: Multipartition, mu: Multipartition, s_star: Sequence) -> bool:
    """lam >_{s*} mu: strict dominance and equal s*-residue multisets."""
    _check_pair(lam, mu)
    if lam == mu or not dominates(lam, mu):
        return False
    return residue_multiset(lam, s_star) == residue_multiset(mu, s_star)


def permute_multipartition(w: Sequence[int], lam: Multipartition) -> Multipartition:
    """w(lam) with w(lam)[w[i]] = lam[i] (0-based w)."""
    comps = [None] * len(w)
    for i, t in enumerate(w):
        comps[t] = lam[i]
    return Multipartition(comps)


def _inverse(w: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(w)
    for i, t in enumerate(w):
        inv[t] = i
    return tuple(inv)


def order_prime(
    lam: Multipartition, mu: Multipartition, w: Sequence[int], s: Sequence, m: Sequence[int] | None = None
) -> bool:
    """lam >' mu on labels for (w(s), w(m)).

    Holds iff w^{-1}(lam)* strictly dominates w^{-1}(mu)* and the s*-residue
    multisets of w^{-1}(lam)* and w^{-1}(mu)* agree.  ``m`` is accepted for
    interface symmetry; the ordering does not depend on it.
    """
    _check_pair(lam, mu)
    winv = _inverse(w)
    a = permute_multipartition(winv, lam).star()
    b = permute_multipartition(winv, mu).star()
    if a == b or not dominates(a, b):
        return False
    s_star = star_params(tuple(s))
    return residue_multiset(a, s_star) == residue_multiset(b, s_star)


# joint injectivity -----------------------------------------------------------


@dataclass
class InjectivityResult:
    injective: bool
    rank: int
    dimension: int
    labels: list[Multipartition]
    kernel: list[Fraction] | None = None

    def __str__(self):
        if self.injective:
            return f"injective rank={self.rank} dim={self.dimension}"
        vec = {str(lam): str(c) for lam, c in zip(self.labels, self.kernel) if c}
        return f"not-injective rank={self.rank} dim={self.dimension} kernel={vec}"


def _chhat_rows(labels: Sequence[Multipartition], p: ParamKS) -> list[list[Fraction]]:
    """Coefficient rows of the ch-hat numerators, one coset of gamma mod Z at a time."""
    N = len(labels)
    rows: list[list[Fraction]] = []
    chars = [chhat_delta(lam, p).terms[0] for lam in labels]
    groups: dict[tuple, list[int]] = {}
    for j, t in enumerate(chars):
        groups.setdefault(t.gamma.coset_key(), []).append(j)
    for members in groups.values():
        base = chars[members[0]].gamma
        for j in members[1:]:
            if (chars[j].gamma - base).rational_value() < 0:
                base = chars[j].gamma
        lcm: Counter = Counter()
        for j in members:
            lcm |= Counter(chars[j].den)
        nums: dict[int, Laurent] = {}
        for j in members:
            t = chars[j]
            extra = lcm - Counter(t.den)
            shift = int((t.gamma - base).rational_value())
            nums[j] = (t.num * one_minus_product(extra.elements())).shift(shift)
        degrees = sorted({k for poly in nums.values() for k in poly.coeffs})
        for k in degrees:
            row = [Fraction(0)] * N
            for j, poly in nums.items():
                row[j] = poly.coeff(k)
            rows.append(row)
    return rows


def joint_injectivity(
    n: int, ell: int, p: ParamKS, cap: int | None = DEFAULT_ENUMERATION_CAP
) -> InjectivityResult:
    """Exact rank of v -> ([Res] v, ch-hat(v)) on the span of standard classes in degree n.

    ch-hat terms are grouped by gamma modulo Z; within a coset every term is
    brought over the common denominator prod(1 - q^d) for the union of the
    hook multisets, so linear dependence becomes a statement about the
    coefficient vectors of the numerators.
    """
    if p.ell != ell:
        raise ValueError("parameter level does not match ell")
    labels = enumerate_multipartitions(n, ell, cap)
    N = len(labels)
    rows: list[list[Fraction]] = []
    if n >= 1:
        rows.extend([Fraction(x) for x in r] for r in res_matrix(n, ell, cap).dense())

    rows.extend(_chhat_rows(labels, p))

    rank = rank_q(rows, N)
    if rank == N:
        return InjectivityResult(True, rank, N, labels)
    kernel = kernel_q(rows, N)[0]
    return InjectivityResult(False, rank, N, labels, kernel)


def dagger_family(lam: Multipartition, cap: int | None = DEFAULT_ENUMERATION_CAP) -> list[Multipartition]:
    """All mu <=_lex lam with t(mu) = t(lam); these are the labels whose
    ch-hat values must be independent for the triangular argument to go through."""
    n = lam.size
    target = t_of(lam)
    return [
        mu
        for mu in enumerate_multipartitions(n, lam.level, cap)
        if lex_key(mu, n) <= lex_key(lam, n) and t_of(mu) == target
    ]


def dagger_independence(lam: Multipartition, p: ParamKS) -> InjectivityResult:
    """Exact rank of the ch-hat values on ``dagger_family(lam)``."""
    if lam.level != p.ell:
        raise ValueError("parameter level does not match the multipartition")
    family = dagger_family(lam)
    N = len(family)
    rows = _chhat_rows(family, p)
    rank = rank_q(rows, N)
    if rank == N:
        return InjectivityResult(True, rank, N, family)
    return InjectivityResult(False, rank, N, family, kernel_q(rows, N)[0])
