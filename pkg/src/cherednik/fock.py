"""The level-ell Fock space F(Lambda_s) with its quantum gl_infinity action.

Basis vectors are multipartitions.  For a residue i:

* ``E_i M_lam = sum_A v^{d_A(lam)} M_{lam - A}`` over removable i-boxes A,
* ``F_i M_lam = sum_B v^{-d^B(lam)} M_{lam + B}`` over addable i-boxes B,
* ``K_i M_lam = v^{d_i(lam)} M_lam``,

where d_A counts addable minus removable i-boxes below A, d^B those above B,
and d_i all of them.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .combinatorics import (
    DEFAULT_ENUMERATION_CAP,
    Box,
    Multipartition,
    addable_removable,
    enumerate_multipartitions,
    residue,
    residue_multiset,
)
from .laurent import Laurent
from .linalg import rank_v

__all__ = [
    "FockVector",
    "FockSpace",
    "RelationReport",
    "RELATION_FAMILIES",
    "verify_relations",
    "singular_space_dim",
    "weight_blocks",
    "quantum_integer",
]

ONE = Laurent.const(1)


def _above(x: Box, y: Box) -> bool:
    return (x.m, x.a) < (y.m, y.a)


class FockVector:
    """Finite linear combination of multipartitions with Laurent coefficients in v."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Multipartition, Laurent] | None = None):
        self.terms = {lam: c for lam, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def basis(cls, lam: Multipartition, coeff: Laurent = ONE) -> FockVector:
        return cls({lam: coeff})

    def __add__(self, other: FockVector) -> FockVector:
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out[lam] + c if lam in out else c
        return FockVector(out)

    def __neg__(self):
        return FockVector({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other: FockVector) -> FockVector:
        return self + (-other)

    def scale(self, c) -> FockVector:
        if not isinstance(c, Laurent):
            c = Laurent.const(c)
        return FockVector({lam: x * c for lam, x in self.terms.items()})

    def bar_coefficients(self) -> FockVector:
        return FockVector({lam: c.bar() for lam, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, lam: Multipartition) -> Laurent:
        return self.terms.get(lam, Laurent.zero())

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].size, str(kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*M{lam}" for lam, c in self.sorted_items())

    __repr__ = __str__

    def to_json(self) -> list:
        return [[lam.to_json(), str(c)] for lam, c in self.sorted_items()]


def quantum_integer(d: int) -> Laurent:
    """(v^d - v^{-d}) / (v - v^{-1})."""
    if d == 0:
        return Laurent.zero()
    sign = 1 if d > 0 else -1
    d = abs(d)
    return Laurent({d - 1 - 2 * k: sign for k in range(d)})


@dataclass
class FockSpace:
    """F(Lambda_s) for an integer charge ``s``.

    ``db_offset`` is added to d^B whenever a removable i-box lies above B; it
    exists only so the relation checker can be shown to detect a broken action.
    A shift that depends on B alone cancels out of every relation.
    """

    s: tuple
    db_offset: int = 0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.s = tuple(int(x) for x in self.s)

    @property
    def level(self) -> int:
        return len(self.s)

    # statistics ------------------------------------------------------------

    def _i_boxes(self, lam: Multipartition, i: int):
        return addable_removable(lam, self.s, i)

    def d_i(self, lam: Multipartition, i: int) -> int:
        items = self._i_boxes(lam, i)
        return sum(1 if kind == "addable" else -1 for _, kind in items)

    def d_A(self, lam: Multipartition, box: Box) -> int:
        i = residue(box, self.s)
        if not lam.contains(box) or (box, "removable") not in self._i_boxes(lam, i):
            raise ValueError(f"{box} is not a removable box of {lam}")
        return sum(
            (1 if kind == "addable" else -1)
            for b, kind in self._i_boxes(lam, i)
            if _above(box, b)
        )

    def d_B(self, lam: Multipartition, box: Box) -> int:
        i = residue(box, self.s)
        if (box, "addable") not in self._i_boxes(lam, i):
            raise ValueError(f"{box} is not an addable box of {lam}")
        return sum(
            (1 if kind == "addable" else -1)
            for b, kind in self._i_boxes(lam, i)
            if _above(b, box)
        )

    def weight(self, lam: Multipartition) -> Counter:
        """Residue multiset; the weight is Lambda_s minus sum of alpha_i over it."""
        return residue_multiset(lam, self.s)

    # operators ---------------------------------------------------------------

    def _check(self, x: FockVector):
        for lam in x.terms:
            if lam.level != self.level:
                raise ValueError(f"{lam} has level {lam.level}, space has level {self.level}")

    def E_basis(self, lam: Multipartition, i: int) -> FockVector:
        key = ("E", lam, i)
        if key not in self._cache:
            out = {}
            for box, kind in self._i_boxes(lam, i):
                if kind == "removable":
                    out[lam.remove_box(box)] = Laurent.monomial(self.d_A(lam, box))
            self._cache[key] = FockVector(out)
        return self._cache[key]

    def F_basis(self, lam: Multipartition, i: int) -> FockVector:
        key = ("F", lam, i)
        if key not in self._cache:
            out = {}
            for box, kind in self._i_boxes(lam, i):
                if kind == "addable":
                    shift = 0
                    if self.db_offset and any(
                        k == "removable" and _above(b, box) for b, k in self._i_boxes(lam, i)
                    ):
                        shift = self.db_offset
                    out[lam.add_box(box)] = Laurent.monomial(-(self.d_B(lam, box) + shift))
            self._cache[key] = FockVector(out)
        return self._cache[key]

    def _linear(self, x: FockVector, fn: Callable[[Multipartition], FockVector]) -> FockVector:
        self._check(x)
        acc: dict[Multipartition, Laurent] = {}
        for lam, c in x.terms.items():
            for mu, d in fn(lam).terms.items():
                acc[mu] = acc[mu] + c * d if mu in acc else c * d
        return FockVector(acc)

    def E(self, i: int, x: FockVector) -> FockVector:
        return self._linear(x, lambda lam: self.E_basis(lam, i))

    def F(self, i: int, x: FockVector) -> FockVector:
        return self._linear(x, lambda lam: self.F_basis(lam, i))

    def K(self, i: int, x: FockVector, power: int = 1) -> FockVector:
        return self._linear(
            x, lambda lam: FockVector.basis(lam, Laurent.monomial(power * self.d_i(lam, i)))
        )

    def apply(self, op: str, i: int, x: FockVector) -> FockVector:
        if op == "E":
            return self.E(i, x)
        if op == "F":
            return self.F(i, x)
        if op == "K":
            return self.K(i, x, 1)
        if op in ("Kinv", "K^-1"):
            return self.K(i, x, -1)
        raise ValueError(f"unknown operator {op!r}")

    def residue_window(self, n: int) -> range:
        """Residues that can label an addable or removable box in degree <= n + 1."""
        return range(min(self.s) - n - 2, max(self.s) + n + 3)

    # matrices ----------------------------------------------------------------

    def operator_triplets(self, op: str, i: int, n: int, cap=DEFAULT_ENUMERATION_CAP):
        """Sparse (row, col, coeff) export of an operator on degree n."""
        src = enumerate_multipartitions(n, self.level, cap)
        out = []
        for lam in src:
            for mu, c in self.apply(op, i, FockVector.basis(lam)).sorted_items():
                out.append((mu, lam, c))
        return out


def weight_blocks(
    n: int, s: Sequence[int], cap: int | None = DEFAULT_ENUMERATION_CAP
) -> list[list[Multipartition]]:
    """P_ell(n) split by residue multiset, each block in canonical order."""
    blocks: dict[tuple, list[Multipartition]] = {}
    for lam in enumerate_multipartitions(n, len(s), cap):
        key = tuple(sorted(residue_multiset(lam, s).items()))
        blocks.setdefault(key, []).append(lam)
    return sorted(blocks.values(), key=lambda b: [str(x) for x in b[:1]])


RELATION_FAMILIES = ("commutator", "conjugation", "locality", "serre")


@dataclass
class RelationReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return f"all relations hold ({self.checked} checks)"
        return f"{len(self.failures)} failures; first: {self.failures[0]}"


def verify_relations(
    space: FockSpace,
    n_max: int,
    window: Iterable[int] | None = None,
    stop_at_first: bool = True,
    cap: int | None = DEFAULT_ENUMERATION_CAP,
    families: Iterable[str] = RELATION_FAMILIES,
) -> RelationReport:
    """Check the U_v(gl_infinity) relations on every basis vector of degree <= n_max.

    ``families`` selects among ``commutator``, ``conjugation``, ``locality``
    and ``serre``.
    """
    families = set(families)
    unknown = families - set(RELATION_FAMILIES)
    if unknown:
        raise ValueError(f"unknown relation families {sorted(unknown)}")
    report = RelationReport()
    window = list(window) if window is not None else list(space.residue_window(n_max))
    E, F, K = space.E, space.F, space.K
    two = Laurent({1: 1, -1: 1})

    def record(ok: bool, what: str) -> bool:
        report.checked += 1
        if not ok:
            report.failures.append(what)
            return stop_at_first
        return False

    for n in range(n_max + 1):
        for lam in enumerate_multipartitions(n, space.level, cap):
            x = FockVector.basis(lam)
            for i in window:
                d = space.d_i(lam, i)
                for j in window:
                    if "commutator" in families:
                        comm = E(i, F(j, x)) - F(j, E(i, x))
                        want = x.scale(quantum_integer(d)) if i == j else FockVector()
                        if record(comm == want, f"[E_{i},F_{j}] on M{lam}"):
                            return report
                    if "conjugation" in families:
                        a = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
                        ke = K(i, E(j, K(i, x, -1)))
                        if record(ke == E(j, x).scale(Laurent.monomial(a)), f"K_{i} E_{j} K_{i}^-1 on M{lam}"):
                            return report
                        kf = K(i, F(j, K(i, x, -1)))
                        if record(kf == F(j, x).scale(Laurent.monomial(-a)), f"K_{i} F_{j} K_{i}^-1 on M{lam}"):
                            return report
                    if abs(i - j) > 1 and "locality" in families:
                        if record(E(i, E(j, x)) == E(j, E(i, x)), f"E_{i}E_{j}=E_{j}E_{i} on M{lam}"):
                            return report
                        if record(F(i, F(j, x)) == F(j, F(i, x)), f"F_{i}F_{j}=F_{j}F_{i} on M{lam}"):
                            return report
                    elif abs(i - j) == 1 and "serre" in families:
                        serre_e = E(i, E(i, E(j, x))) - E(i, E(j, E(i, x))).scale(two) + E(j, E(i, E(i, x)))
                        if record(serre_e.is_zero(), f"Serre E_{i},E_{j} on M{lam}"):
                            return report
                        serre_f = F(i, F(i, F(j, x))) - F(i, F(j, F(i, x))).scale(two) + F(j, F(i, F(i, x)))
                        if record(serre_f.is_zero(), f"Serre F_{i},F_{j} on M{lam}"):
                            return report
    return report


def singular_space_dim(
    n: int, s: Sequence[int], cap: int | None = DEFAULT_ENUMERATION_CAP
) -> int:
    """dim over Q(v) of the joint kernel of all E_i on degree n."""
    space = FockSpace(tuple(s))
    total = 0
    for block in weight_blocks(n, s, cap):
        residues = sorted(set(residue_multiset(block[0], s)))
        index = {lam: j for j, lam in enumerate(block)}
        rows: list[list[Laurent]] = []
        for i in residues:
            images: dict[Multipartition, list[Laurent]] = {}
            for lam in block:
                for mu, c in space.E_basis(lam, i).terms.items():
                    images.setdefault(mu, [Laurent.zero()] * len(block))[index[lam]] = c
            rows.extend(images.values())
        total += len(block) - rank_v(rows, len(block))
    return total
