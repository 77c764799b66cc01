"""Partitions, multipartitions, boxes, residues and the orderings built on them.

Boxes are 1-indexed triples ``(a, b, m)``: row ``a``, column ``b`` of
component ``m``.  A multipartition is drawn as a row of Young diagrams, so
every row of component ``m`` sits to the left of every row of component
``m' > m``; a box is *above* another when its row is higher or further left.
"""
from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "Partition",
    "Multipartition",
    "Box",
    "ResourceCapError",
    "partitions",
    "enumerate_multipartitions",
    "count_multipartitions",
    "residue",
    "residue_multiset",
    "hooks",
    "dominance",
    "dominates",
    "addable_boxes",
    "removable_boxes",
    "addable_removable",
    "t_of",
    "lex_key",
    "lex_compare",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 200_000


class ResourceCapError(RuntimeError):
    """A computation would exceed a configured size limit."""


class Partition(tuple):
    """A weakly decreasing tuple of positive integers; trailing zeros are dropped."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, a: int) -> int:
        """Length of row ``a`` (1-indexed), zero beyond the last row."""
        return self[a - 1] if 1 <= a <= len(self) else 0

    def transpose(self) -> Partition:
        if not self:
            return self
        return Partition(sum(1 for p in self if p >= b) for b in range(1, self[0] + 1))

    def n_stat(self) -> int:
        """sum_j (j-1) * part_j."""
        return sum(j * p for j, p in enumerate(self))

    def cells(self) -> Iterator[tuple[int, int]]:
        for a, p in enumerate(self, start=1):
            for b in range(1, p + 1):
                yield a, b

    def __repr__(self):
        return f"Partition({list(self)})"


class Box(NamedTuple):
    a: int
    b: int
    m: int

    def __str__(self):
        return f"({self.a},{self.b},{self.m})"


class Multipartition(tuple):
    """An ordered tuple of partitions (the components)."""

    __slots__ = ()

    def __new__(cls, components: Iterable[Iterable[int]]):
        comps = tuple(c if isinstance(c, Partition) else Partition(c) for c in components)
        if not comps:
            raise ValueError("a multipartition needs at least one component")
        return super().__new__(cls, comps)

    @classmethod
    def empty(cls, level: int) -> Multipartition:
        return cls(() for _ in range(level))

    @classmethod
    def parse(cls, text: str) -> Multipartition:
        """Parse the ``[[3,1],[4,2]]`` text form."""
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(c, list) for c in data):
            raise ValueError(f"not a multipartition: {text!r}")
        return cls(data)

    @property
    def level(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(sum(c) for c in self)

    def component_sizes(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in self)

    def boxes(self) -> Iterator[Box]:
        for m, comp in enumerate(self, start=1):
            for a, b in comp.cells():
                yield Box(a, b, m)

    def contains(self, box: Box) -> bool:
        if not 1 <= box.m <= len(self):
            return False
        return box.a >= 1 and 1 <= box.b <= self[box.m - 1].part(box.a)

    def add_box(self, box: Box) -> Multipartition:
        comp = list(self[box.m - 1])
        if box.a == len(comp) + 1:
            comp.append(0)
        comp[box.a - 1] += 1
        return self._replace(box.m, comp)

    def remove_box(self, box: Box) -> Multipartition:
        comp = list(self[box.m - 1])
        comp[box.a - 1] -= 1
        return self._replace(box.m, comp)

    def _replace(self, m: int, comp) -> Multipartition:
        comps = list(self)
        comps[m - 1] = Partition(comp)
        return Multipartition(comps)

    def star(self) -> Multipartition:
        return star(self)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self]

    def __str__(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __repr__(self):
        return f"Multipartition({self})"


def star(lam: Multipartition) -> Multipartition:
    """((l^(ell-1))^t, ..., (l^(1))^t, (l^(ell))^t)."""
    ell = lam.level
    comps = [lam[ell - 1 - j].transpose() for j in range(1, ell)]
    comps.append(lam[ell - 1].transpose())
    return Multipartition(comps)


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` with parts at most ``max_part``, reverse-lexicographic."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (Partition(),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def count_multipartitions(n: int, level: int) -> int:
    """|P_level(n)| via the product formula prod (1-q^i)^(-level)."""
    coeffs = [1] + [0] * n
    for i in range(1, n + 1):
        for _ in range(level):
            for d in range(i, n + 1):
                coeffs[d] += coeffs[d - i]
    return coeffs[n]


def _compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def enumerate_multipartitions(
    n: int, level: int, cap: int | None = DEFAULT_ENUMERATION_CAP
) -> list[Multipartition]:
    """Every multipartition of size ``n`` with ``level`` components, sorted by :func:`lex_key`.

    Raises :class:`ResourceCapError` when the count exceeds ``cap``.
    """
    if n < 0 or level < 1:
        raise ValueError("need n >= 0 and level >= 1")
    if cap is not None and count_multipartitions(n, level) > cap:
        raise ResourceCapError(
            f"|P_{level}({n})| = {count_multipartitions(n, level)} exceeds cap {cap}"
        )
    return list(_enumerate_cached(n, level))


@lru_cache(maxsize=64)
def _enumerate_cached(n: int, level: int) -> tuple[Multipartition, ...]:
    out = []
    for sizes in _compositions(n, level):
        pools = [partitions(k) for k in sizes]
        stack: list[tuple[Partition, ...]] = [()]
        for pool in pools:
            stack = [prefix + (p,) for prefix in stack for p in pool]
        out.extend(Multipartition(c) for c in stack)
    out.sort(key=lambda lam: lex_key(lam, n))
    return tuple(out)


def _charge(s: Sequence, m: int, level: int):
    if len(s) != level:
        raise ValueError(f"charge has length {len(s)}, expected {level}")
    return s[m - 1]


def residue(box: Box, s: Sequence):
    """s_m + b - a.  ``s`` may hold ints, Fractions or Scalars."""
    if not 1 <= box.m <= len(s):
        raise ValueError(f"box component {box.m} outside charge of length {len(s)}")
    return s[box.m - 1] + box.b - box.a


def residue_multiset(lam: Multipartition, s: Sequence) -> Counter:
    _charge(s, 1, lam.level)
    return Counter(residue(b, s) for b in lam.boxes())


def hooks(p: Sequence[int]) -> list[int]:
    """Hook lengths of every box, row by row."""
    p = Partition(p)
    pt = p.transpose()
    return [p[a - 1] - b + pt[b - 1] - a + 1 for a, b in p.cells()]


def _partial_sums(lam: Multipartition, width: int) -> list[int]:
    out = []
    before = 0
    for comp in lam:
        run = before
        for t in range(width):
            run += comp.part(t + 1)
            out.append(run)
        before += comp.size
    return out


def dominates(lam: Multipartition, mu: Multipartition) -> bool:
    """lam >= mu in the dominance order (equality allowed)."""
    if lam.level != mu.level or lam.size != mu.size:
        raise ValueError("dominance needs equal size and level")
    w = lam.size
    return all(x >= y for x, y in zip(_partial_sums(lam, w), _partial_sums(mu, w)))


def dominance(lam: Multipartition, mu: Multipartition) -> str:
    """One of ``"equal"``, ``"greater-eq"``, ``"less-eq"``, ``"incomparable"``."""
    if lam == mu:
        if lam.level != mu.level:
            raise ValueError("dominance needs equal size and level")
        return "equal"
    if dominates(lam, mu):
        return "greater-eq"
    if dominates(mu, lam):
        return "less-eq"
    return "incomparable"


def addable_boxes(lam: Multipartition) -> list[Box]:
    out = []
    for m, comp in enumerate(lam, start=1):
        for a in range(1, len(comp) + 2):
            if a == 1 or comp.part(a - 1) > comp.part(a):
                out.append(Box(a, comp.part(a) + 1, m))
    return out


def removable_boxes(lam: Multipartition) -> list[Box]:
    out = []
    for m, comp in enumerate(lam, start=1):
        for a in range(1, len(comp) + 1):
            if comp.part(a) > comp.part(a + 1):
                out.append(Box(a, comp.part(a), m))
    return out


def addable_removable(lam: Multipartition, s: Sequence, i=None) -> list[tuple[Box, str]]:
    """Addable and removable boxes ordered from top to bottom.

    Pass ``i=None`` for all residues; otherwise only ``i``-boxes are kept.
    """
    _charge(s, 1, lam.level)
    items = [(b, "addable") for b in addable_boxes(lam)]
    items += [(b, "removable") for b in removable_boxes(lam)]
    if i is not None:
        items = [(b, k) for b, k in items if residue(b, s) == i]
    items.sort(key=lambda item: (item[0].m, item[0].a, item[0].b))
    return items


def lex_key(lam: Multipartition, width: int | None = None) -> tuple[int, ...]:
    """Column representation: each component's column lengths padded to ``width``."""
    if width is None:
        width = lam.size
    key = []
    for comp in lam:
        cols = list(comp.transpose())
        key.extend(cols + [0] * (width - len(cols)))
    return tuple(key)


def lex_compare(lam: Multipartition, mu: Multipartition) -> int:
    """-1, 0 or 1 comparing column representations lexicographically."""
    w = max(lam.size, mu.size)
    a, b = lex_key(lam, w), lex_key(mu, w)
    return (a > b) - (a < b)


def t_of(lam: Multipartition) -> Multipartition:
    """Remove the rightmost removable box of the column representation."""
    if lam.size == 0:
        raise ValueError("t(lambda) needs a non-empty multipartition")
    k = max(m for m, comp in enumerate(lam, start=1) if comp)
    comp = lam[k - 1]
    rows = sum(1 for p in comp if p == comp[0])
    return lam.remove_box(Box(rows, comp[0], k))
