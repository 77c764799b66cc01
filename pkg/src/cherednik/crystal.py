"""The gl_infinity crystal on level-ell multipartitions.

Signatures list the addable (+) and removable (-) i-boxes from top to bottom;
adjacent ``-+`` pairs cancel until none are left.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import (
    DEFAULT_ENUMERATION_CAP,
    Box,
    Multipartition,
    addable_removable,
    enumerate_multipartitions,
    residue,
)
from .params import ParamKS, PreconditionError

__all__ = [
    "Signature",
    "CrystalData",
    "SupportLabel",
    "reduced_signature",
    "full_signature",
    "crystal",
    "residue_scan",
    "is_singular",
    "N_of",
    "support_of",
    "finite_dim_labels",
    "check_theorem_domain",
    "crystal_graph",
    "crystal_graph_json",
]


@dataclass(frozen=True)
class Signature:
    entries: tuple[tuple[Box, str], ...]

    @property
    def signs(self) -> str:
        return "".join(sign for _, sign in self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "(" + ",".join(self.signs) + ")"


@dataclass(frozen=True)
class CrystalData:
    eps: int
    phi: int
    e: Multipartition | None
    f: Multipartition | None

    def to_json(self) -> dict:
        return {
            "eps": self.eps,
            "phi": self.phi,
            "e": None if self.e is None else self.e.to_json(),
            "f": None if self.f is None else self.f.to_json(),
        }


@dataclass(frozen=True, order=True)
class SupportLabel:
    """X^n_m: the G_n-orbit of points with at most m non-zero coordinates."""

    n: int
    m: int

    def __post_init__(self):
        if not 0 <= self.m <= self.n:
            raise ValueError("support label needs 0 <= m <= n")

    def __str__(self):
        return f"X^{self.n}_{self.m}"


def _int_charge(s: Sequence) -> tuple[int, ...]:
    out = []
    for x in s:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError("crystal charges must be integers")
        out.append(int(x))
    return tuple(out)


def full_signature(lam: Multipartition, s: Sequence, i: int) -> Signature:
    s = _int_charge(s)
    items = addable_removable(lam, s, i)
    return Signature(tuple((b, "+" if kind == "addable" else "-") for b, kind in items))


def reduced_signature(lam: Multipartition, s: Sequence, i: int) -> Signature:
    """Cancel a ``-`` immediately followed by a ``+`` until no such pair remains."""
    stack: list[tuple[Box, str]] = []
    for entry in full_signature(lam, s, i).entries:
        # a stack pass is the same fixpoint as repeated adjacent cancellation
        if entry[1] == "+" and stack and stack[-1][1] == "-":
            stack.pop()
        else:
            stack.append(entry)
    return Signature(tuple(stack))


def crystal(lam: Multipartition, s: Sequence, i: int) -> CrystalData:
    red = reduced_signature(lam, s, i).entries
    minus = [b for b, sign in red if sign == "-"]
    plus = [b for b, sign in red if sign == "+"]
    e = lam.remove_box(minus[0]) if minus else None
    f = lam.add_box(plus[-1]) if plus else None
    return CrystalData(len(minus), len(plus), e, f)


def residue_scan(lam: Multipartition, s: Sequence) -> list[int]:
    """Residues of addable or removable boxes; all others have empty signatures."""
    s = _int_charge(s)
    return sorted({residue(b, s) for b, _ in addable_removable(lam, s)})


def is_singular(lam: Multipartition, s: Sequence) -> bool:
    s = _int_charge(s)
    for b, kind in addable_removable(lam, s):
        if kind == "removable" and crystal(lam, s, residue(b, s)).eps:
            return False
    return True


class _Memo:
    """Per-charge table of N values, safe for concurrent readers."""

    def __init__(self):
        self._lock = threading.Lock()
        self._tables: dict[tuple[int, ...], dict[Multipartition, int]] = {}

    def table(self, s: tuple[int, ...]) -> dict[Multipartition, int]:
        with self._lock:
            return self._tables.setdefault(s, {})


_MEMO = _Memo()


def N_of(lam: Multipartition, s: Sequence) -> int:
    """Longest chain of e-tilde moves starting at ``lam``."""
    s = _int_charge(s)
    table = _MEMO.table(s)
    stack = [lam]
    while stack:
        x = stack[-1]
        if x in table:
            stack.pop()
            continue
        children = []
        for i in residue_scan(x, s):
            y = crystal(x, s, i).e
            if y is not None:
                children.append(y)
        pending = [y for y in children if y not in table]
        if pending:
            stack.extend(pending)
            continue
        table.setdefault(x, max((1 + table[y] for y in children), default=0))
        stack.pop()
    return table[lam]


def check_theorem_domain(p: ParamKS) -> None:
    """kappa symbolic, s strictly decreasing integers, m dominant."""
    if p.kappa is not None:
        raise PreconditionError("kappa must be symbolic (not rational)")
    s = p.s
    if any(Fraction(x).denominator != 1 for x in s):
        raise PreconditionError("s must consist of integers")
    if any(not s[j] > s[j + 1] for j in range(len(s) - 1)):
        raise PreconditionError("s must be strictly decreasing")
    if p.m is not None:
        m = p.m
        ell = len(m)
        chain = [m[ell - 1]] + list(m[: ell - 1])
        if any(chain[j] < chain[j + 1] for j in range(len(chain) - 1)):
            raise PreconditionError("m must be dominant: m_ell >= m_1 >= ... >= m_{ell-1}")


def support_of(lam: Multipartition, p: ParamKS) -> SupportLabel:
    check_theorem_domain(p)
    if lam.level != p.ell:
        raise PreconditionError("multipartition level does not match the parameters")
    return SupportLabel(lam.size, N_of(lam, p.s))


def finite_dim_labels(
    n: int, p: ParamKS, cap: int | None = DEFAULT_ENUMERATION_CAP
) -> list[Multipartition]:
    """lam* for every crystal-singular lam of size n."""
    check_theorem_domain(p)
    return [
        lam.star()
        for lam in enumerate_multipartitions(n, p.ell, cap)
        if is_singular(lam, p.s)
    ]


def crystal_graph(
    n_max: int, s: Sequence, cap: int | None = DEFAULT_ENUMERATION_CAP
) -> tuple[list[Multipartition], list[tuple[Multipartition, Multipartition, int]]]:
    """Nodes of size <= n_max and f-tilde edges between them."""
    s = _int_charge(s)
    nodes: list[Multipartition] = []
    edges = []
    for n in range(n_max + 1):
        for lam in enumerate_multipartitions(n, len(s), cap):
            nodes.append(lam)
            if n == n_max:
                continue
            for i in residue_scan(lam, s):
                f = crystal(lam, s, i).f
                if f is not None:
                    edges.append((lam, f, i))
    return nodes, edges


def crystal_graph_json(n_max: int, s: Sequence, cap: int | None = DEFAULT_ENUMERATION_CAP) -> str:
    nodes, edges = crystal_graph(n_max, s, cap)
    return json.dumps(
        {
            "s": list(_int_charge(s)),
            "nodes": [lam.to_json() for lam in nodes],
            "edges": [{"source": a.to_json(), "target": b.to_json(), "i": i} for a, b, i in edges],
        },
        separators=(",", ":"),
    )
