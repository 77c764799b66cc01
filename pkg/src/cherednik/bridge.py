"""Multipartitions as column-strict tau-tableaux, and the label transport to
parabolic category O.

Columns are bottom-justified: column j has height d_j = m + s_j - s_1 and
occupies the global rows d_1 - d_j + 1, ..., d_1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .combinatorics import Multipartition, Partition, enumerate_multipartitions
from .params import ParamKS, PreconditionError, star_params

__all__ = [
    "TauShape",
    "Tableau",
    "ground_state",
    "tableau_of",
    "lambda_of",
    "weight_tau",
    "is_column_strict",
    "change_m",
    "column_strict_tableaux",
    "UpsilonLabels",
    "upsilon_labels",
]


def _int_tuple(s: Sequence) -> tuple[int, ...]:
    out = []
    for x in s:
        x = Fraction(x)
        if x.denominator != 1:
            raise PreconditionError("charges must be integers")
        out.append(int(x))
    return tuple(out)


def _check_decreasing(s: tuple[int, ...]):
    if any(s[j] <= s[j + 1] for j in range(len(s) - 1)):
        raise PreconditionError("s must be strictly decreasing: s_1 > ... > s_ell")


@dataclass(frozen=True)
class TauShape:
    s: tuple[int, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "s", _int_tuple(self.s))
        _check_decreasing(self.s)
        if self.heights[-1] < 1:
            raise PreconditionError(f"m = {self.m} leaves an empty column; need m >= s_1 - s_ell + 1")

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(self.m + sj - self.s[0] for sj in self.s)

    @property
    def size(self) -> int:
        return sum(self.heights)

    @property
    def partition(self) -> Partition:
        """tau, whose transpose is the list of column heights."""
        return Partition(self.heights).transpose()

    def max_n(self) -> int:
        return self.m - self.s[0] + self.s[-1]

    def rows_of(self, j: int) -> range:
        """Global rows of column j (0-based j)."""
        d = self.heights
        return range(d[0] - d[j] + 1, d[0] + 1)


@dataclass(frozen=True)
class Tableau:
    shape: TauShape
    cols: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        heights = self.shape.heights
        if len(self.cols) != len(heights) or any(len(c) != d for c, d in zip(self.cols, heights)):
            raise ValueError("tableau columns do not match the shape")

    def entry(self, j: int, i: int) -> int:
        """Entry of column j (0-based) at global row i."""
        rows = self.shape.rows_of(j)
        if i not in rows:
            raise KeyError(f"column {j + 1} has no row {i}")
        return self.cols[j][i - rows.start]

    def reading(self) -> list[int]:
        return [x for col in self.cols for x in col]

    def to_json(self) -> dict:
        return {"shape": list(self.shape.heights), "cols": [list(c) for c in self.cols]}

    def __str__(self):
        return json.dumps(self.to_json(), separators=(",", ":"))


def ground_state(shape: TauShape) -> Tableau:
    top = shape.s[0]
    return Tableau(shape, tuple(tuple(top + 1 - i for i in shape.rows_of(j)) for j in range(len(shape.s))))


def tableau_of(lam: Multipartition, s: Sequence, m: int) -> Tableau:
    shape = TauShape(tuple(s), m)
    if lam.level != len(shape.s):
        raise ValueError("multipartition level does not match the charge")
    if lam.size > shape.max_n():
        raise PreconditionError(f"m = {m} is too small for n = {lam.size}; need m >= s_1 - s_ell + n")
    top = shape.s[0]
    d = shape.heights
    cols = []
    for j in range(len(d)):
        comp = lam[j]
        cols.append(tuple(comp.part(d[j] - d[0] + i) + top - i + 1 for i in shape.rows_of(j)))
    return Tableau(shape, tuple(cols))


def lambda_of(A: Tableau) -> Multipartition:
    base = ground_state(A.shape)
    comps = []
    for col, col0 in zip(A.cols, base.cols):
        diff = [a - b for a, b in zip(col, col0)]
        if any(x < 0 for x in diff) or any(diff[k] < diff[k + 1] for k in range(len(diff) - 1)):
            raise ValueError("tableau is not of the form A_lambda")
        comps.append(Partition(x for x in diff if x))
    return Multipartition(comps)


def weight_tau(A: Tableau) -> list[int]:
    """a - rho with rho = (0, -1, ..., 1 - |tau|)."""
    return [x + k for k, x in enumerate(A.reading())]


def is_column_strict(A: Tableau) -> bool:
    return all(col[k] > col[k + 1] for col in A.cols for k in range(len(col) - 1))


def change_m(A: Tableau, m: int) -> Tableau:
    """Re-express A_lambda for another admissible m; entries do not depend on m."""
    lam = lambda_of(A)
    return tableau_of(lam, A.shape.s, m)


def column_strict_tableaux(s: Sequence, m: int, n: int) -> list[Tableau]:
    """All column-strict A with A - A_0 >= 0 entrywise and total excess n."""
    shape = TauShape(tuple(s), m)
    base = ground_state(shape)
    out = []

    def columns(col0: tuple[int, ...], budget: int):
        # excess vectors e with col0 + e strictly decreasing, sum(e) <= budget
        h = len(col0)

        def rec(k: int, left: int, prev_val):
            if k == h:
                yield ()
                return
            for e in range(left + 1):
                val = col0[k] + e
                if prev_val is not None and val >= prev_val:
                    break
                for rest in rec(k + 1, left - e, val):
                    yield (e,) + rest

        yield from rec(0, budget, None)

    def rec_cols(j: int, left: int, acc: list):
        if j == len(base.cols):
            if left == 0:
                out.append(Tableau(shape, tuple(acc)))
            return
        col0 = base.cols[j]
        for e in columns(col0, left):
            rec_cols(j + 1, left - sum(e), acc + [tuple(a + b for a, b in zip(col0, e))])

    rec_cols(0, n, [])
    return out


@dataclass(frozen=True)
class UpsilonLabels:
    params: ParamKS
    cherednik_label: Multipartition
    tableau: Tableau

    @staticmethod
    def functor_index(i: int) -> int:
        """i-restriction on the Cherednik side matches (-i)-restriction on the parabolic side."""
        return -i

    def to_json(self) -> dict:
        return {
            "cherednik": {
                "kappa": "symbolic",
                "s_star": [str(x) for x in self.params.s],
                "m": list(self.params.m) if self.params.m is not None else None,
                "label": self.cherednik_label.to_json(),
            },
            "parabolic": {"tableau": self.tableau.to_json()},
            "functor_index_map": "i -> -i",
        }


def upsilon_labels(
    lam: Multipartition, s: Sequence, m_vec: Sequence[int], shape_m: int | None = None
) -> UpsilonLabels:
    """Labels matched by the Schur-type functor: Delta(lam*) at (kappa, (s*, m)) and N(A_lam)."""
    s = _int_tuple(s)
    _check_decreasing(s)
    m_vec = tuple(int(x) for x in m_vec)
    ell = len(s)
    if len(m_vec) != ell:
        raise PreconditionError("m must have one entry per component")
    chain = [m_vec[-1]] + list(m_vec[:-1])
    if any(chain[j] < chain[j + 1] for j in range(len(chain) - 1)):
        raise PreconditionError("m must satisfy m_ell >= m_1 >= ... >= m_{ell-1}")
    if lam.level != ell:
        raise PreconditionError("multipartition level does not match the charge")
    if shape_m is None:
        shape_m = s[0] - s[-1] + max(lam.size, 1)
    params = ParamKS(ell, lam.size, None, star_params(s), m_vec)
    return UpsilonLabels(params, lam.star(), tableau_of(lam, s, shape_m))
