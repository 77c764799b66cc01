"""Exact rank, kernel and determinant over Q and Q(v), delegated to sympy's DomainMatrix."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ, Symbol
from sympy.polys.matrices import DomainMatrix

from .laurent import Laurent

__all__ = ["rank_q", "kernel_q", "det_q", "rank_v", "kernel_v", "V"]

V = Symbol("v")
_QQV = QQ.frac_field(V)


def _qq_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    data = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def rank_q(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _qq_matrix(rows, ncols).rank()


def kernel_q(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """A basis of {x : rows . x = 0} with Fraction entries."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _qq_matrix(rows, ncols).nullspace()
    out = []
    for vec in ns.to_Matrix().tolist():
        out.append([Fraction(int(x.p), int(x.q)) for x in vec])
    return out


def det_q(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    d = _qq_matrix(rows, n).det()
    return Fraction(int(d.numerator), int(d.denominator))


def _to_qqv(poly: Laurent, shift: int):
    # multiply by v^shift so every exponent is non-negative
    expr = 0
    for k, c in poly.coeffs.items():
        expr += QQ(c.numerator, c.denominator) * V ** (k + shift)
    return _QQV.from_sympy(expr) if expr != 0 else _QQV.zero


def _qqv_matrix(rows: Sequence[Sequence[Laurent]], ncols: int) -> DomainMatrix:
    data = []
    for row in rows:
        lo = min((p.min_degree() for p in row if not p.is_zero()), default=0)
        data.append([_to_qqv(p, -lo) for p in row])
    return DomainMatrix(data, (len(data), ncols), _QQV)


def rank_v(rows: Sequence[Sequence[Laurent]], ncols: int) -> int:
    """Rank over Q(v); rows are scaled by monomials first, which does not change it."""
    if not rows or ncols == 0:
        return 0
    return _qqv_matrix(rows, ncols).rank()


def kernel_v(rows: Sequence[Sequence[Laurent]], ncols: int):
    """Kernel basis over Q(v) as sympy expressions."""
    if ncols == 0:
        return []
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    ns = _qqv_matrix(rows, ncols).nullspace()
    return ns.to_Matrix().tolist()
