"""c-functions, fake degrees and graded characters of standard modules."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterable

from .combinatorics import Multipartition, hooks, residue
from .laurent import Laurent
from .params import ParamKS
from .scalars import Scalar

__all__ = [
    "c_function",
    "fake_degree",
    "fd",
    "c_hat",
    "c_hat_closed",
    "GradedCharacter",
    "chhat_delta",
    "chsph_delta",
    "irrep_dimension",
    "divide_one_minus",
    "one_minus_product",
    "InternalInconsistency",
]


class InternalInconsistency(AssertionError):
    """Two formulas that must agree did not; this is an implementation bug."""


def _check_level(lam: Multipartition, p: ParamKS):
    if lam.level != p.ell:
        raise ValueError(f"multipartition has level {lam.level}, parameters have level {p.ell}")


def _res_sum(lam: Multipartition, p: ParamKS) -> Scalar:
    s = [p.s_at(j) for j in range(1, p.ell + 1)]
    total = p.scalar(0)
    for box in lam.boxes():
        total = total + residue(box, s)
    return total


def c_function(lam: Multipartition, p: ParamKS) -> Scalar:
    ell = p.ell
    n = lam.size
    _check_level(lam, p)
    k = p.k()
    weight = sum(r * lam[r - 1].size for r in range(1, ell))
    return (
        -weight
        + k * ell * _res_sum(lam, p)
        - k * n * p.s_bar()
        + n
        - Fraction(n * ell, 2)
    )


def _w(tau: Multipartition) -> int:
    return sum(r * tau[r - 1].size for r in range(1, tau.level))


def fd(tau: Multipartition) -> int:
    """Lowest degree of f_{tau*}: w(tau) + ell * sum n(tau^(r))."""
    return _w(tau) + tau.level * sum(c.n_stat() for c in tau)


def one_minus_product(degrees: Iterable[int], var: str = "q") -> Laurent:
    out = Laurent.const(1, var)
    for d in degrees:
        out = out * Laurent({0: 1, d: -1}, var)
    return out


def divide_one_minus(poly: Laurent, d: int) -> Laurent:
    """Exact quotient poly / (1 - x^d); raises if it is not a Laurent polynomial."""
    if poly.is_zero():
        return poly
    lo, hi = poly.min_degree(), poly.max_degree()
    q: dict[int, Fraction] = {}
    for k in range(lo, hi - d + 1):
        q[k] = poly.coeff(k) + q.get(k - d, Fraction(0))
    quotient = Laurent(q, poly.var)
    if quotient * Laurent({0: 1, d: -1}, poly.var) != poly:
        raise ValueError(f"{poly} is not divisible by 1 - {poly.var}^{d}")
    return quotient


def fake_degree(tau: Multipartition) -> Laurent:
    """f_{tau*}(q) for the given tau."""
    ell, n = tau.level, tau.size
    num = one_minus_product((i * ell for i in range(1, n + 1)))
    num = num.shift(_w(tau) + ell * sum(c.n_stat() for c in tau))
    for comp in tau:
        for h in hooks(comp):
            num = divide_one_minus(num, h * ell)
    return num


def c_hat_closed(lam: Multipartition, p: ParamKS) -> Scalar:
    ell, n = p.ell, lam.size
    k = p.k()
    return (
        k * ell * _res_sum(lam, p)
        + ell * sum(c.n_stat() for c in lam)
        - k * n * p.s_bar()
        + n
        - Fraction(n * ell, 2)
    )


def c_hat(lam: Multipartition, p: ParamKS) -> Scalar:
    """c_lam + fd(lam*), checked against the closed form.

    ``fd(lam)`` is the lowest degree of f_{lam*}, so it supplies fd(lam*).
    """
    value = c_function(lam, p) + fd(lam)
    closed = c_hat_closed(lam, p)
    if value != closed:
        raise InternalInconsistency(f"c-hat mismatch for {lam}: {value} vs {closed}")
    return value


def irrep_dimension(tau: Multipartition) -> int:
    """dim of the G_ell(n) irreducible: multinomial times hook-length counts."""
    n = tau.size
    out = factorial(n)
    for comp in tau:
        out //= prod(hooks(comp)) if comp else 1
    return out


@dataclass(frozen=True)
class _Term:
    gamma: Scalar
    num: Laurent
    den: tuple[int, ...]


class GradedCharacter:
    """Finite sum of q^gamma * num(q) / prod (1 - q^d)."""

    def __init__(self, terms: Iterable[tuple[Scalar, Laurent, Iterable[int]]] = ()):
        merged: dict[Scalar, tuple[Scalar, Laurent, Counter]] = {}
        order: list[Scalar] = []
        for gamma, num, den in terms:
            den_c = Counter(den)
            if gamma in merged:
                g0, n0, d0 = merged[gamma]
                if d0 == den_c:
                    merged[gamma] = (g0, n0 + num, d0)
                else:
                    lcm = d0 | den_c
                    a = one_minus_product((lcm - d0).elements())
                    b = one_minus_product((lcm - den_c).elements())
                    merged[gamma] = (g0, n0 * a + num * b, lcm)
            else:
                merged[gamma] = (gamma, num, den_c)
                order.append(gamma)
        self.terms = tuple(
            _Term(g, merged[g][1], tuple(sorted(merged[g][2].elements())))
            for g in order
            if not merged[g][1].is_zero()
        )

    def __add__(self, other: GradedCharacter) -> GradedCharacter:
        return GradedCharacter(
            [(t.gamma, t.num, t.den) for t in self.terms] + [(t.gamma, t.num, t.den) for t in other.terms]
        )

    def scale(self, c) -> GradedCharacter:
        return GradedCharacter([(t.gamma, t.num * c, t.den) for t in self.terms])

    def cosets(self) -> dict[tuple, tuple[Scalar, Laurent, Counter]]:
        """Group terms by gamma mod Z over a common denominator per coset.

        Returns ``{coset: (base_gamma, numerator, denominator multiset)}``
        where the coset's value is q^base * numerator / prod(1 - q^d).
        """
        groups: dict[tuple, list[_Term]] = {}
        for t in self.terms:
            groups.setdefault(t.gamma.coset_key(), []).append(t)
        out = {}
        for key, ts in groups.items():
            base = ts[0].gamma
            for t in ts[1:]:
                if (t.gamma - base).rational_value() < 0:
                    base = t.gamma
            lcm: Counter = Counter()
            for t in ts:
                lcm |= Counter(t.den)
            num = Laurent.zero("q")
            for t in ts:
                extra = lcm - Counter(t.den)
                shift = int((t.gamma - base).rational_value())
                num = num + (t.num * one_minus_product(extra.elements())).shift(shift)
            out[key] = (base, num, lcm)
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedCharacter):
            return NotImplemented
        a, b = self.cosets(), other.cosets()
        a = {k: v for k, v in a.items() if not v[1].is_zero()}
        b = {k: v for k, v in b.items() if not v[1].is_zero()}
        if a.keys() != b.keys():
            return False
        for key in a:
            ga, na, da = a[key]
            gb, nb, db = b[key]
            shift = int((gb - ga).rational_value())
            lhs = na * one_minus_product(db.elements())
            rhs = (nb * one_minus_product(da.elements())).shift(shift)
            if lhs != rhs:
                return False
        return True

    def to_json(self) -> list[dict]:
        return [{"gamma": str(t.gamma), "num": str(t.num), "den": list(t.den)} for t in self.terms]

    def __str__(self):
        return json.dumps(self.to_json(), separators=(",", ":"))


def chhat_delta(lam: Multipartition, p: ParamKS) -> GradedCharacter:
    ell = p.ell
    den = sorted((h * ell for comp in lam for h in hooks(comp)), reverse=True)
    return GradedCharacter([(c_hat(lam, p), Laurent.const(1, "q"), den)])


def chsph_delta(lam: Multipartition, p: ParamKS) -> GradedCharacter:
    """Spherical character with denominator degrees d_i = i * ell."""
    ell, n = p.ell, lam.size
    num = fake_degree(lam).shift(-fd(lam))
    den = [i * ell for i in range(1, n + 1)]
    return GradedCharacter([(c_hat(lam, p), num, den)])
