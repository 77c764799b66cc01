"""Exact arithmetic in Q(zeta_l)[k, 1/k].

``k`` is either a formal indeterminate (transcendental kappa) or a fixed
rational number, in which case every value collapses into Q(zeta_l).
Cyclotomic parts are kept as polynomials in ``z`` of degree below phi(l),
reduced modulo the l-th cyclotomic polynomial.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = ["Scalar", "cyclotomic_poly", "as_fraction", "parse_scalar"]

Number = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Scalar):
        return x.rational_value()
    raise TypeError(f"cannot read {x!r} as an exact rational")


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_poly(d)))
    # exact division of monic integer polynomials
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        for j, b in enumerate(den):
            num[k + j] -= c * b
    assert not any(num), "cyclotomic division left a remainder"
    return tuple(out)


@lru_cache(maxsize=None)
def _zeta_powers(ell: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced coordinates of z^a for a = 0..ell-1 in the power basis."""
    phi = cyclotomic_poly(ell)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(ell):
        rows.append(tuple(cur))
        # multiply by z and reduce with z^deg = -sum phi_i z^i
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


class Scalar:
    """An element of Q(zeta_ell)[k, 1/k] in one of two kappa modes.

    ``kappa`` is ``None`` for the symbolic mode, otherwise the fixed rational
    value of k.  ``terms`` maps ``(k_power, z_power)`` to a nonzero Fraction.
    """

    __slots__ = ("ell", "kappa", "terms")

    def __init__(self, terms=None, ell: int = 1, kappa: Fraction | None = None):
        self.ell = ell
        self.kappa = None if kappa is None else as_fraction(kappa)
        self.terms = self._normalize(terms or {})

    # construction ---------------------------------------------------------

    def _normalize(self, raw: dict) -> dict:
        basis = _zeta_powers(self.ell)
        acc: dict[tuple[int, int], Fraction] = {}
        for (j, a), c in raw.items():
            c = as_fraction(c)
            if not c:
                continue
            if self.kappa is not None and j != 0:
                c *= self.kappa ** j
                j = 0
            for e, coord in enumerate(basis[a % self.ell]):
                if coord:
                    acc[(j, e)] = acc.get((j, e), Fraction(0)) + c * coord
        return {k: v for k, v in sorted(acc.items()) if v}

    @classmethod
    def _raw(cls, terms: dict, ell: int, kappa) -> Scalar:
        obj = cls.__new__(cls)
        obj.ell, obj.kappa, obj.terms = ell, kappa, terms
        return obj

    @classmethod
    def const(cls, x: Number, ell: int = 1, kappa=None) -> Scalar:
        return cls({(0, 0): x}, ell, kappa)

    @classmethod
    def k(cls, ell: int = 1, kappa=None, power: int = 1) -> Scalar:
        """The parameter kappa itself (or a power of it)."""
        if kappa is not None and as_fraction(kappa) == 0 and power < 0:
            raise ZeroDivisionError("kappa = 0 has no inverse")
        return cls({(power, 0): 1}, ell, kappa)

    @classmethod
    def zeta(cls, ell: int, power: int = 1, kappa=None) -> Scalar:
        return cls({(0, power % ell): 1}, ell, kappa)

    def like(self, x) -> Scalar:
        """Coerce ``x`` into this scalar's ring."""
        if isinstance(x, Scalar):
            if (x.ell, x.kappa) != (self.ell, self.kappa):
                if x.is_rational():
                    return Scalar.const(x.rational_value(), self.ell, self.kappa)
                if self.is_rational():
                    return x
                raise ValueError(
                    f"incompatible scalar rings: (l={self.ell}, k={self.kappa}) vs (l={x.ell}, k={x.kappa})"
                )
            return x
        return Scalar.const(as_fraction(x), self.ell, self.kappa)

    # predicates -------------------------------------------------------------

    @property
    def symbolic(self) -> bool:
        return self.kappa is None

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(key == (0, 0) for key in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        return self.terms.get((0, 0), Fraction(0))

    def is_integer(self) -> bool:
        return self.is_rational() and self.rational_value().denominator == 1

    def kappa_coefficient(self, j: int) -> Scalar:
        """The Q(zeta)-coefficient of k^j (symbolic mode)."""
        return Scalar._raw(
            {(0, a): c for (jj, a), c in self.terms.items() if jj == j}, self.ell, self.kappa
        )

    def coset_key(self) -> tuple:
        """Hashable representative of ``self`` modulo the integers."""
        items = []
        for key, c in self.terms.items():
            if key == (0, 0):
                c = c - math.floor(c)
                if not c:
                    continue
            items.append((key, c))
        return tuple(items)

    def integer_offset(self, other: Scalar) -> int:
        """The integer ``self - other``; raises if the difference is not integral."""
        d = self - other
        if not d.is_integer():
            raise ValueError(f"{self} - {other} is not an integer")
        return int(d.rational_value())

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self.like(other)
        ell, kappa = (self.ell, self.kappa) if not self.is_rational() else (other.ell, other.kappa)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return Scalar._raw({k: v for k, v in sorted(out.items()) if v}, ell, kappa)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: -v for k, v in self.terms.items()}, self.ell, self.kappa)

    def __sub__(self, other):
        return self + (-self.like(other))

    def __rsub__(self, other):
        return self.like(other) - self

    def __mul__(self, other):
        other = self.like(other)
        ell = self.ell if not self.is_rational() else other.ell
        kappa = self.kappa if not self.is_rational() else other.kappa
        if ell != self.ell or ell != other.ell:
            ell = max(self.ell, other.ell)
        raw: dict[tuple[int, int], Fraction] = {}
        for (j1, a1), c1 in self.terms.items():
            for (j2, a2), c2 in other.terms.items():
                key = (j1 + j2, a1 + a2)
                raw[key] = raw.get(key, Fraction(0)) + c1 * c2
        return Scalar(raw, ell, kappa)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            f = Fraction(1) / as_fraction(other)
            return Scalar._raw({k: v * f for k, v in self.terms.items()}, self.ell, self.kappa)
        other = self.like(other)
        if len(other.terms) == 1:
            ((j, a), c), = other.terms.items()
            if a == 0:
                return self * Scalar({(-j, 0): 1 / c}, self.ell, self.kappa)
        if other.is_rational():
            return self / other.rational_value()
        raise ValueError(f"division by {other} is not supported")

    def __pow__(self, e: int):
        out = self.like(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.terms != other.terms:
            return False
        if self.is_rational():
            return True
        return (self.ell, self.kappa) == (other.ell, other.kappa)

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        return hash(tuple(self.terms.items()))

    # formatting -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (j, a), c in self.terms.items():
            factors = []
            if a:
                factors.append("z" if a == 1 else f"z^{a}")
            if j:
                factors.append("k" if j == 1 else f"k^{j}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        mode = "symbolic" if self.kappa is None else f"k={self.kappa}"
        return f"Scalar('{self}', l={self.ell}, {mode})"


_TERM = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_scalar(text: str, ell: int = 1, kappa=None) -> Scalar:
    """Parse sums of ``r``, ``r*z^a``, ``r*k^b``, ``r*z^a*k^b`` (e.g. ``-1/2 + 3*k^-1``)."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty scalar")
    # protect negative exponents from the sign split
    src = src.replace("^-", "^~")
    raw: dict[tuple[int, int], Fraction] = {}
    pos = 0
    for match in _TERM.finditer(src):
        if match.start() != pos:
            raise ValueError(f"cannot parse scalar {text!r}")
        pos = match.end()
        sign, body = match.groups()
        coeff = Fraction(-1 if sign == "-" else 1)
        j = a = 0
        for factor in body.split("*"):
            factor = factor.replace("~", "-")
            if not factor:
                raise ValueError(f"cannot parse scalar {text!r}")
            if factor[0] in "zk":
                base, _, exp = factor.partition("^")
                e = int(exp) if exp else 1
                if base == "z":
                    a += e
                elif base == "k":
                    j += e
                else:
                    raise ValueError(f"unknown symbol {base!r} in {text!r}")
            else:
                coeff *= Fraction(factor)
        key = (j, a % ell)
        raw[key] = raw.get(key, Fraction(0)) + coeff
    if pos != len(src):
        raise ValueError(f"cannot parse scalar {text!r}")
    return Scalar(raw, ell, kappa)
