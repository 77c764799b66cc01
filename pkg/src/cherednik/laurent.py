"""Sparse Laurent polynomials with rational coefficients in one variable."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = ["Laurent"]


class Laurent:
    """Immutable sum of c_k x^k, stored as ``{k: c}`` without zero coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Mapping[int, object] | None = None, var: str = "v"):
        clean = {}
        for k, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[int(k)] = c
        self.coeffs = dict(sorted(clean.items()))
        self.var = var

    @classmethod
    def const(cls, c, var: str = "v") -> Laurent:
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "v") -> Laurent:
        return cls({k: c}, var)

    @classmethod
    def zero(cls, var: str = "v") -> Laurent:
        return cls({}, var)

    def _coerce(self, other) -> Laurent:
        if isinstance(other, Laurent):
            return other
        return Laurent({0: other}, self.var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return Laurent(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -c for k, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, Fraction] = {}
        for a, c in self.coeffs.items():
            for b, d in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + c * d
        return Laurent(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self.coeffs.items()
            return Laurent({-k * -e: Fraction(1) / c ** -e}, self.var)
        out = Laurent.const(1, self.var)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, k: int) -> Laurent:
        """Multiply by x^k."""
        return Laurent({e + k: c for e, c in self.coeffs.items()}, self.var)

    def bar(self) -> Laurent:
        """x -> 1/x."""
        return Laurent({-e: c for e, c in self.coeffs.items()}, self.var)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def coeff(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def min_degree(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def max_degree(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def positive_part(self) -> Laurent:
        return Laurent({k: c for k, c in self.coeffs.items() if k > 0}, self.var)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        if x == 0 and any(k < 0 for k in self.coeffs):
            raise ZeroDivisionError("negative power at zero")
        return sum((c * x ** k for k, c in self.coeffs.items()), Fraction(0))

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for k, c in self.coeffs.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not out:
                out = ("-" if sign == "-" else "") + body
            else:
                out += sign + body
        return out

    def __repr__(self):
        return f"Laurent('{self}')"

    @classmethod
    def parse(cls, text: str, var: str = "v") -> Laurent:
        """Inverse of ``str``: sums like ``2*v^-1+v-3/2``."""
        src = text.replace(" ", "").replace("^-", "^~")
        if not src:
            raise ValueError("empty polynomial")
        out: dict[int, Fraction] = {}
        pos = 0
        for m in re.finditer(r"([+-]?)([^+-]+)", src):
            if m.start() != pos:
                raise ValueError(f"cannot parse {text!r}")
            pos = m.end()
            sign, body = m.groups()
            coeff = Fraction(-1 if sign == "-" else 1)
            k = 0
            for factor in body.split("*"):
                factor = factor.replace("~", "-")
                if factor.startswith(var):
                    _, _, e = factor.partition("^")
                    k += int(e) if e else 1
                else:
                    coeff *= Fraction(factor)
            out[k] = out.get(k, 0) + coeff
        if pos != len(src):
            raise ValueError(f"cannot parse {text!r}")
        return cls(out, var)


def lsum(items: Iterable[Laurent], var: str = "v") -> Laurent:
    out = Laurent.zero(var)
    for x in items:
        out = out + x
    return out
