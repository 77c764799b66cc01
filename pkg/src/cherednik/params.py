"""Parameter coordinates (kappa, s) and the predicates defined on them."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .scalars import Scalar, as_fraction, parse_scalar

__all__ = [
    "ParamKS",
    "HParams",
    "SphericalResult",
    "PreconditionError",
    "eps_of",
    "eps_from_c",
    "c_of",
    "h_of",
    "sl_act",
    "is_spherical",
    "is_faithful",
    "is_faithful_h",
    "integral_difference",
    "param_classes",
    "dominant_reduce",
    "star_params",
    "hecke_params",
    "s_index",
]


class PreconditionError(ValueError):
    """An operation was called outside the parameter domain it is valid for."""


def s_index(j: int, ell: int) -> int:
    """Map any integer index to 1..ell with s_0 = s_ell (0-based position returned +1)."""
    r = j % ell
    return ell if r == 0 else r


@dataclass(frozen=True)
class ParamKS:
    """Parameters (kappa, s) for G_ell(n).

    ``kappa`` is ``None`` for a transcendental kappa, otherwise a Fraction.
    Entries of ``s`` are rationals or :class:`Scalar` values.  ``m`` is the
    optional integer vector with s~_r = s_r + m_r / kappa.
    """

    ell: int
    n: int
    kappa: Fraction | None
    s: tuple
    m: tuple | None = None

    def __post_init__(self):
        if self.ell < 1 or self.n < 0:
            raise ValueError("need ell >= 1 and n >= 0")
        if len(self.s) != self.ell:
            raise ValueError(f"charge has length {len(self.s)}, expected {self.ell}")
        if self.m is not None and len(self.m) != self.ell:
            raise ValueError(f"m has length {len(self.m)}, expected {self.ell}")
        if self.kappa is not None:
            object.__setattr__(self, "kappa", as_fraction(self.kappa))
        s = tuple(x if isinstance(x, Scalar) else as_fraction(x) for x in self.s)
        object.__setattr__(self, "s", s)
        if self.m is not None:
            object.__setattr__(self, "m", tuple(int(x) for x in self.m))

    @classmethod
    def symbolic(cls, s: Sequence, n: int = 0, m=None) -> ParamKS:
        return cls(len(s), n, None, tuple(s), None if m is None else tuple(m))

    @classmethod
    def from_config(cls, data: dict) -> ParamKS:
        """Build from the JSON config form ``{"l":2,"n":2,"kappa":"symbolic","s":[-1,0]}``."""
        ell = int(data["l"])
        kappa_raw = data.get("kappa", "symbolic")
        kappa = None if kappa_raw in (None, "symbolic") else as_fraction(str(kappa_raw))
        s = []
        for x in data["s"]:
            if isinstance(x, str) and any(ch in x for ch in "zk"):
                s.append(parse_scalar(x, ell, kappa))
            else:
                s.append(as_fraction(str(x)))
        m = data.get("m")
        return cls(ell, int(data.get("n", 0)), kappa, tuple(s), None if m is None else tuple(m))

    def to_config(self) -> dict:
        out = {
            "l": self.ell,
            "n": self.n,
            "kappa": "symbolic" if self.kappa is None else str(self.kappa),
            "s": [str(x) for x in self.s],
        }
        if self.m is not None:
            out["m"] = list(self.m)
        return out

    def __str__(self):
        return json.dumps(self.to_config(), separators=(",", ":"))

    # scalar helpers -------------------------------------------------------

    @property
    def is_symbolic(self) -> bool:
        return self.kappa is None

    def scalar(self, x) -> Scalar:
        if isinstance(x, Scalar):
            return Scalar.const(0, self.ell, self.kappa) + x
        return Scalar.const(as_fraction(x), self.ell, self.kappa)

    def k(self) -> Scalar:
        return Scalar.k(self.ell, self.kappa)

    def zeta(self, power: int = 1) -> Scalar:
        return Scalar.zeta(self.ell, power, self.kappa)

    def s_at(self, j: int) -> Scalar:
        """s_j with indices read modulo ell and s_0 = s_ell."""
        return self.scalar(self.s[s_index(j, self.ell) - 1])

    def s_bar(self) -> Scalar:
        return sum((self.s_at(j) for j in range(1, self.ell + 1)), self.scalar(0))

    def integer_charge(self) -> tuple[int, ...] | None:
        out = []
        for x in self.s:
            if isinstance(x, Scalar):
                if not x.is_integer():
                    return None
                x = x.rational_value()
            if as_fraction(x).denominator != 1:
                return None
            out.append(int(x))
        return tuple(out)


@dataclass(frozen=True)
class HParams:
    """h-coordinates: the value on the class H^k and h_{H,j} for j = 0..ell-1."""

    h_k: Scalar
    h: tuple


def eps_of(p: ParamKS, i: int) -> Scalar:
    """epsilon_i = kappa (s_i - s_{i-1}) for 1 <= i <= ell - 1."""
    if not 1 <= i <= p.ell - 1:
        raise IndexError(f"epsilon index {i} outside 1..{p.ell - 1}")
    return p.k() * (p.s_at(i) - p.s_at(i - 1))


def c_of(p: ParamKS) -> tuple[Scalar, ...]:
    """(c_0, c_1, ..., c_{ell-1})."""
    k = p.k()
    out = [-k]
    for i in range(1, p.ell):
        acc = p.scalar(0)
        for j in range(1, p.ell):
            acc = acc + (p.zeta(-i * j) - 1) * (p.s_at(j) - p.s_at(j - 1))
        out.append(-(1 + k * acc) / 2)
    return tuple(out)


def eps_from_c(p: ParamKS, c: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Reconstruct (epsilon_0, ..., epsilon_{ell-1}) from the c-coordinates."""
    ell = p.ell
    out = []
    for i in range(ell):
        acc = p.scalar(0)
        for j in range(1, ell):
            acc = acc + c[j] * p.zeta(i * j)
        e = (1 - 2 * acc) / ell
        if i == 0:
            e = e + c[0] - Fraction(1, 2)
        out.append(e)
    return tuple(out)


def h_of(p: ParamKS) -> HParams:
    k = p.k()
    h = tuple(k * p.s_at(j) - Fraction(j, p.ell) for j in range(p.ell))
    return HParams(h_k=k, h=h)


def sl_act(sigma: Sequence[int], p: ParamKS) -> ParamKS:
    """Permute s (and m) by sigma, given 0-based as new[sigma[i]] = old[i]."""
    if sorted(sigma) != list(range(p.ell)):
        raise ValueError(f"{sigma} is not a permutation of 0..{p.ell - 1}")
    s = [None] * p.ell
    m = None if p.m is None else [0] * p.ell
    for i, t in enumerate(sigma):
        s[t] = p.s[i]
        if m is not None:
            m[t] = p.m[i]
    return replace(p, s=tuple(s), m=None if m is None else tuple(m))


@dataclass(frozen=True)
class SphericalResult:
    spherical: bool
    family: str | None = None  # "kappa" or "hyperplane"
    certificate: dict = field(default_factory=dict)

    def __str__(self):
        if self.spherical:
            return "spherical"
        if self.family == "kappa":
            c = self.certificate
            return f"aspherical kappa={c['a']}/{c['b']}"
        c = self.certificate
        return f"aspherical u={c['u']} k={c['k']} m={c['m']}"


def _k_within_bound(k: int, u: int, m: int, n: int, ell: int) -> bool:
    # k <= u + (sqrt(n + m^2/4) - m/2 - 1) ell, decided exactly
    t = Fraction(k - u, ell) + Fraction(m, 2) + 1
    return t <= 0 or t * t <= n + Fraction(m * m, 4)


def is_spherical(p: ParamKS) -> SphericalResult:
    """Test membership in the aspherical hyperplanes; the first hit is the certificate.

    Search order is kappa = a/b first, then ascending (u, m, k).
    """
    ell, n = p.ell, p.n
    if p.kappa is not None:
        if p.kappa == 0:
            raise PreconditionError("kappa = 0 is excluded")
        kap = p.kappa
        if 0 < kap < 1 and kap.denominator <= n:
            return SphericalResult(False, "kappa", {"a": kap.numerator, "b": kap.denominator})
    k_sym = p.k()
    for u in range(ell):
        for m in range(1 - n, n):
            k_max = u + ell * (n + abs(m) + 1)
            for k in range(1, k_max + 1):
                if k % ell == 0 or not _k_within_bound(k, u, m, n, ell):
                    continue
                k_hat = u - ((u - k) % ell)
                rhs = k_sym * ell * (p.s_at(u - k) - p.s_at(u) - m)
                if rhs == (k - k_hat):
                    return SphericalResult(
                        False, "hyperplane", {"u": u, "k": k, "m": m, "k_hat": k_hat}
                    )
    return SphericalResult(True)


def _not_integer(x: Scalar) -> bool:
    return not x.is_integer()


def is_faithful(p: ParamKS) -> bool:
    """kappa not in 1/2 + Z and kappa (s_i - s_j) not in Z for all i != j."""
    k = p.k()
    if (k - Fraction(1, 2)).is_integer():
        return False
    for i, j in itertools.combinations(range(1, p.ell + 1), 2):
        if (k * (p.s_at(i) - p.s_at(j))).is_integer():
            return False
    return True


def is_faithful_h(h: HParams, e_h: Sequence[int]) -> bool:
    """The hyperplane-coordinate form: for each class H with e_H entries h_{H,0..e_H-1},
    h_{H,m} - h_{H,m'} - (m - m')/e_H is never an integer.

    ``e_h`` lists the orders of the hyperplane classes in the order (H^k, H).
    """
    classes = [(h_k_pair(h), 2), (h.h, len(h.h))]
    if len(e_h) != len(classes):
        raise ValueError(f"expected {len(classes)} class orders, got {len(e_h)}")
    for (vals, order), e in zip(classes, e_h):
        if e != order:
            raise ValueError(f"class order {e} does not match {order} coordinates")
        for a, b in itertools.combinations(range(e), 2):
            if (vals[a] - vals[b] - Fraction(a - b, e)).is_integer():
                return False
    return True


def h_k_pair(h: HParams) -> tuple[Scalar, Scalar]:
    """(h_{H^k,0}, h_{H^k,1}) = (kappa, 0)."""
    return (h.h_k, h.h_k - h.h_k)


def integral_difference(p: ParamKS, q: ParamKS) -> bool:
    """kappa' - kappa in Z and all (kappa' s'_i - kappa s_i) agree modulo Z."""
    if p.is_symbolic != q.is_symbolic or p.ell != q.ell:
        raise ValueError("integral_difference needs parameters of the same kind and level")
    dk = q.k() - p.k()
    if not dk.is_integer():
        return False
    diffs = [q.k() * q.s_at(j) - p.k() * p.s_at(j) for j in range(1, p.ell + 1)]
    return all((d - diffs[0]).is_integer() for d in diffs[1:])


def param_classes(kappa: Scalar, pairs: Sequence[tuple]) -> tuple[list[list[int]], list[dict]]:
    """Split {1..ell} into classes of r with kappa (s~_r - s~_r' - a) in Z for some integer a.

    ``pairs`` holds (s_r, m_r) with s~_r = s_r + m_r / kappa.  Returns the classes
    (1-based, sorted) and, per class, the member data with the shifts a
    relative to the class representative.
    """
    if kappa.is_rational():
        raise PreconditionError("equivalence classes need a transcendental kappa")
    ell = len(pairs)
    s_t = [
        kappa.like(as_fraction(s) if not isinstance(s, Scalar) else s) + kappa.like(as_fraction(m)) / kappa
        for s, m in pairs
    ]

    def shift(r: int, t: int):
        x = kappa * (s_t[r] - s_t[t])
        # x = c1 kappa + c0 must have c1, c0 integral; then a = c1 works
        rest = {key: c for key, c in x.terms.items() if key not in ((1, 0), (0, 0))}
        if rest:
            return None
        c1 = x.terms.get((1, 0), Fraction(0))
        c0 = x.terms.get((0, 0), Fraction(0))
        if c1.denominator != 1 or c0.denominator != 1:
            return None
        return int(c1)

    classes: list[list[int]] = []
    info: list[dict] = []
    for r in range(ell):
        for cls, data in zip(classes, info):
            a = shift(r, cls[0] - 1)
            if a is not None:
                cls.append(r + 1)
                data["shifts"][r + 1] = a
                break
        else:
            classes.append([r + 1])
            info.append({"representative": r + 1, "shifts": {r + 1: 0}})
    return classes, info


def dominant_reduce(m: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Minimal-length w with w(m) satisfying m_ell >= m_1 >= ... >= m_{ell-1}.

    Returns ``(w, wm)`` where ``w`` is 0-based with ``wm[w[i]] = m[i]``.
    Target slots are filled in the order ell, 1, ..., ell-1 with values in
    decreasing order; ties keep their original relative order.
    """
    ell = len(m)
    slots = [ell - 1] + list(range(ell - 1))
    order = sorted(range(ell), key=lambda i: (-m[i], i))
    w = [0] * ell
    wm = [0] * ell
    for slot, i in zip(slots, order):
        w[i] = slot
        wm[slot] = m[i]
    return tuple(w), tuple(wm)


def star_params(s: Sequence) -> tuple:
    """s* = (-s_{ell-1}, ..., -s_1, -s_ell)."""
    ell = len(s)
    return tuple(-s[ell - 1 - j] for j in range(1, ell)) + (-s[ell - 1],)


def hecke_params(p: ParamKS) -> dict:
    """Descriptive record of the Hecke specialisation; no algebra elements are built."""
    degenerate = p.kappa is not None and p.kappa.denominator == 1
    if degenerate:
        q_desc = "1"
        big_q = [str(x) for x in p.s]
    else:
        q_desc = "exp(2*pi*i*k)"
        big_q = [f"q^({x})" for x in p.s]
    return {
        "q": q_desc,
        "Q": big_q,
        "degenerate": degenerate,
        "sigma_charge": [str(x) for x in star_params(p.s)],
    }
