"""Bar involution, dual canonical basis and the d-matrix on F(Lambda_s).

The bar involution is built through the tensor decomposition
F(Lambda_s) = F(Lambda_{s_1}) (x) F(Lambda_{s_2}, ..., Lambda_{s_ell}).
With the coproduct that reproduces the Fock action,
Delta(F_i) = F_i (x) 1 + K_i^{-1} (x) F_i, the quasi-R-matrix lies in
U^+ (x) U^-, so it fixes M_empty (x) R.  Peeling the lowest box of the first
component gives

    M_lam = F_i (M_x (x) R) - v^{-d_i(x)} M_x (x) F_i R,

and hence a recursion for bar that only uses bar-linearity and F-equivariance.
On a single level-one factor every weight space is a line, so bar is trivial.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combinatorics import (
    DEFAULT_ENUMERATION_CAP,
    Box,
    Multipartition,
    dominates,
    enumerate_multipartitions,
    residue_multiset,
)
from .fock import FockSpace, FockVector, weight_blocks
from .laurent import Laurent
from .linalg import det_q
from .params import ParamKS, PreconditionError

__all__ = [
    "bar",
    "bar_basis",
    "dominance_key",
    "DMatrix",
    "dual_canonical",
    "canonical_block",
    "d_matrix",
    "RadicalEntry",
    "radical_table",
    "inner",
    "tau_E",
    "tau_F",
    "tau_E_literal",
    "singular_basis",
    "gram_singular",
    "NonConvergence",
]

_ONE = Laurent.const(1)


class NonConvergence(RuntimeError):
    """The triangular solve produced a vector that is not bar-invariant."""


def _int_charge(s: Sequence) -> tuple[int, ...]:
    out = []
    for x in s:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError("Fock charges must be integers")
        out.append(int(x))
    return tuple(out)


class _BarCache:
    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict[tuple, FockVector] = {}
        self._spaces: dict[tuple, FockSpace] = {}

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def space(self, s: tuple[int, ...]) -> FockSpace:
        with self._lock:
            if s not in self._spaces:
                self._spaces[s] = FockSpace(s)
            return self._spaces[s]


_CACHE = _BarCache()


def _prepend(x, rest: FockVector) -> FockVector:
    return FockVector({Multipartition((x,) + tuple(r)): c for r, c in rest.terms.items()})


def _antilinear(x: FockVector, s: tuple[int, ...]) -> FockVector:
    out = FockVector()
    for lam, c in x.terms.items():
        out = out + bar_basis(lam, s).scale(c.bar())
    return out


def bar_basis(lam: Multipartition, s: Sequence) -> FockVector:
    """bar(M_lam)."""
    s = _int_charge(s)
    if lam.level != len(s):
        raise ValueError(f"{lam} has level {lam.level}, charge has length {len(s)}")
    key = (s, lam)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    if len(s) == 1:
        return _CACHE.put(key, FockVector.basis(lam))
    x = lam[0]
    rest = Multipartition(lam[1:])
    if not x:
        value = _prepend(x, bar_basis(rest, s[1:]))
        return _CACHE.put(key, value)
    a = len(x)
    box = Box(a, x[-1], 1)
    i = s[0] + box.b - box.a
    smaller = lam.remove_box(box)
    head = smaller[0]
    full = _CACHE.space(s)
    first = full.F(i, bar_basis(smaller, s))
    d = _CACHE.space(s[:1]).d_i(Multipartition((head,)), i)
    moved = _prepend(head, _CACHE.space(s[1:]).F_basis(rest, i))
    second = _antilinear(moved, s).scale(Laurent.monomial(d))
    return _CACHE.put(key, first - second)


def bar(x: FockVector, s: Sequence) -> FockVector:
    """The bar involution: antilinear in v and determined on basis vectors."""
    return _antilinear(x, _int_charge(s))


def dominance_key(lam: Multipartition) -> tuple[int, ...]:
    """Rows of every component padded to |lam|; sorting by it extends dominance."""
    n = lam.size
    key: list[int] = []
    for comp in lam:
        rows = list(comp) + [0] * (n - len(comp))
        key.extend(rows)
    return tuple(key)


@dataclass
class DMatrix:
    """d_{mu,lam}(v) on one degree, stored per residue block."""

    n: int
    s: tuple[int, ...]
    blocks: list[list[Multipartition]]
    entries: dict[tuple[Multipartition, Multipartition], Laurent] = field(default_factory=dict)

    def __getitem__(self, key: tuple[Multipartition, Multipartition]) -> Laurent:
        return self.entries.get(key, Laurent.zero())

    def labels(self) -> list[Multipartition]:
        return [lam for block in self.blocks for lam in block]

    def to_json(self) -> list[dict]:
        out = []
        for block in self.blocks:
            members = set(block)
            out.append(
                {
                    "block": [lam.to_json() for lam in block],
                    "rows": len(block),
                    "entries": [
                        [mu.to_json(), lam.to_json(), str(c)]
                        for (mu, lam), c in sorted(
                            self.entries.items(), key=lambda kv: (str(kv[0][1]), str(kv[0][0]))
                        )
                        if lam in members
                    ],
                }
            )
        return out

    def __str__(self):
        return json.dumps(self.to_json(), separators=(",", ":"))


def _sorted_block(block: Sequence[Multipartition]) -> list[Multipartition]:
    return sorted(block, key=dominance_key, reverse=True)


def canonical_block(block: Sequence[Multipartition], s: Sequence) -> dict[Multipartition, FockVector]:
    """L_lam for every lam in one residue block."""
    s = _int_charge(s)
    order = _sorted_block(block)
    # A[nu][mu]: coefficient of M_nu in bar(M_mu)
    A = {mu: bar_basis(mu, s) for mu in order}
    out: dict[Multipartition, FockVector] = {}
    for j, lam in enumerate(order):
        P: dict[Multipartition, Laurent] = {lam: _ONE}
        for nu in order[j + 1 :]:
            if not dominates(lam, nu):
                continue
            r = Laurent.zero()
            for mu, p_mu in P.items():
                r = r + A[mu].coeff(nu) * p_mu.bar()
            P[nu] = r.positive_part()
        L = FockVector(P)
        if bar(L, s) != L:
            raise NonConvergence(f"L{lam} is not bar-invariant")
        out[lam] = L
    return out


def dual_canonical(lam: Multipartition, s: Sequence) -> FockVector:
    s = _int_charge(s)
    key = tuple(sorted(residue_multiset(lam, s).items()))
    block = [
        mu
        for mu in enumerate_multipartitions(lam.size, lam.level)
        if tuple(sorted(residue_multiset(mu, s).items())) == key
    ]
    return canonical_block(block, s)[lam]


def _invert_unitriangular(order, P):
    """Inverse of the matrix P[(row, col)] that is unitriangular w.r.t. ``order``."""
    inv: dict[tuple, Laurent] = {}
    for j, lam in enumerate(order):
        inv[(lam, lam)] = _ONE
        for k in range(j + 1, len(order)):
            mu = order[k]
            acc = Laurent.zero()
            for t in range(j, k):
                nu = order[t]
                x = inv.get((nu, lam))
                y = P.get((mu, nu))
                if x is not None and y is not None:
                    acc = acc + y * x
            if not acc.is_zero():
                inv[(mu, lam)] = -acc
    return inv


def d_matrix(n: int, s: Sequence, cap: int | None = DEFAULT_ENUMERATION_CAP) -> DMatrix:
    """M_lam = sum_mu d_{mu,lam}(v) L_mu."""
    s = _int_charge(s)
    blocks = [_sorted_block(b) for b in weight_blocks(n, s, cap)]
    out = DMatrix(n, s, blocks)
    for block in blocks:
        L = canonical_block(block, s)
        P = {(nu, lam): c for lam, vec in L.items() for nu, c in vec.terms.items()}
        for key, c in _invert_unitriangular(block, P).items():
            if not c.is_zero():
                out.entries[key] = c
    return out


@dataclass(frozen=True)
class RadicalEntry:
    lam_star: Multipartition
    mu_star: Multipartition
    layer: int
    multiplicity: int

    def to_json(self) -> dict:
        return {
            "lambda*": self.lam_star.to_json(),
            "mu*": self.mu_star.to_json(),
            "layer": self.layer,
            "multiplicity": self.multiplicity,
        }


def radical_table(n: int, p: ParamKS, cap: int | None = DEFAULT_ENUMERATION_CAP) -> list[RadicalEntry]:
    """[rad^j Delta(lam*) / rad^{j+1} : L(mu*)] read off the v^j coefficient of d_{mu,lam}."""
    from .crystal import check_theorem_domain

    check_theorem_domain(p)
    D = d_matrix(n, p.s, cap)
    rows = []
    for (mu, lam), c in D.entries.items():
        for j, mult in c.coeffs.items():
            if mult.denominator != 1 or j < 0:
                raise ValueError(f"d-matrix entry {c} is not in Z[v]")
            rows.append(RadicalEntry(lam.star(), mu.star(), j, int(mult)))
    rows.sort(key=lambda r: (str(r.lam_star), str(r.mu_star), r.layer))
    return rows


# inner product -----------------------------------------------------------------


def inner(x: FockVector, y: FockVector) -> Laurent:
    """<x, y>_v: bilinear, with the M-basis orthonormal."""
    acc = Laurent.zero()
    small, big = (x, y) if len(x.terms) <= len(y.terms) else (y, x)
    for lam, c in small.terms.items():
        d = big.terms.get(lam)
        if d is not None:
            acc = acc + c * d
    return acc


def tau_E(space: FockSpace, i: int, y: FockVector) -> FockVector:
    """Adjoint of E_i for <,>_v: v^{-1} F_i K_i."""
    return space.F(i, space.K(i, y)).scale(Laurent.monomial(-1))


def tau_F(space: FockSpace, i: int, y: FockVector) -> FockVector:
    """Adjoint of F_i for <,>_v: v K_i^{-1} E_i."""
    return space.K(i, space.E(i, y), -1).scale(Laurent.monomial(1))


def tau_E_literal(space: FockSpace, i: int, y: FockVector) -> FockVector:
    """v F_i K_i; kept to document that this normalization is not the adjoint."""
    return space.F(i, space.K(i, y)).scale(Laurent.monomial(1))


# singular subspace ---------------------------------------------------------------


def singular_basis(n: int, s: Sequence, cap: int | None = DEFAULT_ENUMERATION_CAP) -> list[FockVector]:
    """The L_lam with lam crystal-singular; their span is the joint kernel of the E_i
    when the crystal and quantum counts agree."""
    from .crystal import is_singular

    s = _int_charge(s)
    out = []
    for block in weight_blocks(n, s, cap):
        singular = [lam for lam in block if is_singular(lam, s)]
        if singular:
            L = canonical_block(block, s)
            out.extend(L[lam] for lam in _sorted_block(singular))
    return out


def _kernel_basis_v(n: int, s: tuple[int, ...], cap) -> list[FockVector]:
    from .linalg import kernel_v, V
    from sympy import Poly, fraction, together, lcm as sym_lcm

    space = FockSpace(s)
    out: list[FockVector] = []
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
        if not rows:
            basis = [[1 if a == b else 0 for b in range(len(block))] for a in range(len(block))]
        else:
            basis = kernel_v(rows, len(block))
        for vec in basis:
            exprs = [together(x) for x in vec]
            dens = [fraction(e)[1] for e in exprs]
            common = dens[0]
            for d in dens[1:]:
                common = sym_lcm(common, d)
            terms = {}
            for lam, e in zip(block, exprs):
                poly = Poly(together(e * common), V)
                coeffs = {}
                for (k,), c in poly.terms():
                    coeffs[k] = Fraction(int(c.p), int(c.q))
                if coeffs:
                    terms[lam] = Laurent(coeffs)
            out.append(FockVector(terms))
    return out


def gram_singular(
    n: int, s: Sequence, q, cap: int | None = DEFAULT_ENUMERATION_CAP
) -> Fraction:
    """det of <x_a, x_b>_v at v = q on a basis of the joint kernel of the E_i in degree n."""
    q = Fraction(q)
    if q == 0:
        raise PreconditionError("q must be non-zero")
    if q == -1:
        raise PreconditionError("q = -1 is a root of unity")
    s = _int_charge(s)
    basis = _kernel_basis_v(n, s, cap)
    rows = [[inner(x, y).evaluate(q) for y in basis] for x in basis]
    return det_q(rows)
