"""Independent construction of the dual canonical basis via tensor space and
Kazhdan-Lusztig polynomials.  Used only for cross-validation at small scale.

V has basis u_k (k in Z) with F_i u_i = u_{i+1}, E_i u_{i+1} = u_i.  The
Hecke algebra of S_r acts on V^{(x) r} on the right, commuting with U_v(gl),
and the bar involution of V^{(x) r} is psi(M_{f0} h) = M_{f0} hbar for weakly
decreasing f0.  A level-one Fock space truncated below index ``lo`` is a
q-wedge inside V^{(x) N}, and F(Lambda_s) sits inside V^{(x) r} as a tensor
product of such wedges.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .combinatorics import Multipartition, residue
from .fock import FockVector
from .laurent import Laurent

__all__ = [
    "TensorVector",
    "tensor_E",
    "tensor_F",
    "hecke_apply",
    "hecke_inverse_apply",
    "psi",
    "psi_vector",
    "kl_basis_element",
    "kl_polynomial",
    "dual_canonical_closed_form",
    "dual_canonical_solve",
    "dual_canonical_parabolic",
    "FockEmbedding",
    "ResourceLimit",
    "OracleComparison",
    "compare_with_fock",
]

MAX_RANK = 12

_ONE = Laurent.const(1)
_V = Laurent.monomial(1)
_VINV = Laurent.monomial(-1)
_GAP = _VINV - _V

Seq = tuple  # a tensor index sequence f: positions -> integers
TensorVector = dict  # Seq -> Laurent


class ResourceLimit(RuntimeError):
    """The oracle is only meant for tensor rank <= MAX_RANK."""


def _add(d: dict, key, c: Laurent):
    if c.is_zero():
        return
    x = d.get(key)
    x = c if x is None else x + c
    if x.is_zero():
        d.pop(key, None)
    else:
        d[key] = x


def _scale(vec: Mapping, c: Laurent) -> TensorVector:
    out: TensorVector = {}
    for f, x in vec.items():
        _add(out, f, x * c)
    return out


def _plus(a: Mapping, b: Mapping) -> TensorVector:
    out = dict(a)
    for f, x in b.items():
        _add(out, f, x)
    return out


def _k_exp(i: int, k: int) -> int:
    return (k == i) - (k == i + 1)


def tensor_F(i: int, vec: Mapping) -> TensorVector:
    """Delta(F) = F (x) 1 + K^{-1} (x) F, iterated."""
    out: TensorVector = {}
    for f, c in vec.items():
        shift = 0
        for p, k in enumerate(f):
            if k == i:
                g = f[:p] + (i + 1,) + f[p + 1 :]
                _add(out, g, c.shift(-shift))
            shift += _k_exp(i, k)
    return out


def tensor_E(i: int, vec: Mapping) -> TensorVector:
    """Delta(E) = E (x) K + 1 (x) E, iterated."""
    out: TensorVector = {}
    for f, c in vec.items():
        r = len(f)
        after = [0] * (r + 1)
        for p in range(r - 1, -1, -1):
            after[p] = after[p + 1] + _k_exp(i, f[p])
        for p, k in enumerate(f):
            if k == i + 1:
                g = f[:p] + (i,) + f[p + 1 :]
                _add(out, g, c.shift(after[p + 1]))
    return out


def hecke_apply(k: int, vec: Mapping) -> TensorVector:
    """Right action of H_{s_k} (0-based k swaps positions k, k+1).

    (H - v^{-1})(H + v) = 0.
    """
    out: TensorVector = {}
    for f, c in vec.items():
        a, b = f[k], f[k + 1]
        g = f[:k] + (b, a) + f[k + 2 :]
        if a == b:
            _add(out, f, c * _VINV)
        elif a > b:
            _add(out, g, c)
        else:
            _add(out, g, c)
            _add(out, f, c * _GAP)
    return out


def hecke_inverse_apply(k: int, vec: Mapping) -> TensorVector:
    """H_{s_k}^{-1} = H_{s_k} - (v^{-1} - v)."""
    return _plus(hecke_apply(k, vec), _scale(vec, -_GAP))


def _check_rank(r: int):
    if r > MAX_RANK:
        raise ResourceLimit(f"tensor rank {r} exceeds {MAX_RANK}")


@lru_cache(maxsize=None)
def psi(f: Seq) -> tuple:
    """psi(M_f) as a sorted tuple of (sequence, coefficient).

    M_g = M_{g s_k} H_{s_k}^{-1} whenever g_k > g_{k+1}, so sorting f upwards
    writes M_f = M_{f0} h with f0 weakly increasing, and psi(M_f) = M_{f0} hbar.
    """
    _check_rank(len(f))
    word = []
    g = list(f)
    while True:
        for k in range(len(g) - 1):
            if g[k] > g[k + 1]:
                g[k], g[k + 1] = g[k + 1], g[k]
                word.append(k)
                break
        else:
            break
    vec: TensorVector = {tuple(g): _ONE}
    for k in reversed(word):
        vec = hecke_apply(k, vec)
    return tuple(sorted(vec.items()))


def psi_vector(vec: Mapping) -> TensorVector:
    out: TensorVector = {}
    for f, c in vec.items():
        cb = c.bar()
        for g, x in psi(f):
            _add(out, g, x * cb)
    return out


# Kazhdan-Lusztig basis of the Hecke algebra of S_r --------------------------------

Perm = tuple  # one-line notation p with (f . p)[j] = f[p[j]]


def _compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[b[j]] for j in range(len(a)))


def _length(p: Perm) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def _simple(k: int, r: int) -> Perm:
    p = list(range(r))
    p[k], p[k + 1] = p[k + 1], p[k]
    return tuple(p)


def _left_mult_H(k: int, elem: Mapping[Perm, Laurent]) -> dict:
    """H_{s_k} * sum c_y H_y, where s_k is composed on the left."""
    out: dict = {}
    for y, c in elem.items():
        sy = _compose(_simple(k, len(y)), y)
        _add(out, sy, c)
        if _length(sy) < _length(y):
            _add(out, y, c * _GAP)
    return out


@lru_cache(maxsize=None)
def _kl_element(w: Perm) -> tuple:
    r = len(w)
    if _length(w) == 0:
        return ((w, _ONE),)
    for k in range(r - 1):
        s = _simple(k, r)
        w1 = _compose(s, w)
        if _length(w1) < _length(w):
            break
    prev = dict(_kl_element(w1))
    # C_s C_{w1} with C_s = H_s + v
    elem = _plus(_left_mult_H(k, prev), _scale(prev, _V))
    for y in sorted(elem, key=_length, reverse=True):
        if y == w or y not in elem:
            continue
        c0 = elem[y].coeff(0)
        if c0:
            elem = _plus(elem, _scale(dict(_kl_element(y)), Laurent.const(-c0)))
    return tuple(sorted(elem.items()))


def kl_basis_element(w: Sequence[int]) -> dict:
    """Soergel-normalized C_w = H_w + sum_{y<w} h_{y,w} H_y with h_{y,w} in vZ[v]."""
    w = tuple(w)
    _check_rank(len(w))
    return dict(_kl_element(w))


def kl_polynomial(y: Sequence[int], w: Sequence[int]) -> Laurent:
    """Classical P_{y,w}(q), recovered from h_{y,w} = v^{l(w)-l(y)} P_{y,w}(v^{-2})."""
    y, w = tuple(y), tuple(w)
    h = kl_basis_element(w).get(y, Laurent.zero())
    if h.is_zero():
        return Laurent.zero("q")
    d = _length(w) - _length(y)
    coeffs = {}
    for k, c in h.coeffs.items():
        e = d - k
        if e % 2:
            raise ArithmeticError("KL element has wrong parity")
        coeffs[e // 2] = c
    return Laurent(coeffs, "q")


# dual canonical basis of a weight space of V^{(x) r} -------------------------------


def _word_to(f0: Seq, f: Seq) -> Perm:
    """Shortest p with f0 . p = f."""
    r = len(f)
    used = [False] * r
    p = []
    for j in range(r):
        for t in range(r):
            if not used[t] and f0[t] == f[j]:
                used[t] = True
                p.append(t)
                break
    return tuple(p)


def _apply_perm_hecke(f0: Seq, elem: Mapping[Perm, Laurent]) -> TensorVector:
    out: TensorVector = {}
    for y, c in elem.items():
        vec: TensorVector = {f0: c}
        for k in _reduced_word(y):
            vec = hecke_apply(k, vec)
        out = _plus(out, vec)
    return out


def _reduced_word(p: Perm) -> list[int]:
    """k_1, ..., k_m with H_p = H_{s_{k_1}} ... H_{s_{k_m}}."""
    word = []
    q = list(p)
    # peel right descents: p = p' s_k with l(p') < l(p) iff p[k] > p[k+1]
    while True:
        for k in range(len(q) - 1):
            if q[k] > q[k + 1]:
                q[k], q[k + 1] = q[k + 1], q[k]
                word.append(k)
                break
        else:
            break
    return list(reversed(word))


def dual_canonical_closed_form(f: Seq) -> TensorVector:
    """L_f for f with distinct entries, from Kazhdan-Lusztig elements.

    Writing f = f0 . x with f0 increasing, the coefficient of M_{f0 . y} is
    (-1)^{l(x)+l(y)} h_{y,x}.
    """
    f = tuple(f)
    r = len(f)
    _check_rank(r)
    if len(set(f)) != r:
        raise ValueError("the closed form needs distinct entries")
    f0 = tuple(sorted(f))
    x = _word_to(f0, f)
    out: TensorVector = {}
    for y, h in kl_basis_element(x).items():
        sign = -1 if (_length(x) + _length(y)) % 2 else 1
        _add(out, tuple(f0[y[j]] for j in range(r)), h * sign)
    return out


def _inversions(g: Seq) -> int:
    return sum(1 for i in range(len(g)) for j in range(i + 1, len(g)) if g[i] > g[j])


def _phi_cs(k: int, vec: Mapping) -> TensorVector:
    """Right action of the bar-invariant element H_s^{-1} - v."""
    return _plus(hecke_inverse_apply(k, vec), _scale(vec, -_V))


@lru_cache(maxsize=None)
def _parabolic(f: Seq) -> tuple:
    r = len(f)
    for k in range(r - 1):
        if f[k] > f[k + 1]:
            break
    else:
        return ((f, _ONE),)
    g = f[:k] + (f[k + 1], f[k]) + f[k + 2 :]
    vec = _phi_cs(k, dict(_parabolic(g)))
    # strip the constant terms below the top so that vec lies in M_f + vZ[v]
    while True:
        lows = [h for h, c in vec.items() if h != f and c.coeff(0)]
        if not lows:
            break
        h = max(lows, key=lambda x: (_inversions(x), x))
        c0 = vec[h].coeff(0)
        vec = _plus(vec, _scale(dict(_parabolic(h)), Laurent.const(-c0)))
    if vec.get(f) != _ONE or any(c.min_degree() < 0 or (h != f and c.coeff(0)) for h, c in vec.items()):
        raise ArithmeticError(f"parabolic recursion left the lattice at {f}")
    return tuple(sorted(vec.items()))


def dual_canonical_parabolic(f: Seq, max_rank: int = 10) -> TensorVector:
    """L_f for any f by the parabolic Kazhdan-Lusztig recursion.

    With H' = H^{-1}, M_{f s} = M_f H'_s on ascents, stabilizers of f0 act on
    M_{f0} by v, and H'_s - v is bar-invariant.  So the weight space of f is a
    sign-type parabolic module and L_{f s} = L_f (H'_s - v) minus lower L_g
    with mu-coefficients.
    """
    f = tuple(f)
    if len(f) > max_rank:
        raise ResourceLimit(f"tensor rank {len(f)} exceeds {max_rank}")
    return dict(_parabolic(f))


def dual_canonical_solve(f: Seq) -> TensorVector:
    """Same element from psi by a triangular solve over the weight space."""
    f = tuple(f)
    _check_rank(len(f))
    space = sorted(set(permutations(f)))
    A = {g: dict(psi(g)) for g in space}
    below: dict[Seq, set] = {}

    def down(g):
        if g not in below:
            acc = set()
            for h in A[g]:
                if h != g:
                    acc.add(h)
                    acc |= down(h)
            below[g] = acc
        return below[g]

    support = down(f)
    order = sorted(support, key=lambda g: len(down(g)), reverse=True)
    P: dict[Seq, Laurent] = {f: _ONE}
    for g in order:
        r = Laurent.zero()
        for h, ph in P.items():
            a = A[h].get(g)
            if a is not None:
                r = r + a * ph.bar()
        part = r.positive_part()
        if not part.is_zero():
            P[g] = part
    return P


# embedding of the Fock space ---------------------------------------------------------


class FockEmbedding:
    """F(Lambda_s) in degree <= n as a tensor product of truncated q-wedges.

    Indices below ``lo`` are frozen, so only E_i, F_i with i >= lo are compatible.
    """

    def __init__(self, s: Sequence[int], lo: int):
        self.s = tuple(int(x) for x in s)
        self.lo = lo
        # a factor whose charge is below lo is entirely frozen
        self.sizes = tuple(max(0, sj - lo + 1) for sj in self.s)
        _check_rank(sum(self.sizes))
        self._vac = [self._vacuum(N, sj) for N, sj in zip(self.sizes, self.s)]

    @staticmethod
    def _vacuum(N: int, top: int) -> TensorVector:
        base = tuple(range(top, top - N, -1))
        out: TensorVector = {}
        for p in permutations(range(N)):
            g = tuple(base[t] for t in p)
            out[g] = Laurent.monomial(_length(p), (-1) ** _length(p))
        return out

    def level_one(self, j: int, part) -> TensorVector:
        vec = self._vac[j]
        sj = self.s[j]
        cells = [(a, b) for a, row in enumerate(part, start=1) for b in range(1, row + 1)]
        cells.sort()
        for a, b in cells:
            if a > self.sizes[j]:
                raise ValueError("partition has more rows than the truncation allows")
            vec = tensor_F(sj + b - a, vec)
        return vec

    def basis(self, lam: Multipartition) -> TensorVector:
        out: TensorVector = {(): _ONE}
        for j, part in enumerate(lam):
            piece = self.level_one(j, part)
            nxt: TensorVector = {}
            for f, c in out.items():
                for g, d in piece.items():
                    _add(nxt, f + g, c * d)
            out = nxt
        return out

    def vector(self, x: FockVector) -> TensorVector:
        out: TensorVector = {}
        for lam, c in x.terms.items():
            out = _plus(out, _scale(self.basis(lam), c))
        return out


@dataclass
class OracleComparison:
    s: tuple[int, ...]
    n: int
    checked: int
    mismatches: list[Multipartition]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_with_fock(n: int, s: Sequence[int], max_rank: int = MAX_RANK) -> OracleComparison:
    """Embed every dual canonical L_lam of degree n and compare with the tensor-space basis."""
    from .canonical import canonical_block
    from .combinatorics import residue_multiset
    from .fock import weight_blocks

    s = tuple(int(x) for x in s)
    bad: list[Multipartition] = []
    checked = 0
    for block in weight_blocks(n, s):
        lo = min(min(residue_multiset(lam, s), default=0) for lam in block)
        emb = FockEmbedding(s, lo)
        L = canonical_block(block, s)
        for lam in block:
            image = emb.vector(L[lam])
            lead = [f for f, c in image.items() if c.coeff(0)]
            checked += 1
            if len(lead) != 1 or dual_canonical_parabolic(lead[0], max_rank) != image:
                bad.append(lam)
    return OracleComparison(s, n, checked, bad)
