"""Invariant suites behind ``cherednik verify``.

Each suite is a function ``(max_n, rng) -> list[CheckResult]``; suites are
independent and deterministic for a given seed.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bridge import column_strict_tableaux, lambda_of, tableau_of, weight_tau
from .canonical import bar, bar_basis, d_matrix
from .characters import chhat_delta, chsph_delta, fake_degree, irrep_dimension
from .combinatorics import (
    Multipartition,
    count_multipartitions,
    dominates,
    enumerate_multipartitions,
    residue_multiset,
)
from .crystal import crystal, is_singular, residue_scan
from .fock import FockSpace, FockVector, singular_space_dim, verify_relations
from .kgroup import ind_matrix, joint_injectivity, recover_from_removals, removal_set, res_matrix
from .laurent import Laurent
from .params import ParamKS, is_spherical, sl_act

__all__ = ["CheckResult", "SUITES", "run_suites"]


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.suite}: {self.name}{extra}"


def _random_charge(rng: random.Random, ell: int, distinct: bool = False, lo: int = -3, hi: int = 3):
    if distinct:
        return tuple(rng.sample(range(lo, hi + 1), ell))
    return tuple(rng.randint(lo, hi) for _ in range(ell))


def _combinatorics(max_n: int, rng: random.Random) -> list[CheckResult]:
    out = []
    for ell in (1, 2, 3):
        for n in range(max_n + 1):
            labels = enumerate_multipartitions(n, ell)
            ok = len(labels) == count_multipartitions(n, ell) == len(set(labels))
            ok = ok and all(lam.star().star() == lam for lam in labels)
            out.append(CheckResult("combinatorics", f"enumeration and star, l={ell} n={n}", ok))
    return out


def _params(max_n: int, rng: random.Random) -> list[CheckResult]:
    bad = []
    for _ in range(40):
        ell = rng.randint(1, 3)
        n = rng.randint(1, max(1, max_n))
        kappa = rng.choice([None, Fraction(1, 2), Fraction(2, 3)])
        p = ParamKS(ell, n, kappa, _random_charge(rng, ell, lo=-4, hi=4))
        base = is_spherical(p).spherical
        for sigma in itertools.permutations(range(ell)):
            if is_spherical(sl_act(sigma, p)).spherical != base:
                bad.append(str(p))
    b2 = str(is_spherical(ParamKS.symbolic((-1, 0), 2)))
    return [
        CheckResult("params", "spherical locus is S_l-stable", not bad, ", ".join(bad[:3])),
        CheckResult("params", "B2 vector s=(-1,0)", b2 == "aspherical u=1 k=1 m=1", b2),
    ]


def _characters(max_n: int, rng: random.Random) -> list[CheckResult]:
    out = []
    for ell in (1, 2, 3):
        s = _random_charge(rng, ell, distinct=True)
        p = ParamKS.symbolic(s)
        bad = [
            str(lam)
            for n in range(min(max_n, 4) + 1)
            for lam in enumerate_multipartitions(n, ell)
            if chsph_delta(lam, p) != chhat_delta(lam, p)
        ]
        out.append(CheckResult("characters", f"spherical = standard character, l={ell}", not bad, ", ".join(bad[:3])))
        for n in range(1, max_n + 1):
            total = Laurent.zero("q")
            for tau in enumerate_multipartitions(n, ell):
                total = total + fake_degree(tau) * irrep_dimension(tau)
            want = Laurent.const(1, "q")
            for i in range(1, n + 1):
                want = want * Laurent({k: 1 for k in range(i * ell)}, "q")
            out.append(CheckResult("characters", f"fake degrees give the regular character, l={ell} n={n}", total == want))
    return out


def _kgroup(max_n: int, rng: random.Random) -> list[CheckResult]:
    out = []
    for ell in (1, 2, 3):
        for n in range(2, max_n + 2):
            comm = res_matrix(n + 1, ell) @ ind_matrix(n, ell) - ind_matrix(n - 1, ell) @ res_matrix(n, ell)
            out.append(CheckResult("kgroup", f"Res Ind - Ind Res = l Id, l={ell} n={n}", comm.is_scalar(ell)))
    for ell in (1, 2):
        for n in range(3, max_n + 1):
            ok = all(recover_from_removals(removal_set(lam)) == lam for lam in enumerate_multipartitions(n, ell))
            out.append(CheckResult("kgroup", f"removal sets determine labels, l={ell} n={n}", ok))
    for ell in (2, 3):
        n = min(max_n, 3)
        for _ in range(20):
            p = ParamKS(ell, n, None, _random_charge(rng, ell, distinct=True, lo=0, hi=12))
            if is_spherical(p).spherical:
                res = joint_injectivity(n, ell, p)
                out.append(CheckResult("kgroup", f"joint injectivity, s={tuple(int(x) for x in p.s)}", res.injective, str(res)))
                break
    return out


def _fock(max_n: int, rng: random.Random) -> list[CheckResult]:
    out = []
    for s in [(0,), (1, 0), (2, 0, 1)]:
        n = min(max_n, 3 if len(s) < 3 else 2)
        rep = verify_relations(FockSpace(s), n)
        out.append(CheckResult("fock", f"quantum relations, s={s} n<={n}", rep.ok, str(rep)))
    rep = verify_relations(FockSpace((1, 0), db_offset=1), 1, families=["serre"])
    out.append(CheckResult("fock", "perturbed action is rejected", not rep.ok, str(rep)))
    return out


def _crystal(max_n: int, rng: random.Random) -> list[CheckResult]:
    out = []
    for s in [(0,), (1, 0), (0, 0), (2, 1, 0)]:
        for n in range(min(max_n, 4) + 1):
            labels = enumerate_multipartitions(n, len(s))
            count = sum(is_singular(lam, s) for lam in labels)
            dim = singular_space_dim(n, s)
            out.append(CheckResult("crystal", f"singular vertices = kernel dimension, s={s} n={n}", count == dim, f"{count} vs {dim}"))
        bad = []
        for n in range(min(max_n, 3)):
            for lam in enumerate_multipartitions(n, len(s)):
                for i in residue_scan(lam, s):
                    f = crystal(lam, s, i).f
                    if f is not None and crystal(f, s, i).e != lam:
                        bad.append(f"{lam} i={i}")
        out.append(CheckResult("crystal", f"e-tilde inverts f-tilde, s={s}", not bad, ", ".join(bad[:3])))
    return out


def _canonical(max_n: int, rng: random.Random) -> list[CheckResult]:
    out = []
    for s in [(1, 0), (0, 0), (2, 1, 0)]:
        n_top = min(max_n, 3)
        bad = []
        for n in range(n_top + 1):
            for lam in enumerate_multipartitions(n, len(s)):
                b = bar_basis(lam, s)
                if bar(b, s) != FockVector.basis(lam):
                    bad.append(f"bar^2 at {lam}")
                if b.coeff(lam) != 1 or any(not dominates(lam, mu) for mu in b.terms):
                    bad.append(f"triangularity at {lam}")
        out.append(CheckResult("canonical", f"bar is a unitriangular involution, s={s}", not bad, ", ".join(bad[:3])))
        bad = []
        for n in range(n_top + 1):
            D = d_matrix(n, s)
            for (mu, lam), c in D.entries.items():
                if mu == lam and c != 1:
                    bad.append(f"diagonal {lam}")
                elif mu != lam and (c.min_degree() < 1 or not dominates(lam, mu)
                                    or residue_multiset(mu, s) != residue_multiset(lam, s)):
                    bad.append(f"entry {mu},{lam}")
        out.append(CheckResult("canonical", f"d-matrix shape, s={s}", not bad, ", ".join(bad[:3])))
    return out


def _bridge(max_n: int, rng: random.Random) -> list[CheckResult]:
    lam = Multipartition(((1,), (1, 1), ()))
    A = tableau_of(lam, (7, 5, 4), 6)
    golden = [8, 7, 7, 7, 7, 7, 12, 12, 11, 11, 14, 14, 14]
    out = [CheckResult("bridge", "worked tableau weight", weight_tau(A) == golden, str(weight_tau(A)))]
    n = min(max_n, 3)
    labels = enumerate_multipartitions(n, 3)
    ok = all(lambda_of(tableau_of(x, (7, 5, 4), 6)) == x for x in labels)
    ok = ok and sorted(map(str, map(lambda_of, column_strict_tableaux((7, 5, 4), 6, n)))) == sorted(map(str, labels))
    out.append(CheckResult("bridge", f"labels and column-strict tableaux match, n={n}", ok))
    return out


SUITES: dict[str, Callable[[int, random.Random], list[CheckResult]]] = {
    "combinatorics": _combinatorics,
    "params": _params,
    "characters": _characters,
    "kgroup": _kgroup,
    "fock": _fock,
    "crystal": _crystal,
    "canonical": _canonical,
    "bridge": _bridge,
}


def run_suites(names: list[str], max_n: int, seed: int) -> list[CheckResult]:
    unknown = [x for x in names if x not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    results = []
    for name in names:
        # each suite gets its own stream so suites can run in any order
        rng = random.Random(f"{seed}:{name}")
        results.extend(SUITES[name](max_n, rng))
    return results
