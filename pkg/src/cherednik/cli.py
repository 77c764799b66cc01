"""Command-line front end.

Exit codes: 0 success, 1 a ``verify`` check failed, 2 usage error,
3 precondition violation, 4 resource cap.

Every subcommand accepts the session flags ``-l -n --kappa -s --m --window
--cap --format --config``.  A JSON config file supplies any session flag that
is not given on the command line; keys are the long flag names with dashes
replaced by underscores (``{"l": 2, "n": 2, "kappa": "symbolic", "s": [-1, 0]}``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import __version__
from .combinatorics import DEFAULT_ENUMERATION_CAP, Multipartition, ResourceCapError
from .params import PreconditionError

__all__ = ["main", "run", "SessionConfig", "build_parser"]

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 1, 2, 3, 4

# flags whose values may legitimately start with "-" (e.g. "-s -1,0")
_VALUE_FLAGS = {"-s", "--s", "--m", "--other-s", "--other-kappa", "--kappa", "--i", "-i", "--q", "--window"}

_SESSION_KEYS = ("l", "n", "kappa", "s", "m", "window", "cap", "format")


class UsageError(ValueError):
    pass


@dataclass
class SessionConfig:
    l: int | None = None
    n: int | None = None
    kappa: str = "symbolic"
    s: list | None = None
    m: list | None = None
    window: tuple[int, int] | None = None
    cap: int = DEFAULT_ENUMERATION_CAP
    format: str = "text"

    def need(self, *names: str):
        missing = [x for x in names if getattr(self, x) is None]
        if missing:
            flags = ", ".join(("-" if len(x) == 1 else "--") + x for x in missing)
            raise UsageError(f"missing required option(s): {flags}")

    def params(self, n: int | None = None):
        from .params import ParamKS

        self.need("s")
        data = {"l": self.l if self.l is not None else len(self.s), "n": (self.n or 0) if n is None else n,
                "kappa": self.kappa, "s": self.s}
        if self.m is not None:
            data["m"] = self.m
        try:
            return ParamKS.from_config(data)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad parameters: {exc}") from exc

    def int_charge(self) -> tuple[int, ...]:
        self.need("s")
        out = []
        for x in self.s:
            try:
                f = Fraction(str(x))
            except ValueError as exc:
                raise UsageError(f"bad charge entry {x!r}") from exc
            if f.denominator != 1:
                raise PreconditionError("this computation needs an integer charge s")
            out.append(int(f))
        if self.l is not None and self.l != len(out):
            raise UsageError(f"-l {self.l} does not match the {len(out)} charge entries")
        return tuple(out)


# parsing helpers -----------------------------------------------------------------


def _csv_list(text: str) -> list[str]:
    text = text.strip()
    if text.startswith("["):
        return [str(x) for x in json.loads(text)]
    return [x.strip() for x in text.split(",") if x.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in _csv_list(text)]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers: {text!r}") from exc


def _window(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2 or vals[0] > vals[1]:
        raise argparse.ArgumentTypeError("window must be lo,hi with lo <= hi")
    return (vals[0], vals[1])


def _multipartition(text: str) -> Multipartition:
    try:
        return Multipartition.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"expected a multipartition like [[3,1],[4,2]]: {text!r}") from exc


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational number: {text!r}") from exc


def _nonneg(text: str) -> int:
    try:
        x = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer: {text!r}") from exc
    if x < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return x


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        nxt = argv[k + 1] if k + 1 < len(argv) else None
        if tok in _VALUE_FLAGS and nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
            out.append(f"{tok}={nxt}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def _session_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("session")
    g.add_argument("-l", "--level", dest="l", type=_nonneg, default=None, help="number of components ell")
    g.add_argument("-n", dest="n", type=_nonneg, default=None, help="rank n")
    g.add_argument("--kappa", default=None, help="'symbolic' or a rational")
    g.add_argument("-s", "--s", dest="s", type=_csv_list, default=None, help="charge, comma separated")
    g.add_argument("--m", dest="m", type=_int_list, default=None, help="integer vector m")
    g.add_argument("--window", type=_window, default=None, help="residue window lo,hi")
    g.add_argument("--cap", type=_nonneg, default=None, help="enumeration cap")
    g.add_argument("--format", choices=("text", "json", "csv"), default=None)
    g.add_argument("--config", default=None, help="JSON file with session defaults")
    return p


def build_parser() -> argparse.ArgumentParser:
    parent = _session_parent()
    parser = argparse.ArgumentParser(prog="cherednik", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[parent], help=help_text)

    add("enumerate", "list P_l(n)")

    c = add("classify-params", "spherical / faithful / integral-difference / classes")
    c.add_argument("--what", choices=("spherical", "faithful", "integral-difference", "classes", "hecke"),
                   default="spherical")
    c.add_argument("--other-kappa", default=None)
    c.add_argument("--other-s", type=_csv_list, default=None)

    for name, text in (("cfun", "c-function and c-hat"), ("fakedeg", "fake degree f_{tau*}")):
        add(name, text).add_argument("--lam", type=_multipartition, required=True)

    c = add("char", "graded characters of standard modules")
    c.add_argument("--lam", type=_multipartition, required=True)
    c.add_argument("--kind", choices=("hat", "sph"), default="hat")

    c = add("kgroup", "Grothendieck-group maps")
    c.add_argument("action", choices=("res", "ind", "injectivity", "recover"))
    c.add_argument("--lam", type=_multipartition, default=None)

    c = add("crystal", "crystal operators and graph")
    c.add_argument("action", choices=("operators", "graph", "singular", "support", "finite-dim"))
    c.add_argument("--lam", type=_multipartition, default=None)
    c.add_argument("-i", "--i", dest="i", type=int, default=None)

    c = add("fock", "quantum-group action on the Fock space")
    c.add_argument("action", choices=("apply", "relations", "singular-dim"))
    c.add_argument("--op", choices=("E", "F", "K", "Kinv"), default=None)
    c.add_argument("-i", "--i", dest="i", type=int, default=None)
    c.add_argument("--lam", type=_multipartition, default=None)
    c.add_argument("--families", type=_csv_list, default=None)

    add("dmatrix", "graded decomposition matrix")
    add("radical", "radical-layer multiplicities of standard modules")

    c = add("gram", "Gram determinant on the singular space")
    c.add_argument("--q", type=_rational, default=Fraction(2))

    c = add("tableau", "tau-tableau of a multipartition")
    c.add_argument("--lam", type=_multipartition, required=True)

    c = add("labels", "labels matched across the Schur-type functor")
    c.add_argument("--lam", type=_multipartition, required=True)
    c.add_argument("--shape-m", type=_nonneg, default=None)

    c = add("verify", "run invariant suites")
    c.add_argument("--suite", default="all", help="'all' or comma-separated suite names")
    c.add_argument("--max-n", type=_nonneg, default=4)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=_nonneg, default=1)
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    unknown = sorted(set(data) - set(_SESSION_KEYS))
    if unknown:
        raise UsageError(f"unknown config key(s): {', '.join(unknown)}")
    return data


def _session(args: argparse.Namespace) -> SessionConfig:
    merged = _load_config(args.config) if args.config else {}
    for key in _SESSION_KEYS:
        val = getattr(args, key)
        if val is not None:
            merged[key] = val
    cfg = SessionConfig()
    for key, val in merged.items():
        if key in ("s", "m") and isinstance(val, str):
            val = _csv_list(val)
        if key == "m" and val is not None:
            val = [int(x) for x in val]
        if key == "window" and val is not None:
            val = tuple(int(x) for x in val)
        if key == "kappa":
            val = str(val)
        setattr(cfg, key, val)
    if cfg.format not in ("text", "json", "csv"):
        raise UsageError(f"unknown format {cfg.format!r}")
    return cfg


# output ---------------------------------------------------------------------------


class _Out:
    def __init__(self, stream, fmt: str):
        self.stream = stream
        self.fmt = fmt

    def line(self, text: str = ""):
        self.stream.write(text + "\n")

    def json(self, obj):
        self.line(json.dumps(obj, separators=(",", ":"), sort_keys=False))

    def rows(self, header: list[str], rows: list[list], text_rows: list[str] | None = None, obj=None):
        if self.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
            self.stream.write(buf.getvalue())
        elif self.fmt == "json":
            self.json(obj if obj is not None else [dict(zip(header, r)) for r in rows])
        else:
            for t in text_rows if text_rows is not None else [" ".join(map(str, r)) for r in rows]:
                self.line(t)


# subcommands ----------------------------------------------------------------------


def _cmd_enumerate(args, cfg: SessionConfig, out: _Out) -> int:
    from .combinatorics import enumerate_multipartitions

    cfg.need("l", "n")
    labels = enumerate_multipartitions(cfg.n, cfg.l, cfg.cap)
    out.rows(["lambda"], [[str(x)] for x in labels], obj=[x.to_json() for x in labels])
    return EXIT_OK


def _cmd_classify(args, cfg: SessionConfig, out: _Out) -> int:
    from . import params as P

    cfg.need("n", "s")
    p = cfg.params()
    if args.what == "spherical":
        res = P.is_spherical(p)
        if out.fmt == "json":
            out.json({"spherical": res.spherical, "family": res.family, "certificate": res.certificate})
        else:
            out.line(str(res))
    elif args.what == "faithful":
        ok = P.is_faithful(p)
        out.json({"faithful": ok}) if out.fmt == "json" else out.line("faithful" if ok else "not-faithful")
    elif args.what == "integral-difference":
        if args.other_s is None:
            raise UsageError("integral-difference needs --other-s (and --other-kappa if kappa is rational)")
        other = SessionConfig(l=cfg.l, n=cfg.n, kappa=args.other_kappa or cfg.kappa, s=args.other_s)
        q = other.params()
        if p.is_symbolic != q.is_symbolic:
            raise PreconditionError("both parameters must have kappa of the same kind (symbolic or rational)")
        ok = P.integral_difference(p, q)
        out.json({"integral_difference": ok}) if out.fmt == "json" else out.line(str(ok).lower())
    elif args.what == "classes":
        if not p.is_symbolic:
            raise PreconditionError("equivalence classes need a symbolic (transcendental) kappa")
        m = p.m if p.m is not None else (0,) * p.ell
        classes, detail = P.param_classes(p.k(), list(zip(p.s, m)))
        if out.fmt == "json":
            out.json({"classes": classes})
        else:
            for cls in classes:
                out.line(" ".join(map(str, cls)))
    else:
        out.json(P.hecke_params(p))
    return EXIT_OK


def _params_for(lam: Multipartition, cfg: SessionConfig):
    p = cfg.params(n=lam.size)
    if p.ell != lam.level:
        raise UsageError(f"multipartition has {lam.level} components but the charge has {p.ell}")
    return p


def _cmd_cfun(args, cfg, out) -> int:
    from .characters import c_function, c_hat

    p = _params_for(args.lam, cfg)
    c, ch = c_function(args.lam, p), c_hat(args.lam, p)
    out.json({"c": str(c), "c_hat": str(ch)}) if out.fmt == "json" else out.line(f"c={c} c_hat={ch}")
    return EXIT_OK


def _cmd_fakedeg(args, cfg, out) -> int:
    from .characters import fake_degree

    f = fake_degree(args.lam)
    if out.fmt == "json":
        out.json({str(k): str(v) for k, v in sorted(f.coeffs.items())})
    else:
        out.line(str(f))
    return EXIT_OK


def _cmd_char(args, cfg, out) -> int:
    from .characters import chhat_delta, chsph_delta

    p = _params_for(args.lam, cfg)
    ch = (chhat_delta if args.kind == "hat" else chsph_delta)(args.lam, p)
    out.json(ch.to_json())
    return EXIT_OK


def _cmd_kgroup(args, cfg, out) -> int:
    from . import kgroup as K

    if args.action == "recover":
        if args.lam is None:
            raise UsageError("recover needs --lam")
        out.line(str(K.recover_from_removals(K.removal_set(args.lam))))
        return EXIT_OK
    cfg.need("l", "n")
    if args.action in ("res", "ind"):
        M = (K.res_matrix if args.action == "res" else K.ind_matrix)(cfg.n, cfg.l, cfg.cap)
        if out.fmt == "json":
            out.json({"rows": [str(x) for x in M.rows], "cols": [str(x) for x in M.cols], "matrix": M.dense()})
        else:
            out.stream.write(M.to_csv())
        return EXIT_OK
    p = cfg.params()
    if p.ell != cfg.l:
        raise UsageError("charge length does not match -l")
    res = K.joint_injectivity(cfg.n, cfg.l, p, cfg.cap)
    if out.fmt == "json":
        out.json({"injective": res.injective, "rank": res.rank, "dimension": res.dimension,
                  "kernel": None if res.kernel is None else
                  {str(lam): str(c) for lam, c in zip(res.labels, res.kernel) if c}})
    else:
        out.line(str(res))
    return EXIT_OK


def _cmd_crystal(args, cfg, out) -> int:
    from . import crystal as C

    s = cfg.int_charge()
    if args.action == "operators":
        if args.lam is None:
            raise UsageError("operators needs --lam")
        residues = [args.i] if args.i is not None else C.residue_scan(args.lam, s)
        data = {i: C.crystal(args.lam, s, i) for i in residues}
        if out.fmt == "json":
            out.json({str(i): d.to_json() for i, d in data.items()})
        else:
            for i, d in data.items():
                out.line(f"i={i} eps={d.eps} phi={d.phi} e={d.e} f={d.f}"
                         f" signature={C.reduced_signature(args.lam, s, i)}")
        return EXIT_OK
    if args.action == "graph":
        cfg.need("n")
        out.line(C.crystal_graph_json(cfg.n, s, cfg.cap))
        return EXIT_OK
    if args.action == "singular":
        from .combinatorics import enumerate_multipartitions

        cfg.need("n")
        labels = [x for x in enumerate_multipartitions(cfg.n, len(s), cfg.cap) if C.is_singular(x, s)]
        out.rows(["lambda"], [[str(x)] for x in labels], obj=[x.to_json() for x in labels])
        return EXIT_OK
    p = cfg.params()
    if args.action == "support":
        if args.lam is None:
            raise UsageError("support needs --lam")
        out.line(str(C.support_of(args.lam, p)))
        return EXIT_OK
    cfg.need("n")
    labels = C.finite_dim_labels(cfg.n, p, cfg.cap)
    out.rows(["lambda*"], [[str(x)] for x in labels], obj=[x.to_json() for x in labels])
    return EXIT_OK


def _cmd_fock(args, cfg, out) -> int:
    from . import fock as F

    s = cfg.int_charge()
    if args.action == "apply":
        if args.op is None or args.lam is None or args.i is None:
            raise UsageError("apply needs --op, -i and --lam")
        space = F.FockSpace(s)
        vec = F.FockVector.basis(args.lam)
        res = space.K(args.i, vec, -1) if args.op == "Kinv" else space.apply(args.op, args.i, vec)
        if out.fmt == "json":
            out.json(res.to_json())
        else:
            out.line(str(res))
        return EXIT_OK
    cfg.need("n")
    if args.action == "relations":
        fams = args.families or list(F.RELATION_FAMILIES)
        bad = [f for f in fams if f not in F.RELATION_FAMILIES]
        if bad:
            raise UsageError(f"unknown relation family: {', '.join(bad)}")
        rep = F.verify_relations(F.FockSpace(s), cfg.n, window=cfg.window, families=fams)
        if out.fmt == "json":
            out.json({"ok": rep.ok, "checked": rep.checked, "failures": rep.failures})
        else:
            out.line(str(rep))
        return EXIT_OK if rep.ok else EXIT_CHECK_FAILED
    dim = F.singular_space_dim(cfg.n, s, cfg.cap)
    out.json({"dim": dim}) if out.fmt == "json" else out.line(str(dim))
    return EXIT_OK


def _cmd_dmatrix(args, cfg, out) -> int:
    from .canonical import d_matrix

    cfg.need("n")
    D = d_matrix(cfg.n, cfg.int_charge(), cfg.cap)
    items = sorted(D.entries.items(), key=lambda kv: (str(kv[0][1]), str(kv[0][0])))
    out.rows(["mu", "lambda", "d"], [[str(mu), str(lam), str(c)] for (mu, lam), c in items],
             text_rows=[f"d[{mu},{lam}] = {c}" for (mu, lam), c in items], obj=D.to_json())
    return EXIT_OK


def _cmd_radical(args, cfg, out) -> int:
    from .canonical import radical_table

    cfg.need("n")
    cfg.int_charge()
    rows = radical_table(cfg.n, cfg.params(), cfg.cap)
    out.rows(["lambda*", "mu*", "layer", "multiplicity"],
             [[str(r.lam_star), str(r.mu_star), r.layer, r.multiplicity] for r in rows],
             text_rows=[f"[rad^{r.layer} Delta({r.lam_star}) : L({r.mu_star})] = {r.multiplicity}" for r in rows],
             obj=[r.to_json() for r in rows])
    return EXIT_OK


def _cmd_gram(args, cfg, out) -> int:
    from .canonical import gram_singular

    cfg.need("n")
    det = gram_singular(cfg.n, cfg.int_charge(), args.q, cfg.cap)
    out.json({"q": str(args.q), "det": str(det)}) if out.fmt == "json" else out.line(str(det))
    return EXIT_OK


def _cmd_tableau(args, cfg, out) -> int:
    from .bridge import tableau_of, weight_tau

    if not cfg.m or len(cfg.m) != 1:
        raise UsageError("tableau needs a single integer --m")
    A = tableau_of(args.lam, cfg.int_charge(), cfg.m[0])
    if out.fmt == "json":
        out.json({**A.to_json(), "weight": weight_tau(A)})
    else:
        out.line(" ".join(map(str, weight_tau(A))))
    return EXIT_OK


def _cmd_labels(args, cfg, out) -> int:
    from .bridge import upsilon_labels

    cfg.need("m")
    res = upsilon_labels(args.lam, cfg.int_charge(), cfg.m, args.shape_m)
    if out.fmt == "json":
        out.json(res.to_json())
    else:
        out.line(f"Delta({res.cherednik_label}) <-> N({res.tableau})")
    return EXIT_OK


def _cmd_verify(args, cfg, out) -> int:
    from .verify import SUITES, run_suites

    names = list(SUITES) if args.suite == "all" else _csv_list(args.suite)
    unknown = [x for x in names if x not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    if args.workers > 1:
        with ThreadPoolExecutor(args.workers) as pool:
            chunks = list(pool.map(lambda x: run_suites([x], args.max_n, args.seed), names))
        results = [r for chunk in chunks for r in chunk]
    else:
        results = run_suites(names, args.max_n, args.seed)
    if out.fmt == "json":
        out.json([{"suite": r.suite, "name": r.name, "ok": r.ok, "detail": r.detail} for r in results])
    else:
        for r in results:
            out.line(r.line())
        failed = sum(not r.ok for r in results)
        out.line(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if all(r.ok for r in results) else EXIT_CHECK_FAILED


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "classify-params": _cmd_classify,
    "cfun": _cmd_cfun,
    "fakedeg": _cmd_fakedeg,
    "char": _cmd_char,
    "kgroup": _cmd_kgroup,
    "crystal": _cmd_crystal,
    "fock": _cmd_fock,
    "dmatrix": _cmd_dmatrix,
    "radical": _cmd_radical,
    "gram": _cmd_gram,
    "tableau": _cmd_tableau,
    "labels": _cmd_labels,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    from .kl_oracle import ResourceLimit

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _session(args)
        return _COMMANDS[args.command](args, cfg, _Out(stdout, cfg.format))
    except UsageError as exc:
        stderr.write(f"cherednik {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        stderr.write(f"cherednik {args.command}: precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    except (ResourceCapError, ResourceLimit) as exc:
        stderr.write(f"cherednik {args.command}: resource cap: {exc}\n")
        return EXIT_RESOURCE
    except (ValueError, KeyError) as exc:
        stderr.write(f"cherednik {args.command}: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
