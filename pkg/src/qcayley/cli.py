"""Command-line surface: reproducible reports over the library operations.

Output modes: `--format json` emits one object per line with the fixed keys
{cmd, spec, params, quantity, value_lo, value_hi, tail, anchor}; `--format
csv` uses the documented per-command layouts (see README).  Numeric bounds
are decimal strings rounded outward, so a printed [value_lo, value_hi] is
itself a certified enclosure; exact rationals additionally carry an `exact`
field in JSON.

Exit codes: 0 success, 1 verification failure, 2 usage/config/gate errors.
Runs are deterministic for a fixed config and seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import estimates as est
from . import qctree as qt
from . import verify as verify_mod
from .aunitary import cn_lower
from .cayley import build_tree
from .errors import QCayleyError
from .fusion import (
    ORTHOGONAL,
    a_param,
    ao_dims,
    format_irrep,
    format_spec,
    parse_spec,
)
from .scalars import QQ, Interval

__all__ = ["main"]

_DIGITS = 17


def _dec(q, digits: int, round_up: bool) -> str:
    """Directed decimal rendering of an exact rational."""
    q = Fraction(q)
    if q != 0 and abs(q) < Fraction(1, 10**15):
        digits = 45  # keep resolution on certified tail bounds
    scale = 10 ** digits
    num = q.numerator * scale
    den = q.denominator
    scaled = -((-num) // den) if round_up else num // den
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, scale)
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".") or "0"


def _exact_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Reporter:
    def __init__(self, fmt: str, stream, cmd: str, spec_text: str):
        self.fmt = fmt
        self.stream = stream
        self.cmd = cmd
        self.spec_text = spec_text
        self._csv_header_done = False

    def row(self, quantity: str, lo, hi=None, tail=None, anchor: str = "",
            exact=None, **params):
        hi = lo if hi is None else hi
        rec = {
            "cmd": self.cmd,
            "spec": self.spec_text,
            "params": params,
            "quantity": quantity,
            "value_lo": _dec(lo, _DIGITS, round_up=False),
            "value_hi": _dec(hi, _DIGITS, round_up=True),
            "tail": _dec(tail, _DIGITS, round_up=True) if tail is not None else None,
            "anchor": anchor,
        }
        if self.fmt == "json":
            if exact is not None:
                rec["exact"] = _exact_str(exact)
            self.stream.write(json.dumps(rec, sort_keys=True) + "\n")
        else:
            if not self._csv_header_done:
                self.stream.write("cmd,spec,quantity,params,value_lo,value_hi,tail,anchor\n")
                self._csv_header_done = True
            ptxt = ";".join(f"{k}={v}" for k, v in sorted(params.items()))
            self.stream.write(",".join([
                self.cmd, self.spec_text, quantity, ptxt,
                rec["value_lo"], rec["value_hi"], rec["tail"] or "", anchor,
            ]) + "\n")

    def interval_row(self, quantity: str, iv: Interval, tail=None, anchor: str = "", **params):
        self.row(quantity, iv.lo, iv.hi, tail=tail, anchor=anchor, **params)


def _single_ao_dimq(spec):
    if len(spec.factors) == 1 and spec.factors[0].kind == ORTHOGONAL:
        return spec.factors[0].dimq
    raise QCayleyError(f"this command needs a single Ao factor, got {format_spec(spec)}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_dims(args, out) -> int:
    spec = parse_spec(args.spec)
    dimq = _single_ao_dimq(spec)
    dims = ao_dims(dimq, args.count)
    if args.format == "csv":
        out.write(",".join(_exact_str(d) for d in dims) + "\n")
    else:
        rep = Reporter("json", out, "dims", args.spec)
        for k, d in enumerate(dims):
            rep.row("dimension", d, exact=d, anchor="ao-dimension-recursion", index=k)
    return 0


def cmd_tree(args, out) -> int:
    spec = parse_spec(args.spec)
    tree = build_tree(spec, args.radius, max_vertices=args.max_vertices)
    dir_name = {d: (f"{d.factor}:g" if d.bar == 0 else f"{d.factor}:{'u' if d.bar > 0 else 'U'}")
                for d in tree.directions}
    for v in range(tree.n_vertices):
        out.write(json.dumps({
            "id": v,
            "word": format_irrep(tree.word(v)),
            "length": tree.length(v),
            "dimq": _exact_str(tree.dim(v)),
        }, sort_keys=True) + "\n")
    for p, c, d in tree.ascending_edges():
        out.write(json.dumps({"src": p, "dst": c, "dir": dir_name[d], "ascending": True},
                             sort_keys=True) + "\n")
        from .fusion import dual_direction
        out.write(json.dumps({"src": c, "dst": p, "dir": dir_name[dual_direction(spec, d)],
                              "ascending": False}, sort_keys=True) + "\n")
    return 0


def cmd_paths(args, out) -> int:
    spec = parse_spec(args.spec)
    tree = build_tree(spec, args.radius, max_vertices=args.max_vertices)
    rep = Reporter(args.format, out, "paths", args.spec)
    for v in range(tree.n_vertices):
        if args.mode == "float":
            val = sum(2.0 / float(tree.dir_dim(tree.directions[tree._pdir[c]]))
                      / float(tree.dim(tree._parent[c])) / float(tree.dim(c))
                      for c in tree.geodesic_ids(v)[1:])
            rep.row("path_norm_sq", Fraction(val), anchor="path-norm",
                    vertex=v, length=tree.length(v))
        else:
            nsq = qt.path_norm_sq(tree, v, unit_weights=args.unit_weights)
            rep.row("path_norm_sq", nsq, exact=nsq, anchor="path-norm",
                    vertex=v, length=tree.length(v))
    return 0


def cmd_fixed_vector(args, out) -> int:
    spec = parse_spec(args.spec)
    fv = qt.fixed_vector(spec, args.radius)
    rep = Reporter(args.format, out, "fixed-vector", args.spec)
    rep.row("norm_sq", fv.norm_sq, fv.norm_sq + fv.tail_bound, tail=fv.tail_bound,
            anchor="fixed-vector-series", radius=args.radius)
    rep.row("e2_residual_norm", fv.residual_norm, tail=None,
            anchor="fixed-vector-residual", radius=args.radius,
            exact=fv.residual_norm)
    rep.row("tail_ratio", fv.certificate.ratio, exact=fv.certificate.ratio,
            anchor="geometric-tail-certificate", start=fv.certificate.start)
    return 0


def cmd_gram(args, out) -> int:
    spec = parse_spec(args.spec)
    rep = Reporter(args.format, out, "gram", args.spec)
    if args.k is not None and args.l is not None:
        iv = qt.gram(spec, args.k, args.l, args.radius)
        rep.interval_row("gram_entry", iv, tail=iv.width, anchor="gram-entry-series",
                         k=args.k, l=args.l, radius=args.radius)
        return 0
    for k in range(args.kmax + 1):
        for l in range(k, args.kmax + 1):
            iv = qt.gram(spec, k, l, args.radius)
            rep.interval_row("gram_entry", iv, tail=iv.width, anchor="gram-entry-series",
                             k=k, l=l, radius=args.radius)
    dee = qt.gram_bound(spec, args.kmax, args.radius)
    rep.row("decay_constant_D", dee, anchor="gram-decay-bound", kmax=args.kmax)
    return 0


def cmd_growth(args, out) -> int:
    spec = parse_spec(args.spec)
    if len(spec.factors) != 1 or spec.factors[0].kind == ORTHOGONAL:
        raise QCayleyError("growth applies to a single Au factor, e.g. --spec 'Au(3)'")
    dimq = spec.factors[0].dimq
    if dimq.denominator != 1:
        raise QCayleyError("growth needs an integer generator dimension")
    N = int(dimq)
    values = [cn_lower(n, N) for n in range(1, args.n_max + 1)]
    if args.format == "csv":
        out.write("n,cn_lower,first_diff,slope\n")
        for i, v in enumerate(values):
            n = i + 1
            diff = "" if i == 0 else _exact_str(v - values[i - 1])
            slope = "" if i == 0 else _exact_str((v - values[0]) / (n - 1))
            out.write(f"{n},{_exact_str(v)},{diff},{slope}\n")
    else:
        rep = Reporter("json", out, "growth", args.spec)
        for i, v in enumerate(values):
            n = i + 1
            rep.row("cn_lower", v, exact=v, anchor="unitary-growth-bound", n=n)
            if i:
                rep.row("first_diff", v - values[i - 1], exact=v - values[i - 1],
                        anchor="unitary-growth-step", n=n)
    return 0


def cmd_rd_norm(args, out) -> int:
    spec = parse_spec(args.spec)
    dimq = _single_ao_dimq(spec)
    s = QQ(Fraction(args.s))
    rep = Reporter(args.format, out, "rd-norm", args.spec)
    if args.r is not None:
        r = QQ(Fraction(args.r))
        res = est.nonuni_norm_sq(s, r, dimq, args.radius)
        quantity = "weighted_norm_sq"
        anchor = "weighted-decay-series"
        params = dict(s=str(s), r=str(r), radius=args.radius)
    elif args.mode == "float":
        dims = [float(d) for d in ao_dims(dimq, args.radius + 2)]
        val = 2 / dims[1] * sum((i + 2) ** (2 * float(Fraction(args.s)))
                                / (dims[i] * dims[i + 1]) for i in range(args.radius + 1))
        rep.row("rd_norm_sq", Fraction(val), anchor="rapid-decay-series",
                s=str(s), radius=args.radius, mode="float")
        return 0
    else:
        res = est.rd_norm_sq(dimq, s, args.radius)
        quantity = "rd_norm_sq"
        anchor = "rapid-decay-series"
        params = dict(s=str(s), radius=args.radius)
    rep.row(quantity, res.partial, res.hi, tail=res.tail_bound, anchor=anchor, **params)
    rep.row("tail_ratio", res.ratio, exact=res.ratio, anchor="geometric-tail-certificate",
            crossover=res.crossover, **params)
    return 0


def _parse_a(text: str, tolerance=None):
    if text.startswith("growth:"):
        tol = QQ(Fraction(tolerance)) if tolerance else QQ(1, 10**30)
        return a_param(QQ(Fraction(text[len("growth:"):])), tol).interval
    return QQ(Fraction(text))


def cmd_schur(args, out) -> int:
    a = _parse_a(args.a, args.tolerance)
    rep = Reporter(args.format, out, "schur", "")
    bound = est.toeplitz_schur_bound(a)
    rep.interval_row("schur_bound", bound, anchor="toeplitz-schur-bound", a=args.a)
    trunc = est.truncated_toeplitz_norm(a, args.size)
    rep.interval_row("truncated_norm", trunc, anchor="toeplitz-truncated-norm",
                     a=args.a, size=args.size)
    return 0 if trunc.hi <= bound.hi + QQ(1, 10**9) else 1


def cmd_chain_check(args, out) -> int:
    a = _parse_a(args.a, args.tolerance)
    rng = random.Random(args.seed)
    rep = Reporter(args.format, out, "chain-check", "")
    failures = 0
    for i in range(args.count):
        length = rng.randint(1, 12)
        xs = [QQ(rng.randint(0, 40), rng.randint(1, 9)) if rng.random() > 0.3 else QQ(0)
              for _ in range(length)]
        if not est.orientation_chain_check(a, xs):
            failures += 1
    rep.row("violations", QQ(failures), exact=QQ(failures),
            anchor="cauchy-schwarz-chain", a=args.a, count=args.count, seed=args.seed)
    return 0 if failures == 0 else 1


def cmd_verify(args, out) -> int:
    results = verify_mod.run_all(args.profile, args.seed)
    for line in verify_mod.report_lines(results):
        out.write(line + "\n")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qcayley",
        description="Certified arithmetic on weighted Cayley trees of universal quantum groups",
    )
    p.add_argument("--config", help="JSON file with default option values; flags win")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec=True):
        sp.add_argument("--format", choices=("json", "csv"), default=None)
        sp.add_argument("--output", default=None, help="write the report to this path")
        sp.add_argument("--mode", choices=("exact", "float"), default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--tolerance", default=None,
                        help="growth-parameter enclosure width, e.g. 1e-30")
        if spec:
            sp.add_argument("--spec", default=None, help='e.g. "Ao(3)" or "Ao(3)*Au(3)"')

    sp = sub.add_parser("dims", help="quantum dimension sequence of an Ao factor")
    common(sp)
    sp.add_argument("--count", type=int)
    sp.set_defaults(fn=cmd_dims, _defaults={"count": 10})

    sp = sub.add_parser("tree", help="dump vertices and directed edges as JSON lines")
    common(sp)
    sp.add_argument("--radius", type=int)
    sp.add_argument("--max-vertices", type=int)
    sp.set_defaults(fn=cmd_tree, _defaults={"radius": 4, "max_vertices": 200_000})

    sp = sub.add_parser("paths", help="squared path-vector norms per vertex")
    common(sp)
    sp.add_argument("--radius", type=int)
    sp.add_argument("--max-vertices", type=int)
    sp.add_argument("--unit-weights", action="store_true")
    sp.set_defaults(fn=cmd_paths, _defaults={"radius": 6, "max_vertices": 200_000})

    sp = sub.add_parser("fixed-vector", help="truncated infinite-geodesic path vector")
    common(sp)
    sp.add_argument("--radius", type=int)
    sp.set_defaults(fn=cmd_fixed_vector, _defaults={"radius": 40})

    sp = sub.add_parser("gram", help="certified Gram entries of the inverse series")
    common(sp)
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--radius", type=int)
    sp.set_defaults(fn=cmd_gram, _defaults={"kmax": 10, "radius": 40})

    sp = sub.add_parser("growth", help="linear-growth lower bounds for Au powers")
    common(sp)
    sp.add_argument("--n-max", type=int)
    sp.set_defaults(fn=cmd_growth, _defaults={"n_max": 8})

    sp = sub.add_parser("rd-norm", help="rapid-decay norm series (weighted with --r)")
    common(sp)
    sp.add_argument("--s", help="Sobolev exponent; 2s must be an integer")
    sp.add_argument("--r", help="weight base for the non-unimodular variant")
    sp.add_argument("--radius", type=int)
    sp.set_defaults(fn=cmd_rd_norm, _defaults={"s": "3", "radius": 60})

    sp = sub.add_parser("schur", help="Toeplitz decay-matrix norm vs the Schur bound")
    common(sp, spec=False)
    sp.add_argument("--a", help="rational like 3/2, or growth:DIMQ")
    sp.add_argument("--size", type=int)
    sp.set_defaults(fn=cmd_schur, _defaults={"a": "2", "size": 50})

    sp = sub.add_parser("chain-check", help="randomized summation-inequality checks")
    common(sp, spec=False)
    sp.add_argument("--a")
    sp.add_argument("--count", type=int)
    sp.set_defaults(fn=cmd_chain_check, _defaults={"a": "2", "count": 200})

    sp = sub.add_parser("verify", help="run the acceptance suite")
    common(sp, spec=False)
    sp.add_argument("--profile", choices=tuple(verify_mod.PROFILES))
    sp.set_defaults(fn=cmd_verify, _defaults={"profile": "quick"})
    return p


_CONFIG_KEYS = ("format", "output", "mode", "seed", "spec", "radius", "count",
                "kmax", "n_max", "s", "r", "a", "size", "profile", "max_vertices",
                "tolerance")


def _apply_config(args: argparse.Namespace) -> None:
    defaults = {"format": "json", "mode": "exact", "seed": verify_mod.DEFAULT_SEED}
    defaults.update(getattr(args, "_defaults", {}))
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(_CONFIG_KEYS)
        if unknown:
            raise QCayleyError(f"unknown config keys: {sorted(unknown)}")
        defaults.update(loaded)
    for key, value in defaults.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    if getattr(args, "tolerance", None) is not None \
            and QQ(Fraction(str(args.tolerance))) <= 0:
        raise QCayleyError("tolerance must be positive")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        if args.output:
            with open(args.output, "w") as out:
                code = args.fn(args, out)
        else:
            code = args.fn(args, sys.stdout)
        return code
    except QCayleyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
