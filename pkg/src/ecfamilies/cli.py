"""Command-line front end.

Every report is JSON (or CSV where tabular) and embeds the job configuration
and library version, so identical configurations give identical output.
Configuration errors exit with status 2; undetermined data never does.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import isqrt

from . import __version__
from .arith import Budget, FactorizationIncomplete
from .averaging import (
    CSV_HEADER as AVG_CSV_HEADER,
    LatticeCoset,
    Sector,
    autocorr_rational,
    autocov_progression,
    av_progression,
    av_rational,
    sweep_lambda_poly,
)
from .builder import (
    DegenerateJ,
    TargetUnachievable,
    predict_deg_irr_bprime,
    recipe_from_j_d,
    target_m,
)
from .descent import (
    BasePointInvalid,
    canonical_height,
    naive_height,
    quartic_to_weierstrass,
    twist_point_search,
)
from .fiber import FiberContext, MalformedTable, NotCoprime, OracleTable, RootNumberFunction, fiber_root_number
from .modform import reports_csv, trace_report, trace_table
from .poly import HomPoly, NotSquarefree
from .polytext import ParseError, parse_bipoly, parse_hompoly, parse_intpoly, parse_ratfunc
from .sieve import BIVARIATE, BIVARIATE_COPRIME, UNIVARIATE, census
from .surface import EllipticSurface, NotASurface, analyze, deg_irr


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    domain: dict = field(default_factory=dict)
    N: int | None = None
    budget: dict = field(default_factory=dict)
    oracle: str | None = None
    output: str = "json"
    jobs: int = 1

    def to_dict(self):
        return asdict(self)


# ---------------------------------------------------------------- input helpers

def _surface(args) -> EllipticSurface:
    if args.surface:
        try:
            with open(args.surface) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read surface file: {e}") from None
        if "c4" in obj and "c6" in obj:
            return EllipticSurface(parse_ratfunc(str(obj["c4"])), parse_ratfunc(str(obj["c6"])))
        if "j" in obj:
            return recipe_from_j_d(parse_ratfunc(str(obj["j"])), parse_ratfunc(str(obj.get("d", "1")))).surface()
        raise ConfigError("surface file needs c4 and c6 (or j and d)")
    if args.c4 is None or args.c6 is None:
        raise ConfigError("give --c4 and --c6, or --surface FILE")
    return EllipticSurface(parse_ratfunc(args.c4), parse_ratfunc(args.c6))


def _surface_inputs(args) -> dict:
    if args.surface:
        return {"surface": args.surface}
    return {"c4": args.c4, "c6": args.c6}


def _oracle(args):
    if not getattr(args, "oracle", None):
        return None
    try:
        return OracleTable.load(args.oracle)
    except OSError as e:
        raise ConfigError(f"cannot read oracle table: {e}") from None


def _budget(args) -> Budget:
    return Budget(trial_bound=args.trial_bound, rho_iterations=args.rho_iterations)


def _pair(text, name):
    try:
        a, b = (Fraction(v) for v in text.split(","))
    except ValueError:
        raise ConfigError(f"{name} must look like 'a,b'") from None
    return a, b


def _int_pair(text, name):
    a, b = _pair(text, name)
    if a.denominator != 1 or b.denominator != 1:
        raise ConfigError(f"{name} needs integers")
    return int(a), int(b)


def _sector(args) -> Sector:
    if args.quadrant and args.sector:
        raise ConfigError("give at most one of --quadrant and --sector")
    if args.quadrant:
        if args.quadrant not in ("++", "-+", "--", "+-"):
            raise ConfigError("--quadrant must be one of ++ -+ -- +-")
        return Sector.quadrant(args.quadrant)
    if args.sector:
        try:
            s, e = args.sector.split(":")
        except ValueError:
            raise ConfigError("--sector must look like 'x1,y1:x2,y2'") from None
        return Sector.arc(_pair(s, "--sector"), _pair(e, "--sector"))
    return Sector.full()


def _lattice(args) -> LatticeCoset:
    offset = _int_pair(args.offset, "--offset") if args.offset else (0, 0)
    if not args.lattice:
        if offset != (0, 0):
            raise ConfigError("--offset needs --lattice")
        return LatticeCoset.full()
    try:
        v1, v2 = args.lattice.split(";")
    except ValueError:
        raise ConfigError("--lattice must look like 'a,b;c,d'") from None
    return LatticeCoset.from_generators(_int_pair(v1, "--lattice"), _int_pair(v2, "--lattice"), offset)


def _domain_dict(args) -> dict:
    d = {"kind": args.domain}
    if args.domain == "progression":
        d.update(a=args.a, m=args.m)
    else:
        d.update(quadrant=args.quadrant, sector=args.sector, lattice=args.lattice, offset=args.offset)
    return d


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise ConfigError(f"--{n.replace('_', '-')} is required")


# ---------------------------------------------------------------- output

def _emit(args, cfg: JobConfig, result, csv_rows=None, csv_header=None):
    if cfg.output == "csv":
        if csv_rows is None:
            raise ConfigError(f"{cfg.command} has no CSV form")
        buf = io.StringIO()
        buf.write(f"# ecfamilies {__version__} config {json.dumps(cfg.to_dict(), sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(csv_header)
        w.writerows(csv_rows)
        text = buf.getvalue()
    else:
        doc = {"version": __version__, "config": cfg.to_dict(), "result": result}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args, **kw) -> JobConfig:
    budget = {}
    if hasattr(args, "trial_bound"):
        budget = {"trial_bound": args.trial_bound, "rho_iterations": args.rho_iterations}
    return JobConfig(command=args.command, budget=budget, output=args.format,
                     jobs=getattr(args, "jobs", 1), oracle=getattr(args, "oracle", None), **kw)


# ---------------------------------------------------------------- commands

def cmd_analyze_surface(args):
    an = analyze(_surface(args))
    cfg = _config(args, inputs=_surface_inputs(args))
    res = an.to_dict()
    res["deg_irr_Bprime"] = deg_irr(an.Bprime)
    _emit(args, cfg, res)


def cmd_fiber_w(args):
    _need(args, "x", "y")
    ctx = FiberContext(_surface(args))
    cfg = _config(args, inputs={**_surface_inputs(args), "x": args.x, "y": args.y})
    try:
        res = fiber_root_number(ctx, args.x, args.y, _oracle(args), _budget(args)).to_dict()
    except FactorizationIncomplete as e:
        # budget exhaustion is a data outcome, not a configuration error
        res = {"x": args.x, "y": args.y, "global": "factorization_incomplete", "cofactor": str(e.cofactor)}
    _emit(args, cfg, res)


def _avg_result(rep, args):
    res = rep.to_dict()
    res["enumerated"] = rep.enumerated
    if args.normalize == "square" and rep.count:
        v = Fraction(rep.total) / (args.N * args.N)
        res["normalized_value"] = str(v)
        res["normalized_value_float"] = float(v)
    elif args.normalize == "square":
        res["normalized_value"] = res["normalized_value_float"] = None
    return res


def _avg_common(args):
    _need(args, "N")
    if args.N < 1:
        raise ConfigError("--N must be positive")
    if args.jobs < 1:
        raise ConfigError("--jobs must be positive")
    f = RootNumberFunction(FiberContext(_surface(args)), _oracle(args), _budget(args))
    return f


def cmd_average(args):
    f = _avg_common(args)
    if args.domain == "progression":
        rep = av_progression(f, args.a, args.m, args.N, args.jobs)
    else:
        rep = av_rational(f, _sector(args), _lattice(args), args.N, args.jobs)
    cfg = _config(args, inputs={**_surface_inputs(args), "normalize": args.normalize}, domain=_domain_dict(args), N=args.N)
    _emit(args, cfg, _avg_result(rep, args), rep.csv_rows("W"), AVG_CSV_HEADER)


def cmd_autocov(args):
    f = _avg_common(args)
    if args.domain == "progression":
        _need(args, "k")
        rep = autocov_progression(f, args.a, args.m, args.k, args.N, args.jobs)
        shift = {"k": args.k}
    else:
        _need(args, "t0")
        try:
            t0 = Fraction(args.t0)
        except ValueError:
            raise ConfigError("--t0 must be a rational number") from None
        rep = autocorr_rational(f, _sector(args), _lattice(args), t0, args.N, args.jobs)
        shift = {"t0": str(t0)}
    cfg = _config(args, inputs={**_surface_inputs(args), **shift, "normalize": args.normalize},
                  domain=_domain_dict(args), N=args.N)
    _emit(args, cfg, _avg_result(rep, args), rep.csv_rows("WW"), AVG_CSV_HEADER)


def _poly_arg(text):
    """IntPoly when the only variable is n or t, else a BiPoly in x, y (or a, b)."""
    bp, names = parse_bipoly(text)
    if set(names) - {"_"} <= {"n", "t"}:
        return parse_intpoly(text)
    return bp


def cmd_sweep_lambda(args):
    if args.N is None and args.max_value is not None:
        # a, b <= sqrt(max) covers every pair with 0 < P(a, b) <= max when P >= a^2 or b^2
        args.N = isqrt(args.max_value)
    _need(args, "poly", "N")
    P = _poly_arg(args.poly)
    from .poly import IntPoly

    if isinstance(P, IntPoly):
        rep = sweep_lambda_poly(P, args.N, func=args.func, a=args.a, m=args.m)
    else:
        rep = sweep_lambda_poly(P, args.N, _sector(args), _lattice(args), coprime=not args.all_pairs,
                                max_value=args.max_value, func=args.func)
    cfg = _config(args, inputs={"poly": args.poly, "func": args.func, "max_value": args.max_value,
                                "coprime": not args.all_pairs}, domain=_domain_dict(args), N=args.N)
    _emit(args, cfg, rep.to_dict(), rep.csv_rows(args.func), AVG_CSV_HEADER)


def cmd_sieve_census(args):
    _need(args, "poly", "N")
    if args.mode == UNIVARIATE:
        P = parse_intpoly(args.poly)
    else:
        P = parse_hompoly(args.poly)
    rep = census(P, args.N, args.mode, args.B)
    cfg = _config(args, inputs={"poly": args.poly, "mode": args.mode, "B": args.B}, N=args.N)
    d = rep.to_dict()
    header = tuple(d)
    _emit(args, cfg, d, [tuple(d[h] for h in header)], header)


def cmd_newform_trace(args):
    _need(args, "k")
    if args.N is None and args.N_max is None:
        raise ConfigError("give --N or --N-max")
    if args.N is not None:
        reps = [trace_report(args.N, args.k)]
    else:
        reps = trace_table(range(1, args.N_max + 1), args.k)
    cfg = _config(args, inputs={"k": args.k, "N_max": args.N_max}, N=args.N)
    if args.format == "csv":
        text = f"# ecfamilies {__version__} config {json.dumps(cfg.to_dict(), sort_keys=True)}\n" + reports_csv(reps)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    res = reps[0].to_dict() if args.N is not None else [r.to_dict() for r in reps]
    _emit(args, cfg, res)


def cmd_build_family(args):
    given = [x for x in (args.j, args.target, args.recipe) if x]
    if len(given) != 1:
        raise ConfigError("give exactly one of --j, --target, --recipe")
    if args.recipe:
        from .builder import recipe_from_json

        try:
            with open(args.recipe) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read recipe: {e}") from None
        rec = recipe_from_json(obj)
        inputs = {"recipe": args.recipe}
    elif args.j:
        rec = recipe_from_j_d(parse_ratfunc(args.j), parse_ratfunc(args.d or "1"))
        inputs = {"j": args.j, "d": args.d or "1"}
    else:
        k = [int(v) for v in args.k.split(",")] if args.k else None
        kw = {n: parse_intpoly(getattr(args, n)) for n in ("R1", "R2", "R3", "R4") if getattr(args, n)}
        rec = target_m(parse_hompoly(args.target), k=k, **kw)
        inputs = {"target": args.target, "k": args.k, **{n: getattr(args, n) for n in ("R1", "R2", "R3", "R4")}}
    an = analyze(rec.surface())
    res = rec.to_dict()
    res.update(M=an.M.to_text(), B=an.B.to_text(), Bprime=an.Bprime.to_text(),
               deg_irr_Bprime=deg_irr(an.Bprime), predicted_deg_irr_Bprime=predict_deg_irr_bprime(rec))
    _emit(args, _config(args, inputs=inputs), res)


def _pt(P):
    if P.is_infinity():
        return "O"
    return [str(P.x), str(P.y)]


def cmd_quartic_map(args):
    _need(args, "f", "d", "base")
    f = parse_intpoly(args.f)
    base = _pair(args.base, "--base")
    E, phi = quartic_to_weierstrass(f, args.d, base)
    pts = [_pair(p, "--point") for p in args.point or []]
    if args.search:
        F = HomPoly(4, list(reversed([f.c[i] if i < len(f.c) else 0 for i in range(5)])))
        for x, y, z in twist_point_search(F, args.d, args.search, args.jobs):
            if z != 0:
                pts.append((Fraction(x, z), Fraction(y, z * z)))
    images = []
    for p in pts:
        Q = phi(*p)
        images.append({"source": [str(p[0]), str(p[1])], "image": _pt(Q), "h_x": naive_height(Q),
                       "canonical_height": canonical_height(E, Q, args.iterations)})
    res = {"E_d": {"d": E.d, "a2": E.a2, "a4": E.a4, "a6": E.a6}, "images": images}
    cfg = _config(args, inputs={"f": args.f, "d": args.d, "base": args.base, "points": args.point,
                                "search": args.search, "iterations": args.iterations})
    _emit(args, cfg, res)


# ---------------------------------------------------------------- parser

def _add_common(p, budget=False, domain=False, surface=False, oracle=False, jobs=False):
    p.add_argument("--config", help="JSON file whose keys mirror the long options")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    if surface:
        p.add_argument("--c4", help="c4 as a rational function of t")
        p.add_argument("--c6", help="c6 as a rational function of t")
        p.add_argument("--surface", help="JSON file with c4, c6 (or j, d)")
    if oracle:
        p.add_argument("--oracle", help="p = 2, 3 local root number table")
    if budget:
        p.add_argument("--trial-bound", type=int, default=Budget().trial_bound)
        p.add_argument("--rho-iterations", type=int, default=Budget().rho_iterations)
    if jobs:
        p.add_argument("--jobs", type=int, default=1)
    if domain:
        p.add_argument("--domain", choices=("rational", "progression"), default="rational")
        p.add_argument("--a", type=int, default=0, help="progression residue")
        p.add_argument("--m", type=int, default=1, help="progression modulus")
        p.add_argument("--quadrant")
        p.add_argument("--sector", help="'x1,y1:x2,y2', counterclockwise from the first direction")
        p.add_argument("--lattice", help="generators 'a,b;c,d'")
        p.add_argument("--offset", help="coset offset 'x,y'")


def build_parser():
    ap = argparse.ArgumentParser(prog="ecfamilies", description="Root numbers and parity statistics for elliptic surfaces over Q(t)")
    ap.add_argument("--version", action="version", version=f"ecfamilies {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze-surface", help="places, reduction types and M, B, B'")
    _add_common(p, surface=True)
    p.set_defaults(handler=cmd_analyze_surface)

    p = sub.add_parser("fiber-w", help="root number of the fiber at t = y/x")
    _add_common(p, surface=True, oracle=True, budget=True)
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.set_defaults(handler=cmd_fiber_w)

    for name, fn, hlp in (("average", cmd_average, "average of W over a domain"),
                          ("autocov", cmd_autocov, "average of W(t) W(t + shift)")):
        p = sub.add_parser(name, help=hlp)
        _add_common(p, surface=True, oracle=True, budget=True, domain=True, jobs=True)
        p.add_argument("--N", type=int)
        p.add_argument("--normalize", choices=("count", "square"), default="count",
                       help="also report sum / N^2 with 'square'")
        if name == "autocov":
            p.add_argument("--k", type=int, help="integer shift (progressions)")
            p.add_argument("--t0", help="rational shift (rational domains)")
        p.set_defaults(handler=fn)

    p = sub.add_parser("sweep-lambda", help="average of lambda or mu of polynomial values")
    _add_common(p, domain=True)
    p.add_argument("--poly")
    p.add_argument("--N", type=int)
    p.add_argument("--func", choices=("liouville", "moebius"), default="liouville")
    p.add_argument("--max-value", type=int, help="bivariate: 0 < P(a, b) <= max over a, b >= 1")
    p.add_argument("--all-pairs", action="store_true", help="do not restrict to coprime pairs")
    p.set_defaults(handler=cmd_sweep_lambda)

    p = sub.add_parser("sieve-census", help="exact count of square-free values against the Euler product")
    _add_common(p)
    p.add_argument("--poly")
    p.add_argument("--N", type=int)
    p.add_argument("--mode", choices=(UNIVARIATE, BIVARIATE, BIVARIATE_COPRIME), default=UNIVARIATE)
    p.add_argument("--B", type=int, default=1000, help="Euler product truncation")
    p.set_defaults(handler=cmd_sieve_census)

    p = sub.add_parser("newform-trace", help="Fricke traces and signed newform counts")
    _add_common(p)
    p.add_argument("--N", type=int)
    p.add_argument("--N-max", type=int)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(handler=cmd_newform_trace)

    p = sub.add_parser("build-family", help="family from (j, d) or from a target M")
    _add_common(p)
    p.add_argument("--j")
    p.add_argument("--d")
    p.add_argument("--target", help="square-free form in x, y")
    p.add_argument("--k", help="comma-separated exponents")
    for n in ("R1", "R2", "R3", "R4"):
        p.add_argument(f"--{n}")
    p.add_argument("--recipe", help="JSON recipe file")
    p.set_defaults(handler=cmd_build_family)

    p = sub.add_parser("quartic-map", help="map points of d y^2 = f(x) to E_d")
    _add_common(p, jobs=True)
    p.add_argument("--f", help="quartic in x")
    p.add_argument("--d", type=int)
    p.add_argument("--base", help="base point 'r,s'")
    p.add_argument("--point", action="append", help="'x,y' (repeatable)")
    p.add_argument("--search", type=int, help="also map all integral solutions with |x|, |z| <= N")
    p.add_argument("--iterations", type=int, default=4)
    p.set_defaults(handler=cmd_quartic_map)
    return ap, sub


def _parse(argv):
    ap, sub = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config: {e}") from None
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items() if k != "command"}
        sp = sub.choices[args.command]
        known = {a.dest for a in sp._actions}
        unknown = set(cfg) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        sp.set_defaults(**cfg)
        args = ap.parse_args(argv)
    return args


_USER_ERRORS = (ConfigError, ParseError, MalformedTable, NotASurface, NotCoprime, DegenerateJ,
                TargetUnachievable, NotSquarefree, BasePointInvalid)


def main(argv=None) -> int:
    try:
        args = _parse(argv)
        args.handler(args)
    except _USER_ERRORS as e:
        print(f"ecfamilies: error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as e:
        print(f"ecfamilies: error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
