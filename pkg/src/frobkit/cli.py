"""Command-line front end.

Every command prints one JSON report (or writes it to --out).  Exit codes:
0 pass, 1 fail, 2 inconclusive, 3 usage or input error.
"""

import argparse
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .algebra import AlgebraMismatch, Element, check_algebra_axioms, format_element
from .charfn import BerezinianUndefined, berezinian, char_function, character, infinity_expansion
from .finitespace import (BudgetExceeded, FiniteSpace, enumerate_sym_pq, enumeration_budget,
                          open_question_probe, verify_ev_well_defined,
                          verify_variety_equations)
from .frobenius import frobenius_map
from .homclass import (ReconstructionError, Strategy, detect_degrees, grid_budget, is_n_hom,
                       is_pq_hom, reconstruct_rational)
from .io import (InputError, algebra_from_json, algebra_to_json, dump,
                 load_algebra, load_element, load_map, read_json)
from .series import format_series
from .sympower import (NotNHomomorphism, br_F_from_f, br_f_from_F, is_algebra_hom,
                       sym_power_algebra, verify_key_formula)

EXIT = {"pass": 0, "fail": 1, "inconclusive": 2}
USAGE_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _qs(coords):
    return [str(x) for x in coords]


def _strategy(args):
    if args.strategy == "basis":
        return Strategy("basis")
    return Strategy("random", samples=args.samples, seed=args.seed,
                    require_certainty=args.require_certainty)


def _series_json(s):
    return {"text": format_series(s), "coefficients": [_qs(c.coords) for c in s.coeffs]}


# commands: each returns (verdict, result dict)

def cmd_check_algebra(args):
    A = algebra_from_json(read_json(args.algebra), args.algebra, validate=False)
    report = check_algebra_axioms(A)
    return ("pass" if report.ok else "fail"), {"dim": A.dim, **report.to_json()}


def cmd_charfn(args):
    f = load_map(args.map)
    a = load_element(args.elem, f.domain)
    exp = char_function(f, a, args.order)
    chi = character(f)
    result = {"element": _qs(a.coords), "series": _series_json(exp.series),
              "psis": [_qs(c.coords) for c in exp.psis],
              "character": {"value": _qs(chi.value.coords), "integral": chi.integral}}
    verdict = "pass"
    if args.berezinian is not None:
        try:
            result["berezinian"] = _qs(berezinian(f, a, args.berezinian).coords)
        except BerezinianUndefined as exc:
            result["berezinian"] = None
            result["berezinian_error"] = str(exc)
            verdict = "inconclusive"
    if args.at_infinity:
        if not chi.integral:
            result["at_infinity"] = {"error": "character is not an integer; R is not rational"}
            verdict = "fail"
        else:
            try:
                inf = infinity_expansion(f, a, args.order, args.berezinian or "auto")
                result["at_infinity"] = {"character": inf.character,
                                         "berezinian": _qs(inf.berezinian.coords),
                                         "tail": _series_json(inf.tail)}
            except BerezinianUndefined as exc:
                result["at_infinity"] = {"error": str(exc)}
                verdict = "inconclusive"
    return verdict, result


def cmd_frobenius(args):
    f = load_map(args.map)
    elems = [load_element(p, f.domain) for p in args.elems]
    value = frobenius_map(f, elems, memo=None if args.no_memo else "ordered")
    return "pass", {"k": len(elems), "memo": "none" if args.no_memo else "ordered",
                    "value": _qs(value.coords), "text": format_element(value)}


def _detect_element(args, f):
    if args.elem is not None:
        return load_element(args.elem, f.domain)
    rng = random.Random(args.seed)
    return Element(f.domain, [Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                              for _ in range(f.domain.dim)])


def cmd_classify(args):
    f = load_map(args.map)
    strategy = _strategy(args)
    if args.n is not None:
        report = is_n_hom(f, args.n, args.bound, strategy)
        return report.verdict, report.to_json()
    if args.pq is not None:
        report = is_pq_hom(f, args.pq[0], args.pq[1], args.bound, strategy)
        return report.verdict, report.to_json()
    max_p, max_q = args.detect
    if not f.codomain.split:
        raise InputError("--detect needs a split codomain (ground field or function algebra)")
    a = _detect_element(args, f)
    s = char_function(f, a, args.bound).series
    found = detect_degrees(s, max_p, max_q)
    result = {"test": f"detect max_p={max_p} max_q={max_q}", "element": _qs(a.coords),
              "order": args.bound, "degrees": list(found) if found else None}
    if found is None:
        result["note"] = "no (p, q) in range certifies through the series order"
        return "inconclusive", result
    result["form"] = reconstruct_rational(s, *found).to_json()
    return "pass", result


def cmd_sympower(args):
    A = load_algebra(args.algebra)
    sym = sym_power_algebra(A, args.n)
    result = {"n": args.n, "dim": sym.dim, "algebra": algebra_to_json(sym.algebra)}
    verdict = "pass"
    if args.verify_key or args.roundtrip:
        if args.map is None:
            raise InputError("--verify-key and --roundtrip need --map")
        f = load_map(args.map)
        if f.domain != A:
            raise AlgebraMismatch("map domain is not the given algebra")
        try:
            F = br_F_from_f(f, args.n, sym)
        except NotNHomomorphism as exc:
            result["error"] = str(exc)
            return "fail", result
        result["F_matrix"] = [_qs(r) for r in F.matrix]
        if args.roundtrip:
            ok = is_algebra_hom(F) and br_f_from_F(F, sym) == f
            ok = ok and br_F_from_f(br_f_from_F(F, sym), args.n, sym, check=False) == F
            result["roundtrip"] = ok
            verdict = verdict if ok else "fail"
        if args.verify_key:
            if args.elem is None:
                raise InputError("--verify-key needs --elem")
            a = load_element(args.elem, A)
            ok = verify_key_formula(f, a, args.n, F, sym)
            result["key_formula"] = ok
            verdict = verdict if ok else "fail"
    return verdict, result


def cmd_sympq(args):
    X = FiniteSpace([p.strip() for p in args.points.split(",")])
    if args.probe:
        report = open_question_probe(X, args.p, args.q, args.trials, args.seed, args.bound)
        return None, report.to_json()
    space = enumerate_sym_pq(X, args.p, args.q)
    classes = [{"representative": str(c.representative), "members": c.class_members}
               for c in space.classes]
    result = {"points": list(X.points), "p": args.p, "q": args.q, "count": len(space),
              "classes": classes}
    if not args.verify:
        return "pass", result
    ok = verify_ev_well_defined(space)
    result["ev_well_defined"] = ok
    failures = []
    for c in space.classes:
        report = verify_variety_equations(c, X, args.p, args.q, args.bound)
        if not report.passed:
            failures.append({"class": str(c.representative), "report": report.to_json()})
    result["variety_failures"] = failures
    return ("pass" if ok and not failures else "fail"), result


def cmd_verify_all(args):
    from .acceptance import verify_all

    def progress(r):
        print(r.line(), file=sys.stderr, flush=True)
    results, report = verify_all(args.suite, args.seed, args.mutant, progress=progress)
    failed = [r for r in results if not r.passed]
    if failed:
        names = ", ".join(f"{r.id} ({r.name})" for r in failed)
        print(f"failed criteria: {names}", file=sys.stderr)
    return report["verdict"], report


# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this file")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")

    parser = _Parser(prog="frobkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"frobkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-algebra", parents=[common], help="check algebra axioms")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_check_algebra)

    p = sub.add_parser("charfn", parents=[common], help="characteristic series of a map")
    p.add_argument("--map", required=True)
    p.add_argument("--elem", required=True)
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--at-infinity", action="store_true")
    p.add_argument("--berezinian", choices=["auto", "nilpotent", "reconstruction"])
    p.set_defaults(func=cmd_charfn)

    p = sub.add_parser("frobenius", parents=[common], help="evaluate the Frobenius map")
    p.add_argument("--map", required=True)
    p.add_argument("--elems", nargs="+", required=True)
    p.add_argument("--no-memo", action="store_true")
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("classify", parents=[common], help="n-hom and p|q-hom tests")
    p.add_argument("--map", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--n", type=int)
    mode.add_argument("--pq", type=int, nargs=2, metavar=("P", "Q"))
    mode.add_argument("--detect", type=int, nargs=2, metavar=("MAXP", "MAXQ"))
    p.add_argument("--elem", help="element for --detect (default: seeded random)")
    p.add_argument("--bound", type=int,
                   help="largest psi index examined (default max(12, degree + 6))")
    p.add_argument("--strategy", choices=["basis", "random"], default="basis")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--require-certainty", action="store_true",
                   help="report a sampled pass as inconclusive (exit 2)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sympower", parents=[common], help="symmetric powers S^n(A)")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify-key", action="store_true")
    p.add_argument("--roundtrip", action="store_true")
    p.add_argument("--map")
    p.add_argument("--elem")
    p.set_defaults(func=cmd_sympower)

    p = sub.add_parser("sympq", parents=[common], help="Sym^{p|q} of a finite set")
    p.add_argument("--points", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    action = p.add_mutually_exclusive_group()
    action.add_argument("--list", action="store_true")
    action.add_argument("--verify", action="store_true")
    action.add_argument("--probe", action="store_true")
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_sympq)

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--suite", choices=["desk", "extended"], default="desk")
    p.add_argument("--mutant", choices=["psi-sign"])
    p.set_defaults(func=cmd_verify_all)
    return parser


def _materialize(args):
    """Fill in defaults that depend on other flags, so the echo is complete."""
    if args.command == "classify" and args.bound is None:
        if args.n is not None:
            need = args.n
        elif args.pq is not None:
            need = sum(args.pq)
        else:
            need = sum(args.detect)
        args.bound = max(12, need + 6)


def replay_argv(config):
    """Command line that reproduces a report from its config echo."""
    argv = [config["command"]]
    for key, value in config.items():
        if key in ("command", "budget", "sizes") or value is None or value is False:
            continue
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif isinstance(value, list):
            argv += [flag] + [str(v) for v in value]
        else:
            argv += [flag, str(value)]
    return argv


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    cfg["budget"] = {"grid": grid_budget(), "enumeration": enumeration_budget()}
    return cfg


def run(argv=None):
    """Parse, dispatch and report; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    start = time.perf_counter()
    try:
        _materialize(args)
        config = _config(args)
        verdict, result = args.func(args)
        code = EXIT[verdict] if verdict is not None else 0
    except (InputError, AlgebraMismatch, BudgetExceeded, ReconstructionError,
            ValueError, OSError) as exc:
        print(f"frobkit {args.command}: error: {exc}", file=sys.stderr)
        report = {"artifact": {"name": "frobkit", "version": __version__},
                  "command": args.command, "verdict": "error", "error": str(exc)}
        _emit(report, args.out)
        return USAGE_ERROR
    if args.command == "verify-all":
        report = result
        report["config"].update(config)
        report["timing"]["total_ms"] = _ms(start)
    else:
        report = {"artifact": {"name": "frobkit", "version": __version__},
                  "command": args.command, "config": config, "verdict": verdict,
                  "result": result,
                  "timing": {"ms": _ms(start)}}
    _emit(report, args.out)
    return code


def _ms(start):
    return int((time.perf_counter() - start) * 1000)


def _emit(report, out):
    text = dump(report, out)
    if out is None:
        sys.stdout.write(text)


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
