"""cycloverify command line. Every subcommand prints JSON; --human prints a table."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .report import VerificationReport


def _char(text: str):
    from .chars import parse_character

    return parse_character(text)


def _emit(obj, args) -> None:
    if isinstance(obj, VerificationReport):
        obj = obj.to_dict(timing=args.timing)
    elif isinstance(obj, list) and obj and isinstance(obj[0], VerificationReport):
        obj = [r.to_dict(timing=args.timing) for r in obj]
    if args.human:
        _print_human(obj)
    else:
        print(json.dumps(obj, sort_keys=True, indent=2, default=str))


def _print_human(obj, indent: int = 0) -> None:
    pad = " " * indent
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                print(f"{pad}{k}:")
                _print_human(v, indent + 2)
            else:
                print(f"{pad}{str(k).ljust(width)}  {v}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, (dict, list)):
                print(f"{pad}[{i}]")
                _print_human(v, indent + 2)
            else:
                print(f"{pad}- {v}")
    else:
        print(f"{pad}{obj}")


# -- handlers ------------------------------------------------------------------------------

def cmd_char(args):
    chi = _char(args.chi)
    prim = chi.primitive()
    return {"character": chi.to_json(), "conductor": chi.conductor, "order": chi.order,
            "parity": chi.parity, "primitive": prim.to_json(),
            "values": {str(a): chi.exponent(a) for a in range(1, chi.modulus + 1)}}


def cmd_gauss(args):
    from .cyclo import gauss_sum

    chi = _char(args.chi).primitive()
    g = gauss_sum(chi)
    check = g * gauss_sum(chi.inverse())
    return {"character": chi.to_json(), "gauss_sum": g.to_json(),
            "tau_tau_inverse": str(check.to_fraction()) if check.is_rational() else str(check),
            "expected": chi.parity * chi.modulus}


def cmd_norm_rel(args):
    from .cyclo import check_norm_relation, norm_relation_grid

    if args.bound:
        grid = norm_relation_grid(args.bound)
        return {"bound": args.bound, "cases": len(grid), "failures": [g for g in grid if not g["pass"]]}
    return check_norm_relation(args.m, args.l)


def cmd_lvalue(args):
    import mpmath

    from .lcomplex import dirichlet_L, gen_bernoulli

    chi = _char(args.chi).primitive()
    out = {"character": chi.to_json(), "r": args.r, "prec": args.prec}
    if args.r <= 0:
        k = 1 - args.r
        exact = gen_bernoulli(k, chi).value * Fraction(-1, k)
        out["exact"] = str(exact.to_fraction()) if exact.is_rational() else exact.to_json()
    lt = dirichlet_L(chi, args.r, args.prec, args.embedding)
    out["order"] = lt.order
    out["leading"] = mpmath.nstr(lt.value, args.digits)
    return out


def cmd_check(args):
    from . import lcomplex

    if args.kind == "fe":
        return lcomplex.check_hurwitz_fe(args.c, args.N, args.r, args.prec)
    if args.kind == "li":
        return lcomplex.check_li_identity(_char(args.chi), args.r, args.prec)
    if args.kind == "fe-ratio":
        return lcomplex.check_fe_ratio(_char(args.chi), args.r, args.prec)
    return lcomplex.check_class_number_formula(args.N, args.prec)


def cmd_padic(args):
    from . import padics

    if args.kind == "log":
        x = padics.PadicElement.from_rational(Fraction(args.x), args.p, args.prec)
        return {"x": args.x, "p": args.p, "log": padics.iwasawa_log(x).to_json()}
    if args.kind == "teich":
        return {"a": args.x, "p": args.p, "teichmuller": padics.teichmuller(int(args.x), args.p, args.prec).to_json()}
    return padics.check_unramified_exact_sequence(args.p, args.f, args.prec)


def cmd_padic_l(args):
    from . import kubota

    chi = _char(args.chi)
    if args.kind == "value":
        return kubota.Lp_at_negative(chi, args.p, args.k, args.prec).to_json()
    res = kubota.Lp_at_one(chi, args.p, args.M, args.prec)
    return {"character": chi.to_json(), "p": args.p, "M": args.M, "value": res.value.to_json(),
            "digits": res.digits, "stable": res.stable}


def cmd_mc_check(args):
    from .kubota import check_mc2_scalar

    return check_mc2_scalar(_char(args.chi), args.p, args.M, args.prec)


def cmd_recip_check(args):
    from .recip import epsilon_generator_check, verify_indexcomp

    chi = _char(args.chi)
    if args.level is not None:
        return epsilon_generator_check(chi, args.r, args.p, args.level)
    return verify_indexcomp(chi, args.r, args.p)


def cmd_euler_system(args):
    from .eulersys import verify_es_axioms_formal, verify_es_axioms_r1

    chi = _char(args.chi)
    if args.r == 1:
        return verify_es_axioms_r1(chi, args.bound)
    return verify_es_axioms_formal(chi, args.r, args.bound)


def cmd_class_number(args):
    from .lcomplex import published_relative_class_number, relative_class_number

    h = relative_class_number(args.p)
    try:
        ref = published_relative_class_number(args.p)
    except LookupError:
        ref = None
    return {"p": args.p, "h_minus": h, "table": ref, "agrees": ref is None or ref == h}


def cmd_run_suite(args):
    from .suite import SuiteConfig, run_suite

    cfg = SuiteConfig.from_toml(args.config)
    if args.only:
        cfg.only = tuple(args.only)
    if args.jobs:
        cfg.jobs = args.jobs
    if args.empty:
        cfg.cells = ()
    result = run_suite(cfg)
    out = result.to_dict(timing=args.timing)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(out, fh, sort_keys=True, indent=2)
    if args.human:
        for name, s in out["summary"].items():
            print(f"{s['criterion']:>2}  {name:<20} {s['passed']:>4}/{s['checks']:<4} {s['verdict']}")
        print(f"overall: {out['verdict']}")
    else:
        print(json.dumps(out if args.full else {"schema": 1, "verdict": out["verdict"],
                                                 "summary": out["summary"]}, sort_keys=True, indent=2))
    return 0 if result.passed else 1


# -- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cycloverify")
    ap.add_argument("--human", action="store_true", help="print a table instead of JSON")
    ap.add_argument("--timing", action="store_true", help="include wall-time fields")
    # repeated after the subcommand; SUPPRESS keeps a flag given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)

    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    p = add("char", cmd_char, help="describe a Dirichlet character")
    p.add_argument("--chi", required=True, help="kronecker:D, trivial, or JSON")

    p = add("gauss", cmd_gauss, help="Gauss sum of a primitive character")
    p.add_argument("--chi", required=True)

    p = add("norm-rel", cmd_norm_rel, help="norm relation of 1 - zeta_ml")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--bound", type=int, default=0, help="run the whole grid ml <= bound")

    p = add("lvalue", cmd_lvalue, help="leading term of L(chi, s) at an integer")
    p.add_argument("--chi", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--prec", type=int, default=192)
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--embedding", type=int, default=1)

    p = add("check", cmd_check, help="complex-analytic identities")
    p.add_argument("kind", choices=["fe", "li", "fe-ratio", "cnf"])
    p.add_argument("--chi")
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--prec", type=int, default=192)

    p = add("padic", cmd_padic, help="p-adic utilities")
    p.add_argument("kind", choices=["log", "teich", "exactseq"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x", default="1")
    p.add_argument("--f", type=int, default=2)
    p.add_argument("--prec", type=int, default=40)

    p = add("padic-l", cmd_padic_l, help="p-adic L-values")
    p.add_argument("kind", choices=["value", "at-one"])
    p.add_argument("--chi", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--M", type=int, default=2)
    p.add_argument("--prec", type=int, default=30)

    p = add("mc-check", cmd_mc_check, help="L_p(chi, 1) two ways")
    p.add_argument("--chi", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--M", type=int, default=2)
    p.add_argument("--prec", type=int, default=30)

    p = add("recip-check", cmd_recip_check, help="index formula and generator identity")
    p.add_argument("--chi", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--level", type=int, default=None, help="run the generator check at level n")

    p = add("euler-system", cmd_euler_system, help="Euler-system axioms")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--chi", required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--bound", type=int, default=200)

    p = add("class-number", cmd_class_number, help="relative class number of Q(zeta_p)")
    p.add_argument("--p", type=int, required=True)

    p = add("run-suite", cmd_run_suite, help="run the acceptance grid")
    p.add_argument("--config", default=None, help="TOML file (default: packaged grid)")
    p.add_argument("--only", action="append", help="restrict to a cell; repeatable")
    p.add_argument("--jobs", type=int, default=0)
    p.add_argument("--output", default=None, help="write the full JSON report here")
    p.add_argument("--full", action="store_true", help="print every report, not just the summary")
    p.add_argument("--empty", action="store_true", help="run no cells")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.fn(args)
    except (ValueError, ArithmeticError, LookupError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    if isinstance(out, int):
        return out
    _emit(out, args)
    if isinstance(out, VerificationReport):
        return 0 if out.passed else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
