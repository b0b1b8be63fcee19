"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 invalid parameters, 3 mathematical
anomaly (a check that should hold failed), 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import characters as ch
from . import shapovalov as sh
from . import singular as sg
from . import verify as vf
from .affmodules import WindowError
from .exactalg import parse_rational
from .h4finite import Label, ParameterError, UncataloguedError

EXIT_OK, EXIT_INTERNAL, EXIT_PARAMS, EXIT_ANOMALY, EXIT_USAGE = 0, 1, 2, 3, 4
THREADS_ENV = "H4REP_THREADS"

FAMILIES = {
    "verma+": "V+",
    "verma-": "V-",
    "irr+": "L+",
    "irr-": "L-",
    "vacuum": "L0",
    "relaxed": "R",
    "irr-relaxed": "E",
    "relaxed+": "R+",
    "relaxed-": "R-",
    "irr-relaxed+": "E+",
    "irr-relaxed-": "E-",
    "relaxed0": "R0",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        if "invalid rational" in message:
            raise ParameterError(message)
        raise UsageError(message)


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid rational {text!r}: {exc}") from exc


def _common(p):
    p.add_argument("--i", type=_rational, default=Fraction(0))
    p.add_argument("--j", type=_rational, default=Fraction(0))
    p.add_argument("--h", type=_rational, default=None)
    p.add_argument("--k", type=_rational, default=Fraction(1))
    p.add_argument("--qmax", type=int, default=6)
    p.add_argument("--mwin", type=int, default=6)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")


def build_parser():
    p = _Parser(prog="h4rep", description="Characters, singular vectors and Shapovalov forms for the affine h4 algebra.")
    sub = p.add_subparsers(dest="cmd")

    c = sub.add_parser("char", help="character table of a module family")
    _common(c)
    c.add_argument("--family", required=True, choices=sorted(FAMILIES))
    c.add_argument("--brute", action="store_true", help="enumerate the module instead of expanding the closed form")

    s = sub.add_parser("singular", help="singular vector of V+_(i,j) at level 1")
    _common(s)
    s.add_argument("--m", type=int, default=1)

    r = sub.add_parser("shap", help="Shapovalov rank report")
    _common(r)
    r.add_argument("--family", required=True, choices=sorted(FAMILIES))
    r.add_argument("--generator", type=int, default=None)

    v = sub.add_parser("verify", help="run named verification suites")
    _common(v)
    v.add_argument("suites", nargs="*")
    v.add_argument("--suite", action="append", default=[])
    v.add_argument("--imax", type=int, default=3)
    return p


# ------------------------------------------------------------------ char

def _label(family, a) -> Label:
    fam = FAMILIES[family]
    i, j, h, k = a.i, a.j, a.h, a.k
    if k != 1 and fam in ("L+", "L-", "E", "E+", "E-"):
        raise ParameterError("irreducible characters are catalogued at level k = 1")
    if fam in ("L+", "L-", "V+", "V-", "L0"):
        if fam == "L0" and i != 0:
            raise ParameterError("the induced one-dimensional module needs i = 0 (I acts trivially on finite-dimensional modules)")
        return Label(fam, i, j)
    if h is None:
        raise ParameterError(f"family {family} needs --h")
    if fam == "R0":
        if i != 0 or h != 0:
            raise ParameterError("relaxed0 needs i = h = 0")
        return Label("R0", 0, j, 0)
    if fam in ("R", "E"):
        if i == 0 and h == 0:
            raise ParameterError("i = h = 0 gives a reducible dense module; use relaxed0")
        if i != 0 and (h / i - j).denominator == 1:
            raise ParameterError("dense module is reducible: h/i lies in j + Z; use relaxed+ or relaxed-")
        return Label(fam, i, j, h)
    if i == 0:
        raise ParameterError(f"{family} needs i != 0 (the anchor is j = h/i)")
    return Label(fam, i, None, h)


def _module(family, a, N):
    return vf.label_module(_label(family, a), a.k, N)


def _brute_table(family, a, mrange):
    return vf.enumerated_table(_label(family, a), mrange, a.qmax, a.k)


def cmd_char(a, out):
    mrange = (-a.mwin, a.mwin)
    lab = _label(a.family, a)
    if a.brute:
        t = _brute_table(a.family, a, mrange)
        j0, d0 = ch.anchor(lab, a.k)
        t.j0, t.delta0 = j0, d0
    else:
        t = ch.expand(ch.ClosedFormChar(lab, a.k), mrange, a.qmax)
    out.write(t.dumps(a.format) + "\n")
    return EXIT_OK


# --------------------------------------------------------------- singular

def cmd_singular(a, out):
    i, m = a.i, a.m
    if Fraction(i).denominator != 1 or i < 1 or m < 1:
        raise ParameterError("singular needs integers i >= 1 and m >= 1")
    i = int(i)
    c = sg.solve_singular(i, m)
    ref = sg.closed_form(i) if m == 1 else sg.power(sg.closed_form(i), m)
    checks = [("solver equals closed form" if m == 1 else "solver equals closed form to the power m", c == ref)]
    checks += sg.verify_singular(c, a.j)
    ok = all(v for _, v in checks)
    if a.format == "json":
        out.write(json.dumps({"i": i, "m": m, "terms": c.to_json(),
                              "checks": [{"name": n, "passed": bool(v)} for n, v in checks]}, indent=1) + "\n")
    elif a.format == "csv":
        out.write(sg.dumps(c, "csv") + "\n")
    else:
        out.write(c.pretty() + "\n")
        for n, v in checks:
            out.write(f"{'PASS' if v else 'FAIL'} {n}\n")
    if not ok:
        sys.stderr.write("ANOMALY: singular vector checks failed\n")
        return EXIT_ANOMALY
    return EXIT_OK


# ------------------------------------------------------------------- shap

def cmd_shap(a, out):
    _label(a.family, a)
    M = _module(a.family, a, a.qmax)
    try:
        rep = sh.cell_report(M, (-a.mwin, a.mwin), a.qmax, a.generator)
    except sh.GeneratorError as exc:
        raise ParameterError(str(exc)) from exc
    if a.format == "json":
        out.write(json.dumps({"family": a.family, "generator": a.generator, "cells": rep}, indent=1) + "\n")
    elif a.format == "csv":
        out.write("m,n,dim_verma,rank,kernel_dim\n")
        for r in rep:
            out.write(f"{r['m']},{r['n']},{r['dim_verma']},{r['rank']},{r['kernel_dim']}\n")
    else:
        for r in rep:
            out.write(f"({r['m']},{r['n']}) dim={r['dim_verma']} rank={r['rank']} kernel={r['kernel_dim']}\n")
    return EXIT_OK


# ----------------------------------------------------------------- verify

def _suite_config(a) -> vf.SuiteConfig:
    cfg = vf.SuiteConfig(qmax=a.qmax, mwin=a.mwin, imax=a.imax, k=a.k,
                         j=a.j if a.j else Fraction(1, 3), h=a.h if a.h is not None else Fraction(2, 7))
    return cfg


def _run_one(args):
    name, cfg = args
    return name, [c.to_json() for c in vf.run_suite(name, cfg)]


def cmd_verify(a, out):
    names = list(a.suites) + list(a.suite)
    if not names:
        raise UsageError("name at least one suite (or 'all')")
    if names == ["all"]:
        names = list(vf.SUITES)
    unknown = [n for n in names if n not in vf.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; available: {', '.join(vf.SUITES)}")
    cfg = _suite_config(a)
    threads = max(1, int(os.environ.get(THREADS_ENV, "1") or 1))
    jobs = [(n, cfg) for n in names]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = dict(ex.map(_run_one, jobs))
    else:
        results = dict(map(_run_one, jobs))
    report = {}
    failed = 0
    total = 0
    for n in names:
        checks = results[n]
        bad = sum(1 for c in checks if not c["passed"])
        failed += bad
        total += len(checks)
        report[n] = {"passed": bad == 0, "checks": checks}
    if a.format == "json":
        out.write(json.dumps({"suites": report, "total": total, "failed": failed}, indent=1) + "\n")
    else:
        for n in names:
            for c in report[n]["checks"]:
                detail = f" [{c['detail']}]" if c["detail"] else ""
                out.write(f"{'PASS' if c['passed'] else 'FAIL'} {n}: {c['name']}{detail}\n")
        out.write(f"{total - failed}/{total} checks passed\n")
    if failed:
        sys.stderr.write(f"ANOMALY: {failed} check(s) failed\n")
        return EXIT_ANOMALY
    return EXIT_OK


COMMANDS = {"char": cmd_char, "singular": cmd_singular, "shap": cmd_shap, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if a.cmd is None:
            raise UsageError("choose a command: " + ", ".join(COMMANDS))
        if a.qmax < 0:
            raise ParameterError("qmax must be nonnegative")
        if a.mwin < 0:
            raise ParameterError("mwin must be nonnegative")
        if a.k == 0:
            raise ParameterError("the level k must be nonzero")
        return COMMANDS[a.cmd](a, out)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (ParameterError, UncataloguedError, WindowError) as exc:
        sys.stderr.write(f"invalid parameters: {exc}\n")
        return EXIT_PARAMS
    except sg.SingularAnomaly as exc:
        sys.stderr.write(f"ANOMALY: {exc}\n")
        return EXIT_ANOMALY
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
