"""Command-line driver: ``shiftconv {forms,scan,unfold,verify}``.

Exit codes: 0 when everything passes, 1 when a verification fails, 2 on a
configuration error. Output goes to ``--out`` or, if that is omitted, to the
directory named by ``SHIFTCONV_OUT`` (default: the current directory).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .dirichlet import UnfoldingJob, unfolding_check, unfolding_check_2d
from .eisenstein import functional_eq_check
from .errors import CertificationError, PoleError, QuadratureError, TruncationError
from .forms import delta_form, dim_cusp_forms, eigenforms, read_form, write_form
from .relations import SupportedSeq, only_zero_solution, pm_relation_reduction
from .shifted import scan, scan_csv
from .sieve import twist_average_check
from .specfun import pm_polynomial

MAX_TRUNC = 10**6
OUT_ENV = "SHIFTCONV_OUT"
SCHEMA_VERSION = 1
UNFOLD_COLUMNS = (
    "form_id", "r", "s_re", "s_im", "N",
    "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_err",
)


class ConfigError(Exception):
    pass


def _out_dir(arg):
    path = arg or os.environ.get(OUT_ENV) or "."
    os.makedirs(path, exist_ok=True)
    return path


def _fmt(x):
    return repr(float(x))


def _parse_complex(text):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise ConfigError(f"cannot parse s value {text!r}") from exc


def _parse_range(text):
    """``"1-10"`` or ``"1,3,5"`` or ``"4"``."""
    out = []
    try:
        for part in text.split(","):
            if "-" in part:
                lo, hi = part.split("-")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError as exc:
        raise ConfigError(f"bad range {text!r}") from exc
    if not out or min(out) < 1:
        raise ConfigError(f"range {text!r} must contain positive integers")
    return sorted(set(out))


def _load_forms(args, trunc):
    if trunc > MAX_TRUNC:
        raise ConfigError(f"truncation {trunc} exceeds the guard rail {MAX_TRUNC}")
    if getattr(args, "form_file", None):
        f = read_form(args.form_file)
        if f.trunc_order < trunc:
            raise ConfigError(f"{args.form_file} is known only to q^{f.trunc_order}")
        return [f]
    if getattr(args, "weight", None) is not None:
        try:
            return eigenforms(args.weight, trunc)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return [delta_form(trunc)]


# -- forms -------------------------------------------------------------------------


def cmd_forms(args):
    trunc = args.trunc
    if not 1 <= trunc <= MAX_TRUNC:
        raise ConfigError(f"--trunc must lie in [1, {MAX_TRUNC}]")
    out = _out_dir(args.out)
    if args.weight is not None and not args.delta:
        k = args.weight
        if k < 0 or k % 2:
            raise ConfigError(f"weight {k} must be a non-negative even integer")
        if dim_cusp_forms(k) == 0:
            print(f"S_{k} has dimension 0: no forms written")
            return 0
    forms = _load_forms(args, trunc)
    for f in forms:
        path = os.path.join(out, f"{f.label}.form")
        write_form(f, path)
        print(path)
    return 0


# -- scan --------------------------------------------------------------------------


def cmd_scan(args):
    rs = _parse_range(args.r)
    Ms = sorted(set(args.M or [1000]))
    if min(Ms) < 1:
        raise ConfigError("M must be positive")
    trunc = max(Ms) + max(rs)
    forms = _load_forms(args, trunc)
    rows = []
    for f in forms:
        rows.extend(scan(f, rs, Ms, jobs=args.jobs))
    text = scan_csv(rows)
    path = os.path.join(_out_dir(args.out), args.name)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    print(path)
    return 0


# -- unfold ------------------------------------------------------------------------


def _unfold_one(task):
    f, r, s, N, tol, bug = task
    res = unfolding_check(UnfoldingJob(f, r, s, N, tol), inject_sign_bug=bug)
    return (f.label, r, s, N, res)


def cmd_unfold(args):
    ss = [_parse_complex(t) for t in (args.s or ["2.5", "2+1.3j"])]
    rs = _parse_range(args.r)
    tol = args.tol
    if not tol > 0:
        raise ConfigError("--tol must be positive")
    forms = _load_forms(args, args.trunc + max(rs))
    tasks = [(f, r, s, args.trunc, tol, False) for f in forms for r in rs for s in ss]
    try:
        if args.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_unfold_one, tasks))
        else:
            results = [_unfold_one(t) for t in tasks]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(UNFOLD_COLUMNS)
    worst = 0.0
    for label, r, s, N, res in results:
        worst = max(worst, res.rel_err)
        w.writerow([
            label, r, _fmt(s.real), _fmt(s.imag), N,
            _fmt(res.lhs.real), _fmt(res.lhs.imag),
            _fmt(res.rhs.real), _fmt(res.rhs.imag), _fmt(res.rel_err),
        ])
    path = os.path.join(_out_dir(args.out), args.name)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())
    print(path)
    return 0 if worst <= args.max_rel_err else 1


# -- verify ------------------------------------------------------------------------


def _check_unfolding(inject_bug):
    f = delta_form(260)
    worst = 0.0
    for s in (2.5, 2 + 1.3j):
        res = unfolding_check(UnfoldingJob(f, 1, s, 200, 1e-10), inject_sign_bug=inject_bug)
        worst = max(worst, res.rel_err)
    gap = unfolding_check_2d(UnfoldingJob(f, 1, 2.5, 50, 1e-10), 256)
    return {"metric": worst, "tolerance": 1e-6, "passed": worst <= 1e-6 and gap <= 1e-10,
            "details": {"orthogonality_gap_2d": gap}}


def _check_pm_coefficients(_):
    bad = []
    for m in range(0, 21):
        for k in range(4, 31):
            try:
                pm_polynomial(m, k)
            except ArithmeticError:
                bad.append([m, k])
    return {"metric": len(bad), "tolerance": 0, "passed": not bad, "details": {"vanishing": bad}}


def _check_only_zero(_):
    fails = [[n, r] for n in range(1, 13) for r in range(1, 11) if not only_zero_solution(n, r)]
    return {"metric": len(fails), "tolerance": 0, "passed": not fails, "details": {"failures": fails}}


def _check_pm_reduction(_):
    rng = random.Random(20240601)
    nonzero = 0
    for _ in range(50):
        r = rng.randint(1, 10)
        support = rng.sample(range(1, 40), rng.randint(1, 8))
        c = SupportedSeq(r, {n: rng.randint(-50, 50) or 1 for n in support})
        if pm_relation_reduction(c, rng.randint(0, 8), rng.randint(4, 30)) != 0:
            nonzero += 1
    return {"metric": nonzero, "tolerance": 0, "passed": nonzero == 0, "details": {"cases": 50}}


def _check_sieve(_):
    f = delta_form(200)
    zs = [0.5j, 0.3 + 0.7j, -0.2 + 1.1j]
    worst = 0.0
    for m in (2, 4, 6, 10):
        for n0 in range(1, m + 1):
            worst = max(worst, twist_average_check(f, n0, m, zs, 200))
    literal = twist_average_check(f, 1, 4, zs, 200, normalization="totient")
    return {"metric": worst, "tolerance": 1e-8, "passed": worst <= 1e-8 and literal > 1e-8,
            "details": {"totient_normalization_mod4": literal}}


def _check_functional_eq(_):
    pts = [(0.1 + 1.2j, 0.3 + 2j), (2j, 0.7), (1j, 0.5 + 3j), (0.3 + 0.9j, 0.2 + 0.5j),
           (-0.4 + 0.8j, 0.9 + 7j)]
    worst = max(functional_eq_check(z, s) for z, s in pts)
    return {"metric": worst, "tolerance": 1e-8, "passed": worst <= 1e-8, "details": {"points": 5}}


CHECKS = {
    "unfolding": ("Mellin transform of the shifted convolution equals Gamma times D(s, r)",
                  _check_unfolding),
    "pm_coefficients": ("coefficients of the terminating 2F1 polynomial never vanish",
                        _check_pm_coefficients),
    "only_zero": ("Vandermonde power-sum system has only the zero solution", _check_only_zero),
    "pm_reduction": ("hypergeometric relations reduce to power-sum relations",
                     _check_pm_reduction),
    "sieve": ("residue-class restriction equals the twist average of shifted copies",
              _check_sieve),
    "functional_eq": ("completed Eisenstein series is symmetric under s -> 1 - s",
                      _check_functional_eq),
}


def _run_check(task):
    name, inject_bug = task
    anchor, fn = CHECKS[name]
    try:
        res = fn(inject_bug)
    except (CertificationError, PoleError, QuadratureError, TruncationError) as exc:
        res = {"metric": None, "tolerance": None, "passed": False,
               "details": {"error": f"{type(exc).__name__}: {exc}"}}
    res["metric"] = None if res["metric"] is None else float(res["metric"])
    res["passed"] = bool(res["passed"])
    res["details"] = {k: float(v) if hasattr(v, "dtype") or isinstance(v, float) else v
                      for k, v in res["details"].items()}
    return {"name": name, "anchor": anchor, **res}


def cmd_verify(args):
    if args.checks is None:
        names = list(CHECKS)
    else:
        names = [c for c in args.checks.split(",") if c.strip()]
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ConfigError(f"unknown checks: {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    tasks = [(n, args.inject_bug) for n in names]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_check, tasks))
    else:
        results = [_run_check(t) for t in tasks]
    report = {
        "schema_version": SCHEMA_VERSION,
        "inject_bug": args.inject_bug,
        "all_passed": all(r["passed"] for r in results),
        "checks": results,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    path = os.path.join(_out_dir(args.out), args.name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    for r in results:
        print(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['metric']}")
    print(path)
    return 0 if report["all_passed"] else 1


# -- parser ------------------------------------------------------------------------


def _add_form_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--delta", action="store_true", help="use Delta (the default)")
    g.add_argument("--weight", type=int, help="use the eigenforms of this weight")
    g.add_argument("--form-file", help="read a form written by 'shiftconv forms'")


def build_parser():
    p = argparse.ArgumentParser(prog="shiftconv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("forms", help="write q-expansions to .form files")
    _add_form_args(q)
    q.add_argument("--trunc", type=int, default=1000)
    q.add_argument("--out")
    q.set_defaults(func=cmd_forms)

    q = sub.add_parser("scan", help="sign / non-vanishing statistics of a(n) a(n+r)")
    _add_form_args(q)
    q.add_argument("--r", default="1-10", help="shifts, e.g. 1-10 or 1,2,5")
    q.add_argument("--M", type=int, action="append", help="sequence length (repeatable)")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--out")
    q.add_argument("--name", default="scan.csv")
    q.set_defaults(func=cmd_scan)

    q = sub.add_parser("unfold", help="Mellin-integral check of D(s, r)")
    _add_form_args(q)
    q.add_argument("--r", default="1")
    q.add_argument("--s", action="append", help="complex s, e.g. 2+1.3j (repeatable)")
    q.add_argument("--trunc", type=int, default=200)
    q.add_argument("--tol", type=float, default=1e-10)
    q.add_argument("--max-rel-err", type=float, default=1e-6)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--out")
    q.add_argument("--name", default="unfold.csv")
    q.set_defaults(func=cmd_unfold)

    q = sub.add_parser("verify", help="run the identity checks, write a JSON report")
    q.add_argument("--checks", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    q.add_argument("--inject-bug", action="store_true",
                   help="flip the sign of the unfolding right-hand side")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--out")
    q.add_argument("--name", default="verify.json")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ConfigError, TruncationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
