"""Command-line front end.

Exit codes: 0 pass, 1 identity or tolerance failure, 2 input error,
3 contour or precondition error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

import numpy as np

from . import lfactors as lf
from . import reptheory as rt
from .algebra import LaurentPoly
from .archimedean import identities as ar
from .archimedean.quadrature import QuadratureSpec
from .errors import (
    BalanceViolation,
    BoundExceeded,
    CentralCharacterViolation,
    ContourViolation,
    LforgeError,
    NonConvergence,
)
from .parallel import ordered_map

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3
WHICH = ("wedge2_std2", "sym2", "std4", "tensor8")
REPORT_KEYS = {"command", "pass", "reports"}

# per-check default tolerances for `verify arch`
ARCH_TOL = {
    "barnes_first_lemma": 1e-8,
    "barnes_second_lemma": 1e-8,
    "stade_transformation": 1e-8,
    "stade_fixed_point": 1e-12,
    "archimedean_zeta_after_barnes1": 1e-6,
    "archimedean_zeta_full": 1e-3,
    "gamma_reflection": 1e-12,
    "gamma_duplication": 1e-12,
}


class InputError(Exception):
    pass


# -- input helpers -------------------------------------------------------------------


def _load_json(text: str | None):
    if text is None:
        return None
    if text == "-":
        raw = sys.stdin.read()
    elif os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raw = text
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse JSON input: {exc}") from None


def _satake(args) -> dict:
    if getattr(args, "symbolic", False):
        base = rt.symbolic_satake()
    else:
        base = rt.trivial_satake()
    obj = _load_json(getattr(args, "input", None))
    if obj is not None:
        try:
            base.update(rt.satake_from_json(obj))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return base


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


# -- lfactor / series ----------------------------------------------------------------


def _block_text(lam: LaurentPoly, d: int, var: str) -> str:
    x = var if d == 1 else f"{var}^{d}"
    if lam == LaurentPoly.const(1):
        return f"(1-{x})"
    if lam == LaurentPoly.const(-1):
        return f"(1+{x})"
    text = str(lam)
    if lam.is_monomial() and text.startswith("-"):
        return f"(1+{text[1:]}*{x})"
    return f"(1-{text}*{x})"


def factor_text(factor: lf.EulerFactor) -> str:
    var = "U" if factor.var == 1 else "T"
    counts = Counter()
    order = []
    for lam, d in factor.blocks:
        key = _block_text(lam, d, var)
        if key not in counts:
            order.append(key)
        counts[key] += 1
    return "".join(f"{k}^-{counts[k]}" for k in order)


def _factor(args, sat) -> lf.EulerFactor:
    which, place = args.which, args.place
    if which == "std4":
        return lf.lfactor_std4(sat["gl4"])
    if which == "tensor8":
        return lf.lfactor_tensor_gsp4_gl2(sat["gsp4"], sat["gl2"])
    if which == "sym2":
        omega = sat["gl4"].central if place == "split" else sat["gsp4"].central
        return lf.lfactor_sym2(sat["gl2"], omega)
    if place == "split":
        return lf.lfactor_wedge2_std2_split(sat["gl4"], sat["gl2"])
    return lf.lfactor_wedge2_std2_inert(sat["gsp4"], sat["gl2"])


def cmd_lfactor(args) -> int:
    sat = _satake(args)
    factor = _factor(args, sat)
    if factor.var == 1:
        series = factor.series(0, ("T", "U"), (0, args.order))
    else:
        series = factor.series(args.order)
    doc = {
        "factor": factor.label,
        "place": args.place,
        "blocks": [{"inverse_root": str(lam), "degree": d} for lam, d in factor.blocks],
        "product": factor_text(factor),
        "series": str(series),
        "order": args.order,
    }
    if args.json:
        print(_dump(doc))
    else:
        print(f"{factor.label}: {doc['product']}")
        print(f"series: {doc['series']}")
    return EXIT_OK


def cmd_series(args) -> int:
    sat = _satake(args)
    if args.two_variable:
        if args.place != "split":
            raise InputError("the two-variable factor is defined at split places")
        cfg = lf.ZetaSeriesConfig(args.order, args.u_order, "split")
        series = lf.two_variable_factor(sat["gl4"], sat["gl2"], cfg)
    else:
        pi = sat["gl4"] if args.place == "split" else sat["gsp4"]
        cfg = lf.ZetaSeriesConfig(args.order, 0, args.place)
        series = lf.zeta_series(args.place, pi, sat["gl2"], cfg, prefactor=args.prefactor)
    if args.json:
        print(_dump(series.to_json()))
    else:
        print(series)
    return EXIT_OK


# -- verify nonarch ------------------------------------------------------------------------


def _nonarch_point(sat, N, mutate, lmax_sym=6, lmax_sep=5) -> list:
    out = []
    out += lf.verify_split(sat["gl4"], sat["gl2"], N, mutate=mutate)
    out += lf.verify_inert(sat["gsp4"], sat["gl2"], N, mutate=mutate)
    out.append(lf.verify_sym_alg_fact(sat["gsp4"], sat["gl2"], lmax_sym))
    out.append(lf.verify_separation_split(sat["gl4"], sat["gl2"], lmax_sep))
    out.append(lf.verify_two_variable(sat["gl4"], sat["gl2"], lf.ZetaSeriesConfig(N, 4, "split")))
    return out


def _nonarch_task(task):
    kind, payload, N, mutate = task
    if kind == "random":
        rng = np.random.Generator(np.random.PCG64(payload))
        sat = lf.random_satake(rng)
    elif kind == "symbolic":
        sat = rt.symbolic_satake()
    else:
        sat = payload
    return _nonarch_point(sat, N, mutate)


def _branching_reports() -> list:
    out = []
    rng = range(-3, 4)
    for l1 in rng:
        for l2 in rng:
            for l3 in rng:
                if l1 >= l2 >= l3:
                    r = rt.verify_branching((l1, l2, l3))
                    out.append({"identity": "branching_u3_u2", "params": {"lambda": [l1, l2, l3]},
                                "order": None, "pass": r.ok,
                                "first_mismatch": None if r.ok else {"degree": None, "lhs": str(r.diff),
                                                                     "rhs": "0"}})
    return out


def cmd_verify_nonarch(args) -> int:
    N = args.order
    if N < 1:
        raise InputError("--order must be >= 1")
    tasks = []
    if args.symbolic:
        tasks.append(("symbolic", None, N, args.mutate))
    else:
        tasks.append(("fixed", _satake(args), N, args.mutate))
        for ss in np.random.SeedSequence(args.seed).spawn(args.sweeps):
            tasks.append(("random", ss, N, args.mutate))
    reports = [r for batch in ordered_map(_nonarch_task, tasks) for r in batch]
    reports += _branching_reports()
    return _emit(args, "verify nonarch", reports)


# -- verify arch -----------------------------------------------------------------------------


def _arch_task(task):
    kind, payload, quad, tol = task
    if kind == "barnes1":
        a, b, F = payload
        res = ar.check_barnes1(*a, *b, F, quad)
    elif kind == "barnes2":
        a, b, F = payload
        res = ar.check_barnes2(*a, *b, F, quad)
    elif kind == "stade":
        a, b, F = payload
        res = ar.check_stade(a, b, F, quad)
    elif kind == "stade_fixed":
        a, b, F = payload
        res = ar.check_stade(a, b, F, quad)
        res.check = "stade_fixed_point"
    elif kind == "zeta":
        params, s, stage = payload
        res = ar.check_arch_zeta(params, s, stage, quad)
    elif kind == "gamma":
        return _gamma_reports(payload, tol)
    else:  # pragma: no cover
        raise ValueError(kind)
    t = tol if tol is not None else ARCH_TOL[res.check]
    return [res.report(t)]


def _gamma_reports(seed_seq, tol) -> list:
    from .archimedean.gamma import complex_gamma, gamma_C, gamma_R
    import cmath

    rng = np.random.Generator(np.random.PCG64(seed_seq))
    worst_refl, worst_dup = (0.0, None), (0.0, None)
    for _ in range(100):
        z = complex(rng.uniform(-4.5, 4.5), rng.uniform(-4.0, 4.0))
        lhs = complex_gamma(z) * complex_gamma(1 - z) * cmath.sin(cmath.pi * z) / cmath.pi
        e = abs(lhs - 1)
        if e >= worst_refl[0]:
            worst_refl = (e, z, lhs, 1.0)
        s = complex(rng.uniform(0.1, 6.0), rng.uniform(-10.0, 10.0))
        a, b = gamma_R(s) * gamma_R(s + 1), gamma_C(s)
        e = ar.rel_err(a, b)
        if e >= worst_dup[0]:
            worst_dup = (e, s, a, b)
    out = []
    for name, (e, z, a, b) in (("gamma_reflection", worst_refl), ("gamma_duplication", worst_dup)):
        t = tol if tol is not None else ARCH_TOL[name]
        out.append({"check": name, "params": {"worst_point": ar.cjson(z), "draws": 100},
                    "lhs": ar.cjson(a), "rhs": ar.cjson(b), "rel_err": e, "pass": bool(e <= t)})
    return out


def _arch_tasks(args) -> list:
    quad = QuadratureSpec.from_json(_load_json(args.quad)) if args.quad else QuadratureSpec()
    tol = args.tolerance
    root = np.random.SeedSequence(args.seed)
    s_b1, s_b2, s_st, s_g = root.spawn(4)
    tasks = [("barnes1", ((0.5, 0.5), (0.5, 0.5), "R"), quad, tol)]
    for F, seeds in zip("RC", s_b1.spawn(2)):
        for ss in seeds.spawn(args.sweeps):
            a, b = ar.random_barnes1(np.random.Generator(np.random.PCG64(ss)))
            tasks.append(("barnes1", (a, b, F), quad, tol))
    for F, seeds in zip("RC", s_b2.spawn(2)):
        for ss in seeds.spawn(args.sweeps):
            a, b = ar.random_barnes2(np.random.Generator(np.random.PCG64(ss)))
            tasks.append(("barnes2", (a, b, F), quad, tol))
    for F, seeds in zip("RC", s_st.spawn(2)):
        for ss in seeds.spawn(args.sweeps):
            a, b = ar.random_stade(np.random.Generator(np.random.PCG64(ss)))
            tasks.append(("stade", (a, b, F), quad, tol))
        fa, fb = ar.stade_fixed_point(0.5, 0.6, 0.7, 0.8, 0.9, 2.5)
        tasks.append(("stade_fixed", (fa, fb, F), quad, tol))
    tasks.append(("gamma", s_g, quad, tol))
    params_list = [ar.TRIVIAL_PARAMS, ar.GENERIC_PARAMS]
    if args.params:
        obj = _load_json(args.params)
        try:
            params_list = [ar.ArchParams.from_json(obj)]
            s = obj.get("s", 1.0)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed archimedean parameters: {exc}") from None
    else:
        s = 1.0
    s = ar._c(s)
    for p in params_list:
        tasks.append(("zeta", (p, s, "after_barnes1"), quad, tol))
    if args.stage == "full":
        tasks.append(("zeta", (params_list[0], s, "full"), quad, tol))
    return tasks


def cmd_verify_arch(args) -> int:
    if args.sweeps < 0:
        raise InputError("--sweeps must be non-negative")
    tasks = _arch_tasks(args)
    reports = [r for batch in ordered_map(_arch_task, tasks) for r in batch]
    return _emit(args, "verify arch", reports)


# -- reports ---------------------------------------------------------------------------------


def _name(r) -> str:
    return r.get("identity") or r.get("check") or "?"


def _table(reports) -> str:
    rows = Counter()
    fails = Counter()
    order = []
    for r in reports:
        n = _name(r)
        if n not in rows:
            order.append(n)
        rows[n] += 1
        fails[n] += 0 if r.get("pass") else 1
    width = max([len(n) for n in order] + [5])
    lines = [f"{'check'.ljust(width)}  runs  failed  status"]
    for n in order:
        status = "PASS" if fails[n] == 0 else "FAIL"
        lines.append(f"{n.ljust(width)}  {rows[n]:4d}  {fails[n]:6d}  {status}")
    total_fail = sum(fails.values())
    lines.append(f"overall: {'PASS' if total_fail == 0 else 'FAIL'} "
                 f"({len(reports)} checks, {total_fail} failed)")
    return "\n".join(lines)


def _emit(args, command, reports) -> int:
    ok = all(r["pass"] for r in reports)
    doc = {"command": command, "pass": ok, "reports": reports}
    if args.json:
        print(_dump(doc))
    else:
        print(_table(reports))
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(_dump(doc) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_report(args) -> int:
    merged = []
    for path in args.paths:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{path}: {exc}") from None
        if not isinstance(doc, dict) or set(doc) != REPORT_KEYS or not isinstance(doc["reports"], list):
            raise InputError(f"{path}: not an lforge report document")
        for r in doc["reports"]:
            if not isinstance(r, dict) or "pass" not in r or not ("identity" in r or "check" in r):
                raise InputError(f"{path}: malformed report entry")
        merged.extend(doc["reports"])
    return _emit(args, "report", merged)


# -- argument parsing ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lforge", description="Local L-factor identities: exact and numerical checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order=8):
        sp.add_argument("--order", type=int, default=order, help="truncation order N")
        sp.add_argument("--json", action="store_true", help="emit JSON")

    lp = sub.add_parser("lfactor", help="print an unramified Euler factor")
    lp.add_argument("input", nargs="?", help="Satake JSON (inline, file path or '-')")
    lp.add_argument("--which", choices=WHICH, default="wedge2_std2")
    lp.add_argument("--place", choices=lf.PLACES, default="split")
    lp.add_argument("--symbolic", action="store_true", help="use generic symbols")
    common(lp, order=2)
    lp.set_defaults(func=cmd_lfactor)

    sp = sub.add_parser("series", help="print the zeta series")
    sp.add_argument("input", nargs="?")
    sp.add_argument("--place", choices=lf.PLACES, default="split")
    sp.add_argument("--symbolic", action="store_true")
    sp.add_argument("--prefactor", action="store_true", help="multiply by L(2s, Sym^2 x omega)")
    sp.add_argument("--two-variable", action="store_true", help="two-variable (T, U) factor")
    sp.add_argument("--u-order", type=int, default=4)
    common(sp, order=4)
    sp.set_defaults(func=cmd_series)

    vp = sub.add_parser("verify", help="run verification suites")
    vsub = vp.add_subparsers(dest="suite", required=True)
    na = vsub.add_parser("nonarch", help="exact non-archimedean identities")
    na.add_argument("input", nargs="?", help="extra Satake point (JSON)")
    na.add_argument("--sweeps", type=int, default=50)
    na.add_argument("--seed", type=int, default=0)
    na.add_argument("--symbolic", action="store_true")
    na.add_argument("--mutate", action="store_true", help="inject a corruption (must fail)")
    na.add_argument("--output", help="also write the JSON report here")
    common(na, order=8)
    na.set_defaults(func=cmd_verify_nonarch)

    aa = vsub.add_parser("arch", help="numerical archimedean identities")
    aa.add_argument("--sweeps", type=int, default=20)
    aa.add_argument("--seed", type=int, default=0)
    aa.add_argument("--stage", choices=ar.STAGES, default="after_barnes1")
    aa.add_argument("--tolerance", type=float, default=None, help="override every tolerance")
    aa.add_argument("--params", help="ArchParams JSON (mu, nu, field, s)")
    aa.add_argument("--quad", help='quadrature overrides, e.g. {"T": 40, "nodes": 4000}')
    aa.add_argument("--output", help="also write the JSON report here")
    aa.add_argument("--json", action="store_true")
    aa.set_defaults(func=cmd_verify_arch)

    rp = sub.add_parser("report", help="merge report files")
    rp.add_argument("paths", nargs="*")
    rp.add_argument("--json", action="store_true")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"lforge: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ContourViolation, CentralCharacterViolation, BalanceViolation) as exc:
        print(f"lforge: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NonConvergence as exc:
        print(f"lforge: quadrature did not converge: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (BoundExceeded, ValueError, TypeError) as exc:
        print(f"lforge: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LforgeError as exc:  # pragma: no cover
        print(f"lforge: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
