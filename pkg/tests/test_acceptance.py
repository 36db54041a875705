"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also collected in the "acceptance criteria" terminal summary section.
"""
import cmath
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from lforge import lfactors as lf
from lforge import reptheory as rt
from lforge.algebra import LaurentPoly, lp_exact_div
from lforge.archimedean import identities as ar
from lforge.archimedean.gamma import complex_gamma, gamma_C, gamma_R

SEED, SWEEPS, N = 0, 50, 8


def standard_sweep():
    """The default CLI sweep: 50 PCG64 streams spawned from seed 0, then the symbolic point."""
    out = [lf.random_satake(np.random.Generator(np.random.PCG64(ss)))
           for ss in np.random.SeedSequence(SEED).spawn(SWEEPS)]
    out.append(rt.symbolic_satake())
    return out


def test_c01_split_identity(criterion):
    t0 = time.perf_counter()
    reports = [r for sat in standard_sweep() for r in lf.verify_split(sat["gl4"], sat["gl2"], N)]
    dt = time.perf_counter() - t0
    failed = sum(not r["pass"] for r in reports)
    ok = failed == 0 and len(reports) == SWEEPS + 1 and dt <= 60
    criterion(1, ok, f"split identity: {len(reports)} sets, {failed} failed, N={N}, {dt:.1f}s (limit 60s)")
    assert ok


def test_c02_inert_identities(criterion):
    t0 = time.perf_counter()
    reports = [r for sat in standard_sweep() for r in lf.verify_inert(sat["gsp4"], sat["gl2"], N)]
    dt = time.perf_counter() - t0
    failed = sum(not r["pass"] for r in reports)
    kinds = {r["identity"] for r in reports}
    ok = failed == 0 and len(kinds) == 2 and len(reports) == 2 * (SWEEPS + 1) and dt <= 60
    criterion(2, ok, f"inert identities: {len(reports)} checks ({len(kinds)} factorizations), "
                     f"{failed} failed, {dt:.1f}s (limit 60s)")
    assert ok


def test_c03_plethysm(criterion):
    sym = rt.symbolic_satake()
    r1 = lf.verify_sym_alg_fact(sym["gsp4"], sym["gl2"], 6)
    r2 = lf.verify_separation_split(sym["gl4"], sym["gl2"], 5)
    one = LaurentPoly.const(1)
    c2 = lambda lam: sum(rt.freudenthal_multiplicities("C2sim", lam).values())
    d3 = lambda lam: sum(rt.freudenthal_multiplicities("D3sim", lam).values())
    a1 = lambda lam: sum(rt.freudenthal_multiplicities("A1", lam).values())
    lhs8 = lf.complete_homogeneous([one] * 8, 2)
    rhs8 = 1 + c2((2, 0)) * a1((2, 0)) + c2((1, 1)) * a1((1, 1))
    lhs12 = lf.complete_homogeneous([one] * 12, 2)
    rhs12 = 3 + d3((2, 0, 0)) * a1((2, 0)) + d3((1, 1, 0)) * a1((1, 1))
    dims = (lhs8 == rhs8 == 36) and (lhs12 == rhs12 == 78)
    ok = r1["pass"] and r2["pass"] and dims
    criterion(3, ok, f"plethysm: sym-alg l<=6 {r1['pass']}, separation l<=5 {r2['pass']}, "
                     f"h2(8)={lhs8}={rhs8}, h2(12)={lhs12}={rhs12}")
    assert ok


def _dominant(system, lo, hi):
    n = rt.RootSystemId(system).rank
    out = []

    def rec(prefix, top):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(top, lo - 1, -1):
            rec(prefix + [v], v)

    rec([], hi)
    if system == "D3sim":
        out = [w for w in out if w[-1] == 0]
    return out


def test_c04_character_engine(criterion):
    ranges = {"A1": (-4, 4), "A2": (-4, 4), "A3": (-4, 4), "C2sim": (0, 4), "D3sim": (0, 4)}
    count = bad = 0
    for system, (lo, hi) in ranges.items():
        ones = {v: 1 for v in rt.torus_vars(system)}
        den = rt.alternant(system, rt.RootSystemId(system).rho)
        group = rt.weyl_group(system)
        for lam in _dominant(system, lo, hi):
            count += 1
            num = rt.alternant(system, tuple(a + b for a, b in zip(lam, rt.RootSystemId(system).rho)))
            chi = lp_exact_div(num, den)
            exact = chi * den == num  # zero remainder
            dims = chi.subs(ones) == sum(rt.freudenthal_multiplicities(system, lam).values()) \
                == rt.weyl_dimension(system, lam)
            inv = all(rt.apply_weyl(chi, system, w) == chi for w in group)
            same = chi == rt.weyl_character(system, lam)
            if not (exact and dims and inv and same):
                bad += 1
    ok = bad == 0
    criterion(4, ok, f"character engine: {count} dominant weights over 5 systems, {bad} failed "
                     f"(dimension x3, exact division, Weyl invariance)")
    assert ok


def test_c05_branching(criterion):
    lams = [(a, b, c) for a in range(-3, 4) for b in range(-3, 4) for c in range(-3, 4) if a >= b >= c]
    failed = [lam for lam in lams if not rt.verify_branching(lam).ok]
    ok = not failed
    criterion(5, ok, f"branching U(3)->U(1)xU(2): {len(lams)} weights, {len(failed)} failed")
    assert ok


def test_c06_barnes(criterion):
    t0 = time.perf_counter()
    root = np.random.SeedSequence(SEED)
    s1, s2 = root.spawn(2)
    worst1 = worst2 = 0.0
    n1 = n2 = 0
    for F, seeds in zip("RC", s1.spawn(2)):
        for ss in seeds.spawn(20):
            a, b = ar.random_barnes1(np.random.Generator(np.random.PCG64(ss)))
            worst1 = max(worst1, ar.verify_barnes1(*a, *b, F))
            n1 += 1
    for F, seeds in zip("RC", s2.spawn(2)):
        for ss in seeds.spawn(20):
            a, b = ar.random_barnes2(np.random.Generator(np.random.PCG64(ss)))
            worst2 = max(worst2, ar.verify_barnes2(*a, *b, F))
            n2 += 1
    half = ar.check_barnes1(0.5, 0.5, 0.5, 0.5, "R")
    half_err = abs(half.lhs - math.pi) / math.pi
    dt = time.perf_counter() - t0
    ok = worst1 <= 1e-8 and worst2 <= 1e-8 and half_err <= 1e-8 and dt <= 30
    criterion(6, ok, f"Barnes: first {n1} draws worst {worst1:.2e}, second {n2} draws worst "
                     f"{worst2:.2e}, half case |I-pi|/pi={half_err:.2e}, {dt:.1f}s (limit 30s)")
    assert ok


def test_c07_stade(criterion):
    worst, n = 0.0, 0
    for F, seeds in zip("RC", np.random.SeedSequence(SEED + 1).spawn(2)):
        for ss in seeds.spawn(20):
            a, b = ar.random_stade(np.random.Generator(np.random.PCG64(ss)))
            worst = max(worst, ar.verify_stade(a, b, F))
            n += 1
    fixed = max(ar.verify_stade(*ar.stade_fixed_point(0.5, 0.6, 0.7, 0.8, 0.9, 2.5), F) for F in "RC")
    ok = worst <= 1e-8 and fixed <= 1e-12
    criterion(7, ok, f"Stade: {n} balanced draws worst {worst:.2e}, fixed point {fixed:.2e}")
    assert ok


def test_c08_archimedean_zeta(criterion):
    t0 = time.perf_counter()
    e_triv = ar.arch_zeta_verify(ar.TRIVIAL_PARAMS, 1.0, "after_barnes1")
    e_gen = ar.arch_zeta_verify(ar.GENERIC_PARAMS, 1.0, "after_barnes1")
    e_full = ar.arch_zeta_verify(ar.TRIVIAL_PARAMS, 1.0, "full")
    dt = time.perf_counter() - t0
    ok = e_triv <= 1e-6 and e_gen <= 1e-6 and e_full <= 1e-3 and dt <= 600
    criterion(8, ok, f"archimedean zeta: after_barnes1 trivial {e_triv:.2e}, generic {e_gen:.2e}; "
                     f"full trivial {e_full:.2e}; {dt:.1f}s (limit 600s)")
    assert ok


def test_c09_two_variable(criterion):
    cfg = lf.ZetaSeriesConfig(8, 4)
    reports = [lf.verify_two_variable(sat["gl4"], sat["gl2"], cfg) for sat in standard_sweep()]
    failed = sum(not r["pass"] for r in reports)
    ok = failed == 0
    criterion(9, ok, f"two-variable factor (8,4): {len(reports)} sets, {failed} failed")
    assert ok


def test_c10_gamma_oracles(criterion):
    rng = np.random.Generator(np.random.PCG64(SEED))
    refl = dup = 0.0
    for _ in range(100):
        z = complex(rng.uniform(-4.5, 4.5), rng.uniform(-4.0, 4.0))
        lhs = complex_gamma(z) * complex_gamma(1 - z) * cmath.sin(math.pi * z) / math.pi
        refl = max(refl, abs(lhs - 1))
        s = complex(rng.uniform(0.1, 6.0), rng.uniform(-10.0, 10.0))
        dup = max(dup, ar.rel_err(gamma_R(s) * gamma_R(s + 1), gamma_C(s)))
    ok = refl <= 1e-12 and dup <= 1e-12
    criterion(10, ok, f"gamma oracles over 100 points: reflection {refl:.2e}, duplication {dup:.2e}")
    assert ok


def _cli(args, threads):
    env = dict(os.environ, LFORGE_THREADS=str(threads))
    proc = subprocess.run([sys.executable, "-m", "lforge.cli", *args], env=env,
                          capture_output=True, check=False)
    return proc.returncode, proc.stdout


@pytest.mark.parametrize("suite", ["nonarch", "arch"])
def test_c11_determinism(criterion, suite):
    args = ["verify", suite, "--json", "--seed", "7"]
    runs = [_cli(args, t) for t in (1, 2, 2)]
    codes = {c for c, _ in runs}
    identical = len({out for _, out in runs}) == 1
    ok = identical and codes == {0}
    criterion(11, ok, f"determinism ({suite}): 3 runs at LFORGE_THREADS=1,2,2 "
                      f"{'byte-identical' if identical else 'DIFFER'}, "
                      f"{len(runs[0][1])} bytes, exit {sorted(codes)}")
    assert ok
