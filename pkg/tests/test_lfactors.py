import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lforge import lfactors as lf
from lforge import reptheory as rt
from lforge.algebra import LaurentPoly, TruncatedSeries, ps_mul
from lforge.cli import factor_text

P = LaurentPoly.parse
TRIV = rt.trivial_satake()
SYM = rt.symbolic_satake()


def coeffs(series, n):
    return [series.coefficient(k) for k in range(n + 1)]


# -- frozen examples ---------------------------------------------------------------


def test_sym2_factor():
    f = lf.lfactor_sym2(TRIV["gl2"], 1)
    assert factor_text(f) == "(1-T^2)^-3"
    f = lf.lfactor_sym2(SYM["gl2"], P("chi"))
    assert f.blocks == [(P("b1^2*chi"), 2), (P("b1*b2*chi"), 2), (P("b2^2*chi"), 2)]


def test_wedge2_split_factor():
    f = lf.lfactor_wedge2_std2_split(TRIV["gl4"], TRIV["gl2"])
    assert factor_text(f) == "(1-T)^-12"
    assert coeffs(f.series(2), 2) == [1, 12, 78]
    f = lf.lfactor_wedge2_std2_split(SYM["gl4"], SYM["gl2"])
    assert f.degree == 12 and len(f.blocks) == 12
    prod = LaurentPoly.const(1)
    for r in f.inverse_roots():
        prod = prod * r
    assert prod == (SYM["gl4"].central * SYM["gl2"].central) ** 6


def test_wedge2_inert_factor():
    f = lf.lfactor_wedge2_std2_inert(TRIV["gsp4"], TRIV["gl2"])
    assert factor_text(f) == "(1-T)^-8(1-T^2)^-2"
    assert f.degree == 12


def test_tensor8_factor():
    f = lf.lfactor_tensor_gsp4_gl2(TRIV["gsp4"], TRIV["gl2"])
    assert factor_text(f) == "(1-T)^-8"
    f = lf.lfactor_tensor_gsp4_gl2(SYM["gsp4"], SYM["gl2"])
    assert len(f.blocks) == 8
    # formally dropping the second GL2 parameter leaves four blocks
    lost = [b for b in f.blocks if "b2" not in b[0].vars]
    assert len(lost) == 4


def test_std4_factor():
    f = lf.lfactor_std4(TRIV["gl4"])
    assert factor_text(f) == "(1-U)^-4"
    assert [b[0] for b in lf.lfactor_std4(SYM["gl4"]).blocks] == [P(f"a{i}") for i in range(1, 5)]


def test_whittaker_values():
    assert lf.cs_whittaker_gsp4(0, 0, SYM["gsp4"]) == 1
    assert lf.cs_whittaker_gsp4(0, 1, TRIV["gsp4"]) == P("4*qh^-4")
    assert lf.cs_whittaker_gsp4(1, 0, TRIV["gsp4"]) == P("5*qh^-6")
    assert lf.cs_whittaker_gl2(0, 0, SYM["gl2"]) == 1
    assert lf.cs_whittaker_gl4(0, 0, SYM["gl4"]) == 1
    assert lf.cs_whittaker_gl2(0, 1, SYM["gl2"]) == P("b1*qh^-1 + b2*qh^-1")
    assert lf.cs_whittaker_gl4(0, 1, TRIV["gl4"]) == P("6*qh^-4")
    with pytest.raises(ValueError):
        lf.cs_whittaker_gl2(-1, 0, SYM["gl2"])


def test_zeta_series_trivial():
    z = lf.zeta_series("split", TRIV["gl4"], TRIV["gl2"], lf.ZetaSeriesConfig(3))
    assert coeffs(z, 3) == [1, 12, 75, 328]
    zi = lf.zeta_series("inert", TRIV["gsp4"], TRIV["gl2"], lf.ZetaSeriesConfig(3, 0, "inert"))
    assert zi.coefficient(0) == 1
    ratio = ps_mul(lf.lfactor_wedge2_std2_inert(TRIV["gsp4"], TRIV["gl2"]).series(3),
                   lf.lfactor_sym2(TRIV["gl2"], 1).inverse_series(3))
    assert zi == ratio


def test_zeta_series_q_free():
    z = lf.zeta_series("split", SYM["gl4"], SYM["gl2"], lf.ZetaSeriesConfig(3))
    for c in z.coeffs.values():
        assert lf.QH not in c.trimmed().vars


def test_config_validation():
    with pytest.raises(ValueError):
        lf.ZetaSeriesConfig(0)
    with pytest.raises(ValueError):
        lf.ZetaSeriesConfig(4, 0, "ramified")


def test_verifiers_trivial_and_symbolic():
    for sat in (TRIV, SYM):
        assert all(r["pass"] for r in lf.verify_split(sat["gl4"], sat["gl2"], 6))
        reps = lf.verify_inert(sat["gsp4"], sat["gl2"], 6)
        assert len(reps) == 2 and all(r["pass"] for r in reps)


def test_mutation_detected_early():
    for r in lf.verify_split(TRIV["gl4"], TRIV["gl2"], 6, mutate=True) + \
            lf.verify_inert(TRIV["gsp4"], TRIV["gl2"], 6, mutate=True):
        assert not r["pass"]
        assert r["first_mismatch"]["degree"] <= 2


def test_report_schema():
    r = lf.verify_split(TRIV["gl4"], TRIV["gl2"], 4)[0]
    assert set(r) == {"identity", "params", "order", "pass", "first_mismatch"}


def test_plethysm_dimension_specializations():
    # h_2 of eight ones = 1 + dim V(2,0) * 3 + dim V(1,1) * 1
    eight = [LaurentPoly.const(1)] * 8
    assert lf.complete_homogeneous(eight, 2) == 36 == 1 + 10 * 3 + 5 * 1
    twelve = [LaurentPoly.const(1)] * 12
    assert lf.complete_homogeneous(twelve, 2) == 78 == 3 + 20 * 3 + 15 * 1
    assert lf.verify_sym_alg_fact(TRIV["gsp4"], TRIV["gl2"], 2)["pass"]
    assert lf.verify_separation_split(TRIV["gl4"], TRIV["gl2"], 2)["pass"]


def test_plethysm_symbolic():
    assert lf.verify_sym_alg_fact(SYM["gsp4"], SYM["gl2"], 6)["pass"]
    assert lf.verify_separation_split(SYM["gl4"], SYM["gl2"], 5)["pass"]


def test_plethysm_first_degree():
    r = lf.verify_sym_alg_fact(SYM["gsp4"], SYM["gl2"], 1)
    assert r["pass"]
    eig = [e * b for b in SYM["gl2"].beta for e in SYM["gsp4"].eigenvalues]
    assert lf.complete_homogeneous(eig, 1) == sum(eig, LaurentPoly.const(0))


def test_two_variable_trivial():
    cfg = lf.ZetaSeriesConfig(4, 2)
    s = lf.two_variable_factor(TRIV["gl4"], TRIV["gl2"], cfg)
    assert s.coefficient(0, 0) == 1
    assert s.coefficient(0, 1) == 4
    assert s.coefficient(1, 0) == 12
    assert s == lf.two_variable_product(TRIV["gl4"], TRIV["gl2"], cfg)


def test_two_variable_symbolic():
    assert lf.verify_two_variable(SYM["gl4"], SYM["gl2"], lf.ZetaSeriesConfig(4, 2))["pass"]


def test_two_variable_symmetries():
    cfg = lf.ZetaSeriesConfig(3, 2)
    base = lf.two_variable_factor(SYM["gl4"], SYM["gl2"], cfg)
    swapped = lf.two_variable_factor(SYM["gl4"], rt.SatakeGL2(("b2", "b1")), cfg)
    assert base == swapped
    perm = rt.SatakeGL4(("a3", "a1", "a4", "a2"), "chi")
    assert lf.two_variable_factor(perm, SYM["gl2"], cfg) == base


# -- properties ---------------------------------------------------------------------


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=8, deadline=None)
def test_identities_hold_for_random_satake(seed):
    sat = lf.random_satake(np.random.Generator(np.random.PCG64(seed)))
    assert all(r["pass"] for r in lf.verify_split(sat["gl4"], sat["gl2"], 5))
    assert all(r["pass"] for r in lf.verify_inert(sat["gsp4"], sat["gl2"], 5))
    assert lf.verify_two_variable(sat["gl4"], sat["gl2"], lf.ZetaSeriesConfig(4, 2))["pass"]


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=10, deadline=None)
def test_euler_factors_normalized(seed):
    sat = lf.random_satake(np.random.Generator(np.random.PCG64(seed)))
    cases = [
        (lf.lfactor_wedge2_std2_split(sat["gl4"], sat["gl2"]), 12),
        (lf.lfactor_wedge2_std2_inert(sat["gsp4"], sat["gl2"]), 12),
        (lf.lfactor_tensor_gsp4_gl2(sat["gsp4"], sat["gl2"]), 8),
        (lf.lfactor_std4(sat["gl4"]), 4),
        (lf.lfactor_sym2(sat["gl2"], sat["gl4"].central), 6),
    ]
    for f, deg in cases:
        assert f.degree == deg
        s = f.series(3, ("T", "U"), (3, 3))
        assert s.coefficient(0, 0) == 1


def test_random_satake_reproducible():
    a = lf.random_satake(np.random.Generator(np.random.PCG64(7)))
    b = lf.random_satake(np.random.Generator(np.random.PCG64(7)))
    assert rt.satake_to_json(**a) == rt.satake_to_json(**b)
    for s in a.values():
        for p in rt._entries(s):
            c = p.constant_value()
            assert c != 0 and abs(c.numerator) <= 7 and c.denominator <= 7
