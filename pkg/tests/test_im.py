import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_vbs, flat_connections, get, poly, rngs
from vbderiv.algebroid import BundleDerivation, check_flatness
from vbderiv.defcomplex import DefCochain, differential, is_algebroid_derivation
from vbderiv.im import (
    Candidate,
    IMSectionCoords,
    IMTriple,
    candidate_verdicts,
    check_decomposition,
    check_im_triple,
    compose_linear,
    coords_of_pair,
    decompose_linear,
    decomposition_differential,
    euler_triple,
    extend_triple,
    horizontal_from_triple,
    im_section_pde_check,
    internal_derivation,
    internal_triple,
    prop_verdict,
    round_trip_verdict,
    theorem_equivalence_suite,
    triple_of_linear_cochain,
    trivial_core_im_check,
)
from vbderiv.sampling import (
    equivalence_candidates,
    internal_pair,
    perturb_triple,
    random_decomposition,
    random_im_triple,
    random_section,
)
from vbderiv.symexpr import PolyMatrix, PolyVector
from vbderiv.vb import NotLinearError

VBS = all_vbs()
IDS = [a for a, _ in VBS]


def verdicts(reports):
    return {r.check: r.passed for r in reports}


def matrix(rows, chart):
    return PolyMatrix([[poly(t, chart) for t in row] for row in rows])


def vector(texts, chart):
    return PolyVector([poly(t, chart) for t in texts], chart)


@pytest.mark.parametrize("fixture,vb", [("tc-tm0", "tc"), ("tc-tmx", "tc"), ("fc-aff1", "fc"),
                                        ("tangent-aff1", "taff1line"), ("tangent-tm", "ttm")])
def test_fixture_internal_triples_pass(fixture, vb):
    assert all(r.passed for r in check_im_triple(get(fixture, vb), get(fixture, "inner")))


def test_symbol_mismatch_fails_only_sigma():
    W = get("broken_triple", "ttm")
    v = verdicts(check_im_triple(W, get("broken_triple", "mismatch")))
    assert v.pop("sigma") is False
    assert all(v.values()), v


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
def test_euler_and_zero_triples(label, W):
    assert all(r.passed for r in check_im_triple(W, euler_triple(W)))
    zero = euler_triple(W, 0)
    assert all(r.passed for r in check_im_triple(W, zero))
    assert extend_triple(W, zero).is_zero()


def test_wrong_shape_is_rejected():
    W = get("tangent-tm", "ttm")
    t = euler_triple(get("fc-aff1", "fc"))
    with pytest.raises(ValueError):
        check_im_triple(W, t)


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
@given(rng=rngs)
def test_internal_triples_reconstruct_internal_derivations(label, W, rng):
    s = random_section(rng, W.fat, 1)
    t = internal_triple(W, s)
    assert all(r.passed for r in check_im_triple(W, t))
    assert horizontal_from_triple(W, t) == internal_derivation(W, s)
    assert triple_of_linear_cochain(W, internal_derivation(W, s)) == t


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
@given(rng=rngs)
def test_triple_conditions_match_reconstruction(label, W, rng):
    good = random_im_triple(rng, W)
    assert round_trip_verdict(W, good).passed
    assert is_algebroid_derivation(horizontal_from_triple(W, good)).passed
    bad = perturb_triple(rng, W, good)
    ok = all(r.passed for r in check_im_triple(W, bad))
    assert round_trip_verdict(W, bad).passed == ok


def test_horizontal_lift_refuses_bad_triple():
    W = get("broken_triple", "ttm")
    with pytest.raises(ValueError, match="sigma"):
        horizontal_from_triple(W, get("broken_triple", "mismatch"))


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
@given(rng=rngs, degree=st.integers(0, 2))
def test_decomposition_round_trip(label, W, rng, degree):
    c = compose_linear(W, random_decomposition(rng, W, degree))
    dec = decompose_linear(W, c)
    assert compose_linear(W, dec) == c
    assert decompose_linear(W, compose_linear(W, dec)) == dec
    assert all(r.passed for r in check_decomposition(W, dec))


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
@given(rng=rngs, degree=st.integers(0, 2))
def test_transported_differential(label, W, rng, degree):
    dec = decompose_linear(W, compose_linear(W, random_decomposition(rng, W, degree)))
    d_dec = decomposition_differential(W, dec)
    assert decompose_linear(W, differential(compose_linear(W, dec))) == d_dec
    assert decomposition_differential(W, d_dec).is_zero()


def test_decomposing_a_nonlinear_cochain_fails():
    W = get("tangent-tm", "ttm")
    c = DefCochain.from_section(W.total, W.total.basis(1))
    d = differential(c)
    with pytest.raises(NotLinearError):
        decompose_linear(W, d)


def test_trivial_core_check_on_tm():
    nabla = get("tc-tm0", "flat0")
    A = nabla.algebroid
    x = A.chart
    delta_A = differential(DefCochain.from_section(A, A.basis(0)))
    assert all(r.passed for r in trivial_core_im_check(
        A, nabla, delta_A, BundleDerivation(vector(["1"], x), matrix([["1"]], x))))
    bad = verdicts(trivial_core_im_check(
        A, nabla, delta_A, BundleDerivation(vector(["1"], x), matrix([["x"]], x))))
    assert bad == {"sigma": True, "connection": False}
    mismatch = verdicts(trivial_core_im_check(
        A, nabla, delta_A, BundleDerivation(vector(["0"], x), matrix([["0"]], x))))
    assert mismatch["sigma"] is False


def test_trivial_core_check_preconditions():
    curved = get("broken_nonflat", "curved")
    A = curved.algebroid
    with pytest.raises(ValueError, match="not flat"):
        trivial_core_im_check(A, curved, DefCochain(A, 1, {}, {}), BundleDerivation.zero(2, A.chart))
    nabla = get("tc-aff1", "rep")
    A = nabla.algebroid
    not_derivation = get("aff1", "id")
    with pytest.raises(ValueError, match="not an algebroid derivation"):
        trivial_core_im_check(A, nabla, not_derivation, BundleDerivation.zero(1, A.chart))


@pytest.mark.parametrize("lam", ["0", "2", "-1/3"])
def test_constant_pde_solutions(lam):
    nabla = get("tc-tm0", "flat0")
    x = ("x",)
    s = IMSectionCoords(vector(["1"], x), matrix([["0"]], x), matrix([[lam]], x))
    assert all(r.passed for r in im_section_pde_check(nabla.algebroid, nabla, s))


def test_linear_v_fails_second_pde_family():
    nabla = get("tc-tm0", "flat0")
    v = im_section_pde_check(nabla.algebroid, nabla, get("tc-tm0", "vx"))
    bad = [r for r in v if not r.passed]
    assert [r.check for r in bad] == ["pde2"]
    assert bad[0].witness == "alpha=e, A=1, B=1: 1"


def test_fixture_imsection_passes():
    nabla = get("tc-tm0", "flat0")
    assert all(r.passed for r in im_section_pde_check(nabla.algebroid, nabla, get("tc-tm0", "const")))


def test_pde_shape_mismatch():
    nabla = get("tc-tm0", "flat0")
    x = ("x",)
    s = IMSectionCoords(vector(["1", "0"], x), matrix([["0"]], x), matrix([["0"]], x))
    with pytest.raises(ValueError):
        im_section_pde_check(nabla.algebroid, nabla, s)


def test_coords_round_trip():
    nabla = get("tc-tmx", "gx")
    A = nabla.algebroid
    x = A.chart
    s = IMSectionCoords(vector(["x"], x), matrix([["1"]], x), matrix([["x^2"]], x))
    delta_A, delta_E = s.pair(A)
    assert coords_of_pair(A, delta_A, delta_E) == s
    assert coords_of_pair(A, delta_A, BundleDerivation.zero(1, x)) is None


@pytest.mark.parametrize("label,nabla", flat_connections(), ids=[a for a, _ in flat_connections()])
@given(rng=rngs)
def test_internal_pairs_satisfy_all_three_criteria(label, nabla, rng):
    A = nabla.algebroid
    assert check_flatness(A, nabla).passed
    delta_A, delta_E = internal_pair(A, nabla, random_section(rng, A, 1))
    cand = Candidate("internal", delta_A, delta_E)
    assert candidate_verdicts(A, nabla, cand) == (True, True, True)
    assert prop_verdict(A, nabla, delta_A, delta_E).passed


@pytest.mark.parametrize("label,nabla", flat_connections(), ids=[a for a, _ in flat_connections()])
def test_three_verdicts_agree_on_a_mixed_population(label, nabla):
    A = nabla.algebroid
    cands = equivalence_candidates(random.Random(label), A, nabla, 40)
    outcomes = [candidate_verdicts(A, nabla, c) for c in cands]
    assert all(len(set(v)) == 1 for v in outcomes)
    assert any(v[0] for v in outcomes) and not all(v[0] for v in outcomes)
    assert theorem_equivalence_suite(A, nabla, cands).passed


def test_equivalence_suite_rejects_curved_connection():
    curved = get("broken_nonflat", "curved")
    with pytest.raises(ValueError, match="not flat"):
        theorem_equivalence_suite(curved.algebroid, curved, [])


def test_triple_arithmetic():
    W = get("tangent-tm", "ttm")
    t = internal_triple(W, W.fat.basis(0))
    assert (t + t) == t.scale(2)
    assert isinstance(t, IMTriple) and "fat=" in str(t)
