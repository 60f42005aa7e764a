import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_vbs, get, poly, rngs
from vbderiv.algebroid import check_anchor_compat, check_flatness, check_jacobi, zero_connection
from vbderiv.defcomplex import DefCochain, differential
from vbderiv.sampling import random_cochain, random_linear_cochain, random_section
from vbderiv.symexpr import PolyMatrix, PolyVector
from vbderiv.vb import (
    build_full_core,
    build_tangent,
    build_trivial_core,
    classify_cochain_linearity,
    core_anchor,
    core_connection,
    core_derivation,
    corollary_c_check,
    euler_derivation,
    fat_cochain_on_total,
    inspect_linearity,
    side_connection,
    side_derivation,
    validate_vb_axioms,
)

VBS = all_vbs()
IDS = [a for a, _ in VBS]


def field(W, *texts):
    return PolyVector([poly(t, W.total_chart) for t in texts], W.total_chart)


def test_trivial_core_anchor_with_zero_connection():
    W = get("tc-tm0", "tc")
    assert W.total.anchor[0] == field(W, "1", "0")
    assert check_jacobi(W.total).passed


def test_trivial_core_anchor_with_linear_connection():
    W = get("tc-tmx", "tc")
    assert W.total.anchor[0] == field(W, "1", "-x*v1")


def test_trivial_core_rejects_curved_connection():
    curved = get("broken_nonflat", "curved")
    with pytest.raises(ValueError, match="not flat"):
        build_trivial_core(curved.algebroid, curved)


def test_curved_action_presentation_breaks_jacobi():
    curved = get("broken_nonflat", "curved")
    W = build_trivial_core(curved.algebroid, curved, check=False)
    r = check_jacobi(W.total)
    assert not r.passed
    assert r.witness == "(e1, e2, v1*e1): -v1*e1"


def test_full_core_brackets():
    W = get("fc-aff1", "fc")
    T = W.total
    assert T.bracket(T.basis(0), T.basis(2)) == T.basis(2)
    assert T.bracket(T.basis(1), T.basis(2)).is_zero()
    A = get("abelian2", "abelian2")
    V = build_full_core(A, zero_connection(A, 2))
    assert V.total.structure == {}


def test_tangent_brackets_of_aff1():
    W = get("tangent-aff1", "taff1")
    T = W.total
    # frame: de1, de2, e1hat, e2hat
    assert T.bracket(T.basis(0), T.basis(1)) == T.basis(1)
    assert T.bracket(T.basis(0), T.basis(3)) == T.basis(3)
    assert T.bracket(T.basis(2), T.basis(3)).is_zero()
    assert W.fat_rank == 2


def test_tangent_of_abelian_is_abelian():
    W = build_tangent(get("abelian2", "abelian2"))
    assert W.total.structure == {}


def test_tangent_of_tm_anchors_and_core_anchor():
    W = get("tangent-tm", "ttm")
    assert W.total.anchor[0] == field(W, "1", "0")
    assert W.total.anchor[1] == field(W, "0", "1")
    assert core_anchor(W) == PolyMatrix.identity(1, ("x",))


def test_tangent_of_action_algebroid_lifts_anchor():
    W = get("tangent-aff1", "taff1line")
    # rho(e1) = -x d/dx lifts to -x d/dx - xdot d/dxdot
    assert W.total.anchor[0] == field(W, "-x", "-xdot")
    assert W.fat_rank == 4


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
def test_constructor_outputs_are_vb_algebroids(label, W):
    assert validate_vb_axioms(W).passed
    assert check_jacobi(W.total).passed
    assert check_anchor_compat(W.total).passed
    assert check_jacobi(W.fat).passed
    assert check_anchor_compat(W.fat).passed


def test_hand_built_failures():
    W = get("broken_vb", "bad")
    r = validate_vb_axioms(W)
    assert not r.passed and r.witness.startswith("anchor not linear at e")
    doc_text = """
algebroid tm
  base x
  frame e
  anchor e = 1
end
vb bad on tm
  kind custom
  fiber v
  core c1, c2
  bracket [c1, c2] = c1
end
"""
    from vbderiv.specfile import SpecDocument

    W2 = SpecDocument(doc_text).get("bad")
    r2 = validate_vb_axioms(W2)
    assert not r2.passed and r2.witness == "[c1, c2] = c1 is not zero"


def test_fat_algebroid_of_split_cases_is_base():
    for W in (get("tc-tmx", "tc"), get("fc-aff1", "fc")):
        assert W.fat.rank == W.base.rank
        assert W.fat.structure == W.base.structure


def test_side_representation_of_action_is_the_connection():
    W = get("tc-tmx", "tc")
    nabla = get("tc-tmx", "gx")
    assert side_derivation(W, W.fat_basis(0)) == nabla.derivation(0)


def test_core_representation_of_semidirect_product_is_the_connection():
    W = get("fc-aff1", "fc")
    nabla = get("fc-aff1", "rep")
    for i in range(2):
        assert core_derivation(W, W.fat_basis(i)) == nabla.derivation(i)


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
def test_representations_are_flat_and_intertwined(label, W):
    psi_s, psi_c = side_connection(W), core_connection(W)
    assert check_flatness(W.fat, psi_s).passed
    assert check_flatness(W.fat, psi_c).passed
    alpha = core_anchor(W)
    for i in range(W.fat_rank):
        Ds, Dc = side_derivation(W, W.fat_basis(i)), core_derivation(W, W.fat_basis(i))
        # alpha(psi^c chi) = psi^s(alpha chi) for every chi
        assert alpha.derive(Ds.symbol) + Ds.matrix @ alpha == alpha @ Dc.matrix


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
def test_euler_eigenvalues(label, W):
    E = euler_derivation(W)
    T = W.total
    for i in range(T.rank):
        want = -T.basis(i) if W.is_core_index(i) else T.zero_section()
        assert E.apply(T.basis(i)) == want


def test_euler_on_weighted_linear_generator():
    W = get("tc-tm0", "tc")
    T = W.total
    v = W.fiber_var(0)
    assert euler_derivation(W).apply(T.basis(0).scale(v)) == T.basis(0).scale(v)


def test_core_generator_is_not_linear():
    W = get("tangent-tm", "ttm")
    c = DefCochain.from_section(W.total, W.total.basis(1))
    lin = classify_cochain_linearity(W, c)
    assert not lin.linear
    assert lin.witness == "[[E, c]]() = -ehat"


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
@given(rng=rngs, degree=st.integers(0, 2))
def test_two_linearity_routes_agree(label, W, rng, degree):
    lin = random_linear_cochain(rng, W, degree)
    assert classify_cochain_linearity(W, lin).linear
    assert inspect_linearity(W, lin).linear
    other = random_cochain(rng, W.total, degree, 2, 0.5)
    assert classify_cochain_linearity(W, other).linear == inspect_linearity(W, other).linear


@pytest.mark.parametrize("label,W", VBS, ids=IDS)
@given(rng=rngs)
def test_shape_clauses_on_differentials(label, W, rng):
    F = W.fat
    c0 = fat_cochain_on_total(W, DefCochain.from_section(F, random_section(rng, F, 1)))
    c1 = random_linear_cochain(rng, W, 1)
    for c in (c0, c1):
        assert all(r.passed for r in corollary_c_check(W, differential(c)))


def test_shape_clauses_detect_non_vertical_core_symbol():
    W = get("tangent-aff1", "taff1line")
    T = W.total
    c = differential(random_linear_cochain(random.Random(3), W, 1))
    symbols = dict(c.symbols)
    symbols[(2,)] = c.symbol((2,)) + field(W, "1", "0")
    bad = DefCochain(T, 2, c.values, symbols)
    verdicts = {r.check: r.passed for r in corollary_c_check(W, bad)}
    assert not verdicts["s1-vertical-symbol"]
    assert verdicts["c1-core-value"] and verdicts["c2-vanishing"]


def test_gauge_vb_bracket_table_and_anchors():
    W = get("gauge-tm", "gtm")
    T = W.total
    # chart x, xdot, v11; frame de, ehat; connection coefficient x
    assert W.n == 2 and W.k == 1
    assert T.anchor[0] == field(W, "1", "0", "xdot")
    assert T.anchor[1] == field(W, "0", "1", "x")
    assert T.bracket(T.basis(1), T.basis(1)).is_zero()
    assert T.frame_bracket(0, 1).is_zero()
    assert W.fat_rank == W.r + (1 + 1) * W.r
