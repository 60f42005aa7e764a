import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_algebroids, get, rngs
from vbderiv.config import DegreeCapError, Limits, PolyCapError
from vbderiv.defcomplex import (
    DefCochain,
    bracket_with_derivation,
    check_leibniz,
    cochain_eval,
    differential,
    evaluate_differential,
    is_algebroid_derivation,
    perm_sign,
)
from vbderiv.sampling import random_cochain, random_derivation, random_poly, random_section
from vbderiv.symexpr import PolyVector

ALGEBROIDS = all_algebroids()
IDS = [a for a, _ in ALGEBROIDS]


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == (1, (0, 1, 2))
    assert perm_sign((1, 0, 2)) == (-1, (0, 1, 2))
    assert perm_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert perm_sign((1, 1))[0] == 0


def test_storage_is_antisymmetric():
    A = get("aff1", "aff1")
    c = DefCochain(A, 2, {(1, 0): A.basis(0)}, {})
    assert c.value((0, 1)) == -A.basis(0)
    assert c.value((1, 0)) == A.basis(0)
    with pytest.raises(ValueError):
        DefCochain(A, 2, {(0, 0): A.basis(0)}, {})


def test_differential_of_eps1_in_aff1():
    doc = get("aff1", "eps1")
    A = doc.parent
    d = differential(doc)
    assert d.value((1,)) == A.basis(1)
    assert d.value((0,)).is_zero()
    assert d.symbol(()).is_zero()


def test_differential_of_identity_in_aff1():
    # [e1, e2] - [e2, e1] - id([e1, e2]) = e2 + e2 - e2
    c = get("aff1", "id")
    A = c.parent
    d = differential(c)
    assert d.value((0, 1)) == A.basis(1)
    assert d.symbols == {}


def test_identity_is_not_a_derivation_of_aff1():
    r = is_algebroid_derivation(get("aff1", "id"))
    assert not r.passed
    assert r.witness == "bracket rule at (e1, e2): -e2"


def test_identity_is_a_derivation_of_abelian1():
    assert is_algebroid_derivation(get("abelian1", "id")).passed
    assert differential(get("abelian1", "id")).is_zero()


def test_differential_of_section_on_tm():
    # d(x e)(e) = [x e, e] = -e, symbol rho(x e) = x d/dx
    c = get("tm", "xe")
    d = differential(c)
    assert d.value((0,)) == -c.parent.basis(0)
    assert d.symbol(()) == PolyVector([c.section[0]], c.parent.chart)


@pytest.mark.parametrize("label,A", ALGEBROIDS, ids=IDS)
@given(rng=rngs, degree=st.integers(0, 2))
def test_d_squared_vanishes(label, A, rng, degree):
    c = random_cochain(rng, A, degree, max_degree=2)
    assert differential(differential(c)).is_zero()


@pytest.mark.parametrize("label,A", ALGEBROIDS, ids=IDS)
@given(rng=rngs, degree=st.integers(0, 2))
def test_frame_differential_matches_direct_formula(label, A, rng, degree):
    """The stored frame tables of dc reproduce dc evaluated on arbitrary sections."""
    c = random_cochain(rng, A, degree, max_degree=1)
    args = [random_section(rng, A, 1, 0.2) for _ in range(degree + 1)]
    assert cochain_eval(differential(c), args) == evaluate_differential(c, args)


@pytest.mark.parametrize("label,A", ALGEBROIDS, ids=IDS)
@given(rng=rngs, degree=st.integers(1, 3))
def test_leibniz_in_last_slot(label, A, rng, degree):
    c = random_cochain(rng, A, degree, max_degree=1)
    args = [random_section(rng, A, 1, 0.2) for _ in range(degree)]
    f = random_poly(rng, A.chart, 2, 2)
    assert check_leibniz(c, args, f).is_zero()


@pytest.mark.parametrize("label,A", ALGEBROIDS, ids=IDS)
@given(rng=rngs)
def test_cocycles_are_derivations(label, A, rng):
    inner = differential(DefCochain.from_section(A, random_section(rng, A, 1)))
    other = DefCochain.from_derivation(A, random_derivation(rng, A.rank, A.chart, 1))
    for c in (inner, other, inner + other):
        assert is_algebroid_derivation(c).passed == differential(c).is_zero()
    assert is_algebroid_derivation(inner).passed


@pytest.mark.parametrize("label,A", ALGEBROIDS, ids=IDS)
@given(rng=rngs, degree=st.integers(0, 2))
def test_bracket_with_a_derivation_commutes_with_d(label, A, rng, degree):
    delta = differential(DefCochain.from_section(A, random_section(rng, A, 1))).as_derivation()
    c = random_cochain(rng, A, degree, max_degree=1)
    assert differential(bracket_with_derivation(delta, c)) == bracket_with_derivation(delta, differential(c))


def test_derivation_round_trip():
    A = get("aff1-line", "aff1line")
    D = differential(DefCochain.from_section(A, A.basis(0))).as_derivation()
    assert DefCochain.from_derivation(A, D).as_derivation() == D


def test_caps():
    A = get("abelian2", "abelian2")
    c = DefCochain(A, 4, {}, {})
    with pytest.raises(DegreeCapError):
        differential(c)
    assert differential(c, Limits(degree_cap=5)).is_zero()
    with pytest.raises(PolyCapError):
        differential(get("tm", "xe"), Limits(poly_cap=0))
