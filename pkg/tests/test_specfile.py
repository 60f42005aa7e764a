import pytest

from conftest import poly
from vbderiv.algebroid import Connection, FrameAlgebroid
from vbderiv.defcomplex import DefCochain
from vbderiv.im import IMSectionCoords, IMTriple
from vbderiv.specfile import ResolutionError, SpecDocument, parse_document
from vbderiv.suite import fixture_names, load_fixture, resolve_path
from vbderiv.symexpr import ParseError
from vbderiv.vb import SplitVB

AFF1 = """
# the two-dimensional nonabelian Lie algebra
algebroid aff1
  base
  frame e1, e2
  bracket [e1, e2] = e2
end

cochain eps1 on aff1
  degree 0
  value = e1
end
"""


def error_of(text, name=None):
    with pytest.raises(ParseError) as info:
        doc = SpecDocument(text)
        for n in [name] if name else doc.names():
            doc.get(n)
    return info.value


def test_blocks_and_entries():
    blocks = parse_document(AFF1)
    assert [(b.kind, b.name, b.ref) for b in blocks] == [("algebroid", "aff1", None), ("cochain", "eps1", "aff1")]
    bracket = blocks[0].one("bracket")
    assert bracket.args == ("e1", "e2") and bracket.text.strip() == "e2"
    assert bracket.line == 6


def test_algebroid_and_cochain_blocks():
    doc = SpecDocument(AFF1)
    A = doc.get("aff1")
    assert isinstance(A, FrameAlgebroid) and A.frame == ("e1", "e2")
    c = doc.get("eps1")
    assert isinstance(c, DefCochain) and c.section == A.basis(0)
    assert doc.names("cochain") == ["eps1"]


def test_anchor_forms_agree():
    bracketed = "algebroid a\n  base x\n  frame e\n  anchor [e] = x^2\nend\n"
    bare = "algebroid a\n  base x\n  frame e\n  anchor e = x^2\nend\n"
    A, B = SpecDocument(bracketed).get("a"), SpecDocument(bare).get("a")
    assert A == B
    assert A.anchor[0][0] == poly("x^2", ("x",))


@pytest.mark.parametrize("name", fixture_names(include_broken=True))
def test_every_shipped_fixture_builds(name):
    doc = load_fixture(name)
    for block in doc.names():
        obj = doc.get(block)
        assert isinstance(obj, (FrameAlgebroid, Connection, SplitVB, DefCochain, IMTriple, IMSectionCoords))


def test_fixture_library_contents():
    names = set(fixture_names())
    assert {"abelian1", "abelian2", "aff1", "so3", "tm", "tc-tm0", "tc-tmx", "fc-aff1",
            "tangent-aff1", "tangent-tm", "gauge-tm"} <= names
    assert not any(n.startswith("broken_") for n in names)
    assert resolve_path("aff1").name == "aff1.alg"
    with pytest.raises(FileNotFoundError):
        resolve_path("no-such-fixture")


@pytest.mark.parametrize("text,line,col,fragment", [
    ("algebroid a\n  base x\n  frame e\n  anchor e = x +* 2\nend\n", 4, 17, "unexpected '*'"),
    ("algebroid a\n  base x\n  frame e\n  anchor e = y\nend\n", 4, 14, "y"),
    ("algebroid a\n  base x\n  frame e\n", 1, 1, "not closed"),
    ("widget a\nend\n", 1, 1, "block keyword"),
    ("algebroid a\n  base x\n  frame e\n  colour e = 1\nend\n", 4, 3, "unknown key"),
    ("algebroid a\n  base x\n  frame e\n  anchor e = 1, 0\nend\n", 4, 14, "expected 1 components"),
    ("algebroid a\n  frame e\nend\nalgebroid a\n  frame f\nend\n", 4, 1, "duplicate block"),
])
def test_parse_errors_point_at_the_source(text, line, col, fragment):
    err = error_of(text)
    assert (err.line, err.column) == (line, col), str(err)
    assert fragment in str(err)


def test_resolution_errors():
    text = AFF1 + "\ncochain bad on eps1\n  degree 0\n  value = e1\nend\n"
    err = error_of(text, "bad")
    assert isinstance(err, ResolutionError)
    assert "has kind cochain" in str(err)
    assert err.column == len("cochain bad on ") + 1
    err = error_of("cochain c on nowhere\n  degree 0\nend\n")
    assert "unknown name 'nowhere'" in str(err)


def test_unknown_generator_in_bracket():
    err = error_of("algebroid a\n  frame e\n  bracket [e, f] = e\nend\n")
    assert isinstance(err, ResolutionError) and "'f'" in str(err)


def test_connection_and_imsection_blocks():
    doc = load_fixture("tc-tm0")
    nabla = doc.get("flat0")
    assert nabla.rank == 1
    s = doc.get("const")
    assert s.V[0, 0] == poly("2", ("x",))
    assert doc.imsection_connection("const") is nabla


def test_custom_vb_defaults_to_pulled_back_structure():
    W = load_fixture("broken_vb").get("bad")
    assert W.kind == "custom"
    assert W.total.anchor[0][1] == poly("v^2", W.total_chart)
