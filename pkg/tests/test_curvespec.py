from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from stackypic.curvespec import (
    CoarseBlock,
    CurveSpec,
    GerbeBlock,
    PointBlock,
    format_spec,
    parse,
    parse_expr,
    parse_matrix,
)
from stackypic.errors import (
    BadInteger,
    DuplicateLabel,
    SpecError,
    SpecSyntaxError,
    UnresolvedLabel,
)

CURVES = Path(__file__).resolve().parent.parent / "curves"


def test_minimal_file():
    spec = parse("coarse:\n")
    assert spec == CurveSpec()
    assert spec.points == () and spec.gerbe is None
    assert parse("") == CurveSpec()


def test_n11_file():
    spec = parse((CURVES / "n11.curve").read_text())
    assert [(p.label, p.order, p.ideal) for p in spec.points] == [
        ("I_1728", 2, ()), ("I_0", 3, ())]
    assert spec.coarse == CoarseBlock()
    assert spec.gerbe is None


def test_m11_file():
    spec = parse((CURVES / "m11.curve").read_text())
    assert spec.gerbe == GerbeBlock(band=(2,), h2=(1,), obstruction=((0,),), lifts=((2, (1, 1)),))


def test_coarse_statements():
    spec = parse("""
coarse:
  gen a
  gen b
  rel 2*a - b = a   # comment
  class c = 3 * b - a
point: x
  order 4
  ideal c + a
""")
    assert spec.coarse.relations == ((1, -1),)
    assert spec.coarse.classes == (("c", (-1, 3)),)
    assert spec.points == (PointBlock("x", 4, (0, 3)),)


def test_parse_expr_whitespace_insensitive():
    res = {"a": (1, 0), "b": (0, 1)}.get
    assert parse_expr("2*a-b", res, 2) == parse_expr(" 2 * a  -  b ", res, 2) == (2, -1)
    assert parse_expr("2a + 0", res, 2) == (2, 0)
    assert parse_expr("-a - -b".replace("- -", "+"), res, 2) == (-1, 1)


def test_parse_matrix():
    assert parse_matrix("2,0;0,3") == [[2, 0], [0, 3]]
    assert parse_matrix(" ") == []
    with pytest.raises(SpecSyntaxError):
        parse_matrix("1,2;3")


def located(exc_type, text):
    with pytest.raises(exc_type) as info:
        parse(text)
    return info.value


def test_unresolved_label_reports_line():
    e = located(UnresolvedLabel, "coarse:\n  gen L_P\npoint: x\n  order 2\n  ideal L_Q\n")
    assert e.line == 5 and e.block == "point x"
    assert "L_Q" in str(e) and str(e).startswith("line 5")


def test_duplicate_label():
    e = located(DuplicateLabel, "coarse:\n  gen a\n  class a = 0\n")
    assert e.line == 3
    e = located(DuplicateLabel, "coarse:\n  gen a\npoint: a\n  order 2\n  ideal 0\n")
    assert e.line == 3


@pytest.mark.parametrize("text,line", [
    ("point: x\n  order two\n  ideal 0\n", 2),
    ("point: x\n  order 0\n  ideal 0\n", 2),
    ("gerbe:\n  band 1\n  kernel 1\n", 2),
    ("gerbe:\n  band 2\n  kernel 2\n  lift x -> 0\n", 4),
])
def test_bad_integers(text, line):
    assert located(BadInteger, text).line == line


@pytest.mark.parametrize("text,line", [
    ("coarse:\n  frobnicate a\n", 2),
    ("gen a\n", 1),
    ("coarse:\n  gen a\n  rel a\n", 3),
    ("coarse:\n  gen a\n  rel a = 0 = 0\n", 3),
    ("coarse:\n  gen a\n  rel 2 = 0\n", 3),
    ("coarse:\n  gen a\n  rel a a = 0\n", 3),
    ("coarse:\n  gen 1a\n", 2),
    ("point: x\n  order 2\n", 1),
    ("point: x\n  order 2\n  order 3\n", 3),
    ("gerbe:\n  kernel 2\n", 1),
    ("gerbe:\n  band 2\n  kernel 2\n  lift 2 0\n", 4),
    ("gerbe:\n  band 2\n  h2 2\n  obstruction 1,1\n", 4),
    ("gerbe:\n  band 2\n", 1),
    ("gerbe:\n  band 2\n  kernel 2\ncoarse:\n", 4),
    ("gerbe:\n  band 2\n  kernel 2\ngerbe:\n", 4),
])
def test_syntax_errors_are_located(text, line):
    e = located(SpecSyntaxError, text)
    assert e.line == line


def test_every_error_is_a_spec_error():
    assert issubclass(UnresolvedLabel, SpecError) and issubclass(BadInteger, SpecError)


@pytest.mark.parametrize("path", sorted(CURVES.glob("*.curve")), ids=lambda p: p.stem)
def test_shipped_files_round_trip(path):
    spec = parse(path.read_text())
    assert parse(format_spec(spec)) == spec


labels = st.from_regex(r"[a-z][a-z0-9_]{0,4}", fullmatch=True)


@st.composite
def specs(draw):
    names = draw(st.lists(labels, min_size=0, max_size=8, unique=True))
    n_gens = draw(st.integers(0, min(3, len(names))))
    gens, rest = names[:n_gens], names[n_gens:]
    n_classes = draw(st.integers(0, len(rest)))
    vec = st.lists(st.integers(-9, 9), min_size=n_gens, max_size=n_gens).map(tuple)
    classes = tuple((c, draw(vec)) for c in rest[:n_classes])
    point_labels = rest[n_classes:]
    relations = tuple(draw(st.lists(vec, max_size=3)))
    points = tuple(PointBlock(p, draw(st.integers(1, 12)), draw(vec)) for p in point_labels)
    coarse = CoarseBlock(tuple(gens), relations, classes)
    gerbe = None
    if draw(st.booleans()):
        band = tuple(draw(st.lists(st.integers(2, 6), min_size=0, max_size=2)))
        width = len(points) + len(gens)
        lifts = tuple((draw(st.integers(1, 6)),
                       tuple(draw(st.lists(st.integers(-5, 5), min_size=width, max_size=width))))
                      for _ in range(draw(st.integers(0, 2))))
        if draw(st.booleans()):
            gerbe = GerbeBlock(band, kernel=tuple(draw(st.lists(st.integers(1, 6), min_size=1,
                                                                max_size=2))), lifts=lifts)
        else:
            h2 = tuple(draw(st.lists(st.integers(0, 5), min_size=1, max_size=2)))
            obs = tuple(tuple(draw(st.integers(0, 4)) for _ in h2) for _ in band)
            gerbe = GerbeBlock(band, h2=h2, obstruction=obs, lifts=lifts)
    name = draw(st.from_regex(r"[A-Za-z][A-Za-z0-9_ {},]{0,12}", fullmatch=True)).strip()
    notes = tuple(draw(st.lists(st.from_regex(r"[a-z][a-z =*+]{0,10}", fullmatch=True).map(
        str.strip), max_size=2)))
    return CurveSpec(name, notes, coarse, points, gerbe)


@given(specs())
@settings(max_examples=200, deadline=None)
def test_round_trip(spec):
    text = format_spec(spec)
    assert parse(text) == spec
    assert format_spec(parse(text)) == text
