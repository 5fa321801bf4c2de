import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomspec.algebra import resolve_relations
from atomspec.dsl import RelationSource, format_input, parse_expression, parse_quiver
from atomspec.errors import ParseError
from atomspec.rings import BaseRing

JORDAN = """\
# Jordan quiver, truncated
vertices v;
arrows x: v -> v;
relations x^3;
ring Z;
"""


def test_parse_jordan():
    parsed = parse_quiver(JORDAN)
    assert parsed.quiver.vertices == ("v",)
    assert parsed.ring == BaseRing.integers()
    assert parsed.relations == (RelationSource("x^3", 4, 11),)


def test_relation_positions_point_at_fragments():
    text = "vertices 1 2;\narrows a: 1 -> 2, b: 1 -> 2;\nrelations a - b,  2*a;\nring F3;\n"
    rels = parse_quiver(text).relations
    assert [(r.text, r.line, r.col) for r in rels] == [("a - b", 3, 11), ("2*a", 3, 19)]


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        ("vertices 1;\narrows x: 1 -> 2;\nring Z;", 2, 16, "undeclared"),
        ("vertices 1 1;\nring Z;", 1, 12, "duplicate"),
        ("vertices 1;\narrows 1a: 1 -> 1;\nring Z;", 2, 8, "start with a letter"),
        ("vertices 1;\nrelations ;\nring Z;", 2, 1, "empty"),
        ("vertices 1;\narrows x: 1 -> 1;\nrelations x^;\nring Z;", 3, 12, "exponent"),
        ("vertices 1;\narrows x: 1 -> 1;\nrelations x +;\nring Z;", 3, 14, "expected a term"),
        ("vertices 1;\nring Q;", 2, 1, "ring"),
        ("vertices 1;", 1, 1, "missing 'ring'"),
        ("vertices 1;\nring Z;\nring Z;", 3, 1, "twice"),
        ("vertices 1;\nfoo;\nring Z;", 2, 1, "unknown statement"),
        ("vertices 1 $;", 1, 12, "unexpected character"),
        ("vertices 1;\narrows e_1: 1 -> 1;\nring Z;", 2, 8, "collides"),
    ],
)
def test_parse_errors_carry_positions(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse_quiver(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert fragment in info.value.message


def test_unknown_arrow_in_relation():
    parsed = parse_quiver("vertices 1;\narrows x: 1 -> 1;\nrelations y^2;\nring Z;")
    with pytest.raises(ParseError) as info:
        resolve_relations(parsed.relations, parsed.quiver, parsed.ring)
    assert (info.value.line, info.value.col) == (3, 11)


def test_non_parallel_relation_is_a_parse_error():
    parsed = parse_quiver("vertices 1 2;\narrows a: 1 -> 2;\nrelations a + e_1;\nring F2;")
    with pytest.raises(ParseError):
        resolve_relations(parsed.relations, parsed.quiver, parsed.ring)


def test_expression_terms():
    terms = parse_expression("-2*b*a^3 + x + 5")
    assert [(t.coeff, t.factors) for t in terms] == [(-2, (("b", 1), ("a", 3))), (1, (("x", 1),)), (5, ())]


names = st.sampled_from(["p", "q", "r"])


@given(
    st.lists(st.tuples(names, names), min_size=0, max_size=4, unique=True),
    st.sampled_from(["F2", "F7", "Z", "Z/6"]),
)
@settings(max_examples=50, deadline=None)
def test_format_round_trip(edges, ring):
    verts = "1 2"
    arrows = ", ".join(f"{a}{b}: {1 if a < b else 2} -> {2 if a <= b else 1}" for a, b in edges)
    text = f"vertices {verts};\n" + (f"arrows {arrows};\n" if edges else "") + f"ring {ring};\n"
    parsed = parse_quiver(text)
    again = parse_quiver(format_input(parsed))
    assert again.quiver == parsed.quiver and again.ring == parsed.ring
