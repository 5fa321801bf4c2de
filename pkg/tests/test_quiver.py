import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomspec.errors import CompositionError, UsageError
from atomspec.ideals import Verdict, is_right_rooted
from atomspec.quiver import (
    Path,
    Quiver,
    compose,
    enumerate_paths,
    is_acyclic,
    iter_paths_of_length,
    jordan_quiver,
    kronecker_quiver,
    linear_quiver,
    loop_quiver,
    subspace_quiver,
)


def test_vertices_sorted_arrows_keep_declaration_order():
    q = Quiver.build([3, 1, 2], [("z", 1, 2), ("a", 2, 3)])
    assert q.vertices == ("1", "2", "3")
    assert [a.name for a in q.arrows] == ["z", "a"]


def test_duplicate_names_rejected():
    with pytest.raises(UsageError):
        Quiver.build([1, 1])
    with pytest.raises(UsageError):
        Quiver.build([1, 2], [("a", 1, 2), ("a", 2, 1)])
    with pytest.raises(UsageError):
        Quiver.build([1], [("a", 1, 2)])


def test_path_render_composition_order():
    q = linear_quiver(3)
    p = q.path("d3", "d2")
    assert (p.source, p.target) == ("3", "1")
    assert p.render() == "d2*d3"
    assert jordan_quiver().path("X", "X", "X").render() == "X^3"
    assert q.trivial(2).render() == "e_2"


def test_compose_checks_endpoints():
    q = linear_quiver(3)
    d3, d2 = q.path("d3"), q.path("d2")
    assert compose(d2, d3) == q.path("d3", "d2")
    with pytest.raises(CompositionError):
        compose(d3, d2)
    with pytest.raises(CompositionError):
        q.path("d2", "d3")
    assert compose(q.trivial(2), d3) == d3
    assert compose(d3, q.trivial(3)) == d3


def test_enumerate_paths_jordan():
    paths = enumerate_paths(jordan_quiver(), 2)
    assert [p.render() for p in paths] == ["e_1", "X", "X^2"]


def test_enumerate_paths_counts():
    # trivial paths plus n^k words of each length k for n loops
    q = loop_quiver(2)
    assert len(enumerate_paths(q, 3)) == 1 + 2 + 4 + 8
    assert len(enumerate_paths(kronecker_quiver(), 5)) == 2 + 2
    assert len(list(iter_paths_of_length(subspace_quiver(4), 2))) == 0


def test_acyclic_paths_stabilize():
    q = linear_quiver(4)
    assert is_acyclic(q)
    assert len(enumerate_paths(q, 3)) == len(enumerate_paths(q, 10))


def test_named_quivers():
    assert is_acyclic(subspace_quiver(5))
    assert not is_acyclic(jordan_quiver())
    assert not is_acyclic(Quiver.build([1, 2], [("a", 1, 2), ("b", 2, 1)]))
    assert is_acyclic(Quiver.build([1]))


def _has_long_path(q: Quiver) -> bool:
    # a finite quiver has a cycle iff it has a path of length |Q0|
    return next(iter_paths_of_length(q, len(q.vertices)), None) is not None


def test_acyclicity_sweep_small_quivers():
    """Every multigraph on 4 vertices with at most 5 arrows (this covers smaller vertex sets too)."""
    verts = ["1", "2", "3", "4"]
    pairs = list(itertools.product(verts, verts))
    checked = 0
    for k in range(6):
        for combo in itertools.combinations_with_replacement(pairs, k):
            q = Quiver.build(verts, [(f"a{j}", s, t) for j, (s, t) in enumerate(combo)])
            acyclic = is_acyclic(q)
            assert acyclic == (not _has_long_path(q))
            assert (is_right_rooted(q, ()) is Verdict.YES) == acyclic
            checked += 1
    assert checked == 20349


@st.composite
def quivers(draw, max_vertices=4, max_arrows=6):
    n = draw(st.integers(1, max_vertices))
    verts = [str(i) for i in range(1, n + 1)]
    edges = draw(st.lists(st.tuples(st.sampled_from(verts), st.sampled_from(verts)), max_size=max_arrows))
    return Quiver.build(verts, [(f"a{j}", s, t) for j, (s, t) in enumerate(edges)])


@given(quivers(), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_enumerated_paths_are_composable_and_distinct(q, n):
    paths = enumerate_paths(q, n)
    assert len(paths) == len(set(paths))
    for p in paths:
        assert p.length <= n
        if p.arrows:
            assert q.path(*p.arrows) == p
    keys = [q.path_key(p) for p in paths]
    assert len(set(keys)) == len(keys)
