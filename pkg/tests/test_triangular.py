import itertools
import json

import numpy as np
import pytest

from atomspec import fp
from atomspec.errors import ParseError, UsageError
from atomspec.rings import BaseRing, PrimePoint
from atomspec.spectrum import AtomPoint, Status, atom_spectrum, emit, is_open_atoms, order_pairs
from atomspec.quiver import subspace_quiver
from atomspec.triangular import (
    SLOT_TO_VERTEX,
    Bimodule,
    CommaMorphism,
    CommaObject,
    comma_cokernel,
    comma_kernel,
    cokernel_universal_property,
    counit_A,
    counit_B,
    enumerate_comma_objects,
    from_rep,
    identity,
    k_A,
    k_B,
    kernel_universal_property,
    load_bimodule,
    morphisms,
    share_nonzero_subobject,
    stalk_A,
    stalk_B,
    to_rep,
    triangular_spectrum,
    zero_object,
)

from conftest import F2, F3, Z

F5 = BaseRing.prime_field(5)
SMALL = list(enumerate_comma_objects(2, 2, 2))  # |X|, |Y| <= 4 over F_2
TINY = list(enumerate_comma_objects(2, 1, 1))


def test_spectrum_f2():
    t = triangular_spectrum(F2, F2, Bimodule(2))
    assert len(t.points()) == 2 and t.status is Status.COMPLETE
    labels = [t.label(p) for p in t.points()]
    assert labels == ["<T/[[(0),0],[F2,F2]]>", "<T/[[F2,0],[F2,(0)]]>"]


def test_spectrum_matches_subspace_quiver():
    t = triangular_spectrum(F2, F2, Bimodule(2))
    s = atom_spectrum(subspace_quiver(2), (), F2)
    tp = t.points()
    sp = [AtomPoint(SLOT_TO_VERTEX[p.vertex], p.prime) for p in tp]
    assert sorted(sp, key=lambda p: p.vertex) == list(s.points())
    for (x, y), (u, v) in zip(itertools.product(tp, tp), itertools.product(sp, sp)):
        assert t.leq(x, y) == s.leq(u, v)
    for k in range(len(tp) + 1):
        for subset in itertools.combinations(range(len(tp)), k):
            assert is_open_atoms(t, [tp[i] for i in subset]) == is_open_atoms(s, [sp[i] for i in subset])


def test_mixed_spectrum():
    t = triangular_spectrum(Z, F3, Bimodule(3))
    pts = t.points((2, 3))
    assert [p.vertex for p in pts] == ["A", "A", "A", "B"]
    assert t.leq(AtomPoint("A", PrimePoint.zero()), AtomPoint("A", PrimePoint.prime(3)))
    assert not t.leq(AtomPoint("A", PrimePoint.zero()), AtomPoint("B", PrimePoint.unique()))


def test_field_with_itself():
    assert len(triangular_spectrum(F5, F5, Bimodule(5)).points()) == 2


def test_bimodule_parsing():
    m = load_bimodule('{"group": "F2^3"}', F2, F2)
    assert (m.modulus, m.rank) == (2, 3)
    m = load_bimodule('{"group": "Z/6", "left_action": {"5": 5}, "right_action": {"1": 1}}', Z, Z)
    assert m.name == "Z/6"
    m = load_bimodule('{"group": "F2^2", "left_action": {"1": [[1, 0], [0, 1]]}}', F2, F2)
    with pytest.raises(UsageError):
        load_bimodule('{"group": "F2^2", "left_action": {"1": [[0, 1], [1, 0]]}}', F2, F2)
    with pytest.raises(UsageError):
        load_bimodule('{"group": "F3"}', F2, F3)
    with pytest.raises(ParseError):
        load_bimodule('{"group": "F4"}', F2, F2)
    with pytest.raises(ParseError):
        load_bimodule("{not json", F2, F2)


def test_spectrum_json_shape():
    data = json.loads(emit(triangular_spectrum(F2, F2, Bimodule(2)), "json"))
    assert data["ring"] == "T=[[F2,0],[F2,F2]]"
    assert [p["vertex"] for p in data["points"]] == ["A", "B"]


def test_stalks_and_kernels():
    assert stalk_A(2, 0).is_zero()
    x = stalk_A(2, 2)
    assert k_A(x).shape[0] == 2 and k_B(x).shape[0] == 0
    y = stalk_B(2, 2)
    assert k_B(y).shape[0] == 2
    assert k_B(zero_object(2)).shape[0] == 0
    one = CommaObject.build(2, 1, 1, [[[1]]])
    assert k_A(one).shape[0] == 0
    assert k_A(CommaObject.build(2, 2, 1)).shape[0] == 2


def test_k_a_is_the_annihilator():
    for obj in enumerate_comma_objects(2, 2, 1, r=2):
        direct = [
            x for x in itertools.product(range(2), repeat=obj.dx)
            if all(not obj.act(np.array(m), np.array(x)).any() for m in itertools.product(range(2), repeat=2))
        ]
        assert len(direct) == 2 ** k_A(obj).shape[0]


def test_k_a_is_right_adjoint_to_stalk():
    # |Hom(S_A X', Z)| = |Hom_A(X', k_A Z)| for small X'
    for z in SMALL:
        for d in range(3):
            homs = sum(1 for _ in morphisms(stalk_A(2, d), z))
            assert homs == 2 ** (d * k_A(z).shape[0])


def test_lemma_zero_kernels_force_zero_object():
    for z in SMALL:
        if k_A(z).shape[0] == 0 and k_B(z).shape[0] == 0:
            assert z.is_zero()


def test_counits_are_mono():
    for z in SMALL:
        assert counit_A(z).is_mono()
        assert counit_B(z).is_mono()


def test_stalks_share_no_subobject():
    for dx, dy in itertools.product(range(1, 3), repeat=2):
        assert not share_nonzero_subobject(stalk_A(2, dx), stalk_B(2, dy))


def test_kernel_cokernel_examples():
    for z in SMALL:
        assert comma_kernel(identity(z)).obj.is_zero()
        assert comma_cokernel(identity(z)).obj.is_zero()
        zero = CommaMorphism(z, z, None, None)
        k = comma_kernel(zero).obj
        assert (k.dx, k.dy) == (z.dx, z.dy)
    one = CommaObject.build(2, 1, 1, [[[1]]])
    f = CommaMorphism(one, stalk_A(2, 1), [[1]], None)
    k = comma_kernel(f).obj
    assert (k.dx, k.dy) == (0, 1)
    with pytest.raises(UsageError):
        CommaMorphism(one, one, [[1]], [[0]])


def test_universal_properties_by_brute_force():
    for z in SMALL:
        for f in morphisms(z, z):
            assert kernel_universal_property(f, TINY)
            assert cokernel_universal_property(f, TINY)


def test_round_trip_through_representations():
    for z in SMALL:
        assert from_rep(to_rep(z)) == z
