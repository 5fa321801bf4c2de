import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomspec import fp
from atomspec.errors import NonAdmissibleRelationError, ResourceError, UsageError
from atomspec.oracle import (
    Limits,
    asupp,
    atom_classes,
    atom_equivalent,
    check_relations,
    common_nonzero_subobject,
    direct_sum,
    enumerate_reps,
    is_monoform,
    isomorphic,
    k_i,
    kernel_nonzero_somewhere,
    quotient,
    rep,
    stalk,
    submodules,
    verify_theorem_A,
    zero_rep,
)
from atomspec.quiver import jordan_quiver, kronecker_quiver, linear_quiver, subspace_quiver

from conftest import F2, Z, el

J = jordan_quiver()
S2 = subspace_quiver(2)
A3 = linear_quiver(3)
DUAL_NUMBERS = rep(J, 2, {1: 2}, {"X": [[0, 0], [1, 0]]})  # F_2[x]/(x^2) as a Jordan rep


def test_check_relations_examples():
    assert check_relations(DUAL_NUMBERS, [])
    square = [el(J, F2, "X^2")]
    assert check_relations(rep(J, 2, {1: 1}, {"X": [[0]]}), square)
    assert not check_relations(rep(J, 2, {1: 1}, {"X": [[1]]}), square)
    chain = rep(A3, 2, {1: 1, 2: 1, 3: 1}, {"d3": [[1]], "d2": [[1]]})
    assert not check_relations(chain, [el(A3, F2, "d2*d3")])
    # integer coefficients are read mod p
    assert check_relations(rep(J, 2, {1: 1}, {"X": [[1]]}), [el(J, Z, "2*X")])


def test_shape_mismatch_rejected():
    with pytest.raises(UsageError):
        rep(J, 2, {1: 2}, {"X": [[1]]})
    with pytest.raises(UsageError):
        rep(J, 4, {1: 1})
    with pytest.raises(UsageError):
        rep(J, 2, {1: 1}, {"Y": [[1]]})


def test_submodule_examples():
    assert len(submodules(stalk(S2, 1, 2))) == 2
    assert len(submodules(DUAL_NUMBERS)) == 3
    two_simples = direct_sum(stalk(S2, 1, 2), stalk(S2, 2, 2))
    assert len(submodules(two_simples)) == 4
    assert len(submodules(zero_rep(J, 2))) == 1


def test_quotient_examples():
    subs = submodules(DUAL_NUMBERS)
    zero, ker_x, whole = subs
    assert isomorphic(quotient(DUAL_NUMBERS, zero), DUAL_NUMBERS)
    assert quotient(DUAL_NUMBERS, whole).is_zero()
    q = quotient(DUAL_NUMBERS, ker_x)
    assert q.dims == {"1": 1} and q.mats["X"].tolist() == [[0]]


def test_common_subobject_examples():
    assert common_nonzero_subobject(DUAL_NUMBERS, DUAL_NUMBERS)
    assert not common_nonzero_subobject(stalk(S2, 1, 2), stalk(S2, 2, 2))
    x0, x1 = rep(J, 2, {1: 1}, {"X": [[0]]}), rep(J, 2, {1: 1}, {"X": [[1]]})
    assert not common_nonzero_subobject(x0, x1)


def test_monoform_examples():
    assert is_monoform(stalk(S2, 2, 2))
    assert is_monoform(rep(J, 3, {1: 1}, {"X": [[2]]}))
    assert not is_monoform(DUAL_NUMBERS)
    assert not is_monoform(zero_rep(J, 2))
    for v in A3.vertices:
        assert is_monoform(stalk(A3, v, 3))


def test_atom_equivalence_examples():
    s1 = stalk(S2, 1, 2)
    assert atom_equivalent(s1, s1)
    assert not atom_equivalent(s1, stalk(S2, 2, 2))
    assert not atom_equivalent(rep(J, 2, {1: 1}, {"X": [[1]]}), stalk(J, 1, 2))
    with pytest.raises(UsageError):
        atom_equivalent(DUAL_NUMBERS, s1)


def test_asupp_examples():
    s1, s2 = stalk(S2, 1, 2), stalk(S2, 2, 2)
    assert asupp(zero_rep(S2, 2), [s1, s2]) == []
    assert asupp(s1, [s1, s2]) == [s1]
    m = rep(S2, 2, {1: 1, 2: 1}, {"a1": [[1]]})
    assert asupp(m, [s1, s2]) == [s1, s2]


def test_stalk_and_kernel_examples():
    s = stalk(A3, 2, 2)
    assert s.dims == {"1": 0, "2": 1, "3": 0}
    assert check_relations(s, [el(A3, F2, "d2*d3")])
    assert k_i(s, 2).shape[0] == 1
    x1 = rep(J, 2, {1: 1}, {"X": [[1]]})
    assert k_i(x1, 1).shape[0] == 0 and not x1.is_zero()
    nil = rep(J, 2, {1: 3}, {"X": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]})
    assert k_i(nil, 1).shape[0] == 1


def test_verify_examples():
    r = verify_theorem_A(J, [el(J, F2, "X^2")], 2, 2)
    assert r.passed and r.counts["atoms"] == 1
    assert [c.name for c in r.checks] == [
        "stalks_monoform",
        "stalks_pairwise_inequivalent",
        "kernel_detects_nonzero",
        "monoform_equivalent_to_exactly_one_stalk",
    ]
    r = verify_theorem_A(J, [], 2, 1)
    (w,) = r.check("non_surjectivity_witnesses").witnesses
    assert w == {"dims": {"1": 1}, "mats": {"X": [[1]]}, "kernel_zero": True}
    r = verify_theorem_A(S2, [], 2, 2)
    assert r.passed and r.counts["atoms"] == 2


def test_verify_rejects_non_admissible():
    with pytest.raises(NonAdmissibleRelationError):
        verify_theorem_A(J, [el(J, F2, "X^2 + e_1")], 2, 1)


def test_guards():
    big = rep(J, 2, {1: 6})
    with pytest.raises(ResourceError) as info:
        submodules(big, limit=100)
    assert info.value.count == fp.subspace_count(6, 2)
    with pytest.raises(ResourceError):
        enumerate_reps(kronecker_quiver(), [], 2, 4, limit=100)
    zero_map = rep(J, 2, {1: 3})
    with pytest.raises(ResourceError):
        isomorphic(zero_map, zero_map, hom_limit=10)


def test_verify_reports_guard_in_limits():
    with pytest.raises(ResourceError):
        verify_theorem_A(J, [], 2, 3, Limits(tuples=10))


# properties


def test_monoform_transfer_for_stalk_functor():
    # an F_p-module of dimension d is monoform iff d = 1; so is the stalk rep carrying it
    for p in (2, 3):
        for d in (1, 2):
            for v in S2.vertices:
                x = rep(S2, p, {v: d})
                assert is_monoform(x) == (d == 1)


def test_asupp_transfer_for_stalk_functor():
    stalks = [stalk(S2, v, 2) for v in S2.vertices]
    for v in S2.vertices:
        for d in (0, 1, 2):
            got = asupp(rep(S2, 2, {v: d}), stalks)
            assert got == ([stalk(S2, v, 2)] if d else [])


@pytest.mark.parametrize("quiver, rels", [(J, []), (J, ["X^2"]), (S2, []), (A3, ["d2*d3"])])
def test_atom_equivalence_is_an_equivalence_relation(quiver, rels):
    reps = enumerate_reps(quiver, [el(quiver, F2, r) for r in rels], 2, 2)
    mono = [x for x in reps if not x.is_zero() and is_monoform(x)]
    rel = {(i, j): atom_equivalent(a, b) for (i, a), (j, b) in itertools.product(enumerate(mono), repeat=2)}
    n = len(mono)
    for i in range(n):
        assert rel[i, i]
        for j in range(n):
            assert rel[i, j] == rel[j, i]
            for k in range(n):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k]
    assert sum(len(c) for c in atom_classes(mono)) == n


REPS_J2 = enumerate_reps(J, [], 2, 2)
REPS_A3 = enumerate_reps(A3, [el(A3, F2, "d2*d3")], 2, 2)


@given(st.sampled_from(REPS_J2), st.sampled_from(REPS_J2))
@settings(max_examples=40, deadline=None)
def test_direct_sum_submodules_and_kernels(x, y):
    s = direct_sum(x, y)
    assert len(submodules(s)) >= len(submodules(x)) * len(submodules(y))
    k = k_i(s, 1)
    assert k.shape[0] == k_i(x, 1).shape[0] + k_i(y, 1).shape[0]


@given(st.sampled_from(REPS_A3), st.sampled_from(REPS_A3))
@settings(max_examples=40, deadline=None)
def test_kernel_of_direct_sum_is_sum_of_kernels(x, y):
    s = direct_sum(x, y)
    for v in A3.vertices:
        kx, ky, ks = k_i(x, v), k_i(y, v), k_i(s, v)
        dx = x.dims[v]
        pad = [np.concatenate([r, np.zeros(y.dims[v], dtype=np.int64)]) for r in kx]
        pad += [np.concatenate([np.zeros(dx, dtype=np.int64), r]) for r in ky]
        expected = fp.span(pad, s.dims[v], 2) if pad else fp.zeros(0, s.dims[v])
        assert fp.key(expected) == fp.key(ks)


GL2 = [m for m in fp.all_matrices(2, 2, 3) if fp.is_invertible(m, 3)]


@given(
    st.lists(st.integers(0, 2), min_size=4, max_size=4),
    st.lists(st.integers(0, 2), min_size=4, max_size=4),
    st.sampled_from(GL2),
)
@settings(max_examples=40, deadline=None)
def test_conjugate_reps_are_isomorphic(a, b, g):
    k = kronecker_quiver()
    x = rep(k, 3, {1: 2, 2: 2}, {"a": np.reshape(a, (2, 2)), "b": np.reshape(b, (2, 2))})
    ginv = next(h for h in GL2 if ((g @ h) % 3 == np.eye(2, dtype=np.int64)).all())
    y = rep(k, 3, {1: 2, 2: 2}, {n: (g @ x.mats[n] @ ginv) % 3 for n in ("a", "b")})
    assert isomorphic(x, y)


def test_lemma_kernel_nonzero_on_right_rooted_examples():
    for quiver, rels in ((J, ["X^2"]), (A3, ["d2*d3"])):
        for x in enumerate_reps(quiver, [el(quiver, F2, r) for r in rels], 2, 3):
            assert x.is_zero() or kernel_nonzero_somewhere(x)
