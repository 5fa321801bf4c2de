"""Brute-force checks over finite representations of a quiver over F_p.

A representation assigns F_p^{d_v} to each vertex v and a d_t x d_s matrix
to each arrow s -> t.  Submodules, quotients, isomorphism, monoformness and
atom equivalence are all decided by exhaustive enumeration, so everything
here is exact but only usable on tiny instances.  Guards raise
:class:`ResourceError` instead of truncating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import fp
from .algebra import AlgebraElement, Relation, is_admissible
from .errors import NonAdmissibleRelationError, ResourceError, UsageError
from .ideals import Verdict, is_right_rooted
from .quiver import Path, Quiver
from .rings import BaseRing, is_prime

SUBMODULE_LIMIT = 10**6
HOM_LIMIT = 10**5
TUPLE_LIMIT = 10**7


@dataclass(frozen=True)
class Limits:
    submodules: int = SUBMODULE_LIMIT
    hom: int = HOM_LIMIT
    tuples: int = TUPLE_LIMIT


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True, eq=False)
class FiniteRep:
    """A representation of ``quiver`` over F_p; ``mats[a]`` has shape dims[target] x dims[source]."""

    p: int
    quiver: Quiver
    dims: Mapping[str, int]
    mats: Mapping[str, np.ndarray]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")
        dims = {v: int(self.dims.get(v, 0)) for v in self.quiver.vertices}
        if any(d < 0 for d in dims.values()):
            raise UsageError("dimensions must be non-negative")
        extra = set(self.dims) - set(dims)
        if extra:
            raise UsageError(f"unknown vertices {sorted(extra)}")
        mats = {}
        for a in self.quiver.arrows:
            shape = (dims[a.target], dims[a.source])
            raw = self.mats.get(a.name)
            m = np.zeros(shape, dtype=np.int64) if raw is None else np.array(raw, dtype=np.int64)
            if m.size == 0 and shape[0] * shape[1] == 0:
                m = np.zeros(shape, dtype=np.int64)
            if m.shape != shape:
                raise UsageError(f"matrix of arrow {a.name!r} has shape {m.shape}, expected {shape}")
            mats[a.name] = fp.frozen(m % self.p)
        extra = set(self.mats) - set(mats)
        if extra:
            raise UsageError(f"unknown arrows {sorted(extra)}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mats", mats)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def path_matrix(self, path: Path) -> np.ndarray:
        m = np.eye(self.dims[path.source], dtype=np.int64)
        for name in path.arrows:
            m = (self.mats[name] @ m) % self.p
        return m

    def evaluate(self, x: AlgebraElement) -> dict[tuple[str, str], np.ndarray]:
        """X(x) split by (source, target) block."""
        out: dict[tuple[str, str], np.ndarray] = {}
        for path, c in x.terms.items():
            k = (path.source, path.target)
            acc = out.get(k, np.zeros((self.dims[path.target], self.dims[path.source]), dtype=np.int64))
            out[k] = (acc + c * self.path_matrix(path)) % self.p
        return out

    def key(self) -> tuple:
        return (self.p, self.dim_vector(), tuple(fp.key(self.mats[a.name]) for a in self.quiver.arrows))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRep) and self.quiver == other.quiver and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        return {
            "dims": {v: self.dims[v] for v in self.quiver.vertices},
            "mats": {a.name: self.mats[a.name].tolist() for a in self.quiver.arrows},
        }

    def __repr__(self) -> str:
        return f"FiniteRep(p={self.p}, {self.to_json()})"


def rep(quiver: Quiver, p: int, dims: Mapping, mats: Mapping | None = None) -> FiniteRep:
    return FiniteRep(p, quiver, {str(k): v for k, v in dims.items()}, dict(mats or {}))


def zero_rep(quiver: Quiver, p: int) -> FiniteRep:
    return rep(quiver, p, {})


def direct_sum(x: FiniteRep, y: FiniteRep) -> FiniteRep:
    if x.quiver != y.quiver or x.p != y.p:
        raise UsageError("direct sum of representations of different quivers or fields")
    dims = {v: x.dims[v] + y.dims[v] for v in x.quiver.vertices}
    mats = {}
    for a in x.quiver.arrows:
        m = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
        xs, xt = x.dims[a.source], x.dims[a.target]
        m[:xt, :xs] = x.mats[a.name]
        m[xt:, xs:] = y.mats[a.name]
        mats[a.name] = m
    return FiniteRep(x.p, x.quiver, dims, mats)


@dataclass(frozen=True, eq=False)
class SubRep:
    """Arrow-stable choice of subspaces, each an echelon basis of shape (k, dims[v])."""

    parent: FiniteRep
    spaces: Mapping[str, np.ndarray]

    def dims(self) -> dict[str, int]:
        return {v: int(self.spaces[v].shape[0]) for v in self.parent.quiver.vertices}

    @property
    def total_dim(self) -> int:
        return sum(self.dims().values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def key(self) -> tuple:
        return tuple(fp.key(self.spaces[v]) for v in self.parent.quiver.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, SubRep) and self.parent == other.parent and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def contains(self, other: "SubRep") -> bool:
        p = self.parent.p
        return all(fp.is_subspace(other.spaces[v], self.spaces[v], p) for v in self.parent.quiver.vertices)

    def as_rep(self) -> FiniteRep:
        """The submodule as a representation in the coordinates of its echelon bases."""
        x, p = self.parent, self.parent.p
        mats = {}
        for a in x.quiver.arrows:
            src, tgt = self.spaces[a.source], self.spaces[a.target]
            images = (src @ x.mats[a.name].T) % p
            cols = [fp.coordinates(tgt, img, p) for img in images]
            m = np.array(cols, dtype=np.int64).reshape(len(cols), tgt.shape[0]).T
            mats[a.name] = m
        return FiniteRep(p, x.quiver, self.dims(), mats)


def check_relations(x: FiniteRep, relations: Iterable) -> bool:
    """True iff X(rho) = 0 for every relation (coefficients read mod p)."""
    for r in relations:
        element = r.element if isinstance(r, Relation) else r
        if element.quiver != x.quiver:
            raise UsageError("relation over a different quiver")
        for block in x.evaluate(element).values():
            if block.any():
                return False
    return True


def _image_inside(basis_src: np.ndarray, mat: np.ndarray, basis_tgt: np.ndarray, p: int) -> bool:
    if basis_src.shape[0] == 0:
        return True
    images = (basis_src @ mat.T) % p
    if not images.any():
        return True
    if basis_tgt.shape[0] == 0:
        return False
    return fp.rank(np.vstack([basis_tgt, images]), p) == basis_tgt.shape[0]


def submodules(x: FiniteRep, limit: int = SUBMODULE_LIMIT) -> list[SubRep]:
    """Every arrow-stable tuple of subspaces, each once, by increasing total dimension."""
    cache_key = ("submodules",)
    if cache_key in x._cache:
        return x._cache[cache_key]
    q, p = x.quiver, x.p
    count = 1
    for v in q.vertices:
        count *= fp.subspace_count(x.dims[v], p)
    if count > limit:
        raise ResourceError("subspace tuples", count, limit)
    verts = q.vertices
    options = {v: list(fp.subspaces(x.dims[v], p)) for v in verts}
    # arrows checked as soon as both endpoints are assigned
    order = {v: k for k, v in enumerate(verts)}
    checks: list[list] = [[] for _ in verts]
    for a in q.arrows:
        checks[max(order[a.source], order[a.target])].append(a)
    found: list[SubRep] = []
    chosen: dict[str, np.ndarray] = {}

    def extend(k: int) -> None:
        if k == len(verts):
            found.append(SubRep(x, dict(chosen)))
            return
        v = verts[k]
        for basis in options[v]:
            chosen[v] = basis
            if all(_image_inside(chosen[a.source], x.mats[a.name], chosen[a.target], p) for a in checks[k]):
                extend(k + 1)
        del chosen[v]

    extend(0)
    found.sort(key=lambda s: s.total_dim)
    x._cache[cache_key] = found
    return found


def _complement_columns(basis: np.ndarray, dim: int) -> list[int]:
    pivots = {int(np.nonzero(row)[0][0]) for row in basis}
    return [c for c in range(dim) if c not in pivots]


def _project(basis: np.ndarray, v: np.ndarray, keep: list[int], p: int) -> np.ndarray:
    v = v % p
    for row in basis:
        piv = int(np.nonzero(row)[0][0])
        if v[piv]:
            v = (v - v[piv] * row) % p
    return v[keep]


def quotient(x: FiniteRep, s: SubRep) -> FiniteRep:
    """X/S, with the quotient at v identified with the non-pivot coordinates of S_v."""
    if s.parent != x:
        raise UsageError("subrepresentation of a different representation")
    p = x.p
    keep = {v: _complement_columns(s.spaces[v], x.dims[v]) for v in x.quiver.vertices}
    mats = {}
    for a in x.quiver.arrows:
        cols = []
        for c in keep[a.source]:
            image = x.mats[a.name][:, c]
            cols.append(_project(s.spaces[a.target], image, keep[a.target], p))
        m = np.array(cols, dtype=np.int64).reshape(len(cols), len(keep[a.target])).T
        mats[a.name] = m
    return FiniteRep(p, x.quiver, {v: len(keep[v]) for v in x.quiver.vertices}, mats)


def homs(x: FiniteRep, y: FiniteRep) -> np.ndarray:
    """Basis (rows) of the solution space of Y(a) T_s = T_t X(a), unknowns stacked vertex by vertex."""
    q, p = x.quiver, x.p
    offset, total = {}, 0
    for v in q.vertices:
        offset[v] = total
        total += y.dims[v] * x.dims[v]
    rows = []
    for a in q.arrows:
        s, t = a.source, a.target
        xa, ya = x.mats[a.name], y.mats[a.name]
        for r in range(y.dims[t]):
            for c in range(x.dims[s]):
                eq = np.zeros(total, dtype=np.int64)
                # (Y(a) T_s)[r, c] = sum_k Y[r, k] T_s[k, c]
                for k in range(y.dims[s]):
                    eq[offset[s] + k * x.dims[s] + c] += ya[r, k]
                # (T_t X(a))[r, c] = sum_k T_t[r, k] X[k, c]
                for k in range(x.dims[t]):
                    eq[offset[t] + r * x.dims[t] + k] -= xa[k, c]
                rows.append(eq % p)
    if total == 0:
        return fp.zeros(0, 0)
    if not rows:
        return fp.identity(total)
    return fp.nullspace(np.array(rows, dtype=np.int64), p)


def isomorphic(x: FiniteRep, y: FiniteRep, hom_limit: int = HOM_LIMIT) -> bool:
    if x.quiver != y.quiver or x.p != y.p:
        raise UsageError("comparing representations of different quivers or fields")
    if x.dims != y.dims:
        return False
    p = x.p
    for a in x.quiver.arrows:
        if fp.rank(x.mats[a.name], p) != fp.rank(y.mats[a.name], p):
            return False
    if x.total_dim == 0:
        return True
    basis = homs(x, y)
    size = p ** basis.shape[0]
    if size > hom_limit:
        raise ResourceError("homomorphisms", size, hom_limit)
    verts = x.quiver.vertices
    for coeffs in itertools.product(range(p), repeat=basis.shape[0]):
        t = (np.array(coeffs, dtype=np.int64) @ basis) % p if basis.shape[0] else np.zeros(basis.shape[1], dtype=np.int64)
        pos, ok = 0, True
        for v in verts:
            d = x.dims[v]
            if d and not fp.is_invertible(t[pos : pos + d * d].reshape(d, d), p):
                ok = False
                break
            pos += d * d
        if ok:
            return True
    return False


def simple_submodules(x: FiniteRep, limits: Limits = DEFAULT_LIMITS) -> list[FiniteRep]:
    """Minimal nonzero submodules, as representations."""
    key = ("simples",)
    if key not in x._cache:
        subs = [s for s in submodules(x, limits.submodules) if not s.is_zero()]
        minimal = [s for s in subs if not any(t.total_dim < s.total_dim and s.contains(t) for t in subs)]
        x._cache[key] = [s.as_rep() for s in minimal]
    return x._cache[key]


def common_nonzero_subobject(h: FiniteRep, h2: FiniteRep, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether some nonzero submodule of H is isomorphic to a submodule of H2.

    A common nonzero submodule contains a simple one, which is then common
    as well, so only simple submodules need comparing.
    """
    if h.is_zero() or h2.is_zero():
        return False
    left = simple_submodules(h, limits)
    right = simple_submodules(h2, limits)
    return any(isomorphic(a, b, limits.hom) for a in left for b in right if a.dims == b.dims)


def is_monoform(h: FiniteRep, limits: Limits = DEFAULT_LIMITS) -> bool:
    key = ("monoform",)
    if key in h._cache:
        return h._cache[key]
    result = not h.is_zero()
    if result:
        for n in submodules(h, limits.submodules):
            if n.is_zero() or n.total_dim == h.total_dim:
                continue
            if common_nonzero_subobject(h, quotient(h, n), limits):
                result = False
                break
    h._cache[key] = result
    return result


def atom_equivalent(h: FiniteRep, h2: FiniteRep, limits: Limits = DEFAULT_LIMITS) -> bool:
    for x in (h, h2):
        if not is_monoform(x, limits):
            raise UsageError(f"atom equivalence needs monoform input; {x.to_json()} is not monoform")
    return common_nonzero_subobject(h, h2, limits)


def subquotients(m: FiniteRep, limits: Limits = DEFAULT_LIMITS) -> Iterator[FiniteRep]:
    """Every L/L' with L' <= L <= M (as submodules of M/L')."""
    for lower in submodules(m, limits.submodules):
        top = quotient(m, lower)
        for s in submodules(top, limits.submodules):
            yield s.as_rep()


def asupp(m: FiniteRep, reps: Sequence[FiniteRep], limits: Limits = DEFAULT_LIMITS) -> list[FiniteRep]:
    """Those of ``reps`` atom-equivalent to some monoform subquotient of M."""
    hits = [False] * len(reps)
    for sq in subquotients(m, limits):
        if all(hits):
            break
        if sq.is_zero() or not is_monoform(sq, limits):
            continue
        for k, r in enumerate(reps):
            if not hits[k] and atom_equivalent(sq, r, limits):
                hits[k] = True
    return [r for r, hit in zip(reps, hits) if hit]


def stalk(quiver: Quiver, vertex, p: int) -> FiniteRep:
    """S_i(F_p): F_p at ``vertex``, zero elsewhere, all arrows zero."""
    vertex = str(vertex)
    if vertex not in quiver.vertices:
        raise UsageError(f"unknown vertex {vertex!r}")
    return rep(quiver, p, {vertex: 1})


def k_i(x: FiniteRep, vertex) -> np.ndarray:
    """Echelon basis of the intersection of ker X(a) over arrows a leaving ``vertex``."""
    vertex = str(vertex)
    if vertex not in x.quiver.vertices:
        raise UsageError(f"unknown vertex {vertex!r}")
    d = x.dims[vertex]
    outgoing = [x.mats[a.name] for a in x.quiver.arrows_from(vertex)]
    if d == 0:
        return fp.zeros(0, 0)
    stacked = [m for m in outgoing if m.shape[0]]
    if not stacked:
        return fp.identity(d)
    return fp.nullspace(np.vstack(stacked), x.p)


def kernel_nonzero_somewhere(x: FiniteRep) -> bool:
    return any(k_i(x, v).shape[0] for v in x.quiver.vertices)


def _field_relations(quiver: Quiver, relations: Iterable, p: int) -> tuple[Relation, ...]:
    field_ = BaseRing.prime_field(p)
    out = []
    for r in relations:
        src = r.source if isinstance(r, Relation) else None
        element = r.element if isinstance(r, Relation) else r
        if element.quiver != quiver:
            raise UsageError("relation over a different quiver")
        if not is_admissible(element):
            raise NonAdmissibleRelationError(element, src)
        out.append(Relation(AlgebraElement(quiver, field_, element.terms), src))
    return tuple(out)


def dimension_vectors(quiver: Quiver, bound: int) -> list[tuple[int, ...]]:
    n = len(quiver.vertices)
    vecs = [v for v in itertools.product(range(bound + 1), repeat=n) if sum(v) <= bound]
    return sorted(vecs, key=lambda v: (sum(v), v))


def count_tuples(quiver: Quiver, p: int, bound: int) -> int:
    total = 0
    for vec in dimension_vectors(quiver, bound):
        d = dict(zip(quiver.vertices, vec))
        total += p ** sum(d[a.source] * d[a.target] for a in quiver.arrows)
    return total


def enumerate_reps(
    quiver: Quiver, relations: Iterable, p: int, dim_bound: int, limit: int = TUPLE_LIMIT
) -> list[FiniteRep]:
    """All relation-satisfying representations with total dimension <= dim_bound (zero included)."""
    rels = _field_relations(quiver, relations, p)
    total = count_tuples(quiver, p, dim_bound)
    if total > limit:
        raise ResourceError("matrix tuples", total, limit)
    out = []
    for vec in dimension_vectors(quiver, dim_bound):
        d = dict(zip(quiver.vertices, vec))
        shapes = [(d[a.target], d[a.source]) for a in quiver.arrows]
        sizes = [r * c for r, c in shapes]
        for entries in itertools.product(range(p), repeat=sum(sizes)):
            mats, pos = {}, 0
            for a, (r, c), n in zip(quiver.arrows, shapes, sizes):
                mats[a.name] = np.array(entries[pos : pos + n], dtype=np.int64).reshape(r, c)
                pos += n
            x = FiniteRep(p, quiver, d, mats)
            if check_relations(x, rels):
                out.append(x)
    return out


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witnesses": self.witnesses}


@dataclass
class OracleReport:
    checks: list[Check]
    counts: dict[str, int]
    right_rooted: Verdict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "right_rooted": self.right_rooted.value,
            "checks": [c.to_json() for c in self.checks],
            "counts": dict(self.counts),
        }


def atom_classes(monoform: Sequence[FiniteRep], limits: Limits = DEFAULT_LIMITS) -> list[list[FiniteRep]]:
    classes: list[list[FiniteRep]] = []
    for x in monoform:
        for cls in classes:
            if common_nonzero_subobject(cls[0], x, limits):
                cls.append(x)
                break
        else:
            classes.append([x])
    return classes


def verify_theorem_A(
    quiver: Quiver, relations: Iterable, p: int, dim_bound: int, limits: Limits = DEFAULT_LIMITS
) -> OracleReport:
    """Check the stalk description of the atoms on every representation up to ``dim_bound``."""
    rels = _field_relations(quiver, relations, p)
    verdict = is_right_rooted(quiver, rels, BaseRing.prime_field(p))
    stalks = [stalk(quiver, v, p) for v in quiver.vertices]
    checks = []

    bad = [s.to_json() for s in stalks if not (check_relations(s, rels) and is_monoform(s, limits))]
    checks.append(Check("stalks_monoform", not bad, bad))

    clashes = [
        [quiver.vertices[i], quiver.vertices[j]]
        for i, j in itertools.combinations(range(len(stalks)), 2)
        if common_nonzero_subobject(stalks[i], stalks[j], limits)
    ]
    checks.append(Check("stalks_pairwise_inequivalent", not clashes, clashes))

    reps = enumerate_reps(quiver, rels, p, dim_bound, limits.tuples)
    nonzero = [x for x in reps if not x.is_zero()]
    monoform = [x for x in nonzero if is_monoform(x, limits)]

    def matches(x: FiniteRep) -> int:
        return sum(common_nonzero_subobject(x, s, limits) for s in stalks)

    if verdict is Verdict.YES:
        blind = [x.to_json() for x in nonzero if not kernel_nonzero_somewhere(x)]
        checks.append(Check("kernel_detects_nonzero", not blind, blind))
        off = [dict(x.to_json(), stalks_matched=matches(x)) for x in monoform if matches(x) != 1]
        checks.append(Check("monoform_equivalent_to_exactly_one_stalk", not off, off))
    else:
        missing = [
            dict(x.to_json(), kernel_zero=not kernel_nonzero_somewhere(x)) for x in monoform if matches(x) == 0
        ]
        checks.append(Check("non_surjectivity_witnesses", True, missing))

    counts = {
        "reps": len(reps),
        "nonzero": len(nonzero),
        "monoform": len(monoform),
        "atoms": len(atom_classes(monoform, limits)),
    }
    return OracleReport(checks, counts, verdict)
