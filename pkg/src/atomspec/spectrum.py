"""Atom spectra of module categories over bound quiver algebras kQ/(R).

For admissible relations every vertex i and prime p of the base ring give
the atom of kQ/p~(i), where p~(i) is the ideal of elements whose
coefficient on e_i lies in p.  These atoms form one copy of Spec k per
vertex, ordered and topologized as a disjoint union.  They exhaust the atom
spectrum when (Q, R) is right rooted; otherwise the result is flagged
``EMBEDDING_ONLY`` and only the image of that embedding is reported.
"""

from __future__ import annotations

import enum
import itertools
import json
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Mapping

from .algebra import AlgebraElement, Relation, is_admissible
from .errors import CapabilityError, NonAdmissibleRelationError, ResourceError, UsageError
from .ideals import DEFAULT_DEGREE_BOUND, DEFAULT_M_MAX, Verdict, is_right_rooted
from .quiver import Quiver, enumerate_paths, iter_paths_of_length, loop_quiver, subspace_quiver
from .rings import (
    BaseRing,
    PrimePoint,
    SpecSubset,
    SpectrumModel,
    in_prime,
    is_open,
    prime_generators,
    specialization_order_from_topology,
    spectrum_of,
)

DEFAULT_SAMPLE = (2, 3, 5)


class Status(enum.Enum):
    COMPLETE = "complete"
    EMBEDDING_ONLY = "embedding_only"


@dataclass(frozen=True)
class AtomPoint:
    vertex: str
    prime: PrimePoint

    def render(self) -> str:
        return f"({self.vertex}, {self.prime})"


@dataclass(frozen=True)
class AtomSpectrum:
    """Disjoint union of copies of prime spectra, one per vertex (or per triangular slot)."""

    components: tuple[tuple[str, SpectrumModel], ...]
    ring_name: str
    status: Status
    labeler: Callable[[AtomPoint], str] = field(compare=False, repr=False)
    quiver: Quiver | None = None
    relations: tuple = ()
    rootedness: Verdict | None = None
    warnings: tuple[str, ...] = ()

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.components)

    def model(self, vertex: str) -> SpectrumModel:
        for v, m in self.components:
            if v == vertex:
                return m
        raise UsageError(f"unknown vertex {vertex!r}")

    @property
    def is_finite(self) -> bool:
        return not any(m.is_symbolic for _, m in self.components)

    def points(self, sample: Iterable[int] = DEFAULT_SAMPLE) -> tuple[AtomPoint, ...]:
        sample = tuple(sample)
        return tuple(AtomPoint(v, pt) for v, m in self.components for pt in m.points(sample))

    def contains(self, point: AtomPoint) -> bool:
        return point.vertex in self.vertices and self.model(point.vertex).contains(point.prime)

    def leq(self, x: AtomPoint, y: AtomPoint) -> bool:
        return x.vertex == y.vertex and self.model(x.vertex).leq(x.prime, y.prime)

    def label(self, point: AtomPoint) -> str:
        return self.labeler(point)


def _check_admissible(relations: Iterable[Relation]) -> None:
    for r in relations:
        if not is_admissible(r):
            raise NonAdmissibleRelationError(r.element, r.source)


def atom_spectrum(
    quiver: Quiver,
    relations: Iterable = (),
    ring: BaseRing | None = None,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    m_max: int = DEFAULT_M_MAX,
) -> AtomSpectrum:
    """The atom spectrum of Mod kQ/(R) as a disjoint union of copies of Spec k."""
    rels = tuple(r if isinstance(r, Relation) else Relation(r) for r in relations)
    if ring is None:
        if not rels:
            raise UsageError("a base ring is required")
        ring = rels[0].element.ring
    _check_admissible(rels)
    warnings: list[str] = []
    try:
        verdict = is_right_rooted(quiver, rels, ring, degree_bound, m_max)
    except CapabilityError as exc:
        verdict = Verdict.INCONCLUSIVE
        warnings.append(f"right-rootedness undecided: {exc}")
    if verdict is Verdict.INCONCLUSIVE:
        warnings.append(
            "right-rootedness could not be certified within the search bounds; "
            "only the embedded copies of Spec k are reported"
        )
    status = Status.COMPLETE if verdict is Verdict.YES else Status.EMBEDDING_ONLY
    model = spectrum_of(ring)

    def labeler(pt: AtomPoint) -> str:
        return comonoform_ideal(quiver, ring, pt.vertex, pt.prime).label()

    return AtomSpectrum(
        components=tuple((v, model) for v in quiver.vertices),
        ring_name=ring.name,
        status=status,
        labeler=labeler,
        quiver=quiver,
        relations=rels,
        rootedness=verdict,
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class ComonoformIdeal:
    """The two-sided ideal p~(i) = {xi : coefficient of e_i in xi lies in p}."""

    quiver: Quiver
    ring: BaseRing
    vertex: str
    prime: PrimePoint
    generators: tuple[AlgebraElement, ...]

    def contains(self, xi: AlgebraElement) -> bool:
        return in_prime(self.prime, self.ring, xi.coefficient(self.quiver.trivial(self.vertex)))

    def label(self) -> str:
        gens = ", ".join(g.render() for g in self.generators) or "0"
        return f"<{self.ring.name}Q/({gens})>"

    def without(self, index: int) -> "ComonoformIdeal":
        """Copy with one generator dropped (used to test the generator oracle)."""
        gens = self.generators[:index] + self.generators[index + 1 :]
        return ComonoformIdeal(self.quiver, self.ring, self.vertex, self.prime, gens)


def comonoform_ideal(quiver: Quiver, ring: BaseRing, vertex, prime: PrimePoint) -> ComonoformIdeal:
    vertex = str(vertex)
    if vertex not in quiver.vertices:
        raise UsageError(f"unknown vertex {vertex!r}")
    if not spectrum_of(ring).contains(prime):
        raise UsageError(f"{prime} is not a prime of {ring.name}")
    gens = [AlgebraElement.of_path(quiver, ring, quiver.trivial(j)) for j in quiver.vertices if j != vertex]
    gens += [AlgebraElement.of_path(quiver, ring, quiver.path(a.name)) for a in quiver.arrows]
    e_i = quiver.trivial(vertex)
    gens += [AlgebraElement.of_path(quiver, ring, e_i, x) for x in prime_generators(prime)]
    return ComonoformIdeal(quiver, ring, vertex, prime, tuple(gens))


class _Span:
    """Membership in the span of integer vectors over F_p, Z/n or Z."""

    def __init__(self, ring: BaseRing, dim: int, vectors: list[list[int]]):
        self.ring = ring
        self.dim = dim
        if ring.is_field:
            self._rows: list[tuple[int, list[int]]] = []
            for v in vectors:
                self._insert(v)
        else:
            # only diagonal (single-coordinate) spanning vectors are supported here
            self._ideal = [0] * dim
            for v in vectors:
                nz = [k for k, c in enumerate(v) if ring.reduce(c)]
                if len(nz) > 1:
                    raise CapabilityError("span over a non-field ring needs single-path spanning vectors")
                for k in nz:
                    self._ideal[k] = gcd(self._ideal[k], abs(v[k]))

    def _reduce(self, v: list[int]) -> list[int]:
        p = self.ring.modulus
        v = [c % p for c in v]
        for piv, row in self._rows:
            c = v[piv]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return v

    def _insert(self, v: list[int]) -> None:
        p = self.ring.modulus
        v = self._reduce(v)
        piv = next((k for k, c in enumerate(v) if c), None)
        if piv is None:
            return
        inv = pow(v[piv], -1, p)
        v = [c * inv % p for c in v]
        rows = []
        for q, row in self._rows:
            c = row[piv]
            rows.append((q, [(a - c * b) % p for a, b in zip(row, v)] if c else row))
        rows.append((piv, v))
        self._rows = rows

    def __contains__(self, v: list[int]) -> bool:
        if self.ring.is_field:
            return not any(self._reduce(v))
        n = self.ring.modulus
        for c, g in zip(v, self._ideal):
            c = self.ring.reduce(c)
            if n:
                if c % gcd(g, n):
                    return False
            elif c if g == 0 else c % g:
                return False
        return True


def verify_ideal_generators(
    ideal: ComonoformIdeal, deg_bound: int, element_limit: int = 10**6, coefficient_radius: int | None = None
) -> bool:
    """Brute-force check that the generators span exactly the coefficient-test set.

    Works in the truncation of kQ spanned by paths of length <= ``deg_bound``:
    computes the span of all alpha*g*beta (alpha, beta paths, g a generator)
    that land in the truncation, then compares membership in that span with
    the e_i-coefficient predicate on every element with coefficients in the
    ring (finite rings) or in ``[-r, r]`` (Z).
    """
    q, ring = ideal.quiver, ideal.ring
    basis = enumerate_paths(q, deg_bound)
    index = {p: k for k, p in enumerate(basis)}
    if ring.is_finite:
        coeffs = ring.elements()
    else:
        r = coefficient_radius or max(2, ideal.prime.p)
        coeffs = tuple(range(-r, r + 1))
    total = len(coeffs) ** len(basis)
    if total > element_limit:
        raise ResourceError("elements to enumerate", total, element_limit)
    path_elems = [AlgebraElement.of_path(q, ring, p) for p in basis]
    vectors = []
    for g in ideal.generators:
        for alpha in path_elems:
            left = alpha * g
            if left.is_zero():
                continue
            for beta in path_elems:
                w = left * beta
                if w.is_zero() or any(p not in index for p in w.terms):
                    continue
                v = [0] * len(basis)
                for p, c in w.terms.items():
                    v[index[p]] = c
                vectors.append(v)
    spanned = _Span(ring, len(basis), vectors)
    pos = index[q.trivial(ideal.vertex)]
    for combo in itertools.product(coeffs, repeat=len(basis)):
        v = list(combo)
        if (v in spanned) != in_prime(ideal.prime, ring, v[pos]):
            return False
    return True


def order_pairs(spectrum: AtomSpectrum, sample: Iterable[AtomPoint]) -> frozenset:
    """All pairs (x, y) of sampled points with x <= y (reflexive pairs included)."""
    pts = list(sample)
    for x in pts:
        if not spectrum.contains(x):
            raise UsageError(f"{x.render()} is not a point of the spectrum")
    return frozenset((x, y) for x in pts for y in pts if spectrum.leq(x, y))


def _slices(spectrum: AtomSpectrum, subset) -> dict[str, SpecSubset]:
    if isinstance(subset, Mapping):
        return {str(v): s for v, s in subset.items()}
    out: dict[str, set] = {}
    for pt in subset:
        out.setdefault(pt.vertex, set()).add(pt.prime)
    return {v: SpecSubset.of(s) for v, s in out.items()}


def is_open_atoms(spectrum: AtomSpectrum, subset) -> bool:
    """Open iff every per-vertex slice is specialization-closed in its copy of Spec k.

    ``subset`` is either an iterable of points or a mapping vertex -> SpecSubset
    (missing vertices mean the empty slice).
    """
    slices = _slices(spectrum, subset)
    for v, s in slices.items():
        if not is_open(s, spectrum.model(v)):
            return False
    return True


def sample_opens(spectrum: AtomSpectrum, sample: Iterable[AtomPoint]) -> Callable[[frozenset], bool]:
    """Open-set predicate of the subspace topology on a finite sample."""
    sample = frozenset(sample)

    def pred(subset: frozenset) -> bool:
        for v, s in _slices(spectrum, subset).items():
            hull = spectrum.model(v).open_hull(s)
            if {pt.prime for pt in sample if pt.vertex == v and pt.prime in hull} != set(s.points):
                return False
        return True

    return pred


def order_from_opens(spectrum: AtomSpectrum, sample: Iterable[AtomPoint]) -> frozenset:
    sample = tuple(sample)
    return specialization_order_from_topology(sample, sample_opens(spectrum, sample))


def hasse_edges(spectrum: AtomSpectrum, points: Iterable[AtomPoint]) -> list[tuple[int, int]]:
    pts = list(points)
    less = {
        (i, j) for i, x in enumerate(pts) for j, y in enumerate(pts) if i != j and spectrum.leq(x, y)
    }
    return sorted(
        (i, j) for i, j in less if not any((i, k) in less and (k, j) in less for k in range(len(pts)))
    )


def _sorted_points(spectrum: AtomSpectrum, sample) -> list[AtomPoint]:
    order = {v: k for k, v in enumerate(spectrum.vertices)}
    return sorted(spectrum.points(sample), key=lambda pt: (order[pt.vertex], pt.prime.sort_key()))


def node_id(pt: AtomPoint) -> str:
    return f"v{pt.vertex}_p{pt.prime.short()}"


def emit(spectrum: AtomSpectrum, fmt: str = "json", sample: Iterable[int] = DEFAULT_SAMPLE) -> str:
    """Render as ``json``, ``dot`` or ``text``; Spec Z is shown on (0) plus ``sample``."""
    sample = tuple(sorted(set(sample)))
    pts = _sorted_points(spectrum, sample)
    if fmt == "json":
        note = "open sets: subsets whose slice in each copy of Spec k is specialization-closed"
        if not spectrum.is_finite:
            note += f"; Spec Z is shown on the sample (0), {', '.join(f'({p})' for p in sample)}"
        payload = {
            "status": spectrum.status.value,
            "ring": spectrum.ring_name,
            "points": [
                {"vertex": pt.vertex, "prime": pt.prime.to_json(), "label": spectrum.label(pt)} for pt in pts
            ],
            "order": [
                [i, j] for i, x in enumerate(pts) for j, y in enumerate(pts) if i != j and spectrum.leq(x, y)
            ],
            "open_basis_note": note,
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if fmt == "dot":
        lines = ["digraph atom_spectrum {", "  rankdir=BT;"]
        for pt in pts:
            label = f"{pt.render()}\\n{spectrum.label(pt)}".replace('"', '\\"')
            lines.append(f'  "{node_id(pt)}" [label="{label}"];')
        for i, j in hasse_edges(spectrum, pts):
            lines.append(f'  "{node_id(pts[i])}" -> "{node_id(pts[j])}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "text":
        lines = [f"atom spectrum over {spectrum.ring_name}: {spectrum.status.value}"]
        if spectrum.rootedness is not None:
            lines.append(f"right rooted: {spectrum.rootedness.value}")
        lines.extend(f"warning: {w}" for w in spectrum.warnings)
        for k, pt in enumerate(pts):
            lines.append(f"[{k}] {pt.render()}  {spectrum.label(pt)}")
        for i, j in hasse_edges(spectrum, pts):
            lines.append(f"[{i}] < [{j}]")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}; expected json, dot or text")


# special presentations


@dataclass(frozen=True)
class PresentationReport:
    name: str
    algebra: str
    spectrum: AtomSpectrum
    ideals: tuple[tuple[str, tuple[tuple[str, ...], ...]], ...] = ()
    notes: tuple[str, ...] = ()

    def render(self) -> str:
        lines = [f"{self.name}: {self.algebra}"]
        for vertex, matrix in self.ideals:
            width = max(len(c) for row in matrix for c in row)
            lines.append(f"ideal p-bar({vertex}):")
            lines.extend("  [" + " ".join(c.rjust(width) for c in row) + "]" for row in matrix)
        lines.extend(self.notes)
        return "\n".join(lines) + "\n"


def subspace_ideal_pattern(n: int, i: int, prime: str = "p") -> tuple[tuple[str, ...], ...]:
    """Entry pattern of the ideal of L_n(k) matching p~(i): ``p`` at (i, i), ``0`` off the support."""
    rows = []
    for r in range(1, n + 1):
        row = []
        for c in range(1, n + 1):
            if r == c:
                row.append(prime if r == i else "k")
            elif r == n:
                row.append("k")
            else:
                row.append("0")
        rows.append(tuple(row))
    return tuple(rows)


def subspace_matrix(x: AlgebraElement) -> list[list[int]]:
    """Image of an element of k Sigma_n in L_n(k): e_i -> E_ii and a_i -> E_ni."""
    q = x.quiver
    n = len(q.vertices)
    m = [[0] * n for _ in range(n)]
    for p, c in x.terms.items():
        r, col = int(p.target) - 1, int(p.source) - 1
        m[r][col] = x.ring.add(m[r][col], c)
    return m


def special_presentations(name: str, ring: BaseRing | None = None) -> PresentationReport:
    """``subspace(n)`` (the algebra L_n(k)) or ``free(n,m)`` (k<x_1..x_n>/(x_1..x_n)^m)."""
    ring = ring or BaseRing.integers()
    m = re.fullmatch(r"\s*subspace\((\d+)\)\s*", name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise UsageError("subspace(n) requires n >= 2")
        spec = atom_spectrum(subspace_quiver(n), (), ring)
        ideals = tuple((str(i), subspace_ideal_pattern(n, i)) for i in range(1, n + 1))
        notes = (
            f"L_{n}(k) = {n} x {n} matrices over k, zero off the diagonal except in the bottom row",
            f"atoms: {n} per prime p of {ring.name}, the i-th being L_{n}(k)/p-bar(i)",
        )
        return PresentationReport(f"subspace({n})", f"L_{n}({ring.name})", spec, ideals, notes)
    m = re.fullmatch(r"\s*free\((\d+),\s*(\d+)\)\s*", name)
    if m:
        n, deg = int(m.group(1)), int(m.group(2))
        if n < 1 or deg < 1:
            raise UsageError("free(n,m) requires n >= 1 and m >= 1")
        q = loop_quiver(n)
        rels = [AlgebraElement.of_path(q, ring, p) for p in iter_paths_of_length(q, deg)]
        spec = atom_spectrum(q, rels, ring)
        variables = ",".join(f"x{k}" for k in range(1, n + 1))

        def labeler(pt: AtomPoint) -> str:
            if pt.prime.tag == "prime" and not ring.is_field:
                return f"<{ring.name}/{pt.prime}>"
            return f"<{ring.name}>"

        spec = AtomSpectrum(
            spec.components, spec.ring_name, spec.status, labeler, spec.quiver, spec.relations, spec.rootedness
        )
        notes = (
            f"atoms: one per prime p of {ring.name}, the module {ring.name}/p with {variables} acting as zero",
        )
        algebra = f"{ring.name}<{variables}>/({variables})^{deg}"
        return PresentationReport(f"free({n},{deg})", algebra, spec, (), notes)
    raise UsageError(f"unknown presentation {name!r}; expected subspace(n) or free(n,m)")
