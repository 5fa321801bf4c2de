"""Elements of the path algebra kQ and relations in a quiver."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .dsl import RelationSource, parse_expression
from .errors import CompositionError, ParseError, UsageError
from .quiver import Path, Quiver, compose
from .rings import BaseRing


class AlgebraElement:
    """A finite k-linear combination of paths; zero coefficients are never stored."""

    __slots__ = ("quiver", "ring", "_terms", "_hash")

    def __init__(self, quiver: Quiver, ring: BaseRing, terms: Mapping[Path, int] | Iterable = ()):
        self.quiver = quiver
        self.ring = ring
        acc: dict[Path, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for path, c in items:
            acc[path] = acc.get(path, 0) + c
        clean = {}
        for path, c in acc.items():
            c = ring.reduce(c)
            if c:
                clean[path] = c
        self._terms = MappingProxyType(clean)
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, quiver: Quiver, ring: BaseRing) -> "AlgebraElement":
        return cls(quiver, ring)

    @classmethod
    def unit(cls, quiver: Quiver, ring: BaseRing) -> "AlgebraElement":
        return cls(quiver, ring, {quiver.trivial(v): 1 for v in quiver.vertices})

    @classmethod
    def of_path(cls, quiver: Quiver, ring: BaseRing, path: Path, coeff: int = 1) -> "AlgebraElement":
        return cls(quiver, ring, {path: coeff})

    # accessors

    @property
    def terms(self) -> Mapping[Path, int]:
        return self._terms

    def coefficient(self, path: Path) -> int:
        return self._terms.get(path, 0)

    def support(self) -> list[Path]:
        """Support paths in increasing rewriting order."""
        return sorted(self._terms, key=self.quiver.path_key)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        return max((p.length for p in self._terms), default=-1)

    def leading(self) -> tuple[Path, int]:
        lead = max(self._terms, key=self.quiver.path_key)
        return lead, self._terms[lead]

    def blocks(self) -> dict[tuple[str, str], "AlgebraElement"]:
        """Split into e_j * x * e_i components keyed by (source i, target j)."""
        out: dict[tuple[str, str], dict[Path, int]] = {}
        for p, c in self._terms.items():
            out.setdefault((p.source, p.target), {})[p] = c
        return {k: AlgebraElement(self.quiver, self.ring, v) for k, v in sorted(out.items())}

    # arithmetic

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise UsageError(f"cannot combine an algebra element with {type(other).__name__}")
        if other.quiver != self.quiver or other.ring != self.ring:
            raise UsageError("algebra elements over different quivers or rings")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.quiver, self.ring, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.quiver, self.ring, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self.quiver, self.ring, {p: c * v for p, v in self._terms.items()})

    def __rmul__(self, c: int) -> "AlgebraElement":
        if isinstance(c, int):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        """Product ``self * other``: paths compose as "first other, then self"."""
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        acc: list[tuple[Path, int]] = []
        for p, c in self._terms.items():
            for q, d in other._terms.items():
                if q.target == p.source:
                    acc.append((compose(p, q), c * d))
        return AlgebraElement(self.quiver, self.ring, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.quiver == other.quiver and self.ring == other.ring and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for p in reversed(self.support()):
            c = self._terms[p]
            if self.ring.is_finite and c > self.ring.modulus // 2 and self.ring.modulus > 2:
                c -= self.ring.modulus
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = p.render() if mag == 1 else f"{mag}*{p.render()}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"AlgebraElement({self.render()!r} over {self.ring.name})"


@dataclass(frozen=True)
class Relation:
    """A combination of parallel paths; ``source`` records where it came from in the DSL."""

    element: AlgebraElement
    source: RelationSource | None = None

    def __post_init__(self):
        ends = {(p.source, p.target) for p in self.element.terms}
        if len(ends) > 1:
            raise UsageError(f"relation {self.element} mixes paths with different endpoints {sorted(ends)}")

    @property
    def endpoints(self) -> tuple[str, str] | None:
        for p in self.element.terms:
            return (p.source, p.target)
        return None

    @property
    def is_zero(self) -> bool:
        return self.element.is_zero()

    def monomial(self) -> Path | None:
        """The path if the relation is a unit multiple of a single path."""
        terms = self.element.terms
        if len(terms) != 1:
            return None
        (p, c), = terms.items()
        return p if self.element.ring.is_unit(c) else None

    def label(self) -> str:
        return self.source.text if self.source is not None else self.element.render()

    def __str__(self) -> str:
        return self.element.render()


def is_admissible(rel: Relation | AlgebraElement) -> bool:
    """No trivial path e_i carries a nonzero coefficient."""
    element = rel.element if isinstance(rel, Relation) else rel
    return not any(p.is_trivial for p in element.terms)


def parse_element(src: RelationSource | str, quiver: Quiver, ring: BaseRing) -> AlgebraElement:
    """Resolve an expression into an element of kQ.

    A bare coefficient ``c`` stands for ``c*e_i``; ``i`` is read off the other
    (loop) terms, or is the unique vertex of a one-vertex quiver.
    """
    if isinstance(src, str):
        src = RelationSource(src, 1, 1)
    terms = parse_expression(src.text, src.line, src.col)
    resolved: list[tuple[Path, int]] = []
    bare: list[int] = []
    for term in terms:
        if not term.factors:
            bare.append(term.coeff)
            continue
        path: Path | None = None
        # factors are written in composition order: the last one is traversed first
        for name, power in reversed(term.factors):
            for _ in range(power):
                piece = _resolve_name(name, quiver, src)
                try:
                    path = piece if path is None else compose(piece, path)
                except CompositionError as exc:
                    raise ParseError(f"in {src.text!r}: {exc}", src.line, src.col) from None
        resolved.append((path, term.coeff))
    if bare:
        ends = {(p.source, p.target) for p, _ in resolved}
        if len(quiver.vertices) == 1:
            v = quiver.vertices[0]
        elif len(ends) == 1 and next(iter(ends))[0] == next(iter(ends))[1]:
            v = next(iter(ends))[0]
        else:
            raise ParseError(
                f"in {src.text!r}: a bare coefficient is ambiguous here; write c*e_<vertex>",
                src.line,
                src.col,
            )
        resolved.extend((quiver.trivial(v), c) for c in bare)
    return AlgebraElement(quiver, ring, resolved)


def resolve_relation(src: RelationSource | str, quiver: Quiver, ring: BaseRing) -> Relation:
    """Turn a DSL relation fragment into a :class:`Relation`."""
    if isinstance(src, str):
        src = RelationSource(src, 1, 1)
    element = parse_element(src, quiver, ring)
    try:
        return Relation(element, src)
    except UsageError as exc:
        raise ParseError(f"in relation {src.text!r}: {exc}", src.line, src.col) from None


def _resolve_name(name: str, quiver: Quiver, src: RelationSource) -> Path:
    if quiver.has_arrow(name):
        a = quiver.arrow(name)
        return Path(a.source, a.target, (name,))
    if name.startswith("e_") and name[2:] in quiver.vertices:
        return quiver.trivial(name[2:])
    raise ParseError(f"in {src.text!r}: unknown arrow {name!r}", src.line, src.col)


def resolve_relations(sources: Iterable[RelationSource], quiver: Quiver, ring: BaseRing) -> tuple[Relation, ...]:
    return tuple(resolve_relation(s, quiver, ring) for s in sources)


def path_element(quiver: Quiver, ring: BaseRing, *names: str) -> AlgebraElement:
    """Element of a single path, arrows listed source-to-target."""
    return AlgebraElement.of_path(quiver, ring, quiver.path(*names))
