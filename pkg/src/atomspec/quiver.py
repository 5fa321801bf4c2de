"""Finite quivers and their paths.

Paths are stored source-to-target: ``Path(arrows=("a1", "a2"))`` first
traverses ``a1`` and then ``a2``.  The usual algebraic notation writes the
same path right-to-left as ``a2*a1``; :func:`Path.render` produces that form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import CompositionError, UsageError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def render(self) -> str:
        """Composition-order rendering, e.g. ``b*a`` or ``X^3`` or ``e_1``."""
        if self.is_trivial:
            return f"e_{self.source}"
        out: list[str] = []
        run_name, run_len = None, 0
        for name in reversed(self.arrows):
            if name == run_name:
                run_len += 1
                continue
            if run_name is not None:
                out.append(run_name if run_len == 1 else f"{run_name}^{run_len}")
            run_name, run_len = name, 1
        out.append(run_name if run_len == 1 else f"{run_name}^{run_len}")
        return "*".join(out)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Quiver:
    """A finite quiver.

    ``vertices`` is kept in canonical (lexicographic) order; ``arrows`` keeps
    declaration order, which is the arrow order used for rewriting.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    _arrow_by_name: dict = field(init=False, repr=False, compare=False, hash=False)
    _arrow_rank: dict = field(init=False, repr=False, compare=False, hash=False)
    _vertex_rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(sorted(self.vertices))
        if len(set(verts)) != len(verts):
            raise UsageError("vertex identifiers must be pairwise distinct")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", tuple(self.arrows))
        by_name: dict[str, Arrow] = {}
        for arr in self.arrows:
            if arr.name in by_name:
                raise UsageError(f"duplicate arrow identifier {arr.name!r}")
            if arr.source not in verts or arr.target not in verts:
                raise UsageError(f"arrow {arr.name!r} has an endpoint outside the vertex set")
            by_name[arr.name] = arr
        object.__setattr__(self, "_arrow_by_name", by_name)
        object.__setattr__(self, "_arrow_rank", {a.name: k for k, a in enumerate(self.arrows)})
        object.__setattr__(self, "_vertex_rank", {v: k for k, v in enumerate(verts)})

    @classmethod
    def build(cls, vertices: Iterable, arrows: Iterable[tuple] = ()) -> "Quiver":
        """Convenience constructor: ``Quiver.build([1, 2], [("a", 1, 2)])``."""
        return cls(
            tuple(str(v) for v in vertices),
            tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows),
        )

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrow_by_name[name]
        except KeyError:
            raise UsageError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_by_name

    def arrow_rank(self, name: str) -> int:
        return self._arrow_rank[name]

    def vertex_rank(self, vertex: str) -> int:
        return self._vertex_rank[vertex]

    def trivial(self, vertex) -> Path:
        vertex = str(vertex)
        if vertex not in self._vertex_rank:
            raise UsageError(f"unknown vertex {vertex!r}")
        return Path(vertex, vertex)

    def path(self, *names: str) -> Path:
        """Path from arrow names listed source-to-target."""
        if not names:
            raise UsageError("use trivial(vertex) for a path of length 0")
        arrows = [self.arrow(n) for n in names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise CompositionError(f"arrows {a.name!r} and {b.name!r} are not composable")
        return Path(arrows[0].source, arrows[-1].target, tuple(names))

    def arrows_from(self, vertex: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.source == vertex)

    def path_key(self, p: Path) -> tuple:
        """Total length-lexicographic order key (arrow order = declaration order)."""
        if p.is_trivial:
            return (0, (self._vertex_rank[p.source],))
        return (p.length, tuple(self._arrow_rank[a] for a in p.arrows))

    def vertices_on(self, p: Path) -> tuple[str, ...]:
        """Vertices visited by ``p``, including both endpoints."""
        return (p.source,) + tuple(self._arrow_by_name[a].target for a in p.arrows)


def compose(p: Path, q: Path) -> Path:
    """The composite ``pq``: first ``q``, then ``p``."""
    if q.target != p.source:
        raise CompositionError(
            f"cannot compose {p.render()} after {q.render()}: "
            f"target {q.target!r} differs from source {p.source!r}"
        )
    return Path(q.source, p.target, q.arrows + p.arrows)


def enumerate_paths(quiver: Quiver, max_len: int) -> list[Path]:
    """All paths of length at most ``max_len``, ordered by (length, arrow ids)."""
    if max_len < 0:
        raise UsageError("max_len must be non-negative")
    result = [quiver.trivial(v) for v in quiver.vertices]
    layer = [Path(a.source, a.target, (a.name,)) for a in quiver.arrows]
    length = 1
    while layer and length <= max_len:
        layer.sort(key=lambda p: p.arrows)
        result.extend(layer)
        if length == max_len:
            break
        layer = [
            Path(p.source, a.target, p.arrows + (a.name,))
            for p in layer
            for a in quiver.arrows_from(p.target)
        ]
        length += 1
    return result


def iter_paths_of_length(quiver: Quiver, length: int) -> Iterator[Path]:
    """Paths of exactly ``length`` arrows, in declaration-order lexicographic order."""
    if length == 0:
        yield from (quiver.trivial(v) for v in quiver.vertices)
        return

    def extend(prefix: Path) -> Iterator[Path]:
        if prefix.length == length:
            yield prefix
            return
        for a in quiver.arrows_from(prefix.target):
            yield from extend(Path(prefix.source, a.target, prefix.arrows + (a.name,)))

    for a in quiver.arrows:
        yield from extend(Path(a.source, a.target, (a.name,)))


def is_acyclic(quiver: Quiver) -> bool:
    """True iff there is no directed cycle; a loop counts as a cycle."""
    succ: dict[str, list[str]] = {v: [] for v in quiver.vertices}
    for a in quiver.arrows:
        succ[a.source].append(a.target)
    white, grey, black = 0, 1, 2
    color = dict.fromkeys(quiver.vertices, white)
    for root in quiver.vertices:
        if color[root] != white:
            continue
        color[root] = grey
        stack = [(root, iter(succ[root]))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = black
                stack.pop()
            elif color[nxt] == grey:
                return False
            elif color[nxt] == white:
                color[nxt] = grey
                stack.append((nxt, iter(succ[nxt])))
    return True


# Named quivers used throughout the examples and tests.

def subspace_quiver(n: int) -> Quiver:
    """Sigma_n: vertices 1..n, arrows a_i: i -> n for i < n."""
    return Quiver.build(range(1, n + 1), [(f"a{i}", i, n) for i in range(1, n)])


def jordan_quiver(loop: str = "X", vertex: str = "1") -> Quiver:
    return Quiver.build([vertex], [(loop, vertex, vertex)])


def loop_quiver(n: int, vertex: str = "1") -> Quiver:
    """One vertex with ``n`` loops x1..xn."""
    return Quiver.build([vertex], [(f"x{k}", vertex, vertex) for k in range(1, n + 1)])


def kronecker_quiver() -> Quiver:
    return Quiver.build([1, 2], [("a", 1, 2), ("b", 1, 2)])


def linear_quiver(n: int) -> Quiver:
    """A_n: vertices n, n-1, ..., 1 with arrows d_k: k -> k-1 (a chain-complex truncation)."""
    return Quiver.build(range(1, n + 1), [(f"d{k}", k, k - 1) for k in range(n, 1, -1)])
