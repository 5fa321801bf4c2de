"""Two-sided ideals (R) of a path algebra and the right-rootedness test.

Monomial generating sets are handled exactly over every supported ring: a
combination of paths lies in (R) iff each of its paths contains a generator
as a contiguous factor.  General generators over a prime field go through a
noncommutative rewriting completion (Buchberger-style overlap resolution)
truncated at a degree bound; answers that the truncation cannot certify come
back as ``INCONCLUSIVE``.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from collections import deque
from typing import Iterable, Sequence

from .algebra import AlgebraElement, Relation, is_admissible
from .errors import CapabilityError, NonAdmissibleRelationError, ResourceError, UsageError
from .quiver import Path, Quiver, is_acyclic, iter_paths_of_length
from .rings import BaseRing

DEFAULT_DEGREE_BOUND = 12
DEFAULT_M_MAX = 12
DEFAULT_PATH_LIMIT = 10**6


class Membership(enum.Enum):
    IN = "In"
    NOT_IN = "NotIn"
    INCONCLUSIVE = "Inconclusive"


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    INCONCLUSIVE = "Inconclusive"


def contains_factor(quiver: Quiver, path: Path, factor: Path) -> bool:
    """Whether ``path = alpha * factor * beta`` for some paths alpha, beta."""
    if factor.is_trivial:
        return factor.source in quiver.vertices_on(path)
    return _find(path.arrows, factor.arrows) >= 0


def _find(word: tuple, sub: tuple) -> int:
    k = len(sub)
    for j in range(len(word) - k + 1):
        if word[j : j + k] == sub:
            return j
    return -1


def _as_elements(relations: Iterable) -> list[AlgebraElement]:
    return [r.element if isinstance(r, Relation) else r for r in relations]


class _Completion:
    """Truncated rewriting basis over F_p for the ideal generated by ``gens``."""

    def __init__(self, quiver: Quiver, ring: BaseRing, gens: Sequence[AlgebraElement], degree_bound: int):
        self.quiver = quiver
        self.p = ring.modulus
        self.key = quiver.path_key
        self.degree_bound = degree_bound
        self.killed: set[str] = set()
        self.rules: dict[int, tuple[Path, dict[Path, int]]] = {}
        self._ids = itertools.count()
        self._pairs: list = []
        self._deferred = 0
        self._run([dict(g.terms) for g in gens])

    # reduction

    def _reducer(self, path: Path):
        for rid in sorted(self.rules):
            lead, poly = self.rules[rid]
            j = _find(path.arrows, lead.arrows)
            if j >= 0:
                return poly, lead, j
        return None

    def _through_killed(self, path: Path) -> bool:
        return bool(self.killed) and any(v in self.killed for v in self.quiver.vertices_on(path))

    def normal_form(self, poly: dict[Path, int]) -> dict[Path, int]:
        p = self.p
        work = {k: v % p for k, v in poly.items() if v % p}
        out: dict[Path, int] = {}
        while work:
            lead = max(work, key=self.key)
            c = work.pop(lead)
            if self._through_killed(lead):
                continue
            hit = self._reducer(lead)
            if hit is None:
                out[lead] = c
                continue
            rule, rlead, j = hit
            pre, post = lead.arrows[:j], lead.arrows[j + rlead.length :]
            for t, d in rule.items():
                if t == rlead:
                    continue
                q = Path(lead.source, lead.target, pre + t.arrows + post)
                v = (work.get(q, 0) - c * d) % p
                if v:
                    work[q] = v
                else:
                    work.pop(q, None)
        return out

    # completion

    def _monic(self, poly: dict[Path, int]) -> tuple[Path, dict[Path, int]]:
        lead = max(poly, key=self.key)
        inv = pow(poly[lead], -1, self.p)
        return lead, {k: v * inv % self.p for k, v in poly.items()}

    def _run(self, queue_polys: list[dict[Path, int]]) -> None:
        queue = deque(queue_polys)
        while True:
            while queue:
                h = self.normal_form(queue.popleft())
                if h:
                    queue.extend(self._add(h))
            nxt = self._next_pair()
            if nxt is None:
                break
            queue.append(nxt)

    def _add(self, h: dict[Path, int]) -> list[dict[Path, int]]:
        lead, poly = self._monic(h)
        if lead.is_trivial:
            self.killed.add(lead.source)
            requeue = [r for _, r in self.rules.values()]
            self.rules.clear()
            return requeue
        requeue = []
        for rid in list(self.rules):
            other_lead, other = self.rules[rid]
            if _find(other_lead.arrows, lead.arrows) >= 0:
                del self.rules[rid]
                requeue.append(other)
        rid = next(self._ids)
        self.rules[rid] = (lead, poly)
        for oid in list(self.rules):
            self._push_overlaps(rid, oid)
            if oid != rid:
                self._push_overlaps(oid, rid)
        return requeue

    def _push_overlaps(self, first: int, second: int) -> None:
        l1 = self.rules[first][0].arrows
        l2 = self.rules[second][0].arrows
        for t in range(1, min(len(l1), len(l2))):
            if l1[-t:] == l2[:t]:
                heapq.heappush(self._pairs, (len(l1) + len(l2) - t, first, second, t))

    def _next_pair(self):
        while self._pairs:
            deg, first, second, t = self._pairs[0]
            if deg > self.degree_bound:
                self._deferred = sum(1 for _, a, b, _ in self._pairs if a in self.rules and b in self.rules)
                return None
            heapq.heappop(self._pairs)
            if first not in self.rules or second not in self.rules:
                continue
            lead1, r1 = self.rules[first]
            lead2, r2 = self.rules[second]
            post = lead2.arrows[t:]
            pre = lead1.arrows[: lead1.length - t]
            src, tgt = lead1.source, lead2.target
            s: dict[Path, int] = {}
            for q, c in r1.items():
                path = Path(src, tgt, q.arrows + post)
                s[path] = (s.get(path, 0) + c) % self.p
            for q, c in r2.items():
                path = Path(src, tgt, pre + q.arrows)
                s[path] = (s.get(path, 0) - c) % self.p
            return {k: v for k, v in s.items() if v}
        self._deferred = 0
        return None

    @property
    def fully_complete(self) -> bool:
        return self._deferred == 0


class IdealHandle:
    """The two-sided ideal generated by a set of relations.

    Queries are pure once constructed; a handle can be shared across threads.
    """

    def __init__(
        self,
        quiver: Quiver,
        ring: BaseRing,
        relations: Iterable = (),
        degree_bound: int = DEFAULT_DEGREE_BOUND,
    ):
        if degree_bound < 1:
            raise UsageError("degree bound must be positive")
        self.quiver = quiver
        self.ring = ring
        self.degree_bound = degree_bound
        gens = [g for g in _as_elements(relations) if not g.is_zero()]
        for g in gens:
            if g.quiver != quiver or g.ring != ring:
                raise UsageError("generator lives over a different quiver or ring")
        self.generators = tuple(gens)
        monos = [Relation(g).monomial() for g in gens]
        self._completion: _Completion | None = None
        if all(m is not None for m in monos):
            self.factors: tuple[Path, ...] | None = tuple(sorted(set(monos), key=quiver.path_key))
        elif ring.is_field:
            self.factors = None
            self.homogeneous = all(len({p.length for p in g.terms}) == 1 for g in gens)
            self._completion = _Completion(quiver, ring, gens, degree_bound)
        else:
            raise CapabilityError(
                f"ideal membership over {ring.name} supports only monomial generators "
                "(a single path with unit coefficient)"
            )

    @property
    def is_monomial(self) -> bool:
        return self.factors is not None

    @property
    def fully_complete(self) -> bool:
        return self._completion is None or self._completion.fully_complete

    def normal_form(self, x: AlgebraElement) -> AlgebraElement:
        self._check(x)
        if self.factors is not None:
            return AlgebraElement(
                self.quiver,
                self.ring,
                {p: c for p, c in x.terms.items() if not any(contains_factor(self.quiver, p, f) for f in self.factors)},
            )
        return AlgebraElement(self.quiver, self.ring, self._completion.normal_form(dict(x.terms)))

    def _check(self, x: AlgebraElement) -> None:
        if x.quiver != self.quiver or x.ring != self.ring:
            raise UsageError("element lives over a different quiver or ring")

    def membership(self, x: AlgebraElement) -> Membership:
        self._check(x)
        answers = [self._block_membership(b) for b in x.blocks().values()]
        if all(a is Membership.IN for a in answers):
            return Membership.IN
        if any(a is Membership.NOT_IN for a in answers):
            return Membership.NOT_IN
        return Membership.INCONCLUSIVE

    def _block_membership(self, x: AlgebraElement) -> Membership:
        if self.normal_form(x).is_zero():
            return Membership.IN
        if self.factors is not None or self._completion.fully_complete:
            return Membership.NOT_IN
        if self.homogeneous and x.degree <= self.degree_bound:
            return Membership.NOT_IN
        return Membership.INCONCLUSIVE

    def describe(self) -> str:
        lines = [f"ideal in {self.ring.name}Q generated by {len(self.generators)} relation(s)"]
        if self.factors is not None:
            lines.append("engine: monomial (factor containment), exact")
            lines.extend(f"  factor {f.render()}" for f in self.factors)
        else:
            c = self._completion
            status = "complete" if c.fully_complete else f"complete up to degree {self.degree_bound}"
            lines.append(f"engine: rewriting basis over {self.ring.name}, {status}")
            if c.killed:
                lines.append("  killed vertices: " + " ".join(sorted(c.killed)))
            for rid in sorted(c.rules):
                lead, poly = c.rules[rid]
                el = AlgebraElement(self.quiver, self.ring, poly)
                lines.append(f"  {lead.render()} -> {(AlgebraElement.of_path(self.quiver, self.ring, lead) - el).render()}")
        return "\n".join(lines)


def ideal_membership(ideal: IdealHandle, x: AlgebraElement) -> Membership:
    return ideal.membership(x)


def arrow_power_contained(ideal: IdealHandle, m: int, path_limit: int = DEFAULT_PATH_LIMIT) -> Verdict:
    """Whether every path of length ``m`` (hence the m-th power of the arrow ideal) lies in the ideal."""
    if m < 1:
        raise UsageError("m must be at least 1")
    inconclusive = False
    for count, path in enumerate(iter_paths_of_length(ideal.quiver, m), 1):
        if count > path_limit:
            raise ResourceError(f"paths of length {m}", count, path_limit)
        ans = ideal.membership(AlgebraElement.of_path(ideal.quiver, ideal.ring, path))
        if ans is Membership.NOT_IN:
            return Verdict.NO
        if ans is Membership.INCONCLUSIVE:
            inconclusive = True
    return Verdict.INCONCLUSIVE if inconclusive else Verdict.YES


def check_admissible(relations: Iterable) -> None:
    for r in relations:
        rel = r if isinstance(r, Relation) else Relation(r)
        if not is_admissible(rel):
            raise NonAdmissibleRelationError(rel.element, rel.source)


def is_right_rooted(
    quiver: Quiver,
    relations: Iterable = (),
    ring: BaseRing | None = None,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    m_max: int = DEFAULT_M_MAX,
) -> Verdict:
    """Decide whether every infinite composable arrow sequence has a prefix in (R)."""
    relations = list(relations)
    check_admissible(relations)
    gens = [g for g in _as_elements(relations) if not g.is_zero()]
    if is_acyclic(quiver):
        return Verdict.YES
    if not gens:
        return Verdict.NO
    if ring is None:
        ring = gens[0].ring
    monos = [Relation(g).monomial() for g in gens]
    if all(m is not None for m in monos):
        return Verdict.NO if has_avoiding_walk(quiver, monos) else Verdict.YES
    ideal = IdealHandle(quiver, ring, gens, degree_bound)
    for m in range(1, m_max + 1):
        if arrow_power_contained(ideal, m) is Verdict.YES:
            return Verdict.YES
    return Verdict.INCONCLUSIVE


def has_avoiding_walk(quiver: Quiver, factors: Iterable[Path]) -> bool:
    """Whether some infinite walk contains none of ``factors`` as a contiguous piece.

    Builds the factor-avoidance automaton: a state is the current vertex plus
    the longest suffix of the walk that is a proper prefix of a factor.  An
    infinite avoiding walk exists iff the reachable state graph has a cycle.
    """
    factors = list(factors)
    killed = {f.source for f in factors if f.is_trivial}
    words = {f.arrows for f in factors if not f.is_trivial}
    prefixes = {w[:k] for w in words for k in range(len(w))} | {()}

    def step(state):
        vertex, s = state
        for a in quiver.arrows_from(vertex):
            if a.target in killed:
                continue
            u = s + (a.name,)
            if any(u[k:] in words for k in range(len(u))):
                continue
            nxt = next(u[k:] for k in range(len(u) + 1) if u[k:] in prefixes)
            yield (a.target, nxt)

    starts = [(v, ()) for v in quiver.vertices if v not in killed]
    color: dict = {}
    for root in starts:
        if root in color:
            continue
        color[root] = 1
        stack = [(root, step(root))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color.get(nxt) == 1:
                return True
            elif nxt not in color:
                color[nxt] = 1
                stack.append((nxt, step(nxt)))
    return False
