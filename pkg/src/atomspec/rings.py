"""Base commutative rings (F_p, Z, Z/n) and their prime spectra.

Spec k is treated as a poset under inclusion, and as a space whose open
sets are the specialization-closed (upward closed) subsets.  Spec Z is kept
symbolic: its open sets are exactly "all of Spec Z" or a finite set of
nonzero primes.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import ParseError, UsageError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        k = 0
        while n % d == 0:
            n //= d
            k += 1
        if k:
            out.append((d, k))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


class RingKind(enum.Enum):
    PRIME_FIELD = "F"
    INTEGERS = "Z"
    INTEGERS_MOD = "Z/n"


@dataclass(frozen=True)
class BaseRing:
    kind: RingKind
    modulus: int = 0
    factorization: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind is RingKind.PRIME_FIELD and not is_prime(self.modulus):
            raise UsageError(f"F{self.modulus}: {self.modulus} is not prime")
        if self.kind is RingKind.INTEGERS_MOD:
            if self.modulus < 2:
                raise UsageError("Z/n requires n >= 2")
            if not self.factorization:
                object.__setattr__(self, "factorization", factorize(self.modulus))
            prod = 1
            for p, k in self.factorization:
                prod *= p**k
            if prod != self.modulus or not all(is_prime(p) for p, _ in self.factorization):
                raise UsageError(f"bad factorization {self.factorization} of {self.modulus}")

    @classmethod
    def prime_field(cls, p: int) -> "BaseRing":
        return cls(RingKind.PRIME_FIELD, p)

    @classmethod
    def integers(cls) -> "BaseRing":
        return cls(RingKind.INTEGERS)

    @classmethod
    def integers_mod(cls, n: int) -> "BaseRing":
        return cls(RingKind.INTEGERS_MOD, n)

    @classmethod
    def parse(cls, text: str) -> "BaseRing":
        """Parse ``F<p>``, ``Z`` or ``Z/<n>``."""
        t = text.strip().replace(" ", "")
        if t == "Z":
            return cls.integers()
        m = re.fullmatch(r"F(\d+)", t)
        if m:
            p = int(m.group(1))
            if not is_prime(p):
                raise ParseError(f"F{p}: {p} is not prime")
            return cls.prime_field(p)
        m = re.fullmatch(r"Z/(\d+)", t)
        if m:
            n = int(m.group(1))
            if n < 2:
                raise ParseError("Z/n requires n >= 2")
            return cls.integers_mod(n)
        raise ParseError(f"unknown ring {text!r}; expected F<p>, Z or Z/<n>")

    @property
    def name(self) -> str:
        if self.kind is RingKind.PRIME_FIELD:
            return f"F{self.modulus}"
        if self.kind is RingKind.INTEGERS:
            return "Z"
        return f"Z/{self.modulus}"

    def __str__(self) -> str:
        return self.name

    @property
    def is_field(self) -> bool:
        return self.kind is RingKind.PRIME_FIELD

    @property
    def is_finite(self) -> bool:
        return self.kind is not RingKind.INTEGERS

    @property
    def characteristic(self) -> int:
        return self.modulus

    def reduce(self, c: int) -> int:
        """Canonical representative: 0..m-1 for finite rings, the integer itself for Z."""
        return c % self.modulus if self.modulus else int(c)

    def add(self, x: int, y: int) -> int:
        return self.reduce(x + y)

    def neg(self, x: int) -> int:
        return self.reduce(-x)

    def mul(self, x: int, y: int) -> int:
        return self.reduce(x * y)

    def is_zero(self, x: int) -> bool:
        return self.reduce(x) == 0

    def is_unit(self, x: int) -> bool:
        x = self.reduce(x)
        if self.kind is RingKind.INTEGERS:
            return x in (1, -1)
        from math import gcd

        return gcd(x, self.modulus) == 1

    def inverse(self, x: int) -> int:
        if not self.is_unit(x):
            raise UsageError(f"{x} is not a unit in {self.name}")
        if self.kind is RingKind.INTEGERS:
            return x
        return pow(self.reduce(x), -1, self.modulus)

    def elements(self) -> tuple[int, ...]:
        if not self.is_finite:
            raise UsageError("Z has no finite element list")
        return tuple(range(self.modulus))


@dataclass(frozen=True, order=False)
class PrimePoint:
    """A prime ideal: ``zero`` (the ideal (0) of Z), ``prime`` (generated by p) or ``unique``."""

    tag: str
    p: int = 0

    @classmethod
    def zero(cls) -> "PrimePoint":
        return cls("zero")

    @classmethod
    def prime(cls, p: int) -> "PrimePoint":
        return cls("prime", p)

    @classmethod
    def unique(cls) -> "PrimePoint":
        return cls("unique")

    def sort_key(self) -> tuple:
        return ({"zero": 0, "prime": 1, "unique": 2}[self.tag], self.p)

    def to_json(self) -> dict:
        if self.tag == "prime":
            return {"tag": "prime", "p": self.p}
        return {"tag": self.tag}

    @classmethod
    def from_json(cls, data: dict) -> "PrimePoint":
        return cls(data["tag"], int(data.get("p", 0)))

    def render(self) -> str:
        return f"({self.p})" if self.tag == "prime" else "(0)"

    def short(self) -> str:
        return {"zero": "0", "unique": "u"}.get(self.tag, str(self.p))

    def __str__(self) -> str:
        return self.render()


def parse_prime(text: str, ring: BaseRing) -> PrimePoint:
    """``0`` / ``zero``, ``unique`` / ``u``, or a rational prime."""
    t = text.strip().lower()
    if t in ("unique", "u"):
        point = PrimePoint.unique()
    elif t in ("0", "zero", "(0)"):
        point = PrimePoint.unique() if ring.is_field else PrimePoint.zero()
    else:
        point = PrimePoint.prime(int(t.strip("()")))
    if not spectrum_of(ring).contains(point):
        raise UsageError(f"{point} is not a prime of {ring.name}")
    return point


def prime_generators(point: PrimePoint) -> tuple[int, ...]:
    """A generating set of the ideal in the base ring."""
    return (point.p,) if point.tag == "prime" else ()


def in_prime(point: PrimePoint, ring: BaseRing, c: int) -> bool:
    """Whether the ring element ``c`` lies in the prime ``point``."""
    c = ring.reduce(c)
    if point.tag == "prime":
        return c % point.p == 0
    return c == 0


@dataclass(frozen=True)
class SpecSubset:
    """A subset of Spec k: an explicit finite point set, or everything."""

    points: frozenset = frozenset()
    everything: bool = False

    @classmethod
    def all(cls) -> "SpecSubset":
        return cls(frozenset(), True)

    @classmethod
    def empty(cls) -> "SpecSubset":
        return cls()

    @classmethod
    def of(cls, points: Iterable[PrimePoint]) -> "SpecSubset":
        return cls(frozenset(points))

    @classmethod
    def finite_primes(cls, primes: Iterable[int]) -> "SpecSubset":
        return cls(frozenset(PrimePoint.prime(p) for p in primes))

    def __contains__(self, point: PrimePoint) -> bool:
        return self.everything or point in self.points


@dataclass(frozen=True)
class SpectrumModel:
    ring: BaseRing

    @property
    def is_symbolic(self) -> bool:
        return self.ring.kind is RingKind.INTEGERS

    def points(self, sample: Iterable[int] = (2, 3, 5)) -> tuple[PrimePoint, ...]:
        """All points for finite spectra; (0) plus the sampled primes for Spec Z."""
        if self.ring.kind is RingKind.PRIME_FIELD:
            return (PrimePoint.unique(),)
        if self.ring.kind is RingKind.INTEGERS_MOD:
            return tuple(PrimePoint.prime(p) for p, _ in self.ring.factorization)
        primes = sorted(set(sample))
        bad = [p for p in primes if not is_prime(p)]
        if bad:
            raise UsageError(f"sample contains non-primes {bad}")
        return (PrimePoint.zero(),) + tuple(PrimePoint.prime(p) for p in primes)

    def contains(self, point: PrimePoint) -> bool:
        kind = self.ring.kind
        if kind is RingKind.PRIME_FIELD:
            return point.tag == "unique"
        if kind is RingKind.INTEGERS_MOD:
            return point.tag == "prime" and self.ring.modulus % point.p == 0 and is_prime(point.p)
        return point.tag == "zero" or (point.tag == "prime" and is_prime(point.p))

    def leq(self, x: PrimePoint, y: PrimePoint) -> bool:
        """Inclusion of prime ideals, x subset-of y."""
        if x == y:
            return True
        return self.is_symbolic and x.tag == "zero" and y.tag == "prime"

    def open_hull(self, subset: SpecSubset) -> SpecSubset:
        """Smallest open (specialization-closed) set containing ``subset``."""
        if subset.everything:
            return subset
        if self.is_symbolic:
            if PrimePoint.zero() in subset.points:
                return SpecSubset.all()
            return subset
        universe = self.points()
        up = {y for x in subset.points for y in universe if self.leq(x, y)}
        return SpecSubset.of(up)


def spectrum_of(ring: BaseRing) -> SpectrumModel:
    return SpectrumModel(ring)


def is_open(subset: SpecSubset, model: SpectrumModel) -> bool:
    """True iff ``subset`` is specialization-closed."""
    if subset.everything:
        return True
    for x in subset.points:
        if not model.contains(x):
            raise UsageError(f"{x} is not a point of Spec {model.ring.name}")
    if model.is_symbolic:
        # (0) lies below every one of the infinitely many primes
        return PrimePoint.zero() not in subset.points
    universe = model.points()
    return all(y in subset.points for x in subset.points for y in universe if model.leq(x, y))


def sample_open_predicate(model: SpectrumModel, sample: Iterable[PrimePoint]) -> Callable[[frozenset], bool]:
    """Open sets of the subspace ``sample``: T is open iff T = U n sample for an open U."""
    sample = frozenset(sample)

    def pred(subset: frozenset) -> bool:
        hull = model.open_hull(SpecSubset.of(subset))
        return frozenset(x for x in sample if x in hull) == frozenset(subset)

    return pred


def specialization_order_from_topology(
    sample: Iterable, opens: Callable[[frozenset], bool]
) -> frozenset:
    """Pairs (x, y) with x <= y, i.e. every open set containing x contains y."""
    pts = list(sample)
    open_sets = [
        frozenset(c)
        for r in range(len(pts) + 1)
        for c in itertools.combinations(pts, r)
        if opens(frozenset(c))
    ]
    return frozenset(
        (x, y) for x in pts for y in pts if all(y in u for u in open_sets if x in u)
    )
