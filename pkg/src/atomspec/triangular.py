"""Triangular matrix rings T = [[A, 0], [M, B]] and their modules as comma objects.

A T-module is a triple (X, Y, theta) with X an A-module, Y a B-module and
theta: M (x)_A X -> Y.  The atom spectrum of Mod T is Spec A disjoint-union
Spec B, with the point p of Spec A represented by T/[[p,0],[M,B]] and the
point q of Spec B by T/[[A,0],[M,q]].

The supported base rings (F_p, Z, Z/n) are quotients of Z, so a unital
action on M is always multiplication by the integer image of the ring
element.  Action tables are accepted but only to be checked against that.

The finite oracle below works with A = B = F_p and M = F_p^r; theta is then
a tuple of r linear maps X -> Y, one per basis vector of M.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from . import fp
from .errors import ParseError, UsageError
from .oracle import FiniteRep, common_nonzero_subobject, submodules
from .quiver import Quiver
from .rings import BaseRing, RingKind, is_prime, spectrum_of
from .spectrum import AtomPoint, AtomSpectrum, Status


@dataclass(frozen=True)
class Bimodule:
    """A finite abelian group F_p^r or Z/m with scalar actions of A and B."""

    modulus: int
    rank: int = 1

    @property
    def exponent(self) -> int:
        return self.modulus

    @property
    def is_vector_space(self) -> bool:
        return is_prime(self.modulus)

    @property
    def name(self) -> str:
        if self.rank == 1:
            return f"F{self.modulus}" if self.is_vector_space else f"Z/{self.modulus}"
        return f"F{self.modulus}^{self.rank}"

    @classmethod
    def parse_group(cls, text: str) -> "Bimodule":
        text = text.replace(" ", "")
        m = re.fullmatch(r"F(\d+)(?:\^(\d+))?", text)
        if m:
            p, r = int(m.group(1)), int(m.group(2) or 1)
            if not is_prime(p) or r < 1:
                raise ParseError(f"bad group {text!r}: expected F<prime>^<rank> with rank >= 1")
            return cls(p, r)
        m = re.fullmatch(r"Z/(\d+)", text)
        if m and int(m.group(1)) >= 2:
            return cls(int(m.group(1)), 1)
        raise ParseError(f"bad group {text!r}; expected F<p>^<r> or Z/<m>")

    def scalar_action(self, c: int):
        if self.rank == 1:
            return c % self.modulus
        return [[(c if i == j else 0) % self.modulus for j in range(self.rank)] for i in range(self.rank)]

    def check_action(self, ring: BaseRing, table, side: str) -> None:
        """``table`` maps ring elements to their action (an integer or a rank x rank matrix)."""
        if ring.kind is not RingKind.INTEGERS and ring.modulus % self.exponent:
            raise UsageError(f"{self.name} is not a module over {ring.name} ({side} action)")
        if table is None:
            return
        if not isinstance(table, Mapping):
            raise UsageError(f"{side}_action must map ring elements to actions")
        for key, action in table.items():
            try:
                c = int(key)
            except ValueError:
                raise UsageError(f"{side}_action key {key!r} is not an integer") from None
            got = np.array(action, dtype=np.int64) % self.modulus
            want = np.array(self.scalar_action(c), dtype=np.int64)
            if got.shape != want.shape or (got != want).any():
                raise UsageError(
                    f"{side}_action of {c} is not multiplication by {c}; "
                    f"{ring.name} is a quotient of Z, so its unital actions are scalar"
                )

    @classmethod
    def from_json(cls, data: Mapping, a: BaseRing, b: BaseRing) -> "Bimodule":
        if "group" not in data:
            raise UsageError("bimodule descriptor needs a 'group' field")
        m = cls.parse_group(str(data["group"]))
        m.check_action(b, data.get("left_action"), "left")
        m.check_action(a, data.get("right_action"), "right")
        return m

    def to_json(self) -> dict:
        return {"group": self.name}


def load_bimodule(text: str, a: BaseRing, b: BaseRing) -> Bimodule:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bimodule file is not JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("bimodule file must hold a JSON object")
    return Bimodule.from_json(data, a, b)


@dataclass(frozen=True)
class TriangularRing:
    a: BaseRing
    b: BaseRing
    m: Bimodule

    def __post_init__(self):
        self.m.check_action(self.b, None, "left")
        self.m.check_action(self.a, None, "right")

    @property
    def name(self) -> str:
        return f"T=[[{self.a.name},0],[{self.m.name},{self.b.name}]]"


# the slot of Spec A plays the part of vertex 1 of the subspace quiver 1 -> 2
SLOT_TO_VERTEX = {"A": "1", "B": "2"}


def triangular_spectrum(a: BaseRing, b: BaseRing, m: Bimodule | None = None) -> AtomSpectrum:
    """Spec A disjoint-union Spec B, labelled by the comonoform left ideals of T."""
    if m is None:
        if not (b.is_field and b.is_finite):
            raise UsageError("a bimodule must be given unless B is a finite field")
        m = Bimodule(b.modulus)
    t = TriangularRing(a, b, m)

    def labeler(pt: AtomPoint) -> str:
        if pt.vertex == "A":
            return f"<T/[[{pt.prime},0],[{m.name},{b.name}]]>"
        return f"<T/[[{a.name},0],[{m.name},{pt.prime}]]>"

    return AtomSpectrum(
        components=(("A", spectrum_of(a)), ("B", spectrum_of(b))),
        ring_name=t.name,
        status=Status.COMPLETE,
        labeler=labeler,
    )


# finite oracle over F_p


def _mat(a, rows: int, cols: int) -> np.ndarray:
    if a is None:
        return np.zeros((rows, cols), dtype=np.int64)
    m = np.array(a, dtype=np.int64)
    if m.size == 0:
        m = np.zeros((rows, cols), dtype=np.int64)
    if m.shape != (rows, cols):
        raise UsageError(f"matrix of shape {m.shape}, expected {(rows, cols)}")
    return m


@dataclass(frozen=True, eq=False)
class CommaObject:
    """(X, Y, theta) with X = F_p^dx, Y = F_p^dy, M = F_p^r and theta[j] = theta(m_j, -)."""

    p: int
    dx: int
    dy: int
    r: int
    theta: tuple

    def __post_init__(self):
        if len(self.theta) != self.r:
            raise UsageError(f"theta needs {self.r} matrices, got {len(self.theta)}")
        th = tuple(fp.frozen(_mat(t, self.dy, self.dx) % self.p) for t in self.theta)
        object.__setattr__(self, "theta", th)

    @classmethod
    def build(cls, p: int, dx: int, dy: int, theta=None, r: int = 1) -> "CommaObject":
        return cls(p, dx, dy, r, tuple(theta) if theta is not None else (None,) * r)

    def is_zero(self) -> bool:
        return self.dx == 0 and self.dy == 0

    def act(self, m: np.ndarray, x: np.ndarray) -> np.ndarray:
        """theta(m, x) for coordinate vectors m in F_p^r and x in F_p^dx."""
        out = np.zeros(self.dy, dtype=np.int64)
        for c, t in zip(m, self.theta):
            out = out + c * (t @ x)
        return out % self.p

    def key(self) -> tuple:
        return (self.p, self.dx, self.dy, self.r, tuple(fp.key(t) for t in self.theta))

    def __eq__(self, other) -> bool:
        return isinstance(other, CommaObject) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        return {"dx": self.dx, "dy": self.dy, "theta": [t.tolist() for t in self.theta]}


@dataclass(frozen=True, eq=False)
class CommaMorphism:
    source: CommaObject
    target: CommaObject
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        s, t = self.source, self.target
        if s.p != t.p or s.r != t.r:
            raise UsageError("morphism between objects over different data")
        alpha = fp.frozen(_mat(self.alpha, t.dx, s.dx) % s.p)
        beta = fp.frozen(_mat(self.beta, t.dy, s.dy) % s.p)
        for th_s, th_t in zip(s.theta, t.theta):
            if ((beta @ th_s - th_t @ alpha) % s.p).any():
                raise UsageError("(alpha, beta) does not commute with theta")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def compose(self, first: "CommaMorphism") -> "CommaMorphism":
        """self after first."""
        p = self.source.p
        return CommaMorphism(first.source, self.target, (self.alpha @ first.alpha) % p, (self.beta @ first.beta) % p)

    def is_zero(self) -> bool:
        return not self.alpha.any() and not self.beta.any()

    def is_mono(self) -> bool:
        p = self.source.p
        return fp.rank(self.alpha, p) == self.source.dx and fp.rank(self.beta, p) == self.source.dy


def identity(obj: CommaObject) -> CommaMorphism:
    return CommaMorphism(obj, obj, np.eye(obj.dx, dtype=np.int64), np.eye(obj.dy, dtype=np.int64))


def zero_object(p: int, r: int = 1) -> CommaObject:
    return CommaObject.build(p, 0, 0, r=r)


def stalk_A(p: int, dx: int, r: int = 1) -> CommaObject:
    return CommaObject.build(p, dx, 0, r=r)


def stalk_B(p: int, dy: int, r: int = 1) -> CommaObject:
    return CommaObject.build(p, 0, dy, r=r)


def k_B(obj: CommaObject) -> np.ndarray:
    """The Y component, as the full basis of F_p^dy."""
    return fp.identity(obj.dy)


def k_A(obj: CommaObject) -> np.ndarray:
    """Echelon basis of {x in X : theta(m, x) = 0 for every m in M}."""
    if obj.dx == 0:
        return fp.zeros(0, 0)
    stacked = [t for t in obj.theta if t.shape[0]]
    if not stacked:
        return fp.identity(obj.dx)
    return fp.nullspace(np.vstack(stacked), obj.p)


def counit_A(obj: CommaObject) -> CommaMorphism:
    """stalk_A(k_A(Z)) -> Z, the inclusion of the annihilated part of X."""
    basis = k_A(obj)
    return CommaMorphism(stalk_A(obj.p, basis.shape[0], obj.r), obj, basis.T, None)


def counit_B(obj: CommaObject) -> CommaMorphism:
    """stalk_B(k_B(Z)) -> Z."""
    return CommaMorphism(stalk_B(obj.p, obj.dy, obj.r), obj, None, np.eye(obj.dy, dtype=np.int64))


def _restrict(mat: np.ndarray, src: np.ndarray, tgt: np.ndarray, p: int) -> np.ndarray:
    """Matrix of ``mat`` from span(src rows) to span(tgt rows), in echelon coordinates."""
    cols = [fp.coordinates(tgt, (mat @ v) % p, p) for v in src]
    return np.array(cols, dtype=np.int64).reshape(len(cols), tgt.shape[0]).T


@dataclass(frozen=True)
class Kernel:
    obj: CommaObject
    inclusion: CommaMorphism


@dataclass(frozen=True)
class Cokernel:
    obj: CommaObject
    projection: CommaMorphism


def comma_kernel(f: CommaMorphism) -> Kernel:
    """(ker alpha, ker beta, theta restricted), computed componentwise."""
    s, p = f.source, f.source.p
    kx = fp.nullspace(f.alpha, p) if s.dx else fp.zeros(0, 0)
    ky = fp.nullspace(f.beta, p) if s.dy else fp.zeros(0, 0)
    theta = tuple(_restrict(t, kx, ky, p) for t in s.theta)
    k = CommaObject(p, kx.shape[0], ky.shape[0], s.r, theta)
    return Kernel(k, CommaMorphism(k, s, kx.T, ky.T))


def _cokernel_of(mat: np.ndarray, dim: int, p: int) -> tuple[np.ndarray, list[int]]:
    image = fp.span(mat.T, dim, p) if mat.size else fp.zeros(0, dim)
    pivots = {int(np.nonzero(row)[0][0]) for row in image}
    return image, [c for c in range(dim) if c not in pivots]


def _projection(image: np.ndarray, keep: list[int], dim: int, p: int) -> np.ndarray:
    cols = []
    for c in range(dim):
        v = np.zeros(dim, dtype=np.int64)
        v[c] = 1
        for row in image:
            piv = int(np.nonzero(row)[0][0])
            if v[piv]:
                v = (v - v[piv] * row) % p
        cols.append(v[keep])
    return np.array(cols, dtype=np.int64).reshape(dim, len(keep)).T


def comma_cokernel(f: CommaMorphism) -> Cokernel:
    """(coker alpha, coker beta, induced theta), computed componentwise."""
    t, p = f.target, f.target.p
    ix, keep_x = _cokernel_of(f.alpha, t.dx, p)
    iy, keep_y = _cokernel_of(f.beta, t.dy, p)
    px = _projection(ix, keep_x, t.dx, p)
    py = _projection(iy, keep_y, t.dy, p)
    theta = []
    for th in t.theta:
        # induced map on X/im alpha: lift the k-th complement basis vector e_{keep_x[k]}
        cols = [(py @ th[:, c]) % p for c in keep_x]
        theta.append(np.array(cols, dtype=np.int64).reshape(len(keep_x), len(keep_y)).T)
    c = CommaObject(p, len(keep_x), len(keep_y), t.r, tuple(theta))
    return Cokernel(c, CommaMorphism(t, c, px, py))


def enumerate_comma_objects(p: int, max_dx: int, max_dy: int, r: int = 1) -> Iterator[CommaObject]:
    for dx in range(max_dx + 1):
        for dy in range(max_dy + 1):
            for entries in itertools.product(range(p), repeat=r * dx * dy):
                mats = [np.array(entries[k * dx * dy : (k + 1) * dx * dy], dtype=np.int64).reshape(dy, dx) for k in range(r)]
                yield CommaObject(p, dx, dy, r, tuple(mats))


def morphisms(src: CommaObject, tgt: CommaObject) -> Iterator[CommaMorphism]:
    """Every morphism src -> tgt, by brute force over all matrix pairs."""
    p = src.p
    for alpha in fp.all_matrices(tgt.dx, src.dx, p):
        for beta in fp.all_matrices(tgt.dy, src.dy, p):
            try:
                yield CommaMorphism(src, tgt, alpha, beta)
            except UsageError:
                continue


def _same(f: CommaMorphism, g: CommaMorphism) -> bool:
    return (f.alpha == g.alpha).all() and (f.beta == g.beta).all()


def kernel_universal_property(f: CommaMorphism, tests: list[CommaObject]) -> bool:
    """Every g: W -> source with f g = 0 factors uniquely through the kernel inclusion."""
    ker = comma_kernel(f)
    iota = ker.inclusion
    for w in tests:
        for g in morphisms(w, f.source):
            if not f.compose(g).is_zero():
                continue
            lifts = [h for h in morphisms(w, ker.obj) if _same(iota.compose(h), g)]
            if len(lifts) != 1:
                return False
    return True


def cokernel_universal_property(f: CommaMorphism, tests: list[CommaObject]) -> bool:
    """Every g: target -> W with g f = 0 factors uniquely through the cokernel projection."""
    cok = comma_cokernel(f)
    pi = cok.projection
    for w in tests:
        for g in morphisms(f.target, w):
            if not g.compose(f).is_zero():
                continue
            descents = [h for h in morphisms(cok.obj, w) if _same(h.compose(pi), g)]
            if len(descents) != 1:
                return False
    return True


def kronecker_like_quiver(r: int) -> Quiver:
    """Two vertices 1 -> 2 with arrows m1..mr; r = 1 gives the subspace quiver on 2 vertices."""
    if r == 1:
        return Quiver.build(["1", "2"], [("a1", "1", "2")])
    return Quiver.build(["1", "2"], [(f"m{j}", "1", "2") for j in range(1, r + 1)])


def to_rep(obj: CommaObject) -> FiniteRep:
    """The same data as a representation of 1 -> 2 (one arrow per basis vector of M)."""
    q = kronecker_like_quiver(obj.r)
    mats = {a.name: t for a, t in zip(q.arrows, obj.theta)}
    return FiniteRep(obj.p, q, {"1": obj.dx, "2": obj.dy}, mats)


def from_rep(x: FiniteRep) -> CommaObject:
    q = x.quiver
    return CommaObject(x.p, x.dims["1"], x.dims["2"], len(q.arrows), tuple(x.mats[a.name] for a in q.arrows))


def subobject_count(obj: CommaObject) -> int:
    return len(submodules(to_rep(obj)))


def share_nonzero_subobject(x: CommaObject, y: CommaObject) -> bool:
    return common_nonzero_subobject(to_rep(x), to_rep(y))
