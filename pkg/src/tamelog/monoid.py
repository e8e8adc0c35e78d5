"""Finitely generated monoids inside integer lattices.

A monoid is stored by a finite list of generators in ``Z^d``. Its group
envelope is the lattice they span; most questions (membership, divisibility,
sharpness) are answered in coordinates with respect to an echelon basis of
that lattice, where the rational cone of the monoid is full dimensional.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceeded, InvalidFace, NotInLattice, NotInMonoid
from .intlinalg import (
    Vector,
    cofactor_normal,
    divisors,
    echelon_coordinates,
    hermite_rows,
    smith_normal_form,
    vecmat,
    vector_gcd,
)

DEFAULT_BUDGET = 10**6


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class Lattice:
    """Sublattice of ``Z^ambient_dim`` given by a basis.

    Any list of linearly independent vectors is accepted; it is stored in
    Hermite normal form so that equal lattices compare equal.
    """

    ambient_dim: int
    basis: tuple[Vector, ...] = ()

    def __post_init__(self):
        rows = [tuple(int(x) for x in b) for b in self.basis]
        hnf = hermite_rows(rows, self.ambient_dim)
        if len(hnf) != len(rows):
            raise ValueError("lattice basis vectors are linearly dependent")
        object.__setattr__(self, "basis", tuple(hnf))

    @classmethod
    def spanned_by(cls, vectors: Iterable[Sequence[int]], ambient_dim: int) -> "Lattice":
        return cls(ambient_dim, tuple(hermite_rows(list(vectors), ambient_dim)))

    @classmethod
    def standard(cls, dim: int) -> "Lattice":
        return cls(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[int]) -> Optional[Vector]:
        """Integer coordinates of ``v`` in :attr:`basis`, ``None`` if ``v`` is outside."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector {tuple(v)} does not have dimension {self.ambient_dim}")
        return echelon_coordinates(self.basis, v)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def point(self, coords: Sequence[int]) -> Vector:
        """Ambient vector with the given coordinates."""
        if not self.basis:
            return (0,) * self.ambient_dim
        return vecmat(coords, self.basis)


@dataclass(frozen=True)
class Face:
    generator_indices: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "generator_indices", frozenset(int(i) for i in self.generator_indices))


@dataclass(frozen=True)
class AffineMonoid:
    """Submonoid of ``Z^ambient_dim`` generated by ``generators``.

    ``saturated`` is a declaration by the caller (fs monoids are saturated);
    it licenses the lattice-content shortcut in :func:`max_divisibility`.
    ``budget`` caps the number of candidate combinations the membership
    search may try.
    """

    generators: tuple[Vector, ...]
    ambient_dim: Optional[int] = None
    saturated: bool = False
    budget: int = field(default=DEFAULT_BUDGET, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if self.ambient_dim is None:
            if not gens:
                raise ValueError("ambient_dim is required for the trivial monoid")
            object.__setattr__(self, "ambient_dim", len(gens[0]))
        for g in gens:
            if len(g) != self.ambient_dim:
                raise ValueError(f"generator {g} does not have dimension {self.ambient_dim}")
            if not any(g):
                raise ValueError("generators must be nonzero")
        object.__setattr__(self, "generators", gens)

    @cached_property
    def lattice(self) -> Lattice:
        return Lattice.spanned_by(self.generators, self.ambient_dim)

    @cached_property
    def sharp(self) -> bool:
        return is_sharp(self)

    @cached_property
    def _coords(self) -> tuple[Vector, ...]:
        return tuple(self.lattice.coordinates(g) for g in self.generators)

    @cached_property
    def supporting_normals(self) -> tuple[Vector, ...]:
        """Inward normals (in lattice coordinates) of every hyperplane spanned
        by ``rank - 1`` generators that supports the cone. The facets are
        among them, so the cone is the intersection of their half-spaces."""
        r = self.lattice.rank
        if r == 0:
            return ()
        gens = sorted(set(self._coords))
        normals = set()
        for subset in itertools.combinations(gens, r - 1):
            n = cofactor_normal(subset)
            if not any(n):
                continue
            signs = {(_dot(n, g) > 0) - (_dot(n, g) < 0) for g in gens}
            if -1 not in signs:
                normals.add(n)
            elif 1 not in signs:
                normals.add(tuple(-x for x in n))
        return tuple(sorted(normals))

    @cached_property
    def positive_functional(self) -> Optional[Vector]:
        """A functional on lattice coordinates positive on every generator,
        or ``None`` when the cone contains a line."""
        r = self.lattice.rank
        ell = [0] * r
        for n in self.supporting_normals:
            ell = [a + b for a, b in zip(ell, n)]
        if all(_dot(ell, g) > 0 for g in self._coords):
            return tuple(ell)
        return None

    def coordinates(self, v: Sequence[int]) -> Vector:
        c = self.lattice.coordinates(v)
        if c is None:
            raise NotInLattice(f"{tuple(v)} is not in the group envelope of the monoid")
        return c

    def cone_contains(self, v: Sequence[int]) -> bool:
        """Exact membership of a lattice point in the rational cone."""
        c = self.lattice.coordinates(v)
        if c is None:
            return False
        return all(_dot(n, c) >= 0 for n in self.supporting_normals)


def content(v: Sequence[int], lattice: Lattice) -> Optional[int]:
    """Largest ``m`` with ``v / m`` in ``lattice``; ``None`` for the zero vector."""
    c = lattice.coordinates(v)
    if c is None:
        raise NotInLattice(f"{tuple(v)} is not in the lattice")
    if not any(c):
        return None
    return vector_gcd(c)


def smith_coordinates(lattice: Lattice, v: Sequence[int]) -> Optional[Vector]:
    """Coordinates of ``v`` in ``lattice.basis`` computed from the Smith form
    of the basis matrix rather than by back substitution."""
    r = lattice.rank
    if r == 0:
        return () if not any(v) else None
    diag, u, vmat = smith_normal_form(lattice.basis)
    w = vecmat(v, vmat)
    y = []
    for i, wi in enumerate(w):
        if i < r:
            if wi % diag[i]:
                return None
            y.append(wi // diag[i])
        elif wi:
            return None
    return vecmat(y, u)


def quotient_torsion(v: Sequence[int], lattice: Lattice) -> list[int]:
    """Invariant factors (> 1) of the torsion of ``lattice / <v>``, from the
    Smith form of the inclusion ``Z -> lattice``."""
    c = smith_coordinates(lattice, v)
    if c is None:
        raise NotInLattice(f"{tuple(v)} is not in the lattice")
    diag, _, _ = smith_normal_form([list(c)])
    return [d for d in diag if d > 1]


def member(monoid: AffineMonoid, v: Sequence[int], budget: Optional[int] = None) -> bool:
    """Decide whether ``v`` is a nonnegative integer combination of the generators.

    For monoids with a strongly convex cone the search is exhaustive: a
    positive functional bounds every coefficient. Otherwise sums of growing
    length are enumerated until ``v`` turns up or the budget runs out.

    Raises:
        BudgetExceeded: more than ``budget`` candidates were examined.
    """
    budget = monoid.budget if budget is None else budget
    if len(v) != monoid.ambient_dim:
        raise ValueError(f"vector {tuple(v)} does not have dimension {monoid.ambient_dim}")
    target = monoid.lattice.coordinates(v)
    if target is None:
        return False
    if not any(target):
        return True
    gens = sorted(set(monoid._coords))
    ell = monoid.positive_functional
    if ell is None:
        return _search_unbounded(gens, target, budget)
    return _search_bounded(gens, ell, monoid.supporting_normals, target, budget)


def _search_bounded(gens, ell, normals, target, budget) -> bool:
    # Walk down from the target subtracting generators. A remainder that has
    # left the cone cannot be a sum of generators, and every failed
    # remainder is remembered, so the work is bounded by the lattice points
    # of the cone below the target's weight.
    gens = sorted(gens, key=lambda g: _dot(ell, g), reverse=True)
    start = tuple(target)
    if _dot(ell, start) <= 0 or any(_dot(n, start) < 0 for n in normals):
        return False
    seen = {start}
    stack = [start]
    count = 0
    while stack:
        rem = stack.pop()
        for g in gens:
            count += 1
            if count > budget:
                raise BudgetExceeded(f"membership search exceeded {budget} candidates")
            nxt = tuple(r - x for r, x in zip(rem, g))
            if not any(nxt):
                return True
            if nxt in seen or _dot(ell, nxt) <= 0 or any(_dot(n, nxt) < 0 for n in normals):
                continue
            seen.add(nxt)
            stack.append(nxt)
    return False


def _search_unbounded(gens, target, budget) -> bool:
    seen = {tuple(0 for _ in target)}
    frontier = set(seen)
    count = 0
    while frontier:
        nxt = set()
        for s in frontier:
            for g in gens:
                count += 1
                if count > budget:
                    raise BudgetExceeded(f"membership search exceeded {budget} candidates")
                t = tuple(a + b for a, b in zip(s, g))
                if t == target:
                    return True
                if t not in seen:
                    seen.add(t)
                    nxt.add(t)
        frontier = nxt
    return False


def is_sharp(monoid: AffineMonoid) -> bool:
    """True iff no generator has its negative in the monoid."""
    for g in monoid.generators:
        try:
            if member(monoid, tuple(-x for x in g)):
                return False
        except BudgetExceeded:
            continue
    # a cone containing a line forces a nontrivial unit among the generators
    return monoid.positive_functional is not None


def max_divisibility(monoid: AffineMonoid, v: Sequence[int]) -> int:
    """Largest ``m`` such that ``v = m * a`` with ``a`` in the monoid."""
    if not any(v):
        raise ValueError("divisibility of the zero element is undefined")
    if not member(monoid, v):
        raise NotInMonoid(f"{tuple(v)} is not in the monoid")
    if not monoid.sharp:
        raise ValueError("max_divisibility requires a sharp monoid")
    c = content(v, monoid.lattice)
    if monoid.saturated:
        return c
    for m in reversed(divisors(c)):
        if member(monoid, tuple(x // m for x in v)):
            return m
    return 1


def is_face(monoid: AffineMonoid, face: Face) -> bool:
    """True iff some functional is nonnegative on the generators and vanishes
    exactly on the selected ones."""
    idx = face.generator_indices
    if any(i < 0 or i >= len(monoid.generators) for i in idx):
        return False
    _, proj = _face_projection(monoid, idx)
    images = [proj(c) for i, c in enumerate(monoid._coords) if i not in idx]
    if any(not any(x) for x in images):
        return False
    if not images:
        return True
    quotient = AffineMonoid(tuple(images))
    return quotient.positive_functional is not None


def _face_projection(monoid: AffineMonoid, idx):
    r = monoid.lattice.rank
    rows = [list(monoid._coords[i]) for i in sorted(idx)]
    if not rows:
        return r, lambda c: tuple(c)
    diag, _, vmat = smith_normal_form(rows)
    s = sum(1 for d in diag if d)

    def proj(c):
        return vecmat(c, vmat)[s:]

    return r - s, proj


def localize_sharpen(monoid: AffineMonoid, face: Face, marked: Sequence[int]):
    """Image of the monoid modulo (the saturation of) a face.

    Returns ``(Q, image)`` with ``Q`` sharp and ``image`` the class of
    ``marked``. The empty face of a sharp monoid returns the monoid itself.
    """
    if not is_face(monoid, face):
        raise InvalidFace(f"generators {sorted(face.generator_indices)} do not span a face")
    if not member(monoid, marked):
        raise NotInMonoid(f"{tuple(marked)} is not in the monoid")
    idx = face.generator_indices
    if not idx:
        return monoid, tuple(marked)
    dim, proj = _face_projection(monoid, idx)
    images = [proj(c) for i, c in enumerate(monoid._coords) if i not in idx]
    image = proj(monoid.coordinates(marked))
    if dim == 1 and images and all(x[0] < 0 for x in images):
        images = [(-x[0],) for x in images]
        image = (-image[0],)
    q = AffineMonoid(tuple(images), ambient_dim=dim, saturated=monoid.saturated, budget=monoid.budget)
    return q, image


def saturation_witness(monoid: AffineMonoid, max_points: int = 200_000) -> Optional[Vector]:
    """Best-effort search for a lattice point of the cone missing from the monoid.

    Scans lattice coordinates in a box large enough to contain the
    fundamental parallelepipeds of simplicial subcones, up to ``max_points``
    points. ``None`` means no witness was found, not that one cannot exist.
    """
    r = monoid.lattice.rank
    if r == 0 or monoid.positive_functional is None:
        return None
    bound = r * max(max(abs(x) for x in c) for c in monoid._coords)
    seen = 0
    for c in itertools.product(range(-bound, bound + 1), repeat=r):
        if not any(c):
            continue
        seen += 1
        if seen > max_points:
            return None
        if not all(_dot(n, c) >= 0 for n in monoid.supporting_normals):
            continue
        x = monoid.lattice.point(c)
        try:
            if not member(monoid, x):
                return x
        except BudgetExceeded:
            continue
    return None
