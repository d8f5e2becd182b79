"""Finite elementary abelian p-groups, their subgroups, and group rings.

Elements are canonical exponent vectors reduced mod p; multiplication is
vector addition.  Subgroups carry reduced row-echelon bases over F_p, so
equal subgroups always compare equal.  Group-ring elements are sparse
integer combinations of group elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FiniteAbelianPGroup:
    """(Z/p)^rank with ordered generators s1, ..., s_rank."""

    p: int
    rank: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")

    @property
    def order(self) -> int:
        return self.p ** self.rank

    def element(self, exps: Sequence[int]) -> "GroupElement":
        if len(exps) != self.rank:
            raise ValueError("exponent vector length mismatch")
        return GroupElement(self, tuple(e % self.p for e in exps))

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generator(self, i: int) -> "GroupElement":
        exps = [0] * self.rank
        exps[i] = 1
        return GroupElement(self, tuple(exps))

    @property
    def generators(self) -> tuple["GroupElement", ...]:
        return tuple(self.generator(i) for i in range(self.rank))

    def elements(self) -> tuple["GroupElement", ...]:
        return _group_elements(self)

    def element_index(self, g: "GroupElement") -> int:
        idx = 0
        for e in g.exps:
            idx = idx * self.p + e
        return idx

    def subgroup(self, gens: Iterable["GroupElement"]) -> "Subgroup":
        return subgroup_generated_by(self, gens)

    def full_subgroup(self) -> "Subgroup":
        return self.subgroup(self.generators)

    def trivial_subgroup(self) -> "Subgroup":
        return self.subgroup(())


@lru_cache(maxsize=None)
def _group_elements(group: FiniteAbelianPGroup) -> tuple["GroupElement", ...]:
    return tuple(GroupElement(group, exps)
                 for exps in itertools.product(range(group.p), repeat=group.rank))


def make_group(p: int, r: int) -> FiniteAbelianPGroup:
    """The elementary abelian group of order p^r (p prime)."""
    return FiniteAbelianPGroup(p, r)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianPGroup
    exps: tuple[int, ...]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        p = self.group.p
        return GroupElement(self.group, tuple((a + b) % p for a, b in zip(self.exps, other.exps)))

    def inverse(self) -> "GroupElement":
        p = self.group.p
        return GroupElement(self.group, tuple((-a) % p for a in self.exps))

    def __pow__(self, k: int) -> "GroupElement":
        p = self.group.p
        k %= p
        return GroupElement(self.group, tuple((a * k) % p for a in self.exps))

    @property
    def is_identity(self) -> bool:
        return not any(self.exps)

    def order(self) -> int:
        return 1 if self.is_identity else self.group.p

    def __str__(self) -> str:
        if self.is_identity:
            return "1"
        return "*".join(f"s{i + 1}" + (f"^{e}" if e > 1 else "")
                        for i, e in enumerate(self.exps) if e)


def _echelonize(p: int, vectors: list[list[int]]) -> list[tuple[int, ...]]:
    """Reduced row echelon form over F_p; returns nonzero rows."""
    rows = [list(v) for v in vectors]
    ncols = len(rows[0]) if rows else 0
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in rows:
        row = [x % p for x in row]
        for b, j in zip(basis, pivots):
            if row[j]:
                c = row[j]
                row = [(x - c * y) % p for x, y in zip(row, b)]
        pivot = next((j for j, x in enumerate(row) if x), None)
        if pivot is None:
            continue
        inv = pow(row[pivot], -1, p)
        row = [(x * inv) % p for x in row]
        basis.append(row)
        pivots.append(pivot)
    # back-substitute: a single descending pass clears every off-pivot entry
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    basis = [basis[i] for i in order]
    pivots = [pivots[i] for i in order]
    for i in reversed(range(len(basis))):
        for k in range(len(basis)):
            if k == i:
                continue
            c = basis[k][pivots[i]]
            if c:
                basis[k] = [(x - c * y) % p for x, y in zip(basis[k], basis[i])]
    return [tuple(row) for row in basis]


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of an elementary abelian p-group, with canonical echelon basis."""

    group: FiniteAbelianPGroup
    basis: tuple[GroupElement, ...]

    @property
    def num_generators(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return self.group.p ** len(self.basis)

    @property
    def index(self) -> int:
        return self.group.order // self.order

    @property
    def is_full(self) -> bool:
        return len(self.basis) == self.group.rank

    @property
    def is_trivial(self) -> bool:
        return not self.basis

    def elements(self) -> tuple[GroupElement, ...]:
        return _subgroup_elements(self)

    def element_index(self, g: GroupElement) -> int:
        try:
            return _subgroup_index(self)[g.exps]
        except KeyError:
            raise ValueError(f"{g} is not in the subgroup") from None

    def coords_of(self, g: GroupElement) -> Optional[tuple[int, ...]]:
        """F_p coordinates of g over the echelon basis, or None."""
        p = self.group.p
        row = list(g.exps)
        coords = []
        for b in self.basis:
            pivot = next(j for j, x in enumerate(b.exps) if x)
            c = row[pivot] % p
            coords.append(c)
            if c:
                row = [(x - c * y) % p for x, y in zip(row, b.exps)]
        if any(x % p for x in row):
            return None
        return tuple(coords)

    def contains(self, g: GroupElement) -> bool:
        return g.group == self.group and self.coords_of(g) is not None

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return all(other.contains(b) for b in self.basis)

    def label(self) -> str:
        if not self.basis:
            return "<1>"
        return "<" + ",".join(str(b) for b in self.basis) + ">"

    def sort_key(self):
        return (self.order, tuple(b.exps for b in self.basis))


@lru_cache(maxsize=None)
def _subgroup_elements(H: Subgroup) -> tuple[GroupElement, ...]:
    p = H.group.p
    elems = set()
    for coeffs in itertools.product(range(p), repeat=len(H.basis)):
        exps = [0] * H.group.rank
        for c, b in zip(coeffs, H.basis):
            for j, e in enumerate(b.exps):
                exps[j] = (exps[j] + c * e) % p
        elems.add(tuple(exps))
    return tuple(GroupElement(H.group, e) for e in sorted(elems))


@lru_cache(maxsize=None)
def _subgroup_index(H: Subgroup) -> dict:
    return {g.exps: i for i, g in enumerate(H.elements())}


def subgroup_generated_by(group: FiniteAbelianPGroup,
                          gens: Iterable[GroupElement]) -> Subgroup:
    vectors = []
    for g in gens:
        if g.group != group:
            raise ValueError("generator from a different group")
        vectors.append(list(g.exps))
    basis = _echelonize(group.p, vectors) if vectors else []
    return Subgroup(group, tuple(group.element(b) for b in basis))


def all_subgroups(group: FiniteAbelianPGroup) -> list[Subgroup]:
    """Every subgroup exactly once, by direct echelon-basis enumeration.

    Echelon bases over F_p with a fixed pivot-column set biject with
    subspaces, so enumerating pivot sets and free entries hits each
    subgroup once.  Sorted by (order, basis).
    """
    p, r = group.p, group.rank
    out = [group.trivial_subgroup()]
    for k in range(1, r + 1):
        for pivots in itertools.combinations(range(r), k):
            free_positions = []
            for i in range(k):
                for j in range(pivots[i] + 1, r):
                    if j not in pivots:
                        free_positions.append((i, j))
            for values in itertools.product(range(p), repeat=len(free_positions)):
                rows = [[0] * r for _ in range(k)]
                for i in range(k):
                    rows[i][pivots[i]] = 1
                for (i, j), v in zip(free_positions, values):
                    rows[i][j] = v
                basis = tuple(group.element(row) for row in rows)
                out.append(Subgroup(group, basis))
    out.sort(key=lambda H: H.sort_key())
    return out


def gaussian_binomial(r: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^r."""
    num = den = 1
    for i in range(k):
        num *= p ** (r - i) - 1
        den *= p ** (k - i) - 1
    return num // den


def project_subgroup(H: Subgroup, coords: Sequence[int],
                     target: FiniteAbelianPGroup) -> Subgroup:
    """Image of H under the coordinate projection onto `coords`."""
    if len(coords) != target.rank:
        raise ValueError("projection arity mismatch")
    gens = [target.element([b.exps[c] for c in coords]) for b in H.basis]
    return subgroup_generated_by(target, gens)


def quotient_images(H: Subgroup) -> tuple[Subgroup, Subgroup, Subgroup]:
    """Images of H <= G (rank 4) in the three coordinate quotients.

    Returns (H12, H3, H4) as subgroups of rank-2 and rank-1 groups: the
    images of H under killing the last two, the non-third, and the
    non-fourth coordinates respectively.
    """
    G = H.group
    if G.rank != 4:
        raise ValueError("quotient images require an ambient group of rank 4")
    g12 = make_group(G.p, 2)
    g1 = make_group(G.p, 1)
    return (project_subgroup(H, (0, 1), g12),
            project_subgroup(H, (2,), g1),
            project_subgroup(H, (3,), g1))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between elementary abelian p-groups, by generator images."""

    source: FiniteAbelianPGroup
    target: FiniteAbelianPGroup
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        if len(self.images) != self.source.rank:
            raise ValueError("one image per source generator required")
        for img in self.images:
            if img.group != self.target:
                raise ValueError("image outside the target group")

    def __call__(self, g: GroupElement) -> GroupElement:
        if g.group != self.source:
            raise ValueError("element outside the source group")
        out = self.target.identity
        for e, img in zip(g.exps, self.images):
            if e:
                out = out * img ** e
        return out


def projection_hom(source: FiniteAbelianPGroup, coords: Sequence[int]) -> GroupHom:
    """Quotient map killing every coordinate not listed in `coords`."""
    target = make_group(source.p, len(coords))
    images = []
    for i in range(source.rank):
        exps = [0] * target.rank
        if i in coords:
            exps[list(coords).index(i)] = 1
        images.append(target.element(exps))
    return GroupHom(source, target, tuple(images))


class GroupRingElement:
    """Finitely supported integer combination of group elements."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteAbelianPGroup, coeffs=None):
        self.group = group
        clean: dict[GroupElement, int] = {}
        if coeffs:
            for g, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                if g.group != group:
                    raise ValueError("element from a different group")
                c = int(c)
                if c:
                    clean[g] = clean.get(g, 0) + c
                    if not clean[g]:
                        del clean[g]
        self.coeffs = clean

    @classmethod
    def zero(cls, group) -> "GroupRingElement":
        return cls(group)

    @classmethod
    def one(cls, group) -> "GroupRingElement":
        return cls(group, {group.identity: 1})

    @classmethod
    def of(cls, g: GroupElement, c: int = 1) -> "GroupRingElement":
        return cls(g.group, {g: c})

    def coeff(self, g: GroupElement) -> int:
        return self.coeffs.get(g, 0)

    @property
    def support(self) -> tuple[GroupElement, ...]:
        return tuple(sorted(self.coeffs, key=lambda g: g.exps))

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.group, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupRingElement":
        return GroupRingElement(self.group, {g: k * c for g, c in self.coeffs.items()})

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return self.__rmul__(other)
        out: dict[GroupElement, int] = {}
        for g, c in self.coeffs.items():
            for h, d in other.coeffs.items():
                gh = g * h
                out[gh] = out.get(gh, 0) + c * d
        return GroupRingElement(self.group, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupRingElement)
                and self.group == other.group and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.group, tuple(sorted((g.exps, c) for g, c in self.coeffs.items()))))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for g in self.support:
            c = self.coeffs[g]
            base = str(g)
            if c == 1:
                terms.append(base)
            elif c == -1:
                terms.append(f"-{base}")
            else:
                terms.append(f"{c}*{base}")
        return " + ".join(terms).replace("+ -", "- ")


def norm_element(H: Subgroup) -> GroupRingElement:
    """Sum of all elements of H with coefficient 1 in Z[G]."""
    return GroupRingElement(H.group, {g: 1 for g in H.elements()})


def augmentation(x: GroupRingElement) -> int:
    """Coefficient sum; the ring homomorphism Z[G] -> Z sending g to 1."""
    return sum(x.coeffs.values())
