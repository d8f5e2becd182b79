"""G-lattices: free Z-modules with commuting generator actions.

Covers the standard constructions (trivial, regular, permutation,
augmentation ideal, relation module of a minimal presentation, direct
sums, inflations), fixed sublattices, images of augmentation-ideal
multiplication, and the generator/relation structure of the rank-2
relation module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _matops
from .groups import (FiniteAbelianPGroup, GroupElement, GroupHom,
                     GroupRingElement, Subgroup)
from .intlinalg import IntMatrix, RowLatticeSolver

# Actions in this package stay tiny; the bound keeps every int64 product
# of action matrices exact by construction.
_MAX_ACTION_ENTRY = 1 << 20


def _mm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact int64 matrix product with an overflow assertion."""
    bound = a.shape[1] * int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0))
    if bound >= 1 << 62:
        raise OverflowError("action product outside the exact int64 range")
    return a @ b


class GLattice:
    """Free Z-module of finite rank with one integer action matrix per
    group generator.  The matrices must pairwise commute and have order
    dividing p (checked at construction), which also forces them to be
    unimodular.  Immutable after construction."""

    def __init__(self, group: FiniteAbelianPGroup, actions: Sequence,
                 labels: Optional[Sequence[str]] = None, name: str = "",
                 check: bool = True):
        self.group = group
        arrays = []
        for a in actions:
            if isinstance(a, IntMatrix):
                arr = np.array(a.to_lists(), dtype=np.int64)
            else:
                arr = np.array(a, dtype=np.int64)
            arrays.append(arr)
        if len(arrays) != group.rank:
            raise ValueError("one action matrix per generator required")
        rank = arrays[0].shape[0] if arrays else 0
        for arr in arrays:
            if arr.shape != (rank, rank):
                raise ValueError("action matrices must be square of equal size")
            if arr.size and int(np.abs(arr).max()) >= _MAX_ACTION_ENTRY:
                raise ValueError("action entries out of supported range")
        self.rank = rank
        self._acts = arrays
        self.name = name
        if labels is None:
            labels = [f"e{i}" for i in range(rank)]
        if len(labels) != rank:
            raise ValueError("one label per coordinate required")
        self.labels = tuple(labels)
        self.summands: tuple[tuple[str, int, int], ...] = ((name or "all", 0, rank),)
        self._act_cache: dict[tuple[int, ...], np.ndarray] = {}
        if check:
            self._check_action()

    def _check_action(self):
        eye = np.eye(self.rank, dtype=np.int64)
        for i, a in enumerate(self._acts):
            power = eye
            for _ in range(self.group.p):
                power = _mm(power, a)
            if not np.array_equal(power, eye):
                raise ValueError(f"generator {i} action does not have order dividing p")
        for i in range(len(self._acts)):
            for j in range(i + 1, len(self._acts)):
                if not np.array_equal(_mm(self._acts[i], self._acts[j]),
                                      _mm(self._acts[j], self._acts[i])):
                    raise ValueError(f"actions of generators {i} and {j} do not commute")

    # -- action ---------------------------------------------------------

    def action(self, i: int) -> IntMatrix:
        return IntMatrix.from_rows(self._acts[i].tolist(), self.rank)

    def act_array(self, g: GroupElement) -> np.ndarray:
        """Action matrix of an arbitrary group element (cached)."""
        if g.group != self.group:
            raise ValueError("element outside the acting group")
        key = g.exps
        cached = self._act_cache.get(key)
        if cached is None:
            out = np.eye(self.rank, dtype=np.int64)
            for i, e in enumerate(key):
                for _ in range(e):
                    out = _mm(out, self._acts[i])
            self._act_cache[key] = cached = out
        return cached

    def act(self, g: GroupElement, v: "LatticeElement") -> "LatticeElement":
        if v.lattice is not self:
            raise ValueError("element of a different lattice")
        return LatticeElement(self, tuple(int(x) for x in self.act_array(g) @ np.array(v.coords, dtype=np.int64)))

    def norm_array(self, H: Subgroup) -> np.ndarray:
        """Sum of the action matrices of all elements of H."""
        out = np.zeros((self.rank, self.rank), dtype=np.int64)
        for h in H.elements():
            out += self.act_array(h)
        return out

    # -- elements ---------------------------------------------------------

    def element(self, coords: Sequence[int]) -> "LatticeElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError("coordinate length mismatch")
        return LatticeElement(self, coords)

    def zero(self) -> "LatticeElement":
        return LatticeElement(self, (0,) * self.rank)

    def basis_element(self, i: int) -> "LatticeElement":
        coords = [0] * self.rank
        coords[i] = 1
        return LatticeElement(self, tuple(coords))

    # -- direct-sum bookkeeping -------------------------------------------

    def summand_offset(self, name: str) -> tuple[int, int]:
        for nm, off, rk in self.summands:
            if nm == name:
                return off, rk
        raise KeyError(f"no summand named {name!r}")

    def embed_coords(self, name: str, coords: Sequence[int]) -> "LatticeElement":
        off, rk = self.summand_offset(name)
        if len(coords) != rk:
            raise ValueError("summand coordinate length mismatch")
        full = [0] * self.rank
        full[off:off + rk] = [int(c) for c in coords]
        return self.element(full)

    def project_coords(self, name: str, v: Sequence[int]) -> tuple[int, ...]:
        off, rk = self.summand_offset(name)
        return tuple(int(x) for x in v[off:off + rk])

    def __repr__(self):
        return f"<GLattice {self.name or 'unnamed'} rank {self.rank} over p={self.group.p}^{self.group.rank}>"


@dataclass(frozen=True)
class LatticeElement:
    lattice: GLattice
    coords: tuple[int, ...]

    def __add__(self, other: "LatticeElement") -> "LatticeElement":
        self._match(other)
        return LatticeElement(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeElement") -> "LatticeElement":
        self._match(other)
        return LatticeElement(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeElement":
        return LatticeElement(self.lattice, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "LatticeElement":
        return LatticeElement(self.lattice, tuple(k * a for a in self.coords))

    def _match(self, other: "LatticeElement"):
        if self.lattice is not other.lattice:
            raise ValueError("elements of different lattices")

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def acted(self, g: GroupElement) -> "LatticeElement":
        return self.lattice.act(g, self)

    def ring_applied(self, x: GroupRingElement) -> "LatticeElement":
        out = np.zeros(self.lattice.rank, dtype=np.int64)
        vec = np.array(self.coords, dtype=np.int64)
        for g, c in x.coeffs.items():
            out += c * (self.lattice.act_array(g) @ vec)
        return LatticeElement(self.lattice, tuple(int(v) for v in out))


@dataclass(frozen=True)
class LatticeHom:
    """Z-linear map between lattices over the same group, commuting with
    every generator action (checked at construction)."""

    source: GLattice
    target: GLattice
    matrix: IntMatrix

    def __post_init__(self):
        if self.source.group != self.target.group:
            raise ValueError("source and target must share the acting group")
        if (self.matrix.rows, self.matrix.cols) != (self.target.rank, self.source.rank):
            raise ValueError("hom matrix shape mismatch")
        m = np.array(self.matrix.to_lists(), dtype=np.int64).reshape(self.target.rank, self.source.rank)
        for i in range(self.source.group.rank):
            left = _mm(m, self.source._acts[i])
            right = _mm(self.target._acts[i], m)
            if not np.array_equal(left, right):
                raise ValueError(f"hom does not commute with generator {i}")

    def __call__(self, v: LatticeElement) -> LatticeElement:
        if v.lattice is not self.source:
            raise ValueError("element outside the source lattice")
        return self.target.element(self.matrix.apply(v.coords))


# ---------------------------------------------------------------------------
# Standard constructions
# ---------------------------------------------------------------------------

def trivial_lattice(group: FiniteAbelianPGroup) -> GLattice:
    """Z with every generator acting as the identity."""
    eye = np.eye(1, dtype=np.int64)
    return GLattice(group, [eye] * group.rank, labels=["1"], name="Z", check=False)


def regular_lattice(group: FiniteAbelianPGroup) -> GLattice:
    """Z[G] with the permutation action on the element basis."""
    elems = group.elements()
    n = len(elems)
    acts = []
    for i in range(group.rank):
        s = group.generator(i)
        a = np.zeros((n, n), dtype=np.int64)
        for j, g in enumerate(elems):
            a[group.element_index(s * g), j] = 1
        acts.append(a)
    labels = [f"g{g.exps}" for g in elems]
    return GLattice(group, acts, labels=labels, name=f"Z[{group.p}^{group.rank}]", check=False)


def coset_transversal(group: FiniteAbelianPGroup, H: Subgroup) -> tuple[GroupElement, ...]:
    """Lexicographically minimal representative of each coset of H, sorted."""
    seen = {}
    for g in group.elements():
        rep = min((g * h for h in H.elements()), key=lambda e: e.exps)
        seen.setdefault(rep.exps, rep)
    return tuple(seen[k] for k in sorted(seen))


def permutation_lattice(group: FiniteAbelianPGroup, H: Subgroup,
                        transversal: Optional[Sequence[GroupElement]] = None) -> GLattice:
    """Z[G/H] on a fixed transversal of coset representatives."""
    if H.group != group:
        raise ValueError("subgroup of a different group")
    if transversal is None:
        transversal = coset_transversal(group, H)
    transversal = tuple(transversal)
    cosets = {}
    for i, rep in enumerate(transversal):
        for h in H.elements():
            key = (rep * h).exps
            if key in cosets:
                raise ValueError("transversal contains two representatives of one coset")
            cosets[key] = i
    if len(cosets) != group.order:
        raise ValueError("transversal does not cover every coset")
    n = len(transversal)
    acts = []
    for i in range(group.rank):
        s = group.generator(i)
        a = np.zeros((n, n), dtype=np.int64)
        for j, rep in enumerate(transversal):
            a[cosets[(s * rep).exps], j] = 1
        acts.append(a)
    labels = [f"u[{rep}]" for rep in transversal]
    return GLattice(group, acts, labels=labels, name=f"Z[G/{H.label()}]", check=False)


def augmentation_ideal_lattice(group: FiniteAbelianPGroup) -> GLattice:
    """I[G] on the basis {g - 1 : g != 1}, in element order."""
    elems = group.elements()
    nontriv = [g for g in elems if not g.is_identity]
    index = {g.exps: i for i, g in enumerate(nontriv)}
    n = len(nontriv)
    acts = []
    for i in range(group.rank):
        s = group.generator(i)
        a = np.zeros((n, n), dtype=np.int64)
        for j, g in enumerate(nontriv):
            sg = s * g
            # s*(g-1) = (s*g - 1) - (s - 1)
            if not sg.is_identity:
                a[index[sg.exps], j] += 1
            a[index[s.exps], j] -= 1
        acts.append(a)
    labels = [f"i{g.exps}" for g in nontriv]
    return GLattice(group, acts, labels=labels, name=f"I[{group.p}^{group.rank}]", check=False)


def aug_ideal_coords(group: FiniteAbelianPGroup, x: GroupRingElement) -> tuple[int, ...]:
    """Coordinates of an augmentation-zero ring element in the (g-1) basis."""
    from .groups import augmentation
    if augmentation(x) != 0:
        raise ValueError("element has nonzero augmentation")
    elems = [g for g in group.elements() if not g.is_identity]
    index = {g.exps: i for i, g in enumerate(elems)}
    out = [0] * len(elems)
    for g, c in x.coeffs.items():
        if not g.is_identity:
            out[index[g.exps]] = c
    return tuple(out)


def direct_sum(*parts: GLattice, names: Optional[Sequence[str]] = None,
               name: str = "") -> GLattice:
    """Block-diagonal direct sum of lattices over one common group."""
    if not parts:
        raise ValueError("empty direct sum")
    group = parts[0].group
    for part in parts:
        if part.group != group:
            raise ValueError("summands over different groups; inflate first")
    if names is None:
        names = [part.name or f"part{i}" for i, part in enumerate(parts)]
    total = sum(part.rank for part in parts)
    acts = []
    for i in range(group.rank):
        a = np.zeros((total, total), dtype=np.int64)
        off = 0
        for part in parts:
            a[off:off + part.rank, off:off + part.rank] = part._acts[i]
            off += part.rank
        acts.append(a)
    labels = []
    for nm, part in zip(names, parts):
        labels.extend(f"{nm}.{lab}" for lab in part.labels)
    out = GLattice(group, acts, labels=labels, name=name or "+".join(names), check=False)
    layout = []
    off = 0
    for nm, part in zip(names, parts):
        layout.append((nm, off, part.rank))
        off += part.rank
    out.summands = tuple(layout)
    return out


def inflate_lattice(lat: GLattice, hom: GroupHom, name: str = "") -> GLattice:
    """View a lattice over `hom.target` as a lattice over `hom.source`:
    each source generator acts through its image."""
    if hom.target != lat.group:
        raise ValueError("hom target must be the lattice's group")
    acts = [lat.act_array(hom(hom.source.generator(i)))
            for i in range(hom.source.rank)]
    return GLattice(hom.source, acts, labels=lat.labels,
                    name=name or lat.name, check=False)


# ---------------------------------------------------------------------------
# Sublattices
# ---------------------------------------------------------------------------

def fixed_sublattice(lat: GLattice, H: Subgroup) -> IntMatrix:
    """Saturated basis (rows) of the simultaneous fixed vectors of H."""
    if H.group != lat.group:
        raise ValueError("subgroup of a different group")
    if not H.basis:
        return IntMatrix.identity(lat.rank)
    eye = np.eye(lat.rank, dtype=np.int64)
    blocks = [(lat.act_array(h) - eye).T for h in H.basis]
    m = np.hstack(blocks)
    rows = _matops.kernel_rows(m.tolist(), m.shape[1])
    return IntMatrix.from_rows(rows, lat.rank)


def ih_sublattice(lat: GLattice, elements: Iterable[GroupElement]) -> IntMatrix:
    """Hermite basis (rows) of the sublattice sum of (g - 1) * L."""
    eye = np.eye(lat.rank, dtype=np.int64)
    rows: list[list[int]] = []
    for g in elements:
        rows.extend(((lat.act_array(g) - eye).T).tolist())
    if not rows:
        return IntMatrix.from_rows([], lat.rank)
    h, _ = _matops.hnf_rows(rows, lat.rank)
    return IntMatrix.from_rows([r for r in h if any(r)], lat.rank)


class Sublattice:
    """A sublattice given by basis rows, with coordinate bookkeeping."""

    def __init__(self, ambient: GLattice, basis: IntMatrix):
        if basis.cols != ambient.rank:
            raise ValueError("basis rows must live in the ambient lattice")
        self.ambient = ambient
        self.basis = basis
        self.solver = RowLatticeSolver(basis)
        self.rank = basis.rows

    def coords_of(self, v) -> Optional[tuple[int, ...]]:
        vec = v.coords if isinstance(v, LatticeElement) else v
        return self.solver.contains(vec)

    def contains(self, v) -> bool:
        return self.coords_of(v) is not None

    def to_ambient(self, coeffs: Sequence[int]) -> LatticeElement:
        if len(coeffs) != self.rank:
            raise ValueError("coefficient length mismatch")
        out = [0] * self.ambient.rank
        for c, row in zip(coeffs, self.basis.entries):
            if c:
                out = [x + c * y for x, y in zip(out, row)]
        return self.ambient.element(out)

    def basis_elements(self) -> list[LatticeElement]:
        return [self.ambient.element(row) for row in self.basis.entries]

    def induced_action(self, g: GroupElement) -> np.ndarray:
        """Action of g in sublattice coordinates (requires stability)."""
        a = self.ambient.act_array(g)
        b = np.array(self.basis.to_lists(), dtype=np.int64).reshape(self.rank, self.ambient.rank)
        images = (a @ b.T).T.tolist()
        coeffs = self.solver.coeffs_many(images)
        return np.array(coeffs, dtype=np.int64).T.copy() if coeffs else np.zeros((0, 0), dtype=np.int64)

    def as_glattice(self, name: str = "") -> GLattice:
        acts = [self.induced_action(self.ambient.group.generator(i))
                for i in range(self.ambient.group.rank)]
        return GLattice(self.ambient.group, acts,
                        labels=[f"f{i}" for i in range(self.rank)],
                        name=name or f"{self.ambient.name}-sub", check=False)


# ---------------------------------------------------------------------------
# Relation module of the minimal presentation
# ---------------------------------------------------------------------------

@dataclass
class RelationModule:
    """Kernel of the free cover  (+)_i Z[G] d_i  ->  I[G],  d_i -> s_i - 1."""

    lattice: GLattice
    ambient: GLattice
    basis: IntMatrix          # kernel basis rows inside the ambient free module
    inclusion: LatticeHom
    _solver: RowLatticeSolver

    def from_ambient(self, v) -> LatticeElement:
        vec = v.coords if isinstance(v, LatticeElement) else v
        coeffs = self._solver.contains(vec)
        if coeffs is None:
            raise ValueError("vector is not in the relation module")
        return self.lattice.element(coeffs)

    def to_ambient(self, x: LatticeElement) -> LatticeElement:
        return self.inclusion(x)


def relation_module(group: FiniteAbelianPGroup) -> RelationModule:
    """Relation module of the minimal free presentation of `group`."""
    r = group.rank
    elems = group.elements()
    n = group.order
    regular = regular_lattice(group)
    parts = [regular] * r
    ambient = direct_sum(*parts, names=[f"d{i + 1}" for i in range(r)],
                         name=f"free-cover[{group.p}^{r}]")
    nontriv = [g for g in elems if not g.is_identity]
    iindex = {g.exps: i for i, g in enumerate(nontriv)}
    phi = np.zeros((n - 1, r * n), dtype=np.int64)
    for i in range(r):
        s = group.generator(i)
        for j, g in enumerate(elems):
            col = i * n + j
            sg = s * g
            # g*d_i maps to g*(s_i - 1) = (g s_i - 1) - (g - 1)
            if not sg.is_identity:
                phi[iindex[sg.exps], col] += 1
            if not g.is_identity:
                phi[iindex[g.exps], col] -= 1
    kernel = _matops.kernel_rows(phi.T.tolist(), n - 1)
    basis = IntMatrix.from_rows(kernel, r * n)
    solver = RowLatticeSolver(basis)
    b = np.array(basis.to_lists(), dtype=np.int64).reshape(len(kernel), r * n)
    acts = []
    for i in range(r):
        amb = ambient._acts[i]
        images = (amb @ b.T).T.tolist()
        coeffs = solver.coeffs_many(images) if len(kernel) else []
        acts.append(np.array(coeffs, dtype=np.int64).T.copy()
                    if coeffs else np.zeros((0, 0), dtype=np.int64))
    lattice = GLattice(group, acts, labels=[f"k{i}" for i in range(len(kernel))],
                       name=f"A2[{group.p}^{r}]", check=True)
    inclusion = LatticeHom(lattice, ambient,
                           IntMatrix.from_rows(b.T.tolist(), len(kernel))
                           if len(kernel) else IntMatrix.zeros(r * n, 0))
    return RelationModule(lattice, ambient, basis, inclusion, solver)


def _ring_on_block(group, x: GroupRingElement, block: int, nblocks: int) -> np.ndarray:
    """Coordinates of x * d_block inside the free cover (+) Z[G] d_i."""
    n = group.order
    out = np.zeros(nblocks * n, dtype=np.int64)
    for g, c in x.coeffs.items():
        out[block * n + group.element_index(g)] += c
    return out


@dataclass
class A2Generators:
    """The rank-2 relation module with its three-generator description.

    Generators: u12 = sign * ((s2 - 1) d1 - (s1 - 1) d2), b1 = N1 d1,
    b2 = N2 d2.  `express` writes any kernel element as a group-ring
    combination of the three; the mod-p augmentation of the u12
    coefficient is well-defined (verified against the expression kernel
    at construction).
    """

    module: RelationModule
    u12: LatticeElement
    b1: LatticeElement
    b2: LatticeElement
    sign: int
    _expr_solver: RowLatticeSolver

    @property
    def lattice(self) -> GLattice:
        return self.module.lattice

    def express(self, x: LatticeElement) -> tuple[GroupRingElement, GroupRingElement, GroupRingElement]:
        """Some (alpha, beta, gamma) with x = alpha u12 + beta b1 + gamma b2."""
        if x.lattice is not self.lattice:
            raise ValueError("element outside the relation module")
        coeffs = self._expr_solver.contains(x.coords)
        if coeffs is None:
            raise RuntimeError("relation-module element escaped its generators")
        group = self.lattice.group
        elems = group.elements()
        n = group.order
        parts = []
        for t in range(3):
            parts.append(GroupRingElement(group, {elems[j]: coeffs[t * n + j]
                                                  for j in range(n)}))
        return parts[0], parts[1], parts[2]

    def u_coefficient_residue(self, x: LatticeElement) -> int:
        """Augmentation mod p of the u12 coefficient of x."""
        from .groups import augmentation
        alpha, _, _ = self.express(x)
        return augmentation(alpha) % self.lattice.group.p

    @property
    def relation_u12(self) -> LatticeElement:
        """(s2-1)d1 - (s1-1)d2 regardless of the chosen sign of u12.

        This is the element w forced by the monomial relations: swapping
        the two monomial generators introduces w, and compatibility with
        b1 = N1 d1, b2 = N2 d2 (N1 w = (s2-1) b1, N2 w = -(s1-1) b2)
        pins it; only its *name* carries the sign flag.
        """
        return self.sign * self.u12

    def commutator(self, mbar: Sequence[int], nbar: Sequence[int]) -> LatticeElement:
        """Additive commutator of the monomials z^mbar and z^nbar.

        With w = relation_u12 and T(a, b) = sum_{i<a} sum_{j<b} s1^i s2^j w,

            u[m, n] = s1^m1 T(n1, m2) - s1^n1 T(m1, n2),

        the transcription of z^m z^n z^-m z^-n obtained by swapping one
        generator pair at a time.  Independent of the sign flag.
        """
        group = self.lattice.group
        p = group.p
        m1, m2 = (int(e) % p for e in mbar)
        n1, n2 = (int(e) % p for e in nbar)
        s1, s2 = group.generators
        w = self.relation_u12

        def partial(imax: int, jmax: int) -> LatticeElement:
            total = self.lattice.zero()
            for i in range(imax):
                for j in range(jmax):
                    total = total + w.acted(s1 ** i * s2 ** j)
            return total

        return partial(n1, m2).acted(s1 ** m1) + (-1 * partial(m1, n2).acted(s1 ** n1))


def a2_generators(group: FiniteAbelianPGroup, sign: int = 1) -> A2Generators:
    if group.rank != 2:
        raise ValueError("the three-generator description needs a rank-2 group")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    module = relation_module(group)
    p = group.p
    s1, s2 = group.generators
    one = GroupRingElement.one(group)
    n1 = GroupRingElement(group, {s1 ** t: 1 for t in range(p)})
    n2 = GroupRingElement(group, {s2 ** t: 1 for t in range(p)})
    u_amb = (_ring_on_block(group, GroupRingElement.of(s2) - one, 0, 2)
             - _ring_on_block(group, GroupRingElement.of(s1) - one, 1, 2)) * sign
    b1_amb = _ring_on_block(group, n1, 0, 2)
    b2_amb = _ring_on_block(group, n2, 1, 2)
    u12 = module.from_ambient(u_amb.tolist())
    b1 = module.from_ambient(b1_amb.tolist())
    b2 = module.from_ambient(b2_amb.tolist())
    lattice = module.lattice
    elems = group.elements()
    cols = []
    for gen in (u12, b1, b2):
        vec = np.array(gen.coords, dtype=np.int64)
        for g in elems:
            cols.append((lattice.act_array(g) @ vec).tolist())
    expr_matrix = np.array(cols, dtype=np.int64)  # rows = generator translates
    solver = RowLatticeSolver(IntMatrix.from_rows(expr_matrix.tolist(), lattice.rank))
    gens = A2Generators(module, u12, b1, b2, sign, solver)
    _assert_residue_well_defined(gens, expr_matrix)
    return gens


def _assert_residue_well_defined(gens: A2Generators, expr_matrix: np.ndarray):
    """Every relation among the generator translates has u-part
    augmentation divisible by p, so the mod-p residue is well-defined."""
    group = gens.lattice.group
    p, n = group.p, group.order
    kernel = _matops.kernel_rows(expr_matrix.tolist(), gens.lattice.rank)
    for row in kernel:
        if sum(row[:n]) % p:
            raise AssertionError("u-coefficient residue is not well-defined")


def express_in_A2_generators(gens: A2Generators, x: LatticeElement):
    """Module-level alias for A2Generators.express."""
    return gens.express(x)
