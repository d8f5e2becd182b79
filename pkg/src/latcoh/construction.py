"""Assembly of the rank-4 crossed-product setup at the lattice level.

For an odd prime p this builds, over G = (Z/p)^4 with generators
s1, s2, s3, s4:

  * the rank-2 relation module with its canonical 2-cocycle table c12,
    and the cyclic carry cocycles c3, c4 valued in K = A2(C) (+) Z[C];
  * the coefficient lattice Q = A2(G12) (+) K3 (+) K4 and the twisting
    cocycle  omega = c12 - c3 - c4  (inflated to G; coefficients
    configurable);
  * the twisted extension M_omega = Q (+) I[G];
  * the family of subgroups {G} and <tau, s3, s4> for tau in G12, each
    with the order n_H of its restricted twisting class and an explicit
    splitting 1-cocycle f_H on H valued in M_omega whose I[G] component
    is n_H (h - 1);
  * the enlarged lattice M = M_omega (+) (+)_H Z[G/H] whose twisted
    permutation action absorbs every f_H, so that M has vanishing first
    cohomology for all subgroups;
  * the residue maps: pi on the rank-2 relation module (augmentation of
    the u12 coefficient mod p) and its extension pi' to the s3,s4-fixed
    part of M.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .cohomology import (Cochain1, Cocycle2, c12_cocycle, carry_cocycle,
                         cocycle_class_order, extension_lattice, h1,
                         is_cocycle2, restrict_cocycle, solve_coboundary)
from .groups import (FiniteAbelianPGroup, GroupElement, GroupHom, Subgroup,
                     is_prime, make_group, project_subgroup, projection_hom,
                     quotient_images)
from .intlinalg import FinAbInvariants
from .lattices import (A2Generators, GLattice, LatticeElement, Sublattice,
                       a2_generators, coset_transversal, direct_sum,
                       fixed_sublattice, inflate_lattice, regular_lattice,
                       relation_module)


@dataclass
class FamilyMember:
    subgroup: Subgroup
    tau: Optional[GroupElement]       # None for the whole group
    res_order: int                    # order of the restricted twisting class
    transversal: tuple[GroupElement, ...]
    cochain: Cochain1                 # splitting cocycle on H valued in M_omega

    @property
    def block_name(self) -> str:
        return "P.G" if self.tau is None else f"P.tau{self.tau.exps[:2]}"


class Context:
    """All lattices, cocycles and embeddings of the rank-4 setup."""

    def __init__(self, p: int, *, multiset_family: bool = False,
                 alt_u12_sign: bool = False,
                 omega_terms: tuple[int, int, int] = (1, -1, -1),
                 check: str = "full"):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if p == 2:
            raise ValueError("p = 2 is rejected: the residue argument on the "
                             "fixed part needs p odd")
        if check not in ("full", "light"):
            raise ValueError("check must be 'full' or 'light'")
        self.p = p
        self.multiset_family = multiset_family
        self.alt_u12_sign = alt_u12_sign
        self.omega_terms = tuple(int(t) for t in omega_terms)
        self.check = check

        self.group = make_group(p, 4)
        self.g12 = make_group(p, 2)
        self.cyc = make_group(p, 1)
        self.proj12 = projection_hom(self.group, (0, 1))
        self.proj3 = projection_hom(self.group, (2,))
        self.proj4 = projection_hom(self.group, (3,))

        self.a2 = a2_generators(self.g12, sign=-1 if alt_u12_sign else 1)
        self.c12 = c12_cocycle(self.a2)

        # K = A2(C) (+) Z[C] over the cyclic group; the first coordinate is
        # the norm generator, on which the carry table takes its values.
        relc = relation_module(self.cyc)
        self.k_lattice = direct_sum(relc.lattice, regular_lattice(self.cyc),
                                    names=["N", "reg"], name="K")
        self.c3 = carry_cocycle(self.k_lattice,
                                self.k_lattice.embed_coords("N", [1]))

        self.q = direct_sum(inflate_lattice(self.a2.lattice, self.proj12, name="A2"),
                            inflate_lattice(self.k_lattice, self.proj3, name="K3"),
                            inflate_lattice(self.k_lattice, self.proj4, name="K4"),
                            names=["A2", "K3", "K4"], name="Q")
        self.omega = self._assemble_twist(*self.omega_terms)
        if check == "full":
            if not is_cocycle2(self.omega):
                raise AssertionError("assembled twisting table is not a cocycle")
        else:
            self._sampled_cocycle_check(self.omega)

        self.m_omega = extension_lattice(self.q, self.omega, name="M_omega")
        self._res_order_cache: dict = {}
        self._h1_cache: dict = {}
        self.family = self._build_family()
        self.m = self._build_m()

        off_a2 = 0  # A2 summand leads Q, Q leads M_omega, M_omega leads M
        self.u12_m = self._embed_a2(self.a2.u12)
        self.b1_m = self._embed_a2(self.a2.b1)
        self.b2_m = self._embed_a2(self.a2.b2)
        self.g34 = self.group.subgroup([self.group.generator(2),
                                        self.group.generator(3)])
        self.fixed34 = Sublattice(self.m, fixed_sublattice(self.m, self.g34))
        if not (self.fixed34.contains(self.u12_m)
                and self.fixed34.contains(self.b1_m)
                and self.fixed34.contains(self.b2_m)):
            raise AssertionError("relation-module generators must be fixed by <s3, s4>")

    # -- assembly pieces -----------------------------------------------

    def _assemble_twist(self, e12: int, e3: int, e4: int) -> Cocycle2:
        """Q-valued table  e12 c12 + e3 c3 + e4 c4  (each inflated to G)."""
        g = self.group
        elems = g.elements()
        n = g.order
        vals = np.zeros((n, n, self.q.rank), dtype=np.int64)
        off12, r12 = self.q.summand_offset("A2")
        off3, r3 = self.q.summand_offset("K3")
        off4, r4 = self.q.summand_offset("K4")
        i12 = [self.g12.element_index(self.proj12(x)) for x in elems]
        i3 = [self.cyc.element_index(self.proj3(x)) for x in elems]
        i4 = [self.cyc.element_index(self.proj4(x)) for x in elems]
        for a in range(n):
            for b in range(n):
                if e12:
                    vals[a, b, off12:off12 + r12] = e12 * self.c12.values[i12[a], i12[b]]
                if e3:
                    vals[a, b, off3:off3 + r3] = e3 * self.c3.values[i3[a], i3[b]]
                if e4:
                    vals[a, b, off4:off4 + r4] = e4 * self.c3.values[i4[a], i4[b]]
        return Cocycle2(g.full_subgroup(), self.q, vals)

    def _sampled_cocycle_check(self, c: Cocycle2, samples: int = 20000):
        import random
        rng = random.Random(0)
        elems = c.subgroup.elements()
        idx = c.subgroup.element_index
        for _ in range(samples):
            g, h, k = (rng.choice(elems) for _ in range(3))
            lhs = (c.value(h, k).acted(g) - c.value(g * h, k)
                   + c.value(g, h * k) - c.value(g, h))
            if not lhs.is_zero:
                raise AssertionError("sampled cocycle identity failed")

    def twist_variant(self, e12: int, e3: int, e4: int) -> Cocycle2:
        """Public access to alternate coefficient assemblies (for tables)."""
        return self._assemble_twist(e12, e3, e4)

    def _build_family(self) -> tuple[FamilyMember, ...]:
        g = self.group
        s3, s4 = g.generator(2), g.generator(3)
        members: list[tuple[Optional[GroupElement], Subgroup]] = [(None, g.full_subgroup())]
        seen = {members[0][1]}
        for tau12 in self.g12.elements():
            tau = g.element(tau12.exps + (0, 0))
            sub = g.subgroup([tau, s3, s4])
            if self.multiset_family or sub not in seen:
                members.append((tau, sub))
                seen.add(sub)
        out = []
        for tau, sub in members:
            n_h = self.res_order(sub)
            cochain = self._splitting_cochain(sub, n_h)
            out.append(FamilyMember(sub, tau, n_h,
                                    coset_transversal(g, sub), cochain))
        return tuple(out)

    def res_order(self, H: Subgroup) -> int:
        """Order of the twisting class restricted to H (direct search)."""
        if H not in self._res_order_cache:
            self._res_order_cache[H] = cocycle_class_order(restrict_cocycle(self.omega, H))
        return self._res_order_cache[H]

    def v_value(self, H: Subgroup, hbar: GroupElement) -> LatticeElement:
        """v_H(hbar) = sum over the image of H in the rank-2 quotient of
        c12(hbar, .), valued in the relation module."""
        h12 = project_subgroup(H, (0, 1), self.g12)
        if not h12.contains(hbar):
            raise ValueError("argument outside the rank-2 image of H")
        total = self.a2.lattice.zero()
        for k in h12.elements():
            total = total + self.c12.value(hbar, k)
        return total

    def v_cochain(self, H: Subgroup) -> Cochain1:
        """The full table of v_H on the rank-2 image of H."""
        h12 = project_subgroup(H, (0, 1), self.g12)
        rows = [self.v_value(H, hbar).coords for hbar in h12.elements()]
        return Cochain1(h12, self.a2.lattice, rows)

    def _splitting_cochain(self, H: Subgroup, n_h: int) -> Cochain1:
        """f_H(h) = (-w(h), n_H (h - 1)) in M_omega, where w collects the
        partial coboundary witnesses of the three inflated summands:
        dw = n_H * (restricted twisting table)."""
        e12, e3, e4 = self.omega_terms
        p = self.p
        g = self.group
        h12 = project_subgroup(H, (0, 1), self.g12)
        if e12 and n_h % h12.order:
            raise AssertionError("family member order incompatible with its rank-2 image")
        off12, _ = self.q.summand_offset("A2")
        off3, _ = self.q.summand_offset("K3")
        off4, _ = self.q.summand_offset("K4")
        offq, _ = self.m_omega.summand_offset("base")
        offaug, _ = self.m_omega.summand_offset("aug")
        nontriv = [x for x in g.elements() if not x.is_identity]
        aug_index = {x.exps: i for i, x in enumerate(nontriv)}
        rows = []
        t12 = (n_h // h12.order) if (e12 and h12.order) else 0
        for h in H.elements():
            w = np.zeros(self.q.rank, dtype=np.int64)
            if e12:
                vh = self.v_value(H, self.proj12(h))
                w[off12:off12 + self.a2.lattice.rank] += (e12 * t12) * np.array(vh.coords, dtype=np.int64)
            # hat-c_j(s_j^i) = (n_H / p) * i * N_j  satisfies d(hat-c_j) = n_H c_j
            if e3:
                i3 = h.exps[2]
                w[off3] += e3 * (n_h // p) * i3
            if e4:
                i4 = h.exps[3]
                w[off4] += e4 * (n_h // p) * i4
            row = np.zeros(self.m_omega.rank, dtype=np.int64)
            row[offq:offq + self.q.rank] = -w
            if not h.is_identity:
                row[offaug + aug_index[h.exps]] = n_h
            rows.append(row)
        cochain = Cochain1(H, self.m_omega, rows)
        if self.check == "full" and not cochain.is_cocycle():
            raise AssertionError("splitting cochain failed the cocycle identity")
        return cochain

    def _build_m(self) -> GLattice:
        n0 = self.m_omega.rank
        blocks = [(member, len(member.transversal)) for member in self.family]
        total = n0 + sum(size for _, size in blocks)
        acts = []
        for i in range(self.group.rank):
            s = self.group.generator(i)
            a = np.zeros((total, total), dtype=np.int64)
            a[:n0, :n0] = self.m_omega.act_array(s)
            off = n0
            for member, size in blocks:
                H = member.subgroup
                reps = member.transversal
                rep_index = {}
                for col, rep in enumerate(reps):
                    for h in H.elements():
                        rep_index[(rep * h).exps] = col
                for col, rep in enumerate(reps):
                    target = s * rep
                    k = rep_index[target.exps]
                    rep_k = reps[k]
                    # s * rep = rep_k * h with h in H
                    hh = rep_k.inverse() * target
                    fcol = member.cochain.values[H.element_index(hh)]
                    a[:n0, off + col] = self.m_omega.act_array(rep_k) @ fcol
                    a[off + k, off + col] = 1
                off += size
            acts.append(a)
        labels = list(self.m_omega.labels)
        layout = [("base", 0, n0)]
        off = n0
        for member, size in blocks:
            labels.extend(f"{member.block_name}.u[{rep}]" for rep in member.transversal)
            layout.append((member.block_name, off, size))
            off += size
        m = GLattice(self.group, acts, labels=labels, name="M", check=True)
        m.summands = tuple(layout)
        return m

    def _embed_a2(self, x: LatticeElement) -> LatticeElement:
        coords = [0] * self.m.rank
        coords[:self.a2.lattice.rank] = list(x.coords)
        return self.m.element(coords)

    # -- residues --------------------------------------------------------

    def pi(self, x: LatticeElement) -> int:
        """Augmentation mod p of the u12 coefficient of a relation-module
        element (or of the leading summand of a Q / M_omega / M element
        supported there)."""
        if x.lattice is self.a2.lattice:
            return self.a2.u_coefficient_residue(x)
        raise ValueError("pi expects an element of the rank-2 relation module")

    def a2_part(self, v) -> LatticeElement:
        coords = v.coords if isinstance(v, LatticeElement) else tuple(v)
        return self.a2.lattice.element(coords[:self.a2.lattice.rank])

    def pi_prime(self, v) -> int:
        """pi of the relation-module coordinates of an s3,s4-fixed vector."""
        elt = v if isinstance(v, LatticeElement) else self.m.element(v)
        if elt.lattice is not self.m:
            raise ValueError("pi' expects an element of the enlarged lattice")
        arr = np.array(elt.coords, dtype=np.int64)
        for i in (2, 3):
            if not np.array_equal(self.m.act_array(self.group.generator(i)) @ arr, arr):
                raise ValueError("pi' is only defined on the s3,s4-fixed part")
        return self.pi(self.a2_part(elt))

    def commutator_u(self, mbar: Sequence[int], nbar: Sequence[int]) -> LatticeElement:
        """Additive commutator element in the relation module."""
        return self.a2.commutator(mbar, nbar)

    def commutator_in_m(self, mbar, nbar) -> LatticeElement:
        return self._embed_a2(self.commutator_u(mbar, nbar))

    def member_for(self, H: Subgroup) -> FamilyMember:
        for member in self.family:
            if member.subgroup == H:
                return member
        raise KeyError("subgroup is not in the splitting family")

    # -- cohomology sweeps (memoized) -------------------------------------

    def h1_invariants(self, which: str, H: Subgroup) -> FinAbInvariants:
        key = (which, H)
        if key not in self._h1_cache:
            lattice = {"m_omega": self.m_omega, "m": self.m, "q": self.q}[which]
            self._h1_cache[key] = h1(lattice, H, with_generators=False).invariants
        return self._h1_cache[key]

    def expected_h1_order(self, H: Subgroup) -> int:
        """|H| / max(|H12|, |H3|, |H4|), the predicted order for M_omega."""
        h12, h3, h4 = quotient_images(H)
        return H.order // max(h12.order, h3.order, h4.order)


def build_context(p: int = 3, *, multiset_family: bool = False,
                  alt_u12_sign: bool = False,
                  omega_terms: tuple[int, int, int] = (1, -1, -1),
                  check: str = "full") -> Context:
    """Build the complete verification context for an odd prime."""
    return Context(p, multiset_family=multiset_family,
                   alt_u12_sign=alt_u12_sign, omega_terms=omega_terms,
                   check=check)


def family_overview(ctx: Context) -> list[tuple[Subgroup, int]]:
    """Each family member with the order of its restricted class."""
    return [(member.subgroup, member.res_order) for member in ctx.family]


def splitting_class_order(ctx: Context, member: FamilyMember) -> int:
    """Order of the class of the member's splitting cocycle in
    H^1(H, M_omega): the least k with k f_H a coboundary (h - 1) x."""
    H = member.subgroup
    gens = list(H.basis)
    n = ctx.m_omega.rank
    eye = np.eye(n, dtype=np.int64)
    stack = np.vstack([ctx.m_omega.act_array(h) - eye for h in gens])
    from . import _matops
    p = ctx.p
    k = 1
    while k <= H.order:
        rhs = np.concatenate([k * member.cochain.values[H.element_index(h)] for h in gens])
        if _matops.solve_columns(stack.tolist(), n, rhs.tolist()) is not None:
            return k
        k *= p
    raise AssertionError("splitting cocycle order must divide the group order")
