"""Named verification checks over a built context.

Each check recomputes one statement of the construction from scratch and
returns a pass/fail record with its supporting data.  Checks are
registered under a descriptive id plus a short alias; `run_checks` runs a
selection (default: all) and the two subgroup sweeps can fan out over
worker processes without affecting the result.
"""

from __future__ import annotations

import itertools
import multiprocessing
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import _matops
from .cohomology import (Cochain1, cocycle_class_order, extension_lattice,
                         h1, restrict_cocycle, solve_coboundary)
from .construction import Context, splitting_class_order
from .groups import (GroupRingElement, Subgroup, all_subgroups, augmentation,
                     norm_element, project_subgroup, quotient_images)
from .intlinalg import FinAbInvariants, IntMatrix, lattice_membership
from .lattices import fixed_sublattice


@dataclass
class CheckResult:
    check_id: str
    alias: str
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0


# ---------------------------------------------------------------------------
# sweep helpers (parallel-safe)
# ---------------------------------------------------------------------------

_WORKER_CTX: Optional[Context] = None
_WORKER_WHICH: str = ""


def _sweep_worker(index_and_sub):
    index, H = index_and_sub
    inv = _WORKER_CTX.h1_invariants(_WORKER_WHICH, H)
    return index, (inv.factors, inv.free_rank)


def _h1_sweep(ctx: Context, which: str, jobs: int) -> list[tuple[Subgroup, FinAbInvariants]]:
    subs = all_subgroups(ctx.group)
    if jobs <= 1:
        return [(H, ctx.h1_invariants(which, H)) for H in subs]
    global _WORKER_CTX, _WORKER_WHICH
    _WORKER_CTX, _WORKER_WHICH = ctx, which
    try:
        mp = multiprocessing.get_context("fork")
        with mp.Pool(jobs) as pool:
            results = pool.map(_sweep_worker, list(enumerate(subs)), chunksize=8)
    finally:
        _WORKER_CTX, _WORKER_WHICH = None, ""
    out: list = [None] * len(subs)
    for index, (factors, free) in sorted(results):
        inv = FinAbInvariants(tuple(factors), free)
        ctx._h1_cache[(which, subs[index])] = inv
        out[index] = (subs[index], inv)
    return out


def _invariants_str(inv: FinAbInvariants) -> str:
    return str(inv)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_a2_relations(ctx: Context, jobs: int) -> CheckResult:
    """Generator/relation structure of the rank-2 relation module."""
    gens = ctx.a2
    g12 = ctx.g12
    s1, s2 = g12.generators
    p = ctx.p
    n1 = GroupRingElement(g12, {s1 ** t: 1 for t in range(p)})
    n2 = GroupRingElement(g12, {s2 ** t: 1 for t in range(p)})
    ok = True
    ok &= (gens.b1.acted(s1) - gens.b1).is_zero
    ok &= (gens.b2.acted(s2) - gens.b2).is_zero
    w = gens.relation_u12
    ok &= (gens.b1.acted(s2) - gens.b1) == w.ring_applied(n1)
    ok &= (-(gens.b2.acted(s1) - gens.b2)) == w.ring_applied(n2)
    # every basis vector of the module is a group-ring combination of the
    # three generators, and the expression round-trips
    recon_ok = True
    for i in range(gens.lattice.rank):
        x = gens.lattice.basis_element(i)
        alpha, beta, gamma = gens.express(x)
        y = (gens.u12.ring_applied(alpha) + gens.b1.ring_applied(beta)
             + gens.b2.ring_applied(gamma))
        recon_ok &= (y == x)
    ok &= recon_ok
    return CheckResult("a2-relations", "lemma11",
                       "relation-module generators and relations", bool(ok),
                       {"round_trip": recon_ok, "sign": gens.sign})


def check_commutator_residues(ctx: Context, jobs: int) -> CheckResult:
    """Residues of all commutator elements and the table identity."""
    p = ctx.p
    sign = -1 if not ctx.alt_u12_sign else 1  # residue of u[(1,0),(0,1)]
    mismatches = []
    identity_ok = True
    for mbar in itertools.product(range(p), repeat=2):
        for nbar in itertools.product(range(p), repeat=2):
            u = ctx.commutator_u(mbar, nbar)
            det = (mbar[0] * nbar[1] - mbar[1] * nbar[0]) % p
            if ctx.pi(u) != (sign * det) % p:
                mismatches.append((mbar, nbar))
            a = ctx.g12.element(mbar)
            b = ctx.g12.element(nbar)
            if ctx.c12.value(a, b) - ctx.c12.value(b, a) != u:
                identity_ok = False
    base = ctx.commutator_u((1, 0), (0, 1))
    unit_ok = base == sign * ctx.a2.u12
    return CheckResult(
        "commutator-residues", "l2",
        "commutator residues equal the exponent determinant (global sign)",
        not mismatches and identity_ok and unit_ok,
        {"pairs": p ** 4, "global_sign": sign, "table_identity": identity_ok,
         "mismatches": mismatches[:5]})


def check_family_v_vanishing(ctx: Context, jobs: int) -> CheckResult:
    """The partial-coboundary witnesses of the rank-2 part have zero residue,
    and their coboundary is |H12| times the restricted table."""
    rows = []
    ok = True
    for member in ctx.family:
        H = member.subgroup
        h12 = project_subgroup(H, (0, 1), ctx.g12)
        vtab = ctx.v_cochain(H)
        residues = [ctx.pi(vtab(hbar)) for hbar in h12.elements()]
        ok &= all(r == 0 for r in residues)
        from .cohomology import coboundary1
        delta = coboundary1(vtab)
        target = h12.order * restrict_cocycle(ctx.c12, h12)
        ok &= np.array_equal(delta.values, target.values)
        rows.append({"subgroup": H.label(), "residues": residues})
    return CheckResult("family-v-vanishing", "lemma3",
                       "rank-2 witness cochains have zero residue", bool(ok),
                       {"members": rows})


def check_family_splitting(ctx: Context, jobs: int) -> CheckResult:
    """Splitting cocycles: identity, augmentation component, class order,
    and the one-step splitting inside the enlarged lattice."""
    rows = []
    ok = True
    offaug, _ = ctx.m_omega.summand_offset("aug")
    nontriv = [x for x in ctx.group.elements() if not x.is_identity]
    aug_index = {x.exps: i for i, x in enumerate(nontriv)}
    for member in ctx.family:
        H = member.subgroup
        f = member.cochain
        cocycle_ok = f.is_cocycle()
        comp_ok = True
        for h in H.elements():
            row = f.values[H.element_index(h)]
            aug = row[offaug:]
            expect = np.zeros_like(aug)
            if not h.is_identity:
                expect[aug_index[h.exps]] = member.res_order
            comp_ok &= bool(np.array_equal(aug, expect))
        order = splitting_class_order(ctx, member)
        order_ok = order == H.order // member.res_order
        # (f_H(h), 0) = (h - 1) (0, u_H) at the identity coset of the block
        off_block, _ = ctx.m.summand_offset(member.block_name)
        col = np.zeros(ctx.m.rank, dtype=np.int64)
        col[off_block] = 1  # identity-coset basis vector
        split_ok = True
        n0 = ctx.m_omega.rank
        for h in H.elements():
            image = ctx.m.act_array(h) @ col - col
            expected = np.zeros(ctx.m.rank, dtype=np.int64)
            expected[:n0] = f.values[H.element_index(h)]
            split_ok &= bool(np.array_equal(image, expected))
        ok &= cocycle_ok and comp_ok and order_ok and split_ok
        rows.append({"subgroup": H.label(), "res_order": member.res_order,
                     "cocycle": cocycle_ok, "aug_component": comp_ok,
                     "class_order": order, "split": split_ok})
    return CheckResult("family-splitting", "lemma2",
                       "family splitting cocycles verified", bool(ok),
                       {"members": rows})


def check_restriction_orders(ctx: Context, jobs: int) -> CheckResult:
    """Class orders of the canonical tables on small groups."""
    rows = []
    ok = True
    for E in all_subgroups(ctx.g12):
        if E.is_trivial:
            continue
        k = cocycle_class_order(restrict_cocycle(ctx.c12, E))
        ok &= (k == E.order)
        rows.append({"subgroup": E.label(), "order": E.order, "class_order": k})
    carry = cocycle_class_order(ctx.c3)
    ok &= (carry == ctx.p)
    return CheckResult("restriction-orders", "lemma6",
                       "restricted class orders match subgroup orders",
                       bool(ok), {"rank2": rows, "carry_order": carry})


def check_order_dual_routes(ctx: Context, jobs: int) -> CheckResult:
    """For every subgroup: direct class-order search, the image-order
    formula, and |H| / |H^1(H, M_omega)| agree."""
    sweep = _h1_sweep(ctx, "m_omega", jobs)
    rows = []
    ok = True
    for H, inv in sweep:
        direct = ctx.res_order(H)
        formula = max(q.order for q in quotient_images(H))
        h1_order = inv.order()
        via_h1 = H.order // h1_order if h1_order else None
        good = direct == formula == via_h1
        ok &= good
        if not good:
            rows.append({"subgroup": H.label(), "direct": direct,
                         "formula": formula, "via_h1": via_h1})
    return CheckResult("order-dual-routes", "l4",
                       "restricted class order: three routes agree on every subgroup",
                       bool(ok), {"subgroups": len(sweep), "disagreements": rows})


def check_h1_order_table(ctx: Context, jobs: int) -> CheckResult:
    """Full table: H^1(H, M_omega) is cyclic of the predicted order."""
    sweep = _h1_sweep(ctx, "m_omega", jobs)
    rows = []
    ok = True
    for H, inv in sweep:
        n = ctx.expected_h1_order(H)
        expect = (n,) if n > 1 else ()
        good = inv.factors == expect and inv.free_rank == 0
        ok &= good
        h12, h3, h4 = quotient_images(H)
        rows.append({"subgroup": H.label(), "order": H.order,
                     "images": [h12.order, h3.order, h4.order],
                     "computed": _invariants_str(inv), "expected_order": n,
                     "match": good})
    return CheckResult("h1-order-table", "c1",
                       "first cohomology of the twisted extension matches "
                       "the image-order formula on every subgroup",
                       bool(ok), {"rows": rows})


def _case_tag(ctx: Context, K: Subgroup, n: int) -> str:
    p = ctx.p
    if n == 1:
        return "already-trivial"
    if K.order == ctx.group.order:
        return "whole-group"
    if K.order == p ** 3 and n == p:
        return "case-1"
    if K.order == p ** 3 and n == p * p:
        return "case-2"
    if K.order == p * p and n == p:
        return "case-3"
    return "other"


def check_trivialization(ctx: Context, jobs: int) -> CheckResult:
    """The enlarged lattice has vanishing H^1 for every subgroup."""
    sweep = _h1_sweep(ctx, "m", jobs)
    rows = []
    ok = True
    for K, inv in sweep:
        n = ctx.expected_h1_order(K)
        good = inv.is_trivial
        ok &= good
        rows.append({"subgroup": K.label(), "order": K.order,
                     "case": _case_tag(ctx, K, n),
                     "computed": _invariants_str(inv), "trivial": good})
    counts: dict[str, int] = {}
    for row in rows:
        counts[row["case"]] = counts.get(row["case"], 0) + 1
    return CheckResult("trivialization", "lemma7",
                       "the enlarged lattice has vanishing first cohomology "
                       "on every subgroup", bool(ok),
                       {"rows": rows, "case_counts": counts})


def check_fixed_part_shape(ctx: Context, jobs: int) -> CheckResult:
    """Augmentation-ideal component of every s3,s4-fixed basis vector lies
    in N34 Z[G12] + p Z[G], with the induced augmentation relation."""
    g = ctx.group
    p = ctx.p
    elems = g.elements()
    n = g.order
    g12_part = [e for e in elems if e.exps[2] == 0 and e.exps[3] == 0]
    g34 = ctx.g34
    norm34 = norm_element(g34)
    # span rows inside Z[G]: N34 * t for t in the rank-2 part, and p * g
    span_rows = []
    for t in g12_part:
        row = [0] * n
        for h in g34.elements():
            row[g.element_index(t * h)] = 1
        span_rows.append(row)
    weak_rows = span_rows + [[p if j == i else 0 for j in range(n)] for i in range(n)]
    # strong variant: p * (g - 1) instead of p * g
    strong_rows = list(span_rows)
    for e in elems:
        if e.is_identity:
            continue
        row = [0] * n
        row[g.element_index(e)] = p
        row[g.element_index(g.identity)] = -p
        strong_rows.append(row)
    offaug, naug = ctx.m_omega.summand_offset("aug")
    nontriv = [e for e in elems if not e.is_identity]
    ok = True
    strong_all = True
    relation_ok = True
    rows = []
    weak = IntMatrix.from_rows(weak_rows, n)
    strong = IntMatrix.from_rows(strong_rows, n)
    for basis_row in ctx.fixed34.basis.entries:
        y = basis_row[offaug:offaug + naug]
        vec = [0] * n
        total = 0
        for coeff, e in zip(y, nontriv):
            vec[g.element_index(e)] += coeff
            total += coeff
        vec[0] -= total  # (g - 1) basis carries -1 at the identity
        res = lattice_membership(weak, vec)
        ok &= res.member
        strong_res = lattice_membership(strong, vec)
        strong_all &= strong_res.member
        if res.member:
            coeffs = res.coeffs
            y1 = coeffs[:len(g12_part)]
            y2 = [-c for c in coeffs[len(g12_part):]]
            relation_ok &= (sum(y2) == p * sum(y1))
        rows.append({"weak": res.member, "strong": strong_res.member})
    return CheckResult("fixed-part-shape", "l6",
                       "fixed vectors have norm-shaped augmentation components",
                       bool(ok and relation_ok),
                       {"vectors": len(rows), "strong_variant_all": strong_all,
                        "augmentation_relation": relation_ok})


def check_residue_extension(ctx: Context, jobs: int) -> CheckResult:
    """The residue map on the fixed part: kills shifted vectors, is
    action-invariant, and extends the relation-module residue."""
    g = ctx.group
    kills_ok = True
    for j in (0, 1):
        s = g.generator(j)
        for elt in ctx.fixed34.basis_elements():
            shifted = elt.acted(s) - elt
            kills_ok &= (ctx.pi_prime(shifted) == 0)
    invariant_ok = True
    for i in range(4):
        s = g.generator(i)
        for elt in ctx.fixed34.basis_elements():
            invariant_ok &= (ctx.pi_prime(elt.acted(s)) == ctx.pi_prime(elt))
    extends_ok = (ctx.pi_prime(ctx.u12_m) == ctx.pi(ctx.a2.u12)
                  and ctx.pi_prime(ctx.b1_m) == 0
                  and ctx.pi_prime(ctx.b2_m) == 0)
    ok = kills_ok and invariant_ok and extends_ok
    return CheckResult("residue-extension", "l5",
                       "fixed-part residue is an action-invariant extension",
                       bool(ok), {"kills_shifts": kills_ok,
                                  "action_invariant": invariant_ok,
                                  "extends": extends_ok})


def check_nondegeneracy(ctx: Context, jobs: int) -> CheckResult:
    """Double certificate: no witness for u12, and its residue is 1."""
    from .degeneracy import DegeneracyQuery, degeneracy_witness
    s1, s2 = ctx.group.generator(0), ctx.group.generator(1)
    query = DegeneracyQuery(ctx.m, ctx.g34, (s1, s2), ctx.u12_m)
    result = degeneracy_witness(query, fixed=ctx.fixed34)
    residue = ctx.pi_prime(ctx.u12_m)
    ok = (not result.found) and residue == 1
    details = {"witness_found": result.found, "residue": residue}
    if result.certificate is not None:
        details["certificate_modulus"] = result.certificate.modulus
        details["certificate_functional_support"] = sum(
            1 for v in result.certificate.functional if v)
    return CheckResult("nondegeneracy", "p1",
                       "no degeneracy witness for u12 and residue 1",
                       bool(ok), details)


def check_exponent_table(ctx: Context, jobs: int) -> CheckResult:
    """Class order of (i+1) c12 - i c3 - i c4 over the whole group:
    p when p | i+1, else p^2; dual route through the twisted extension."""
    p = ctx.p
    e12, e3, e4 = ctx.omega_terms
    rows = []
    ok = True
    for i in range(p * p):
        c = ctx.twist_variant((i + 1) * e12, i * e3, i * e4)
        direct = cocycle_class_order(c)
        ext = extension_lattice(ctx.q, c)
        inv = h1(ext, ctx.group.full_subgroup(), with_generators=False).invariants
        h1_order = inv.order()
        via_h1 = ctx.group.order // h1_order if h1_order else None
        expect = p if (i + 1) % p == 0 else p * p
        good = direct == expect and via_h1 == expect
        ok &= good
        rows.append({"i": i, "direct": direct, "via_extension": via_h1,
                     "expected": expect, "match": good})
    return CheckResult("exponent-table", "exp-table",
                       "twisted-class exponents follow the mod-p pattern",
                       bool(ok), {"rows": rows})


def check_degeneracy_scan(ctx: Context, jobs: int) -> CheckResult:
    """Full noncyclic-pair scan plus the control build without the rank-2
    term; records both outcomes."""
    from .construction import build_context
    from .degeneracy import DegeneracyQuery, degeneracy_witness, is_degenerate_matrix
    scan = is_degenerate_matrix(ctx)
    control = build_context(ctx.p, multiset_family=ctx.multiset_family,
                            alt_u12_sign=ctx.alt_u12_sign,
                            omega_terms=(0, 1, 1), check=ctx.check)
    s1, s2 = control.group.generator(0), control.group.generator(1)
    control_witness = degeneracy_witness(
        DegeneracyQuery(control.m, control.g34, (s1, s2), control.u12_m),
        fixed=control.fixed34)
    ok = (not scan.degenerate) and scan.shortcut_zero == scan.degenerate
    return CheckResult("degeneracy-scan", "phi",
                       "pairwise degeneracy scan agrees with the shortcut",
                       bool(ok),
                       {"pairs": len(scan.table), "degenerate": scan.degenerate,
                        "control_witness_found": control_witness.found})


CHECKS: list[tuple[str, str, Callable[[Context, int], CheckResult]]] = [
    ("a2-relations", "lemma11", check_a2_relations),
    ("commutator-residues", "l2", check_commutator_residues),
    ("family-v-vanishing", "lemma3", check_family_v_vanishing),
    ("family-splitting", "lemma2", check_family_splitting),
    ("restriction-orders", "lemma6", check_restriction_orders),
    ("order-dual-routes", "l4", check_order_dual_routes),
    ("h1-order-table", "c1", check_h1_order_table),
    ("trivialization", "lemma7", check_trivialization),
    ("fixed-part-shape", "l6", check_fixed_part_shape),
    ("residue-extension", "l5", check_residue_extension),
    ("nondegeneracy", "p1", check_nondegeneracy),
    ("exponent-table", "exp-table", check_exponent_table),
    ("degeneracy-scan", "phi", check_degeneracy_scan),
]

_BY_ID = {}
for _cid, _alias, _fn in CHECKS:
    _BY_ID[_cid] = (_cid, _alias, _fn)
    _BY_ID[_alias] = (_cid, _alias, _fn)


def known_check_ids() -> list[str]:
    return [cid for cid, _, _ in CHECKS]


def resolve_check(name: str):
    if name not in _BY_ID:
        raise KeyError(f"unknown check id {name!r}; known: "
                       + ", ".join(known_check_ids()))
    return _BY_ID[name]


def run_checks(ctx: Context, ids: Optional[Sequence[str]] = None,
               jobs: int = 1, progress: Optional[Callable[[CheckResult], None]] = None
               ) -> list[CheckResult]:
    selected = []
    seen = set()
    for name in (ids if ids else known_check_ids()):
        cid, alias, fn = resolve_check(name)
        if cid not in seen:
            selected.append((cid, alias, fn))
            seen.add(cid)
    out = []
    for cid, alias, fn in selected:
        start = time.perf_counter()
        result = fn(ctx, jobs)
        result.seconds = time.perf_counter() - start
        out.append(result)
        if progress is not None:
            progress(result)
    return out
