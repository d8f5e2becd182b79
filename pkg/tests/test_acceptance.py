"""Acceptance criteria, one test per criterion.

Each test prints a single pass/fail line; every comparison is exact and
the stated runtime targets are asserted where given.  The optional p = 5
subset is gated behind LATCOH_RUN_P5=1.
"""

import itertools
import json
import os
import random
import subprocess
import sys
import time

import numpy as np
import pytest

from latcoh import all_subgroups, h1, make_group
from latcoh.construction import build_context
from latcoh.degeneracy import DegeneracyQuery, degeneracy_witness
from latcoh.groups import quotient_images
from latcoh.intlinalg import (IntMatrix, hnf, lattice_membership, snf,
                              solve_integer)
from latcoh.verify import run_checks

from oracles import h1_finite_oracle, random_glattice


def _report(number, name, passed, extra=""):
    status = "PASS" if passed else "FAIL"
    print(f"criterion {number:>2} ({name}): {status}" + (f" [{extra}]" if extra else ""))
    assert passed, f"criterion {number} ({name}) failed"


def test_criterion_01_h1_order_table():
    start = time.perf_counter()
    ctx = build_context(3)
    mismatches = []
    for H in all_subgroups(ctx.group):
        inv = ctx.h1_invariants("m_omega", H)
        n = ctx.expected_h1_order(H)
        expect = (n,) if n > 1 else ()
        if inv.factors != expect or inv.free_rank:
            mismatches.append(H.label())
    elapsed = time.perf_counter() - start
    _report(1, "twisted-extension cohomology table",
            not mismatches and elapsed <= 300,
            f"212 rows, {elapsed:.1f}s")


def test_criterion_02_trivialization():
    start = time.perf_counter()
    ctx = build_context(3)
    cases = {}
    bad = []
    for K in all_subgroups(ctx.group):
        inv = ctx.h1_invariants("m", K)
        if not inv.is_trivial:
            bad.append(K.label())
        n = ctx.expected_h1_order(K)
        if n == 1:
            tag = "already-trivial"
        elif K.order == 81:
            tag = "whole-group"
        elif K.order == 27 and n == 3:
            tag = "case-1"
        elif K.order == 27 and n == 9:
            tag = "case-2"
        elif K.order == 9 and n == 3:
            tag = "case-3"
        else:
            tag = "other"
        cases[tag] = cases.get(tag, 0) + 1
    elapsed = time.perf_counter() - start
    _report(2, "enlarged lattice has trivial H^1",
            not bad and cases.get("other", 0) == 0 and elapsed <= 300,
            f"cases {sorted(cases.items())}, {elapsed:.1f}s")


def test_criterion_03_commutator_residues(ctx):
    sign = 1 if ctx.alt_u12_sign else -1  # documented global sign
    ok = True
    for mbar in itertools.product(range(3), repeat=2):
        for nbar in itertools.product(range(3), repeat=2):
            det = (mbar[0] * nbar[1] - mbar[1] * nbar[0]) % 3
            ok &= ctx.pi(ctx.commutator_u(mbar, nbar)) == (sign * det) % 3
    _report(3, "commutator residues", ok, f"81 pairs, global sign {sign}")


def test_criterion_04_v_residues(ctx):
    from latcoh.groups import project_subgroup
    ok = True
    total = 0
    for member in ctx.family:
        h12 = project_subgroup(member.subgroup, (0, 1), ctx.g12)
        for hbar in h12.elements():
            ok &= ctx.pi(ctx.v_value(member.subgroup, hbar)) == 0
            total += 1
    _report(4, "rank-2 witness residues vanish", ok, f"{total} values")


def test_criterion_05_splitting_cochains(ctx):
    offaug, naug = ctx.m_omega.summand_offset("aug")
    nontriv = [x for x in ctx.group.elements() if not x.is_identity]
    index = {x.exps: i for i, x in enumerate(nontriv)}
    ok = True
    pairs = 0
    for member in ctx.family:
        H = member.subgroup
        ok &= member.cochain.is_cocycle()
        pairs += H.order ** 2
        for h in H.elements():
            aug = member.cochain.values[H.element_index(h), offaug:]
            expect = np.zeros(naug, dtype=np.int64)
            if not h.is_identity:
                expect[index[h.exps]] = member.res_order
            ok &= bool(np.array_equal(aug, expect))
    _report(5, "family splitting cocycles", ok, f"{pairs} identity pairs")


def test_criterion_06_nondegeneracy(ctx):
    start = time.perf_counter()
    s1, s2 = ctx.group.generator(0), ctx.group.generator(1)
    result = degeneracy_witness(
        DegeneracyQuery(ctx.m, ctx.g34, (s1, s2), ctx.u12_m), fixed=ctx.fixed34)
    residue = ctx.pi_prime(ctx.u12_m)
    elapsed = time.perf_counter() - start
    ok = (not result.found) and result.certificate is not None \
        and residue == 1 and elapsed <= 120
    _report(6, "double non-degeneracy certificate", ok,
            f"residue {residue}, modulus {result.certificate.modulus}, {elapsed:.2f}s")


def test_criterion_07_exponent_table(ctx):
    from latcoh.cohomology import cocycle_class_order
    ok = True
    for i in range(9):
        c = ctx.twist_variant(i + 1, -i, -i)
        order = cocycle_class_order(c)
        expect = 3 if (i + 1) % 3 == 0 else 9
        ok &= order == expect
    _report(7, "twisted-class exponent table", ok, "i = 0..8")


def test_criterion_08_restriction_orders(ctx):
    from latcoh.cohomology import cocycle_class_order, restrict_cocycle
    ok = True
    for E in all_subgroups(ctx.g12):
        if E.is_trivial:
            continue
        ok &= cocycle_class_order(restrict_cocycle(ctx.c12, E)) == E.order
    ok &= cocycle_class_order(ctx.c3) == 3  # both cyclic components share it
    _report(8, "restricted class orders", ok, "6 subgroups + carries")


def test_criterion_09_oracle_equivalence(ctx):
    rng = random.Random(512)
    s1, s2 = ctx.group.generator(0), ctx.group.generator(1)
    ok = True
    for _ in range(20):
        a0 = ctx.fixed34.to_ambient([rng.randint(-3, 3) for _ in range(ctx.fixed34.rank)])
        b0 = ctx.fixed34.to_ambient([rng.randint(-3, 3) for _ in range(ctx.fixed34.rank)])
        u = (a0.acted(s1) - a0) + (b0.acted(s2) - b0)
        res = degeneracy_witness(DegeneracyQuery(ctx.m, ctx.g34, (s1, s2), u),
                                 fixed=ctx.fixed34)
        ok &= res.found
        if res.found:
            a, b = res.witness
            ok &= (a.acted(s1) - a) + (b.acted(s2) - b) == u
    checked = 0
    while checked < 20:
        p = rng.choice([2, 2, 3])
        rank = rng.randint(1, 3)
        group = make_group(p, rank)
        lat = random_glattice(rng, group, 8 if p == 2 else 5)
        H = rng.choice(all_subgroups(group))
        if H.order ** lat.rank > 3 ** 11:
            continue
        expected = h1_finite_oracle(lat, H)
        got = h1(lat, H).invariants
        ok &= (got.factors == expected and got.free_rank == 0)
        checked += 1
    _report(9, "oracle equivalence", ok, "20 witnesses + 20 lattices")


def test_criterion_10_linalg_property_suite():
    start = time.perf_counter()
    rng = random.Random(1000)
    ok = True
    for _ in range(1000):
        m = rng.randint(1, 6)
        n = rng.randint(1, 6)
        a = IntMatrix.from_rows(
            [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)], n)
        h, u = hnf(a)
        ok &= (u @ a == h) and u.is_unimodular()
        s, us, vs = snf(a)
        ok &= (us @ a @ vs == s) and us.is_unimodular() and vs.is_unimodular()
        diag = [s.entries[i][i] for i in range(min(m, n))]
        nz = [d for d in diag if d]
        ok &= all(x > 0 for x in nz)
        ok &= all(y % x == 0 for x, y in zip(nz, nz[1:]))
        b = [rng.randint(-9, 9) for _ in range(m)]
        x = solve_integer(a, b)
        member = lattice_membership(a.transpose(), b)
        ok &= (x is not None) == member.member
        if x is not None:
            ok &= a.apply(x) == tuple(b)
    elapsed = time.perf_counter() - start
    _report(10, "normal-form property suite", ok and elapsed <= 60,
            f"1000 instances, {elapsed:.1f}s")


def test_criterion_11_deterministic_reports(tmp_path):
    start = time.perf_counter()
    outputs = []
    for jobs in ("1", "2"):
        out = tmp_path / f"report-jobs{jobs}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "latcoh.cli", "verify", "--all", "--p", "3",
             "--jobs", jobs, "--out", str(out)],
            capture_output=True, text=True, timeout=1800)
        assert proc.returncode == 0, proc.stderr[-2000:]
        outputs.append(out.read_bytes())
    elapsed = time.perf_counter() - start
    _report(11, "byte-identical reports across parallelism",
            outputs[0] == outputs[1], f"{len(outputs[0])} bytes, {elapsed:.0f}s")


@pytest.mark.skipif(os.environ.get("LATCOH_RUN_P5") != "1",
                    reason="long-running p = 5 subset; set LATCOH_RUN_P5=1")
def test_criterion_12_p5_subset():
    start = time.perf_counter()
    ctx = build_context(5, check="light")
    rng = random.Random(5)
    subs = all_subgroups(ctx.group)
    sample = rng.sample(subs, 100)
    ok = True
    for H in sample:
        inv = ctx.h1_invariants("m_omega", H)
        n = ctx.expected_h1_order(H)
        expect = (n,) if n > 1 else ()
        ok &= (inv.factors == expect and inv.free_rank == 0)
    s1, s2 = ctx.group.generator(0), ctx.group.generator(1)
    res = degeneracy_witness(
        DegeneracyQuery(ctx.m, ctx.g34, (s1, s2), ctx.u12_m), fixed=ctx.fixed34)
    ok &= (not res.found) and ctx.pi_prime(ctx.u12_m) == 1
    elapsed = time.perf_counter() - start
    _report(12, "p = 5 sampled subset", ok and elapsed <= 7200,
            f"{elapsed:.0f}s")
