"""G-lattice constructions, the relation module, sublattices."""

import random

import numpy as np
import pytest

from latcoh import (GroupRingElement, IntMatrix, a2_generators,
                    augmentation_ideal_lattice, direct_sum, fixed_sublattice,
                    ih_sublattice, inflate_lattice, lattice_membership,
                    make_group, norm_element, permutation_lattice,
                    regular_lattice, relation_module, trivial_lattice)
from latcoh.groups import projection_hom
from latcoh.intlinalg import saturation_is_full
from latcoh.lattices import GLattice, LatticeHom, Sublattice, coset_transversal

from oracles import MonomialModel


def test_regular_and_trivial():
    g12 = make_group(3, 2)
    reg = regular_lattice(g12)
    assert reg.rank == 9
    for i in range(2):
        a = np.asarray(reg.action(i).to_lists())
        assert sorted(a.sum(axis=0).tolist()) == [1] * 9  # permutation matrix
        assert np.array_equal(np.linalg.matrix_power(a, 3), np.eye(9))
    triv = trivial_lattice(g12)
    assert triv.rank == 1
    assert triv.action(0) == IntMatrix.identity(1)


def test_permutation_lattice():
    g = make_group(3, 4)
    full = permutation_lattice(g, g.full_subgroup())
    assert full.rank == 1
    regular = permutation_lattice(g, g.trivial_subgroup())
    assert regular.rank == 81
    g34 = g.subgroup([g.generator(2), g.generator(3)])
    cosets = permutation_lattice(g, g34)
    assert cosets.rank == 9
    with pytest.raises(ValueError):
        permutation_lattice(g, g34, transversal=tuple(g.elements())[:9])


def test_augmentation_ideal_action_example():
    # s1 * (s1^2 - 1) = 1 - s1 = -(s1 - 1)
    c = make_group(3, 1)
    lat = augmentation_ideal_lattice(c)
    assert lat.rank == 2
    s = c.generator(0)
    v = lat.element([0, 1])          # the basis vector (s^2 - 1)
    image = v.acted(s)
    assert image == lat.element([-1, 0])
    g = make_group(3, 4)
    assert augmentation_ideal_lattice(g).rank == 80


def test_relation_module_ranks():
    g12 = make_group(3, 2)
    rm = relation_module(g12)
    assert rm.lattice.rank == 10
    assert saturation_is_full(rm.basis)
    c = make_group(3, 1)
    rmc = relation_module(c)
    assert rmc.lattice.rank == 1
    assert sorted(rmc.basis.entries[0]) == [1, 1, 1]  # the norm times d

    # composing inclusion with the boundary map gives zero: check that the
    # image of every kernel basis vector maps to zero in the ideal
    amb = rm.ambient
    n = g12.order
    for row in rm.basis.entries:
        total = {}
        for col, coeff in enumerate(row):
            if not coeff:
                continue
            block, j = divmod(col, n)
            gelt = g12.elements()[j]
            s = g12.generator(block)
            for target, c2 in (((gelt * s), coeff), (gelt, -coeff)):
                total[target.exps] = total.get(target.exps, 0) + c2
        assert all(v == 0 for v in total.values())


def test_a2_generator_relations():
    g12 = make_group(3, 2)
    gens = a2_generators(g12)
    s1, s2 = g12.generators
    n1 = GroupRingElement(g12, {s1 ** t: 1 for t in range(3)})
    n2 = GroupRingElement(g12, {s2 ** t: 1 for t in range(3)})
    assert (gens.b1.acted(s1) - gens.b1).is_zero
    assert (gens.b2.acted(s2) - gens.b2).is_zero
    assert gens.b1.acted(s2) - gens.b1 == gens.relation_u12.ring_applied(n1)
    assert -(gens.b2.acted(s1) - gens.b2) == gens.relation_u12.ring_applied(n2)
    # norm of the whole group kills u12
    assert gens.u12.ring_applied(norm_element(g12.full_subgroup())).is_zero


def test_express_round_trip_and_residue():
    g12 = make_group(3, 2)
    gens = a2_generators(g12)
    rng = random.Random(2)
    assert gens.express(gens.u12)[0].coeffs  # alpha nonzero
    assert gens.u_coefficient_residue(gens.u12) == 1
    assert gens.u_coefficient_residue(gens.b1) == 0
    assert gens.u_coefficient_residue(gens.b2) == 0
    for _ in range(20):
        x = gens.lattice.element([rng.randint(-4, 4) for _ in range(10)])
        alpha, beta, gamma = gens.express(x)
        recon = (gens.u12.ring_applied(alpha) + gens.b1.ring_applied(beta)
                 + gens.b2.ring_applied(gamma))
        assert recon == x
    # residue is invariant under the group action
    for g in g12.elements():
        x = gens.lattice.element([rng.randint(-4, 4) for _ in range(10)])
        assert gens.u_coefficient_residue(x.acted(g)) == gens.u_coefficient_residue(x)


def test_two_expressions_share_residue():
    # N1 u12 = (s2 - 1) b1: two different coefficient triples, equal residues
    g12 = make_group(3, 2)
    gens = a2_generators(g12)
    s1, s2 = g12.generators
    n1 = GroupRingElement(g12, {s1 ** t: 1 for t in range(3)})
    x = gens.relation_u12.ring_applied(n1)
    assert x == gens.b1.acted(s2) - gens.b1
    assert gens.u_coefficient_residue(x) == 0  # augmentation of N1 is 3 = 0 mod 3


def test_commutator_against_monomial_model():
    g12 = make_group(3, 2)
    for sign in (1, -1):
        gens = a2_generators(g12, sign=sign)
        model = MonomialModel(gens)
        for a in g12.elements():
            for b in g12.elements():
                assert gens.commutator(a.exps, b.exps) == model.commutator(a.exps, b.exps)


def test_commutator_basics():
    g12 = make_group(3, 2)
    gens = a2_generators(g12)
    assert gens.commutator((1, 1), (1, 1)).is_zero
    u = gens.commutator((1, 0), (0, 1))
    assert u == gens.u12 or u == -1 * gens.u12


def test_direct_sum_and_inflation():
    g = make_group(3, 4)
    c = make_group(3, 1)
    reg3 = inflate_lattice(regular_lattice(c), projection_hom(g, (2,)))
    assert reg3.rank == 3
    # the third generator permutes, the others act trivially
    assert not np.array_equal(np.asarray(reg3.action(2).to_lists()), np.eye(3))
    assert np.array_equal(np.asarray(reg3.action(0).to_lists()), np.eye(3))
    both = direct_sum(trivial_lattice(g), trivial_lattice(g), names=["x", "y"])
    assert both.rank == 2
    assert both.summand_offset("y") == (1, 1)
    e = both.embed_coords("y", [5])
    assert e.coords == (0, 5)


def test_lattice_hom_checks_equivariance():
    g12 = make_group(3, 2)
    reg = regular_lattice(g12)
    with pytest.raises(ValueError):
        LatticeHom(reg, trivial_lattice(g12),
                   IntMatrix.from_rows([[1] + [0] * 8]))
    # augmentation (all-ones row) is equivariant to the trivial lattice
    LatticeHom(reg, trivial_lattice(g12), IntMatrix.from_rows([[1] * 9]))


def test_fixed_sublattice():
    c = make_group(3, 1)
    reg = regular_lattice(c)
    fixed = fixed_sublattice(reg, c.full_subgroup())
    assert fixed.rows == 1
    assert sorted(fixed.entries[0]) == [1, 1, 1]  # the norm vector
    triv = trivial_lattice(c)
    assert fixed_sublattice(triv, c.full_subgroup()).rows == 1
    assert saturation_is_full(fixed)
    g = make_group(3, 4)
    ig = augmentation_ideal_lattice(g)
    g34 = g.subgroup([g.generator(2), g.generator(3)])
    f34 = fixed_sublattice(ig, g34)
    assert saturation_is_full(f34)
    assert f34.rows == 8  # norm translates intersected with the ideal


def test_ih_sublattice():
    c = make_group(3, 1)
    triv = trivial_lattice(c)
    assert ih_sublattice(triv, [c.generator(0)]).rows == 0
    reg = regular_lattice(c)
    image = ih_sublattice(reg, [c.generator(0)])
    assert image.rows == 2
    # image of (s - 1) is the augmentation-zero sublattice
    for row in image.entries:
        assert sum(row) == 0
    # norm-multiples are never in the image unless zero
    n = reg.norm_array(c.full_subgroup())
    v = (n @ np.array([1, 0, 0])).tolist()
    assert not lattice_membership(image, v).member
    assert lattice_membership(image, [0, 0, 0]).member


def test_sublattice_induced_action():
    g = make_group(3, 2)
    reg = regular_lattice(g)
    fixed = Sublattice(reg, fixed_sublattice(reg, g.full_subgroup()))
    sub = fixed.as_glattice()
    assert sub.rank == 1
    assert sub.action(0) == IntMatrix.identity(1)


def test_action_validation():
    g = make_group(3, 1)
    bad = np.zeros((2, 2), dtype=np.int64)
    bad[0, 0] = 1
    bad[1, 1] = 2  # not of order dividing 3
    with pytest.raises(ValueError):
        GLattice(g, [bad])
