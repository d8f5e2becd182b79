"""Exact integer linear algebra and cohomology of G-lattices."""

__version__ = "0.1.0"

from .groups import (FiniteAbelianPGroup, GroupElement, GroupHom,
                     GroupRingElement, Subgroup, all_subgroups, augmentation,
                     make_group, norm_element, quotient_images)
from .intlinalg import (FinAbInvariants, IntMatrix, hnf, kernel_basis,
                        lattice_membership, quotient_invariants, snf,
                        solve_integer, solve_integer_with_certificate)
from .lattices import (A2Generators, GLattice, LatticeElement, LatticeHom,
                       Sublattice, a2_generators, augmentation_ideal_lattice,
                       direct_sum, express_in_A2_generators, fixed_sublattice,
                       ih_sublattice, inflate_lattice, permutation_lattice,
                       regular_lattice, relation_module, trivial_lattice)
from .cohomology import (Cochain1, Cocycle2, H1Result, c12_cocycle,
                         carry_cocycle, coboundary1, cocycle_class_order,
                         extension_lattice, h1, inflate_cocycle, is_cocycle2,
                         restrict_cocycle, solve_coboundary, tate_h0,
                         tate_h_minus1)
from .construction import Context, FamilyMember, build_context, family_overview
from .degeneracy import (DegeneracyQuery, PairingClass, WitnessResult,
                         degeneracy_witness, is_degenerate_matrix, phi_pairing)
from .verify import CheckResult, known_check_ids, run_checks

__all__ = [name for name in dir() if not name.startswith("_")]
