"""Exact generator calculus for elementary and elementary symplectic
groups over commutative rings in which 2 is invertible.

Layers: exact ring arithmetic (``rings``), matrices and alternating
forms (``matrices``), generator atoms/words and transvections
(``words``), the corrected relation table (``relations``), the
first-row/column conjugation and dilation calculus (``rewrite``),
form-change and telescoping identities (``identities``), local-ring
normal forms (``normalforms``), finite brute-force orbit verification
(``orbits``), and a CLI (``cli``).
"""

from .identities import (find_dilation_exponent, form_change_conjugate,
                         splice_telescoping)
from .matrices import (SquareMatrix, determinant, is_alternating,
                       is_symplectic, pfaffian, sigma, standard_form)
from .normalforms import (LocalRingWitness, complete_unimodular_local,
                          reduce_alternating_local,
                          reduce_alternating_semilocal)
from .orbits import (GroupSpec, OrbitPartition, check_dim0_transitivity,
                     check_orbit_equality, enumerate_unimodular,
                     generators_for, kernel_membership_test, orbit_partition,
                     square_ideal_inclusion_test, subgroup_closure)
from .relations import (RELATION_IDS, admissible_indices, suite_summary,
                        verify_relation, verify_relation_suite)
from .rewrite import (RewriteResult, conjugate_first_rowcol,
                      conjugate_square_ideal, dilate_word)
from .rings import (GF, Dyadic, Ideal, PolyRing, RingError, Zmod,
                    parse_ideal, parse_ring)
from .words import (GeneratorAtom, GeneratorWord, bass_symplectic_transvection,
                    decompose_mu, decompose_rho, hyperbolic_defect, lin,
                    mu_matrix, relative_generator, rho_matrix, se)

__version__ = "0.1.0"
