"""Exact Chern-class arithmetic and Gieseker stability checks on curves and surfaces."""

from .bundles import (VirtualBundle, chern_classes, degree, direct_sum, dual, euler_char,
                      from_chern, hilbert_polynomial, hyperplane_twist, line_bundle,
                      structure_sheaf, tangent_bundle, tensor, todd_class)
from .cohomology import CohClass, PolarizedVariety, class_mul, integrate
from .pairing import (AdmissibleSub, PairingStructure, SumObject, Symmetry, Tower, annihilator,
                      filtration_matches_parabolic, is_isotropic, orthogonal_semistability_check)
from .scalar_poly import Ordering, UniPoly, eventually_compare, poly_eval
from .stability import (Filtration, Mode, SemistabilityCertificate, Status, WeightedFiltration,
                        destabilizes, filtration_hilbert, gieseker_slope, mumford_slope,
                        verify_hn_certificate, weighted_filtration_pairing)

__version__ = "0.1.0"
