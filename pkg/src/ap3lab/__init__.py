"""Finite, exact experiments around three-term arithmetic progressions."""

__version__ = "0.1.0"

from .ap import (APWitness, DiscrepancyReport, TripleCount, count_triples, count_triples_bruteforce,
                 count_triples_convolution, discrepancy, find_ap_of_length, has_nontrivial_3ap)
from .audit import (AuditReport, BoundChainRow, largeness_probe, lemma2_discrepancy_audit,
                    lemma3_residual_audit, roth_chain_audit)
from .constructions import (FamilySpec, PaperSetSpec, digit_construction, family, paper_set_bound_check,
                            paper_small_set, parse_source)
from .extremal import (Budget, DensityProfile, ExtremalWitness, density_limit_estimate, fekete_audit,
                       r3_table, solve_r3)
from .intset import (AffineMap, CountingProfile, DomainError, IntegerSet, ParseError, RationalSum,
                     abel_identity_residual, counting_profile, map_affine, parse_set,
                     reciprocal_partial_sum)
