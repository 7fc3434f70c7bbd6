"""Lines on Fermat surfaces and the integral generation of their Neron-Severi lattices.

Exact computations only: character counts, Gram matrices of line bases,
multimodular determinants, finite field towers for supersingular reductions,
and certificates that the lines generate NS(S) over Z.
"""
from .combinatorics import surface_invariants, character_sets, rational_generation_test
from .lines import StandardLine, line_pairing, rational_basis, gram_matrix, eigendivisor
from .linalg import det_exact, det_mod, rank_mod, kernel_mod, kernel_refine
from .field_tower import FieldCtx, build_field_ctx, find_defining_poly
from .charp import (CoverParams, ProjLine, find_cover_params, find_special_line,
                    is_supersingular_prime, line_incidence)
from .certify import (CertificationConfig, Certificate, certify_discriminant, certify_duality,
                      reproduce_table_row, primitivity_toolkit)
from .table import load_table

__version__ = "0.1.0"
