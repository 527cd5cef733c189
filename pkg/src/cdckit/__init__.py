"""Constant-dimension subspace codes: constructions, exact bound tables, and
brute-force verification oracles."""

from .cdc import (Cdc, CdcList, CwcSet, IdVec, build_coset_cdc_lists,
                  coset_construction, ferrers_of, hamming_guard,
                  identifying_vector, inverse_identifying_vector,
                  lift_on_vector, multilevel, parallel_linkage, phi_embed,
                  reorder_pairing)
from .ferrers import (FdrmCode, FerrersDiagram, coset_list, coset_list_inverse,
                      compose_fdrmc, gfrmc_lower_bound, inverse, nested_pair,
                      nu, optimal_fdrmc, singleton_bound, th43_optimal_fdrmc,
                      transpose)
from .gf import ExtFieldCtx, FieldCtx, expand_rows, ext_new, field_new, frobenius
from .linalg import (MatGF, Subspace, enumerate_subspaces, gaussian_binomial,
                     rank, rref, rrief, subspace_distance)
from .rankmetric import (LinearMatrixCode, MatrixSet, gabidulin,
                         grmc_lower_bound, lift, rank_distribution,
                         restrict_ranks)
from .theorems import (BoundResult, consistency_report, example_bound,
                       table11_bound, th41_bound, th41_cwc, th42_insert,
                       th44_bound, th45_insert, thm31_build, thm31_count,
                       thm32_build, thm32_count)
from .verify import VerifyReport, audit_fdrmc, brute_force_optimum, check_cdc

__version__ = "0.1.0"
