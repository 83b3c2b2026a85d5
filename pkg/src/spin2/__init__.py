"""Two-state spin systems: exact oracles, gadget calculus, hardness
reductions, zero-freeness certificates, and approximate counting."""

from .errors import (DegenerateInstanceError, PoleError, RegionError,
                     SizeCapError, SpinError, UndefinedRatioError)
from .exact import (ActivityVector, PairMatrix, SpinParams, UniPoly,
                    activity_vector, all_activity_vectors, enumeration_cap,
                    pair_matrix, partition_fn, ratio, z_polynomial)
from .fptas import (FptasResult, TruncatedLog, choose_order, fptas_eval,
                    log_taylor)
from .gadgets import (LandmarkSet, RatioGadget, base_gadget_gt1,
                      base_gadget_neg, exact_activity_of_backbone,
                      gadget_extend, gadget_from_graph, gadget_power,
                      gadget_product, hard_region_contains, landmarks,
                      mobius_f, mobius_f_inv, realize_dense, realize_exp,
                      realize_exp_traced, realize_signed, unit_gadget)
from .graphs import (Multigraph, attach_edge, builtin, clique_graph,
                     contract_edge, cycle_graph, delete_edge, grid_graph,
                     path_graph, selfloops_graph, star_graph, wedge_sum)
from .hardness import (CutInstance, ReductionResult, binary_search_zero,
                       lifted_pair_matrix, mincut_bruteforce,
                       reduction_count_mincuts, sign_T)
from .holant import (BinaryFn, EvenD, EvenPathFragment, FprasResult,
                     HolantInstance, WindCert, even_decompose, fourier_hat,
                     fpras_estimate, holant_exact, strictly_terraced_check,
                     subgraphs_world, verify_wind_cert, windable_check)
from .ising import IsingGadget, decorate_edge_endpoints, realize_ising
from .rationals import CRat, Rat, format_rat, parse_rat, rat
from .zerofree import (REGION_TAGS, ContractionReport, RecursionReport,
                       RegionClass, UncenteredConstants, classify,
                       contraction_sampler, disk_radius,
                       disk_recursion_check, g_threshold,
                       identity_check_right_left, interval_recursion_check,
                       negative_witness, pairwise_radius, star_root_witness,
                       star_value, uncentered_constants,
                       uncentered_requirements)

__all__ = [
    "ActivityVector", "BinaryFn", "CRat", "ContractionReport", "CutInstance",
    "DegenerateInstanceError", "EvenD", "EvenPathFragment", "FprasResult",
    "FptasResult", "HolantInstance", "IsingGadget", "LandmarkSet",
    "Multigraph",
    "PairMatrix", "PoleError", "REGION_TAGS", "Rat", "RatioGadget",
    "TruncatedLog",
    "RecursionReport", "ReductionResult", "RegionClass", "RegionError",
    "SizeCapError", "SpinError", "SpinParams", "UncenteredConstants",
    "UndefinedRatioError", "UniPoly", "WindCert", "activity_vector",
    "all_activity_vectors", "attach_edge", "base_gadget_gt1",
    "base_gadget_neg", "binary_search_zero", "builtin", "classify",
    "choose_order", "clique_graph", "contract_edge", "contraction_sampler",
    "cycle_graph",
    "decorate_edge_endpoints", "delete_edge", "disk_radius",
    "disk_recursion_check", "enumeration_cap", "even_decompose",
    "exact_activity_of_backbone", "format_rat", "fourier_hat",
    "fpras_estimate", "fptas_eval", "g_threshold",
    "gadget_extend", "gadget_from_graph", "gadget_power", "gadget_product",
    "grid_graph", "hard_region_contains", "holant_exact",
    "identity_check_right_left",
    "interval_recursion_check", "landmarks", "lifted_pair_matrix",
    "log_taylor",
    "mincut_bruteforce", "mobius_f", "mobius_f_inv", "negative_witness",
    "pair_matrix", "pairwise_radius", "parse_rat", "partition_fn",
    "path_graph", "rat", "ratio", "realize_dense", "realize_exp",
    "realize_exp_traced", "realize_ising", "realize_signed",
    "reduction_count_mincuts", "selfloops_graph", "sign_T",
    "star_graph", "star_root_witness", "star_value",
    "strictly_terraced_check", "subgraphs_world", "uncentered_constants",
    "uncentered_requirements", "unit_gadget", "verify_wind_cert",
    "wedge_sum", "windable_check", "z_polynomial",
]

__version__ = "0.1.0"
