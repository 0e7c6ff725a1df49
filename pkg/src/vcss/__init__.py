"""Approximation pipeline and exact oracles for 2-vertex-connected spanning subgraphs."""

from .canonical import is_canonical, is_strongly_canonical, prune_to_minimal, to_strongly_canonical
from .cover import (TriangleSet, exact_min_tfree_2_edge_cover, get_backend, heuristic_tfree_2_edge_cover,
                    max_simple_2_matching, min_2_edge_cover)
from .credits import COST_RATIO, assign_credits, cost, cost_prime
from .errors import (CaseMismatch, GraphFormatError, InfeasibleError, InfeasibleInput, InvariantError,
                     NotA2EdgeCover, NotStructured, PreconditionViolated, ResourceExhausted, VCSSError)
from .gadget import build_gprime, compute_cycle_restricted_cover, lift_cover, project_cover
from .generators import GeneratorSpec, generate, generate_instance, tight_chain
from .graph import Multigraph, block_cut_decomposition, is_2vc, load_graph, save_graph
from .harness import bench, to_dot
from .kernels import BACKEND as KERNEL_BACKEND
from .oracle import exact_min_cycle_restricted_cover, exact_opt_2vcss
from .pipeline import run_pipeline
from .reducer import remove_all_small
from .structure import analyze_structure, is_cycle_restricted

__version__ = "0.1.0"
