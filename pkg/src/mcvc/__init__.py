"""Maximum vertex cover under matroid constraints: kernels, local search and streaming."""
from .errors import BudgetExceeded, ContractError, InputError, ParseError, UnsupportedMatroid
from .exact import brute_force_opt, common_independent_opt, kernel_opt
from .graph import (WeightedGraph, WeightedHypergraph, coverage, covered_multiplicity, gen_fig3,
                    gen_fig4, gen_fig6, gen_random, gen_random_hypergraph)
from .kernel import KernelResult, RobustWitness, kernelize, kernelize_hypergraph, laminar_robust_witness, verify_robustness
from .matroid import (ContractView, MatroidSpec, UnionView, build_laminar_tree, find_circuit, is_independent,
                      rank)
from .report import SolveReport

__version__ = "0.1.0"
