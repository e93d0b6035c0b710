"""Edge-ideal invariants and multiplicity-bound verification.

Graphs carry square-free quadratic monomial ideals; this package computes
their Betti tables (Hochster's formula, with a Taylor-complex oracle),
Taylor twists, multiplicities and the digraph reduction to the
Cohen-Macaulay case, and mechanically verifies the multiplicity bounds and
characterizations on desk-scale instances.
"""

from .betti import (BettiTable, SimplicialComplex, betti_table,
                    complete_multipartite_strand, is_pure, is_quasi_pure,
                    reduced_homology_ranks, stanley_reisner,
                    taylor_oracle_betti)
from .digraph import (AntichainFamily, Digraph, antichain_multiplicity,
                      antichains, build_digraph, collapse, is_cm_bipartite,
                      kappa, mu, mu_inequality_holds, reduce_to_cm,
                      transitive_closure, unmixed_primes_from_antichains)
from .errors import (CapExceeded, EdgemultError, InvariantViolation,
                     NotBipartite, NotPerfectlyMatched, ParseError)
from .graphs import (Graph, Matching, cycle_graph, disjoint_edges,
                     enumerate_minimal_vertex_covers, from_edge_list,
                     induced_matching_number, induced_subgraph,
                     largest_complete_bipartite, max_matching,
                     min_vertex_cover, path_graph, suspension,
                     suspension_decompose)
from .ideals import (MonomialIdeal, TaylorTwists, add_var,
                     check_standing_hypothesis, colon_by_var, edge_ideal,
                     essential_height, from_generators, graph_of, height,
                     multiplicity, polarize, rho, taylor_twists)

__version__ = "0.1.0"
