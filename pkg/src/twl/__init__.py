"""Twin-width, matrix patterns and neighbourhood complexity, with exact oracles."""

from .errors import InputError, InvalidSequenceError, ResourceLimitError, TwlError, VerificationError
from .graph import (Graph, VertexOrder, adjacency_matrix, gen_matching, parse_graph, parse_order,
                    parse_vertex_set)
from .trigraph import (ContractionSequence, Trigraph, contract, exact_twinwidth, max_red_degree,
                       order_from_sequence, verify_sequence)
from .generate import CertifiedInstance, gen_certified
from .matrix import (BitMatrix, Division, PatternConstants, classify_submatrix, corner_matrix,
                     corner_row_pairs, max_grid_minor, max_mixed_minor, mt_constant)
from .neighborhoods import (distinct_neighborhoods, neighborhoods_in, representative_set,
                            shatter_function, vc_dimension)
from .cells import (CellDescriptor, CellPartition, cell_partition, corner_profile, decode_cell,
                    define_vertex, oracle_partition, reduced_matrix, sweep_blocks)
from .distal import cutting, regularity, verify_cutting, verify_regularity

__version__ = "0.1.0"
