"""Exact inverses of weighted graphs from Sachs subgraphs, and their spectra."""

from .errors import (
    Disagreement,
    GraphError,
    HasLoops,
    NoConvergence,
    NoSplit,
    NotCorona,
    NotPerfectMatching,
    NotSigned,
    NotStellatedTree,
    NotUniqueSachs,
    ParseError,
    Singular,
    TooLarge,
    WrongFamily,
)
from .families import (
    alternating_path_between,
    corona,
    corona_inverse,
    corona_swap,
    is_self_invertible,
    self_inverse_witness,
    stellate,
    stellated_tree_inverse,
    stellated_tree_matching,
)
from .graph import (
    WeightedGraph,
    adjacency_matrix,
    delete_vertex,
    is_balanced,
    is_isomorphic,
    parse_graph,
    serialize_graph,
    switch_cut,
)
from .inverse import (
    InverseReport,
    determinant,
    has_integral_inverse,
    invert_graph,
    is_simply_invertible,
    oracle_inverse,
    structural_inverse,
)
from .sachs import (
    SachsSubgraph,
    det_via_sachs,
    enumerate_sachs,
    has_unique_sachs,
    pendant_reduce,
    perfect_matchings,
    unique_sachs_witness,
)
from .spectra import (
    MedianReport,
    Spectrum,
    check_alkane_bounds,
    check_median_bounds,
    eigenvalues,
    median_eigenvalues,
    median_via_inverse,
    sampled_weight_sweep,
    spectrum_splits,
    split_certificate,
)

__version__ = "0.1.0"
