"""hrgsim: hyperbolic random geometric graphs, their strip-model
counterpart, and a statistical experiment harness."""

from .geometry import (
    ModelParams,
    PolarPoint,
    StripPoint,
    disk_radius,
    from_strip,
    hyperbolic_distance,
    sample_quasi_uniform,
    to_strip,
)
from .generators import (
    CoupledPair,
    CouplingReport,
    Graph,
    build_edges_accelerated,
    build_edges_naive,
    couple_models,
    coupling_report,
    gamma_adjacent,
    generate_idealized,
    generate_kpkvb,
    generate_kpkvb_poisson,
    hyperbolic_adjacent,
)
from .boxes import (
    ActivityMap,
    BoxId,
    Dissection,
    HBlock,
    box_of,
    build_dissection,
    canonical_path_L,
    compute_W,
    find_separating_red_walk,
    h_block_partition,
    has_vertical_active_crossing,
    inactive_path_L0_to_K_exists,
    mark_active,
    neighbors_B,
    neighbors_Bstar,
)
from .analysis import (
    ComponentDecomposition,
    DiameterReport,
    clustering_coefficient,
    component_diameters,
    connected_components,
    degree_statistics,
    graph_distance,
    merge_diameter_bound,
    verify_path_bound,
)
from .serialization import read_graph_file, write_graph_file

__version__ = "0.1.0"
