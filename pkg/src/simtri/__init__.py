"""Similar triangles in point sets, forbidden 3-graphs and exact Turán search."""

from .hypergraph import (
    FormatError,
    LinkGraph,
    ThreeGraph,
    clone_vertex,
    contains_subgraph,
    find_embedding,
    is_family_free,
    link,
    neighborhood,
    read_hypergraph,
    write_hypergraph,
)
from .catalog import DenseCertificate, catalog, catalog_entry, family, find_dense_ordering
from .embedder import EisensteinPoint, EmbeddingReport, verify_forbidden
from .geometry import (
    EQUILATERAL,
    PointSet,
    TriangleShape,
    build_similarity_graph,
    count_isomorphic,
    count_similar,
    is_eps_isomorphic,
    is_eps_similar,
    triangle_angles,
)
from .constructions import (
    ConstructionSpec,
    HSequence,
    build_S,
    build_planar_construction,
    build_simplex_construction,
    expected_simplex_count,
    h_value,
    make_disphenoid,
)
from .turan import SearchResult, exact_turan
from .structure import best_edge_partition, maximize_g, objective, quadratic_bound_checks

__version__ = "0.1.0"
