"""Citation-environment maps of scientific journals.

Select the journals around a seed journal in an aggregated journal-journal
citation matrix, compare their citation profiles by cosine, size them by
local impact with and without within-journal citations, and export Pajek
map files, plus k-core/articulation-point and varimax factor summaries.
"""

from .environment import Direction, Environment, apply_exclusions, build_environment_matrix, environment_of, select_environment
from .estimators import CitationEnvironmentMap, CosineSimilarity, VarimaxPCA
from .graph_metrics import SimilarityGraph, articulation_points, connected_components, k_core
from .impact import LocalImpact, impact_report, local_impact
from .ingest import CitationGraph, JournalMeta, SourceIndex, merge_graphs, parse_edge_list, parse_metadata, read_graph
from .pajek import MapDocument, Shape, Vertex, build_document, make_label, read_map, write_map
from .similarity import SimilarityMatrix, cosine, profile_vectors, similarity_matrix
from .statistics import LoadingsMatrix, pearson_correlation_matrix, principal_components, spearman_rho, varimax

__version__ = "0.1.0"
