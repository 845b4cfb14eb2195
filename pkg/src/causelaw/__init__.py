"""Causal structure discovery and quantified argument generation for binary case data."""

from .agreement import (
    AgreementResult,
    AnnotationSpan,
    case_iaa,
    flag_low,
    pair_agreement,
)
from .arguments import (
    ArgumentReport,
    delta_argument,
    find_sufficient_conditions,
    ranked_arguments,
    render_argument,
)
from .bayesnet import (
    BayesNet,
    Cpt,
    CptRow,
    fit_cpts,
    joint_enumerate,
    query,
    read_net,
    write_net,
)
from .consensus import build_consensus, ensure_dag
from .dataset import (
    BinaryDataMatrix,
    Concept,
    ConceptCatalog,
    CountTable,
    contingency,
    load_matrix,
    phi,
    save_matrix,
)
from .discovery import (
    ALGORITHMS,
    ANM,
    BOSS,
    GES,
    GRaSP,
    PC,
    DirectLiNGAM,
    DiscoveryResult,
    discover,
    project_order,
)
from .graphs import (
    Dag,
    Pdag,
    WeightedDigraph,
    dag_to_cpdag,
    is_acyclic,
    orient_meek,
    read_graph,
    topological_order,
    write_graph,
)
from .independence import CiResult, chi2_sf, g2_test, perm_dependence_test
from .scoring import ScoreConfig, Scorer, graph_score, local_score

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "ANM",
    "AgreementResult",
    "AnnotationSpan",
    "ArgumentReport",
    "BOSS",
    "BayesNet",
    "BinaryDataMatrix",
    "CiResult",
    "Concept",
    "ConceptCatalog",
    "CountTable",
    "Cpt",
    "CptRow",
    "Dag",
    "DirectLiNGAM",
    "DiscoveryResult",
    "GES",
    "GRaSP",
    "PC",
    "Pdag",
    "ScoreConfig",
    "Scorer",
    "WeightedDigraph",
    "build_consensus",
    "case_iaa",
    "chi2_sf",
    "contingency",
    "dag_to_cpdag",
    "delta_argument",
    "discover",
    "ensure_dag",
    "find_sufficient_conditions",
    "fit_cpts",
    "flag_low",
    "g2_test",
    "graph_score",
    "is_acyclic",
    "joint_enumerate",
    "load_matrix",
    "local_score",
    "orient_meek",
    "pair_agreement",
    "perm_dependence_test",
    "phi",
    "project_order",
    "query",
    "ranked_arguments",
    "read_graph",
    "read_net",
    "render_argument",
    "save_matrix",
    "topological_order",
    "write_graph",
    "write_net",
]
