"""Two-stage density clustering.

Stage one finds local cluster centers on the density/separation decision
graph and assigns every point by density descent.  Stage two classifies
core versus border points and merges local clusters whose core points come
within the cutoff distance of each other.  The package also ships the
DBSCAN / DenPeak / k-means baselines, ACC and NMI metrics, synthetic
datasets, SVG figures, and the ``ddc`` command-line driver.
"""

from .baselines import (
    BaselineResult,
    dbscan,
    dbscan_auto_params,
    denpeak,
    denpeak_auto_dc,
    kmeans,
)
from .dataset import (
    CutoffParams,
    PointSet,
    cutoff_from_ratio,
    generate_shapes,
    generate_twomoon,
    load_points,
    mean_pairwise_distance,
    save_points,
)
from .density import (
    DensityProfile,
    compute_profile,
    compute_rho,
    decision_graph,
    read_decision_csv,
    write_decision_csv,
)
from .errors import DegenerateGeometryError, DegenerateInputError, ParseError
from .localcluster import LocalClustering, assign_points, select_local_centers
from .merge import (
    MergedClustering,
    build_connectivity,
    classify_core_border,
    ddc_cluster,
    merge_connected,
    read_result_csv,
    write_result_csv,
)
from .metrics import EvalReport, accuracy, contingency, evaluate, nmi
from .plot import FigureSpec, render_decision_graph, render_scatter

__version__ = "0.1.0"

__all__ = [
    "BaselineResult",
    "CutoffParams",
    "DegenerateGeometryError",
    "DegenerateInputError",
    "DensityProfile",
    "EvalReport",
    "FigureSpec",
    "LocalClustering",
    "MergedClustering",
    "ParseError",
    "PointSet",
    "accuracy",
    "assign_points",
    "build_connectivity",
    "classify_core_border",
    "compute_profile",
    "compute_rho",
    "contingency",
    "cutoff_from_ratio",
    "dbscan",
    "dbscan_auto_params",
    "ddc_cluster",
    "decision_graph",
    "denpeak",
    "denpeak_auto_dc",
    "evaluate",
    "generate_shapes",
    "generate_twomoon",
    "kmeans",
    "load_points",
    "mean_pairwise_distance",
    "merge_connected",
    "nmi",
    "read_decision_csv",
    "read_result_csv",
    "render_decision_graph",
    "render_scatter",
    "save_points",
    "select_local_centers",
    "write_decision_csv",
    "write_result_csv",
]
