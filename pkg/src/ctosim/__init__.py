"""Cooperative target observation: simulator, controllers, benchmark harness."""

from .geometry import (
    Point,
    Triangle,
    TriangulationError,
    circumcircle_contains,
    delaunay_triangulate,
    distance,
    triangulation_edges,
)
from .world import (
    GraphEdge,
    GraphGenerationError,
    ObserverState,
    PlanarGraph,
    TargetState,
    WorldState,
    generate_random_graph,
    predict_target,
    random_target_state,
    step_observer,
    step_target,
    target_point,
)
from .metrics import (
    MetricsAccumulator,
    ObservationMatrix,
    accumulate,
    coverage_fraction,
    finalize_rho,
    mean_pairwise_observer_distance,
    observation_matrix,
)
from .controllers import (
    CandidateScore,
    ControlInput,
    ControllerKind,
    evaluate_candidate,
    hc_control,
    hc_h_control,
    hc_hp_control,
    kmeans_control,
    perturb,
)
from .engine import (
    RunResult,
    SeedStreams,
    SimConfig,
    derive_streams,
    run_simulation,
    should_update,
    update_period,
)
from .harness import (
    ALL_CONTROLLERS,
    CellSummary,
    HarnessError,
    RunRecord,
    SweepResult,
    SweepSpec,
    RV_VALUES,
    SR_VALUES,
    UR_VALUES,
    emit_csv,
    emit_plot_script,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "Point",
    "Triangle",
    "TriangulationError",
    "circumcircle_contains",
    "delaunay_triangulate",
    "distance",
    "triangulation_edges",
    "GraphEdge",
    "GraphGenerationError",
    "ObserverState",
    "PlanarGraph",
    "TargetState",
    "WorldState",
    "generate_random_graph",
    "predict_target",
    "random_target_state",
    "step_observer",
    "step_target",
    "target_point",
    "MetricsAccumulator",
    "ObservationMatrix",
    "accumulate",
    "coverage_fraction",
    "finalize_rho",
    "mean_pairwise_observer_distance",
    "observation_matrix",
    "CandidateScore",
    "ControlInput",
    "ControllerKind",
    "evaluate_candidate",
    "hc_control",
    "hc_h_control",
    "hc_hp_control",
    "kmeans_control",
    "perturb",
    "RunResult",
    "SeedStreams",
    "SimConfig",
    "derive_streams",
    "run_simulation",
    "should_update",
    "update_period",
    "ALL_CONTROLLERS",
    "CellSummary",
    "HarnessError",
    "RunRecord",
    "SweepResult",
    "SweepSpec",
    "RV_VALUES",
    "SR_VALUES",
    "UR_VALUES",
    "emit_csv",
    "emit_plot_script",
    "run_sweep",
]
