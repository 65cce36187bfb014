"""Rotational-mutation direct search over box-constrained problems, with
the classic benchmark suite, verification oracles and a benchmark harness."""

from rmga.core import (
    BoxDomain,
    ConfigurationError,
    DimensionMismatchError,
    DomainViolationError,
    Fitness,
    GridTooLargeError,
    Point,
    Sense,
    SignVector,
    all_sign_vectors,
    better,
    contains,
    vertices,
)
from rmga.objectives import (
    FUNCTION_NAMES,
    NoiseSource,
    ObjectiveSpec,
    evaluate,
    evaluate_noise_free,
    get,
    registry,
)
from rmga.optimizer import (
    EventKind,
    RmConfig,
    RunResult,
    StallPolicy,
    Termination,
    Trace,
    TraceEvent,
    directed_probe,
    rm_optimize,
    rmga_run,
    rotational_search,
    select_elite,
    step_along,
)
from rmga.harness import (
    FunctionSummary,
    PngEntry,
    PngTable,
    ReachabilityReport,
    RunReport,
    SuiteReport,
    aggregate,
    grid_oracle,
    reachability_oracle,
    render,
    run_replicates,
    run_suite,
)

__version__ = "0.1.0"
