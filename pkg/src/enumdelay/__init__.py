"""Step-counted enumeration machines, delay measurement and amortization."""
from .amortize import (
    AdaptiveDelayAmortizer, AdaptiveGeometricAmortizer, AmortizationConfig, GeometricAmortizer,
    IncrementalDelayViolated, InvariantViolation, QueueAmortizer, SamplerEnumerator,
    SolutionBoundExceeded, adaptive_delay_amortize, geometric_amortize,
    geometric_amortize_adaptive, pointer_count, queue_amortize, sampler_to_enumerator, zone,
)
from .engine import (
    CONTINUE, DONE, Continue, DelayReport, Done, Emit, EnumerationError, Enumerator,
    ScriptedEnumerator, SnapshotUnsupported, StepBudgetExceeded, StepOutcome,
    StoreBudgetExceeded, Trace, cartesian_product, dedup_by_rerun, dedup_by_store,
    delay_report, interleave_union, run, verify_no_duplicates,
)
from .flashlight import (
    BinaryPartitionProblem, DelayLine, FlashlightEnumerator, OracleInconsistent,
    PartialSolution, PathTimeExceeded, PredicateProblem, flashlight_enumerate,
    flashlight_with_path_amortization,
)

__all__ = [
    "__version__",
    "adaptive_delay_amortize", "AdaptiveDelayAmortizer", "AdaptiveGeometricAmortizer",
    "AmortizationConfig", "BinaryPartitionProblem", "cartesian_product", "CONTINUE", "Continue",
    "dedup_by_rerun", "dedup_by_store", "delay_report", "DelayLine", "DelayReport", "DONE",
    "Done", "Emit", "EnumerationError", "Enumerator", "flashlight_enumerate",
    "flashlight_with_path_amortization", "FlashlightEnumerator", "geometric_amortize",
    "geometric_amortize_adaptive", "GeometricAmortizer", "IncrementalDelayViolated",
    "interleave_union", "InvariantViolation", "OracleInconsistent", "PartialSolution",
    "PathTimeExceeded", "pointer_count", "PredicateProblem", "queue_amortize", "QueueAmortizer",
    "run", "sampler_to_enumerator", "SamplerEnumerator", "ScriptedEnumerator",
    "SnapshotUnsupported", "SolutionBoundExceeded", "StepBudgetExceeded", "StepOutcome",
    "StoreBudgetExceeded", "Trace", "verify_no_duplicates", "zone",
]

__version__ = "0.1.0"
