"""Simulation and resource planning for optical W state fusion."""

from .analytic import (
    OutcomeRecord,
    TruthTableRow,
    outcomes,
    outcomes2_basic,
    outcomes2_enhanced,
    outcomes3,
    success_probability,
    truth_table3,
)
from .core import (
    AllH,
    BlockState,
    GateResult,
    OutcomeClass,
    Polarization,
    PureState,
    Rational,
    SchemeId,
    W,
    rational,
)
from .montecarlo import CostRecord, StrategyConfig, default_sets, mc_recycle
from .oracle import (
    MeasurementBranch,
    apply_fredkin,
    build_w,
    fidelity,
    fusion_gate_measure,
    run_scheme2_basic,
    run_scheme2_enhanced,
    run_scheme3,
)
from .planner import ExponentFit, PlanNode, dp_norecycle, equal_size_sequence, fit_exponent

__version__ = "0.1.0"
