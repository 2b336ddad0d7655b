from app.montecarlo.export import table_csv, trials_csv
from app.montecarlo.presets import PresetService, critical_sparsity, zero_column_probability
from app.montecarlo.schemas import (
    SCHEMA_VERSION,
    AsymmetryReport,
    DecayReport,
    EnumerationResult,
    ExperimentConfig,
    ExperimentResult,
    SandwichBounds,
    SparseReport,
    SweepReport,
    TableRow,
)
from app.montecarlo.service import MonteCarloService
from app.montecarlo.stats import wilson_interval

__all__ = [
    "SCHEMA_VERSION",
    "AsymmetryReport",
    "DecayReport",
    "EnumerationResult",
    "ExperimentConfig",
    "ExperimentResult",
    "MonteCarloService",
    "PresetService",
    "SandwichBounds",
    "SparseReport",
    "SweepReport",
    "TableRow",
    "critical_sparsity",
    "table_csv",
    "trials_csv",
    "wilson_interval",
    "zero_column_probability",
]
