import pytest

from app.core.errors import ConfigError
from app.montecarlo import ExperimentConfig, MonteCarloService, TableRow, table_csv, trials_csv
from app.sampling import DistributionSpec


def test_table_csv_basic_columns() -> None:
    text = table_csv([TableRow(x=4, freq=0.5, lo=0.4, hi=0.6, theory=0.5)])
    header, row = text.splitlines()
    assert header == "x,freq,lo,hi,theory"
    assert row == "4.0,0.5,0.4,0.6,0.5"


def test_table_csv_extra_columns() -> None:
    rows = [
        TableRow(x=2, freq=0.1, lo=0.0, hi=0.2, hits=3),
        TableRow(x=3, freq=0.05, lo=0.0, hi=0.1, hits=1),
    ]
    header = table_csv(rows).splitlines()[0]
    assert header == "x,freq,lo,hi,theory,hits"


def test_trials_csv() -> None:
    result = MonteCarloService.run_experiment(
        ExperimentConfig(
            kind="hull",
            spec=DistributionSpec.rademacher(),
            n=2,
            d=1,
            trials=5,
            master_seed=1,
            record_trials=True,
        )
    )
    lines = trials_csv(result).splitlines()
    assert lines[0] == "trial,class"
    assert len(lines) == 6
    assert all(line.split(",")[1] in ("outside", "interior") for line in lines[1:])


def test_trials_csv_needs_recording() -> None:
    result = MonteCarloService.run_experiment(
        ExperimentConfig(
            kind="hull",
            spec=DistributionSpec.rademacher(),
            n=2,
            d=1,
            trials=5,
            master_seed=1,
        )
    )
    with pytest.raises(ConfigError):
        trials_csv(result)
