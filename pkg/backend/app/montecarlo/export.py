import csv
import io
from collections.abc import Sequence

from app.core.errors import ConfigError
from app.montecarlo.schemas import ExperimentResult, TableRow

TABLE_COLUMNS = ("x", "freq", "lo", "hi", "theory")


def table_csv(rows: Sequence[TableRow]) -> str:
    """(x, freq, lo, hi, theory) plus any extra column some row fills in."""
    extras = [
        name
        for name in ("hits", "gap", "zero_column_probability")
        if any(getattr(r, name) is not None for r in rows)
    ]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*TABLE_COLUMNS, *extras])
    for row in rows:
        values = [getattr(row, name) for name in (*TABLE_COLUMNS, *extras)]
        writer.writerow(["" if v is None else repr(v) for v in values])
    return buf.getvalue()


def trials_csv(result: ExperimentResult) -> str:
    """Audit trail (trial, class); needs a config with record_trials set."""
    if result.trial_classes is None:
        raise ConfigError("per-trial classes were not recorded (set record_trials)")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial", "class"])
    for t, label in enumerate(result.trial_classes):
        writer.writerow([t, label])
    return buf.getvalue()
