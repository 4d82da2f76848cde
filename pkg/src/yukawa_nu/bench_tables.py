"""Regeneration of the benchmark energy tables and the potential comparison series.

Reference values from other methods ship in ``data/reference_energies.csv``;
cells flagged in its ``suspect`` column are skipped unless requested.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
import csv
import hashlib
import io
import math
from importlib import resources

import numpy as np

from .errors import NoBoundStateError, ParameterDomainError
from .numeric_solver import SolverConfig, solve_level
from .yukawa_model import PotentialParams, QuantumNumbers, energy_nl, potential_approx, potential_exact

REFERENCE_FILE = "reference_energies.csv"
REFERENCE_SHA256 = "67c180e1149524277f71216a0cbe585f1ebaf276a882460a73fe51f741358e72"

REFERENCE_HEADER = (
    "table_id", "state", "n", "l", "v0", "a", "m", "hbar",
    "aim", "susy", "numerical", "analytical_cd", "suspect",
)
OUTPUT_HEADER = (
    "table_id", "state", "n", "l", "v0", "a",
    "analytic", "numeric", "delta_numerical_analytic", "delta_numerical_numeric",
)
SOURCES = ("aim", "susy", "numerical", "analytical_cd")

FIGURE1_V0 = math.sqrt(2.0)
FIGURE1_G = 0.050


class TableId(str, Enum):
    V0_SQRT2 = "V0_SQRT2"
    HBAR_2M_GROUND = "HBAR_2M_GROUND"
    HBAR_2M_EXCITED = "HBAR_2M_EXCITED"

    @classmethod
    def parse(cls, text):
        key = text.strip().upper().replace("-", "_")
        aliases = {"HBAR2M_GROUND": "HBAR_2M_GROUND", "HBAR2M_EXCITED": "HBAR_2M_EXCITED"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ParameterDomainError(f"unknown table id {text!r}") from None


def numerical_tolerance(table_id, energy):
    """Allowed |numeric - NUMERICAL| for a row of the given table."""
    if table_id is TableId.V0_SQRT2:
        return 2e-4
    return max(5e-4, 1e-4 * abs(energy))


@dataclass(frozen=True)
class ReferenceRow:
    table_id: TableId
    state: str
    params: PotentialParams
    qn: QuantumNumbers
    ref_values: dict
    suspect: frozenset = frozenset()

    def usable(self, include_suspect=False):
        """Reference values that take part in comparisons."""
        return {
            k: v for k, v in self.ref_values.items()
            if include_suspect or k not in self.suspect
        }


@dataclass(frozen=True)
class ComparisonRow:
    table_id: TableId
    state: str
    params: PotentialParams
    qn: QuantumNumbers
    analytic: float
    numeric: float
    analytic_deltas: dict = field(default_factory=dict)
    numeric_deltas: dict = field(default_factory=dict)
    diagnostic: str = ""

    @property
    def key(self):
        return (self.table_id, self.params, self.qn)


def reference_text():
    return resources.files(__package__).joinpath("data").joinpath(REFERENCE_FILE).read_bytes()


def load_reference(raw=None, verify_checksum=True):
    """Parse and validate the bundled reference table."""
    if raw is None:
        raw = reference_text()
    if verify_checksum and hashlib.sha256(raw).hexdigest() != REFERENCE_SHA256:
        raise ValueError("reference data checksum mismatch")
    reader = csv.reader(io.StringIO(raw.decode("utf-8")))
    header = tuple(next(reader))
    if header != REFERENCE_HEADER:
        raise ValueError(f"unexpected reference header {header}")
    rows, seen = [], set()
    for line_no, rec in enumerate(reader, start=2):
        if not rec:
            continue
        d = dict(zip(header, rec))
        refs = {}
        for src in SOURCES:
            if d[src] != "":
                value = float(d[src])
                if not math.isfinite(value):
                    raise ValueError(f"line {line_no}: non-finite {src}")
                refs[src] = value
        suspect = frozenset(s for s in d["suspect"].split(";") if s)
        if not suspect <= set(refs):
            raise ValueError(f"line {line_no}: suspect marker names an absent cell")
        row = ReferenceRow(
            table_id=TableId(d["table_id"]),
            state=d["state"],
            params=PotentialParams(float(d["v0"]), float(d["a"]), float(d["m"]), float(d["hbar"])),
            qn=QuantumNumbers(int(d["n"]), int(d["l"])),
            ref_values=refs,
            suspect=suspect,
        )
        key = (row.table_id, row.params, row.qn)
        if key in seen:
            raise ValueError(f"line {line_no}: duplicate row {key}")
        seen.add(key)
        rows.append(row)
    return rows


def table_rows(table_id):
    table_id = TableId.parse(table_id) if isinstance(table_id, str) else table_id
    return [r for r in load_reference() if r.table_id is table_id]


def _compare(ref, cfg, include_suspect):
    diagnostic = ""
    try:
        analytic = energy_nl(ref.params, ref.qn)
    except NoBoundStateError as exc:
        analytic, diagnostic = math.nan, str(exc)
    numeric = solve_level(ref.params, ref.qn, cfg).energy
    usable = ref.usable(include_suspect)
    return ComparisonRow(
        table_id=ref.table_id,
        state=ref.state,
        params=ref.params,
        qn=ref.qn,
        analytic=analytic,
        numeric=numeric,
        analytic_deltas={} if math.isnan(analytic) else {k: analytic - v for k, v in usable.items()},
        numeric_deltas={k: numeric - v for k, v in usable.items()},
        diagnostic=diagnostic,
    )


def generate_table(table_id, cfg: SolverConfig = None, include_suspect=False, workers=None):
    """Closed-form and numerical energies for every row of a table, in paper order."""
    cfg = cfg or SolverConfig()
    refs = table_rows(table_id)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_compare, r, cfg, include_suspect) for r in refs]
            return [f.result() for f in futures]
    return [_compare(r, cfg, include_suspect) for r in refs]


def format_value(x):
    """At least 6 significant digits; empty for missing values."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return format(x + 0.0, ".10g")


def write_table_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(OUTPUT_HEADER)
    for row in rows:
        writer.writerow([
            row.table_id.value,
            row.state,
            row.qn.n,
            row.qn.l,
            format_value(row.params.v0),
            format_value(row.params.a),
            format_value(row.analytic),
            format_value(row.numeric),
            format_value(row.analytic_deltas.get("numerical")),
            format_value(row.numeric_deltas.get("numerical")),
        ])


def figure1_series(p: PotentialParams = None, r_min=0.05, r_max=30.0, samples=600):
    """Uniformly sampled exact and approximated potentials.

    Returns an array with columns ``r, v_exact, v_approx``.
    """
    if p is None:
        p = PotentialParams.from_g(FIGURE1_V0, FIGURE1_G)
    if not 0 < r_min < r_max:
        raise ParameterDomainError("need 0 < r_min < r_max")
    if samples < 2:
        raise ParameterDomainError("need at least two samples")
    r = np.linspace(r_min, r_max, int(samples))
    return np.column_stack([r, potential_exact(p, r), potential_approx(p, r)])


def compare_report(rows):
    """Summary of deltas per table and per reference source.

    Only sources with at least one populated delta appear. Each table entry
    carries a pass flag for the numerical oracle against the ``numerical``
    reference column.
    """
    if not rows:
        raise ParameterDomainError("no rows to summarise")
    report = {}
    for table_id in dict.fromkeys(r.table_id for r in rows):
        sub = [r for r in rows if r.table_id is table_id]
        entry = {"rows": len(sub), "sources": {}}
        for src in SOURCES:
            stats = {}
            for kind in ("analytic", "numeric"):
                pairs = [(abs(getattr(r, f"{kind}_deltas")[src]), r) for r in sub
                         if src in getattr(r, f"{kind}_deltas")]
                if not pairs:
                    continue
                worst = max(pairs, key=lambda t: t[0])
                stats[kind] = {
                    "max": worst[0],
                    "mean": float(np.mean([t[0] for t in pairs])),
                    "count": len(pairs),
                    "worst": (worst[1].state, worst[1].params.v0, worst[1].params.a),
                }
            if stats:
                entry["sources"][src] = stats
        failures = [
            r for r in sub
            if "numerical" in r.numeric_deltas
            and abs(r.numeric_deltas["numerical"]) > numerical_tolerance(table_id, r.numeric)
        ]
        entry["failures"] = [(r.state, r.qn.n, r.qn.l, r.params.v0, r.params.a) for r in failures]
        entry["passed"] = not failures
        report[table_id.value] = entry
    return report


def format_report(report):
    lines = []
    for table, entry in report.items():
        status = "PASS" if entry["passed"] else "FAIL"
        lines.append(f"{table}: {entry['rows']} rows, numeric vs NUMERICAL {status}")
        for src, stats in entry["sources"].items():
            for kind, s in stats.items():
                lines.append(
                    f"  {kind:8s} - {src:13s} max {s['max']:.3e} mean {s['mean']:.3e} "
                    f"(n={s['count']}, worst {s['worst'][0]} v0={s['worst'][1]:.6g} a={s['worst'][2]:.6g})"
                )
        for f in entry["failures"]:
            lines.append(f"  outside tolerance: {f[0]} (n={f[1]}, l={f[2]}) v0={f[3]:.6g} a={f[4]:.6g}")
    return "\n".join(lines)
