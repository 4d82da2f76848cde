import hashlib
import io
import math

import numpy as np
import pytest

from yukawa_nu import bench_tables as bt
from yukawa_nu.bench_tables import TableId
from yukawa_nu.errors import ParameterDomainError
from yukawa_nu.numeric_solver import SolverConfig
from yukawa_nu.yukawa_model import PotentialParams, QuantumNumbers, energy_nl

from paper_values import G_VALUES


def _csv_text(rows):
    buf = io.StringIO()
    bt.write_table_csv(rows, buf)
    return buf.getvalue()


def test_reference_file_integrity():
    raw = bt.reference_text()
    assert hashlib.sha256(raw).hexdigest() == bt.REFERENCE_SHA256
    assert raw.decode("utf-8").splitlines()[0] == ",".join(bt.REFERENCE_HEADER)
    rows = bt.load_reference()
    counts = {tid: sum(r.table_id is tid for r in rows) for tid in TableId}
    assert counts == {TableId.V0_SQRT2: 30, TableId.HBAR_2M_GROUND: 8, TableId.HBAR_2M_EXCITED: 12}
    assert all(math.isfinite(v) for r in rows for v in r.ref_values.values())
    assert len({(r.table_id, r.params, r.qn) for r in rows}) == len(rows)


def test_suspect_cells_flagged():
    flagged = [(r.table_id, r.state, r.params.v0, r.qn, s) for r in bt.load_reference() for s in r.suspect]
    assert len(flagged) == 2
    ids = {(f[0], f[3], f[4]) for f in flagged}
    assert (TableId.HBAR_2M_EXCITED, QuantumNumbers(2, 0), "numerical") in ids
    assert (TableId.V0_SQRT2, QuantumNumbers(1, 0), "susy") in ids


def test_reference_row_values_spot_check():
    rows = bt.table_rows(TableId.V0_SQRT2)
    first = rows[0]
    assert first.state == "1s" and first.params.a == pytest.approx(0.002 * math.sqrt(2))
    assert first.ref_values == {"aim": -0.99600, "susy": -0.99601, "numerical": -0.99600}
    excited = bt.table_rows("hbar2m-excited")
    assert excited[4].ref_values["numerical"] == -1.6998
    assert excited[4].usable() .get("numerical") is None
    assert excited[4].usable(include_suspect=True)["numerical"] == -1.6998


def test_checksum_and_format_validation():
    raw = bt.reference_text()
    with pytest.raises(ValueError, match="checksum"):
        bt.load_reference(raw + b"\n")
    bad_header = raw.replace(b"analytical_cd", b"cd", 1)
    with pytest.raises(ValueError, match="header"):
        bt.load_reference(bad_header, verify_checksum=False)
    lines = raw.decode().splitlines()
    duplicated = "\n".join(lines + [lines[1]]).encode()
    with pytest.raises(ValueError, match="duplicate"):
        bt.load_reference(duplicated, verify_checksum=False)
    non_finite = "\n".join(lines[:1] + [lines[1].replace("-0.99601", "nan")]).encode()
    with pytest.raises(ValueError, match="non-finite"):
        bt.load_reference(non_finite, verify_checksum=False)


def test_table_id_parsing():
    assert TableId.parse("v0-sqrt2") is TableId.V0_SQRT2
    assert TableId.parse("hbar2m-ground") is TableId.HBAR_2M_GROUND
    assert TableId.parse("HBAR_2M_EXCITED") is TableId.HBAR_2M_EXCITED
    with pytest.raises(ParameterDomainError):
        TableId.parse("table-4")


def test_generated_rows(generated_tables):
    v0 = generated_tables[TableId.V0_SQRT2]
    assert len(v0) == 30
    assert [r.state for r in v0[::6]] == ["1s", "2s", "2p", "3p", "3d"]
    assert [r.params.a / r.params.v0 for r in v0[:6]] == pytest.approx(G_VALUES)
    assert v0[0].analytic == pytest.approx(-0.99600, abs=5e-6)

    ground = generated_tables[TableId.HBAR_2M_GROUND]
    assert len(ground) == 8
    row = next(r for r in ground if r.params.v0 == 24 and r.qn.l == 2)
    assert row.analytic == pytest.approx(-11.5600, abs=5e-5)

    excited = generated_tables[TableId.HBAR_2M_EXCITED]
    assert len(excited) == 12
    deg = [r.analytic for r in excited if r.params.v0 == 24 and r.qn.n + r.qn.l == 4]
    assert len(deg) == 3
    assert deg == pytest.approx([-1.9600] * 3, abs=5e-5)


def test_analytic_column_recomputes(generated_tables):
    for rows in generated_tables.values():
        for r in rows:
            assert r.analytic == energy_nl(PotentialParams(r.params.v0, r.params.a, r.params.m, r.params.hbar),
                                           QuantumNumbers(r.qn.n, r.qn.l))
            assert not r.diagnostic


def test_deltas_follow_reference_cells(generated_tables):
    for rows in generated_tables.values():
        refs = {(ref.params, ref.qn): ref for ref in bt.table_rows(rows[0].table_id)}
        for r in rows:
            usable = refs[(r.params, r.qn)].usable()
            assert set(r.numeric_deltas) == set(usable) == set(r.analytic_deltas)
            for k, v in usable.items():
                assert r.numeric_deltas[k] == r.numeric - v


def test_csv_output(generated_tables):
    text = _csv_text(generated_tables[TableId.V0_SQRT2])
    lines = text.splitlines()
    assert lines[0] == ",".join(bt.OUTPUT_HEADER)
    assert len(lines) == 31
    fields = lines[1].split(",")
    assert fields[:4] == ["V0_SQRT2", "1s", "0", "0"]
    assert float(fields[6]) == pytest.approx(-0.996004, rel=1e-9)
    digits = fields[7].lstrip("-").replace(".", "").lstrip("0")
    assert len(digits) >= 6
    suspect_row = _csv_text(generated_tables[TableId.HBAR_2M_EXCITED]).splitlines()[5].split(",")
    assert suspect_row[2:4] == ["2", "0"] and suspect_row[8:] == ["", ""]


def test_format_value():
    assert bt.format_value(-0.5) == "-0.5"
    assert bt.format_value(-0.0) == "0"
    assert bt.format_value(1.234567891234) == "1.234567891"
    assert bt.format_value(math.nan) == ""
    assert bt.format_value(None) == ""


def test_generation_deterministic_across_workers():
    cfg = SolverConfig()
    serial = _csv_text(bt.generate_table(TableId.HBAR_2M_GROUND, cfg))
    again = _csv_text(bt.generate_table(TableId.HBAR_2M_GROUND, cfg))
    parallel = _csv_text(bt.generate_table(TableId.HBAR_2M_GROUND, cfg, workers=2))
    assert serial == again == parallel


def test_include_suspect_populates_cell():
    rows = bt.generate_table(TableId.HBAR_2M_EXCITED, include_suspect=True)
    row = rows[4]
    assert (row.qn.n, row.qn.l, row.params.v0) == (2, 0, 24.0)
    assert row.numeric_deltas["numerical"] == pytest.approx(row.numeric + 1.6998)


def test_figure1_series_defaults():
    series = bt.figure1_series()
    r, exact, approx = series.T
    assert series.shape == (600, 3)
    assert np.all(exact < 0) and np.all(approx < 0)
    assert np.all(np.diff(exact) > 0) and np.all(np.diff(approx) > 0)
    a = 0.05 * math.sqrt(2)
    rel = np.abs(approx - exact) / np.abs(exact)
    assert np.all(rel[a * r > 1] > 0.05)


def test_figure1_series_agreement_at_short_range():
    series = bt.figure1_series(r_min=0.1, r_max=1.0, samples=10)
    _, exact, approx = series[0]
    assert abs(approx / exact - 1) < 1e-3
    with pytest.raises(ParameterDomainError):
        bt.figure1_series(r_min=1.0, r_max=0.5)
    with pytest.raises(ParameterDomainError):
        bt.figure1_series(samples=1)


def test_compare_report(generated_tables):
    rows = generated_tables[TableId.V0_SQRT2]
    report = bt.compare_report(rows)
    entry = report["V0_SQRT2"]
    assert entry["rows"] == 30
    assert entry["passed"]
    assert entry["sources"]["numerical"]["numeric"]["max"] <= 2e-4
    # no Chakrabarti-Das column in this table
    assert "analytical_cd" not in entry["sources"]
    assert entry["sources"]["susy"]["numeric"]["count"] == 29

    one_s = [abs(r.analytic_deltas["numerical"]) for r in rows[:6]]
    assert one_s[0] == pytest.approx(0.0, abs=5e-6)
    assert one_s[-1] == pytest.approx(1.1e-3, abs=1e-4)
    assert "V0_SQRT2: 30 rows" in bt.format_report(report)


def test_compare_report_flags_excited_outliers(generated_tables):
    entry = bt.compare_report(generated_tables[TableId.HBAR_2M_EXCITED])["HBAR_2M_EXCITED"]
    assert entry["sources"]["numerical"]["numeric"]["count"] == 11
    assert "analytical_cd" in entry["sources"]


def test_compare_report_requires_rows():
    with pytest.raises(ParameterDomainError):
        bt.compare_report([])
