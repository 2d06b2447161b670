import csv
import io

import pytest

from igc import tables
from igc.plotting import security_vs_key_size


@pytest.fixture(scope="module")
def evaluated():
    return {tb: tables.evaluate_table(tb) for tb in (1, 2)}


def test_every_mismatch_is_registered(evaluated):
    for res in evaluated.values():
        assert tables.unexpected_mismatches(res) == []
    t2_floor = tables.evaluate_table(2, "floor")
    assert tables.unexpected_mismatches(t2_floor, "floor") == []


def test_registered_errata_are_real(evaluated):
    """Each registry entry names a cell that actually mismatches."""
    by_key = {(r.row.table, r.row.method, r.row.s, r.row.r): r for res in evaluated.values() for r in res}
    for key, cells in tables.ERRATA.items():
        for cell in cells:
            assert not by_key[key].checks[cell], (key, cell)
    for key in tables.FLOOR_ROUNDED_KEYS:
        assert not by_key[key].checks["key_bits"]


def test_examples(evaluated):
    a7 = evaluated[1][8]
    assert (a7.row.method, a7.row.s) == ("A", 7)
    assert a7.report.key_size_bits == 50076669 and abs(a7.report.security_bits - 256) <= 1
    p5 = next(r for r in evaluated[2] if r.row.s == 10 and r.row.p == 5)
    assert (p5.report.t, p5.k_bound) == (151, 2290)
    assert tables.evaluate_row(p5.row, key_rounding="floor").report.key_size_bits == 4439874
    lists = [r for r in evaluated[2] if r.row.method == "L"]
    assert [r.report.t for r in lists] == [41, 66, 133]


def test_doom_never_applies(evaluated):
    assert not any(tables.doom_flag(r) for res in evaluated.values() for r in res)


def test_csv_and_text(evaluated):
    text = tables.to_csv(evaluated[2])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == tables.HEADER
    assert len(rows) == 1 + len(tables.TABLE2)
    assert "ERRATUM" in tables.to_text(evaluated[2])


def test_figure(evaluated, tmp_path):
    out = tmp_path / "fig.png"
    security_vs_key_size(evaluated[1] + evaluated[2], out)
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
