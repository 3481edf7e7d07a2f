import json

import pytest

from diatomic_levels.angular import AngularChannel
from diatomic_levels.radial import kratzer_energy, morse_energy
from diatomic_levels.report import SpectrumReport, catalog_hash, level_row, make_metadata, sig


@pytest.fixture
def report(catalog, molecule):
    p = molecule("ScH")
    rep = SpectrumReport(make_metadata(catalog))
    for n in range(3):
        for ch in (AngularChannel(0, 0, 1.0, 9.0), AngularChannel(2, 1, 9.0, 1.0)):
            rep.rows.append(level_row(morse_energy(p, n, ch)))
            rep.rows.append(level_row(kratzer_energy(p, n, ch)))
    rep.diagnostics.append("skipped ScH morse n=40: unbound")
    return rep


def test_sig():
    assert sig(-2.1369741234, 6) == -2.13697
    assert sig(123456789.0, 6) == 123457000.0
    assert sig(0.0, 6) == 0.0


def test_metadata(catalog):
    meta = make_metadata(catalog)
    assert meta["constants_version"] == "CODATA-2018"
    assert len(meta["catalog_hash"]) == 64
    assert meta["catalog_hash"] == catalog_hash(list(reversed(catalog[::-1])))
    assert meta["catalog_hash"] != catalog_hash(catalog[:-1])


def test_energy_digits(report):
    first = report.rows[0]
    assert first["energy_ev"] == -2.13697
    assert len(repr(abs(first["energy_ev"])).replace(".", "").lstrip("0")) <= 6


def test_json_round_trip(report):
    text = report.to_json()
    again = SpectrumReport.from_json(text)
    assert again.to_json() == text
    obj = json.loads(text)
    assert set(obj) == {"metadata", "rows", "diagnostics"}
    assert obj["rows"][0]["aux"]["bound_count"] > 0


def test_csv_round_trip(report):
    text = report.to_csv()
    again = SpectrumReport.from_csv(text, report.metadata)
    assert again.to_csv() == text
    assert again.rows == report.rows


def test_table_render(report):
    out = report.render("table")
    assert "ScH" in out and "-2.13697" in out
    assert out.rstrip().endswith("unbound")
    assert report.render("json") == report.to_json()
    assert report.render("csv") == report.to_csv()
