import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diatomic_levels.catalog import (
    CatalogConflictError,
    CatalogError,
    MoleculeParams,
    chemical_dissociation,
    dump_catalog,
    load_catalog,
    morse_width,
    rotational_constant,
)

HEADER = "name,De_eV,re_angstrom,omega_e_cm1,mu_amu,a_inv_angstrom,source\n"

TABLE1_A = {
    "ScH": 1.41113, "TiH": 1.32408, "VH": 1.44370, "CrH": 1.52179, "MnH": 1.59737,
    "CuLi": 1.00818, "TiC": 1.52550, "NiC": 2.25297, "ScN": 1.50680, "ScF": 1.46102,
}


def _csv(body):
    return io.BytesIO((HEADER + body).encode())


def test_bundled_catalog(catalog):
    assert [p.name for p in catalog] == list(TABLE1_A)
    for p in catalog:
        assert p.a == TABLE1_A[p.name]
        assert 2.3 <= p.alpha <= 3.7
        assert p.diagnostics == ()


def test_load_row():
    (p,) = load_catalog(_csv("ScH,2.25,1.776,1572,0.986040,1.41113,ref112\n"))
    assert p == MoleculeParams("ScH", 2.25, 1.776, 1572.0, 0.986040, 1.41113, "ref112")


def test_empty_inputs():
    assert load_catalog(io.BytesIO(b""), "csv") == []
    assert load_catalog(io.BytesIO(HEADER.encode()), "csv") == []
    assert load_catalog(io.StringIO("[]"), "json") == []


def test_negative_de_rejected():
    with pytest.raises(CatalogError) as err:
        load_catalog(_csv("Bad,-1,1.7,1500,1.0,,\n"))
    assert err.value.row == 2 and err.value.field == "De_eV"
    assert "positive" in str(err.value)


def test_lenient_mode_collects_diagnostics():
    notes = []
    records = load_catalog(_csv("Bad,-1,1.7,1500,1.0,,\nScH,2.25,1.776,1572,0.986040,,\n"), diagnostics=notes)
    assert [p.name for p in records] == ["ScH"]
    assert len(notes) == 1 and "row 2" in notes[0]


@pytest.mark.parametrize("value", ["1,5", "1_5", "abc", "inf", "nan", ""])
def test_plain_decimals_only(value):
    with pytest.raises(CatalogError) as err:
        load_catalog(_csv(f'X,"{value}",1.7,1500,1.0,,\n'))
    assert err.value.field == "De_eV"


def test_duplicate_name():
    with pytest.raises(CatalogConflictError):
        load_catalog(_csv("ScH,2.25,1.776,1572,0.98604,,\nScH,2.25,1.776,1572,0.98604,,\n"))


def test_missing_column():
    with pytest.raises(CatalogError):
        load_catalog(io.StringIO("name,De_eV\nX,1\n"))


def test_derived_width_when_absent():
    (p,) = load_catalog(_csv("ScH,2.25,1.776,1572,0.986040,,\n"))
    assert p.a == pytest.approx(1.41113, rel=2e-3)


def test_width_mismatch_warning():
    (p,) = load_catalog(_csv("ScH,2.25,1.776,1572,0.986040,1.5,\n"))
    assert p.a == 1.5
    assert any("differs" in d for d in p.diagnostics)


def test_soft_well_warning():
    (p,) = load_catalog(_csv("Soft,2.25,1.0,1572,0.986040,1.2,\n"))
    assert any("a*r_e" in d for d in p.diagnostics)


def test_json_equivalent_to_csv(catalog):
    text = dump_catalog(catalog, "json")
    assert load_catalog(io.StringIO(text), "json") == catalog
    assert json.loads(text)[0]["name"] == "ScH"


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_idempotent_reload(catalog, fmt):
    once = load_catalog(io.StringIO(dump_catalog(catalog, fmt)), fmt)
    assert once == catalog
    assert dump_catalog(once, fmt) == dump_catalog(catalog, fmt)


# B_e oracle: h / (8 pi^2 c mu u r_e^2) evaluated in SI with scipy.constants
def test_rotational_constant(molecule):
    p = molecule("ScH")
    assert rotational_constant(p) == pytest.approx(5.42, abs=0.01)
    assert rotational_constant(p) == pytest.approx(5.4202091, rel=1e-6)


def test_rotational_constant_scaling(molecule):
    from dataclasses import replace

    p = molecule("ScH")
    assert rotational_constant(replace(p, re=2 * p.re)) == pytest.approx(rotational_constant(p) / 4, rel=1e-14)
    assert rotational_constant(replace(p, mu=2 * p.mu)) == pytest.approx(rotational_constant(p) / 2, rel=1e-14)


@pytest.mark.parametrize("name", list(TABLE1_A))
def test_morse_width_matches_table(molecule, name):
    assert morse_width(molecule(name)) == pytest.approx(TABLE1_A[name], rel=2e-3)


def test_morse_width_linear_in_omega(molecule):
    from dataclasses import replace

    p = molecule("NiC")
    assert morse_width(replace(p, omega_e=2 * p.omega_e)) == pytest.approx(2 * morse_width(p), rel=1e-15)


def test_chemical_dissociation(molecule):
    from dataclasses import replace

    d0, bad = chemical_dissociation(molecule("ScH"))
    assert d0 == pytest.approx(2.1526, abs=1e-3) and not bad
    assert chemical_dissociation(molecule("MnH"))[0] == pytest.approx(1.5752, abs=1e-3)
    # omega_e must stay positive in a record, so the degenerate case goes through a tiny value
    tiny = replace(molecule("ScH"), omega_e=1e-300)
    assert chemical_dissociation(tiny)[0] == pytest.approx(2.25)


def test_unphysical_d0_flagged():
    (p,) = load_catalog(_csv("Weak,0.05,1.7,1500,1.0,,\n"))
    assert chemical_dissociation(p)[1]
    assert any("D_0" in d for d in p.diagnostics)


@given(
    st.floats(0.1, 10), st.floats(0.5, 4), st.floats(10, 5000), st.floats(0.5, 50)
)
def test_d0_below_de(de, re, w, mu):
    p = MoleculeParams("X", de, re, w, mu)
    assert chemical_dissociation(p)[0] < de
