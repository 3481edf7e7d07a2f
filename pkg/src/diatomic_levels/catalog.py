"""Spectroscopic parameter catalog for diatomic molecules.

The bundled catalog holds ten transition-metal diatomics (D_e, r_e, omega_e,
mu and the Morse width a). Records can be read from CSV or JSON with the
column names in ``FIELDS``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import IO, Iterable

from .units import CONSTANTS, hbar2_over_2mu, wavenumber_to_ev

FIELDS = ("name", "De_eV", "re_angstrom", "omega_e_cm1", "mu_amu", "a_inv_angstrom", "source")
REQUIRED = FIELDS[:5]

# a*r_e below this is flagged: the Pekeris expansion degrades for soft wells
MIN_ALPHA = 1.5
# supplied vs derived Morse width
WIDTH_MISMATCH_TOL = 5e-3


class CatalogError(ValueError):
    """Malformed or invalid catalog input."""

    def __init__(self, message: str, row: int | None = None, field: str | None = None):
        self.row = row
        self.field = field
        where = ""
        if row is not None:
            where = f"row {row}"
            if field is not None:
                where += f", field {field!r}"
            where += ": "
        super().__init__(where + message)


class CatalogConflictError(CatalogError):
    """Two records share a molecule name."""


@dataclass(frozen=True)
class MoleculeParams:
    name: str
    De: float
    re: float
    omega_e: float
    mu: float
    a: float | None = None
    source: str = ""
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for attr in ("De", "re", "omega_e", "mu"):
            v = getattr(self, attr)
            if not (math.isfinite(v) and v > 0):
                raise CatalogError(f"{attr} must be positive and finite, got {v!r}", field=attr)
        if self.a is not None and not (math.isfinite(self.a) and self.a > 0):
            raise CatalogError(f"a must be positive and finite, got {self.a!r}", field="a")

    @property
    def alpha(self) -> float:
        """Dimensionless a*r_e (uses the derived width when a is absent)."""
        a = self.a if self.a is not None else morse_width(self)
        return a * self.re


def rotational_constant(p: MoleculeParams) -> float:
    """B_e = hbar^2 / (2 mu r_e^2) expressed in cm^-1."""
    return hbar2_over_2mu(p.mu) / p.re**2 * CONSTANTS.wavenumber_per_ev


def morse_width(p: MoleculeParams) -> float:
    """Morse width a = omega_e / (2 r_e sqrt(B_e D_e)) in 1/angstrom.

    The supplied ``p.a`` is ignored.
    """
    de_cm = p.De * CONSTANTS.wavenumber_per_ev
    return p.omega_e / (2.0 * p.re * math.sqrt(rotational_constant(p) * de_cm))


def chemical_dissociation(p: MoleculeParams) -> tuple[float, bool]:
    """Return ``(D_0, unphysical)`` with D_0 = D_e - hbar*omega_e/2 in eV.

    ``unphysical`` is True when D_0 <= 0.
    """
    d0 = p.De - 0.5 * wavenumber_to_ev(p.omega_e)
    return d0, d0 <= 0


def _finalize(p: MoleculeParams) -> MoleculeParams:
    notes = []
    derived = morse_width(p)
    if p.a is None:
        p = replace(p, a=derived)
    else:
        rel = abs(p.a - derived) / derived
        if rel > WIDTH_MISMATCH_TOL:
            notes.append(
                f"{p.name}: supplied a={p.a:g} differs from derived {derived:.6g} by {rel:.2%}"
            )
    if p.a * p.re <= MIN_ALPHA:
        notes.append(f"{p.name}: a*r_e={p.a * p.re:.4g} <= {MIN_ALPHA}")
    if chemical_dissociation(p)[1]:
        notes.append(f"{p.name}: D_0 <= 0, zero-point energy exceeds D_e")
    return replace(p, diagnostics=tuple(notes))


def _parse_float(raw, row: int, name: str) -> float:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return float(raw)
    if not isinstance(raw, str):
        raise CatalogError(f"expected a number, got {raw!r}", row, name)
    text = raw.strip()
    # plain decimal only: float() alone would accept "1_000", "inf", "nan"
    if not text or "_" in text or text.lower().lstrip("+-") in ("inf", "infinity", "nan"):
        raise CatalogError(f"not a plain decimal number: {raw!r}", row, name)
    try:
        return float(text)
    except ValueError:
        raise CatalogError(f"not a plain decimal number: {raw!r}", row, name) from None


def _record_from_mapping(rec: dict, row: int) -> MoleculeParams:
    for name in REQUIRED:
        if name not in rec or rec[name] is None or (isinstance(rec[name], str) and not rec[name].strip()):
            raise CatalogError("missing required value", row, name)
    name = str(rec["name"]).strip()
    values = {k: _parse_float(rec[k], row, k) for k in REQUIRED[1:]}
    a_raw = rec.get("a_inv_angstrom")
    a = None
    if a_raw is not None and not (isinstance(a_raw, str) and not a_raw.strip()):
        a = _parse_float(a_raw, row, "a_inv_angstrom")
    source = rec.get("source") or ""
    try:
        return MoleculeParams(
            name=name,
            De=values["De_eV"],
            re=values["re_angstrom"],
            omega_e=values["omega_e_cm1"],
            mu=values["mu_amu"],
            a=a,
            source=str(source).strip(),
        )
    except CatalogError as exc:
        column = {"De": "De_eV", "re": "re_angstrom", "omega_e": "omega_e_cm1",
                  "mu": "mu_amu", "a": "a_inv_angstrom"}.get(exc.field, exc.field)
        raise CatalogError(str(exc), row, column) from None


def _rows(source: IO, fmt: str) -> list[tuple[int, dict]]:
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if fmt == "csv":
        if not data.strip():
            return []
        reader = csv.DictReader(io.StringIO(data))
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED if c not in header]
        if missing:
            raise CatalogError(f"CSV header lacks required columns {missing}")
        # row numbers count the header as line 1
        return [(i, r) for i, r in enumerate(reader, start=2)]
    if fmt == "json":
        if not data.strip():
            return []
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"invalid JSON: {exc}") from None
        if not isinstance(obj, list):
            raise CatalogError("JSON catalog must be an array of objects")
        out = []
        for i, r in enumerate(obj):
            if not isinstance(r, dict):
                raise CatalogError("expected an object", i)
            out.append((i, r))
        return out
    raise ValueError(f"unknown catalog format {fmt!r}")


def load_catalog(source: IO, fmt: str = "csv", diagnostics: list | None = None) -> list[MoleculeParams]:
    """Parse and validate a catalog from a text or byte stream.

    Invalid rows raise :class:`CatalogError`. If a ``diagnostics`` list is
    given, invalid rows are skipped and their messages appended to it instead.
    Duplicate names always raise :class:`CatalogConflictError`.
    """
    records: list[MoleculeParams] = []
    seen: dict[str, int] = {}
    for row, rec in _rows(source, fmt):
        try:
            p = _record_from_mapping(rec, row)
        except CatalogError as exc:
            if diagnostics is None:
                raise
            diagnostics.append(str(exc))
            continue
        if p.name in seen:
            raise CatalogConflictError(
                f"duplicate molecule {p.name!r} (first seen at row {seen[p.name]})", row, "name"
            )
        seen[p.name] = row
        records.append(_finalize(p))
    return records


def load_catalog_file(path, diagnostics: list | None = None) -> list[MoleculeParams]:
    path = str(path)
    fmt = "json" if path.lower().endswith(".json") else "csv"
    with open(path, "rb") as fh:
        return load_catalog(fh, fmt, diagnostics)


def default_catalog() -> list[MoleculeParams]:
    """The bundled ten-molecule catalog."""
    with resources.files("diatomic_levels.data").joinpath("table1.csv").open("rb") as fh:
        return load_catalog(fh, "csv")


def _as_row(p: MoleculeParams) -> dict:
    return {
        "name": p.name,
        "De_eV": p.De,
        "re_angstrom": p.re,
        "omega_e_cm1": p.omega_e,
        "mu_amu": p.mu,
        "a_inv_angstrom": p.a,
        "source": p.source,
    }


def dump_catalog(records: Iterable[MoleculeParams], fmt: str = "csv") -> str:
    """Serialize records; floats use ``repr`` so a reload is exact."""
    rows = [_as_row(p) for p in records]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown catalog format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELDS)
    for r in rows:
        writer.writerow(["" if r[k] is None else (repr(r[k]) if isinstance(r[k], float) else r[k]) for k in FIELDS])
    return buf.getvalue()


def find_molecule(records: Iterable[MoleculeParams], name: str) -> MoleculeParams:
    for p in records:
        if p.name == name:
            return p
    raise KeyError(name)
