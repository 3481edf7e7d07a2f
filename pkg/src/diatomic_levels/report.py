"""Spectrum reports and their CSV/JSON serialization.

Energies carry 6 significant digits, other reals 10. Values are rounded
when the row is built, so parsing an emitted report and emitting it again
gives identical bytes.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .catalog import MoleculeParams, dump_catalog
from .radial import EnergyLevel
from .units import CONSTANTS

ENERGY_DIGITS = 6
REAL_DIGITS = 10
ROW_FIELDS = ("molecule", "potential", "n", "ntilde", "m", "A", "B", "e_theta", "ell_tilde", "energy_ev")
AUX_FIELDS = ("c_nm", "d_nm", "n_max", "bound_count")


def sig(x: float, digits: int) -> float:
    return float(f"{x:.{digits}g}")


def catalog_hash(records) -> str:
    return hashlib.sha256(dump_catalog(records, "csv").encode()).hexdigest()


def make_metadata(records: list[MoleculeParams], **extra) -> dict:
    meta = {
        "catalog_hash": catalog_hash(records),
        "constants_version": CONSTANTS.version,
        "timestamp": datetime.now(timezone.utc).replace(microsecond=0).isoformat(),
    }
    meta.update(extra)
    return meta


def level_row(level: EnergyLevel) -> dict:
    ch = level.channel
    aux = {}
    for key in AUX_FIELDS:
        if key in level.aux:
            v = level.aux[key]
            aux[key] = v if isinstance(v, int) else sig(v, REAL_DIGITS)
    return {
        "molecule": level.molecule,
        "potential": level.potential,
        "n": level.n,
        "ntilde": ch.n_tilde if ch is not None else None,
        "m": ch.m if ch is not None else None,
        "A": sig(ch.A, REAL_DIGITS) if ch is not None else None,
        "B": sig(ch.B, REAL_DIGITS) if ch is not None else None,
        "e_theta": sig(level.e_theta, REAL_DIGITS),
        "ell_tilde": sig(level.ell_tilde, REAL_DIGITS),
        "energy_ev": sig(level.energy, ENERGY_DIGITS),
        "aux": aux,
    }


@dataclass
class SpectrumReport:
    metadata: dict
    rows: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {"metadata": self.metadata, "rows": self.rows, "diagnostics": self.diagnostics}, indent=2
        ) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SpectrumReport":
        obj = json.loads(text)
        return cls(obj["metadata"], obj["rows"], obj["diagnostics"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(ROW_FIELDS + AUX_FIELDS)
        for row in self.rows:
            values = [row[k] for k in ROW_FIELDS] + [row["aux"].get(k) for k in AUX_FIELDS]
            w.writerow(["" if v is None else v for v in values])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, metadata: dict | None = None) -> "SpectrumReport":
        rows = []
        for rec in csv.DictReader(io.StringIO(text)):
            row = {}
            for k in ROW_FIELDS:
                raw = rec[k]
                if k in ("molecule", "potential"):
                    row[k] = raw
                elif k in ("n", "ntilde", "m"):
                    row[k] = int(raw) if raw else None
                else:
                    row[k] = float(raw) if raw else None
            row["aux"] = {
                k: (int(rec[k]) if k == "bound_count" else float(rec[k])) for k in AUX_FIELDS if rec.get(k)
            }
            rows.append(row)
        return cls(metadata or {}, rows, [])

    def to_table(self) -> str:
        header = f"{'molecule':<8} {'potential':<8} {'n':>3} {'ñ':>3} {'m':>3} {'A':>6} {'B':>6} {'ℓ̃':>10} {'E (eV)':>12}"
        lines = [header, "-" * len(header)]
        for r in self.rows:
            lines.append(
                f"{r['molecule']:<8} {r['potential']:<8} {r['n']:>3} {r['ntilde']:>3} {r['m']:>3} "
                f"{r['A']:>6g} {r['B']:>6g} {r['ell_tilde']:>10.6g} {r['energy_ev']:>12.6g}"
            )
        for d in self.diagnostics:
            lines.append(f"# {d}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_table()
