"""Recompute the bundled bound-state energy table and compare cell by cell."""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from importlib import resources

from .angular import AngularChannel
from .catalog import MoleculeParams, find_molecule
from .radial import UnboundLevelError, kratzer_energy, morse_energy

REFERENCE_FIELDS = ("molecule", "n", "ntilde", "m", "A", "B", "potential", "energy_ev", "flag")
FLAGS = ("ok", "suspected_typo")
ENERGY = {"morse": morse_energy, "kratzer": kratzer_energy}
# a relabelled channel must match much tighter than the pass tolerance to be reported
HINT_TOL = 2e-5


@dataclass(frozen=True)
class ReferenceCell:
    molecule: str
    n: int
    ntilde: int
    m: int
    A: float
    B: float
    potential: str
    energy_ev: float
    flag: str = "ok"


@dataclass(frozen=True)
class CellResult:
    cell: ReferenceCell
    computed: float
    delta: float
    passed: bool
    hint: str = ""

    @property
    def status(self) -> str:
        if self.cell.flag != "ok":
            return "FLAGGED"
        return "PASS" if self.passed else "FAIL"


@dataclass
class ReproductionSummary:
    results: list
    tol: float

    @property
    def checked(self) -> list:
        return [r for r in self.results if r.cell.flag == "ok"]

    @property
    def flagged(self) -> list:
        return [r for r in self.results if r.cell.flag != "ok"]

    @property
    def failures(self) -> list:
        return [r for r in self.checked if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def max_abs_delta(self) -> float:
        return max((abs(r.delta) for r in self.checked), default=0.0)


def load_reference(source) -> list[ReferenceCell]:
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.DictReader(io.StringIO(data))
    missing = [f for f in REFERENCE_FIELDS if f not in (reader.fieldnames or [])]
    if missing:
        raise ValueError(f"reference table lacks columns {missing}")
    cells = []
    for line, rec in enumerate(reader, start=2):
        if rec["flag"] not in FLAGS:
            raise ValueError(f"line {line}: unknown flag {rec['flag']!r}")
        if rec["potential"] not in ENERGY:
            raise ValueError(f"line {line}: unknown potential {rec['potential']!r}")
        cells.append(ReferenceCell(
            molecule=rec["molecule"], n=int(rec["n"]), ntilde=int(rec["ntilde"]), m=int(rec["m"]),
            A=float(rec["A"]), B=float(rec["B"]), potential=rec["potential"],
            energy_ev=float(rec["energy_ev"]), flag=rec["flag"],
        ))
    return cells


def bundled_reference() -> list[ReferenceCell]:
    with resources.files("diatomic_levels.data").joinpath("table2.csv").open("rb") as fh:
        return load_reference(fh)


def _nearby_match(p: MoleculeParams, cell: ReferenceCell, tol: float = HINT_TOL) -> str:
    """Look for a single small change of quantum numbers that reproduces the cell."""
    fn = ENERGY[cell.potential]
    hits = []
    for dn, dt, dm in itertools.product((-1, 0, 1), repeat=3):
        n, nt, m = cell.n + dn, cell.ntilde + dt, cell.m + dm
        if (dn, dt, dm) == (0, 0, 0) or min(n, nt) < 0:
            continue
        try:
            e = fn(p, n, AngularChannel(nt, m, cell.A, cell.B)).energy
        except UnboundLevelError:
            continue
        if abs(e - cell.energy_ev) <= tol:
            hits.append(f"(n={n}, ñ={nt}, m={m})")
    # several hits means a dense spectrum, not a relabelling
    return f"matches {hits[0]}" if len(hits) == 1 else ""


def reproduce(catalog: list[MoleculeParams], cells: list[ReferenceCell], tol: float = 1e-3,
              molecule: str | None = None) -> ReproductionSummary:
    results = []
    for cell in cells:
        if molecule is not None and cell.molecule != molecule:
            continue
        p = find_molecule(catalog, cell.molecule)
        ch = AngularChannel(cell.ntilde, cell.m, cell.A, cell.B)
        computed = ENERGY[cell.potential](p, cell.n, ch).energy
        delta = computed - cell.energy_ev
        passed = abs(delta) <= tol
        hint = "" if passed else _nearby_match(p, cell)
        results.append(CellResult(cell, computed, delta, passed, hint))
    return ReproductionSummary(results, tol)
