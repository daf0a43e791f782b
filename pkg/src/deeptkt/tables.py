"""Validation of the shipped discriminant tables against recomputed arithmetic.

The JSON files are treated as input data: every discriminant is rechecked
(fundamental, 3-class group of type (3,3)) and every recorded deep TKT is
passed through ``identify_tower_group``.  Nothing is trusted without recomputation.
"""
from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import DomainError, IdentificationError
from .finite import AbelianInvariants
from .quadfield import class_group, is_fundamental
from .symbolic import identify_tower_group
from .tree import smallgroups_label

TABLES = ("table2", "table3", "table4")
C3xC3 = AbelianInvariants((3, 3))
# relative frequencies (percent) of <729,99>, <729,100>, <729,101> among the determined rows
STATED_PROPORTIONS = {99: 40.0, 100: 30.0, 101: 30.0}
PROPORTION_TOL = 2.0

SCHEMA = {
    "type": "object",
    "required": ["rows", "version", "sha256"],
    "properties": {
        "version": {"type": "integer"},
        "sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["d", "group", "kappa_d", "e"],
                "additionalProperties": False,
                "properties": {
                    "d": {"type": "integer", "minimum": 2},
                    "e": {"type": "integer", "minimum": 2},
                    "group": {
                        "type": "object",
                        "required": ["order", "index"],
                        "additionalProperties": False,
                        "properties": {
                            "order": {"type": "integer"},
                            "index": {"type": ["integer", "null"]},
                        },
                    },
                    "kappa_d": {
                        "oneOf": [
                            {"type": "null"},
                            {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4},
                        ]
                    },
                },
            },
        },
    },
}


def default_data_dir() -> Path:
    return Path(str(resources.files("deeptkt.data").joinpath("tables")))


def rows_checksum(rows: list) -> str:
    body = json.dumps(rows, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


@dataclass
class RowCheck:
    table: str
    d: int
    group: tuple[int, int | None]
    fundamental: bool
    sylow3: str | None
    identified: tuple[int, int] | None = None
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def as_dict(self) -> dict:
        return {
            "table": self.table, "d": self.d,
            "group": list(self.group), "fundamental": self.fundamental,
            "sylow3": self.sylow3,
            "identified": list(self.identified) if self.identified else None,
            "ok": self.ok, "errors": self.errors,
        }


@dataclass
class TablesReport:
    rows: list[RowCheck] = field(default_factory=list)
    file_errors: list[str] = field(default_factory=list)
    tally: dict[int, int] = field(default_factory=dict)
    proportions: dict[int, float] = field(default_factory=dict)
    proportion_errors: list[str] = field(default_factory=list)

    @property
    def errors(self) -> list[str]:
        out = list(self.file_errors) + list(self.proportion_errors)
        for r in self.rows:
            out += [f"{r.table} d={r.d}: {e}" for e in r.errors]
        return out

    @property
    def ok(self) -> bool:
        return not self.errors

    def as_dict(self) -> dict:
        return {
            "rows": [r.as_dict() for r in self.rows],
            "tally": {str(k): v for k, v in sorted(self.tally.items())},
            "proportions": {str(k): round(v, 2) for k, v in sorted(self.proportions.items())},
            "errors": self.errors,
            "ok": self.ok,
        }


def load_table(path: Path) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    jsonschema.validate(doc, SCHEMA)
    if rows_checksum(doc["rows"]) != doc["sha256"]:
        raise ValueError(f"{path.name}: checksum mismatch")
    return doc


def check_row(table: str, row: dict) -> RowCheck:
    d = row["d"]
    grp = (row["group"]["order"], row["group"]["index"])
    rc = RowCheck(table, d, grp, is_fundamental(d), None)
    if not rc.fundamental:
        rc.errors.append("not a fundamental discriminant")
    else:
        try:
            s3 = class_group(d).sylow3
        except DomainError as exc:
            rc.errors.append(str(exc))
        else:
            rc.sylow3 = str(s3)
            if s3 != C3xC3:
                rc.errors.append(f"3-class group {s3}, expected (3,3)")
    if row["kappa_d"] is not None and grp[1] is not None:
        try:
            rc.identified = smallgroups_label(identify_tower_group(row["e"], row["kappa_d"]))
        except IdentificationError as exc:
            rc.errors.append(str(exc))
        else:
            if rc.identified != grp:
                rc.errors.append(f"kappa_d identifies {rc.identified}, table records {grp}")
    return rc


def tally_groups(rows: list[dict]) -> tuple[dict[int, int], dict[int, float]]:
    det = [r["group"]["index"] for r in rows if r["group"]["index"] is not None]
    tally = dict(sorted(Counter(det).items()))
    return tally, {k: 100.0 * v / len(det) for k, v in tally.items()}


def verify_tables(data_dir: str | Path | None = None) -> TablesReport:
    base = Path(data_dir) if data_dir is not None else default_data_dir()
    report = TablesReport()
    docs = {}
    for name in TABLES:
        path = base / f"{name}.json"
        try:
            docs[name] = load_table(path)
        except FileNotFoundError:
            report.file_errors.append(f"{name}: missing file {path}")
        except (jsonschema.ValidationError, ValueError) as exc:
            report.file_errors.append(f"{name}: {getattr(exc, 'message', exc)}")
    for name, doc in docs.items():
        report.rows += [check_row(name, r) for r in doc["rows"]]
    # rows shared between tables must agree on the group
    seen: dict[int, tuple] = {}
    for rc in report.rows:
        if rc.group[1] is None:
            continue
        prev = seen.setdefault(rc.d, rc.group)
        if prev != rc.group:
            rc.errors.append(f"group {rc.group} conflicts with {prev} recorded elsewhere")
    if "table4" in docs:
        report.tally, report.proportions = tally_groups(docs["table4"]["rows"])
        for idx, want in STATED_PROPORTIONS.items():
            got = report.proportions.get(idx, 0.0)
            if abs(got - want) > PROPORTION_TOL:
                report.proportion_errors.append(
                    f"<729,{idx}> frequency {got:.1f}% differs from {want:.0f}% by more than {PROPORTION_TOL} pp")
    return report
