"""Geometry records and run manifests, with deterministic CSV/JSON serialisation."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable

CSV_COLUMNS = ("kind", "id", "theta_or_index", "x", "y", "z")
KINDS = ("tangent", "circle", "dline", "ray")


@dataclass(frozen=True)
class GeometryRecord:
    kind: str
    id: int
    points: tuple[tuple[float, float, float], ...]
    meta: dict[str, float] = field(default_factory=dict)
    #: per-point parameter (theta for circles, h for rays, index otherwise)
    params: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")
        pts = tuple(tuple(float(c) for c in p) for p in self.points)
        if not pts:
            raise ValueError("a geometry record needs at least one point")
        if any(len(p) != 3 or not all(math.isfinite(c) for c in p) for p in pts):
            raise ValueError("points must be finite (x, y, z) triples")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "meta", {k: float(v) for k, v in sorted(self.meta.items())})
        if self.params is not None:
            params = tuple(float(t) for t in self.params)
            if len(params) != len(pts):
                raise ValueError("one parameter per point is required")
            object.__setattr__(self, "params", params)

    def param(self, i: int) -> float:
        return float(i) if self.params is None else self.params[i]

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["points"] = [list(p) for p in self.points]
        if self.params is not None:
            d["params"] = list(self.params)
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GeometryRecord":
        params = d.get("params")
        return cls(d["kind"], int(d["id"]), tuple(tuple(p) for p in d["points"]),
                   dict(d.get("meta", {})), None if params is None else tuple(params))


@dataclass
class RunManifest:
    command: str
    config: dict[str, Any]
    seed: int | None
    tolerances: dict[str, float]
    checks: list[dict[str, Any]] = field(default_factory=list)
    files: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def add_check(self, name: str, value: float, bound: float, relation: str = "<=",
                  suite: str | None = None) -> bool:
        """Record ``value <= bound`` (residuals) or ``value > bound`` (positive margins)."""
        if relation not in ("<=", ">"):
            raise ValueError(f"unknown relation {relation!r}")
        ok = bool(value <= bound) if relation == "<=" else bool(value > bound)
        entry: dict[str, Any] = {"name": name, "residual": float(value), "tol": float(bound),
                                 "relation": relation, "passed": ok}
        if suite is not None:
            entry = {"suite": suite, **entry}
        self.checks.append(entry)
        return ok

    def to_json(self) -> str:
        body = {
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "checks": self.checks,
            "files": self.files,
            "passed": self.passed,
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"


def records_to_csv(records: Iterable[GeometryRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        for i, (x, y, z) in enumerate(rec.points):
            w.writerow([rec.kind, rec.id, repr(rec.param(i)), repr(x), repr(y), repr(z)])
    return buf.getvalue()


def records_to_json(records: Iterable[GeometryRecord], manifest: str | None = None) -> str:
    body: dict[str, Any] = {"records": [r.to_dict() for r in records]}
    if manifest is not None:
        body["manifest"] = manifest
    return json.dumps(body, indent=1, sort_keys=True) + "\n"


def records_from_json(text: str) -> list[GeometryRecord]:
    return [GeometryRecord.from_dict(d) for d in json.loads(text)["records"]]


def records_from_csv(text: str) -> list[GeometryRecord]:
    """Rebuild records from CSV rows; ``meta`` is not carried by this format."""
    rows = list(csv.DictReader(io.StringIO(text)))
    if rows and tuple(rows[0].keys()) != CSV_COLUMNS:
        raise ValueError("unexpected CSV header")
    out: list[GeometryRecord] = []
    key = None
    pts: list[tuple[float, float, float]] = []
    params: list[float] = []
    for row in rows + [None]:
        k = None if row is None else (row["kind"], int(row["id"]))
        if key is not None and k != key:
            out.append(GeometryRecord(key[0], key[1], tuple(pts), {}, tuple(params)))
            pts, params = [], []
        if row is None:
            break
        key = k
        pts.append((float(row["x"]), float(row["y"]), float(row["z"])))
        params.append(float(row["theta_or_index"]))
    return out


def manifest_path(out: Path) -> Path:
    """Sidecar manifest for a data file: ``scene.csv`` -> ``scene.csv.manifest.json``."""
    return out.with_name(out.name + ".manifest.json")


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
