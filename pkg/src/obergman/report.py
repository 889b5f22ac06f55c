"""Structured verification reports: entries, JSON/CSV emission, schema check.

An entry passes iff |expected - observed| <= tolerance componentwise; for
stochastic checks the tolerance already folds in the standard error.
Reports are byte-for-byte reproducible for a fixed configuration except
for the wall_time_ms fields.
"""

from __future__ import annotations

import csv
import io
import json
import subprocess
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import __version__


class ConfigError(ValueError):
    """Invalid scenario configuration (CLI exits with status 2)."""


SCENARIO_NAMES = (
    "algebra",
    "analyticity",
    "kernel-consistency",
    "cauchy-formula",
    "reproduce-halfspace",
    "reproduce-ball",
    "limit-lemma",
    "density",
    "complex-oracle",
    "all",
)


@dataclass
class ScenarioConfig:
    scenario: str
    dim: Optional[int] = None
    seed: int = 42
    samples: Optional[int] = None
    tolerance: Optional[float] = None
    radius: Optional[float] = None
    out: Optional[str] = None
    fmt: str = "json"

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIO_NAMES:
            raise ConfigError(
                f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIO_NAMES)}"
            )
        if self.dim is not None and self.dim not in (2, 4, 8):
            raise ConfigError("--dim must be 2, 4 or 8")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("--samples must be positive")
        if self.fmt not in ("json", "csv"):
            raise ConfigError("--format must be json or csv")
        if self.radius is not None and not self.radius > 0:
            raise ConfigError("--radius must be positive")


def _plain(value: Any) -> Any:
    """Coerce numpy scalars/arrays and Elements into JSON-ready values."""
    from .algebra import Element

    if value is None or isinstance(value, (bool, str, int)):
        return value
    if isinstance(value, float):
        return float(value)
    if isinstance(value, Element):
        return [float(c) for c in value.coeffs]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass
class Entry:
    name: str
    inputs: dict
    expected: Any
    observed: Any
    std_error: float
    tolerance: float
    passed: bool
    wall_time_ms: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": _plain(self.inputs),
            "expected": _plain(self.expected),
            "observed": _plain(self.observed),
            "std_error": float(self.std_error),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
            "wall_time_ms": float(self.wall_time_ms),
        }


def deviation(expected: Any, observed: Any) -> float:
    """Componentwise-max absolute deviation between two entry values."""
    e = np.atleast_1d(np.asarray(_plain(expected), dtype=np.float64))
    o = np.atleast_1d(np.asarray(_plain(observed), dtype=np.float64))
    if e.shape != o.shape:
        raise ValueError(f"shape mismatch {e.shape} vs {o.shape}")
    return float(np.max(np.abs(e - o)))


def within(expected: Any, observed: Any, tolerance: float) -> bool:
    return deviation(expected, observed) <= tolerance


@dataclass
class VerificationReport:
    entries: list[Entry] = field(default_factory=list)
    build_id: Optional[str] = None

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def passed(self) -> int:
        return sum(1 for e in self.entries if e.passed)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total

    def to_dict(self) -> dict:
        summary: dict[str, Any] = {"total": self.total, "passed": self.passed}
        if self.build_id is not None:
            summary["build_id"] = self.build_id
        return {"entries": [e.to_dict() for e in self.entries], "summary": summary}


def build_id() -> str:
    ident = f"obergman {__version__}"
    try:
        here = Path(__file__).resolve().parent
        out = subprocess.run(
            ["git", "-C", str(here), "describe", "--always", "--dirty"],
            capture_output=True,
            text=True,
            timeout=5,
        )
        if out.returncode == 0 and out.stdout.strip():
            ident += f" ({out.stdout.strip()})"
    except OSError:
        pass
    return ident


_CSV_COLUMNS = (
    "name",
    "inputs",
    "expected",
    "observed",
    "std_error",
    "tolerance",
    "pass",
    "wall_time_ms",
)


def render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for entry in report.entries:
            d = entry.to_dict()
            writer.writerow(
                [
                    d["name"],
                    json.dumps(d["inputs"]),
                    json.dumps(d["expected"]),
                    json.dumps(d["observed"]),
                    d["std_error"],
                    d["tolerance"],
                    d["pass"],
                    d["wall_time_ms"],
                ]
            )
        return buf.getvalue()
    raise ConfigError("--format must be json or csv")


def emit_report(
    report: VerificationReport, fmt: str = "json", path: Optional[str] = None
) -> str:
    """Serialize the report; write it to ``path`` when given."""
    text = render_report(report, fmt)
    if path is not None:
        Path(path).write_text(text)
    return text


def validate_report(obj: Any) -> None:
    """Check a parsed report (or a path to one) against the bundled schema."""
    import jsonschema

    if isinstance(obj, (str, Path)):
        obj = json.loads(Path(obj).read_text())
    schema = json.loads(
        (Path(__file__).resolve().parent / "report_schema.json").read_text()
    )
    jsonschema.validate(obj, schema)
