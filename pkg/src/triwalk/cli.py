"""Config-driven batch front end.

Reads a YAML run configuration, executes the propagate / measure / oracle
pipeline, and writes per-site results as CSV or JSON. Floats are emitted
with shortest round-trip formatting so downstream checks can recompute the
measure column losslessly, and identical configs produce byte-identical
output files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np
import yaml

from .core import CoinField, ComplexTriple, make_coin
from .errors import (
    ConstraintViolated,
    NotUnitary,
    OverflowDetected,
    ParseError,
    SingularDenominator,
    ValidationError,
    WindowTooSmall,
)
from .measure import MeasureClassification, MeasureProfile, classify, measure_profile
from .models import MODEL_NAMES, build_field
from .oracle import eigen_residual, stationarity_deviation
from .transfer import origin_constraint, propagate, solve_initial_states

__all__ = ["RunConfig", "RunReport", "parse_config", "run", "main"]

_DEFAULT_WINDOW = (-20, 20)
_DEFAULT_STEPS = 10
_KNOWN_KEYS = {
    "model",
    "lambda",
    "alpha",
    "psi0_mode",
    "window",
    "oracle_steps",
    "output_format",
    "output_path",
}


@dataclass(frozen=True)
class RunConfig:
    model: str
    field: CoinField
    lam: complex
    alpha: complex
    psi0: Optional[ComplexTriple]  # None means: solve the constraint (auto)
    window: tuple[int, int]
    oracle_steps: int
    output_format: str
    output_path: Optional[str]


@dataclass(frozen=True)
class RunReport:
    config: RunConfig
    psi0: ComplexTriple
    x: list[int]
    amplitudes: np.ndarray
    profile: MeasureProfile
    classification: MeasureClassification
    eigen_residual: float
    stationarity_deviation: Optional[float]
    exit_status: int = 0


def _parse_complex(value, field_name: str) -> complex:
    if isinstance(value, bool):
        raise ValidationError(field_name, "expected a complex scalar")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            return complex(re, im)
    if isinstance(value, dict) and set(value) == {"angle"}:
        angle = value["angle"]
        if isinstance(angle, (int, float)) and not isinstance(angle, bool):
            return complex(np.exp(1j * float(angle)))
    raise ValidationError(
        field_name, f"expected a number, [re, im] pair, or {{angle: theta}}, got {value!r}"
    )


def _parse_coin_entries(entries, field_name: str):
    if not isinstance(entries, (list, tuple)) or len(entries) != 9:
        raise ValidationError(field_name, "coin entries must be a list of 9 complex scalars")
    scalars = [_parse_complex(v, field_name) for v in entries]
    try:
        return make_coin(*scalars)
    except NotUnitary as exc:
        raise ValidationError(field_name, str(exc)) from exc


def _parse_model(value) -> tuple[str, CoinField]:
    if isinstance(value, str):
        if value not in MODEL_NAMES:
            raise ValidationError("model", f"unknown model {value!r}; choose one of {MODEL_NAMES}")
        return value, build_field(value)
    if isinstance(value, dict) and "name" in value:
        extra = set(value) - {"name", "phase"}
        if extra:
            raise ValidationError("model", f"unexpected keys {sorted(extra)}")
        name = value["name"]
        if name not in MODEL_NAMES:
            raise ValidationError("model", f"unknown model {name!r}; choose one of {MODEL_NAMES}")
        phase = value.get("phase", math.pi)
        if not isinstance(phase, (int, float)) or isinstance(phase, bool):
            raise ValidationError("model", "phase must be a real number")
        return name, build_field(name, float(phase))
    if isinstance(value, dict) and "default" in value:
        extra = set(value) - {"default", "overrides"}
        if extra:
            raise ValidationError("model", f"unexpected keys {sorted(extra)}")
        default = _parse_coin_entries(value["default"], "model.default")
        overrides = {}
        for k, item in enumerate(value.get("overrides") or []):
            if not isinstance(item, dict) or set(item) != {"position", "entries"}:
                raise ValidationError(
                    "model.overrides", "each override needs 'position' and 'entries'"
                )
            pos = item["position"]
            if not isinstance(pos, int) or isinstance(pos, bool):
                raise ValidationError("model.overrides", f"position must be an integer, got {pos!r}")
            overrides[pos] = _parse_coin_entries(item["entries"], f"model.overrides[{k}]")
        return "explicit", CoinField(default, overrides)
    raise ValidationError("model", f"unrecognized model specification: {value!r}")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a YAML run configuration document."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed configuration: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("configuration must be a mapping of fields")
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise ValidationError(sorted(unknown)[0], "unknown configuration field")
    if "model" not in doc:
        raise ValidationError("model", "required field is missing")

    model, field = _parse_model(doc["model"])

    lam = _parse_complex(doc.get("lambda", [1, 0]), "lambda")
    if abs(abs(lam) - 1.0) > 1e-12:
        raise ValidationError("lambda", f"not on the unit circle: |lambda| = {abs(lam)!r}")

    alpha = _parse_complex(doc.get("alpha", 1), "alpha")

    psi0_raw = doc.get("psi0_mode", "auto")
    if psi0_raw == "auto":
        psi0 = None
    elif isinstance(psi0_raw, (list, tuple)) and len(psi0_raw) == 3:
        psi0 = ComplexTriple(*(_parse_complex(v, "psi0_mode") for v in psi0_raw))
    else:
        raise ValidationError("psi0_mode", "expected 'auto' or a triple of complex scalars")

    window_raw = doc.get("window", list(_DEFAULT_WINDOW))
    if (
        not isinstance(window_raw, (list, tuple))
        or len(window_raw) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in window_raw)
    ):
        raise ValidationError("window", "expected [x_min, x_max] with integer bounds")
    x_min, x_max = int(window_raw[0]), int(window_raw[1])
    if not (x_min <= 0 <= x_max):
        raise ValidationError("window", f"[{x_min}, {x_max}] must contain the origin")

    steps = doc.get("oracle_steps", _DEFAULT_STEPS)
    if not isinstance(steps, int) or isinstance(steps, bool) or steps < 0:
        raise ValidationError("oracle_steps", "expected a non-negative integer")

    fmt = doc.get("output_format", "csv")
    if fmt not in ("csv", "json"):
        raise ValidationError("output_format", "expected 'csv' or 'json'")

    out = doc.get("output_path")
    if out is not None and not isinstance(out, str):
        raise ValidationError("output_path", "expected a path string")

    return RunConfig(model, field, lam, alpha, psi0, (x_min, x_max), steps, fmt, out)


def _format_csv(report: RunReport) -> str:
    lines = ["x,re_L,im_L,re_O,im_O,re_R,im_R,mu"]
    for k, x in enumerate(report.x):
        amp = report.amplitudes[k]
        cells = [str(x)]
        for comp in amp:
            cells.append(repr(float(comp.real)))
            cells.append(repr(float(comp.imag)))
        cells.append(repr(float(report.profile.values[k])))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _jsonable_float(v: Optional[float]):
    if v is None or not math.isfinite(v):
        return None
    return v


def _format_json(report: RunReport) -> str:
    cls = report.classification
    meta = {
        "model": report.config.model,
        "lambda": [report.config.lam.real, report.config.lam.imag],
        "alpha": [report.config.alpha.real, report.config.alpha.imag],
        "psi0": [[t.real, t.imag] for t in
                 (report.psi0.left, report.psi0.loop, report.psi0.right)],
        "window": list(report.config.window),
        "oracle_steps": report.config.oracle_steps,
        "eigen_residual": report.eigen_residual,
        "stationarity_deviation": report.stationarity_deviation,
        "classification": {
            "kind": cls.kind,
            "period": cls.period,
            "bounded_on_window": cls.bounded_on_window,
            "max_over_min_ratio": _jsonable_float(cls.max_over_min_ratio),
        },
    }
    rows = []
    for k, x in enumerate(report.x):
        amp = report.amplitudes[k]
        rows.append(
            {
                "x": x,
                "re_L": float(amp[0].real),
                "im_L": float(amp[0].imag),
                "re_O": float(amp[1].real),
                "im_O": float(amp[1].imag),
                "re_R": float(amp[2].real),
                "im_R": float(amp[2].imag),
                "mu": float(report.profile.values[k]),
            }
        )
    return json.dumps({"metadata": meta, "rows": rows}, indent=2, sort_keys=True) + "\n"


def run(config: RunConfig) -> RunReport:
    """Execute one configured run and write its output file.

    Numerical failures (singular transfer denominator, origin-constraint
    violation, overflow) propagate as exceptions; the caller maps them to
    exit codes.
    """
    if config.psi0 is None:
        basis = solve_initial_states(origin_constraint(config.field, config.lam))
        psi0 = basis[0].scaled(config.alpha)
    else:
        psi0 = config.psi0

    x_min, x_max = config.window
    segment = propagate(config.field, config.lam, psi0, x_min, x_max)
    profile = measure_profile(segment)
    classification = classify(profile)
    residual = eigen_residual(config.field, segment)
    deviation = (
        stationarity_deviation(config.field, segment, config.oracle_steps)
        if config.oracle_steps >= 1
        else None
    )

    report = RunReport(
        config=config,
        psi0=psi0,
        x=list(segment.positions()),
        amplitudes=segment.values,
        profile=profile,
        classification=classification,
        eigen_residual=residual,
        stationarity_deviation=deviation,
    )

    text = _format_csv(report) if config.output_format == "csv" else _format_json(report)
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        with open(config.output_path, "w", newline="") as fh:
            fh.write(text)
    return report


def _apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    window = tuple(args.window) if args.window else config.window
    if not (window[0] <= 0 <= window[1]):
        raise ValidationError("window", f"[{window[0]}, {window[1]}] must contain the origin")
    steps = args.steps if args.steps is not None else config.oracle_steps
    if steps < 0:
        raise ValidationError("oracle_steps", "expected a non-negative integer")
    return RunConfig(
        model=config.model,
        field=config.field,
        lam=config.lam,
        alpha=config.alpha,
        psi0=config.psi0,
        window=window,
        oracle_steps=steps,
        output_format=args.format or config.output_format,
        output_path=args.out or config.output_path,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triwalk",
        description="Stationary measures of three-state coined walks on the line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="execute one or more run configurations")
    runp.add_argument("configs", nargs="+", metavar="config-file")
    runp.add_argument("--window", nargs=2, type=int, metavar=("MIN", "MAX"))
    runp.add_argument("--steps", type=int, default=None, metavar="N")
    runp.add_argument("--format", choices=("csv", "json"), default=None)
    runp.add_argument("--out", default=None, metavar="PATH")

    sub.add_parser("models", help="list built-in model names")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "models":
        for name in MODEL_NAMES:
            print(name)
        return 0

    worst = 0
    for path in args.configs:
        try:
            try:
                with open(path) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read {path}: {exc}") from exc
            config = _apply_overrides(parse_config(text), args)
            run(config)
        except (ParseError, ValidationError, NotUnitary) as exc:
            print(f"error [{path}]: {exc}", file=sys.stderr)
            worst = max(worst, 1)
        except (SingularDenominator, ConstraintViolated, OverflowDetected, WindowTooSmall) as exc:
            print(f"error [{path}]: {exc}", file=sys.stderr)
            worst = max(worst, 2)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
