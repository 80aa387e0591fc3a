"""Deterministic parameter sweeps pairing closed forms with matrix oracles.

Every row evaluates a quantity twice: once from its closed form and once
from explicit 4x4 Wigner matrices (decomposed into angles, then pushed
through the state and CHSH machinery where needed).  The residual between
the two is reported and rows above the tolerance are flagged.
"""

from __future__ import annotations

import json
import math
import os
import re
import time
from dataclasses import dataclass, field

import numpy as np

from .bell import (
    TSIRELSON,
    chsh,
    compensated_setting_massive,
    compensated_setting_massless,
    fixed_setting_massive,
    fixed_setting_massless,
)
from .errors import NotInLittleGroupError
from .little_group import (
    decompose_iso2,
    delta_orthogonal,
    epsilon_orthogonal,
    extract_rotation_angle,
    massive_wigner,
    massless_wigner,
    normalize_angle,
)
from .lorentz import rapidity_from_velocity
from .states import apply_local, helicity_phase, photon_epr_state, singlet, wigner_d_half

MODES = ("delta-surface", "epsilon-surface", "chsh-massive", "chsh-massless", "compensation-check")
FORMATS = ("csv", "json")
TOL_ENV = "WIGNER_EPR_TOL"
DEFAULT_TOL = 1e-9

# which grid axes each mode reads
_AXES = {
    "delta-surface": ("xi", "chi"),
    "chsh-massive": ("xi", "chi"),
    "epsilon-surface": ("chi", "phi"),
    "chsh-massless": ("chi", "phi"),
    "compensation-check": ("xi", "chi", "phi"),
}


class SweepSpecError(ValueError):
    """Malformed sweep specification."""


_PI_TOKEN = re.compile(r"^\s*([+-]?[0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_number(text: str) -> float:
    """Float literal, optionally a multiple of pi (``pi/3``, ``-2pi``, ``0.5*pi``)."""
    m = _PI_TOKEN.match(text)
    try:
        if m:
            coef = m.group(1)
            coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
            den = float(m.group(2)) if m.group(2) else 1.0
            return coef * math.pi / den
        return float(text)
    except ValueError:
        raise SweepSpecError(f"cannot parse number {text!r}") from None


@dataclass(frozen=True)
class Axis:
    values: tuple[float, ...]

    @classmethod
    def linspace(cls, start: float, stop: float, count: int) -> Axis:
        if count < 2:
            raise SweepSpecError(f"grid count must be >= 2, got {count}")
        return cls(tuple(float(x) for x in np.linspace(start, stop, count)))

    @classmethod
    def parse(cls, text: str) -> Axis:
        """``start:stop:count`` or an explicit comma-separated list."""
        text = text.strip()
        if not text:
            raise SweepSpecError("empty grid")
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise SweepSpecError(f"grid must be start:stop:count, got {text!r}")
            try:
                count = int(parts[2])
            except ValueError:
                raise SweepSpecError(f"grid count must be an integer, got {parts[2]!r}") from None
            return cls.linspace(parse_number(parts[0]), parse_number(parts[1]), count)
        return cls(tuple(parse_number(t) for t in text.split(",")))

    @property
    def bounds(self) -> tuple[float, float]:
        return min(self.values), max(self.values)


def default_tolerance() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise SweepSpecError(f"{TOL_ENV} must be a number, got {raw!r}") from None
    if not tol > 0:
        raise SweepSpecError(f"{TOL_ENV} must be positive")
    return tol


@dataclass(frozen=True)
class SweepSpec:
    """Sweep request.  ``xi``/``chi`` axes are velocities v/c and V/c, ``phi`` is in radians."""

    mode: str
    xi: Axis = field(default_factory=lambda: Axis.linspace(0.0, 0.99, 20))
    chi: Axis = field(default_factory=lambda: Axis.linspace(0.0, 0.99, 20))
    phi: Axis = field(default_factory=lambda: Axis.linspace(0.0, math.pi, 20))
    fmt: str = "csv"
    seed: int = 0
    samples: int = 0
    tolerance: float = DEFAULT_TOL

    def validate(self) -> None:
        if self.mode not in MODES:
            raise SweepSpecError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.fmt not in FORMATS:
            raise SweepSpecError(f"unknown format {self.fmt!r}")
        if self.samples < 0:
            raise SweepSpecError("samples must be non-negative")
        if not self.tolerance > 0:
            raise SweepSpecError("tolerance must be positive")
        for name in _AXES[self.mode]:
            axis = getattr(self, name)
            if not axis.values:
                raise SweepSpecError(f"grid {name} is empty")
            for v in axis.values:
                if not math.isfinite(v):
                    raise SweepSpecError(f"grid {name} has a non-finite value")
                if name in ("xi", "chi") and not 0.0 <= v < 1.0:
                    raise SweepSpecError(f"velocity grid {name} must lie in [0, 1), got {v!r}")
                if name == "phi" and not 0.0 <= v <= 2 * math.pi:
                    raise SweepSpecError(f"angle grid phi must lie in [0, 2 pi], got {v!r}")


def _angle_residual(a: float, b: float) -> float:
    return abs(normalize_angle(a - b))


def _finish(row: dict, tol: float) -> dict:
    r = row["residual"]
    row["flagged"] = not (math.isfinite(r) and r <= tol)
    return row


def _oracle_delta(xi: float, chi: float) -> float:
    # W = R_y^-1(delta) on the +x branch
    return -extract_rotation_angle(massive_wigner(xi, chi)).delta


def _oracle_epsilons(chi: float, phi: float) -> tuple[float, float]:
    plus = decompose_iso2(massless_wigner(chi, math.pi / 2, phi, 1)).gamma
    minus = decompose_iso2(massless_wigner(chi, math.pi / 2, phi, -1)).gamma
    return plus, minus


def _safe(fn, *args):
    try:
        return fn(*args)
    except NotInLittleGroupError:
        return None


def _row_delta(v: float, vo: float, tol: float) -> dict:
    xi, chi = rapidity_from_velocity(v), rapidity_from_velocity(vo)
    closed = delta_orthogonal(xi, chi)
    oracle = _safe(_oracle_delta, xi, chi)
    oracle = math.nan if oracle is None else oracle
    return _finish(
        {
            "v_particle": v,
            "v_observer": vo,
            "xi": xi,
            "chi": chi,
            "closed_form": closed,
            "oracle": oracle,
            "residual": _angle_residual(closed, oracle) if math.isfinite(oracle) else math.nan,
            "chsh": TSIRELSON * math.cos(closed) ** 2,
        },
        tol,
    )


def _row_epsilon(vo: float, phi: float, tol: float) -> dict:
    chi = rapidity_from_velocity(vo)
    closed = epsilon_orthogonal(chi, phi)
    eps = _safe(_oracle_epsilons, chi, phi)
    oracle = math.nan if eps is None else eps[0]
    # the -x branch must rotate the other way
    residual = math.nan if eps is None else max(_angle_residual(closed, eps[0]), _angle_residual(-closed, eps[1]))
    return _finish(
        {
            "v_observer": vo,
            "phi": phi,
            "chi": chi,
            "closed_form": closed,
            "oracle": oracle,
            "residual": residual,
            "chsh": TSIRELSON * math.cos(4 * closed),
        },
        tol,
    )


def _row_chsh_massive(v: float, vo: float, tol: float) -> dict:
    xi, chi = rapidity_from_velocity(v), rapidity_from_velocity(vo)
    closed = TSIRELSON * math.cos(delta_orthogonal(xi, chi)) ** 2
    d = _safe(_oracle_delta, xi, chi)
    if d is None:
        oracle = compensated = math.nan
    else:
        state = apply_local(singlet(), wigner_d_half(d), wigner_d_half(-d))
        oracle = chsh(state, fixed_setting_massive())
        compensated = chsh(state, compensated_setting_massive(d))
    return _finish(
        {
            "v_particle": v,
            "v_observer": vo,
            "xi": xi,
            "chi": chi,
            "closed_form": closed,
            "oracle": oracle,
            "residual": abs(closed - oracle),
            "compensated": compensated,
        },
        tol,
    )


def _row_chsh_massless(vo: float, phi: float, tol: float) -> dict:
    chi = rapidity_from_velocity(vo)
    eps = epsilon_orthogonal(chi, phi)
    closed = TSIRELSON * math.cos(4 * eps)
    g = _safe(_oracle_epsilons, chi, phi)
    if g is None:
        oracle = compensated = math.nan
    else:
        state = apply_local(photon_epr_state(0.0, 0.0), helicity_phase(g[0]), helicity_phase(g[1]))
        oracle = chsh(state, fixed_setting_massless())
        compensated = chsh(state, compensated_setting_massless(g[0]))
    return _finish(
        {
            "v_observer": vo,
            "phi": phi,
            "chi": chi,
            "closed_form": closed,
            "oracle": oracle,
            "residual": abs(closed - oracle),
            "compensated": compensated,
        },
        tol,
    )


_ROW = {
    "delta-surface": _row_delta,
    "epsilon-surface": _row_epsilon,
    "chsh-massive": _row_chsh_massive,
    "chsh-massless": _row_chsh_massless,
}


def _grid_points(spec: SweepSpec, names: tuple[str, str]) -> list[tuple[float, float]]:
    a, b = (getattr(spec, n) for n in names)
    pts = [(x, y) for x in a.values for y in b.values]
    if spec.samples:
        rng = np.random.default_rng(spec.seed)
        (alo, ahi), (blo, bhi) = a.bounds, b.bounds
        for _ in range(spec.samples):
            pts.append((float(rng.uniform(alo, ahi)), float(rng.uniform(blo, bhi))))
    return pts


def run_sweep(spec: SweepSpec) -> list[dict]:
    """Rows in row-major grid order, followed by any seeded random samples."""
    spec.validate()
    if spec.mode == "compensation-check":
        return _compensation_rows(spec)
    names = _AXES[spec.mode]
    row = _ROW[spec.mode]
    return [row(x, y, spec.tolerance) for x, y in _grid_points(spec, names)]


def _compensation_rows(spec: SweepSpec) -> list[dict]:
    rows = []
    for v, vo in _grid_points(spec, ("xi", "chi")):
        r = _row_chsh_massive(v, vo, spec.tolerance)
        rows.append(("massive", r["xi"], r["chi"], math.nan, r["compensated"], r["residual"]))
    for vo, phi in _grid_points(spec, ("chi", "phi")):
        r = _row_chsh_massless(vo, phi, spec.tolerance)
        rows.append(("massless", math.nan, r["chi"], phi, r["compensated"], r["residual"]))
    out = []
    for case, xi, chi, phi, comp, res in rows:
        dev = abs(comp - TSIRELSON)
        out.append(
            _finish(
                {
                    "case": case,
                    "xi": xi,
                    "chi": chi,
                    "phi": phi,
                    "closed_form": TSIRELSON,
                    "oracle": comp,
                    "residual": max(dev, res) if math.isfinite(res) else math.nan,
                },
                spec.tolerance,
            )
        )
    return out


def report_compensation(spec: SweepSpec) -> dict:
    """Summary of how well the compensated settings restore ``2 sqrt2`` over the grid."""
    spec.validate()
    if spec.mode != "compensation-check":
        raise SweepSpecError("report_compensation needs mode 'compensation-check'")
    start = time.perf_counter()
    rows = run_sweep(spec)
    elapsed = time.perf_counter() - start

    def worst(case, key):
        vals = [r[key] if key == "residual" else abs(r[key] - TSIRELSON) for r in rows if r["case"] == case]
        return max(vals) if vals else 0.0

    return {
        "massive_points": sum(r["case"] == "massive" for r in rows),
        "massless_points": sum(r["case"] == "massless" for r in rows),
        "massive_max_deviation": worst("massive", "oracle"),
        "massless_max_deviation": worst("massless", "oracle"),
        "max_residual": max(r["residual"] for r in rows),
        "flagged_rows": sum(r["flagged"] for r in rows),
        "tolerance": spec.tolerance,
        "seed": spec.seed,
        "runtime_seconds": elapsed,
    }


def _fmt_float(x: float) -> str:
    return f"{x + 0.0:.17g}"


def _csv_value(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def _json_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v) if math.isfinite(v) else "null"
    if isinstance(v, int):
        return str(v)
    return json.dumps(v)


def format_rows(rows: list[dict], fmt: str) -> str:
    """Serialize rows; floats carry 17 significant digits so they round-trip."""
    if not rows:
        return ""
    keys = list(rows[0])
    if fmt == "csv":
        lines = [",".join(keys)]
        lines += [",".join(_csv_value(r[k]) for k in keys) for r in rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        objs = ["{" + ", ".join(f"{json.dumps(k)}: {_json_value(r[k])}" for k in keys) + "}" for r in rows]
        return "[\n  " + ",\n  ".join(objs) + "\n]\n"
    raise SweepSpecError(f"unknown format {fmt!r}")
