"""
Tables behind each figure family, plus the run configuration and CSV writer.

Each ``table_*`` function takes a :class:`RunConfig` and returns
``(columns, rows)`` with ``rows`` a 2-d float array in grid order.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .dynamics import trajectory
from .errors import ParameterError
from .hilbert import ModelParams, StateVector
from .observables import build_xd_pd, dispersions, number_stats, pn_distribution, uncertainty_product
from .states import DpscsSpec, LoqcsMethod, LoqcsSpec, build_loqcs, dpscs_state

__all__ = [
    "RunConfig", "COMMANDS", "parse_grid", "parse_config_file", "resolve_config",
    "build_table", "format_csv", "write_csv",
]

FAMILIES = ("loqcs", "dpscs")


@dataclass(frozen=True)
class RunConfig:
    N: int = 10
    gamma: tuple[float, ...] = (0.3,)
    alpha: tuple[float, ...] = (0.0,)
    m: tuple[int, ...] = (0,)
    phi: float = 0.0
    t_max: float = 200.0
    t_steps: int = 4000
    method: str = LoqcsMethod.closed_form.value
    family: str = "loqcs"
    output_dir: str = "."

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.N)


# Per-command overrides of the RunConfig defaults; grids use start:stop:num.
COMMANDS = {
    "variance-vs-gamma": {"gamma": "0.016:0.8:50", "alpha": "0"},
    "pn-dist": {"gamma": "0.3", "alpha": "0", "m": "0"},
    "variance-vs-alpha": {"gamma": "0.3", "alpha": "0.05:1.6:32", "m": "0,2,4,8"},
    "phase-space": {"gamma": "0.1", "alpha": "0", "m": "0"},
    "dispersion-vs-gamma": {"gamma": "0.02:0.8:40", "alpha": "0"},
    "dispersion-vs-alpha-dpscs": {"alpha": "0.05:2:40", "m": "0,2,4,8"},
}


def parse_grid(text, cast=float) -> tuple:
    """Parse ``"a"``, ``"a,b,c"`` or ``"start:stop:num"`` (inclusive linspace)."""
    if isinstance(text, (int, float)):
        return (cast(text),)
    if isinstance(text, (list, tuple)):
        return tuple(cast(v) for v in text)
    text = str(text).strip()
    if not text:
        raise ParameterError("empty grid")
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            num = int(num)
            if num < 1:
                raise ParameterError(f"grid {text!r} has no points")
            values = np.linspace(float(start), float(stop), num)
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ParameterError(f"cannot parse grid {text!r}") from exc
    if len(values) == 0:
        raise ParameterError(f"grid {text!r} has no points")
    out = []
    for v in values:
        if cast is int and float(v) != int(v):
            raise ParameterError(f"grid {text!r} must contain integers")
        out.append(cast(v))
    return tuple(out)


def parse_config_file(path) -> dict[str, str]:
    """Read flat ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        key = {"n_levels": "N", "out": "output_dir"}.get(key, key)
        out[key] = value
    return out


_FIELDS = {f.name for f in fields(RunConfig)}


def resolve_config(command: str, flags: dict, file_values: dict | None = None,
                   env: dict | None = None) -> RunConfig:
    """Merge defaults < ``MORSE_OUT_DIR`` < config file < flags and validate."""
    if command not in COMMANDS:
        raise ParameterError(f"unknown command {command!r}")
    env = os.environ if env is None else env
    raw: dict = dict(COMMANDS[command])
    if env.get("MORSE_OUT_DIR"):
        raw["output_dir"] = env["MORSE_OUT_DIR"]
    for source in (file_values or {}, flags):
        for key, value in source.items():
            if value is None:
                continue
            if key not in _FIELDS:
                raise ParameterError(f"unknown configuration key {key!r}")
            raw[key] = value

    try:
        cfg = RunConfig(
            N=int(raw.get("N", RunConfig.N)),
            gamma=parse_grid(raw.get("gamma", RunConfig.gamma)),
            alpha=parse_grid(raw.get("alpha", RunConfig.alpha)),
            m=parse_grid(raw.get("m", RunConfig.m), int),
            phi=float(raw.get("phi", RunConfig.phi)),
            t_max=float(raw.get("t_max", RunConfig.t_max)),
            t_steps=int(raw.get("t_steps", RunConfig.t_steps)),
            method=str(raw.get("method", RunConfig.method)),
            family=str(raw.get("family", RunConfig.family)),
            output_dir=str(raw.get("output_dir", RunConfig.output_dir)),
        )
    except ParameterError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParameterError(str(exc)) from exc
    _validate(command, cfg)
    return cfg


def _single(cfg: RunConfig, name: str):
    values = getattr(cfg, name)
    if len(values) != 1:
        raise ParameterError(f"{name} must be a single value here, got {len(values)}")
    return values[0]


def _validate(command: str, cfg: RunConfig):
    cfg.params  # N >= 2
    if cfg.method not in {m.value for m in LoqcsMethod}:
        raise ParameterError(f"unknown LOQCS method {cfg.method!r}")
    if cfg.family not in FAMILIES:
        raise ParameterError(f"family must be one of {FAMILIES}, got {cfg.family!r}")
    if any(g < 0 or not math.isfinite(g) for g in cfg.gamma):
        raise ParameterError("gamma values must be finite and >= 0")
    if any(not math.isfinite(a) for a in cfg.alpha):
        raise ParameterError("alpha values must be finite")
    if any(m < 0 or m >= cfg.N for m in cfg.m):
        raise ParameterError(f"m values must lie in [0, {cfg.N - 1}]")
    if not (cfg.t_max > 0 and cfg.t_steps >= 1):
        raise ParameterError("need t_max > 0 and t_steps >= 1")

    uses_dpscs = command == "dispersion-vs-alpha-dpscs" or (
        command in ("pn-dist", "variance-vs-alpha", "phase-space") and cfg.family == "dpscs")
    if uses_dpscs and any(a < 0 for a in cfg.alpha):
        raise ParameterError("photon-subtracted states take |alpha| >= 0")

    if command == "variance-vs-gamma":
        alpha = _single(cfg, "alpha")
        if any(g <= 0 for g in cfg.gamma):
            raise ParameterError(
                "gamma grid must be strictly positive"
                + (" (vacuum statistic undefined at gamma = 0)" if alpha == 0 else ""))
    elif command in ("pn-dist", "phase-space"):
        _single(cfg, "alpha")
        if cfg.family == "loqcs":
            _single(cfg, "gamma")
        else:
            _single(cfg, "m")
    elif command == "variance-vs-alpha" and cfg.family == "loqcs":
        if _single(cfg, "gamma") <= 0:
            raise ParameterError("variance-vs-alpha compares closed form and recursion; need gamma > 0")
    elif command == "dispersion-vs-gamma":
        _single(cfg, "alpha")


def _loqcs(cfg: RunConfig, alpha, gamma, method=None) -> StateVector:
    return build_loqcs(LoqcsSpec(alpha, gamma, method or cfg.method), cfg.params)


def _dpscs(cfg: RunConfig, alpha, m) -> StateVector:
    return dpscs_state(DpscsSpec(alpha, cfg.phi, m), cfg.params)


def _state(cfg: RunConfig) -> StateVector:
    if cfg.family == "loqcs":
        return _loqcs(cfg, cfg.alpha[0], cfg.gamma[0])
    return _dpscs(cfg, cfg.alpha[0], cfg.m[0])


def table_variance_vs_gamma(cfg: RunConfig):
    alpha = cfg.alpha[0]
    rows = [
        (g,
         number_stats(_loqcs(cfg, alpha, g, "closed_form")).normalized_variance,
         number_stats(_loqcs(cfg, alpha, g, "recursion")).normalized_variance)
        for g in cfg.gamma
    ]
    return ["gamma", "nv_closed_form", "nv_recursion"], np.array(rows)


def table_pn_dist(cfg: RunConfig):
    p = pn_distribution(_state(cfg))
    return ["n", "p_n"], np.column_stack([np.arange(len(p)), p])


def table_variance_vs_alpha(cfg: RunConfig):
    if cfg.family == "loqcs":
        methods = [m.value for m in LoqcsMethod]
        columns = ["alpha"] + [f"nv_{m}" for m in methods]
        rows = [
            [a] + [number_stats(_loqcs(cfg, a, cfg.gamma[0], m)).normalized_variance
                   for m in methods]
            for a in cfg.alpha
        ]
    else:
        columns = ["alpha"] + [f"nv_m{m}" for m in cfg.m]
        rows = [
            [a] + [number_stats(_dpscs(cfg, a, m)).normalized_variance for m in cfg.m]
            for a in cfg.alpha
        ]
    return columns, np.array(rows, dtype=float)


def table_phase_space(cfg: RunConfig):
    Xd, Pd = build_xd_pd(cfg.params)
    t = np.linspace(0.0, cfg.t_max, cfg.t_steps)
    traj = trajectory(_state(cfg), t, cfg.params, Xd, Pd)
    columns = ["t", "x_mean", "p_mean", "var_x", "var_p", "delta_xp"]
    return columns, np.column_stack([getattr(traj, c) for c in columns])


def _dispersion_row(psi: StateVector, Xd, Pd):
    var_x, var_p = dispersions(psi, Xd, Pd)
    return [var_x, var_p, uncertainty_product(psi, Xd, Pd)]


def table_dispersion_vs_gamma(cfg: RunConfig):
    Xd, Pd = build_xd_pd(cfg.params)
    rows = [[g] + _dispersion_row(_loqcs(cfg, cfg.alpha[0], g), Xd, Pd) for g in cfg.gamma]
    return ["gamma", "var_x", "var_p", "delta_xp"], np.array(rows)


def table_dispersion_vs_alpha_dpscs(cfg: RunConfig):
    Xd, Pd = build_xd_pd(cfg.params)
    columns = ["alpha"]
    for m in cfg.m:
        columns += [f"var_x_m{m}", f"var_p_m{m}", f"delta_xp_m{m}"]
    rows = []
    for a in cfg.alpha:
        row = [a]
        for m in cfg.m:
            row += _dispersion_row(_dpscs(cfg, a, m), Xd, Pd)
        rows.append(row)
    return columns, np.array(rows)


_TABLES = {
    "variance-vs-gamma": table_variance_vs_gamma,
    "pn-dist": table_pn_dist,
    "variance-vs-alpha": table_variance_vs_alpha,
    "phase-space": table_phase_space,
    "dispersion-vs-gamma": table_dispersion_vs_gamma,
    "dispersion-vs-alpha-dpscs": table_dispersion_vs_alpha_dpscs,
}


def build_table(command: str, cfg: RunConfig):
    return _TABLES[command](cfg)


def format_csv(command: str, cfg: RunConfig, columns, rows) -> str:
    """CSV text: a ``#`` metadata line with the resolved config, a header, 15-digit rows."""
    meta = {k: v for k, v in asdict(cfg).items() if k != "output_dir"}
    buf = io.StringIO()
    buf.write(f"# command={command} config={json.dumps(meta, sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in np.atleast_2d(rows):
        writer.writerow([f"{v:.15g}" for v in row])
    return buf.getvalue()


def write_csv(command: str, cfg: RunConfig) -> Path:
    columns, rows = build_table(command, cfg)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{command}.csv"
    path.write_text(format_csv(command, cfg, columns, rows))
    return path
