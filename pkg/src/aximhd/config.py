"""Strict-schema JSON run configuration.

Unknown keys anywhere in the document are rejected and named, as are
bad enum values; silent typos in scientific configs are the classic
reproducibility killer.  Optional sections fall back to defaults, and
the fully resolved document (as echoed into run_meta.json) re-parses to
an identical configuration.
"""

import json
from dataclasses import dataclass

from .errors import ConfigError
from .evolve import MODES, OMEGA_SCHEMES, PI_SCHEMES, RunConfig
from .grid import make_grid
from .initial import CATALOG


@dataclass
class OutputSpec:
    dir: str = "."
    snapshots: bool = False


_NUMBER = (int, float)


def _expect_keys(section, name, required, optional):
    if not isinstance(section, dict):
        raise ConfigError(f"section {name!r} must be an object")
    unknown = set(section) - set(required) - set(optional)
    if unknown:
        raise ConfigError(f"unknown key(s) in {name!r}: {sorted(unknown)}")
    missing = set(required) - set(section)
    if missing:
        raise ConfigError(f"missing key(s) in {name!r}: {sorted(missing)}")


def _number(section, name, key):
    v = section[key]
    if not isinstance(v, _NUMBER) or isinstance(v, bool):
        raise ConfigError(f"{name}.{key} must be a number, got {v!r}")
    return float(v)


def _integer(section, name, key):
    v = section[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ConfigError(f"{name}.{key} must be an integer, got {v!r}")
    return v


def _enum(section, name, key, allowed):
    v = section[key]
    if v not in allowed:
        raise ConfigError(f"{name}.{key}: unknown value {v!r} (allowed: {list(allowed)})")
    return v


def parse_config(doc):
    """Validate a config document (dict) and return (RunConfig, OutputSpec)."""
    _expect_keys(doc, "config", ("grid", "physics", "time", "initial"), ("schemes", "output"))

    g = doc["grid"]
    _expect_keys(g, "grid", ("n_r", "n_z", "r_max", "z_len"), ())
    grid = make_grid(
        _integer(g, "grid", "n_r"),
        _integer(g, "grid", "n_z"),
        _number(g, "grid", "r_max"),
        _number(g, "grid", "z_len"),
    )

    ph = doc["physics"]
    _expect_keys(ph, "physics", ("mode",), ())
    mode = _enum(ph, "physics", "mode", MODES)

    sch = doc.get("schemes", {})
    _expect_keys(sch, "schemes", (), ("pi_scheme", "omega_scheme"))
    pi_scheme = (
        _enum(sch, "schemes", "pi_scheme", PI_SCHEMES) if "pi_scheme" in sch else "upwind1"
    )
    omega_scheme = (
        _enum(sch, "schemes", "omega_scheme", OMEGA_SCHEMES)
        if "omega_scheme" in sch
        else "centered2"
    )

    tm = doc["time"]
    _expect_keys(tm, "time", ("t_end",), ("cfl_adv", "cfl_diff", "dt_max", "output_every"))
    t_end = _number(tm, "time", "t_end")
    cfl_adv = _number(tm, "time", "cfl_adv") if "cfl_adv" in tm else 0.4
    cfl_diff = _number(tm, "time", "cfl_diff") if "cfl_diff" in tm else 0.2
    dt_max = _number(tm, "time", "dt_max") if "dt_max" in tm else 0.1
    output_every = _integer(tm, "time", "output_every") if "output_every" in tm else 1

    ini = doc["initial"]
    _expect_keys(ini, "initial", ("name",), ("params",))
    name = _enum(ini, "initial", "name", CATALOG)
    params = ini.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("initial.params must be an object")

    out = doc.get("output", {})
    _expect_keys(out, "output", (), ("dir", "snapshots"))
    out_dir = out.get("dir", ".")
    if not isinstance(out_dir, str):
        raise ConfigError("output.dir must be a string")
    snapshots = out.get("snapshots", False)
    if not isinstance(snapshots, bool):
        raise ConfigError("output.snapshots must be a boolean")

    cfg = RunConfig(
        grid=grid,
        mode=mode,
        t_end=t_end,
        cfl_adv=cfl_adv,
        cfl_diff=cfl_diff,
        dt_max=dt_max,
        pi_scheme=pi_scheme,
        omega_scheme=omega_scheme,
        output_every=output_every,
        initial_name=name,
        initial_params=dict(params),
    )
    return cfg, OutputSpec(out_dir, snapshots)


def load_config(path):
    """Read and validate a JSON config file."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config {path!r}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config {path!r} is not valid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise ConfigError("top-level config must be a JSON object")
    return parse_config(doc)


def resolved_dict(cfg, output):
    """Fully resolved config document; parse_config(resolved) == inputs."""
    return {
        "grid": {
            "n_r": cfg.grid.n_r,
            "n_z": cfg.grid.n_z,
            "r_max": cfg.grid.r_max,
            "z_len": cfg.grid.z_len,
        },
        "physics": {"mode": cfg.mode},
        "schemes": {"pi_scheme": cfg.pi_scheme, "omega_scheme": cfg.omega_scheme},
        "time": {
            "t_end": cfg.t_end,
            "cfl_adv": cfg.cfl_adv,
            "cfl_diff": cfg.cfl_diff,
            "dt_max": cfg.dt_max,
            "output_every": cfg.output_every,
        },
        "initial": {"name": cfg.initial_name, "params": dict(cfg.initial_params)},
        "output": {"dir": output.dir, "snapshots": output.snapshots},
    }
