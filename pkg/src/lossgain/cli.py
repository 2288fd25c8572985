"""Command-line front end.

    lossgain <classify|simulate|spectrum|hall|susy|verify> --config FILE [--out DIR] [--jobs K]

The config is an INI file. Each subcommand reads its own section, falling
back to a shared ``[system]`` section for anything it does not set::

    [system]
    representation = landau
    B = 2
    gamma = 1

    [simulate]
    x0 = 0.3, -0.2
    v0 = 0.5, 0.4
    dt = 1e-3
    t_end = 10

Exit codes: 0 ok, 1 a check failed, 2 precondition or singular parameters,
3 bad config.
"""

import argparse
import configparser
import json
import re
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import ConfigError, LossGainError
from .frame import classify
from .landau import constants_of_motion, derive_params, hall_drift, hall_potential
from .quantum import fock_matrix, hall_quantum, landau_hamiltonian, spectrum
from .representations import REPRESENTATIONS
from .susy import susy_identities, susy_spectrum_check
from .system import QuadraticPotential, hamiltonian_value, integrate
from .verify import DEFAULTS as VERIFY_DEFAULTS
from .verify import run_suite

__all__ = [
    "CommandResult",
    "load_config",
    "build_representation",
    "cmd_classify",
    "cmd_simulate",
    "cmd_spectrum",
    "cmd_hall",
    "cmd_susy",
    "cmd_verify",
    "write_csv",
    "dumps",
    "main",
]

EXIT_OK, EXIT_CHECK, EXIT_PRECONDITION, EXIT_CONFIG = 0, 1, 2, 3
COMMANDS = ("classify", "simulate", "spectrum", "hall", "susy", "verify")

# field name -> value parser; keys are case-insensitive
_FLOAT, _INT, _LIST, _BOOL, _STR = "float", "int", "list", "bool", "str"
FIELDS = {
    "representation": _STR,
    "b": _FLOAT, "c": _FLOAT, "gamma": _LIST, "alpha": _FLOAT, "beta1": _FLOAT, "beta2": _FLOAT,
    "p": _FLOAT, "q": _FLOAT, "n": _INT, "m": _INT, "e": _FLOAT,
    "x0": _LIST, "v0": _LIST, "dt": _FLOAT, "t_end": _FLOAT,
    "n_max": _INT, "levels": _INT, "k2": _LIST, "grid": _INT,
    "draws": _INT, "seed": _INT, "exact": _BOOL, "only": _STR,
}
# required fields per representation
REP_FIELDS = {
    "landau": ("b", "gamma"),
    "pairwise": ("m", "gamma"),
    "beta-modified": ("m", "gamma", "alpha", "beta1", "beta2"),
    "appendix1": ("n", "p", "q"),
    "appendix2": ("n", "p", "q"),
}
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


@dataclass
class CommandResult:
    payload: dict
    exit_code: int = EXIT_OK
    csv: tuple = None  # (header, rows)


# ---------------------------------------------------------------------------
# config


def _line_of(text, section, key):
    """1-based line of ``key`` inside ``[section]``, or None."""
    current = None
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        head = re.match(r"^\[(.+)\]$", line)
        if head:
            current = head.group(1).strip()
            continue
        if current == section and re.match(rf"^{re.escape(key)}\s*[=:]", line, re.IGNORECASE):
            return i
    return None


def _number(raw, key, line):
    raw = raw.strip()
    if not _NUMBER.match(raw):
        raise ConfigError(f"expected a decimal number, got {raw!r}", line, key)
    return float(raw)


def _parse_value(key, raw, line):
    kind = FIELDS[key]
    if kind == _FLOAT:
        return _number(raw, key, line)
    if kind == _INT:
        value = _number(raw, key, line)
        if value != int(value):
            raise ConfigError(f"expected an integer, got {raw!r}", line, key)
        return int(value)
    if kind == _LIST:
        return [_number(part, key, line) for part in raw.split(",") if part.strip()]
    if kind == _BOOL:
        low = raw.strip().lower()
        if low not in ("true", "false", "yes", "no", "1", "0", "on", "off"):
            raise ConfigError(f"expected a boolean, got {raw!r}", line, key)
        return low in ("true", "yes", "1", "on")
    return raw.strip()


def load_config(path, command):
    """Parsed values for ``command``: its own section over ``[system]``.

    Raises
    ------
    ConfigError
        On syntax errors, unknown fields or malformed values, with the line
        and field where known.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__")
    try:
        parser.read_string(text, source=str(path))
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("missing section header", exc.lineno) from exc
    except (configparser.DuplicateOptionError, configparser.DuplicateSectionError) as exc:
        raise ConfigError(exc.message.split(":")[-1].strip() or "duplicate entry", exc.lineno,
                          getattr(exc, "option", None)) from exc
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ConfigError("cannot parse line", lineno) from exc
    values = {}
    for section in ("system", command):
        if not parser.has_section(section):
            continue
        for key, raw in parser.items(section):
            line = _line_of(text, section, key)
            if key not in FIELDS:
                raise ConfigError(f"unknown field in [{section}]", line, key)
            values[key] = _parse_value(key, raw, line)
            values.setdefault("_lines", {})[key] = line
    if not values and command != "verify":
        raise ConfigError(f"config has neither [system] nor [{command}]")
    return values


def _line(cfg, key):
    return cfg.get("_lines", {}).get(key)


def _require(cfg, *keys):
    for key in keys:
        if key not in cfg:
            raise ConfigError("required field is missing", None, key)


def _scalar(cfg, key, default=None):
    value = cfg.get(key, default)
    if isinstance(value, list):
        if len(value) != 1:
            raise ConfigError("expected a single value", _line(cfg, key), key)
        return value[0]
    return value


def build_representation(cfg):
    """Representation bundle named by ``representation`` (default ``landau``)."""
    label = cfg.get("representation", "landau")
    if label not in REP_FIELDS:
        raise ConfigError(f"unknown representation {label!r}; choose from {sorted(REP_FIELDS)}",
                          _line(cfg, "representation"), "representation")
    _require(cfg, *REP_FIELDS[label])
    if label == "landau":
        return REPRESENTATIONS["landau"](cfg["b"], cfg.get("c", 0.0), _scalar(cfg, "gamma"))
    if label == "pairwise":
        return REPRESENTATIONS["pairwise"](cfg["m"], _scalar(cfg, "gamma"), cfg.get("alpha", 0.0))
    if label == "beta-modified":
        return REPRESENTATIONS["beta-modified"](cfg["m"], _scalar(cfg, "gamma"), cfg["alpha"], cfg["beta1"], cfg["beta2"])
    if cfg["n"] < 2:
        raise ConfigError("need n >= 2", _line(cfg, "n"), "n")
    return REPRESENTATIONS[label](cfg["n"], cfg["p"], cfg["q"])


# ---------------------------------------------------------------------------
# commands


def cmd_classify(cfg):
    bundle = build_representation(cfg)
    report = classify(bundle.spec.big_m)
    payload = dict(report.as_dict(), representation=bundle.label,
                   params={k: v if isinstance(v, int) else float(v) for k, v in bundle.params.items()})
    return CommandResult(payload)


def cmd_simulate(cfg):
    _require(cfg, "x0", "v0", "t_end")
    bundle = build_representation(cfg)
    spec = bundle.spec
    if bundle.label == "landau" and cfg.get("e"):
        spec = spec.with_potential(hall_potential(cfg["b"], _scalar(cfg, "gamma"), cfg["e"]))
    elif spec.potential is None:
        spec = spec.with_potential(QuadraticPotential(n=spec.n))
    x0, v0 = np.asarray(cfg["x0"]), np.asarray(cfg["v0"])
    if x0.size != spec.n or v0.size != spec.n:
        raise ConfigError(f"x0 and v0 need {spec.n} components", _line(cfg, "x0"), "x0")
    traj = integrate(spec, x0, v0, cfg["t_end"], cfg.get("dt", 1e-3))
    energy = hamiltonian_value(spec, traj.positions, traj.velocities)
    scale = max(abs(float(energy[0])), 1e-300)
    payload = {
        "representation": bundle.label,
        "steps": len(traj) - 1,
        "t_end": float(traj.times[-1]),
        "energy_initial": float(energy[0]),
        "energy_drift": float(np.max(np.abs(energy - energy[0]))) / scale,
    }
    if bundle.label == "landau" and not cfg.get("e"):
        p = derive_params(cfg["b"], cfg.get("c", 0.0), _scalar(cfg, "gamma"))
        cv = constants_of_motion(p, traj.positions, traj.velocities).c_vec
        payload["region"] = p.region_label
        payload["centre_drift"] = float(np.max(np.abs(cv - cv[0]))) / max(float(np.max(np.abs(cv[0]))), 1e-300)
    n = spec.n
    header = ["t"] + [f"x{i + 1}" for i in range(n)] + [f"v{i + 1}" for i in range(n)]
    rows = np.column_stack([traj.times, traj.states])
    return CommandResult(payload, csv=(header, rows))


def _spectrum_point(b, c, gamma, n_max, levels):
    p = derive_params(b, c, gamma)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        found = spectrum(fock_matrix(landau_hamiltonian(p), n_max), levels, p.omega, min_multiplicity=2)
    energies = [lv.energy for lv in found]
    return {
        "gamma": float(gamma),
        "omega": float(p.omega),
        "levels": [{"energy": float(lv.energy), "degeneracy": int(lv.degeneracy)} for lv in found],
        "spacing": float(np.mean(np.diff(energies))) if len(energies) > 1 else None,
    }


def _map(func, args, jobs):
    if jobs and jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(func, *zip(*args)))
    return [func(*a) for a in args]


def cmd_spectrum(cfg, jobs=1):
    _require(cfg, "b", "gamma")
    n_max = cfg.get("n_max", 30)
    levels = cfg.get("levels", 3)
    if levels > n_max / 3:
        warnings.warn(f"{levels} levels requested; only n <= n_max/3 is trusted", stacklevel=2)
    args = [(cfg["b"], cfg.get("c", 0.0), g, n_max, levels) for g in cfg["gamma"]]
    points = _map(_spectrum_point, args, jobs)
    return CommandResult({"b": float(cfg["b"]), "n_max": n_max, "sweep": points})


def _hall_point(b, gamma, e_field, k2s):
    drift, angle = hall_drift(b, gamma, e_field)
    p = derive_params(b, 0.0, gamma)
    quantum = []
    for k2 in k2s:
        hq = hall_quantum(p, e_field, k2)
        quantum.append({
            "k2": float(k2),
            "energies": [float(v) for v in hq.energies],
            "oracle_energies": [float(v) for v in hq.oracle_energies],
            "max_rel_error": float(np.max(np.abs(hq.energies - hq.oracle_energies) / np.abs(hq.oracle_energies))),
        })
    return {
        "gamma": float(gamma),
        "drift": [float(v) for v in drift],
        "hall_angle_deg": float(np.degrees(angle)),
        "quantum": quantum,
    }


def cmd_hall(cfg, jobs=1):
    _require(cfg, "b", "gamma", "e")
    args = [(cfg["b"], g, cfg["e"], cfg.get("k2", [-1.0, 0.0, 1.0])) for g in cfg["gamma"]]
    return CommandResult({"b": float(cfg["b"]), "e": float(cfg["e"]), "sweep": _map(_hall_point, args, jobs)})


def cmd_susy(cfg):
    _require(cfg, "b", "gamma")
    p = derive_params(cfg["b"], 0.0, _scalar(cfg, "gamma"))
    ident = susy_identities(p, exact=cfg.get("exact", True))
    sp = susy_spectrum_check(p, cfg.get("n_max", 30))
    asserted = [k for k in ident if not k.startswith(("{q1,Q", "{q2,Q", "literal", "q1 ="))]
    ok = all(ident[k][1] for k in asserted) and abs(sp.ground_energy) <= 1e-6 and sp.pairing_residual <= 1e-6 * sp.omega
    payload = {
        "identities": {k: {"residual": float(r), "holds": bool(h), "asserted": k in asserted}
                       for k, (r, h) in ident.items()},
        "ground_energy": sp.ground_energy,
        "pairing_residual": sp.pairing_residual,
        "up_levels": sp.up_levels,
        "down_levels": sp.down_levels,
        "omega": sp.omega,
        "passed": bool(ok),
    }
    return CommandResult(payload, EXIT_OK if ok else EXIT_CHECK)


def cmd_verify(cfg):
    overrides = {}
    for key in VERIFY_DEFAULTS:
        if key in cfg:
            overrides[key] = _scalar(cfg, key)
    if "e" in cfg:
        overrides["e_field"] = cfg["e"]
    only = [s.strip() for s in cfg["only"].split(",")] if "only" in cfg else None
    manifest = run_suite(overrides, only)
    return CommandResult(manifest, EXIT_OK if manifest["passed"] else EXIT_CHECK)


# ---------------------------------------------------------------------------
# output


def dumps(obj):
    """Deterministic JSON text with a trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_csv(path, header, rows):
    """CSV with a header row, 17 significant digits and LF line endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join("%.17g" % v for v in row) + "\n")


def _emit(command, result, out):
    if out is None:
        sys.stdout.write(dumps(result.payload))
        return
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{command}.json").write_text(dumps(result.payload), encoding="utf-8", newline="\n")
    if result.csv is not None:
        write_csv(out / f"{command}.csv", *result.csv)


def _parser():
    ap = argparse.ArgumentParser(prog="lossgain", description="Balanced loss-gain systems: classical and quantum checks.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="INI scenario file (optional for verify)")
    ap.add_argument("--out", help="directory for JSON/CSV artifacts; JSON goes to stdout when omitted")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for parameter sweeps")
    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.config is None:
            if args.command != "verify":
                raise ConfigError("--config is required", None, "config")
            cfg = {}
        else:
            cfg = load_config(args.config, args.command)
        handler = {
            "classify": cmd_classify,
            "simulate": cmd_simulate,
            "spectrum": lambda c: cmd_spectrum(c, args.jobs),
            "hall": lambda c: cmd_hall(c, args.jobs),
            "susy": cmd_susy,
            "verify": cmd_verify,
        }[args.command]
        result = handler(cfg)
    except ConfigError as exc:
        print(f"lossgain: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LossGainError as exc:
        print(f"lossgain: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _emit(args.command, result, args.out)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
