"""Model presets from plain-text key/value config files.

File schema (one `key = value` per line, `#` comments, blank lines ignored):

    model = harmonic | box | hydrogenoid | morse | quartic
    units = natural | ev_angstrom_amu
    <parameter> = <number>           # parameter names per model, see below

Parameter keys by model:
    harmonic:    mass, omega
    box:         mass, width
    hydrogenoid: reduced_mass, charge_number, charge
    morse:       depth, alpha, anharmonicity, mass, r0, omega
    quartic:     omega, lambda

Units: the library computes with hbar = 1. `natural` means the file values
already form a coherent hbar = 1 system and are used as-is. `ev_angstrom_amu`
declares energies in eV, lengths in Angstrom and masses in amu; the loader
keeps eV as the energy unit and Angstrom as the length unit and rescales
masses so that hbar = 1 holds (the implied time unit is hbar/eV, and y values
come out in units of hbar as everywhere else).
"""

from __future__ import annotations

import math
from importlib import resources
from pathlib import Path

from . import spectra

__all__ = ["builtin_preset_names", "load_model", "resolve_preset"]

# CODATA 2018 values.
_HBAR_SI = 1.054571817e-34  # J s
_EV_SI = 1.602176634e-19  # J
_ANGSTROM_SI = 1e-10  # m
_AMU_SI = 1.66053906892e-27  # kg

# Mass unit of the (eV, Angstrom, hbar=1) system, in kg.
_MASS_UNIT_SI = _HBAR_SI**2 / (_EV_SI * _ANGSTROM_SI**2)
_AMU_TO_INTERNAL = _AMU_SI / _MASS_UNIT_SI

_MODEL_KEYS = {
    "harmonic": ("mass", "omega"),
    "box": ("mass", "width"),
    "hydrogenoid": ("reduced_mass", "charge_number", "charge"),
    "morse": ("depth", "alpha", "anharmonicity", "mass", "r0", "omega"),
    "quartic": ("omega", "lambda"),
}

# Keys that carry a mass and need rescaling under ev_angstrom_amu.
_MASS_KEYS = {"mass", "reduced_mass"}


def builtin_preset_names() -> tuple[str, ...]:
    files = resources.files("levelscope.data")
    return tuple(sorted(p.name[: -len(".cfg")] for p in files.iterdir() if p.name.endswith(".cfg")))


def resolve_preset(name_or_path: str) -> str:
    """Return the config text for a bundled preset name or a file path."""
    path = Path(name_or_path)
    if path.suffix == ".cfg" or path.exists():
        return path.read_text(encoding="utf-8")
    candidate = resources.files("levelscope.data") / f"{name_or_path}.cfg"
    try:
        return candidate.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(
            f"no preset file {name_or_path!r} and no bundled preset of that name "
            f"(bundled: {', '.join(builtin_preset_names())})"
        ) from None


def _parse(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ValueError(f"line {lineno}: empty key or value in {raw!r}")
        if key in entries:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        entries[key.lower()] = value
    return entries


def load_model(name_or_path: str) -> spectra.ModelParams:
    """Load a ModelParams instance from a preset name or config file path."""
    entries = _parse(resolve_preset(name_or_path))
    try:
        model_name = entries.pop("model").lower()
    except KeyError:
        raise ValueError("config is missing the 'model' key") from None
    units = entries.pop("units", "natural").lower()
    if units not in ("natural", "ev_angstrom_amu"):
        raise ValueError(f"unknown unit system {units!r}")
    if model_name not in _MODEL_KEYS:
        raise ValueError(f"unknown model {model_name!r} (expected one of {sorted(_MODEL_KEYS)})")

    keys = _MODEL_KEYS[model_name]
    missing = [k for k in keys if k not in entries]
    if missing:
        raise ValueError(f"{model_name} config is missing {missing}")
    extra = [k for k in entries if k not in keys]
    if extra:
        raise ValueError(f"{model_name} config has unknown keys {extra}")

    values: dict[str, float] = {}
    for key in keys:
        raw = entries[key]
        value = float(raw)
        if not math.isfinite(value):
            raise ValueError(f"parameter {key!r} is not finite: {raw!r}")
        if units == "ev_angstrom_amu" and key in _MASS_KEYS:
            value *= _AMU_TO_INTERNAL
        values[key] = value

    if model_name == "harmonic":
        return spectra.Harmonic(mass=values["mass"], omega=values["omega"])
    if model_name == "box":
        return spectra.Box(mass=values["mass"], width=values["width"])
    if model_name == "hydrogenoid":
        return spectra.Hydrogenoid(
            reduced_mass=values["reduced_mass"],
            charge_number=int(values["charge_number"]),
            charge=values["charge"],
        )
    if model_name == "morse":
        return spectra.Morse(
            depth=values["depth"],
            alpha=values["alpha"],
            anharmonicity=values["anharmonicity"],
            mass=values["mass"],
            r0=values["r0"],
            omega=values["omega"],
        )
    return spectra.Quartic(omega=values["omega"], lam=values["lambda"])
