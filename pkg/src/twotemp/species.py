"""Gas species parameter sets and the bundled fixture registry.

A species file is a small YAML document holding the physical constants of one
gas.  Dimensional fields use SI with temperature expressed in specific-energy
units (theta = R*T, J/kg), so the reference temperature is R*T0 and a thermal
conductivity is stored divided by the specific gas constant, which gives it
the same units as a viscosity (kg/m/s).  Collision-rate constants for the
kinetic closure models (``collision_freq_coeff``, the ``p_constants`` block)
are stored as dimensionless multiples of the reference collision frequency
p0/mu0; the coefficient builders rescale them with the Knudsen number.

Constants for a closure model the user does not need may simply be omitted;
requesting that model later fails with :class:`MissingModelDataError` instead
of silently producing wrong coefficients.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import yaml

from .errors import MissingModelDataError, SpeciesConfigError

P_CONSTANT_KEYS = ("p0_q", "p1_q", "p0_s", "p1_s", "p0_pi", "p0_sigma")

_RANGES = {
    # field: (low, high, low_open, high_open)
    "delta": (0.0, math.inf, True, True),
    "ref_temperature": (0.0, math.inf, True, True),
    "ref_pressure": (0.0, math.inf, True, True),
    "shear_viscosity": (0.0, math.inf, True, True),
    "thermal_conductivity": (0.0, math.inf, True, True),
    "kappa": (0.0, 2.0 / 3.0, False, False),
    "diameter": (0.0, math.inf, True, True),
    "nu": (-0.5, 1.0, False, True),
    "theta1": (0.0, 1.0, True, False),
    "collision_freq_coeff": (0.0, math.inf, True, True),
    "z_int": (0.0, math.inf, True, True),
    "accommodation": (0.0, 1.0, False, False),
}


def _check_range(name: str, value: float) -> None:
    low, high, low_open, high_open = _RANGES[name]
    ok_low = value > low if low_open else value >= low
    ok_high = value < high if high_open else value <= high
    if not (ok_low and ok_high and math.isfinite(value)):
        lo = "(" if low_open else "["
        hi = ")" if high_open else "]"
        raise SpeciesConfigError(
            f"field '{name}' = {value!r} outside the allowed range "
            f"{lo}{low}, {high}{hi}"
        )


@dataclass(frozen=True)
class GasSpecies:
    """Physical parameters of one gas.

    ``delta`` is the number of excited internal degrees of freedom.  It is
    stored as a positive real, not an integer, because none of the closure
    formulas require integrality.
    """

    name: str
    delta: float
    ref_temperature: float        # theta0 = R*T0 [J/kg]
    ref_pressure: float           # p0 [Pa]
    shear_viscosity: float        # mu0 at theta0 [Pa s]
    thermal_conductivity: float | None = None   # lambda/R [kg/m/s], model 4
    kappa: float | None = None    # rough-sphere moment of inertia, model 1
    diameter: float | None = None  # molecular diameter a [m], model 1
    nu: float | None = None       # Prandtl-adjust constant, model 2
    theta1: float | None = None   # bulk-viscosity-adjust constant, model 2
    collision_freq_coeff: float | None = None  # A_c in units of p0/mu0, model 2
    p_constants: dict[str, float] | None = None  # kernel rates in p0/mu0 units, model 3
    z_int: float | None = None    # internal-relaxation collision number
    accommodation: float = 1.0    # default wall accommodation chi

    def __post_init__(self) -> None:
        if not self.name:
            raise SpeciesConfigError("field 'name' must be a non-empty identifier")
        for f in fields(self):
            if f.name in ("name", "p_constants"):
                continue
            value = getattr(self, f.name)
            if value is None:
                continue
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise SpeciesConfigError(f"field '{f.name}' must be a number, got {value!r}")
            _check_range(f.name, float(value))
        if self.p_constants is not None:
            missing = [k for k in P_CONSTANT_KEYS if k not in self.p_constants]
            extra = [k for k in self.p_constants if k not in P_CONSTANT_KEYS]
            if missing or extra:
                raise SpeciesConfigError(
                    f"p_constants must supply exactly {P_CONSTANT_KEYS}; "
                    f"missing {missing}, unknown {extra}"
                )
            for k, v in self.p_constants.items():
                if not isinstance(v, (int, float)) or isinstance(v, bool):
                    raise SpeciesConfigError(f"p_constants['{k}'] must be a number, got {v!r}")

    # -- derived quantities -------------------------------------------------

    @property
    def gamma(self) -> float:
        """Heat-capacity ratio (5 + delta) / (3 + delta)."""
        return (5.0 + self.delta) / (3.0 + self.delta)

    def knudsen(self, length_scale: float) -> float:
        """Kn = mu0 sqrt(theta0) / (p0 L) for a macroscopic length L [m]."""
        if length_scale <= 0:
            raise SpeciesConfigError(f"length_scale must be positive, got {length_scale}")
        return self.shear_viscosity * math.sqrt(self.ref_temperature) / (
            self.ref_pressure * length_scale
        )

    def length_scale_for(self, kn: float) -> float:
        """Macroscopic length L [m] that yields the given Knudsen number."""
        if kn <= 0:
            raise SpeciesConfigError(f"kn must be positive, got {kn}")
        return self.shear_viscosity * math.sqrt(self.ref_temperature) / (
            self.ref_pressure * kn
        )

    def conductivity_ratio(self) -> float:
        """lambda/mu in matched units; the dimensionless conductivity is this times Kn."""
        lam = self.require("thermal_conductivity", "model4")
        return lam / self.shear_viscosity

    def require(self, field_name: str, model: str) -> float:
        value = getattr(self, field_name)
        if value is None:
            raise MissingModelDataError(
                f"species '{self.name}' has no '{field_name}' entry, required by {model}"
            )
        return value

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: v for k, v in d.items() if v is not None}


def heat_capacity_ratio(species: GasSpecies) -> float:
    """gamma = (5 + delta) / (3 + delta); decreasing in delta, bounded in (1, 5/3]."""
    return species.gamma


# -- loading / saving -------------------------------------------------------

def load_species(source) -> GasSpecies:
    """Build a validated :class:`GasSpecies` from a YAML path, text, stream or dict."""
    if isinstance(source, GasSpecies):
        return source
    if isinstance(source, dict):
        data = source
    else:
        if isinstance(source, (str, Path)) and os.path.exists(str(source)):
            text = Path(source).read_text()
        elif isinstance(source, io.IOBase) or hasattr(source, "read"):
            text = source.read()
        elif isinstance(source, str):
            text = source
        else:
            raise SpeciesConfigError(f"cannot load species from {source!r}")
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise SpeciesConfigError(f"malformed species document: {exc}") from exc
    if not isinstance(data, dict):
        raise SpeciesConfigError(
            f"species document must be a mapping, got {type(data).__name__}"
        )
    known = {f.name for f in fields(GasSpecies)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise SpeciesConfigError(f"unknown fields in species document: {unknown}")
    for required in ("name", "delta", "ref_temperature", "ref_pressure", "shear_viscosity"):
        if required not in data:
            raise SpeciesConfigError(f"missing required field '{required}'")
    return GasSpecies(**data)


def species_to_yaml(species: GasSpecies) -> str:
    return yaml.safe_dump(species.to_dict(), sort_keys=False)


def dump_species(species: GasSpecies, path: str | Path) -> None:
    Path(path).write_text(species_to_yaml(species))


# -- bundled fixtures -------------------------------------------------------

FIXTURE_DIR_ENV = "TWOTEMP_SPECIES_DIR"


def _fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_DIR_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def bundled_species_names() -> list[str]:
    return sorted(p.stem for p in _fixture_dir().glob("*.yaml"))


def resolve_species(name_or_path: str | Path) -> GasSpecies:
    """Resolve either a file path or a bundled fixture name (case-insensitive)."""
    p = Path(name_or_path)
    if p.exists():
        return load_species(p)
    stem = str(name_or_path).lower()
    candidate = _fixture_dir() / f"{stem}.yaml"
    if candidate.exists():
        return load_species(candidate)
    raise SpeciesConfigError(
        f"species '{name_or_path}' is neither a file nor a bundled fixture "
        f"(available: {', '.join(bundled_species_names())})"
    )
