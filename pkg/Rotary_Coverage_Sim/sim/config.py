"""
Simulation configuration: JSON schema, defaults and validation.
"""
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional
import json
import logging
import math
import os

from Rotary_Coverage_Sim.dynamics.integrator import INTEGRATORS, RK4
from Rotary_Coverage_Sim.dynamics.state import Gains
from Rotary_Coverage_Sim.field.density import DensityField, density_by_name, polynomial_density
from Rotary_Coverage_Sim.field.quadrature import QuadratureConfig, SCHEMES, GAUSS_LEGENDRE
from Rotary_Coverage_Sim.geometry.region import Ellipse, RegionBoundary, polynomial_region
from Rotary_Coverage_Sim.metrics.diagnostics import ConsensusTolerances
from Rotary_Coverage_Sim.utils.errors import ParseError, ValidationError, DensityOutOfBounds

logger = logging.getLogger(__name__)

PACKAGE_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
DEFAULT_CONFIG_PATH = os.path.join(PACKAGE_ROOT, "config", "default_config.json")

MAX_SEED = 2 ** 64


# --- field readers ---------------------------------------------------------

def _check_keys(data: Any, allowed, prefix: str) -> Dict[str, Any]:
    if not isinstance(data, dict):
        raise ValidationError(prefix.rstrip(".") or "<root>", "expected an object")
    for key in data:
        if key not in allowed:
            raise ValidationError(f"{prefix}{key}", "unknown key")
    return data


def _number(value: Any, key: str, minimum: Optional[float] = None, strict: bool = True) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ValidationError(key, f"expected a finite number, got {value!r}")
    if minimum is not None and (value <= minimum if strict else value < minimum):
        raise ValidationError(key, f"must be {'>' if strict else '>='} {minimum}, got {value}")
    return float(value)


def _integer(value: Any, key: str, minimum: int, maximum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(key, f"expected an integer, got {value!r}")
    if value < minimum or (maximum is not None and value >= maximum):
        raise ValidationError(key, f"out of range: {value}")
    return value


def _triples(value: Any, key: str) -> List[List[float]]:
    if not isinstance(value, list) or not value:
        raise ValidationError(key, "expected a non-empty list of [i, j, c] triples")
    out = []
    for n, item in enumerate(value):
        if not isinstance(item, list) or len(item) != 3:
            raise ValidationError(f"{key}[{n}]", "expected [i, j, c]")
        i = _integer(item[0], f"{key}[{n}][0]", 0)
        j = _integer(item[1], f"{key}[{n}][1]", 0)
        out.append([i, j, _number(item[2], f"{key}[{n}][2]")])
    return out


def _points(value: Any, key: str, count: int) -> List[List[float]]:
    if not isinstance(value, list) or len(value) != count:
        raise ValidationError(key, f"expected {count} points")
    out = []
    for n, p in enumerate(value):
        if not isinstance(p, list) or len(p) != 2:
            raise ValidationError(f"{key}[{n}]", "expected [x, y]")
        out.append([_number(p[0], f"{key}[{n}][0]"), _number(p[1], f"{key}[{n}][1]")])
    return out


# --- sections --------------------------------------------------------------

@dataclass(frozen=True)
class RegionConfig:
    type: str = "ellipse"
    a: float = 5.0
    b: float = 3.0
    coefficients: Optional[List[List[float]]] = None
    bounding_radius: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RegionConfig":
        kind = data.get("type", "ellipse")
        if kind == "ellipse":
            _check_keys(data, ("type", "a", "b"), "region.")
            return cls("ellipse", _number(data.get("a", 5.0), "region.a", 0.0),
                       _number(data.get("b", 3.0), "region.b", 0.0))
        if kind == "implicit":
            _check_keys(data, ("type", "coefficients", "bounding_radius"), "region.")
            if "coefficients" not in data or "bounding_radius" not in data:
                raise ValidationError("region.coefficients", "implicit regions need coefficients and bounding_radius")
            return cls("implicit", coefficients=_triples(data["coefficients"], "region.coefficients"),
                       bounding_radius=_number(data["bounding_radius"], "region.bounding_radius", 0.0))
        raise ValidationError("region.type", f"expected 'ellipse' or 'implicit', got {kind!r}")

    def build(self) -> RegionBoundary:
        if self.type == "ellipse":
            return Ellipse(self.a, self.b)
        return polynomial_region(self.coefficients, self.bounding_radius)

    def to_dict(self) -> Dict[str, Any]:
        if self.type == "ellipse":
            return {"type": "ellipse", "a": self.a, "b": self.b}
        return {"type": "implicit", "coefficients": self.coefficients, "bounding_radius": self.bounding_radius}


@dataclass(frozen=True)
class DensityConfig:
    name: Optional[str] = "paper-s4"
    value: float = 1.0
    coefficients: Optional[List[List[float]]] = None
    scale: float = 1.0

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DensityConfig":
        _check_keys(data, ("name", "value", "coefficients", "scale"), "density.")
        scale = _number(data.get("scale", 1.0), "density.scale", 0.0)
        if "coefficients" in data:
            if "name" in data:
                raise ValidationError("density.name", "give either a name or coefficients")
            return cls(None, coefficients=_triples(data["coefficients"], "density.coefficients"), scale=scale)
        name = data.get("name", "paper-s4")
        if name not in ("uniform", "paper-s4"):
            raise ValidationError("density.name", f"expected 'uniform' or 'paper-s4', got {name!r}")
        return cls(name, _number(data.get("value", 1.0), "density.value", 0.0), scale=scale)

    def build(self, boundary: RegionBoundary) -> DensityField:
        if self.coefficients is not None:
            try:
                density = polynomial_density(self.coefficients, boundary)
            except DensityOutOfBounds as err:
                raise ValidationError("density.coefficients", str(err)) from err
        else:
            density = density_by_name(self.name, boundary, self.value)
        return density.scaled(self.scale)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = ({"coefficients": self.coefficients} if self.coefficients is not None
                               else {"name": self.name})
        if self.name == "uniform":
            out["value"] = self.value
        out["scale"] = self.scale
        return out


@dataclass(frozen=True)
class IntegratorConfig:
    kind: str = RK4
    dt: float = 0.01
    t_final: float = 200.0

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValidationError("integrator.dt", f"must be > 0, got {self.dt}")
        steps = round(self.t_final / self.dt)
        if abs(steps * self.dt - self.t_final) > 1e-9 * max(1.0, self.t_final):
            raise ValidationError(
                "integrator.t_final", f"{self.t_final} is not a whole number of {self.dt} steps")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "IntegratorConfig":
        _check_keys(data, ("kind", "dt", "t_final"), "integrator.")
        kind = data.get("kind", RK4)
        if kind not in INTEGRATORS:
            raise ValidationError("integrator.kind", f"expected one of {INTEGRATORS}, got {kind!r}")
        return cls(kind, _number(data.get("dt", 0.01), "integrator.dt", 0.0),
                   _number(data.get("t_final", 200.0), "integrator.t_final", 0.0, strict=False))

    @property
    def steps(self) -> int:
        return int(round(self.t_final / self.dt))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "dt": self.dt, "t_final": self.t_final}


@dataclass(frozen=True)
class InitialStateConfig:
    positions: List[List[float]]
    references: List[List[float]]
    phases: List[float]

    def to_dict(self) -> Dict[str, Any]:
        return {"positions": self.positions, "references": self.references, "phases": self.phases}


def _gains(data: Any) -> Gains:
    _check_keys(data, ("kappa_p", "kappa_phi", "kappa_r"), "gains.")
    defaults = Gains()
    return Gains(*(_number(data.get(name, getattr(defaults, name)), f"gains.{name}", 0.0)
                   for name in ("kappa_p", "kappa_phi", "kappa_r")))


def _quadrature(data: Any) -> QuadratureConfig:
    _check_keys(data, ("radial_nodes", "angular_nodes", "scheme"), "quadrature.")
    scheme = data.get("scheme", GAUSS_LEGENDRE)
    if scheme not in SCHEMES:
        raise ValidationError("quadrature.scheme", f"expected one of {SCHEMES}, got {scheme!r}")
    radial = _integer(data.get("radial_nodes", 32), "quadrature.radial_nodes", 4)
    angular = _integer(data.get("angular_nodes", 32), "quadrature.angular_nodes", 4)
    try:
        return QuadratureConfig(radial, angular, scheme)
    except ValueError as err:
        raise ValidationError("quadrature", str(err)) from err


def _consensus(data: Any) -> ConsensusTolerances:
    _check_keys(data, ("tol_gamma", "tol_mass", "tol_centroid"), "consensus.")
    defaults = ConsensusTolerances()
    return ConsensusTolerances(*(_number(data.get(name, getattr(defaults, name)), f"consensus.{name}", 0.0)
                                 for name in ("tol_gamma", "tol_mass", "tol_centroid")))


def _initial_state(data: Any, n: int) -> InitialStateConfig:
    _check_keys(data, ("positions", "references", "phases"), "initial_state.")
    for key in ("positions", "references", "phases"):
        if key not in data:
            raise ValidationError(f"initial_state.{key}", "missing")
    phases = data["phases"]
    if not isinstance(phases, list) or len(phases) != n:
        raise ValidationError("initial_state.phases", f"expected {n} angles")
    return InitialStateConfig(
        positions=_points(data["positions"], "initial_state.positions", n),
        references=_points(data["references"], "initial_state.references", n),
        phases=[_number(v, f"initial_state.phases[{k}]") for k, v in enumerate(phases)],
    )


# --- top level -------------------------------------------------------------

TOP_LEVEL_KEYS = ("region", "density", "n_agents", "gains", "integrator", "quadrature", "seed",
                  "emit_every", "cost", "consensus", "workers", "initial_state")


@dataclass(frozen=True)
class SimConfig:
    """Complete run configuration.

    The defaults carry the six-agent ellipse setup (region, density, gains,
    horizon). At density scale 1 that run is not expected to reach consensus
    by 200 s; see DESIGN.md.
    """

    region: RegionConfig = field(default_factory=RegionConfig)
    density: DensityConfig = field(default_factory=DensityConfig)
    n_agents: int = 6
    gains: Gains = field(default_factory=Gains)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    seed: int = 42
    emit_every: int = 100
    cost: str = "quadratic"
    consensus: ConsensusTolerances = field(default_factory=ConsensusTolerances)
    workers: int = 1
    initial_state: Optional[InitialStateConfig] = None

    @classmethod
    def from_dict(cls, data: Any) -> "SimConfig":
        _check_keys(data, TOP_LEVEL_KEYS, "")
        n = _integer(data.get("n_agents", 6), "n_agents", 3)
        cost = data.get("cost", "quadratic")
        if cost != "quadratic":
            raise ValidationError("cost", f"only 'quadratic' is configurable, got {cost!r}")
        return cls(
            region=RegionConfig.from_dict(data.get("region", {})),
            density=DensityConfig.from_dict(data.get("density", {})),
            n_agents=n,
            gains=_gains(data.get("gains", {})),
            integrator=IntegratorConfig.from_dict(data.get("integrator", {})),
            quadrature=_quadrature(data.get("quadrature", {})),
            seed=_integer(data.get("seed", 42), "seed", 0, MAX_SEED),
            emit_every=_integer(data.get("emit_every", 100), "emit_every", 1),
            cost=cost,
            consensus=_consensus(data.get("consensus", {})),
            workers=_integer(data.get("workers", 1), "workers", 1),
            initial_state=_initial_state(data["initial_state"], n) if "initial_state" in data else None,
        )

    @classmethod
    def load(cls, config_path: str) -> "SimConfig":
        """Load and validate a JSON configuration file."""
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as err:
            raise ParseError(f"{config_path}: {err}") from err
        except OSError as err:
            raise ParseError(f"cannot read {config_path}: {err}") from err
        config = cls.from_dict(data)
        logger.info(f"Loaded configuration from {config_path}")
        return config

    def save(self, config_path: str) -> None:
        os.makedirs(os.path.dirname(os.path.abspath(config_path)), exist_ok=True)
        with open(config_path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=4)

    def update(self, **overrides) -> "SimConfig":
        """Copy with command-line overrides applied; None values are ignored."""
        overrides = {k: v for k, v in overrides.items() if v is not None}
        timing = {}
        if "dt" in overrides:
            timing["dt"] = _number(overrides.pop("dt"), "integrator.dt", 0.0)
        if "t_final" in overrides:
            timing["t_final"] = _number(overrides.pop("t_final"), "integrator.t_final", 0.0, strict=False)
        integrator = replace(self.integrator, **timing)
        if "seed" in overrides:
            overrides["seed"] = _integer(overrides["seed"], "seed", 0, MAX_SEED)
        if "emit_every" in overrides:
            overrides["emit_every"] = _integer(overrides["emit_every"], "emit_every", 1)
        if "workers" in overrides:
            overrides["workers"] = _integer(overrides["workers"], "workers", 1)
        for key in overrides:
            if key not in ("seed", "emit_every", "workers"):
                raise ValidationError(key, "not overridable")
        return replace(self, integrator=integrator, **overrides)

    def build_region(self) -> RegionBoundary:
        return self.region.build()

    def build_density(self, boundary: RegionBoundary) -> DensityField:
        return self.density.build(boundary)

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "region": self.region.to_dict(),
            "density": self.density.to_dict(),
            "n_agents": self.n_agents,
            "gains": self.gains.to_dict(),
            "integrator": self.integrator.to_dict(),
            "quadrature": self.quadrature.to_dict(),
            "seed": self.seed,
            "emit_every": self.emit_every,
            "cost": self.cost,
            "consensus": self.consensus.to_dict(),
            "workers": self.workers,
        }
        if self.initial_state is not None:
            out["initial_state"] = self.initial_state.to_dict()
        return out


def load_config(path: str) -> SimConfig:
    return SimConfig.load(path)
