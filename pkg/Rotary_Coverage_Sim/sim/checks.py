"""
Invariant suite run by ``--check`` on a configuration's region and density.
"""
from dataclasses import dataclass
from typing import Callable, List
import logging

import numpy as np

from Rotary_Coverage_Sim.dynamics.state import make_rng, sample_inside
from Rotary_Coverage_Sim.field.quadrature import GAUSS_LEGENDRE, QuadratureConfig
from Rotary_Coverage_Sim.field.integrals import (
    grid_mass_oracle, partition_gradients, sector_mass,
)
from Rotary_Coverage_Sim.geometry.sector import Sector, TWO_PI
from .config import SimConfig

logger = logging.getLogger(__name__)

FD_STEP = 1e-5
FD_TOL = 1e-3
# level-set depth of random references
INTEGRAL_MARGIN = 0.3
ORACLE_MARGIN = 0.5
# tiling identities are checked to 1e-8, beyond what 32 angular nodes resolve on a full circle
FINE_QUADRATURE = QuadratureConfig(64, 64, GAUSS_LEGENDRE)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name:<24} worst={self.worst:.3e}  {self.detail}"


def random_reference(boundary, rng: np.random.Generator, margin: float = 0.05) -> np.ndarray:
    """An interior point with L < -margin, or the deepest of 256 candidates when none is."""
    candidates = sample_inside(boundary, rng, 256)
    level = np.asarray(boundary.level(candidates[:, 0], candidates[:, 1]))
    deep = np.flatnonzero(level < -margin)
    return candidates[deep[0]] if deep.size else candidates[int(np.argmin(level))]


def random_sector(boundary, rng: np.random.Generator, min_width: float = 0.3,
                  margin: float = INTEGRAL_MARGIN) -> Sector:
    start = rng.uniform(0.0, TWO_PI)
    width = rng.uniform(min_width, TWO_PI - min_width)
    return Sector(tuple(random_reference(boundary, rng, margin)), start, np.mod(start + width, TWO_PI))


def tiling_phases(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.sort(rng.uniform(0.0, TWO_PI, size=n))


def check_ray_boundary(boundary, density, quad, rng, cases: int) -> CheckResult:
    worst = 0.0
    ok = True
    for _ in range(cases):
        origin = random_reference(boundary, rng)
        angles = rng.uniform(0.0, TWO_PI, size=16)
        kappa = np.asarray(boundary.ray_distances(origin, angles))
        x = origin[0] + kappa * np.cos(angles)
        y = origin[1] + kappa * np.sin(angles)
        residual = float(np.max(np.abs(boundary.level(x, y))))
        inner = boundary.level(origin[0] + 0.999 * kappa * np.cos(angles),
                               origin[1] + 0.999 * kappa * np.sin(angles))
        worst = max(worst, residual)
        ok = ok and residual < 1e-10 and bool(np.all(inner < 0.0))
    return CheckResult("ray_boundary", ok, worst, "|L| on boundary hits")


def check_phase_gradients(boundary, density, quad, rng, cases: int) -> CheckResult:
    worst = 0.0
    signs = True
    for _ in range(cases):
        s = random_sector(boundary, rng)
        g = partition_gradients(boundary, density, s, quad)
        signs = signs and g.dm_dphi_start < 0.0 < g.dm_dphi_end
        for analytic, plus, minus in (
            (g.dm_dphi_start, Sector(s.reference, s.phase_start + FD_STEP, s.phase_end),
             Sector(s.reference, s.phase_start - FD_STEP, s.phase_end)),
            (g.dm_dphi_end, Sector(s.reference, s.phase_start, s.phase_end + FD_STEP),
             Sector(s.reference, s.phase_start, s.phase_end - FD_STEP)),
        ):
            fd = (sector_mass(boundary, density, plus, quad)
                  - sector_mass(boundary, density, minus, quad)) / (2.0 * FD_STEP)
            worst = max(worst, abs(fd - analytic) / abs(analytic))
    return CheckResult("phase_gradients", worst < FD_TOL and signs, worst,
                       "relative error vs central differences" + ("" if signs else "; sign property violated"))


def check_reference_gradient(boundary, density, quad, rng, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        s = random_sector(boundary, rng)
        analytic = partition_gradients(boundary, density, s, quad).dm_dref
        mass = sector_mass(boundary, density, s, quad)
        for k in range(2):
            e = np.zeros(2)
            e[k] = FD_STEP
            plus = Sector(tuple(np.array(s.reference) + e), s.phase_start, s.phase_end)
            minus = Sector(tuple(np.array(s.reference) - e), s.phase_start, s.phase_end)
            fd = (sector_mass(boundary, density, plus, quad)
                  - sector_mass(boundary, density, minus, quad)) / (2.0 * FD_STEP)
            worst = max(worst, abs(fd - analytic[k]) / mass)
    return CheckResult("reference_gradient", worst < FD_TOL, worst, "error / sector mass vs central differences")


def check_additivity(boundary, density, quad, rng, cases: int) -> CheckResult:
    quad = FINE_QUADRATURE
    worst = 0.0
    for _ in range(cases):
        s = random_sector(boundary, rng)
        split = s.phase_start + rng.uniform(0.1, 0.9) * s.width
        whole = sector_mass(boundary, density, s, quad)
        parts = (sector_mass(boundary, density, Sector(s.reference, s.phase_start, split), quad)
                 + sector_mass(boundary, density, Sector(s.reference, split, s.phase_end), quad))
        worst = max(worst, abs(parts - whole) / whole)
    return CheckResult("additivity", worst < 1e-8, worst, "relative error of split sectors")


def check_conservation(boundary, density, quad, rng, cases: int) -> CheckResult:
    quad = FINE_QUADRATURE
    worst = 0.0
    for n in (3, 6, 12):
        ref = tuple(random_reference(boundary, rng, INTEGRAL_MARGIN))
        total = sector_mass(boundary, density, Sector.full(ref), quad)
        phases = tiling_phases(rng, n)
        parts = sum(sector_mass(boundary, density, Sector(ref, phases[i], phases[(i + 1) % n]), quad)
                    for i in range(n))
        worst = max(worst, abs(parts - total) / total)
    return CheckResult("conservation", worst < 1e-8, worst, "relative error of tiled sectors, N in 3/6/12")


def check_grid_agreement(boundary, density, quad, rng, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(min(cases, 3)):
        s = random_sector(boundary, rng, min_width=0.8, margin=ORACLE_MARGIN)
        quadrature = sector_mass(boundary, density, s, quad)
        oracle = grid_mass_oracle(boundary, density, s, 2048)
        worst = max(worst, abs(quadrature - oracle) / oracle)
    return CheckResult("grid_agreement", worst < 5e-3, worst, "relative gap to the 2048 grid oracle")


CHECKS: List[Callable] = [
    check_ray_boundary, check_phase_gradients, check_reference_gradient,
    check_additivity, check_conservation, check_grid_agreement,
]


def run_checks(config: SimConfig, cases: int = 20) -> List[CheckResult]:
    boundary = config.build_region()
    density = config.build_density(boundary)
    results = []
    for check in CHECKS:
        rng = make_rng(config.seed)
        result = check(boundary, density, config.quadrature, rng, cases)
        logger.info(result.line())
        results.append(result)
    return results
