"""
Run orchestration: initial state, time loop and output files.

Outputs in ``out_dir``:
    timeseries.csv   one row per agent per emitted step
    globals.csv      one row per emitted step
    snapshots.jsonl  full state and sector outlines per emitted step
    meta.json        config echo, total mass, run stats and event log
"""
import csv
import json
import logging
import os
import time
from typing import List, Optional

import psutil
from tqdm import tqdm

from Rotary_Coverage_Sim.dynamics.integrator import Integrator, SimulationEvent
from Rotary_Coverage_Sim.dynamics.optimum import cost_by_name
from Rotary_Coverage_Sim.dynamics.rates import RateEvaluation
from Rotary_Coverage_Sim.dynamics.state import SwarmState, make_rng, random_initial_state
from Rotary_Coverage_Sim.field.integrals import sector_mass
from Rotary_Coverage_Sim.geometry.region import RegionBoundary
from Rotary_Coverage_Sim.geometry.sector import Sector, sector_polyline
from Rotary_Coverage_Sim.metrics.diagnostics import (
    MetricsRecord, build_record, consensus_reached, ring_sectors,
)
from Rotary_Coverage_Sim.utils.errors import ConfigError, CoverageError, ReferenceEscaped, ValidationError
from .config import SimConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_DYNAMICS_ERROR = 2

TIMESERIES_HEADER = ["t", "i", "m", "gamma", "centroid_err", "px", "py", "rx", "ry", "phi"]
GLOBALS_HEADER = ["t", "V", "J", "mass_spread", "consensus"]
GENERATOR_NAME = "numpy PCG64"


def fmt(value: float) -> str:
    """Shortest round-tripping text for a float, so outputs are byte-stable."""
    return repr(float(value))


def initial_state(config: SimConfig, boundary: RegionBoundary) -> SwarmState:
    if config.initial_state is not None:
        init = config.initial_state
        return SwarmState.from_arrays(init.phases, init.references, init.positions, 0.0)
    return random_initial_state(boundary, config.n_agents, make_rng(config.seed))


def check_references(state: SwarmState, boundary: RegionBoundary) -> None:
    for index, agent in enumerate(state.agents):
        if not boundary.contains_strictly(agent.reference):
            raise ReferenceEscaped(f"initial reference {agent.reference} is outside the region",
                                   agent=index + 1)


class OutputWriter:
    """Single writer for the run's CSV and JSONL streams."""

    def __init__(self, out_dir: str, boundary: RegionBoundary):
        os.makedirs(out_dir, exist_ok=True)
        self.out_dir = out_dir
        self.boundary = boundary
        self._timeseries = open(os.path.join(out_dir, "timeseries.csv"), 'w', newline='', encoding='utf-8')
        self._globals = open(os.path.join(out_dir, "globals.csv"), 'w', newline='', encoding='utf-8')
        self._snapshots = open(os.path.join(out_dir, "snapshots.jsonl"), 'w', encoding='utf-8')
        self._ts_writer = csv.writer(self._timeseries, lineterminator='\n')
        self._gl_writer = csv.writer(self._globals, lineterminator='\n')
        self._ts_writer.writerow(TIMESERIES_HEADER)
        self._gl_writer.writerow(GLOBALS_HEADER)

    def write(self, evaluation: RateEvaluation, record: MetricsRecord, consensus: bool) -> None:
        state = evaluation.state
        t = fmt(record.time)
        for index, agent in enumerate(state.agents):
            self._ts_writer.writerow([
                t, index + 1, fmt(record.masses[index]), fmt(record.gammas[index]),
                fmt(record.centroid_errors[index]), fmt(agent.position[0]), fmt(agent.position[1]),
                fmt(agent.reference[0]), fmt(agent.reference[1]), fmt(agent.phase),
            ])
        cost = fmt(record.cost) if record.cost is not None else ""
        self._gl_writer.writerow([t, fmt(record.lyapunov), cost, fmt(record.mass_spread), int(consensus)])

        snapshot = {
            "t": record.time,
            "V": record.lyapunov,
            "V_rate": record.lyapunov_rate,
            "J": record.cost,
            "agents": [
                {
                    "i": index + 1,
                    "p": list(agent.position),
                    "r": list(agent.reference),
                    "phi": agent.phase,
                    "m": record.masses[index],
                    "centroid": evaluation.integrals[index].centroid.tolist(),
                    "target": evaluation.optima[index].tolist(),
                }
                for index, agent in enumerate(state.agents)
            ],
            "sectors": [
                {"i": index + 1, "polyline": sector_polyline(sector, self.boundary)}
                for index, sector in enumerate(ring_sectors(state))
            ],
        }
        self._snapshots.write(json.dumps(snapshot) + "\n")

    def close(self) -> None:
        for handle in (self._timeseries, self._globals, self._snapshots):
            handle.close()


def total_mass(boundary: RegionBoundary, density, quad) -> Optional[float]:
    """Mass of the whole region, integrated around the origin."""
    try:
        return sector_mass(boundary, density, Sector.full((0.0, 0.0)), quad)
    except CoverageError as err:
        logger.warning(f"Could not integrate total mass around the origin: {err}")
        return None


def write_meta(out_dir: str, meta: dict) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "meta.json"), 'w', encoding='utf-8') as f:
        json.dump(meta, f, indent=2)


def run(config: SimConfig, out_dir: str, progress: bool = True) -> int:
    """Simulate ``config`` up to t_final and write all outputs; returns an exit status."""
    started = time.perf_counter()
    events: List[SimulationEvent] = []
    meta = {
        "config": config.to_dict(),
        "integrator": {**config.integrator.to_dict(), "steps": config.integrator.steps},
        "generator": {"algorithm": GENERATOR_NAME, "seed": config.seed},
        "events": [],
    }

    try:
        boundary = config.build_region()
        density = config.build_density(boundary)
        cost_kind = cost_by_name(config.cost)
        start = initial_state(config, boundary)
        if start.n != config.n_agents:
            raise ValidationError("initial_state", f"has {start.n} agents, expected {config.n_agents}")
    except (ConfigError, ValueError) as err:
        logger.error(f"Configuration error: {err}")
        meta.update(status=EXIT_CONFIG_ERROR, error=str(err))
        write_meta(out_dir, meta)
        return EXIT_CONFIG_ERROR

    quad = config.quadrature
    meta["total_mass"] = total_mass(boundary, density, quad)
    logger.info(f"Starting run: {config.n_agents} agents, {config.integrator.kind} dt={config.integrator.dt}, "
                f"t_final={config.integrator.t_final}, total mass {meta['total_mass']}")

    integrator = Integrator(boundary, density, config.gains, config.integrator.dt, config.integrator.kind,
                            quad, cost_kind, config.workers, events)
    tolerances = config.consensus
    n_steps = config.integrator.steps
    writer: Optional[OutputWriter] = None
    status = EXIT_OK
    consensus_time = None
    final_consensus = False
    state = start
    try:
        check_references(state, boundary)
        writer = OutputWriter(out_dir, boundary)
        for k in tqdm(range(n_steps + 1), desc="Simulating", disable=not progress):
            state = state.with_time(round(k * config.integrator.dt, 12))
            evaluation = integrator.rates(state)
            if k % config.emit_every == 0 or k == n_steps:
                record = build_record(evaluation, boundary, density, config.gains, quad, cost_kind)
                final_consensus = consensus_reached(record, tolerances.tol_gamma, tolerances.tol_mass,
                                                    tolerances.tol_centroid)
                if final_consensus and consensus_time is None:
                    consensus_time = record.time
                    logger.info(f"Consensus reached at t={record.time}")
                elif not final_consensus and consensus_time is not None:
                    logger.info(f"Consensus lost at t={record.time}")
                    consensus_time = None
                writer.write(evaluation, record, final_consensus)
            if k == n_steps:
                break
            state = integrator.step(state, first_stage=evaluation)
    except CoverageError as err:
        status = EXIT_DYNAMICS_ERROR
        t = state.time if state is not None else 0.0
        events.append(SimulationEvent(type(err).__name__, t, err.agent, str(err)))
        logger.error(f"Dynamics error at t={t}: {err}")
        meta["error"] = str(err)
    finally:
        if writer is not None:
            writer.close()

    elapsed = time.perf_counter() - started
    meta.update(
        status=status,
        events=[e.to_dict() for e in events],
        consensus={"final": final_consensus, "since": consensus_time, **tolerances.to_dict()},
        stats={
            "wall_clock_s": elapsed,
            "steps": n_steps,
            "steps_per_s": n_steps / elapsed if elapsed > 0 else None,
            "rss_mb": psutil.Process().memory_info().rss / (1024 * 1024),
        },
    )
    write_meta(out_dir, meta)
    logger.info(f"Run finished with status {status} in {elapsed:.2f}s")
    return status
