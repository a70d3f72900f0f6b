import numpy as np
import pytest

from Rotary_Coverage_Sim.dynamics import (
    Gains, GenericCost, Integrator, RK4, SwarmState, make_rng, random_initial_state, swarm_rates,
)
from Rotary_Coverage_Sim.field import QuadratureConfig, sector_samples, uniform_density
from Rotary_Coverage_Sim.dynamics.optimum import local_cost
from Rotary_Coverage_Sim.geometry import Ellipse, Sector
from Rotary_Coverage_Sim.metrics import (
    build_record, consensus_reached, coverage_cost, gamma, lyapunov_rate, lyapunov_value, mass_spread,
    ring_sectors,
)

GAINS = Gains(kappa_p=0.5, kappa_phi=0.5, kappa_r=0.1)


def _state(references, phases=None, positions=None):
    n = len(references)
    phases = np.linspace(0.0, 2 * np.pi, n, endpoint=False) if phases is None else phases
    positions = np.zeros((n, 2)) if positions is None else positions
    return SwarmState.from_arrays(phases, references, positions)


def moving_state():
    return SwarmState.from_arrays(
        [0.0, 1.2, 3.0, 4.4],
        [(0.2, 0.1), (-0.1, 0.2), (0.0, -0.2), (0.1, 0.0)],
        [(1.0, 0.5), (-0.5, 0.8), (-0.8, -0.6), (0.6, -0.9)],
    )


def test_lyapunov_value_examples():
    same = [(0.5, 0.5)] * 3
    assert lyapunov_value(_state(same), [2.0, 2.0, 2.0]) == 0.0
    assert lyapunov_value(_state(same), [1.0, 2.0, 3.0]) == pytest.approx(3.0)


def test_lyapunov_value_cyclic_invariance():
    rng = np.random.default_rng(2)
    refs = rng.normal(size=(5, 2))
    masses = rng.uniform(1.0, 2.0, size=5)
    state = _state(refs)
    shifted = SwarmState(state.agents[2:] + state.agents[:2])
    assert lyapunov_value(shifted, np.roll(masses, -2)) == pytest.approx(lyapunov_value(state, masses), rel=1e-14)


def test_gamma_examples():
    assert gamma(_state([(1.0, 1.0)] * 4)) == [0.0] * 4
    assert gamma(_state([(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)])) == [1.0, 1.0, 0.0]


def test_mass_spread():
    assert mass_spread([1.0, 1.0, 1.0]) == 0.0
    assert mass_spread([1.0, 2.0, 3.0]) == pytest.approx(0.5)


def test_ring_sectors_follow_successor_phase():
    state = _state([(0.0, 0.0)] * 3, phases=[0.0, 2.0, 4.0])
    sectors = ring_sectors(state)
    assert [(s.phase_start, s.phase_end) for s in sectors] == [(0.0, 2.0), (2.0, 4.0), (4.0, 0.0)]


def test_cost_of_disk_about_its_centroid(unit_disk, uniform, fine_quad):
    # three sectors tiling the disk, every agent at the disk's centroid
    state = _state([(0.0, 0.0)] * 3)
    assert coverage_cost(state, unit_disk, uniform, fine_quad) == pytest.approx(np.pi / 2, rel=1e-10)
    samples = sector_samples(unit_disk, uniform, Sector.full((0.0, 0.0)), fine_quad)
    quadratic = GenericCost(lambda p, x, y: (p[0] - x) ** 2 + (p[1] - y) ** 2, lambda p, x, y: None)
    assert local_cost(np.zeros(2), samples, quadratic) == pytest.approx(np.pi / 2, rel=1e-10)


def test_quadratic_expansion_matches_direct_integral(ellipse, benchmark):
    state = random_initial_state(ellipse, 6, make_rng(9))
    quadratic = GenericCost(lambda p, x, y: (p[0] - x) ** 2 + (p[1] - y) ** 2,
                            lambda p, x, y: np.column_stack([2 * (p[0] - x), 2 * (p[1] - y)]))
    expanded = coverage_cost(state, ellipse, benchmark)
    direct = coverage_cost(state, ellipse, benchmark, cost_kind=quadratic)
    assert expanded == pytest.approx(direct, rel=1e-10)


def test_moving_an_agent_off_its_centroid_raises_cost(ellipse, benchmark):
    state = random_initial_state(ellipse, 6, make_rng(10))
    evaluation = swarm_rates(state, ellipse, benchmark, Gains())
    centred = SwarmState.from_arrays(state.phases(), state.references(), np.array(evaluation.optima))
    base = coverage_cost(centred, ellipse, benchmark)
    for index in range(centred.n):
        positions = np.array(evaluation.optima)
        positions[index] += (0.05, -0.03)
        moved = SwarmState.from_arrays(state.phases(), state.references(), positions)
        assert coverage_cost(moved, ellipse, benchmark) > base


def test_consensus_detection(uniform):
    disk = Ellipse(2.0, 2.0)
    n = 6
    width = 2 * np.pi / n
    mids = width * np.arange(n) + width / 2
    distance = 8 * np.sin(width / 2) / (3 * width)
    centred = SwarmState.from_arrays(width * np.arange(n), np.zeros((n, 2)),
                                     np.column_stack([distance * np.cos(mids), distance * np.sin(mids)]))
    record = build_record(swarm_rates(centred, disk, uniform, Gains()), disk, uniform, Gains())
    assert record.lyapunov == pytest.approx(0.0, abs=1e-20)
    assert consensus_reached(record, 1e-12, 1e-12, 1e-12)

    scattered = random_initial_state(disk, n, make_rng(42))
    record = build_record(swarm_rates(scattered, disk, uniform, Gains()), disk, uniform, Gains())
    assert not consensus_reached(record, 1e-4, 0.01, 1e-3)


def test_lyapunov_rate_formula_and_sign(ellipse, benchmark):
    evaluation = swarm_rates(random_initial_state(ellipse, 6, make_rng(12)), ellipse, benchmark, GAINS)
    expected = (-np.sum(evaluation.phi_dots() ** 2) / GAINS.kappa_phi
                - np.sum(evaluation.r_dots() ** 2) / GAINS.kappa_r)
    assert lyapunov_rate(evaluation, GAINS) == pytest.approx(expected)
    assert lyapunov_rate(evaluation, GAINS) <= 0.0


def test_lyapunov_rate_predicts_change():
    region = Ellipse(2.0, 1.5)
    density = uniform_density(1.0)
    integrator = Integrator(region, density, GAINS, dt=1e-3, kind=RK4)
    state = moving_state()
    before = integrator.rates(state)
    after = integrator.rates(integrator.step(state, first_stage=before))
    v0 = lyapunov_value(state, before.masses)
    v1 = lyapunov_value(after.state, after.masses)
    predicted = 0.5 * (lyapunov_rate(before, GAINS) + lyapunov_rate(after, GAINS))
    assert (v1 - v0) / integrator.dt == pytest.approx(predicted, rel=1e-2)


def test_lyapunov_is_non_increasing_along_rk4_run():
    region = Ellipse(2.0, 1.5)
    density = uniform_density(1.0)
    integrator = Integrator(region, density, GAINS, dt=0.01, kind=RK4)
    state = moving_state()
    values = []
    for _ in range(100):
        evaluation = integrator.rates(state)
        record = build_record(evaluation, region, density, GAINS, with_cost=False)
        assert record.lyapunov_rate <= 0.0
        values.append(record.lyapunov)
        state = integrator.step(state, first_stage=evaluation)
    for previous, current in zip(values, values[1:]):
        assert current <= previous + 1e-8 * max(1.0, previous)
    assert values[-1] < values[0]
    assert integrator.events == []


def test_cost_decreases_as_agents_track_centroids():
    region = Ellipse(2.0, 1.5)
    density = uniform_density(1.0)
    integrator = Integrator(region, density, GAINS, dt=0.05, kind=RK4)
    # agents start on the far side of the region from their own sectors
    start = moving_state()
    state = SwarmState.from_arrays(start.phases(), start.references(), -start.positions())
    first = build_record(integrator.rates(state), region, density, GAINS)
    for _ in range(40):
        state = integrator.step(state)
    last = build_record(integrator.rates(state), region, density, GAINS)
    assert last.cost < first.cost
    assert max(last.centroid_errors) < max(first.centroid_errors)


FAST_GAINS = Gains(kappa_p=1.0, kappa_phi=1.0, kappa_r=1.0)
SETTLED_RATE = 1e-10


def _max_rate(evaluation):
    return max(np.max(np.abs(evaluation.phi_dots())), np.max(np.abs(evaluation.r_dots())),
               np.max(np.abs(evaluation.p_dots())))


@pytest.fixture(scope="module")
def settling_run():
    """Four agents on the unit disk, unequal sectors, run until every rate is below SETTLED_RATE."""
    region = Ellipse(1.0, 1.0)
    density = uniform_density(1.0)
    quad = QuadratureConfig(8, 8)
    integrator = Integrator(region, density, FAST_GAINS, dt=0.1, kind=RK4, quad=quad)
    state = SwarmState.from_arrays([0.0, 1.45, 3.2, 4.7], np.zeros((4, 2)), np.zeros((4, 2)))
    records = []
    for k in range(1000):
        evaluation = integrator.rates(state)
        if k % 5 == 0:
            records.append(build_record(evaluation, region, density, FAST_GAINS, quad, with_cost=False))
        if _max_rate(evaluation) < SETTLED_RATE:
            break
        state = integrator.step(state, first_stage=evaluation)
    records.append(build_record(evaluation, region, density, FAST_GAINS, quad, with_cost=False))
    return evaluation, records, integrator.events


def test_settled_rates_imply_equal_workloads_and_common_reference(settling_run):
    evaluation, _, events = settling_run
    assert _max_rate(evaluation) < SETTLED_RATE
    masses = np.asarray(evaluation.masses)
    assert np.max(np.abs(masses - masses.mean())) / masses.mean() < 1e-6
    references = evaluation.state.references()
    assert np.max(np.linalg.norm(references - references.mean(axis=0), axis=1)) < 1e-6
    assert events == []


def test_consensus_is_reached_and_kept(settling_run):
    _, records, _ = settling_run
    flags = [consensus_reached(record, 1e-4, 0.01, 1e-3) for record in records]
    assert not flags[0]
    first = flags.index(True)
    assert all(flags[first:])


def test_lyapunov_decays_by_four_orders(settling_run):
    _, records, _ = settling_run
    assert records[0].mass_spread == pytest.approx(0.114, abs=1e-3)
    assert records[-1].lyapunov / records[0].lyapunov < 1e-4
