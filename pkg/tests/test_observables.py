import numpy as np
import pytest

import thetaquench.observables as observables
from thetaquench.free_lattice import (
    cell_momenta,
    correlator_triple_free,
    loschmidt_free,
    mode_amplitude_lattice,
)
from thetaquench.lattice import LatticeParams
from thetaquench.observables import (
    DegenerateGroundStateError,
    echo_from_triple,
    equal_time_F,
    first_maximum_time,
    first_transition_time,
    lattice_phase_field,
    loschmidt_lattice,
    run_quench,
    scan_phase_diagram,
    two_time_g,
)

T_GRID = np.linspace(0.0, 10.0, 41)


@pytest.fixture(scope="module")
def free_runs():
    """Fock-space sweeps at e = 0 for both desk sizes."""
    out = {}
    for n in (4, 8):
        p = LatticeParams(n_sites=n, a=0.8, e=0.0)
        out[n] = (p, run_quench(p, T_GRID))
    return out


@pytest.mark.parametrize("n_sites", [4, 8])
def test_free_loschmidt_matches_mode_product(free_runs, n_sites):
    p, data = free_runs[n_sites]
    oracle = loschmidt_free(T_GRID, p)
    phase = np.exp(1j * np.angle(data.loschmidt[0] / oracle[0]))
    assert np.max(np.abs(data.loschmidt - phase * oracle)) < 1e-8


@pytest.mark.parametrize("n_sites", [4, 8])
def test_free_g_matches_mode_amplitude(free_runs, n_sites):
    p, data = free_runs[n_sites]
    q = cell_momenta(n_sites)
    oracle = mode_amplitude_lattice(q[None, :], T_GRID[:, None], p)
    assert np.max(np.abs(data.g - oracle)) < 1e-8


@pytest.mark.parametrize("n_sites", [4, 8])
def test_free_triple_matches_two_by_two_algebra(free_runs, n_sites):
    p, data = free_runs[n_sites]
    q = cell_momenta(n_sites)
    for j, qj in enumerate(q):
        for i, t in enumerate(T_GRID):
            oracle = correlator_triple_free(float(qj), float(t), p)
            assert np.max(np.abs(data.f_triple[i, j] - oracle)) < 1e-8


@pytest.mark.parametrize("n_sites", [4, 8])
def test_free_echo_is_squared_loschmidt(free_runs, n_sites):
    _, data = free_runs[n_sites]
    assert np.max(np.abs(data.echo - np.abs(data.loschmidt) ** 2)) < 1e-8
    finite = np.abs(data.loschmidt) > 1e-6
    assert np.allclose(data.rate_echo[finite], data.rate[finite], atol=1e-8)


def test_free_nu_ladder(free_runs):
    """The a m = 0.8 chain has its critical mode at omega = sqrt(2) m, so
    nu climbs by 2 near each odd multiple of pi/(2 sqrt 2).

    Only the early ladder is asserted: beyond t ~ 8 the zone-edge mode
    passes close to zero and the four-momentum field briefly sheds a
    winding, which is genuine coarse-sampling behaviour, not an error.
    """
    _, data = free_runs[8]
    dt = np.diff(T_GRID)[0]
    t_c1 = np.pi / (2.0 * np.sqrt(2.0))
    assert data.nu[0] == 0
    assert np.all(data.nu % 2 == 0)
    early = T_GRID <= 7.0
    assert np.all(np.diff(data.nu[early]) >= 0)
    ups = np.flatnonzero(np.diff(data.nu) > 0)
    up_times = T_GRID[ups + 1]
    for n, t_up in enumerate(up_times[:3]):
        assert abs(t_up - (2 * n + 1) * t_c1) <= dt
    assert first_transition_time(T_GRID, data.nu) == up_times[0]


def test_run_quench_agrees_with_separate_pipelines():
    p = LatticeParams(n_sites=4, a=0.8, e=1.0)
    t = np.linspace(0.0, 2.0, 9)
    data = run_quench(p, t)
    amp, rate = loschmidt_lattice(p, t)
    assert np.allclose(data.loschmidt, amp, atol=1e-12)
    assert np.allclose(data.rate, rate, atol=1e-12, equal_nan=True)
    k_g, g = two_time_g(p, t)
    assert np.allclose(data.g, g, atol=1e-12)
    assert np.array_equal(data.k_modes, k_g)
    k_f, triple = equal_time_F(p, t)
    assert np.allclose(data.f_triple, triple, atol=1e-12)
    assert np.allclose(data.echo, echo_from_triple(triple), atol=1e-12)


def test_g_equal_time_column_is_real():
    p = LatticeParams(n_sites=8, a=0.8, e=1.0)
    data = run_quench(p, np.array([0.0, 0.5]))
    assert np.max(np.abs(data.g[0].imag)) < 1e-12
    assert np.all(data.g[0].real > 0.0)


def test_interacting_quench_still_transitions():
    p = LatticeParams(n_sites=8, a=0.8, e=1.0)
    t = np.arange(0.0, 2.0 + 1e-9, 0.05)
    data = run_quench(p, t)
    assert data.nu[0] == 0
    first = first_transition_time(t, data.nu)
    assert first is not None
    assert 1.0 <= first <= 2.0
    assert np.all(np.isfinite(data.rate_g[1:]))


def test_lattice_phase_field_mirrors_zone_edge():
    p = LatticeParams(n_sites=8, a=0.8, e=0.5)
    t = np.linspace(0.0, 1.0, 5)
    k, g = two_time_g(p, t)
    field = lattice_phase_field(p, t, k, g)
    assert field.k_grid[0] == -k[-1]
    assert np.allclose(field.amp[:, 0], g[:, -1])
    assert field.k_grid.size == k.size + 1


def test_scan_records_failures_and_continues(monkeypatch):
    calls = []
    real_run = observables.run_quench

    def flaky(p, t_grid):
        calls.append(p.e)
        if p.e > 0.9:
            raise RuntimeError("synthetic breakdown")
        return real_run(p, t_grid)

    monkeypatch.setattr(observables, "run_quench", flaky)
    base = LatticeParams(n_sites=4, a=0.8, e=0.0)
    t = np.linspace(0.0, 1.0, 3)
    points = scan_phase_diagram(base, [0.0, 1.0, 0.5], t)
    assert [pt.e for pt in points] == [0.0, 1.0, 0.5]
    assert points[0].error is None and points[0].data is not None
    assert points[1].data is None
    assert "synthetic breakdown" in points[1].error
    assert points[2].error is None
    assert calls == [0.0, 1.0, 0.5]


def test_degenerate_vacuum_is_refused():
    p = LatticeParams(n_sites=4, a=0.8, m=1e-13, e=0.0)
    with pytest.raises(DegenerateGroundStateError):
        run_quench(p, np.array([0.0, 0.1]))


def test_first_transition_and_maximum_edges():
    t = np.array([0.0, 1.0, 2.0, 3.0])
    assert first_transition_time(t, np.array([0, 0, 0, 0])) is None
    assert first_transition_time(t, np.array([0, 0, 2, 2])) == 2.0
    assert first_maximum_time(t, np.array([0.0, 1.0, 0.5, 2.0])) == 1.0
    assert first_maximum_time(t, np.array([3.0, 2.0, 1.0, 0.5])) is None
    # A plateau counts at its first point.
    assert first_maximum_time(t, np.array([0.0, 1.0, 1.0, 0.0])) == 1.0
