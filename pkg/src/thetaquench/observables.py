"""Quench observables from exact diagonalization of the lattice chain.

The protocol is always the same: prepare the ground state of the chain with
flipped mass sign (the theta = pi side of the quench), then evolve it with
the unflipped Hamiltonian at the same coupling.  Four families of
observables come out:

* the return amplitude L(t) = <Omega| exp(-i H_+ t) |Omega> and its rate,
* the gauge-invariant two-time correlator g(k, t), one value per cell
  momentum, whose phase field feeds the winding machinery,
* the equal-time commutator correlator, reduced to its (scalar, vector,
  pseudoscalar) triple per momentum, and the echo K(t) built from it,
* the integer order parameter nu(t) from the phase of g.

At zero coupling every one of these collapses to the closed forms in
:mod:`thetaquench.free_lattice`; the tests hold the two routes together at
tight tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
import warnings

import numpy as np

from .lattice import (
    DegenerateGroundStateWarning,
    Evolver,
    FockBasis,
    LatticeParams,
    annihilation_map,
    build_basis,
    build_hamiltonian,
    ground_state,
)
from .free_lattice import physical_momenta
from .topology import PhaseField, nu_series

GAMMA0 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
GAMMA1 = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
GAMMA5 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)

# Equal-time correlator components must come out real; larger imaginary
# parts indicate a broken Hermitian structure upstream.
REALNESS_TOL = 1e-10


class DegenerateGroundStateError(RuntimeError):
    """Quench from a degenerate vacuum is ill-defined."""


@dataclass(frozen=True)
class QuenchData:
    """Everything measured along one quench trajectory.

    Momentum-resolved arrays have one column per cell momentum in
    ``k_modes`` (units set by the lattice spacing and mass in ``params``).
    ``f_triple`` stacks the (scalar, vector, pseudoscalar) correlator
    components in its last axis.
    """

    params: LatticeParams
    t_grid: np.ndarray
    loschmidt: np.ndarray
    rate: np.ndarray
    k_modes: np.ndarray
    g: np.ndarray
    f_triple: np.ndarray
    echo: np.ndarray
    rate_g: np.ndarray
    rate_echo: np.ndarray
    nu: np.ndarray
    ground_energy: float


def _prepare(p: LatticeParams):
    """Shared setup: bases, Hamiltonians, and the pre-quench vacuum."""
    basis0 = build_basis(p.n_sites, charge=0)
    h_pre = build_hamiltonian(basis0, p, mass_sign=-1)
    h_post = build_hamiltonian(basis0, p, mass_sign=+1)
    with warnings.catch_warnings():
        warnings.simplefilter("error", DegenerateGroundStateWarning)
        try:
            energy, vacuum = ground_state(h_pre)
        except DegenerateGroundStateWarning as exc:
            raise DegenerateGroundStateError(str(exc)) from None
    return basis0, h_post, energy, vacuum


def loschmidt_lattice(p: LatticeParams, t_grid) -> tuple[np.ndarray, np.ndarray]:
    """Return amplitude and rate -Re ln L / (n_sites a) on a time grid."""
    t_grid = np.asarray(t_grid, dtype=float)
    _, h_post, _, vacuum = _prepare(p)
    evolver = Evolver(h_post)
    amp = np.array([vacuum.conj() @ evolver.apply(vacuum, t) for t in t_grid])
    rate = _rate_from_amplitude(amp, p.volume)
    return amp, rate


def _rate_from_amplitude(amp: np.ndarray, volume: float) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return -np.log(np.abs(amp)) / volume


def _string_evolvers(basis_minus: FockBasis, p: LatticeParams) -> list[Evolver]:
    """One charged-sector evolver per annihilation site of the correlator.

    Removing a fermion at site n leaves the chain in the Gauss sector with
    a static external unit charge at n (the field does not move when the
    fermion is destroyed).  The intermediate state evolves in that sector,
    with the probe charge pinned at n; the gauge string applied at the
    later time carries the sector over to the creation site, where the new
    fermion neutralizes it.  At e = 0 all of these collapse to the same
    operator.
    """
    return [Evolver(build_hamiltonian(basis_minus, p, mass_sign=+1,
                                      probe_site=site))
            for site in range(p.n_sites)]


def _two_time_matrix(ann, removed0, bra, evolvers, t: float) -> np.ndarray:
    """G_mn(t) = <B(t)| phi_m^dag exp(-i H^(n) t) phi_n |Omega>."""
    n_sites = len(ann)
    kets = np.column_stack([evolvers[n].apply(removed0[:, n], t)
                            for n in range(n_sites)])
    removed_bra = np.column_stack([op @ bra for op in ann])
    return removed_bra.conj().T @ kets


def two_time_g(p: LatticeParams, t_grid) -> tuple[np.ndarray, np.ndarray]:
    """Gauge-invariant two-time correlator g(k, t) per cell momentum.

    Built from the matrix G_mn(t) = <B(t)| phi_m^dag |A_n(t)> with
    |B(t)> = exp(-i H_+ t)|Omega> and |A_n(t)> = exp(-i H^(n) t) phi_n
    |Omega>, where H^(n) is the charged-sector Hamiltonian carrying the
    static string-end charge at site n (see :func:`_string_evolvers`).
    The spinor trace is Fourier-transformed over cells and conjugated so
    that at e = 0 each momentum reproduces its mode overlap amplitude.

    Returns (k_modes, g) with g of shape (len(t_grid), len(k_modes)).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    basis0, h_post, _, vacuum = _prepare(p)
    basis_minus = build_basis(p.n_sites, charge=-1)
    ann = [annihilation_map(basis0, basis_minus, site)
           for site in range(p.n_sites)]
    removed = np.column_stack([op @ vacuum for op in ann])

    k_modes = physical_momenta(p.n_sites, p.a)
    cells = np.arange(p.n_sites // 2)
    # One plane-wave vector per momentum: w_j = exp(-i k x_j), x_j = 2 a j,
    # so that chi(k) annihilates the mode that propagates as exp(+i k x).
    waves = np.exp(-1j * np.outer(k_modes, 2.0 * p.a * cells))

    ev0 = Evolver(h_post)
    evolvers = _string_evolvers(basis_minus, p)
    g = np.empty((t_grid.size, k_modes.size), dtype=complex)
    for i, t in enumerate(t_grid):
        bra = ev0.apply(vacuum, t)
        corr = _two_time_matrix(ann, removed, bra, evolvers, t)
        for j, w in enumerate(waves):
            raw = (w.conj() @ corr[0::2, 0::2] @ w
                   + w.conj() @ corr[1::2, 1::2] @ w)
            g[i, j] = np.conj(raw) * 2.0 / p.n_sites
    return k_modes, g


def equal_time_F(p: LatticeParams, t_grid) -> tuple[np.ndarray, np.ndarray]:
    """(scalar, vector, pseudoscalar) correlator triple per cell momentum.

    The equal-time commutator correlator of the spinor built from one cell
    is F(k) = (1/2)(1 - 2 D(k)) gamma^0 with D the momentum-space two-point
    function of the evolved state.  Its three independent real components
    are returned with shape (len(t_grid), n_modes, 3).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    basis0, h_post, _, vacuum = _prepare(p)
    basis_minus = build_basis(p.n_sites, charge=-1)
    ann = [annihilation_map(basis0, basis_minus, site)
           for site in range(p.n_sites)]

    k_modes = physical_momenta(p.n_sites, p.a)
    cells = np.arange(p.n_sites // 2)
    waves = np.exp(-1j * np.outer(k_modes, 2.0 * p.a * cells))

    evolver = Evolver(h_post)
    triple = np.empty((t_grid.size, k_modes.size, 3))
    for i, t in enumerate(t_grid):
        psi = evolver.apply(vacuum, t)
        removed = np.column_stack([op @ psi for op in ann])
        corr = removed.conj().T @ removed
        for j, w in enumerate(waves):
            d = np.empty((2, 2), dtype=complex)
            for alpha in range(2):
                for beta in range(2):
                    d[alpha, beta] = (w.conj() @ corr[beta::2, alpha::2] @ w
                                      ) * 2.0 / p.n_sites
            f = 0.5 * (np.eye(2) - 2.0 * d) @ GAMMA0
            comps = np.array([
                0.5 * np.trace(f),
                -0.5 * np.trace(GAMMA1 @ f),
                -0.5j * np.trace(GAMMA5 @ f),
            ])
            if np.max(np.abs(comps.imag)) > REALNESS_TOL:
                raise RuntimeError(
                    f"correlator components came out complex at t={t}, "
                    f"k={k_modes[j]}: {comps}"
                )
            triple[i, j] = comps.real
    return k_modes, triple


def echo_from_triple(f_triple: np.ndarray) -> np.ndarray:
    """K(t) = prod_k |F(k, t) + F(k, 0)|^2 over the cell momenta."""
    summed = f_triple + f_triple[0:1]
    return np.prod(np.sum(summed * summed, axis=2), axis=1)


def lattice_phase_field(p: LatticeParams, t_grid, k_modes,
                        g: np.ndarray) -> PhaseField:
    """Phase field of g over the full reduced zone.

    The correlator lives on momenta up to the zone edge +pi/(2a); the edge
    column is mirrored to -pi/(2a) (the same physical mode) so that winding
    contours can close around both halves of the zone.
    """
    k_grid = np.concatenate(([-k_modes[-1]], k_modes))
    amp = np.concatenate((g[:, -1:], g), axis=1)
    return PhaseField.from_amplitudes(k_grid, np.asarray(t_grid, float), amp)


def run_quench(p: LatticeParams, t_grid) -> QuenchData:
    """Full measurement sweep along one quench trajectory."""
    t_grid = np.asarray(t_grid, dtype=float)
    basis0, h_post, energy, vacuum = _prepare(p)
    basis_minus = build_basis(p.n_sites, charge=-1)
    ann = [annihilation_map(basis0, basis_minus, site)
           for site in range(p.n_sites)]
    removed0 = np.column_stack([op @ vacuum for op in ann])

    k_modes = physical_momenta(p.n_sites, p.a)
    cells = np.arange(p.n_sites // 2)
    waves = np.exp(-1j * np.outer(k_modes, 2.0 * p.a * cells))

    ev0 = Evolver(h_post)
    evolvers = _string_evolvers(basis_minus, p)
    n_t, n_k = t_grid.size, k_modes.size
    amp = np.empty(n_t, dtype=complex)
    g = np.empty((n_t, n_k), dtype=complex)
    triple = np.empty((n_t, n_k, 3))
    for i, t in enumerate(t_grid):
        psi = ev0.apply(vacuum, t)
        amp[i] = vacuum.conj() @ psi
        corr_two = _two_time_matrix(ann, removed0, psi, evolvers, t)
        removed_bra = np.column_stack([op @ psi for op in ann])
        corr_eq = removed_bra.conj().T @ removed_bra
        for j, w in enumerate(waves):
            raw = (w.conj() @ corr_two[0::2, 0::2] @ w
                   + w.conj() @ corr_two[1::2, 1::2] @ w)
            g[i, j] = np.conj(raw) * 2.0 / p.n_sites
            d = np.empty((2, 2), dtype=complex)
            for alpha in range(2):
                for beta in range(2):
                    d[alpha, beta] = (w.conj() @ corr_eq[beta::2, alpha::2] @ w
                                      ) * 2.0 / p.n_sites
            f = 0.5 * (np.eye(2) - 2.0 * d) @ GAMMA0
            comps = np.array([
                0.5 * np.trace(f),
                -0.5 * np.trace(GAMMA1 @ f),
                -0.5j * np.trace(GAMMA5 @ f),
            ])
            if np.max(np.abs(comps.imag)) > REALNESS_TOL:
                raise RuntimeError(
                    f"correlator components came out complex at t={t}, "
                    f"k={k_modes[j]}: {comps}"
                )
            triple[i, j] = comps.real

    volume = p.volume
    rate = _rate_from_amplitude(amp, volume)
    with np.errstate(divide="ignore"):
        rate_g = -np.sum(np.log(np.abs(g)), axis=1) / volume
    echo = echo_from_triple(triple)
    with np.errstate(divide="ignore"):
        rate_echo = -np.log(echo) / (2.0 * volume)
    field = lattice_phase_field(p, t_grid, k_modes, g)
    nu = nu_series(field)
    return QuenchData(
        params=p, t_grid=t_grid, loschmidt=amp, rate=rate, k_modes=k_modes,
        g=g, f_triple=triple, echo=echo, rate_g=rate_g, rate_echo=rate_echo,
        nu=nu, ground_energy=energy,
    )


@dataclass(frozen=True)
class ScanPoint:
    """One coupling in a phase-diagram scan, or the reason it failed."""

    e: float
    data: QuenchData | None
    error: str | None


def scan_phase_diagram(p_base: LatticeParams, e_values,
                       t_grid) -> list[ScanPoint]:
    """Sweep the coupling at fixed geometry, tolerating per-point failures.

    Each point reuses the full quench pipeline with e replaced; a point
    that raises is recorded with its error message and the scan moves on.
    """
    points = []
    for e in np.asarray(e_values, dtype=float):
        p = LatticeParams(n_sites=p_base.n_sites, a=p_base.a,
                          m=p_base.m, e=float(e))
        try:
            points.append(ScanPoint(e=float(e), data=run_quench(p, t_grid),
                                    error=None))
        except Exception as exc:  # noqa: BLE001 - recorded, not swallowed
            points.append(ScanPoint(e=float(e), data=None, error=str(exc)))
    return points


def first_transition_time(t_grid, nu: np.ndarray) -> float | None:
    """Earliest grid time where nu departs from its initial value."""
    changed = np.flatnonzero(nu != nu[0])
    return float(np.asarray(t_grid)[changed[0]]) if changed.size else None


def first_maximum_time(t_grid, series: np.ndarray) -> float | None:
    """Earliest interior local maximum of a sampled series."""
    s = np.asarray(series, dtype=float)
    for i in range(1, s.size - 1):
        if s[i] > s[i - 1] and s[i] >= s[i + 1]:
            return float(np.asarray(t_grid)[i])
    return None
