"""Quadratic-Hamiltonian oracle for the lattice chain at zero coupling.

With e = 0 the lattice Hamiltonian of :mod:`thetaquench.lattice` is a free
hopping problem.  Pairing sites (2j, 2j+1) into cells diagonalizes it in the
cell momenta q_l = 4 pi l / n_sites, giving 2x2 blocks

    h(q) = [ s m                  sin(q/2) e^{-iq/2} / a ]
           [ sin(q/2) e^{iq/2}/a              - s m      ]

with band energy omega(q) = sqrt(m^2 + sin(q/2)^2 / a^2).  Everything the
exact-diagonalization pipeline measures has a closed form here, built from
2x2 algebra or a single-particle determinant.  None of it touches the Fock
space, which is what makes it an independent check.
"""

from __future__ import annotations

import numpy as np

from .lattice import LatticeParams

PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def cell_momenta(n_sites: int) -> np.ndarray:
    """Cell momenta q_l = 4 pi l / n_sites for l = -n/4+1 .. n/4.

    One momentum per two-site cell, spanning the reduced zone (-pi, pi]
    with the edge q = pi included once.
    """
    n_cells = n_sites // 2
    ls = np.arange(-(n_cells // 2) + 1, n_cells // 2 + 1)
    return 2.0 * np.pi * ls / n_cells


def physical_momenta(n_sites: int, a: float) -> np.ndarray:
    """The same modes as k = q / (2a), one per cell."""
    return cell_momenta(n_sites) / (2.0 * a)


def bloch_block(q: float, p: LatticeParams, mass_sign: int) -> np.ndarray:
    """The 2x2 momentum block of the e = 0 chain."""
    off = np.sin(0.5 * q) * np.exp(-0.5j * q) / p.a
    return np.array([[mass_sign * p.m, off],
                     [np.conj(off), -mass_sign * p.m]], dtype=complex)


def band_energy(q, p: LatticeParams):
    return np.sqrt(p.m ** 2 + np.sin(0.5 * np.asarray(q)) ** 2 / p.a ** 2)


def mode_amplitude_lattice(q, t, p: LatticeParams):
    """Per-mode overlap for the mass-sign quench -m -> +m; broadcasts.

    Same cos + i c sin structure as the continuum, with
    c(q) = (sin(q/2)^2/a^2 - m^2) / omega(q)^2.  The q = 0 mode is inert,
    and for a m < 1 the factor c vanishes at q_c = 2 arcsin(a m).
    """
    q = np.asarray(q, dtype=float)
    t = np.asarray(t, dtype=float)
    s2 = np.sin(0.5 * q) ** 2 / p.a ** 2
    omega2 = p.m ** 2 + s2
    c = (s2 - p.m ** 2) / omega2
    phase = np.sqrt(omega2) * t
    return np.cos(phase) + 1j * c * np.sin(phase)


def critical_times_lattice(p: LatticeParams, n_max: int = 3):
    """Continuum critical momentum and times of the e = 0 chain, if any."""
    x = p.a * p.m
    if x >= 1.0:
        return None, np.empty(0)
    q_c = 2.0 * np.arcsin(x)
    omega_c = band_energy(q_c, p)
    t_c1 = np.pi / (2.0 * omega_c)
    return float(q_c / (2.0 * p.a)), t_c1 * (2.0 * np.arange(1, n_max + 1) - 1.0)


def loschmidt_free(t, p: LatticeParams):
    """Product of per-mode overlaps; the exact e = 0 return amplitude."""
    q = cell_momenta(p.n_sites)
    amps = mode_amplitude_lattice(q[None, :], np.asarray(t, dtype=float)[:, None], p)
    return np.prod(amps, axis=1)


def _evolved_spinor(q: float, t: float, p: LatticeParams) -> np.ndarray:
    """exp(-i h_+ t) applied to the negative-energy spinor of h_-."""
    h_minus = bloch_block(q, p, mass_sign=-1)
    h_plus = bloch_block(q, p, mass_sign=+1)
    evals, evecs = np.linalg.eigh(h_minus)
    u = evecs[:, 0]
    omega = float(band_energy(q, p))
    unitary = np.cos(omega * t) * np.eye(2) - 1j * np.sin(omega * t) * h_plus / omega
    return unitary @ u


def bloch_vector(q: float, t: float, p: LatticeParams) -> np.ndarray:
    """<sigma> in the evolved mode, a real unit 3-vector."""
    psi = _evolved_spinor(q, t, p)
    return np.array([np.real(psi.conj() @ s @ psi) for s in PAULI])


def correlator_triple_free(q: float, t: float, p: LatticeParams) -> np.ndarray:
    """(scalar, vector, pseudoscalar) components of the equal-time
    commutator correlator of one mode, (-b_z, b_x, -b_y) / 2."""
    b = bloch_vector(q, t, p)
    return 0.5 * np.array([-b[2], b[0], -b[1]])


def single_particle_hamiltonian(p: LatticeParams, mass_sign: int) -> np.ndarray:
    """The n_sites x n_sites hopping-plus-mass matrix of the e = 0 chain."""
    n = p.n_sites
    h = np.zeros((n, n), dtype=complex)
    for site in range(n):
        h[site, site] = mass_sign * p.m * (1.0 if site % 2 == 0 else -1.0)
        nxt = (site + 1) % n
        h[site, nxt] += -0.5j / p.a
        h[nxt, site] += 0.5j / p.a
    return h


def loschmidt_determinant(t: float, p: LatticeParams) -> complex:
    """Slater-determinant return amplitude det(U_-^dag exp(-i h_+ t) U_-).

    U_- collects the occupied (negative-energy) orbitals of the pre-quench
    single-particle matrix.  Independent of the mode factorization above.
    """
    h_minus = single_particle_hamiltonian(p, mass_sign=-1)
    h_plus = single_particle_hamiltonian(p, mass_sign=+1)
    evals_m, evecs_m = np.linalg.eigh(h_minus)
    occupied = evecs_m[:, : p.n_sites // 2]
    evals_p, evecs_p = np.linalg.eigh(h_plus)
    propagator = (evecs_p * np.exp(-1j * evals_p * t)) @ evecs_p.conj().T
    return complex(np.linalg.det(occupied.conj().T @ propagator @ occupied))
