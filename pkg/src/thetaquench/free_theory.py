"""Closed-form treatment of the mass-phase quench at zero gauge coupling.

With the coupling switched off the Dirac Hamiltonian splits into independent
2x2 momentum blocks h_theta(k) = k sigma_x - m sin(theta) sigma_y
+ m cos(theta) sigma_z.  A sudden change theta -> theta' leaves each mode in
the old negative-energy spinor, and every observable of interest reduces to
the overlap amplitude

    g(k, t) = <u_-(k)| exp(-i h_theta'(k) t) |u_-(k)>
            = cos(omega t) + i c(k) sin(omega t),

with omega = sqrt(k^2 + m^2) and c(k) = (k^2 + m^2 cos dtheta) / omega^2.
The amplitude depends on the two angles only through dtheta = theta' - theta.
For cos(dtheta) < 0 the factor c changes sign at +-k_c = m sqrt(-cos dtheta),
and g vanishes at the points (+-k_c, t_c^(n)); these zeros carry the phase
vortices counted by :mod:`thetaquench.topology`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .topology import PhaseField

TWO_PI = 2.0 * np.pi

# |cos dtheta| below this is treated as the marginal quench |dtheta| = pi/2,
# where the critical momentum collides with k = 0 and disappears.
MARGINAL_COS_TOL = 1e-14

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def wrap_angle(angle):
    """Reduce an angle (scalar or array) modulo 2*pi into (-pi, pi]."""
    return np.pi - (np.pi - np.asarray(angle)) % TWO_PI


@dataclass(frozen=True)
class FreeParams:
    """Fermion mass and the two mass angles of a sudden quench.

    Angles are stored reduced into (-pi, pi]; all amplitudes depend on them
    only through the wrapped difference ``dtheta``.
    """

    m: float
    theta: float
    theta_prime: float

    def __post_init__(self):
        if not self.m > 0.0:
            raise ValueError(f"mass must be positive, got {self.m}")
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "theta", float(wrap_angle(self.theta)))
        object.__setattr__(self, "theta_prime", float(wrap_angle(self.theta_prime)))

    @property
    def dtheta(self) -> float:
        """Quench angle theta' - theta wrapped into (-pi, pi]."""
        return float(wrap_angle(self.theta_prime - self.theta))


@dataclass(frozen=True)
class BlochMode:
    """One 2x2 momentum block: h(k) = n_vec . (sigma_x, sigma_y, sigma_z)."""

    k: float
    n_vec: np.ndarray
    omega: float
    u_minus: np.ndarray

    def hamiltonian(self) -> np.ndarray:
        """The 2x2 block as an explicit matrix."""
        n1, n2, n3 = self.n_vec
        return n1 * PAULI_X + n2 * PAULI_Y + n3 * PAULI_Z


@dataclass(frozen=True)
class CriticalSet:
    """Zeros of the mode amplitude, if the quench produces any.

    ``k_c`` is ``None`` when cos(dtheta) >= 0.  ``marginal`` marks the
    boundary case |dtheta| = pi/2 where cos(dtheta) vanishes to machine
    precision and no critical structure survives.
    """

    k_c: float | None
    t_c: np.ndarray
    marginal: bool

    @property
    def exists(self) -> bool:
        return self.k_c is not None


def bloch_mode(k: float, p: FreeParams, angle: float) -> BlochMode:
    """Momentum block of the free Hamiltonian at mass angle ``angle``.

    The negative-energy spinor is returned in a fixed gauge; overlap
    amplitudes never depend on that choice.
    """
    m = p.m
    n_vec = np.array([k, -m * np.sin(angle), m * np.cos(angle)])
    omega = float(np.hypot(k, m))
    n3 = n_vec[2]
    if omega + n3 < 1e-12 * omega:
        # n points along -z; the closed form below degenerates.
        u = np.array([1.0, 0.0], dtype=complex)
    else:
        u = np.array([-(n_vec[0] - 1j * n_vec[1]), n3 + omega], dtype=complex)
        u /= np.sqrt(2.0 * omega * (omega + n3))
    return BlochMode(k=float(k), n_vec=n_vec, omega=omega, u_minus=u)


def mode_amplitude(k, t, p: FreeParams):
    """Overlap amplitude g(k, t) of one momentum mode after the quench.

    Broadcasts over ``k`` and ``t``.  |g| <= 1 always, and |g| = 1 exactly
    when the mode is quench-inert (c(k)^2 = 1).
    """
    k = np.asarray(k, dtype=float)
    t = np.asarray(t, dtype=float)
    m = p.m
    omega2 = k * k + m * m
    omega = np.sqrt(omega2)
    c = (k * k + m * m * np.cos(p.dtheta)) / omega2
    phase = omega * t
    return np.cos(phase) + 1j * c * np.sin(phase)


def critical_points(p: FreeParams, n_max: int = 3) -> CriticalSet:
    """Critical momentum and the first ``n_max`` critical times.

    Zeros of the amplitude need cos(dtheta) < 0.  They sit at
    +-k_c = m sqrt(-cos dtheta) and t_c^(n) = (2n - 1) pi / (2 omega(k_c)),
    so later critical times are exact odd multiples of the first.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    cosd = np.cos(p.dtheta)
    if abs(cosd) <= MARGINAL_COS_TOL:
        return CriticalSet(k_c=None, t_c=np.empty(0), marginal=True)
    if cosd > 0.0:
        return CriticalSet(k_c=None, t_c=np.empty(0), marginal=False)
    k_c = p.m * np.sqrt(-cosd)
    omega_c = np.hypot(k_c, p.m)
    t_c1 = np.pi / (2.0 * omega_c)
    t_c = t_c1 * (2.0 * np.arange(1, n_max + 1) - 1.0)
    return CriticalSet(k_c=float(k_c), t_c=t_c, marginal=False)


class QuadratureError(RuntimeError):
    """Momentum integral failed to reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSettings:
    """Controls for the momentum integral of the rate function.

    ``tol`` bounds the quadrature error on the truncated integral.  The
    integrand itself decays only like m^2 (1 - cos dtheta) / k^2, so the
    cutoff acts as a regulator: truncating at ``cutoff`` discards a smooth
    positive tail of order m^2 / cutoff.  ``cutoff=None`` picks
    50 * max(m, 1/t), a fraction-of-a-percent truncation that leaves kink
    locations and slope jumps untouched.  Pass an explicit cutoff for
    convergence studies.
    """

    cutoff: float | None = None
    tol: float = 1e-10
    limit: int = 800


def rate_function_free(t: float, p: FreeParams,
                       quad: QuadratureSettings | None = None) -> float:
    """Return-probability rate -(1/2 pi) Integral dk ln|g(k, t)|^2 / 2.

    Nonnegative, zero at t = 0, and kinked at the critical times when the
    quench has them.  Raises :class:`QuadratureError` if the adaptive
    integral cannot certify the requested absolute tolerance.
    """
    quad = quad or QuadratureSettings()
    t = float(t)
    if t == 0.0:
        return 0.0
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    m = p.m
    cosd = np.cos(p.dtheta)

    def neg_log_abs(k):
        omega2 = k * k + m * m
        c = (k * k + m * m * cosd) / omega2
        s = np.sin(np.sqrt(omega2) * t)
        return -0.5 * np.log1p(-(1.0 - c * c) * s * s)

    cutoff = quad.cutoff if quad.cutoff is not None else 50.0 * max(m, 1.0 / t)
    crit = critical_points(p, n_max=1)
    points = [crit.k_c] if crit.exists and crit.k_c < cutoff else None
    value, abserr = integrate.quad(
        neg_log_abs, 0.0, cutoff, points=points,
        epsabs=0.5 * quad.tol, epsrel=1e-11, limit=quad.limit,
    )
    if abserr > quad.tol:
        raise QuadratureError(
            f"rate integral at t={t} reached abserr={abserr:.3e} "
            f"(requested {quad.tol:.1e}); raise the limit or the tolerance"
        )
    # The integrand is even in k, so integrate half the line and divide by pi.
    return value / np.pi


def phase_field_free(k_grid, t_grid, p: FreeParams) -> PhaseField:
    """Sample the mode amplitude on a rectangular (momentum, time) grid."""
    k_grid = np.asarray(k_grid, dtype=float)
    t_grid = np.asarray(t_grid, dtype=float)
    amp = mode_amplitude(k_grid[None, :], t_grid[:, None], p)
    return PhaseField.from_amplitudes(k_grid, t_grid, amp)


# ---------------------------------------------------------------------------
# Representation-independence helpers.  The fixed convention above is
# gamma^0 = sigma_z, gamma^1 = i sigma_y, gamma^5 = gamma^0 gamma^1 = sigma_x.
# Any other 2d Clifford pair must give identical amplitudes; tests drive
# these builders with an alternative pair to prove it.
# ---------------------------------------------------------------------------

GAMMA_DEFAULT = (PAULI_Z, 1j * PAULI_Y)
GAMMA_ALT = (PAULI_X, 1j * PAULI_Z)


def mode_hamiltonian_from_gammas(k: float, m: float, angle: float,
                                 gammas=GAMMA_DEFAULT) -> np.ndarray:
    """Build h(k) = gamma^0 (gamma^1 k + m exp(i angle gamma^5)) explicitly."""
    g0, g1 = (np.asarray(g, dtype=complex) for g in gammas)
    g5 = g0 @ g1
    exp_mass = np.cos(angle) * np.eye(2) + 1j * np.sin(angle) * g5
    return g0 @ (k * g1 + m * exp_mass)


def mode_amplitude_from_gammas(k: float, t: float, p: FreeParams,
                               gammas=GAMMA_DEFAULT) -> complex:
    """Overlap amplitude computed from explicit matrices, no closed form.

    Diagonalizes h_theta(k), takes its negative-energy eigenvector, and
    applies the exact 2x2 evolution under h_theta'(k).  Slow; used to
    cross-check :func:`mode_amplitude` and its representation independence.
    """
    h_old = mode_hamiltonian_from_gammas(k, p.m, p.theta, gammas)
    h_new = mode_hamiltonian_from_gammas(k, p.m, p.theta_prime, gammas)
    evals, evecs = np.linalg.eigh(h_old)
    u = evecs[:, 0]
    # exp(-i h t) for a traceless 2x2 h with eigenvalues +-omega.
    omega = np.hypot(k, p.m)
    unitary = (np.cos(omega * t) * np.eye(2)
               - 1j * np.sin(omega * t) * h_new / omega)
    return complex(u.conj() @ unitary @ u)
