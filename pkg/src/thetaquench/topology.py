"""Integer winding diagnostics for sampled complex amplitude fields.

A quench produces a complex field g(k, t) on a rectangular grid.  Its phase,
taken in the principal branch, winds by an exact multiple of 2*pi around any
closed lattice loop that avoids zeros of g.  Three consumers share that
machinery:

* :func:`path_winding` counts the winding of one explicit loop,
* :func:`vortex_chart` locates and charges every phase vortex plaquette by
  plaquette,
* :func:`nu_invariant` forms the order parameter nu(t) = n_plus - n_minus
  from two counter-clockwise rectangles, one per half of the momentum axis,
  spanning times 0 to t.

All loops are traversed counter-clockwise in the (k, t) plane, so a positive
charge means the phase increases with the traversal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

# Amplitudes below this are treated as exact zeros: the phase there is
# meaningless and any loop through such a node is rejected.
SINGULAR_AMPLITUDE = 1e-14

# A per-link phase difference this close to +-pi cannot be trusted to sit on
# either branch; the loop containing it is rejected as ambiguous.
AMBIGUOUS_JUMP_TOL = 1e-12


class SingularNodeError(ValueError):
    """A winding path touched a node where the amplitude vanishes."""


class AmbiguousWindingError(ValueError):
    """A per-link phase jump equals pi within tolerance; the winding is
    undefined at this sampling and the grid must be offset or refined."""


class GridTooCoarseError(ValueError):
    """A single plaquette wound more than once; refine the grid."""


def principal_diff(phi_a: float, phi_b: float):
    """Phase increment phi_b - phi_a wrapped into (-pi, pi].

    Broadcasts over arrays.  Examples: principal_diff(-3, 3) is 6 - 2*pi,
    and principal_diff(pi, -pi + 0.01) is 0.01.
    """
    return np.pi - (np.pi - (np.asarray(phi_b) - np.asarray(phi_a))) % TWO_PI


@dataclass(frozen=True)
class PhaseField:
    """Complex amplitude samples on a rectangular (momentum, time) grid.

    ``amp`` has shape (len(t_grid), len(k_grid)).  ``phase`` is the principal
    argument in (-pi, pi] and ``singular_mask`` marks nodes with vanishing
    amplitude, where the phase column is meaningless.
    """

    k_grid: np.ndarray
    t_grid: np.ndarray
    amp: np.ndarray
    phase: np.ndarray
    singular_mask: np.ndarray

    @classmethod
    def from_amplitudes(cls, k_grid, t_grid, amp) -> "PhaseField":
        k_grid = np.asarray(k_grid, dtype=float)
        t_grid = np.asarray(t_grid, dtype=float)
        amp = np.asarray(amp, dtype=complex)
        if k_grid.ndim != 1 or t_grid.ndim != 1:
            raise ValueError("grids must be one-dimensional")
        if np.any(np.diff(k_grid) <= 0.0):
            raise ValueError("k_grid must be strictly increasing")
        if np.any(np.diff(t_grid) <= 0.0):
            raise ValueError("t_grid must be strictly increasing")
        if t_grid[0] != 0.0:
            raise ValueError("t_grid must start at 0")
        if not np.any(k_grid == 0.0):
            raise ValueError("k_grid must contain k = 0 exactly")
        if amp.shape != (t_grid.size, k_grid.size):
            raise ValueError(
                f"amplitude shape {amp.shape} does not match grid "
                f"({t_grid.size}, {k_grid.size})"
            )
        phase = np.angle(amp)
        # np.angle returns [-pi, pi]; fold the closed lower edge onto +pi.
        phase = np.where(phase > -np.pi, phase, np.pi)
        singular = np.abs(amp) < SINGULAR_AMPLITUDE
        return cls(k_grid=k_grid, t_grid=t_grid, amp=amp,
                   phase=phase, singular_mask=singular)

    @property
    def k_zero_index(self) -> int:
        return int(np.flatnonzero(self.k_grid == 0.0)[0])


@dataclass(frozen=True)
class WindingResult:
    """Half-plane winding numbers at one time row.

    ``per_link_max_jump`` is the largest |phase increment| seen on any link
    of either contour; results with jumps at or above pi - 1e-12 are
    unreliable and flagged through :attr:`reliable`.
    """

    n_plus: int
    n_minus: int
    nu: int
    per_link_max_jump: float

    @property
    def reliable(self) -> bool:
        return self.per_link_max_jump < np.pi - AMBIGUOUS_JUMP_TOL


@dataclass(frozen=True)
class Vortex:
    """One phase vortex: grid cell center and integer charge."""

    k: float
    t: float
    charge: int


def _loop_increments(field: PhaseField, path) -> tuple[float, float]:
    """Sum of principal phase increments along a closed node path.

    Returns (total, max_abs_jump).  Rejects paths touching singular nodes
    and links whose jump sits on the branch cut within tolerance.
    """
    path = list(path)
    if len(path) < 2 or path[0] != path[-1]:
        raise ValueError("path must be closed (first node == last node)")
    for it, ik in path:
        if field.singular_mask[it, ik]:
            raise SingularNodeError(
                f"path touches singular node at t index {it}, k index {ik}; "
                f"offset the time row by half a step and resample"
            )
    phases = np.array([field.phase[it, ik] for it, ik in path])
    diffs = principal_diff(phases[:-1], phases[1:])
    max_jump = float(np.max(np.abs(diffs))) if diffs.size else 0.0
    if np.any(np.abs(np.abs(diffs) - np.pi) <= AMBIGUOUS_JUMP_TOL):
        raise AmbiguousWindingError(
            "a per-link phase jump equals pi within 1e-12; the winding is "
            "ambiguous at this sampling"
        )
    return float(np.sum(diffs)), max_jump


def path_winding(field: PhaseField, path) -> int:
    """Integer winding of the field phase around a closed lattice path.

    ``path`` is a sequence of (t_index, k_index) nodes with the first node
    repeated at the end.  The summed increments must land on a multiple of
    2*pi to within 1e-9, which holds whenever no link jump reaches pi.
    """
    total, _ = _loop_increments(field, path)
    winding = int(np.round(total / TWO_PI))
    residual = abs(total - winding * TWO_PI)
    if residual >= 1e-9:
        raise AmbiguousWindingError(
            f"winding sum is {total}, off a 2*pi multiple by {residual:.3e}"
        )
    return winding


def _rectangle(t_top: int, k_left: int, k_right: int):
    """Counter-clockwise boundary of grid rectangle [0, t_top] x [k_left, k_right]."""
    path = []
    path.extend((0, ik) for ik in range(k_left, k_right + 1))
    path.extend((it, k_right) for it in range(1, t_top + 1))
    path.extend((t_top, ik) for ik in range(k_right - 1, k_left - 1, -1))
    path.extend((it, k_left) for it in range(t_top - 1, -1, -1))
    return path


def nu_invariant(field: PhaseField, t_index: int) -> WindingResult:
    """Order parameter nu = n_plus - n_minus at time row ``t_index``.

    ``n_plus`` winds counter-clockwise around [0, t] x [0, k_max] and
    ``n_minus`` around [0, t] x [k_min, 0]; both share the k = 0 edge.  At
    ``t_index = 0`` the rectangles are degenerate and nu is 0 by definition.
    """
    if not 0 <= t_index < field.t_grid.size:
        raise IndexError(f"t_index {t_index} out of range")
    if t_index == 0:
        return WindingResult(n_plus=0, n_minus=0, nu=0, per_link_max_jump=0.0)
    ik0 = field.k_zero_index
    n_k = field.k_grid.size
    if ik0 == 0 or ik0 == n_k - 1:
        raise ValueError("nu needs momentum columns on both sides of k = 0")
    total_p, jump_p = _loop_increments(field, _rectangle(t_index, ik0, n_k - 1))
    total_m, jump_m = _loop_increments(field, _rectangle(t_index, 0, ik0))
    n_plus = int(np.round(total_p / TWO_PI))
    n_minus = int(np.round(total_m / TWO_PI))
    for name, total, n in (("n_plus", total_p, n_plus), ("n_minus", total_m, n_minus)):
        residual = abs(total - n * TWO_PI)
        if residual >= 1e-9:
            raise AmbiguousWindingError(
                f"{name} sum off a 2*pi multiple by {residual:.3e}"
            )
    return WindingResult(n_plus=n_plus, n_minus=n_minus, nu=n_plus - n_minus,
                         per_link_max_jump=max(jump_p, jump_m))


def nu_series(field: PhaseField) -> np.ndarray:
    """nu at every time row of the field."""
    return np.array([nu_invariant(field, it).nu
                     for it in range(field.t_grid.size)], dtype=int)


def _plaquette_charge(field: PhaseField, it: int, ik: int) -> int:
    path = [(it, ik), (it, ik + 1), (it + 1, ik + 1), (it + 1, ik), (it, ik)]
    total, _ = _loop_increments(field, path)
    return int(np.round(total / TWO_PI))


def vortex_chart(field: PhaseField) -> list[Vortex]:
    """Locate every phase vortex, one plaquette at a time.

    Returns vortices at cell centers with charges in {-1, +1}.  A loop
    carrying |charge| > 1 means the grid undersamples the field and raises
    :class:`GridTooCoarseError`.  A singular node is handled by charging the
    2x2 block of cells around it as a single loop; if that loop is blocked
    too, the field must be resampled.

    Two like-charge zeros falling inside one cell cannot inflate a single
    plaquette above |charge| = 1 (the wrapped link sum is bounded by 4 pi);
    instead the surplus leaks into neighbouring cells as displaced charges.
    Total charge over the chart is still exact, so undersampling shows up
    as vortex positions that move under grid refinement.  Stability under
    doubling is the caller's check that the chart is converged.
    """
    n_t, n_k = field.amp.shape
    vortices = []
    singular = field.singular_mask
    for it in range(n_t - 1):
        for ik in range(n_k - 1):
            corners = singular[it:it + 2, ik:ik + 2]
            if corners.any():
                continue
            q = _plaquette_charge(field, it, ik)
            if q == 0:
                continue
            if abs(q) > 1:
                raise GridTooCoarseError(
                    f"plaquette at t index {it}, k index {ik} carries charge "
                    f"{q}; refine the grid until charges are -1, 0, or +1"
                )
            vortices.append(Vortex(
                k=0.5 * (field.k_grid[ik] + field.k_grid[ik + 1]),
                t=0.5 * (field.t_grid[it] + field.t_grid[it + 1]),
                charge=q,
            ))
    for it, ik in zip(*np.nonzero(singular)):
        if it == 0 or ik == 0 or it == n_t - 1 or ik == n_k - 1:
            raise SingularNodeError(
                f"singular node on the field boundary at t index {it}, "
                f"k index {ik}; enlarge or offset the grid"
            )
        ring = ([(it - 1, j) for j in range(ik - 1, ik + 2)]
                + [(it, ik + 1), (it + 1, ik + 1)]
                + [(it + 1, j) for j in (ik, ik - 1)]
                + [(it, ik - 1), (it - 1, ik - 1)])
        total, _ = _loop_increments(field, ring)
        q = int(np.round(total / TWO_PI))
        if abs(q) > 1:
            raise GridTooCoarseError(
                f"ring around singular node at t index {it}, k index {ik} "
                f"carries charge {q}; refine the grid until charges are "
                f"-1, 0, or +1"
            )
        if q != 0:
            vortices.append(Vortex(k=float(field.k_grid[ik]),
                                   t=float(field.t_grid[it]), charge=q))
    vortices.sort(key=lambda v: (v.t, v.k))
    return vortices
