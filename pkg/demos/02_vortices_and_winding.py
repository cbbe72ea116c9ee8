"""Count phase vortices of the quench amplitude and build the order parameter.

The complex amplitude g(k, t) defines a phase field on the (momentum,
time) plane.  Its zeros are vortices; winding numbers of closed contours
count them with sign.  The integer nu(t) is the difference between the
windings over the two momentum half-planes and jumps by 2 every time the
quench crosses a critical time.  The script walks a planted single
vortex, then the real quench field, then shows the failure mode when a
grid node lands exactly on a vortex.
"""

import numpy as np

from thetaquench.free_theory import FreeParams, critical_points, phase_field_free
from thetaquench.topology import (
    AmbiguousWindingError,
    PhaseField,
    nu_invariant,
    nu_series,
    path_winding,
    vortex_chart,
)

# warm up on a field with one zero planted by hand at (k0, t0)
k = np.linspace(-2.0, 2.0, 41)
t = np.linspace(0.0, 3.0, 31)
kk, tt = np.meshgrid(k, t)
planted = PhaseField.from_amplitudes(k, t, (kk - 0.55) + 1j * (tt - 1.45))

# a counterclockwise rectangle of node indices enclosing the zero
rect = [(it, ik) for it, ik in zip([5, 5, 25, 25, 5], [20, 35, 35, 20, 20])]
path = []
for (a_it, a_ik), (b_it, b_ik) in zip(rect[:-1], rect[1:]):
    steps = max(abs(b_it - a_it), abs(b_ik - a_ik))
    for s in range(steps):
        path.append((a_it + np.sign(b_it - a_it) * s,
                     a_ik + np.sign(b_ik - a_ik) * s))
path.append(rect[0])
path = [(int(a), int(b)) for a, b in path]
print(f"winding around the planted zero: {path_winding(planted, path)}")

chart = vortex_chart(planted)
v = chart[0]
print(f"vortex_chart finds it at (k, t) = ({v.k:.3f}, {v.t:.3f}) "
      f"charge {v.charge:+d}")

# now the real quench field.  401 points keep the critical momenta
# k = +-1 off the grid nodes.
p = FreeParams(m=1.0, theta=0.0, theta_prime=np.pi)
crit = critical_points(p, n_max=3)
field = phase_field_free(np.linspace(-3.0, 3.0, 401),
                         np.linspace(0.0, 7.0, 401), p)

print("\nvortices of the quench amplitude on [0, 7]:")
for v in vortex_chart(field):
    print(f"  (k, t) = ({v.k:+.4f}, {v.t:.4f})  charge {v.charge:+d}")
print("expected columns at k = +-1, rows at t_c =",
      np.array2string(crit.t_c, precision=4))

# nu(t): zero before the first critical time, then up by 2 at each one
nu = nu_series(field)
jumps = np.flatnonzero(np.diff(nu) != 0)
print("\nnu jumps at t =", np.array2string(field.t_grid[jumps + 1],
                                           precision=4))
print("nu values after each jump:", nu[jumps + 1])

# the half-plane winding at a single time row, with its reliability flag
w = nu_invariant(field, t_index=200)
print(f"\nat t = {field.t_grid[200]:.2f}: n_plus = {w.n_plus}, "
      f"n_minus = {w.n_minus}, nu = {w.nu}, reliable = {w.reliable}")

# failure mode: a grid that contains k = +-1 exactly puts nodes on the
# vortex lines.  links crossing them pick up phase differences of
# exactly pi, which cannot be wound consistently, and vortex_chart
# refuses instead of guessing.
bad = phase_field_free(np.linspace(-3.0, 3.0, 121),
                       np.linspace(0.0, 7.0, 121), p)
try:
    vortex_chart(bad)
except AmbiguousWindingError as exc:
    print(f"\n121-point grid is refused: {exc}")
# the nu contours run along k = 0 and the outer edges only, so the
# series itself is still fine on the same field
print("nu_series on the same grid still ends at", nu_series(bad)[-1])
