"""Sweep the coupling and map where the topological transition happens.

Fixed geometry (8 sites, am = 0.8), coupling from 0 to 2 in steps of a
quarter.  For each point the full quench pipeline runs and the scan
records the first time nu moves, the first rate-function maximum, and
any per-point failure without aborting the sweep.  The transition time
drifts upward with the coupling, which is the desk-scale version of the
phase boundary bending away from the free-theory value.
"""

import numpy as np

from thetaquench.free_lattice import critical_times_lattice
from thetaquench.lattice import LatticeParams
from thetaquench.observables import (
    first_maximum_time,
    first_transition_time,
    scan_phase_diagram,
)

base = LatticeParams(n_sites=8, a=0.8, e=0.0)
e_values = np.arange(0.0, 2.0 + 1e-9, 0.25)
t_grid = np.arange(0.0, 8.0 + 1e-9, 0.05)

points = scan_phase_diagram(base, e_values, t_grid)

print(f"{'e/m':>5}  {'nu moves at':>12}  {'rate peak at':>13}  {'nu ends':>8}")
for pt in points:
    if pt.error is not None:
        print(f"{pt.e:5.2f}  failed: {pt.error}")
        continue
    t_nu = first_transition_time(pt.data.t_grid, pt.data.nu)
    t_pk = first_maximum_time(pt.data.t_grid, pt.data.rate)
    nu_end = int(pt.data.nu[-1])
    t_nu = f"{t_nu:12.2f}" if t_nu is not None else f"{'none':>12}"
    t_pk = f"{t_pk:13.2f}" if t_pk is not None else f"{'none':>13}"
    print(f"{pt.e:5.2f}  {t_nu}  {t_pk}  {nu_end:8d}")

_, t_c = critical_times_lattice(base)
print(f"\nfree-chain first critical time for comparison: {t_c[0]:.2f}")
