"""Sudden quenches of the topological mass angle in 1+1 dimensional QED.

The package has two legs that must agree where they overlap:

* a closed-form treatment of the zero-coupling limit, where the quench
  factorizes into independent two-level momentum modes
  (:mod:`thetaquench.free_theory`), and
* exact diagonalization of the staggered-fermion lattice theory at finite
  coupling (:mod:`thetaquench.lattice`, :mod:`thetaquench.observables`).

Both produce a complex amplitude field over momentum and time whose phase
winding defines an integer order parameter (:mod:`thetaquench.topology`).
"""

__version__ = "0.1.0"

from .free_theory import (
    FreeParams,
    BlochMode,
    CriticalSet,
    QuadratureSettings,
    bloch_mode,
    mode_amplitude,
    critical_points,
    rate_function_free,
    phase_field_free,
    wrap_angle,
)
from .topology import (
    PhaseField,
    WindingResult,
    Vortex,
    principal_diff,
    path_winding,
    nu_invariant,
    nu_series,
    vortex_chart,
)
from .lattice import (
    LatticeParams,
    FockBasis,
    build_basis,
    electric_field,
    build_hamiltonian,
    ground_state,
    evolve,
)
from .observables import (
    QuenchData,
    loschmidt_lattice,
    two_time_g,
    equal_time_F,
    lattice_phase_field,
    run_quench,
    scan_phase_diagram,
)
from .config import RunConfig, build_config, parse_kv_file
from .tables import read_manifest, read_table, write_manifest, write_table
