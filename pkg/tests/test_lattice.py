import numpy as np
import pytest
import scipy.sparse as sparse

import thetaquench.lattice as lattice
from thetaquench.free_lattice import single_particle_hamiltonian
from thetaquench.lattice import (
    DegenerateGroundStateWarning,
    Evolver,
    EvolutionError,
    FockBasis,
    LatticeParams,
    annihilation_map,
    build_basis,
    build_hamiltonian,
    electric_field,
    evolve,
    ground_state,
    occupations,
    staggered_charges,
)


def test_params_validation():
    LatticeParams(n_sites=4, a=0.8)
    with pytest.raises(ValueError, match="even"):
        LatticeParams(n_sites=5, a=0.8)
    with pytest.raises(ValueError, match="at least 4"):
        LatticeParams(n_sites=2, a=0.8)
    with pytest.raises(ValueError, match="spacing"):
        LatticeParams(n_sites=4, a=0.0)
    with pytest.raises(ValueError, match="mass"):
        LatticeParams(n_sites=4, a=0.8, m=-1.0)
    with pytest.raises(ValueError, match="coupling"):
        LatticeParams(n_sites=4, a=0.8, e=-0.1)
    assert LatticeParams(n_sites=6, a=0.5).volume == pytest.approx(3.0)


def test_basis_dimensions():
    assert build_basis(8, charge=0).dim == 70
    assert build_basis(4, charge=0).dim == 6
    assert build_basis(8, charge=-1).dim == 56
    assert build_basis(4, charge=-2).dim == 1
    with pytest.raises(ValueError, match="empty"):
        build_basis(4, charge=3)


def test_basis_states_sorted_and_indexed():
    basis = build_basis(6, charge=0)
    states = basis.states
    assert np.all(np.diff(states.astype(np.int64)) > 0)
    for i, word in enumerate(states):
        assert basis.index[int(word)] == i
        assert occupations(int(word), 6).sum() == 3


def test_staggered_charges_vacuum_is_neutral():
    # Odd sites filled is the charge-neutral staggered vacuum.
    vacuum = sum(1 << n for n in range(1, 8, 2))
    assert np.all(staggered_charges(vacuum, 8) == 0)
    # A particle on an even site carries +1, a hole on an odd site +1 too.
    assert staggered_charges(vacuum | 1, 8)[0] == 1
    assert staggered_charges(vacuum ^ 2, 8)[1] == -1


def test_electric_field_example():
    p = LatticeParams(n_sites=4, a=1.0, e=2.0)
    field = electric_field(0b1001, p)
    assert np.allclose(field, 2.0 * np.array([0.75, -0.25, -0.25, -0.25]))
    assert field.sum() == pytest.approx(0.0, abs=1e-14)


def test_electric_field_probe_equals_extra_fermion():
    """An external probe charge at n produces the same field as a fermion
    placed there, link for link."""
    p = LatticeParams(n_sites=6, a=0.7, e=1.3)
    rng = np.random.default_rng(5)
    for _ in range(20):
        word = int(rng.integers(0, 1 << 6))
        site = int(rng.integers(0, 6))
        if word & (1 << site):
            word ^= 1 << site
        with_probe = electric_field(word, p, probe_site=site)
        with_fermion = electric_field(word | (1 << site), p)
        assert np.array_equal(with_probe, with_fermion)
        assert with_probe.sum() == pytest.approx(0.0, abs=1e-13)


def test_probe_off_reduces_to_plain_field():
    p = LatticeParams(n_sites=4, a=0.8, e=0.9)
    for word in range(16):
        assert np.array_equal(electric_field(word, p),
                              electric_field(word, p, probe_site=None))


def test_hamiltonian_is_hermitian():
    p = LatticeParams(n_sites=6, a=0.8, e=1.1)
    for charge, probe in [(0, None), (-1, 2), (-1, None)]:
        basis = build_basis(6, charge=charge)
        h = build_hamiltonian(basis, p, mass_sign=1, probe_site=probe)
        assert abs(h - h.getH()).max() < 1e-14


def test_mass_sign_equivalence_holds_only_without_coupling():
    """At e = 0 a chiral rotation relates +-m and the spectra coincide.
    Gauging breaks that rotation (the flip becomes a topological-angle
    shift), so at e > 0 the two signs are physically distinct."""
    basis = build_basis(6, charge=0)
    free = LatticeParams(n_sites=6, a=0.8, e=0.0)
    plus = np.linalg.eigvalsh(build_hamiltonian(basis, free, 1).toarray())
    minus = np.linalg.eigvalsh(build_hamiltonian(basis, free, -1).toarray())
    assert np.allclose(plus, minus, atol=1e-10)

    coupled = LatticeParams(n_sites=6, a=0.8, e=0.7)
    plus = np.linalg.eigvalsh(build_hamiltonian(basis, coupled, 1).toarray())
    minus = np.linalg.eigvalsh(
        build_hamiltonian(basis, coupled, -1).toarray())
    assert np.abs(plus - minus).max() > 0.1


def test_free_ground_energy_matches_filled_band():
    p = LatticeParams(n_sites=8, a=0.8, e=0.0)
    basis = build_basis(8, charge=0)
    energy, _ = ground_state(build_hamiltonian(basis, p, mass_sign=1))
    single = np.linalg.eigvalsh(single_particle_hamiltonian(p, 1))
    assert energy == pytest.approx(single[:4].sum(), abs=1e-10)


def _jw_chain(p: LatticeParams, mass_sign: int) -> np.ndarray:
    """Dense Jordan-Wigner construction on the full 2^N space.

    Independent of the sector builder: explicit Pauli strings, no bitmask
    sign bookkeeping shared with the implementation under test.
    """
    n = p.n_sites
    eye = np.eye(2)
    sz = np.diag([1.0, -1.0])
    sminus = np.array([[0.0, 0.0], [1.0, 0.0]])

    def op_at(op, site):
        mats = [sz] * site + [op] + [eye] * (n - site - 1)
        out = mats[0]
        for mat in mats[1:]:
            out = np.kron(out, mat)
        return out

    # Site convention: bit n of the Fock word is qubit n; kron order puts
    # site 0 leftmost, matching (state >> n) & 1 indexing via reversal.
    def annihilate(site):
        return op_at(sminus, site)

    c = [annihilate(s) for s in range(n)]
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    for site in range(n):
        nxt = (site + 1) % n
        h += -0.5j / p.a * (c[site].conj().T @ c[nxt]
                            - c[nxt].conj().T @ c[site])
    number = [ci.conj().T @ ci for ci in c]
    for site in range(n):
        h += mass_sign * p.m * (-1.0) ** site * number[site]
    # Electric term: E_link = e * (cumulative staggered charge - mean).
    rho = [number[s] - (0.5 - 0.5 * (-1.0) ** s) * np.eye(dim)
           for s in range(n)]
    cums = []
    acc = np.zeros((dim, dim), dtype=complex)
    for s in range(n):
        acc = acc + rho[s]
        cums.append(acc.copy())
    mean = sum(cums) / n
    for s in range(n):
        link = p.e * (cums[s] - mean)
        h += 0.5 * p.a * link @ link
    return h


def _sector_indices(basis: FockBasis, jw_dim: int) -> np.ndarray:
    """Positions of the sector's Fock words inside the 2^N JW space."""
    n = basis.n_sites
    # JW qubit 0 is the leftmost kron factor; Fock bit n indexes site n.
    return np.array([
        sum(((int(w) >> site) & 1) << (n - 1 - site) for site in range(n))
        for w in basis.states
    ])


@pytest.mark.parametrize("e", [0.0, 1.7])
def test_sector_hamiltonian_matches_jordan_wigner(e):
    p = LatticeParams(n_sites=4, a=0.8, e=e)
    full = _jw_chain(p, mass_sign=1)
    basis = build_basis(4, charge=0)
    idx = _sector_indices(basis, full.shape[0])
    block = full[np.ix_(idx, idx)]
    mine = build_hamiltonian(basis, p, mass_sign=1).toarray()
    sector_evals = np.linalg.eigvalsh(mine)
    block_evals = np.linalg.eigvalsh(block)
    assert np.allclose(sector_evals, block_evals, atol=1e-10)


def test_annihilation_map_anticommutes():
    n = 6
    q0 = build_basis(n, 0)
    q1 = build_basis(n, -1)
    q2 = build_basis(n, -2)
    a2 = annihilation_map(q0, q1, 2)
    a4 = annihilation_map(q0, q1, 4)
    b2 = annihilation_map(q1, q2, 2)
    b4 = annihilation_map(q1, q2, 4)
    anti = (b2 @ a4 + b4 @ a2)
    assert abs(anti).max() == 0.0
    # number operator: phi^dag phi is diagonal occupancy.
    num = (a2.getH() @ a2).toarray()
    occ = np.array([occupations(int(w), n)[2] for w in q0.states])
    assert np.allclose(num, np.diag(occ))
    with pytest.raises(ValueError, match="fewer"):
        annihilation_map(q0, q2, 0)


def test_ground_state_dense_vs_krylov(monkeypatch):
    p = LatticeParams(n_sites=8, a=0.8, e=1.0)
    basis = build_basis(8, charge=0)
    h = build_hamiltonian(basis, p, mass_sign=-1)
    e_dense, v_dense = ground_state(h)
    monkeypatch.setattr(lattice, "DENSE_DIM_LIMIT", 1)
    e_krylov, v_krylov = ground_state(h)
    assert e_krylov == pytest.approx(e_dense, abs=1e-9)
    overlap = abs(np.vdot(v_dense, v_krylov))
    assert overlap == pytest.approx(1.0, abs=1e-9)


def test_degenerate_ground_state_warns():
    h = sparse.diags([1.0, 1.0, 2.0]).tocsr()
    with pytest.warns(DegenerateGroundStateWarning):
        ground_state(h)


def test_evolver_unitarity_and_krylov_agreement(monkeypatch):
    p = LatticeParams(n_sites=6, a=0.8, e=0.9)
    basis = build_basis(6, charge=0)
    h = build_hamiltonian(basis, p, mass_sign=1)
    rng = np.random.default_rng(9)
    state = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
    state /= np.linalg.norm(state)
    dense = Evolver(h).apply(state, 2.3)
    assert np.linalg.norm(dense) == pytest.approx(1.0, abs=1e-12)
    monkeypatch.setattr(lattice, "DENSE_DIM_LIMIT", 1)
    krylov = Evolver(h).apply(state, 2.3)
    assert np.allclose(dense, krylov, atol=1e-9)
    assert np.allclose(evolve(h, state, 2.3), dense, atol=1e-12)


def test_evolver_matrix_apply_matches_columnwise():
    p = LatticeParams(n_sites=4, a=0.8, e=1.2)
    basis = build_basis(4, charge=0)
    h = build_hamiltonian(basis, p, mass_sign=1)
    rng = np.random.default_rng(17)
    block = rng.normal(size=(basis.dim, 3)) + 1j * rng.normal(
        size=(basis.dim, 3))
    ev = Evolver(h)
    together = ev.apply(block, 1.7)
    for j in range(3):
        assert np.allclose(together[:, j], ev.apply(block[:, j], 1.7),
                           atol=1e-12)


def test_evolver_rejects_norm_drift(monkeypatch):
    monkeypatch.setattr(lattice, "DENSE_DIM_LIMIT", 1)
    bad = sparse.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]],
                                     dtype=complex))
    with pytest.raises(EvolutionError, match="drifted"):
        Evolver(bad).apply(np.array([1.0, 1.0]) / np.sqrt(2), 5.0)
