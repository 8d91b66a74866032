import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quasibound import (
    LatticeParams,
    SingularAtBandEdge,
    assemble,
    solve,
    spectrum_oracle,
)
from quasibound.transfer import spectrum_on_grid

from reference import single_impurity_t


@pytest.mark.parametrize("n, j, dim", [(1, 3, 4), (22, 3, 88), (5, 2, 16), (3, 7, 20)])
def test_dimension(n, j, dim):
    system = assemble(LatticeParams(n_imp=n, j=j), 1.1)
    assert system.dimension == dim == (n - 1) * j + n + 3
    assert system.matrix.shape == (dim, dim)


def test_assemble_rejects_band_edge(ref_params):
    with pytest.raises(SingularAtBandEdge):
        assemble(ref_params, 0.0)


def test_assembled_system_nonsingular(ref_params):
    system = assemble(ref_params, 1.0)
    assert np.linalg.cond(system.matrix) < 1e12
    pt = solve(system)
    assert pt.status == "ok"


def test_left_lead_row_is_continuity(ref_params):
    # the m = -1 row reduces to a (x_0 - 1 - beta) = 0
    system = assemble(ref_params, 0.8)
    row = system.matrix[0]
    assert row[0] == pytest.approx(-ref_params.a, abs=1e-14)
    assert row[1] == pytest.approx(ref_params.a, abs=1e-14)
    assert np.count_nonzero(np.abs(row) > 1e-14) == 2
    assert system.rhs[0] == pytest.approx(ref_params.a, abs=1e-14)


def test_no_coupling_transmits():
    for k in (0.3, 1.2, 2.9, -0.4):
        assert solve(assemble(LatticeParams(g=0.0), k)).t_prob == pytest.approx(1.0, abs=1e-13)


def test_inside_dip(ref_params, k_res):
    pt = solve(assemble(ref_params, k_res + 0.001))
    assert pt.t_prob < 1e-6
    # regression value from this oracle (transfer engine agrees to 1e-12 relative)
    assert pt.t_prob == pytest.approx(1.8671692776933e-17, rel=1e-9)


def test_flux_at_2_5(ref_params):
    pt = solve(assemble(ref_params, 2.5))
    assert abs(pt.t_prob + pt.r_prob - 1) < 1e-12


def test_exact_resonance_limit(ref_params, k_res):
    pt = solve(assemble(ref_params, k_res))
    assert pt.phi == 0 and abs(pt.beta) == 1 and pt.status == "resonance"


@pytest.mark.parametrize("n", [1, 5, 22])
def test_matches_transfer_engine(ref_params, n):
    p = ref_params.with_(n_imp=n)
    ks = np.linspace(-math.pi, math.pi, 401)
    orc = spectrum_oracle(p, ks)
    tm = spectrum_on_grid(p, ks)
    np.testing.assert_array_equal(orc.k, tm.k)
    assert np.max(np.abs(orc.t_prob - tm.t_prob)) < 1e-8
    ok = orc.status == "ok"
    rel_phi = np.abs(orc.phi - tm.phi)[ok] / np.abs(tm.phi)[ok]
    rel_beta = np.abs(orc.beta - tm.beta)[ok] / np.maximum(np.abs(tm.beta)[ok], 1e-300)
    beta_nonzero = np.abs(tm.beta)[ok] > 0
    assert rel_phi.max() < 1e-8
    assert rel_beta[beta_nonzero].max() < 1e-8
    assert orc.flux_error.max() < 1e-10


def test_single_impurity_oracle():
    p = LatticeParams(n_imp=1, f=-1.0)
    ks = np.linspace(0.05, 3.1, 41)
    spec = spectrum_oracle(p, ks)
    expected = np.array([single_impurity_t(k, p) for k in ks])
    np.testing.assert_allclose(spec.t_prob, expected, rtol=1e-12)


def test_no_coupling_spectrum_flat():
    spec = spectrum_oracle(LatticeParams(g=0.0), np.linspace(-3, 3, 61))
    np.testing.assert_allclose(spec.t_prob, 1.0, atol=1e-13)


def test_parity(ref_params):
    ks = np.linspace(0.02, 3.12, 157)
    right = spectrum_oracle(ref_params, ks)
    left = spectrum_oracle(ref_params, -ks[::-1])
    np.testing.assert_allclose(np.abs(right.phi), np.abs(left.phi[::-1]), atol=1e-10, rtol=0)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 12), st.integers(2, 6), st.floats(0.05, 1.5), st.floats(0.05, 3.09),
)
def test_emergent_flux_and_dimension(n, j, g, kb):
    p = LatticeParams(n_imp=n, j=j, g=g)
    system = assemble(p, kb)
    assert system.dimension == (n - 1) * j + n + 3
    pt = solve(system)
    assert abs(pt.t_prob + pt.r_prob - 1) < 1e-10


def test_sweep_and_oracle_agree_with_off_resonant_f():
    p = LatticeParams(f=-0.4, n_imp=6)
    ks = np.linspace(0.05, 3.0, 60)
    np.testing.assert_allclose(spectrum_oracle(p, ks).phi, spectrum_on_grid(p, ks).phi, atol=1e-10)
