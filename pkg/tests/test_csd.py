import json

import numpy as np
import pytest
from scipy.linalg import cossin

from qwcentrality.appendix import FIT_BUDGET, UNITARITY_BUDGET, appendix_factors, verify_appendix_factors
from qwcentrality.csd import (
    CsdFactorization,
    cs_matrix,
    csd,
    csd_4x4,
    csd_recursive,
    haar_unitary,
    phase_aligned_distance,
    to_two_qubit_form,
    unitarity_residual,
)
from qwcentrality.ctqw import star_propagator_closed_form
from qwcentrality.errors import NonUnitaryError

DT = 9 / 40


def _check_factor_shapes(f: CsdFactorization):
    for block in (f.L, f.L_prime, f.R, f.R_prime):
        assert unitarity_residual(block) <= 1e-10
    assert np.all((f.thetas >= 0) & (f.thetas <= np.pi / 2 + 1e-15))
    assert np.all(np.diff(f.thetas) <= 1e-15)


def test_haar_reconstruction(rng):
    worst = 0.0
    for _ in range(1000):
        U = haar_unitary(4, rng)
        f = csd_4x4(U)
        _check_factor_shapes(f)
        worst = max(worst, f.residual(U))
    assert worst <= 1e-9


def test_angles_match_scipy_cossin(rng):
    for d in (4, 8):
        for _ in range(50):
            U = haar_unitary(d, rng)
            _, cs, _ = cossin(U, p=d // 2, q=d // 2)
            h = d // 2
            ref = np.sort(np.arccos(np.clip(np.diag(cs[:h, :h]).real, -1, 1)))
            np.testing.assert_allclose(np.sort(csd(U).thetas), ref, atol=1e-8)


def test_identity_has_zero_angles():
    f = csd_4x4(np.eye(4))
    np.testing.assert_array_equal(f.thetas, [0.0, 0.0])
    assert f.residual(np.eye(4)) <= 1e-12


def test_pure_cs_rotation():
    S = cs_matrix([0.7, 0.0])
    f = csd_4x4(S)
    np.testing.assert_allclose(f.thetas, [0.7, 0.0], atol=1e-12)
    assert f.residual(S) <= 1e-12


def test_degenerate_angles():
    for thetas in ([np.pi / 2, np.pi / 2], [np.pi / 2, 0.0], [0.3, 0.3]):
        U = cs_matrix(thetas)
        f = csd_4x4(U)
        np.testing.assert_allclose(np.sort(f.thetas), np.sort(thetas), atol=1e-12)
        assert f.residual(U) <= 1e-12


def test_star_propagators_have_single_angle():
    for k in range(1, 9):
        U = star_propagator_closed_form(k * DT)
        f = csd_4x4(U)
        assert f.residual(U) <= 1e-9
        assert f.thetas[1] <= 1e-8


def test_recursive_eight_and_sixteen(rng):
    for d in (8, 16):
        for _ in range(20):
            U = haar_unitary(d, rng)
            node = csd_recursive(U)
            assert np.linalg.norm(node.reconstruct() - U) <= 1e-9
            assert all(b.shape == (2, 2) for b in node.leaves())
    node = csd_recursive(np.eye(8))
    np.testing.assert_allclose(node.reconstruct(), np.eye(8), atol=1e-12)
    np.testing.assert_allclose(node.all_thetas(), 0.0, atol=1e-12)


def test_recursive_on_4x4_is_single_level(rng):
    U = haar_unitary(4, rng)
    node = csd_recursive(U)
    assert not node.children
    np.testing.assert_array_equal(node.factorization.thetas, csd(U).thetas)


def test_two_qubit_form(rng):
    for U in [haar_unitary(4, rng) for _ in range(50)] + [star_propagator_closed_form(k * DT) for k in range(1, 9)]:
        f = csd_4x4(U)
        form = to_two_qubit_form(f)
        assert np.linalg.norm(form.reconstruct() - U) <= 1e-12 + f.residual(U)
        np.testing.assert_allclose(form.middle, f.middle, atol=1e-15)


def test_star_two_qubit_form_has_trivial_second_rotation():
    form = to_two_qubit_form(csd_4x4(star_propagator_closed_form(3 * DT)))
    np.testing.assert_allclose(form.S_other, np.eye(2), atol=1e-8)


def test_gauge_freedom_preserves_angles(rng):
    # diag(L, L') S diag(R, R') is unchanged by a diagonal phase moved from L to R
    U = haar_unitary(4, rng)
    f = csd(U)
    D = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 2)))
    V = np.kron(np.eye(2), D) @ U @ np.kron(np.eye(2), D.conj())
    np.testing.assert_allclose(csd(V).thetas, f.thetas, atol=1e-10)


def test_errors():
    with pytest.raises(NonUnitaryError) as exc:
        csd(np.diag([1.0, 1.0, 1.0, 1.1]))
    assert exc.value.residual > 0.1
    with pytest.raises(ValueError):
        csd(np.eye(3))
    with pytest.raises(ValueError):
        csd_recursive(np.eye(6))
    with pytest.raises(ValueError):
        csd_4x4(np.eye(8))


def test_json_round_trip(rng):
    U = haar_unitary(4, rng)
    f = csd(U)
    g = CsdFactorization.from_dict(json.loads(f.to_json()))
    np.testing.assert_array_equal(g.reconstruct(), f.reconstruct())
    assert g.residual(U) == f.residual(U)
    assert "theta=" in f.circuit_listing()


def test_phase_aligned_distance(rng):
    U = haar_unitary(4, rng)
    assert phase_aligned_distance(np.exp(1.3j) * U, U) <= 1e-12
    assert phase_aligned_distance(-U, U) <= 1e-12
    assert phase_aligned_distance(U, np.eye(4)) > 0


@pytest.mark.parametrize("k", range(1, 9))
def test_appendix_fixtures(k):
    rec = verify_appendix_factors(k)
    assert max(rec.unitarity.values()) <= UNITARITY_BUDGET
    assert rec.residual <= FIT_BUDGET
    assert abs(rec.theta - rec.computed_theta) <= 1e-3
    assert rec.passed
    assert set(appendix_factors(k)) >= {"L", "L'", "R", "R'"}


def test_appendix_rejects_bad_index():
    with pytest.raises(ValueError):
        verify_appendix_factors(9)
