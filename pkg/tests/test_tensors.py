"""Dense two- and three-leg tensor algebra over End(C^n)."""

import numpy as np
import pytest

from aybe.tensors import MatrixTensor2, MatrixTensor3, from_pair, identity2, matrix_unit


def random_tensor(rng, n):
    data = rng.normal(size=(n,) * 4) + 1j * rng.normal(size=(n,) * 4)
    return MatrixTensor2(data)


def test_from_pair_entries(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    t = from_pair(a, b)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    assert t.coeffs[i, j, k, l] == pytest.approx(a[i, j] * b[k, l])


def test_linear_ops(rng):
    x = random_tensor(rng, 2)
    y = random_tensor(rng, 2)
    assert np.allclose((x + y).coeffs, x.coeffs + y.coeffs)
    assert np.allclose((x - y).coeffs, x.coeffs - y.coeffs)
    assert np.allclose((2.5j * x).coeffs, 2.5j * x.coeffs)
    assert np.allclose((-x).coeffs, -x.coeffs)


def test_mul_is_factorwise(rng):
    a1, b1, a2, b2 = (
        rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(4)
    )
    left = from_pair(a1, b1)
    right = from_pair(a2, b2)
    prod = left.mul(right)
    assert np.allclose(prod.coeffs, from_pair(a1 @ a2, b1 @ b2).coeffs)


def test_swap_legs(rng):
    a, b = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(2))
    assert np.allclose(from_pair(a, b).swap_legs().coeffs, from_pair(b, a).coeffs)
    x = random_tensor(rng, 3)
    assert np.allclose(x.swap_legs().swap_legs().coeffs, x.coeffs)


def test_identity2_neutral_under_mul(rng):
    x = random_tensor(rng, 2)
    eye = identity2(2)
    assert np.allclose(eye.mul(x).coeffs, x.coeffs)
    assert np.allclose(x.mul(eye).coeffs, x.coeffs)


def test_conjugate_legs_inverts(rng):
    x = random_tensor(rng, 2)
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    back = x.conjugate_legs(g, g).conjugate_legs(np.linalg.inv(g), np.linalg.inv(g))
    assert np.max(np.abs(back.coeffs - x.coeffs)) < 1e-12


def test_embed_products_respect_leg_structure(rng):
    # r12 * s13 acts as (a1*a2) (x) b1 (x) b2 on pure tensors.
    a1, b1, a2, b2 = (
        rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4)
    )
    r = from_pair(a1, b1)
    s = from_pair(a2, b2)
    prod = r.embed("12").mul(s.embed("13"))
    expected = np.einsum("ij,kl,mn->ijklmn", a1 @ a2, b1, b2)
    assert np.max(np.abs(prod.coeffs - expected)) < 1e-12

    prod23 = r.embed("13").mul(s.embed("23"))
    expected23 = np.einsum("ij,kl,mn->ijklmn", a1, a2, b1 @ b2)
    assert np.max(np.abs(prod23.coeffs - expected23)) < 1e-12


def test_embed_rejects_bad_legs(rng):
    with pytest.raises(ValueError):
        random_tensor(rng, 2).embed("21")


def test_as_map_action(rng):
    # The induced map is M -> sum tr(A M) B for r = A (x) B.
    a, b = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(2))
    mat = from_pair(a, b).as_map()
    x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    out = (mat @ x.reshape(-1)).reshape(2, 2)
    assert np.max(np.abs(out - np.trace(a @ x) * b)) < 1e-12


def test_rank_as_map():
    ones = np.ones((2, 2))
    assert from_pair(ones, ones).rank_as_map() == 1
    # 1 (x) 1 induces M -> tr(M)*1, still rank one ...
    assert identity2(2).rank_as_map() == 1
    # ... while the Casimir sum e_ij (x) e_ji induces the identity map.
    for n in (2, 3):
        casimir = MatrixTensor2.zeros(n)
        for i in range(n):
            for j in range(n):
                casimir = casimir + from_pair(matrix_unit(n, i, j), matrix_unit(n, j, i))
        assert casimir.rank_as_map() == n * n
    assert MatrixTensor2.zeros(2).rank_as_map() == 0


def test_rank_counts_independent_terms():
    e01 = matrix_unit(2, 0, 1)
    e10 = matrix_unit(2, 1, 0)
    t = from_pair(e01, e01) + from_pair(e10, e10)
    assert t.rank_as_map() == 2


def test_project_sl_kills_identity_legs(rng):
    x = random_tensor(rng, 2)
    p = x.project_sl()
    # both partial traces vanish after projection
    assert np.max(np.abs(np.einsum("iikl->kl", p.coeffs))) < 1e-13
    assert np.max(np.abs(np.einsum("ijkk->ij", p.coeffs))) < 1e-13
    # idempotent
    assert np.max(np.abs(p.project_sl().coeffs - p.coeffs)) < 1e-13


def test_norms(rng):
    x = random_tensor(rng, 2)
    assert x.max_abs() == pytest.approx(np.max(np.abs(x.coeffs)))
    assert x.frobenius() == pytest.approx(np.linalg.norm(x.coeffs))


def test_serialization_roundtrip(rng):
    x = random_tensor(rng, 3)
    back = MatrixTensor2.from_json(x.to_json())
    assert np.max(np.abs(back.coeffs - x.coeffs)) < 1e-15
    with pytest.raises(ValueError):
        MatrixTensor2.from_dict({"n": 2, "legs": 3, "coeffs": []})


def test_three_leg_shapes(rng):
    x = random_tensor(rng, 2).embed("12")
    assert isinstance(x, MatrixTensor3)
    assert x.coeffs.shape == (2,) * 6
    assert x.max_abs() >= 0.0
