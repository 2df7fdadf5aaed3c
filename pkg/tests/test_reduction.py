import math

import numpy as np
import pytest

from arrow3 import EPS, ArrowMat3, SymMat3, jacobi_rotation, oracle_eig3, reduce_to_arrow
from conftest import random_symmat


def rotated(rot, a11, a12, a22):
    R = rot.matrix()
    return R @ np.array([[a11, a12], [a12, a22]]) @ R.T


@pytest.mark.parametrize("a11, a12, a22, d1, d2", [
    (5.0, 0.0, 2.0, 5.0, 2.0),
    (0.0, 1.0, 0.0, 1.0, -1.0),
    (1.0, 2.0, 1.0, 3.0, -1.0),
])
def test_jacobi_rotation_examples(a11, a12, a22, d1, d2):
    rot, e1, e2 = jacobi_rotation(a11, a12, a22)
    assert (e1, e2) == pytest.approx((d1, d2), abs=4 * EPS)
    D = rotated(rot, a11, a12, a22)
    assert abs(D[0, 1]) <= 4 * EPS * max(abs(a11), abs(a12), abs(a22))
    assert np.diag(D) == pytest.approx([d1, d2], abs=4 * EPS)


def test_jacobi_identity_and_45_degrees():
    rot, _, _ = jacobi_rotation(5.0, 0.0, 2.0)
    assert (rot.c, rot.s) == (1.0, 0.0)
    rot, _, _ = jacobi_rotation(0.0, 1.0, 0.0)
    assert abs(rot.c) == pytest.approx(math.sqrt(0.5)) and abs(rot.s) == pytest.approx(math.sqrt(0.5))


def test_jacobi_swaps_misordered_diagonal():
    rot, d1, d2 = jacobi_rotation(1.0, 0.0, 2.0)
    assert (d1, d2) == (2.0, 1.0)
    assert np.allclose(rotated(rot, 1.0, 0.0, 2.0), np.diag([2.0, 1.0]))


def test_jacobi_random(rng):
    for a11, a12, a22 in rng.standard_normal((5000, 3)) * rng.lognormal(0, 3, (5000, 1)):
        rot, d1, d2 = jacobi_rotation(a11, a12, a22)
        scale = max(abs(a11), abs(a12), abs(a22))
        assert d1 >= d2
        assert abs(rot.c ** 2 + rot.s ** 2 - 1) <= 4 * EPS
        D = rotated(rot, a11, a12, a22)
        assert abs(D[0, 1]) <= 4 * EPS * scale
        assert abs(D[0, 0] - d1) <= 4 * EPS * scale and abs(D[1, 1] - d2) <= 4 * EPS * scale


def test_jacobi_extreme_ratio():
    rot, d1, d2 = jacobi_rotation(1e300, 1e-300, -1e300)
    assert math.isfinite(rot.c) and math.isfinite(rot.s)
    assert (d1, d2) == (1e300, -1e300)


def test_reduce_diag_123():
    A, rot = reduce_to_arrow(SymMat3.diag(1.0, 2.0, 3.0))
    assert A == ArrowMat3(2.0, 1.0, 0.0, 0.0, 3.0)
    Q = rot.embed()
    assert np.allclose(np.abs(Q), [[0, 1, 0], [1, 0, 0], [0, 0, 1]])


def test_reduce_principal_block_pm1():
    A, _ = reduce_to_arrow(SymMat3(0.0, 1.0, 0.0, 0.0, 0.0, 5.0))
    assert (A.alpha1, A.alpha2, A.gamma) == pytest.approx((1.0, -1.0, 5.0))
    assert (A.beta1, A.beta2) == (0.0, 0.0)


def test_reduce_random_reconstruction(rng):
    for S in random_symmat(rng, 2000):
        A, rot = reduce_to_arrow(S)
        Q = rot.embed()
        nS = S.frob()
        assert np.abs(Q @ S.to_array() @ Q.T - A.to_array()).max() <= 16 * EPS * nS
        assert A.alpha1 >= A.alpha2
        assert A.gamma == S.a33
        assert A.beta1 == rot.c * S.a13 + rot.s * S.a23
        assert A.beta2 == -rot.s * S.a13 + rot.c * S.a23


def test_reduce_invariants_1e5(rng):
    worst_q = worst_off = 0.0
    for a in rng.standard_normal((100_000, 6)):
        S = SymMat3(*a.tolist())
        A, rot = reduce_to_arrow(S)
        assert A.alpha1 >= A.alpha2
        c, s = rot.c, rot.s
        worst_q = max(worst_q, abs(c * c + s * s - 1.0))
        # (1,2) entry of Q S Q^T
        off = c * s * (S.a22 - S.a11) + (c * c - s * s) * S.a12
        worst_off = max(worst_off, abs(off) / S.frob())
    # ||Q^T Q - I||_F = sqrt(2) |c^2 + s^2 - 1| for an embedded plane rotation
    assert math.sqrt(2) * worst_q <= 8 * EPS
    assert worst_off <= 8 * EPS


def test_arrow_spectrum_matches_original(rng):
    for S in random_symmat(rng, 500):
        A, _ = reduce_to_arrow(S)
        lo = oracle_eig3(S).lam
        la = oracle_eig3(A.to_symmat()).lam
        assert np.max(np.abs(np.subtract(lo, la))) <= 32 * EPS * S.frob()


def test_arrow_rejects_unordered():
    with pytest.raises(ValueError):
        ArrowMat3(0.0, 1.0, 1.0, 1.0, 0.0)
