import numpy as np
import pytest

from hyperconvex.algebra import builtin_algebra, tensor_from_triples, validate_algebra
from hyperconvex.errors import AsymmetricInput, DimensionMismatch, DimensionTooLarge, InconsistentBold, InvalidGamma
from hyperconvex.gamma import (
    GammaFrame,
    bold_components,
    bold_vector,
    default_gamma,
    formal_gradient,
    formal_hessian,
    hadamard_gamma,
    hadamard_matrix,
    linear_form_value,
    parse_gamma,
    quadratic_form_value,
    random_gamma,
    reconstruct_real,
    vandermonde_gamma,
)


def frames_for(m, rng):
    out = [default_gamma(m), vandermonde_gamma(m), random_gamma(m, rng)]
    return out


def test_hadamard_small_cases():
    np.testing.assert_array_equal(hadamard_gamma(1).matrix, [[1, 1], [1, -1]])
    g1 = hadamard_matrix(1)
    np.testing.assert_array_equal(hadamard_gamma(2).matrix, np.block([[g1, g1], [g1, -g1]]))
    np.testing.assert_array_equal(hadamard_gamma(3).matrix @ hadamard_gamma(3).matrix, 8 * np.eye(8))
    np.testing.assert_array_equal(hadamard_gamma(3).eta, hadamard_gamma(3).matrix / 8)
    with pytest.raises(DimensionTooLarge):
        hadamard_gamma(7)


@pytest.mark.parametrize("k", range(6))
def test_hadamard_involution_integer(k):
    h = hadamard_matrix(k)
    assert h.dtype.kind == "i"
    assert np.array_equal(h @ h, (2**k) * np.eye(2**k, dtype=np.int64))
    assert np.all(h[0] == 1)


def test_default_gamma_branches():
    np.testing.assert_array_equal(default_gamma(2).matrix, hadamard_gamma(1).matrix)
    np.testing.assert_array_equal(default_gamma(3).matrix, [[1, 1, 1], [1, 2, 3], [1, 4, 9]])
    np.testing.assert_array_equal(default_gamma(4).matrix, hadamard_gamma(2).matrix)
    np.testing.assert_array_equal(default_gamma(1).matrix, [[1]])
    with pytest.raises(DimensionTooLarge):
        default_gamma(65)


def test_frame_validation():
    with pytest.raises(InvalidGamma):
        GammaFrame.from_matrix([[1, 2], [1, 1]])
    with pytest.raises(InvalidGamma):
        GammaFrame.from_matrix([[1, 1], [2, 2]])
    frame = GammaFrame.from_matrix([[1, 1], [0, 3]])
    np.testing.assert_allclose(frame.matrix @ frame.eta, np.eye(2), atol=1e-12)
    with pytest.raises(InvalidGamma):
        parse_gamma("hadamard", 3)
    assert parse_gamma([[1, 1], [1, -1]], 2).m == 2
    with pytest.raises(DimensionMismatch):
        parse_gamma([[1, 1], [1, -1]], 4)


def test_bold_components_complex_conjugate(algebras):
    alg = algebras["complex"]
    bold = bold_components(alg, hadamard_gamma(1), [0.7, -2.5])
    np.testing.assert_array_equal(bold[0], [0.7, -2.5])
    np.testing.assert_array_equal(bold[1], [0.7, 2.5])


def test_bold_components_trivial(algebras, rng):
    alg = algebras["bicomplex"]
    for frame in frames_for(4, rng):
        bold = bold_components(alg, frame, alg.one())
        np.testing.assert_array_equal(bold, frame.matrix[:, :1] * np.eye(4)[0])
        np.testing.assert_array_equal(bold_components(alg, frame, np.zeros(4)), 0)
    with pytest.raises(DimensionMismatch):
        bold_components(alg, default_gamma(4), [1, 2])


def test_reconstruct_examples(algebras):
    alg = algebras["complex"]
    frame = hadamard_gamma(1)
    # bold = (z, conj z) with z = 3 + 4i; x = (z + zbar)/2, y = (z - zbar)/(2i)
    np.testing.assert_allclose(reconstruct_real(alg, frame, [[3, 4], [3, -4]]), [3, 4], atol=1e-15)
    np.testing.assert_array_equal(reconstruct_real(alg, frame, np.zeros((2, 2))), [0, 0])
    with pytest.raises(InconsistentBold):
        reconstruct_real(alg, frame, [[3, 4], [3, 4]])


@pytest.mark.parametrize("name", ["complex", "hyperbolic", "bicomplex"])
def test_round_trip(name, algebras, rng):
    alg = algebras[name]
    frames = frames_for(alg.m, rng)
    for _ in range(1000):
        frame = frames[rng.integers(len(frames))]
        z = rng.uniform(-5, 5, alg.m)
        bold = bold_components(alg, frame, z)
        np.testing.assert_array_equal(bold[0], z)
        np.testing.assert_allclose(reconstruct_real(alg, frame, bold), z, atol=1e-10)


def test_formal_gradient_wirtinger(algebras):
    alg = algebras["complex"]
    fg = formal_gradient(alg, hadamard_gamma(1), [2.0, 4.0])
    np.testing.assert_allclose(fg[0, 0], [1, -2], atol=1e-12)
    np.testing.assert_allclose(fg[0, 1], [1, 2], atol=1e-12)
    np.testing.assert_array_equal(formal_gradient(alg, hadamard_gamma(1), [0.0, 0.0]), 0)


def test_formal_gradient_real_line():
    reals = validate_algebra(tensor_from_triples(1, []))
    fg = formal_gradient(reals, default_gamma(1), [[3.5], [-1.0]])
    np.testing.assert_array_equal(fg[:, 0, 0], [3.5, -1.0])


def test_formal_hessian_wirtinger(algebras):
    alg = algebras["complex"]
    fh = formal_hessian(alg, hadamard_gamma(1), 2 * np.eye(2))
    np.testing.assert_allclose(fh[0, 0, 0, 0], [0, 0], atol=1e-15)  # d2/dz dz
    np.testing.assert_allclose(fh[0, 0, 0, 1], [1, 0], atol=1e-15)  # d2/dz dzbar
    np.testing.assert_allclose(fh[0, 1, 0, 1], [0, 0], atol=1e-15)
    np.testing.assert_array_equal(formal_hessian(alg, hadamard_gamma(1), np.zeros((2, 2))), 0)
    with pytest.raises(AsymmetricInput):
        formal_hessian(alg, hadamard_gamma(1), [[1, 2], [0, 1]])


@pytest.mark.parametrize("name", ["complex", "hyperbolic", "bicomplex"])
def test_formal_hessian_symmetry(name, algebras, rng):
    alg = algebras[name]
    n = 2
    a = rng.standard_normal((n * alg.m, n * alg.m))
    fh = formal_hessian(alg, random_gamma(alg.m, rng), a + a.T)
    np.testing.assert_allclose(fh, fh.transpose(2, 3, 0, 1, 4), atol=1e-10)


def test_linear_form_trivial_cases(algebras):
    alg = algebras["complex"]
    frame = hadamard_gamma(1)
    bold = bold_vector(alg, frame, [1.0, 2.0, 3.0, 4.0])
    np.testing.assert_array_equal(linear_form_value(alg, np.zeros((2, 2, 2)), bold), [0, 0])
    reals = validate_algebra(tensor_from_triples(1, []))
    fg = formal_gradient(reals, default_gamma(1), [2.5])
    np.testing.assert_allclose(linear_form_value(reals, fg, bold_vector(reals, default_gamma(1), [-3.0])), [-7.5])


def test_quadratic_form_ball_tangent(algebras):
    alg = algebras["complex"]
    s = np.array([0.0, 0.0, 0.6, -0.8])
    fh = formal_hessian(alg, hadamard_gamma(1), 2 * np.eye(4))
    val = quadratic_form_value(alg, fh, bold_vector(alg, hadamard_gamma(1), s))
    np.testing.assert_allclose(val, [2 * s @ s, 0], atol=1e-14)
    np.testing.assert_array_equal(quadratic_form_value(alg, np.zeros((2, 2, 2, 2, 2)), bold_vector(alg, hadamard_gamma(1), s)), 0)


@pytest.mark.parametrize("name", ["complex", "hyperbolic", "bicomplex"])
def test_form_identities_frame_independent(name, algebras, rng):
    alg = algebras[name]
    n = 3
    g = rng.standard_normal(n * alg.m)
    a = rng.standard_normal((n * alg.m, n * alg.m))
    h = (a + a.T) / 2
    x = rng.standard_normal(n * alg.m)
    lin, quad = [], []
    for frame in frames_for(alg.m, rng):
        bold = bold_vector(alg, frame, x)
        lv = linear_form_value(alg, formal_gradient(alg, frame, g), bold)
        qv = quadratic_form_value(alg, formal_hessian(alg, frame, h), bold)
        np.testing.assert_allclose(lv[1:], 0, atol=1e-9)
        np.testing.assert_allclose(qv[1:], 0, atol=1e-9)
        lin.append(lv[0])
        quad.append(qv[0])
    np.testing.assert_allclose(lin, g @ x, atol=1e-9)
    np.testing.assert_allclose(quad, x @ h @ x, atol=1e-9)


def test_dimension_errors(algebras):
    alg = algebras["complex"]
    with pytest.raises(DimensionMismatch):
        bold_components(alg, default_gamma(4), [1, 2])
    with pytest.raises(DimensionMismatch):
        bold_vector(alg, default_gamma(2), [1, 2, 3])
    with pytest.raises(DimensionMismatch):
        linear_form_value(alg, np.zeros((1, 2, 2)), np.zeros((2, 2, 2)))
