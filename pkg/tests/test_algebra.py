import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hyperconvex.algebra import (
    MAX_DIM,
    StructureTensor,
    builtin_algebra,
    is_degenerate,
    parse_algebra,
    tensor_from_triples,
    validate_algebra,
)
from hyperconvex.errors import (
    AssociativityViolated,
    CommutativityViolated,
    Condition1Violated,
    Condition2Violated,
    DimensionMismatch,
    DimensionTooLarge,
    IdentityMissing,
    MalformedTensor,
    NotInvertible,
    UnknownAlgebra,
)

NAMES = ["complex", "hyperbolic", "bicomplex", "direct-product(complex,hyperbolic)",
         "direct-product(hyperbolic,direct-product(complex,complex))"]


def test_complex_gamma_matrices_and_ptilde():
    alg = validate_algebra(builtin_algebra("complex"))
    np.testing.assert_array_equal(alg.gamma_matrix(0), [[1, 0], [0, -1]])
    np.testing.assert_array_equal(alg.gamma_matrix(1), [[0, 1], [1, 0]])
    np.testing.assert_allclose(alg.gamma_dets, [-1, -1])
    assert alg.ptilde == 0


def test_dual_numbers_fail_condition1():
    with pytest.raises(Condition1Violated) as info:
        validate_algebra(builtin_algebra("dual"))
    assert info.value.k == 1


def test_one_sided_perturbation_breaks_commutativity():
    g = np.array(builtin_algebra("complex").gamma)
    g[1, 0, 1] = -1.5  # e1*e0 changed, e0*e1 left alone
    with pytest.raises(CommutativityViolated) as info:
        validate_algebra(StructureTensor(g))
    assert info.value.index == (0, 1, 1)


def test_asymmetric_complex_table_rejected():
    triples = [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, -1], [0, 1, 0, 0.5]]
    with pytest.raises(CommutativityViolated):
        validate_algebra(tensor_from_triples(2, triples))


def test_identity_missing():
    g = np.array(builtin_algebra("complex").gamma)
    g[0, 1, 1] = g[1, 0, 1] = 2.0
    with pytest.raises(IdentityMissing):
        validate_algebra(StructureTensor(g))


def test_non_associative_perturbation():
    g = np.array(builtin_algebra("bicomplex").gamma)
    g[3, 3, 0] = 2.0
    with pytest.raises(AssociativityViolated):
        validate_algebra(StructureTensor(g))


def non_frobenius_unipotent_basis():
    # R[x,y]/(x,y)^2 in the basis 1, 1+x, 1+y: every basis element is a unit, but the
    # algebra is not Frobenius, so no coordinate functional gives a nondegenerate form
    return tensor_from_triples(3, [
        [0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [0, 2, 2, 1], [2, 0, 2, 1],
        [1, 1, 0, -1], [1, 1, 1, 2],
        [2, 2, 0, -1], [2, 2, 2, 2],
        [1, 2, 0, -1], [1, 2, 1, 1], [1, 2, 2, 1],
        [2, 1, 0, -1], [2, 1, 1, 1], [2, 1, 2, 1],
    ])


def test_all_singular_gamma_fails_condition2():
    with pytest.raises(Condition2Violated):
        validate_algebra(non_frobenius_unipotent_basis())


def test_ptilde_override():
    alg = validate_algebra(builtin_algebra("complex"), ptilde=1)
    assert alg.ptilde == 1
    np.testing.assert_allclose(alg.eta_ptilde, [[0, 1], [1, 0]])
    with pytest.raises(Condition2Violated):
        validate_algebra(builtin_algebra("complex"), ptilde=5)


def test_ptilde_prefers_better_conditioned_gamma():
    # basis 1, e1 with e1^2 = 2 e0 + e1 (isomorphic to R x R); Gamma^0 = [[1,0],[0,2]], Gamma^1 = [[0,1],[1,1]]
    alg = validate_algebra(tensor_from_triples(2, [[1, 1, 0, 2.0], [1, 1, 1, 1.0]]))
    s0 = abs(np.linalg.det(alg.gamma_matrix(0))) / np.linalg.norm(alg.gamma_matrix(0), 2) ** 2
    s1 = abs(np.linalg.det(alg.gamma_matrix(1))) / np.linalg.norm(alg.gamma_matrix(1), 2) ** 2
    assert alg.ptilde == int(np.argmax([s0, s1]))


def test_mul_examples():
    c = validate_algebra(builtin_algebra("complex"))
    h = validate_algebra(builtin_algebra("hyperbolic"))
    np.testing.assert_array_equal(c.mul([0, 1], [0, 1]), [-1, 0])
    np.testing.assert_array_equal(h.mul([1, 1], [1, -1]), [0, 0])
    with pytest.raises(DimensionMismatch):
        c.mul([1, 2, 3], [1, 0])


def test_regular_representation_examples():
    c = validate_algebra(builtin_algebra("complex"))
    h = validate_algebra(builtin_algebra("hyperbolic"))
    x, y = 0.3, -1.7
    np.testing.assert_array_equal(c.regular_representation([x, y]), [[x, -y], [y, x]])
    np.testing.assert_array_equal(c.regular_representation([1, 0]), np.eye(2))
    rep = h.regular_representation([1, 1])
    np.testing.assert_array_equal(rep, [[1, 1], [1, 1]])
    assert is_degenerate(rep)


def test_invert_examples():
    c = validate_algebra(builtin_algebra("complex"))
    b = validate_algebra(builtin_algebra("bicomplex"))
    h = validate_algebra(builtin_algebra("hyperbolic"))
    np.testing.assert_allclose(c.invert([0, 1]), [0, -1])
    np.testing.assert_allclose(b.invert(b.basis(3)), b.basis(3))
    with pytest.raises(NotInvertible):
        h.invert([1, 1])
    with pytest.raises(NotInvertible):
        c.invert([0, 0])


def test_builtin_tables():
    np.testing.assert_array_equal(builtin_algebra("complex").gamma[1, 1], [-1, 0])
    np.testing.assert_array_equal(builtin_algebra("hyperbolic").gamma[1, 1], [1, 0])
    np.testing.assert_array_equal(builtin_algebra("dual").gamma[1, 1], [0, 0])
    with pytest.raises(UnknownAlgebra):
        builtin_algebra("octonions")
    with pytest.raises(UnknownAlgebra):
        builtin_algebra("direct-product(complex)")


def test_direct_product_of_complex_is_bicomplex():
    alg = validate_algebra(builtin_algebra("direct-product(complex,complex)"))
    bic = builtin_algebra("bicomplex").gamma
    perm = [0, 2, 1, 3]  # kron order (1, j, i, ij) vs (1, i, j, ij)
    np.testing.assert_array_equal(alg.gamma[np.ix_(perm, perm, perm)], bic)


@pytest.mark.parametrize("name", NAMES)
def test_builtin_validates_and_all_basis_invertible(name):
    alg = validate_algebra(builtin_algebra(name))
    for k in range(alg.m):
        np.testing.assert_allclose(alg.mul(alg.basis(k), alg.basis_inverses[k]), alg.one(), atol=1e-12)


def test_triples_parsing():
    t = tensor_from_triples(2, [[1, 1, 0, -1]])
    np.testing.assert_array_equal(t.gamma, builtin_algebra("complex").gamma)
    with pytest.raises(MalformedTensor):
        tensor_from_triples(2, [[2, 1, 0, -1]])
    with pytest.raises(MalformedTensor):
        tensor_from_triples(2, [[1, 1, 0]])
    with pytest.raises(DimensionTooLarge):
        tensor_from_triples(MAX_DIM + 1, [])
    tensor, ptilde = parse_algebra({"builtin": "complex", "ptilde": 1})
    assert ptilde == 1 and tensor.m == 2
    tensor, ptilde = parse_algebra({"m": 2, "gamma": [[1, 1, 0, 1]]})
    np.testing.assert_array_equal(tensor.gamma, builtin_algebra("hyperbolic").gamma)
    with pytest.raises(MalformedTensor):
        parse_algebra({"builtin": "complex", "extra": 1})


def test_algebra_is_immutable():
    alg = validate_algebra(builtin_algebra("complex"))
    with pytest.raises(ValueError):
        alg.gamma[0, 0, 0] = 5.0


elements4 = arrays(np.float64, 4, elements=st.floats(-10, 10, allow_nan=False))


@settings(max_examples=200, deadline=None)
@given(a=elements4, b=elements4, c=elements4)
def test_mul_commutative_associative_and_rep(a, b, c):
    alg = validate_algebra(builtin_algebra("bicomplex"))
    np.testing.assert_array_equal(alg.mul(a, b), alg.mul(b, a))
    scale = 1 + np.abs(a).max() * np.abs(b).max() * np.abs(c).max()
    np.testing.assert_allclose(alg.mul(alg.mul(a, b), c), alg.mul(a, alg.mul(b, c)), atol=1e-10 * scale)
    np.testing.assert_allclose(alg.regular_representation(a) @ b, alg.mul(a, b), atol=1e-12 * (1 + scale))


@pytest.mark.parametrize("name", ["complex", "hyperbolic", "bicomplex"])
def test_double_inverse(name, rng):
    alg = validate_algebra(builtin_algebra(name))
    for _ in range(200):
        a = rng.standard_normal(alg.m)
        if is_degenerate(alg.regular_representation(a), 1e-3):
            continue
        inv = alg.invert(a)
        np.testing.assert_allclose(alg.mul(a, inv), alg.one(), atol=1e-12 * np.abs(a).max() * np.abs(inv).max() + 1e-12)
        np.testing.assert_allclose(alg.invert(inv), a, atol=1e-9 * (1 + np.abs(a).max()))
