"""Coordinate calculus driven by an invertible matrix Gamma with unit first row.

For an element ``z = sum_q x_q e_q`` the bold components are
``z^l = sum_q Gamma[l, q] x_q e_q``; row 0 of Gamma is all ones, so
``z^0 = z``.  With ``eta = inv(Gamma)`` the real coordinates come back as
``x_l e_0 = e_l^{-1} sum_p eta[l, p] z^p``, and real linear and quadratic
forms become algebra-valued forms in the bold components.

Array conventions (``n`` slots, algebra dimension ``m``):

* real points and tangent vectors are flat, length ``n*m``, slot-major;
* a bold vector has shape ``(n, m, m)``: ``[slot, bold index, coordinate]``;
* a formal gradient has shape ``(n, m, m)``: ``[j, p, coordinate]``;
* a formal Hessian has shape ``(n, m, n, m, m)``: ``[j, p, i, q, coordinate]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import MAX_DIM, Algebra, is_degenerate
from .errors import (
    AsymmetricInput,
    DimensionMismatch,
    DimensionTooLarge,
    InconsistentBold,
    InvalidGamma,
)

__all__ = [
    "GammaFrame",
    "hadamard_matrix",
    "hadamard_gamma",
    "vandermonde_gamma",
    "default_gamma",
    "random_gamma",
    "parse_gamma",
    "bold_components",
    "bold_vector",
    "reconstruct_real",
    "formal_gradient",
    "formal_hessian",
    "linear_form_value",
    "quadratic_form_value",
]


@dataclass(frozen=True, eq=False)
class GammaFrame:
    matrix: np.ndarray
    eta: np.ndarray

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(cls, matrix) -> "GammaFrame":
        mat = np.array(matrix, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
            raise InvalidGamma(f"Gamma must be a square matrix, got shape {mat.shape}")
        if mat.shape[0] > MAX_DIM:
            raise DimensionTooLarge(f"Gamma dimension {mat.shape[0]} exceeds {MAX_DIM}")
        if not np.all(np.isfinite(mat)):
            raise InvalidGamma("Gamma entries must be finite")
        if not np.all(mat[0] == 1.0):
            raise InvalidGamma("row 0 of Gamma must be all ones")
        if is_degenerate(mat):
            raise InvalidGamma("Gamma is singular")
        eta = np.linalg.inv(mat)
        mat.setflags(write=False)
        eta.setflags(write=False)
        return cls(mat, eta)


def hadamard_matrix(k: int) -> np.ndarray:
    """Sylvester matrix of order ``2**k`` as an integer array."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if 2**k > MAX_DIM:
        raise DimensionTooLarge(f"2**{k} exceeds {MAX_DIM}")
    h = np.ones((1, 1), dtype=np.int64)
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    return h


def hadamard_gamma(k: int) -> GammaFrame:
    """Gamma_k; its inverse is ``Gamma_k / 2**k``."""
    h = hadamard_matrix(k).astype(float)
    eta = h / 2**k
    h.setflags(write=False)
    eta.setflags(write=False)
    return GammaFrame(h, eta)


def vandermonde_gamma(m: int) -> GammaFrame:
    if m > MAX_DIM:
        raise DimensionTooLarge(f"dimension {m} exceeds {MAX_DIM}")
    nodes = np.arange(1, m + 1, dtype=float)
    return GammaFrame.from_matrix(nodes[None, :] ** np.arange(m)[:, None])


def default_gamma(m: int) -> GammaFrame:
    """Hadamard frame when ``m`` is a power of two, else Vandermonde on nodes 1..m."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > MAX_DIM:
        raise DimensionTooLarge(f"dimension {m} exceeds {MAX_DIM}")
    k = m.bit_length() - 1
    if 2**k == m:
        return hadamard_gamma(k)
    return vandermonde_gamma(m)


def random_gamma(m: int, rng: np.random.Generator) -> GammaFrame:
    while True:
        mat = rng.standard_normal((m, m))
        mat[0] = 1.0
        try:
            frame = GammaFrame.from_matrix(mat)
        except InvalidGamma:
            continue
        if np.linalg.cond(mat) < 1e4:
            return frame


def parse_gamma(spec, m: int) -> GammaFrame:
    """JSON Gamma value: ``"hadamard"``, ``"vandermonde"``, a list of rows, or null."""
    if spec is None or spec == "default":
        return default_gamma(m)
    if spec == "hadamard":
        k = m.bit_length() - 1
        if 2**k != m:
            raise InvalidGamma(f"Hadamard Gamma needs a power-of-two dimension, got m={m}")
        return hadamard_gamma(k)
    if spec == "vandermonde":
        return vandermonde_gamma(m)
    if isinstance(spec, list):
        frame = GammaFrame.from_matrix(spec)
        if frame.m != m:
            raise DimensionMismatch(f"Gamma is {frame.m}x{frame.m} but the algebra has m={m}")
        return frame
    raise InvalidGamma(f"unrecognised Gamma specification {spec!r}")


def _check(algebra: Algebra, frame: GammaFrame):
    if frame.m != algebra.m:
        raise DimensionMismatch(f"frame dimension {frame.m} != algebra dimension {algebra.m}")


def bold_components(algebra: Algebra, frame: GammaFrame, z) -> np.ndarray:
    """Rows ``z^0 .. z^{m-1}`` of a single element, shape ``(m, m)``."""
    _check(algebra, frame)
    x = np.asarray(z, dtype=float)
    if x.shape != (algebra.m,):
        raise DimensionMismatch(f"expected an element of length {algebra.m}")
    return frame.matrix * x[None, :]


def bold_vector(algebra: Algebra, frame: GammaFrame, s) -> np.ndarray:
    """Bold components of every slot of a flat real vector, shape ``(n, m, m)``."""
    _check(algebra, frame)
    m = algebra.m
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or s.size % m:
        raise DimensionMismatch(f"vector length {s.size} is not a multiple of m={m}")
    x = s.reshape(-1, m)
    return frame.matrix[None, :, :] * x[:, None, :]


def reconstruct_real(algebra: Algebra, frame: GammaFrame, bold, atol: float = 1e-8) -> np.ndarray:
    """Inverse of :func:`bold_components`.

    Each ``e_l^{-1} sum_p eta[l, p] z^p`` must be a real multiple of ``e_0``;
    otherwise the bold components do not come from a real vector and
    :class:`InconsistentBold` is raised.
    """
    _check(algebra, frame)
    bold = np.asarray(bold, dtype=float)
    if bold.shape != (algebra.m, algebra.m):
        raise DimensionMismatch(f"expected bold components of shape {(algebra.m, algebra.m)}")
    combos = frame.eta @ bold  # row l: sum_p eta[l, p] z^p
    vals = algebra.mul(algebra.basis_inverses, combos)
    scale = max(1.0, float(np.max(np.abs(bold), initial=0.0)))
    if np.max(np.abs(vals[:, 1:]), initial=0.0) > atol * scale:
        raise InconsistentBold("bold components are not the image of a real vector")
    return vals[:, 0].copy()


def formal_gradient(algebra: Algebra, frame: GammaFrame, real_grad) -> np.ndarray:
    """``a_j^p = sum_l eta[l, p] * d rho / d x_l^j * e_l^{-1}``.

    ``real_grad`` may be flat (length ``n*m``) or shaped ``(n, m)``.
    Returns shape ``(n, m, m)``.
    """
    _check(algebra, frame)
    g = np.asarray(real_grad, dtype=float).reshape(-1, algebra.m)
    if not np.all(np.isfinite(g)):
        raise ValueError("gradient must be finite")
    return np.einsum("lp,jl,lc->jpc", frame.eta, g, algebra.basis_inverses)


def formal_hessian(algebra: Algebra, frame: GammaFrame, real_hess, atol: float = 1e-9) -> np.ndarray:
    """``a_ji^pq = sum_{l,k} eta[l,p] eta[k,q] H[(j,l),(i,k)] e_l^{-1} e_k^{-1}``.

    Returns shape ``(n, m, n, m, m)``.
    """
    _check(algebra, frame)
    m = algebra.m
    h = np.asarray(real_hess, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] % m:
        raise DimensionMismatch(f"Hessian shape {h.shape} incompatible with m={m}")
    scale = max(1.0, float(np.max(np.abs(h), initial=0.0)))
    if np.max(np.abs(h - h.T), initial=0.0) > atol * scale:
        raise AsymmetricInput("real Hessian is not symmetric")
    n = h.shape[0] // m
    inv = algebra.basis_inverses
    inv_products = algebra.mul(inv[:, None, :], inv[None, :, :])  # [l, k, coord]
    return np.einsum(
        "lp,kq,jlik,lkc->jpiqc", frame.eta, frame.eta, h.reshape(n, m, n, m), inv_products
    )


def linear_form_value(algebra: Algebra, fg, bold) -> np.ndarray:
    """``sum_j sum_p a_j^p z_j^p``."""
    fg = np.asarray(fg, dtype=float)
    bold = np.asarray(bold, dtype=float)
    if fg.shape != bold.shape or fg.shape[1:] != (algebra.m, algebra.m):
        raise DimensionMismatch(f"formal gradient {fg.shape} vs bold vector {bold.shape}")
    return np.einsum("jpl,jpk,lkc->c", fg, bold, algebra.gamma)


def quadratic_form_value(algebra: Algebra, fh, bold) -> np.ndarray:
    """``sum_{j,i} sum_{p,q} a_ji^pq z_i^q z_j^p``."""
    fh = np.asarray(fh, dtype=float)
    bold = np.asarray(bold, dtype=float)
    n, m = bold.shape[0], algebra.m
    if bold.shape != (n, m, m) or fh.shape != (n, m, n, m, m):
        raise DimensionMismatch(f"formal Hessian {fh.shape} vs bold vector {bold.shape}")
    g = algebra.gamma
    inner = np.einsum("jpiql,iqk,lkr->jpr", fh, bold, g)
    return np.einsum("jpr,jps,rsc->c", inner, bold, g)
