"""Algebra hyperplanes ``sum_j c_j s_j = 0`` and the tangent hyperplane of a domain."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import SINGULAR_RTOL, Algebra
from .errors import DegenerateGradient, DimensionMismatch, ZeroCoefficients

__all__ = [
    "AHyperplane",
    "TangentFrame",
    "embed_real_hyperplane",
    "constraint_matrix",
    "kernel_basis",
    "tangent_frame",
    "contains",
    "gradient_tolerance",
]


@dataclass(frozen=True, eq=False)
class AHyperplane:
    anchor: np.ndarray
    coeffs: np.ndarray  # (n, m)

    def __post_init__(self):
        if not np.any(np.asarray(self.coeffs) != 0):
            raise ZeroCoefficients("hyperplane coefficients are all zero")


@dataclass(frozen=True, eq=False)
class TangentFrame:
    """Tangent algebra hyperplane at ``anchor`` and an orthonormal basis of its directions.

    ``kernel_basis`` has shape ``(n*m, kernel_dim)``.
    """

    anchor: np.ndarray
    coeffs: np.ndarray
    constraint: np.ndarray
    kernel_basis: np.ndarray
    rank: int
    ptilde: int

    @property
    def kernel_dim(self) -> int:
        return self.kernel_basis.shape[1]

    @property
    def hyperplane(self) -> AHyperplane:
        return AHyperplane(self.anchor, self.coeffs)


def embed_real_hyperplane(algebra: Algebra, a, ptilde: int | None = None) -> np.ndarray:
    """Coefficients ``c_j`` of an algebra hyperplane lying inside ``sum a_l^j s_l^j = 0``.

    ``c_k^j = sum_l eta^ptilde[k, l] a_l^j``; returns shape ``(n, m)``.
    """
    a = np.asarray(a, dtype=float).reshape(-1, algebra.m)
    if not np.any(a != 0):
        raise ZeroCoefficients("real hyperplane coefficients are all zero")
    return a @ algebra.eta(ptilde).T


def constraint_matrix(algebra: Algebra, coeffs) -> np.ndarray:
    """``[M(c_1) | ... | M(c_n)]`` so that ``constraint @ s`` gives ``sum_j c_j s_j``."""
    c = np.asarray(coeffs, dtype=float).reshape(-1, algebra.m)
    reps = algebra.regular_representation(c)  # (n, m, m)
    return np.concatenate(list(reps), axis=1)


def kernel_basis(mat: np.ndarray, rtol: float = SINGULAR_RTOL) -> tuple[np.ndarray, int]:
    """Orthonormal kernel basis from a full SVD, and the numerical rank."""
    _, sv, vh = np.linalg.svd(mat, full_matrices=True)
    rank = int(np.sum(sv > rtol * sv[0])) if sv.size and sv[0] > 0 else 0
    return vh[rank:].T.copy(), rank


def gradient_tolerance(value: float, w) -> float:
    """Gradients at or below this norm count as vanishing."""
    w = np.asarray(w, dtype=float)
    return 1e-8 * (1.0 + abs(value) + float(w @ w))


def tangent_frame(algebra: Algebra, domain, w, ptilde: int | None = None) -> TangentFrame:
    """Tangent hyperplane at a boundary point ``w`` of ``domain``.

    The coefficients embed the real gradient of the defining function, so every
    kernel vector is also tangent in the real sense.
    """
    w = np.asarray(getattr(w, "w", w), dtype=float)
    if w.size != domain.n * algebra.m or domain.m != algebra.m:
        raise DimensionMismatch(f"point of length {w.size} vs n={domain.n}, m={algebra.m}")
    grad = domain.gradient(w)
    if np.linalg.norm(grad) <= gradient_tolerance(domain.value(w), w):
        raise DegenerateGradient(f"gradient vanishes at {w.tolist()}")
    p = algebra.ptilde if ptilde is None else ptilde
    coeffs = embed_real_hyperplane(algebra, grad, p)
    cons = constraint_matrix(algebra, coeffs)
    basis, rank = kernel_basis(cons)
    return TangentFrame(anchor=w.copy(), coeffs=coeffs, constraint=cons, kernel_basis=basis, rank=rank, ptilde=p)


def contains(algebra: Algebra, hyperplane: AHyperplane, s, rtol: float = 1e-9) -> bool:
    """Whether the displacement ``s`` from the anchor solves ``sum_j c_j s_j = 0``."""
    c = np.asarray(hyperplane.coeffs, dtype=float).reshape(-1, algebra.m)
    s = np.asarray(s, dtype=float)
    if s.size != c.size:
        raise DimensionMismatch(f"displacement length {s.size} vs {c.size}")
    value = algebra.mul(c, s.reshape(c.shape)).sum(axis=0)
    return bool(np.linalg.norm(value) <= rtol * np.linalg.norm(c) * np.linalg.norm(s))
