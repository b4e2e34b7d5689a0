"""Classify boundary points by the sign of the second-order form on the tangent hyperplane.

Two routes are computed at every point.  The eigenvalue route compresses the
real Hessian onto an orthonormal basis of the tangent kernel.  The algebra
route evaluates the formal quadratic differential form on the bold components
of a tangent vector; its ``e_0`` coefficient must reproduce the real form and
the remaining coefficients must vanish.  ``cross_check_error`` measures the gap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra
from .domains import BoundaryPoint, DefiningFunction, sample_boundary
from .errors import HyperconvexError
from .gamma import GammaFrame, bold_vector, formal_hessian, quadratic_form_value
from .hyperplanes import TangentFrame, tangent_frame

__all__ = [
    "Kind",
    "Verdict",
    "PointClassification",
    "PointRecord",
    "ConvexityReport",
    "default_tolerance",
    "restricted_hessian",
    "classify_point",
    "check_domain",
]


class Kind(str, enum.Enum):
    STRICTLY_POSITIVE = "StrictlyPositive"
    DEGENERATE = "Degenerate"
    NEGATIVE_DIRECTION = "NegativeDirection"
    VACUOUS_TANGENT = "VacuousTangent"


class Verdict(str, enum.Enum):
    SUFFICIENT = "SufficientConditionHolds"
    NECESSARY_VIOLATED = "NecessaryConditionViolated"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, eq=False)
class PointClassification:
    anchor: np.ndarray
    kind: Kind
    min_eigenvalue: float | None
    witness: np.ndarray | None
    algebra_form_value: np.ndarray
    cross_check_error: float
    kernel_dim: int
    tol: float
    hessian_norm: float
    frame: TangentFrame = field(repr=False)


@dataclass(frozen=True, eq=False)
class PointRecord:
    point: BoundaryPoint
    classification: PointClassification | None
    error: str | None = None


@dataclass(frozen=True, eq=False)
class ConvexityReport:
    points: list[PointRecord]
    verdict: Verdict
    seed: int
    config: dict
    sample_only: bool = True


def default_tolerance(hess: np.ndarray) -> float:
    return 1e-8 * (1.0 + float(np.linalg.norm(hess, 2)))


def restricted_hessian(domain: DefiningFunction, frame: TangentFrame) -> np.ndarray:
    """``B.T @ H(w) @ B`` for the orthonormal kernel basis ``B``."""
    b = frame.kernel_basis
    h = domain.hessian(frame.anchor)
    r = b.T @ h @ b
    return (r + r.T) / 2


def classify_point(
    algebra: Algebra,
    gamma: GammaFrame,
    domain: DefiningFunction,
    w,
    tol: float | None = None,
    ptilde: int | None = None,
) -> PointClassification:
    w = np.asarray(getattr(w, "w", w), dtype=float)
    frame = tangent_frame(algebra, domain, w, ptilde)
    hess = domain.hessian(w)
    hnorm = float(np.linalg.norm(hess, 2))
    if tol is None:
        tol = default_tolerance(hess)

    if frame.kernel_dim == 0:
        kind, lam, witness = Kind.VACUOUS_TANGENT, None, None
        probe_dir = np.zeros(w.size)
    else:
        evals, evecs = np.linalg.eigh(restricted_hessian(domain, frame))
        lam = float(evals[0])
        probe_dir = frame.kernel_basis @ evecs[:, 0]
        probe_dir /= np.linalg.norm(probe_dir)
        if lam > tol:
            kind = Kind.STRICTLY_POSITIVE
        elif lam < -tol:
            kind = Kind.NEGATIVE_DIRECTION
        else:
            kind = Kind.DEGENERATE
        witness = probe_dir if kind is Kind.NEGATIVE_DIRECTION else None

    fh = formal_hessian(algebra, gamma, hess)
    form = quadratic_form_value(algebra, fh, bold_vector(algebra, gamma, probe_dir))
    real_form = float(probe_dir @ hess @ probe_dir)
    err = abs(form[0] - real_form) + float(np.max(np.abs(form[1:]), initial=0.0))

    return PointClassification(
        anchor=w.copy(),
        kind=kind,
        min_eigenvalue=lam,
        witness=witness,
        algebra_form_value=form,
        cross_check_error=err,
        kernel_dim=frame.kernel_dim,
        tol=float(tol),
        hessian_norm=hnorm,
        frame=frame,
    )


def _verdict(records: list[PointRecord]) -> Verdict:
    kinds = [r.classification.kind if r.classification else None for r in records]
    if any(k is Kind.NEGATIVE_DIRECTION for k in kinds):
        return Verdict.NECESSARY_VIOLATED
    if kinds and all(k in (Kind.STRICTLY_POSITIVE, Kind.VACUOUS_TANGENT) for k in kinds):
        return Verdict.SUFFICIENT
    return Verdict.INCONCLUSIVE


def check_domain(
    algebra: Algebra,
    gamma: GammaFrame,
    domain: DefiningFunction,
    samples: int = 32,
    seed: int = 0,
    tol: float | None = None,
    ptilde: int | None = None,
    box: tuple[float, float] = (-2.0, 2.0),
    points: list[BoundaryPoint] | None = None,
) -> ConvexityReport:
    """Sample boundary points and classify each one.

    A verdict of ``SufficientConditionHolds`` only certifies the strict
    inequality on the sampled points.  Per-point failures (for instance a
    vanishing gradient) are recorded on the point and make the verdict
    inconclusive unless another point already shows a negative direction.
    """
    if points is None:
        points = sample_boundary(domain, samples, seed, box)
    records = []
    for bp in points:
        try:
            records.append(PointRecord(bp, classify_point(algebra, gamma, domain, bp, tol, ptilde)))
        except HyperconvexError as exc:
            records.append(PointRecord(bp, None, f"{type(exc).__name__}: {exc}"))
    config = {"samples": samples, "seed": seed, "tol": tol, "ptilde": ptilde, "box": list(box)}
    return ConvexityReport(records, _verdict(records), seed, config)
