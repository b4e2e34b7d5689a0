"""Brute-force geometric checks that do not rely on the eigenvalue classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .checker import Kind, PointClassification
from .domains import DefiningFunction, tolerance_scale
from .errors import MismatchedAnchor
from .hyperplanes import TangentFrame

__all__ = [
    "DEFAULT_RADII",
    "Outcome",
    "Agreement",
    "ProbeResult",
    "geometric_probe",
    "taylor_residual",
    "taylor_ratio_ok",
    "third_derivative_bound",
    "cross_validate",
]

DEFAULT_RADII = (0.3, 0.1, 0.03, 0.01)


class Outcome(str, enum.Enum):
    NO_INTERSECTION = "NoIntersection"
    INTERIOR_WITNESS = "InteriorWitness"


class Agreement(str, enum.Enum):
    AGREE = "Agree"
    DISAGREE = "Disagree"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True, eq=False)
class ProbeResult:
    """Outcome of probing the tangent hyperplane for points of the open domain.

    ``hits[i]`` tells whether radius ``radii[i]`` produced an interior point.
    ``vacuous`` marks a trivial tangent kernel, where nothing can be probed.
    """

    anchor: np.ndarray
    outcome: Outcome
    witness: np.ndarray | None
    witness_value: float | None
    radii: tuple[float, ...]
    samples_per_radius: int
    hits: tuple[bool, ...]
    vacuous: bool = False

    @property
    def hit_at_smallest_radius(self) -> bool:
        return self.hits[int(np.argmin(self.radii))] if self.hits else False


def geometric_probe(
    domain: DefiningFunction,
    frame: TangentFrame,
    radii: Sequence[float] = DEFAULT_RADII,
    samples_per_radius: int = 16,
    seed: int = 0,
    direction=None,
) -> ProbeResult:
    """Evaluate ``rho(w + r s)`` for random unit kernel vectors ``s``.

    ``direction`` (for instance the checker's witness) is tried first at every
    radius.  Each radius stops at its first value below ``-1e-12 * scale``;
    the reported witness is the first interior point found.
    """
    w = frame.anchor
    radii = tuple(float(r) for r in radii)
    if frame.kernel_dim == 0:
        return ProbeResult(w, Outcome.NO_INTERSECTION, None, None, radii, samples_per_radius,
                           tuple(False for _ in radii), vacuous=True)
    rng = np.random.default_rng(seed)
    threshold = -1e-12 * tolerance_scale(domain, w)
    basis = frame.kernel_basis
    hits = []
    witness, witness_value = None, None
    for r in radii:
        dirs = []
        if direction is not None:
            dirs.append(np.asarray(direction, dtype=float) / np.linalg.norm(direction))
        t = rng.standard_normal((samples_per_radius, frame.kernel_dim))
        dirs.extend(basis @ (row / np.linalg.norm(row)) for row in t)
        hit = False
        for s in dirs:
            point = w + r * s
            val = domain.value(point)
            if val < threshold:
                hit = True
                if witness is None:
                    witness, witness_value = point, val
                break
        hits.append(hit)
    outcome = Outcome.INTERIOR_WITNESS if witness is not None else Outcome.NO_INTERSECTION
    return ProbeResult(w, outcome, witness, witness_value, radii, samples_per_radius, tuple(hits))


def taylor_residual(domain: DefiningFunction, w, s, t_list: Sequence[float]) -> np.ndarray:
    """``rho(w + t s) - rho(w) - t grad.s - t^2/2 s.H s`` for each ``t``.

    On a boundary point with tangent ``s`` the constant and linear terms are
    zero up to rounding; keeping them isolates the cubic remainder.
    """
    w = np.asarray(getattr(w, "w", w), dtype=float)
    s = np.asarray(s, dtype=float)
    r0 = domain.value(w)
    lin = float(domain.gradient(w) @ s)
    quad = float(s @ domain.hessian(w) @ s)
    return np.array([domain.value(w + t * s) - r0 - t * lin - 0.5 * t * t * quad for t in t_list])


def taylor_ratio_ok(residuals, t_list, floor: float = 1e-12) -> bool:
    """``|residual|/t^2`` must at least halve whenever ``t`` halves.

    Residuals below ``floor`` count as exact.
    """
    t = np.asarray(t_list, dtype=float)
    r = np.abs(np.asarray(residuals, dtype=float))
    ratios = r / t**2
    for i in range(len(t) - 1):
        if r[i + 1] <= floor:
            continue
        shrink = t[i] / t[i + 1]
        # asymptotically |residual|/t^2 scales like t; allow rounding slack only
        if ratios[i] / ratios[i + 1] < shrink * (1 - 1e-6):
            return False
    return True


def third_derivative_bound(
    domain: DefiningFunction,
    w,
    directions,
    h: float = 1e-3,
    floor: float = 1.0,
) -> float:
    """Finite-difference estimate of ``max |d^3 rho / dt^3|`` along ``directions``, at least ``floor``."""
    w = np.asarray(getattr(w, "w", w), dtype=float)
    best = 0.0
    for s in np.atleast_2d(directions):
        s = s / np.linalg.norm(s)
        d3 = (s @ domain.hessian(w + h * s) @ s - s @ domain.hessian(w - h * s) @ s) / (2 * h)
        best = max(best, abs(float(d3)))
    return max(best, floor)


def cross_validate(classification: PointClassification, probe: ProbeResult, atol: float = 1e-12) -> Agreement:
    if classification.anchor.shape != probe.anchor.shape or not np.allclose(
        classification.anchor, probe.anchor, rtol=0, atol=atol
    ):
        raise MismatchedAnchor("classification and probe were computed at different points")
    kind = classification.kind
    if kind in (Kind.DEGENERATE, Kind.VACUOUS_TANGENT):
        return Agreement.INDETERMINATE
    if kind is Kind.STRICTLY_POSITIVE and not probe.hit_at_smallest_radius:
        return Agreement.AGREE
    if kind is Kind.NEGATIVE_DIRECTION and probe.outcome is Outcome.INTERIOR_WITNESS:
        return Agreement.AGREE
    return Agreement.DISAGREE
