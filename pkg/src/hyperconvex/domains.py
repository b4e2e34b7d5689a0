"""Domains ``{rho < 0}`` given by a defining function on R^(n*m).

Coordinates are slot-major: ``x_l^j`` lives at flat index ``(j - 1) * m + l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    InsufficientSamples,
    MalformedMonomials,
    NonFiniteValue,
    ProjectionFailed,
    UnknownDomain,
)
from .hyperplanes import gradient_tolerance

__all__ = [
    "DefiningFunction",
    "BoundaryPoint",
    "fd_gradient",
    "fd_hessian",
    "ball",
    "signed_quadric",
    "halfspace",
    "polynomial",
    "builtin_domain",
    "parse_domain",
    "project_to_boundary",
    "sample_boundary",
    "tolerance_scale",
]

_EPS = np.finfo(float).eps


def fd_gradient(func: Callable[[np.ndarray], float], z: np.ndarray) -> np.ndarray:
    """Central differences with step ``eps**(1/3) * (1 + |z_i|)``."""
    z = np.asarray(z, dtype=float)
    g = np.empty_like(z)
    for i in range(z.size):
        h = _EPS ** (1 / 3) * (1 + abs(z[i]))
        zp, zm = z.copy(), z.copy()
        zp[i] += h
        zm[i] -= h
        g[i] = (func(zp) - func(zm)) / (zp[i] - zm[i])
    return g


def fd_hessian(func: Callable[[np.ndarray], float], z: np.ndarray) -> np.ndarray:
    """Four-point central second differences with step ``eps**(1/4) * (1 + |z_i|)``."""
    z = np.asarray(z, dtype=float)
    d = z.size
    h = _EPS ** 0.25 * (1 + np.abs(z))
    f0 = func(z)
    hess = np.empty((d, d))
    for i in range(d):
        e_i = np.zeros(d)
        e_i[i] = h[i]
        hess[i, i] = (func(z + 2 * e_i) - 2 * f0 + func(z - 2 * e_i)) / (4 * h[i] ** 2)
        for k in range(i + 1, d):
            e_k = np.zeros(d)
            e_k[k] = h[k]
            val = (
                func(z + e_i + e_k) - func(z + e_i - e_k) - func(z - e_i + e_k) + func(z - e_i - e_k)
            ) / (4 * h[i] * h[k])
            hess[i, k] = hess[k, i] = val
    return hess


@dataclass(frozen=True, eq=False)
class DefiningFunction:
    """Smooth ``rho`` with optional closed-form derivatives.

    Missing derivatives fall back to central finite differences.
    """

    n: int
    m: int
    func: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray] | None = None
    hess: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = "custom"
    params: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.n * self.m

    def _point(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        if z.shape != (self.dim,):
            raise ValueError(f"expected a point of length {self.dim}, got shape {z.shape}")
        if not np.all(np.isfinite(z)):
            raise NonFiniteValue(f"non-finite point {z.tolist()}")
        return z

    def value(self, z) -> float:
        z = self._point(z)
        v = float(self.func(z))
        if not np.isfinite(v):
            raise NonFiniteValue(f"rho is not finite at {z.tolist()}")
        return v

    def gradient(self, z) -> np.ndarray:
        z = self._point(z)
        g = np.asarray(self.grad(z), dtype=float) if self.grad else fd_gradient(self.value, z)
        if not np.all(np.isfinite(g)):
            raise NonFiniteValue(f"gradient is not finite at {z.tolist()}")
        return g

    def hessian(self, z) -> np.ndarray:
        z = self._point(z)
        h = np.asarray(self.hess(z), dtype=float) if self.hess else fd_hessian(self.value, z)
        if not np.all(np.isfinite(h)):
            raise NonFiniteValue(f"Hessian is not finite at {z.tolist()}")
        return (h + h.T) / 2

    def scaled(self, c: float) -> "DefiningFunction":
        """``c * rho`` with derivatives scaled to match."""
        return DefiningFunction(
            self.n,
            self.m,
            lambda z: c * self.func(z),
            (lambda z: c * np.asarray(self.grad(z))) if self.grad else None,
            (lambda z: c * np.asarray(self.hess(z))) if self.hess else None,
            name=f"{c!r}*{self.name}",
            params=dict(self.params),
        )


@dataclass(frozen=True)
class BoundaryPoint:
    w: np.ndarray
    residual: float


# --- builtins ---------------------------------------------------------------

def signed_quadric(n: int, m: int, signs: Sequence[float], r: float = 1.0) -> DefiningFunction:
    """``sum_j signs[j] * |z_j|^2 - r^2`` with ``|z_j|^2`` the squared coordinate norm."""
    signs = np.asarray(signs, dtype=float)
    if signs.shape != (n,):
        raise UnknownDomain(f"signed-quadric needs {n} signs, got {signs.tolist()}")
    diag = np.repeat(signs, m)

    return DefiningFunction(
        n,
        m,
        lambda z: float(diag @ (z * z) - r * r),
        lambda z: 2 * diag * z,
        lambda z: np.diag(2 * diag),
        name="signed-quadric",
        params={"signs": signs.tolist(), "r": r},
    )


def ball(n: int, m: int, r: float = 1.0) -> DefiningFunction:
    f = signed_quadric(n, m, np.ones(n), r)
    return DefiningFunction(n, m, f.func, f.grad, f.hess, name="ball", params={"r": r})


def halfspace(n: int, m: int, normal: Sequence[float], offset: float = 0.0) -> DefiningFunction:
    """``normal . z - offset``."""
    normal = np.asarray(normal, dtype=float)
    if normal.shape != (n * m,):
        raise UnknownDomain(f"halfspace normal must have length {n * m}")
    zero = np.zeros((n * m, n * m))
    return DefiningFunction(
        n,
        m,
        lambda z: float(normal @ z - offset),
        lambda z: normal.copy(),
        lambda z: zero.copy(),
        name="halfspace",
        params={"normal": normal.tolist(), "offset": offset},
    )


def polynomial(n: int, m: int, monomials: Sequence[tuple[Sequence[int], float]]) -> DefiningFunction:
    """Sparse polynomial ``sum_t coef_t * prod_i x_i ** exps_t[i]``.

    Each monomial is ``(exponents, coefficient)`` with a flat exponent vector of
    length ``n*m``.  Derivatives are exact, by shifting exponents.
    """
    d = n * m
    try:
        exps = np.array([np.asarray(e, dtype=float) for e, _ in monomials]).reshape(-1, d)
        coefs = np.array([float(c) for _, c in monomials])
    except (TypeError, ValueError) as exc:
        raise MalformedMonomials(f"cannot read monomial list: {exc}") from None
    if len(monomials) == 0:
        raise MalformedMonomials("polynomial needs at least one monomial")
    if np.any(exps < 0) or np.any(exps != np.round(exps)) or not np.all(np.isfinite(coefs)):
        raise MalformedMonomials("exponents must be non-negative integers and coefficients finite")
    exps = exps.astype(np.int64)

    def _terms(z, e, c):
        return c * np.prod(z[None, :] ** e, axis=1)

    def value(z):
        return float(_terms(z, exps, coefs).sum())

    def gradient(z):
        g = np.empty(d)
        for i in range(d):
            e = exps.copy()
            c = coefs * e[:, i]
            e[:, i] = np.maximum(e[:, i] - 1, 0)
            g[i] = _terms(z, e, c).sum()
        return g

    def hessian(z):
        h = np.empty((d, d))
        for i in range(d):
            for k in range(i, d):
                e = exps.copy()
                c = coefs * e[:, i]
                e[:, i] = np.maximum(e[:, i] - 1, 0)
                c = c * e[:, k]
                e[:, k] = np.maximum(e[:, k] - 1, 0)
                h[i, k] = h[k, i] = _terms(z, e, c).sum()
        return h

    return DefiningFunction(
        n,
        m,
        value,
        gradient,
        hessian,
        name="polynomial",
        params={"monomials": [[e.tolist(), float(c)] for e, c in zip(exps, coefs)]},
    )


def _monomials_from_json(terms, n: int, m: int) -> list[tuple[np.ndarray, float]]:
    out = []
    if not isinstance(terms, list):
        raise MalformedMonomials("polynomial must be a list of monomials")
    for term in terms:
        if not isinstance(term, list) or not term:
            raise MalformedMonomials(f"monomial must be a non-empty list, got {term!r}")
        *factors, coef = term
        if isinstance(coef, bool) or not isinstance(coef, (int, float)):
            raise MalformedMonomials(f"monomial must end with a numeric coefficient, got {coef!r}")
        e = np.zeros(n * m, dtype=np.int64)
        for fac in factors:
            if not isinstance(fac, dict) or set(fac) != {"slot", "component", "power"}:
                raise MalformedMonomials(f"factor must have slot/component/power, got {fac!r}")
            j, l, p = fac["slot"], fac["component"], fac["power"]
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (j, l, p)):
                raise MalformedMonomials(f"factor fields must be integers, got {fac!r}")
            if not (1 <= j <= n and 0 <= l < m and p >= 0):
                raise MalformedMonomials(f"factor {fac!r} out of range for n={n}, m={m}")
            e[(j - 1) * m + l] += p
        out.append((e, float(coef)))
    return out


def builtin_domain(name: str, params: Mapping, m: int) -> DefiningFunction:
    """Named domains: ``ball``, ``signed-quadric``, ``halfspace``, ``polynomial``.

    ``params`` carries ``n`` plus the shape parameters: ``r`` for the quadrics,
    ``signs`` for ``signed-quadric``, ``normal``/``offset`` for ``halfspace``,
    and ``monomials`` (JSON monomial list) for ``polynomial``.
    """
    params = dict(params)
    try:
        if name == "ball":
            return ball(int(params.get("n", 1)), m, float(params.get("r", 1.0)))
        if name == "signed-quadric":
            signs = [float(s) for s in params["signs"]]
            return signed_quadric(int(params.get("n", len(signs))), m, signs, float(params.get("r", 1.0)))
        if name == "halfspace":
            normal = params["normal"]
            n = int(params.get("n", len(normal) // m))
            return halfspace(n, m, normal, float(params.get("offset", 0.0)))
        if name == "polynomial":
            n = int(params["n"])
            return polynomial(n, m, _monomials_from_json(params["monomials"], n, m))
    except KeyError as exc:
        raise UnknownDomain(f"domain {name!r} is missing parameter {exc}") from None
    raise UnknownDomain(f"unknown domain {name!r}")


def parse_domain(obj: Mapping, m: int) -> DefiningFunction:
    """Parse the JSON domain object for an algebra of dimension ``m``."""
    if not isinstance(obj, Mapping):
        raise UnknownDomain("domain must be a JSON object")
    if "builtin" in obj:
        extra = set(obj) - {"builtin", "params", "n"}
        if extra:
            raise UnknownDomain(f"unknown domain keys: {sorted(extra)}")
        params = dict(obj.get("params", {}))
        if "n" in obj:
            params.setdefault("n", obj["n"])
        return builtin_domain(str(obj["builtin"]), params, m)
    if "polynomial" in obj:
        extra = set(obj) - {"polynomial", "n"}
        if extra:
            raise UnknownDomain(f"unknown domain keys: {sorted(extra)}")
        if "n" not in obj:
            raise UnknownDomain("polynomial domain needs 'n'")
        return builtin_domain("polynomial", {"n": obj["n"], "monomials": obj["polynomial"]}, m)
    raise UnknownDomain("domain needs 'builtin' or 'polynomial'")


# --- boundary points --------------------------------------------------------

def tolerance_scale(f: DefiningFunction, z) -> float:
    z = np.asarray(z, dtype=float)
    return 1.0 + abs(f.value(z)) + float(z @ z)


def project_to_boundary(
    f: DefiningFunction,
    z0,
    max_iter: int = 100,
    rng: np.random.Generator | None = None,
) -> BoundaryPoint:
    """Damped Newton iteration ``z <- z - rho grad / |grad|^2`` onto ``{rho = 0}``.

    A start with vanishing gradient gets one tiny random nudge; a critical
    region that survives the nudge raises :class:`ProjectionFailed`.
    """
    z = np.array(z0, dtype=float)
    scale = tolerance_scale(f, z)
    tol = 1e-10 * scale
    grad_tol = 1e-8 * scale
    rho = f.value(z)
    grad = f.gradient(z)
    if np.linalg.norm(grad) <= grad_tol:
        rng = rng if rng is not None else np.random.default_rng(0)
        nudge = rng.standard_normal(z.size)
        z = z + 1e-10 * scale * nudge / np.linalg.norm(nudge)
        rho, grad = f.value(z), f.gradient(z)

    for _ in range(max_iter):
        gnorm2 = float(grad @ grad)
        if gnorm2 <= grad_tol**2:
            raise ProjectionFailed(f"gradient vanishes near {z.tolist()}")
        if abs(rho) <= tol:
            # one polishing step; quadratic convergence usually lands on rounding level
            cand = z - rho * grad / gnorm2
            rc = f.value(cand)
            if abs(rc) < abs(rho):
                z, rho = cand, rc
            return BoundaryPoint(z, abs(rho))
        step = -rho * grad / gnorm2
        alpha = 1.0
        while True:
            cand = z + alpha * step
            rc = f.value(cand)
            if abs(rc) < abs(rho) or alpha < 1e-6:
                break
            alpha /= 2
        z, rho = cand, rc
        grad = f.gradient(z)
    raise ProjectionFailed(f"no convergence within {max_iter} iterations from {np.asarray(z0).tolist()}")


def sample_boundary(
    f: DefiningFunction,
    count: int,
    seed: int,
    box: tuple[float, float] = (-2.0, 2.0),
) -> list[BoundaryPoint]:
    """Project uniform draws from ``box**dim`` onto the boundary.

    Deterministic in ``seed``.  Near-duplicates (closer than 1e-6) are dropped
    and points with a vanishing gradient are skipped.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    lo, hi = box
    points: list[BoundaryPoint] = []
    for _ in range(100 * count):
        z0 = rng.uniform(lo, hi, size=f.dim)
        try:
            bp = project_to_boundary(f, z0, rng=rng)
        except ProjectionFailed:
            continue
        if np.linalg.norm(f.gradient(bp.w)) <= gradient_tolerance(f.value(bp.w), bp.w):
            continue
        if any(np.linalg.norm(bp.w - p.w) < 1e-6 for p in points):
            continue
        points.append(bp)
        if len(points) == count:
            return points
    raise InsufficientSamples(f"only {len(points)} of {count} boundary points found")
