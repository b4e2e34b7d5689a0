"""Finite-dimensional commutative associative real algebras.

An algebra is fixed by its structure constants ``gamma[l, k, p]``, the
``p``-th coordinate of the product ``e_l * e_k``.  Elements are plain numpy
vectors of length ``m`` holding the coordinates in the basis ``e_0 .. e_{m-1}``,
with ``e_0`` the identity.

>>> alg = validate_algebra(builtin_algebra("complex"))
>>> alg.mul([0, 1], [0, 1])
array([-1.,  0.])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
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

__all__ = [
    "MAX_DIM",
    "SINGULAR_RTOL",
    "StructureTensor",
    "Algebra",
    "is_degenerate",
    "tensor_from_triples",
    "parse_algebra",
    "builtin_algebra",
    "tensor_product",
    "validate_algebra",
]

MAX_DIM = 64
SINGULAR_RTOL = 1e-10


def is_degenerate(mat: np.ndarray, rtol: float = SINGULAR_RTOL) -> bool:
    """True when the smallest singular value is at most ``rtol`` times the largest."""
    sv = np.linalg.svd(np.atleast_2d(mat), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return True
    return bool(sv[-1] <= rtol * sv[0])


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StructureTensor:
    """Raw multiplication table, ``gamma[l, k, p]``; not yet validated."""

    gamma: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=float)
        if g.ndim != 3 or not (g.shape[0] == g.shape[1] == g.shape[2]) or g.shape[0] < 1:
            raise MalformedTensor(f"structure tensor must have shape (m, m, m), got {g.shape}")
        if g.shape[0] > MAX_DIM:
            raise DimensionTooLarge(f"algebra dimension {g.shape[0]} exceeds {MAX_DIM}")
        if not np.all(np.isfinite(g)):
            raise MalformedTensor("structure constants must be finite")
        object.__setattr__(self, "gamma", _readonly(g))

    @property
    def m(self) -> int:
        return self.gamma.shape[0]


def tensor_from_triples(m: int, triples: Iterable[Sequence[float]]) -> StructureTensor:
    """Build a tensor from sparse ``(l, k, p, value)`` entries.

    Omitted entries are zero.  If no entry mentions ``e_0`` as a factor the
    identity rows ``e_0 e_k = e_k`` are filled in automatically.
    """
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 1:
        raise MalformedTensor(f"m must be a positive integer, got {m!r}")
    if m > MAX_DIM:
        raise DimensionTooLarge(f"algebra dimension {m} exceeds {MAX_DIM}")
    gamma = np.zeros((m, m, m))
    mentions_identity = False
    for entry in triples:
        if len(entry) != 4:
            raise MalformedTensor(f"expected [l, k, p, value], got {entry!r}")
        l, k, p, value = entry
        idx = []
        for i in (l, k, p):
            if isinstance(i, bool) or not float(i).is_integer() or not 0 <= int(i) < m:
                raise MalformedTensor(f"index {i!r} out of range for m={m}")
            idx.append(int(i))
        gamma[tuple(idx)] += float(value)
        mentions_identity |= idx[0] == 0 or idx[1] == 0
    if not mentions_identity:
        for k in range(m):
            gamma[0, k, k] = gamma[k, 0, k] = 1.0
    return StructureTensor(gamma)


def _table(m: int, products: Mapping[tuple[int, int], Mapping[int, float]]) -> np.ndarray:
    gamma = np.zeros((m, m, m))
    for k in range(m):
        gamma[0, k, k] = gamma[k, 0, k] = 1.0
    for (l, k), prod in products.items():
        for p, v in prod.items():
            gamma[l, k, p] = gamma[k, l, p] = v
    return gamma


_BUILTINS = {
    "complex": lambda: _table(2, {(1, 1): {0: -1.0}}),
    "hyperbolic": lambda: _table(2, {(1, 1): {0: 1.0}}),
    "dual": lambda: _table(2, {}),
    # basis 1, i, j, ij
    "bicomplex": lambda: _table(
        4,
        {
            (1, 1): {0: -1.0},
            (2, 2): {0: -1.0},
            (3, 3): {0: 1.0},
            (1, 2): {3: 1.0},
            (1, 3): {2: -1.0},
            (2, 3): {1: -1.0},
        },
    ),
}


def tensor_product(a: StructureTensor, b: StructureTensor) -> StructureTensor:
    """Tensor product of two algebras with basis ``a_s (x) b_t`` at index ``s * m_b + t``."""
    ga, gb = a.gamma, b.gamma
    ma, mb = a.m, b.m
    g = np.einsum("ikp,jlq->ijklpq", ga, gb).reshape(ma * mb, ma * mb, ma * mb)
    return StructureTensor(g)


def _split_top_level(arg: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(arg):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(arg[start:i].strip())
            start = i + 1
    parts.append(arg[start:].strip())
    return parts


def builtin_algebra(name: str) -> StructureTensor:
    """Standard multiplication tables.

    Known names are ``complex``, ``hyperbolic``, ``bicomplex``, ``dual`` and
    ``direct-product(A,B)`` for any two known names (nesting allowed).  The
    latter is the tensor product over the reals, so
    ``direct-product(complex,complex)`` is the bicomplex algebra up to a
    relabelling of ``i`` and ``j``.
    """
    key = name.strip().lower()
    if key in _BUILTINS:
        return StructureTensor(_BUILTINS[key]())
    if key.startswith("direct-product(") and key.endswith(")"):
        args = _split_top_level(key[len("direct-product(") : -1])
        if len(args) == 2 and all(args):
            return tensor_product(builtin_algebra(args[0]), builtin_algebra(args[1]))
    raise UnknownAlgebra(f"unknown algebra {name!r}")


def parse_algebra(obj: Mapping) -> tuple[StructureTensor, int | None]:
    """Parse the JSON algebra object; returns the tensor and the optional ``ptilde``."""
    if not isinstance(obj, Mapping):
        raise MalformedTensor("algebra must be a JSON object")
    extra = set(obj) - {"m", "gamma", "builtin", "ptilde"}
    if extra:
        raise MalformedTensor(f"unknown algebra keys: {sorted(extra)}")
    ptilde = obj.get("ptilde")
    if ptilde is not None and (isinstance(ptilde, bool) or not isinstance(ptilde, int)):
        raise MalformedTensor("ptilde must be an integer")
    if "builtin" in obj:
        if "gamma" in obj or "m" in obj:
            raise MalformedTensor("give either 'builtin' or 'm'/'gamma', not both")
        return builtin_algebra(str(obj["builtin"])), ptilde
    if "m" not in obj or "gamma" not in obj:
        raise MalformedTensor("algebra needs 'builtin' or both 'm' and 'gamma'")
    return tensor_from_triples(obj["m"], obj["gamma"]), ptilde


@dataclass(frozen=True, eq=False)
class Algebra:
    """A validated algebra together with the data derived during validation.

    Attributes
    ----------
    tensor : StructureTensor
    basis_inverses : ndarray, shape (m, m)
        Row ``k`` holds the coordinates of ``e_k^{-1}``.
    ptilde : int
        Index of the nondegenerate ``Gamma^p = gamma[:, :, p]`` used to embed
        real hyperplanes.
    eta_ptilde : ndarray, shape (m, m)
        Inverse of ``Gamma^ptilde``.
    gamma_dets : ndarray, shape (m,)
        ``det Gamma^p`` for every ``p``.
    """

    tensor: StructureTensor
    basis_inverses: np.ndarray
    ptilde: int
    eta_ptilde: np.ndarray
    gamma_dets: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.tensor.m

    @property
    def gamma(self) -> np.ndarray:
        return self.tensor.gamma

    def one(self) -> np.ndarray:
        return self.basis(0)

    def basis(self, k: int) -> np.ndarray:
        e = np.zeros(self.m)
        e[k] = 1.0
        return e

    def _coerce(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        if a.shape[-1:] != (self.m,):
            raise DimensionMismatch(f"expected trailing dimension {self.m}, got shape {a.shape}")
        return a

    def mul(self, a, b) -> np.ndarray:
        """Product ``a * b``; broadcasts over leading axes."""
        a, b = self._coerce(a), self._coerce(b)
        ab = np.einsum("...l,...k,lkp->...p", a, b, self.gamma)
        ba = np.einsum("...l,...k,lkp->...p", b, a, self.gamma)
        # float addition commutes, so this is exactly symmetric in a and b
        return 0.5 * (ab + ba)

    def regular_representation(self, a) -> np.ndarray:
        """Matrix ``M`` with ``M @ x == mul(a, x)``."""
        a = self._coerce(a)
        return np.einsum("...l,lkp->...pk", a, self.gamma)

    def invert(self, a) -> np.ndarray:
        a = self._coerce(a)
        if a.ndim != 1:
            raise DimensionMismatch("invert expects a single element")
        rep = self.regular_representation(a)
        if is_degenerate(rep):
            raise NotInvertible(f"element {a.tolist()} is a zero divisor or zero")
        return _refined_solve(rep, self.one())

    def gamma_matrix(self, p: int) -> np.ndarray:
        """``Gamma^p``, the matrix ``(gamma[l, k, p])`` over ``l, k``."""
        return np.array(self.gamma[:, :, p])

    def eta(self, p: int | None = None) -> np.ndarray:
        """Inverse of ``Gamma^p``; defaults to the certified ``ptilde``."""
        if p is None or p == self.ptilde:
            return self.eta_ptilde
        if not 0 <= p < self.m:
            raise Condition2Violated(f"ptilde={p} out of range for m={self.m}")
        mat = self.gamma_matrix(p)
        if is_degenerate(mat):
            raise Condition2Violated(f"Gamma^{p} is singular and cannot serve as ptilde")
        return np.linalg.inv(mat)

    def summary(self) -> dict:
        return {
            "m": self.m,
            "ptilde": self.ptilde,
            "det_gamma": [float(d) for d in self.gamma_dets],
            "nondegenerate": [not is_degenerate(self.gamma_matrix(p)) for p in range(self.m)],
            "basis_inverses": [[float(v) for v in row] for row in self.basis_inverses],
        }


def _refined_solve(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    x = np.linalg.solve(mat, rhs)
    x += np.linalg.solve(mat, rhs - mat @ x)
    return x


def _select_ptilde(gamma: np.ndarray) -> tuple[int | None, np.ndarray]:
    m = gamma.shape[0]
    dets = np.array([np.linalg.det(gamma[:, :, p]) for p in range(m)])
    best, best_score = None, -np.inf
    for p in range(m):
        mat = gamma[:, :, p]
        if is_degenerate(mat):
            continue
        score = abs(dets[p]) / np.linalg.norm(mat, 2) ** m
        if best is None or score > best_score * (1 + 1e-12):
            best, best_score = p, score
    return best, dets


def validate_algebra(tensor: StructureTensor, ptilde: int | None = None) -> Algebra:
    """Check the algebra axioms and basis conditions, returning an :class:`Algebra`.

    Checks run in order: commutativity, identity, associativity, invertibility
    of every basis element, existence of a nondegenerate ``Gamma^p``.  The
    first failure raises.  ``ptilde`` overrides the automatic choice of the
    best-conditioned ``Gamma^p`` after a nondegeneracy check.
    """
    g = tensor.gamma
    m = tensor.m
    scale = max(1.0, float(np.max(np.abs(g))))

    diff = np.abs(g - g.transpose(1, 0, 2))
    bad = np.argwhere(diff > 1e-12 * scale)
    if bad.size:
        raise CommutativityViolated(*map(int, bad[0]))

    ident = np.abs(g[0] - np.eye(m))
    bad = np.argwhere(ident > 1e-12 * scale)
    if bad.size:
        raise IdentityMissing(*map(int, bad[0]))

    left = np.einsum("lkr,rqp->lkqp", g, g)
    right = np.einsum("kqr,lrp->lkqp", g, g)
    bad = np.argwhere(np.abs(left - right) > 1e-10 * scale**2)
    if bad.size:
        raise AssociativityViolated(*map(int, bad[0]))

    inverses = np.zeros((m, m))
    one = np.eye(m)[0]
    for k in range(m):
        rep = g[k].T
        if is_degenerate(rep):
            raise Condition1Violated(k)
        inv = _refined_solve(rep, one)
        if np.max(np.abs(rep @ inv - one)) > 1e-12 * scale:
            raise Condition1Violated(k)
        inverses[k] = inv

    auto, dets = _select_ptilde(g)
    if auto is None:
        raise Condition2Violated()
    if ptilde is None:
        ptilde = auto
    elif not 0 <= ptilde < m or is_degenerate(g[:, :, ptilde]):
        raise Condition2Violated(f"requested ptilde={ptilde} is not a nondegenerate Gamma^p")

    return Algebra(
        tensor=tensor,
        basis_inverses=_readonly(inverses),
        ptilde=int(ptilde),
        eta_ptilde=_readonly(np.linalg.inv(g[:, :, ptilde])),
        gamma_dets=_readonly(dets),
    )
