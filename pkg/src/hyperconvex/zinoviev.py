"""Reference evaluator for the classical complex case (dimension 2 over the reals).

Works directly with Python/numpy complex numbers and Wirtinger derivatives,
sharing nothing with the structure-constant machinery, so it can be used to
cross-check the general checker on domains in C^n.
"""

from __future__ import annotations

import numpy as np

__all__ = ["wirtinger_gradient", "wirtinger_hessian", "levi_form", "complex_tangent_basis", "min_tangent_form"]


def wirtinger_gradient(grad) -> np.ndarray:
    """``d phi / d z_j = (phi_x - i phi_y) / 2`` from the real gradient ordered (x_1, y_1, x_2, ...)."""
    g = np.asarray(grad, dtype=float).reshape(-1, 2)
    return 0.5 * (g[:, 0] - 1j * g[:, 1])


def wirtinger_hessian(hess) -> np.ndarray:
    """Second derivatives in the variables ``(z_1..z_n, conj z_1..conj z_n)``, shape ``(2n, 2n)``."""
    h = np.asarray(hess, dtype=float)
    n = h.shape[0] // 2
    xx = h[0::2, 0::2]
    yy = h[1::2, 1::2]
    xy = h[0::2, 1::2]  # d2/dx_j dy_k
    yx = h[1::2, 0::2]  # d2/dy_j dx_k
    zz = 0.25 * (xx - yy - 1j * (xy + yx))
    zzbar = 0.25 * (xx + yy + 1j * (xy - yx))  # d2 / dz_j dconj(z_k)
    out = np.empty((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = zz
    out[:n, n:] = zzbar
    out[n:, :n] = zzbar.T
    out[n:, n:] = zz.conj()
    return out


def levi_form(whess: np.ndarray, s) -> float:
    """``sum_{j,k<=2n} phi_{jk} s_j s_k`` with ``s_{n+j} = conj(s_j)``."""
    s = np.asarray(s, dtype=complex)
    ext = np.concatenate([s, s.conj()])
    val = ext @ whess @ ext
    return float(val.real)


def complex_tangent_basis(grad) -> np.ndarray:
    """Orthonormal basis (columns) of ``{s in C^n : sum_j dphi/dz_j s_j = 0}``."""
    v = wirtinger_gradient(grad)[None, :]
    _, sv, vh = np.linalg.svd(v)
    rank = int(sv[0] > 1e-10 * max(1.0, sv[0]))
    return vh[rank:].conj().T


def min_tangent_form(grad, hess) -> tuple[float | None, np.ndarray | None]:
    """Minimum of the form over unit complex tangent vectors, and a minimiser.

    Returns ``(None, None)`` when the complex tangent space is trivial.
    """
    u = complex_tangent_basis(grad)
    k = u.shape[1]
    if k == 0:
        return None, None
    wh = wirtinger_hessian(hess)
    # real coordinates (Re t, Im t) of t in C^k
    units = np.eye(2 * k)
    vecs = [u @ (e[:k] + 1j * e[k:]) for e in units]
    q = np.empty((2 * k, 2 * k))
    for a in range(2 * k):
        for b in range(2 * k):
            q[a, b] = 0.5 * (levi_form(wh, vecs[a] + vecs[b]) - levi_form(wh, vecs[a]) - levi_form(wh, vecs[b]))
    evals, evecs = np.linalg.eigh(q)
    t = evecs[:k, 0] + 1j * evecs[k:, 0]
    return float(evals[0]), u @ t
