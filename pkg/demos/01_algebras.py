# %% [markdown]
# # Commutative algebras from structure constants
#
# An algebra of dimension m is just a tensor gamma[l, k, p] with
# e_l * e_k = sum_p gamma[l, k, p] e_p. Here we build the built-ins,
# multiply a few elements and look at what validation reports.

# %%
import numpy as np

from hyperconvex import builtin_algebra, validate_algebra
from hyperconvex.errors import AlgebraError

# %%
for name in ("complex", "hyperbolic", "bicomplex", "dual"):
    try:
        alg = validate_algebra(builtin_algebra(name))
    except AlgebraError as exc:
        print(f"{name:11s} rejected: {type(exc).__name__}: {exc}")
        continue
    info = alg.summary()
    print(f"{name:11s} m={alg.m} ptilde={info['ptilde']} det(Gamma^p)={np.round(info['det_gamma'], 3)}")

# %% [markdown]
# Multiplication and inverses. In the complex numbers (1 + 2i)(3 - i) = 5 + 5i.

# %%
c = validate_algebra(builtin_algebra("complex"))
a = np.array([1.0, 2.0])
b = np.array([3.0, -1.0])
print(c.mul(a, b))
print(c.mul(a, c.invert(a)))

# %% [markdown]
# The regular representation turns multiplication by `a` into a matrix.

# %%
print(c.regular_representation(a))
print(c.regular_representation(a) @ b)

# %% [markdown]
# Products of algebras: the complex numbers tensored with themselves
# give a four-dimensional algebra equal to the bicomplex numbers up to basis order.

# %%
cc = validate_algebra(builtin_algebra("direct-product(complex,complex)"))
print(cc.m, cc.summary()["ptilde"])
