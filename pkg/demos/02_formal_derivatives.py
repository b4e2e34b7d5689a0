# %% [markdown]
# # Formal derivatives over an algebra
#
# We take |z|^2 on the complex plane and recover its two Wirtinger
# derivatives from the real gradient using a Gamma frame.

# %%
import numpy as np

from hyperconvex import builtin_algebra, validate_algebra
from hyperconvex.domains import ball
from hyperconvex.gamma import (
    bold_vector,
    default_gamma,
    formal_gradient,
    formal_hessian,
    linear_form_value,
    quadratic_form_value,
)

alg = validate_algebra(builtin_algebra("complex"))
frame = default_gamma(alg.m)
print(frame.matrix)

# %%
phi = ball(1, 2)
z = np.array([1.0, 2.0])
grad = formal_gradient(alg, frame, phi.gradient(z))
print("d/dz      ->", grad[0, 0])  # 1 - 2i
print("d/dconj z ->", grad[0, 1])  # 1 + 2i

# %% [markdown]
# The algebra-valued linear and quadratic forms collapse to real numbers
# (multiples of the identity) and match the real forms.

# %%
rng = np.random.default_rng(0)
bic = validate_algebra(builtin_algebra("bicomplex"))
fr = default_gamma(4)
dom = ball(2, 4)
w = rng.standard_normal(8)
x = rng.standard_normal(8)
g, h = dom.gradient(w), dom.hessian(w)
bold = bold_vector(bic, fr, x)
print(linear_form_value(bic, formal_gradient(bic, fr, g), bold), g @ x)
print(quadratic_form_value(bic, formal_hessian(bic, fr, h), bold), x @ h @ x)
