# %% [markdown]
# # Comparing with the classical complex computation
#
# For C^n the same minimum can be computed from the Levi form using
# complex arithmetic only. The two numbers should agree to rounding.

# %%
from hyperconvex import builtin_algebra, validate_algebra
from hyperconvex.checker import classify_point
from hyperconvex.domains import polynomial, sample_boundary
from hyperconvex.gamma import default_gamma
from hyperconvex.zinoviev import min_tangent_form

alg = validate_algebra(builtin_algebra("complex"))
# x1^2 + y1^2 + x2^4 + y2^2 - 1
dom = polynomial(2, 2, [((2, 0, 0, 0), 1.0), ((0, 2, 0, 0), 1.0), ((0, 0, 4, 0), 1.0),
                        ((0, 0, 0, 2), 1.0), ((0, 0, 0, 0), -1.0)])

# %%
for bp in sample_boundary(dom, 8, seed=1):
    mine = classify_point(alg, default_gamma(2), dom, bp).min_eigenvalue
    ref, _ = min_tangent_form(dom.gradient(bp.w), dom.hessian(bp.w))
    print(f"{mine: .12f} {ref: .12f} {abs(mine - ref):.1e}")
