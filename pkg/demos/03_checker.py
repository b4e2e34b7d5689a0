# %% [markdown]
# # Checking boundary points
#
# A ball is strictly convex in every direction, while the signed quadric
# |z1|^2 - |z2|^2 = 1 has tangent directions along which it bends the wrong way.

# %%
import numpy as np

from hyperconvex import builtin_algebra, validate_algebra
from hyperconvex.checker import check_domain, classify_point
from hyperconvex.domains import ball, signed_quadric
from hyperconvex.gamma import default_gamma
from hyperconvex.oracle import cross_validate, geometric_probe

alg = validate_algebra(builtin_algebra("complex"))
frame = default_gamma(2)

# %%
for dom in (ball(2, 2), signed_quadric(2, 2, [1, -1])):
    rep = check_domain(alg, frame, dom, samples=32, seed=0)
    lams = [r.classification.min_eigenvalue for r in rep.points]
    print(f"{dom.name:15s} {rep.verdict.value:28s} min eig in [{min(lams):.3f}, {max(lams):.3f}]")

# %% [markdown]
# Look at one point of the quadric in detail and let the geometric probe
# confirm the negative direction by stepping inside the tangent plane.

# %%
quad = signed_quadric(2, 2, [1, -1])
w = np.array([1.0, 0.0, 0.0, 0.0])
cls = classify_point(alg, frame, quad, w)
print(cls.kind.value, cls.min_eigenvalue, cls.witness)
probe = geometric_probe(quad, cls.frame, seed=0, direction=cls.witness)
print(probe.outcome.value, probe.witness_value, cross_validate(cls, probe).value)
