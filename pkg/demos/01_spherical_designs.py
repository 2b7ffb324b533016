# %% [markdown]
# Spherical designs and the Gegenbauer test
#
# A finite set X on S^{d-1} is a t-design iff sum_{x,y} Q_l(<x,y>) = 0 for
# every 1 <= l <= t. Regular n-gons in the plane are (n-1)-designs.

# %%
from fractions import Fraction

import numpy as np

from fusionframes.sphere_designs import (
    WeightedPointSet,
    check_spherical_design_pairwise,
    check_weighted_design_moments,
    gegenbauer_sequence,
    regular_polygon,
)

# Q_l on S^3 at x = 1/2, exactly
print([str(q) for q in gegenbauer_sequence(4, 4, Fraction(1, 2))])

# %%
# the square has integer coordinates, so the check runs in exact mode
square = WeightedPointSet(np.array([[1, 0], [0, 1], [-1, 0], [0, -1]]))
cert = check_weighted_design_moments(square, 3)
print("square 3-design:", cert.verdict, "mode", cert.mode)
print("square 4-design:", check_weighted_design_moments(square, 4).verdict)

# %%
# the hexagon passes to degree 5 and fails at 6
hexagon = regular_polygon(np.eye(2), 6)
for t in (5, 6):
    c = check_spherical_design_pairwise(hexagon, t)
    print(f"hexagon t={t}: {c.verdict}, max residual {c.max_residual():.2e}")
