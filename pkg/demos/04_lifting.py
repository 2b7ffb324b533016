# %% [markdown]
# Lifting polygon designs through a fusion frame
#
# Placing a regular (s+1)-gon in every plane of a TFF_t gives a spherical
# design of strength min(s, 2t+1) on the ambient sphere.

# %%
from fusionframes.lifting import LiftSpec, certify_lift, lift, repair_disjointness
from fusionframes.orbits import OrbitParams, orbit_frame

F = orbit_frame(OrbitParams(4, 1, 3))
D = lift(LiftSpec(F, t=2, s=5, seed=7))
print(D.result.n, "points, strength", D.strength)

cert = certify_lift(D)
print("5-design:", cert.verdict, " degree-6 diagnostic passes:", cert.extra["diagnostic"]["passes"])

# %%
# with a fixed phase, antipodal hexagon vertices collide across planes
fixed = lift(LiftSpec(F, t=2, s=5, phase="fixed"))
R = repair_disjointness(fixed, seed=1)
print("after repair:", certify_lift(R).verdict)
