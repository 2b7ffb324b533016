# %% [markdown]
# Hyperoctahedral orbits of planes
#
# The plane spanned by normalized indicators of disjoint index sets of
# sizes a and b generates an orbit under signed permutations. The orbit is a
# tight 2-fusion frame iff the invariant Delta vanishes.

# %%
from fusionframes.grassmann import check_tff
from fusionframes.orbits import (
    OrbitParams,
    delta,
    enumerate_orbit,
    f_value,
    f_value_bruteforce,
    orbit_frame,
    orbit_size,
    two_point_test,
)

p = OrbitParams(4, 1, 3)
D = enumerate_orbit(p)
print("closed-form size", orbit_size(p), "enumerated", len(D))

# %%
# closed forms against brute force at the two probes
for probe in ("e1", "e12"):
    print(probe, f_value(p, probe), f_value_bruteforce(D, probe))
print("Delta =", delta(p))

# %%
# the two-point test and the full TFF_2 check agree
print("two-point:", two_point_test(p).verdict, " TFF_2:", check_tff(orbit_frame(p), 2).verdict)
q = OrbitParams(5, 1, 1)
print("d=5 (1,1): Delta =", delta(q), " two-point:", two_point_test(q).verdict)
