# %% [markdown]
# Searching for tight 2-fusion frames among orbit unions
#
# A union of orbits is a TFF_2 iff sum_i N_i Delta_i = 0. Single orbits
# solve this along explicit scaling families; odd d needs two orbits.

# %%
from fusionframes.orbits import (
    OrbitUnion,
    delta,
    scaling_family,
    search_range,
    solve_single_orbit,
    union_condition,
)

print("d=4:", solve_single_orbit(4), " d=13:", solve_single_orbit(13))
for s in range(1, 4):
    p = scaling_family(13, 3, 5, s)
    print(f"s={s}: d={p.d}, (a,b)=({p.a},{p.b}), Delta={delta(p)}")

# %%
found = search_range(range(5, 34, 2))
for d, sols in found.items():
    if sols:
        print(d, [s.parts for s in sols])

# %%
u = OrbitUnion(7, [(1, 3), (3, 3)])
uc = union_condition(u)
print("union", u.to_json(), "terms", [(n, str(dl)) for _, _, n, dl in uc.terms], "->", uc.passed)
