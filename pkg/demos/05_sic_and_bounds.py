# %% [markdown]
# Equi-chordal tight 2-fusion frames and the qubit SIC
#
# For N planes in R^d forming an ECTFF_2, the mean of e2 is forced and stays
# at most e1^2/4, with equality only at N = d^2/4 (an equi-isoclinic frame).
# The qubit SIC realizes that equality with four planes in R^4.

# %%
from fusionframes.bounds import (
    check_ectff2,
    design_to_sphere_map_check,
    ectff2_moments,
    qubit_sic,
    sic_to_eitff,
    simplex_equality,
)

for d, N in ((4, 4), (4, 10), (5, 6), (6, 12)):
    r = ectff2_moments(d, N)
    print(f"d={d} N={N}: e1,0={r.e10}, gap={r.gap}, {r.classification}")

# %%
P = sic_to_eitff(qubit_sic())
cert, rep = check_ectff2(P)
print("SIC planes:", cert.verdict, rep.classification)
mc, bound = simplex_equality(P)
print("min chordal^2", float(mc), "simplex bound", bound)
print("CHS image check:", design_to_sphere_map_check(P).verdict)
