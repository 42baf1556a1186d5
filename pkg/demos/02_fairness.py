"""Allocations, base-polytope membership, and the fairness characterisations.

Run:  python demos/02_fairness.py
"""

from fractions import Fraction as F

import dualmod as dm

p3 = dm.DualModularInstance(
    ground=dm.GroundSet(("1", "2", "3")),
    f=dm.EdgesInside(((0, 1, F(1)), (1, 2, F(1)))),
    g=dm.Linear((F(1), F(1), F(1))),
)
dec = dm.density_decomposition(p3)
print("target density vector:", dec.rho_star)

# A single permutation induces a vertex allocation: exact marginals in
# arrival order.  It is feasible but lopsided.
sigma = dm.Permutation((0, 1, 2))
vertex = dm.Allocation(x=dm.vertex(p3.f, sigma), y=dm.vertex(p3.g, sigma))
print("vertex allocation:", vertex.x, vertex.y)
print("feasible:", dm.check_base_membership(p3, vertex).both)

report = dm.is_locally_maximin(p3, vertex)
print("locally maximin:", report.is_locally_maximin)
v = report.first_violation
print(f"  violated at threshold {v.rho}: level set {p3.ground.labels_of(v.mask)} "
      f"holds {v.reward_slack} more reward than its worst case")

# The even split hits every level-set bound exactly.
fair = dm.Allocation(x=(F(2, 3),) * 3, y=(F(1),) * 3)
print("even split locally maximin:", dm.is_locally_maximin(p3, fair).is_locally_maximin)

# Lexicographic comparison of sorted density vectors: the fair vector is
# minimal, the vertex one strictly worse.
rho_vertex = dm.induced_densities(vertex)
print("lex order fair vs vertex:", dm.lex_compare(dec.rho_star, rho_vertex))

full = dm.equivalence_report(p3, fair, dec)
print("density agreement:", full.densities_match,
      "| locally maximin:", full.locally_maximin,
      "| two views agree:", full.agree)

# The same fair allocation minimises every divergence at once.
for kind in (dm.QUADRATIC, dm.ENTROPY_KL, dm.HockeyStick(F(1, 2))):
    value = dm.objective(p3, fair, kind)
    optimum = dm.optimal_objective(dec, p3, kind)
    print(f"objective {kind.name}: {value} (closed-form optimum {optimum})")
