"""Cohomology tables of line bundles and of their sums and exterior powers.

Run: python3 demos/02_line_bundle_cohomology.py
"""
from monadforge import LineBundleSum, Space, exterior_power_sum, kunneth_h, sum_h
from monadforge.cohomology import vanishing_region_check

X = Space((1, 1))
for p in [(1, 1), (-2, 0), (-2, -2), (-1, 3)]:
    table = kunneth_h(X, p)
    print(f"O{p}: h = {list(table)}  chi = {table.euler_characteristic()}")

G = LineBundleSum([((-1, 0), 2), ((0, -1), 2)])
print("G =", G, " h(G) =", list(sum_h(X, G)))
W = exterior_power_sum(G, 2)
print("wedge^2 G =", W, " rank", W.rank)

# the vanishing check reports what the engine finds, including counterexamples
chk = vanishing_region_check(Space((2, 1)), (0, 2))
print("P2 x P1, O(0,-2):", list(chk.table), "discrepancies:", chk.discrepancies)
