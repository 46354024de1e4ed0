"""Degrees, slopes and normalization on a product of projective spaces.

Run: python3 demos/01_degrees_and_slopes.py
"""
from monadforge import Space, degree_of, intersection_number, normalize_twist, slope

# P^2 x P^1: the Chow ring is Z[g1, g2] / (g1^3, g2^2)
X = Space((2, 1))
print("space:", X, "dim =", X.dim)

# (g1 + g2)^3 = 3 g1^2 g2 after truncation
print("O(1,1)^3 =", intersection_number(X, [(1, 1)] * 3))

# degree against the all-ones polarization is linear in c1
for c1 in [(1, 0), (0, 1), (2, -1)]:
    print(f"deg O{c1} =", degree_of(X, c1))

# a rank-3 bundle with c1 = (-2,-2) on P1 x P1
Y = Space((1, 1))
print("slope =", slope(Y, (-2, -2), 3))
k = normalize_twist(Y, (-2, -2), 3)
print("normalizing twist k =", k, "-> deg after twist:", degree_of(Y, (-2 - 3 * k, -2)))
