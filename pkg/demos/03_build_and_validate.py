"""Build the band-matrix monads and check them.

Run: python3 demos/03_build_and_validate.py
"""
from monadforge import PairedSpaceParams, build_homogenized_monad, build_monad, display_invariants, validate

M = build_monad(PairedSpaceParams((1,), 1))
print("f =", M.f.to_strings())
print("g =", M.g.to_strings())
print("g.f =", (M.g @ M.f).to_strings())

H = build_homogenized_monad(PairedSpaceParams((1,), 1))
print("homogenized terms:", H.A, "|", H.B, "|", H.C)
for line in validate(H).records():
    print("  ", line)

inv = display_invariants(H)
for b in (inv.E, inv.T, inv.Q):
    print(f"{b.name}: rank {b.rank}, c1 {b.c1}, degree {b.degree}, slope {b.slope}")

# two pairs: composition still vanishes, but the literal twists are not a grading
M2 = build_monad(PairedSpaceParams((1, 1), 1))
rep = validate(M2, trials=5)
print("n=2:", rep.status, rep.failed)
