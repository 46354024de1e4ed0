"""Global sections of the twisted kernel bundle and the vanishing scan.

Run: python3 demos/05_stability_scan.py
"""
from monadforge import (PairedSpaceParams, build_homogenized_monad, dual_kernel_h0_h1, h0_twisted_kernel,
                        hoppe_scan, simplicity_ingredients)

M = build_homogenized_monad(PairedSpaceParams((1,), 1))
for p in [(0, 0), (1, 0), (1, 1), (2, 2)]:
    print(f"h0(T{p}) =", h0_twisted_kernel(M, p))

scan = hoppe_scan(M, box=4, max_q=2)
for pw in scan.powers:
    print(f"wedge^{pw.q} T: rank {pw.rank}, slope {pw.slope}, normalizing twist {pw.k_norm}")
for q in (1, 2):
    cells = scan.by_q(q)
    done = sum(c.status == "verified-zero" for c in cells)
    print(f"q={q}: {done}/{len(cells)} cells verified zero")

d = dual_kernel_h0_h1(M, (-1, -1))
print("T*(-1,-1): h0 =", d.h0, "h1 =", d.h1)
for link in simplicity_ingredients(M, scan).links:
    print(f"[{link.status}] {link.name}: {link.detail}")
