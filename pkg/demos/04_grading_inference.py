"""Find term twists that make the maps homogeneous, or a cycle proving none exist.

Run: python3 demos/04_grading_inference.py
"""
from monadforge import PairedSpaceParams, build_monad, grading_inference

for a, k in [((2,), 2), ((1, 1), 1)]:
    M = build_monad(PairedSpaceParams(a, k))
    res = grading_inference(M.f, M.g, M.space)
    if res.feasible:
        A, B, C = res.terms()
        print(f"a={a} k={k}: A = {A.merged()}, B = {B.merged()}, C = {C.merged()}")
    else:
        print(f"a={a} k={k}: infeasible, {res.witness}")
        for u, v, d in res.witness.steps:
            print(f"   {u[0]}{u[1]} -> {v[0]}{v[1]}  {d}")
