"""Existence inequalities, monad files and the Macaulay2 export.

Run: python3 demos/06_existence_and_files.py
"""
import tempfile
from pathlib import Path

from monadforge import PairedSpaceParams, build_homogenized_monad, existence_conditions
from monadforge import cas, monadfile

print(existence_conditions("floystad", k=2, a=1, b=4, c=1))
print(existence_conditions("floystad", k=3, a=3, b=4, c=2))
for mode in ("stated", "kunneth"):
    v = existence_conditions("p1power", n=2, alpha=1, beta=8, gamma=1, N_mode=mode)
    print(f"{mode}: N = {v.N}, {v}")

M = build_homogenized_monad(PairedSpaceParams((1,), 1))
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "monad.json"
    monadfile.write(M, path)
    text = path.read_text()
    print(text)
    assert monadfile.dumps(monadfile.read(path)) == text
print(cas.export_macaulay2(M))
