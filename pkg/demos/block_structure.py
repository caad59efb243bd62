"""Block decomposition of A_r, with every PIM cross-checked by linear algebra.

Run: python demos/block_structure.py [p] [r]
Writes one DOT file per block into ./blocks_dot/.
"""

import sys
import time
from pathlib import Path

from sl2hyper import block_decomposition, parse_tuple, pim_report
from sl2hyper.blocks import dot_graph

p = int(sys.argv[1]) if len(sys.argv) > 1 else 3
r = int(sys.argv[2]) if len(sys.argv) > 2 else 2

start = time.perf_counter()
reports = block_decomposition(p, r)
print(f"{len(reports)} blocks of A_{r} at p={p}, {time.perf_counter() - start:.2f}s")
print("total dimension", sum(rep.dim for rep in reports), "=", p ** (2 * r))
print("every brute-force check passed:", all(rep.ok for rep in reports))

by_w = {}
for rep in reports:
    by_w.setdefault(rep.w, []).append(rep.tuple.label)
for w, labels in sorted(by_w.items()):
    print(f"  w={w}: {len(labels)} blocks of dimension {2 ** w}")

# the largest block: Loewy layers of its biggest PIM
big = max(reports, key=lambda rep: rep.dim)
print("\nlargest block", big.tuple.label)
print(pim_report(big.tuple, big.pims[0].eps).to_text())

out = Path("blocks_dot")
out.mkdir(exist_ok=True)
for rep in reports:
    name = rep.tuple.label.replace(":", "_").replace(",", "-")
    (out / f"{name}.dot").write_text(dot_graph(rep.pims[0].eps, rep.tuple) + "\n")
print(f"\nwrote {len(reports)} DOT files to {out}/")

example = parse_tuple(",".join(["0:2"] * r), p) if p > 2 else parse_tuple(",".join(["0:1"] * r), p)
print("\nexample graph for", example.label)
print(dot_graph((0,) * r, example))
