"""Boundary curves of the lemniscate regions and a Janowski disk.

Writes SVG and CSV files to ./demo_output and prints the extreme points.
The right vertex of each lemniscate lobe sits at sqrt(1 + c), the left one
at sqrt(1 - c); for c = 1 the left vertex closes into the cusp at 0.
"""

import math
from pathlib import Path

from lemni.regions import JanowskiDisk, Lemniscate, boundary_csv, boundary_svg, is_convex_boundary

out = Path("demo_output")
out.mkdir(exist_ok=True)

for c in (0.5, 0.2, 1.0):
    region = Lemniscate(c)
    name = f"lemniscate_c{c:g}"
    (out / f"{name}.svg").write_text(boundary_svg(region, 1024))
    (out / f"{name}.csv").write_text(boundary_csv(region, 1024))
    _, w = region.boundary(1024)
    print(f"c={c:<4} right vertex {w[0].real:.9f} (sqrt(1+c)={math.sqrt(1 + c):.9f})"
          f"  left vertex {w[512].real:.9f}  convex={is_convex_boundary(w)}")

# the Janowski disk for A=1, B=1/2 is centered at 2/3 with radius 2/3
disk = JanowskiDisk(1.0, 0.5)
(out / "janowski_A1_B0.5.svg").write_text(boundary_svg(disk, 512))
print(f"Janowski A=1, B=0.5: center {disk.center:.6f}, radius {disk.radius:.6f}")
print(f"files written to {out.resolve()}")
