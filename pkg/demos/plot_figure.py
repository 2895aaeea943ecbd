"""Draw family_A(-2) in the chart z = 1, shading its simple triangles."""

import sys

from freearr import family_A, plot_svg

path = sys.argv[1] if len(sys.argv) > 1 else "a_minus2.svg"
svg = plot_svg(family_A(-2), (0, 0, 1))
with open(path, "w", encoding="utf-8") as fh:
    fh.write(svg)
print(f"wrote {path}: {svg.count('<line')} lines, {svg.count('simple-triangle')} shaded triangle(s)")
