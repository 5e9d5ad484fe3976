"""The A4 singularity C^2 / Z/5 with weights (3, 2)/5.

Blowing up at v = (3/5, 2/5) first, the chart with v in slot 0 is C^2 / Z/3.
A family on that chart lifts through the round-down map, and the lifted
fiber fixes the coefficients along the second divisor.
"""
from fractions import Fraction as Fr

from mmk import build_group
from mmk.fan import initial_fan, star_subdivide
from mmk.gnat import canonical_family, fiber
from mmk.lift import (build_special_family, chart_context, classify_arrow,
                      lift_pattern, push_pattern)
from mmk.mckay import components


def main():
    g = build_group(2, [(5, [3, 2])])
    v = (Fr(3, 5), Fr(2, 5))
    fan1 = star_subdivide(initial_fan(g), v)
    canon1 = canonical_family(fan1)
    print("canonical column for v:", [str(x) for x in canon1.column(0)])
    base = fiber(canon1, (1, 2))
    print("fiber on the chart Cone(e2, v):", base.support(),
          "components", components(base))

    ctx = chart_context(g, v, 0)
    print("chart group order", ctx.chart_group.r,
          "xi basis", [[str(x) for x in xi] for xi in ctx.xi_basis])
    print("round-down of characters:", ctx.char_map)
    for i in range(g.r):
        print(f"  rho_{i}:", [classify_arrow(ctx, i, j) for j in range(g.n)])

    record = []
    fan, fam = build_special_family(g, [1, 4, 2, 3], record)
    for c, gl, lifted in record:
        print(f"chart of {[str(x) for x in c.v]} in slot {c.ell}:", gl.support())
        print("  lifted", lifted.support())
        if c.group == g and c.v == v and c.ell == 0:
            added = sorted(set(lifted.support()) - set(base.support()))
            print("  arrows beyond the first blow-up fiber:", added)
        print("  push(lift) recovers it:", push_pattern(c, lifted) == gl)
        assert lift_pattern(c, gl) == lifted
    print("special E2 column:  ", [str(x) for x in fam.column(1)])
    print("canonical E2 column:", [str(x) for x in canonical_family(fan).column(1)])


if __name__ == "__main__":
    main()
