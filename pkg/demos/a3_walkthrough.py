"""The A3 singularity C^2 / Z/4 with weights (3, 1)/4.

Starts from a family that is not fine, shows its decomposable fiber and the
coarser quotient fan, then walks to theta = (-3, 1, 1, 1) and checks again.
"""
from fractions import Fraction as Fr

from mmk import build_group, make_family, resolve
from mmk.gnat import fiber, fiber_monomials, theta_cone, walk
from mmk.mckay import components, monomial_label, variable_names
from mmk.moduli import phi_map, psi_matrix, quotient_fan

COLUMNS = [
    (0, Fr(3, 4), Fr(1, 2), Fr(1, 4)),
    (0, Fr(1, 2), Fr(1), Fr(1, 2)),
    (0, Fr(-3, 4), Fr(-1, 2), Fr(-1, 4)),
]


def show(x):
    return str(x) if not isinstance(x, tuple) else "(" + ", ".join(map(str, x)) + ")"


def describe(fam, fan):
    names = variable_names(2)
    for ids in fan.max_cones:
        p = fiber(fam, ids)
        arrows = [f"{names[j]}:{i}->{h}" for i, j, h in p.support()]
        mons = [monomial_label(m, names) for m in fiber_monomials(fam, ids)]
        print(f"  cone {ids}: support {arrows}")
        print(f"    components {components(p)}, "
              f"summands {theta_cone(fam, ids).summands}, monomials {mons}")
    rep = quotient_fan(fan, fam)
    print(f"  verdict {rep.verdict.value}, contracted rays {rep.contracted_rays}")
    cones = [[show(r) for r in c.extreme_rays] for c in rep.max_cones]
    print(f"  Sigma_F cones {cones}")


def main():
    g = build_group(2, [(4, [3, 1])])
    fan, _ = resolve(g)
    print("rays:", [show(r) for r in fan.rays])
    b = [[c[i] for c in COLUMNS] for i in range(g.r)]
    fam = make_family(fan, b)

    print("\nstarting family")
    describe(fam, fan)

    print("\nphi table (t-exponents):")
    for (i, j), (_, exps) in sorted(phi_map(fam).items(), key=lambda t: (t[0][1], t[0][0])):
        print(f"  {'xy'[j]}_{i} -> {show(exps)}")
    print("psi at grading orders 4 (one row per divisor):",
          psi_matrix(fam, [4, 4, 4]))

    history = []
    walked = walk(fam, [-3, 1, 1, 1], history)
    print("\nwalk to theta = (-3, 1, 1, 1): twists", history)
    describe(walked, fan)


if __name__ == "__main__":
    main()
