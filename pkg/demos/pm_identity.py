"""C^4 / {+1, -1}: no junior elements, so the only model is the quotient
itself and the unique family has a decomposable fiber at the origin."""
from mmk import build_group, resolve
from mmk.fan import classify_fan
from mmk.gnat import canonical_family, fiber
from mmk.grp import age, junior_elements
from mmk.mckay import components
from mmk.moduli import quotient_fan


def main():
    g = build_group(4, [(2, [1, 1, 1, 1])])
    print("ages:", [age(g, e) for e in range(g.r)],
          "juniors:", junior_elements(g))
    fan, _ = resolve(g)
    print("fan:", fan.max_cones, classify_fan(fan))
    fam = canonical_family(fan)
    p = fiber(fam, fan.max_cones[0])
    print("fiber at the origin chart:", p.support(),
          "summands", len(components(p)))
    rep = quotient_fan(fan, fam)
    print("verdict", rep.verdict.value, "witnesses", rep.witnesses)


if __name__ == "__main__":
    main()
