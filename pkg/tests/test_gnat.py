from fractions import Fraction as Fr
import random

import pytest

from mmk.errors import UsageError, ValidationError
from mmk.fan import initial_fan, resolve, star_subdivide
from mmk.gnat import (canonical_family, fiber, fiber_monomials, frac_law_holds,
                      make_family, ray_fiber, reductor, theta_cone, twist,
                      vanishing_subset, walk)
from mmk.grp import build_group
from mmk.mckay import (build_mckay, closed_subsets, components, support_rank,
                       validate_pattern)

from conftest import (A3_COLUMNS, E1, E2, SIGMA1, SIGMA2, T1, T2, T3,
                      matrix_from_columns, random_cyclic_group,
                      random_generic_theta)

X, Y = 0, 1


def exps(monomials):
    return [tuple(int(x) for x in m) for m in monomials]


def test_a3_family_valid(a3_family):
    assert a3_family.column(2) == A3_COLUMNS[2]


def test_a4_canonical_family(a4_group):
    fan = star_subdivide(initial_fan(a4_group), (Fr(3, 5), Fr(2, 5)))
    fam = canonical_family(fan)
    assert fam.column(0) == (0, Fr(3, 5), Fr(1, 5), Fr(4, 5), Fr(2, 5))
    assert make_family(fan, fam.b) == fam


def test_a3_canonical_family(a3_fan):
    fam = canonical_family(a3_fan)
    assert [fam.column(k) for k in range(3)] == [
        (0, Fr(3, 4), Fr(1, 2), Fr(1, 4)),
        (0, Fr(1, 2), 0, Fr(1, 2)),
        (0, Fr(1, 4), Fr(1, 2), Fr(3, 4))]


def test_shift_down_by_one_stays_valid(a3_fan):
    # hand check: c-values of column (0, -1/4, 1/2, 1/4) are 1,0 / 0,0 / 1,1 / 1,0
    b = matrix_from_columns(A3_COLUMNS)
    b[1][0] = Fr(-1, 4)
    fam = make_family(a3_fan, b)
    assert [[reductor(a3_fan, fam.b, i, j, 0) for j in (X, Y)]
            for i in range(4)] == [[1, 0], [0, 0], [1, 1], [1, 0]]


def test_shift_up_by_one_is_rejected_with_witness(a3_fan):
    b = matrix_from_columns(A3_COLUMNS)
    b[1][0] = Fr(7, 4)
    with pytest.raises(ValidationError) as info:
        make_family(a3_fan, b)
    assert "c(0,0,0)=-1" in str(info.value)


def test_non_integral_reductor_rejected(a3_fan):
    b = matrix_from_columns(A3_COLUMNS)
    b[1][0] = Fr(1, 4)
    with pytest.raises(ValidationError, match="c\\(0,0,0\\)=1/2"):
        make_family(a3_fan, b)


def test_unnormalized_family_rejected(a3_fan):
    b = matrix_from_columns(A3_COLUMNS)
    b[0][0] = Fr(1)
    with pytest.raises(ValidationError, match="normalized"):
        make_family(a3_fan, b)


def test_trivial_group_family():
    g = build_group(2, [])
    fan, _ = resolve(g)
    fam = canonical_family(fan)
    assert fam.b == ((),)
    assert exps(fiber_monomials(fam, fan.max_cones[0])) == [(0, 0)]


def test_fiber_sigma1(a3_family):
    p = fiber(a3_family, SIGMA1)
    assert p.support() == [(0, X, 1), (0, Y, 3), (3, Y, 2)]
    assert components(p) == [(0, 1, 2, 3)]
    assert exps(fiber_monomials(a3_family, SIGMA1)) == \
        [(0, 0), (1, 0), (0, 2), (0, 1)]


def test_fiber_sigma2(a3_family):
    p = fiber(a3_family, SIGMA2)
    assert p.support() == [(1, X, 2)]
    assert components(p) == [(0,), (1, 2), (3,)]
    assert exps(fiber_monomials(a3_family, SIGMA2)) == \
        [(0, 0), (3, -2), (4, -2), (2, -1)]


def test_fiber_pm(pm_group):
    fan, _ = resolve(pm_group)
    fam = canonical_family(fan)
    p = fiber(fam, fan.max_cones[0])
    assert p.support() == []
    assert len(components(p)) == 2


def test_fiber_monomials_needs_full_cone(a3_family):
    with pytest.raises(UsageError):
        fiber_monomials(a3_family, (T1,))


def test_theta_cones(a3_family):
    tc = theta_cone(a3_family, SIGMA1)
    assert (tc.dim, tc.summands) == (3, 1)
    tc = theta_cone(a3_family, SIGMA2)
    assert (tc.dim, tc.summands) == (1, 3)
    assert tc.contains([0, -1, 1, 0])


def test_ray_fiber_tau3(a3_family):
    p = ray_fiber(a3_family, 2)
    assert p.support() == [(1, X, 2), (1, Y, 0), (2, X, 3), (3, X, 0)]


def test_twist_example(a3_family):
    new = twist(a3_family, 2, [0])
    assert new.column(2) == (0, Fr(1, 4), Fr(1, 2), Fr(3, 4))
    assert new.column(0) == a3_family.column(0)


def test_twist_round_trip(a3_family):
    new = twist(a3_family, 2, [0])
    back = twist(new, 2, [1, 2, 3])
    assert back == a3_family


def test_twist_errors(a3_family):
    with pytest.raises(UsageError):
        twist(a3_family, 2, [0, 1, 2, 3])
    with pytest.raises(UsageError):
        twist(a3_family, 2, [])
    with pytest.raises(UsageError, match="leaves it"):
        twist(a3_family, 2, [1])


def test_walk_examples(a3_family, a3_fan):
    fam = walk(a3_family, [-3, 1, 1, 1])
    for k in range(3):
        assert theta_cone(fam, (a3_fan.exceptional_ray(k),)).contains([-3, 1, 1, 1])
    for c in a3_fan.max_cones:
        assert len(components(fiber(fam, c))) == 1
    fam2 = walk(a3_family, [3, -1, -1, -1])
    for k in range(3):
        assert theta_cone(fam2, (a3_fan.exceptional_ray(k),)).contains([3, -1, -1, -1])
    assert walk(fam, [-3, 1, 1, 1]) == fam


def test_walk_rejects_non_generic(a3_family):
    with pytest.raises(ValidationError, match="not generic"):
        walk(a3_family, [-2, 1, 1, 0])


def test_vanishing_subset():
    assert vanishing_subset([-2, 1, 1, 0]) == (3,)
    assert vanishing_subset([-3, 1, 1, 1]) is None


def all_cones(fan):
    return fan.all_cones()


def check_family(fam):
    fan = fam.fan
    g = fan.group
    quiver = build_mckay(g)
    for k in range(fan.m):
        for i in range(g.r):
            for j in range(g.n):
                c = reductor(fan, fam.b, i, j, k)
                assert c >= 0 and c.denominator == 1
    assert frac_law_holds(fam)
    for k in range(fan.m):
        assert len(components(ray_fiber(fam, k))) == 1
    cones = all_cones(fan)
    for c in cones:
        p = fiber(fam, c)
        assert validate_pattern(p)
        assert len(components(p)) == g.r - support_rank(quiver, p)
        for d in cones:
            if set(c) < set(d):
                small = set(fiber(fam, d).support())
                assert small <= set(p.support())


def test_random_families_properties():
    rng = random.Random(3)
    for _ in range(40):
        g = random_cyclic_group(rng)
        fan, _ = resolve(g)
        fam = canonical_family(fan)
        check_family(fam)
        theta = random_generic_theta(rng, g.r)
        walked = walk(fam, theta)
        check_family(walked)
        for k in range(fan.m):
            assert theta_cone(walked, (fan.exceptional_ray(k),)).contains(theta)


def test_random_twist_round_trips():
    rng = random.Random(5)
    done = 0
    while done < 40:
        g = random_cyclic_group(rng)
        fan, _ = resolve(g)
        if fan.m == 0:
            continue
        fam = canonical_family(fan)
        k = rng.randrange(fan.m)
        subsets = [s for s in closed_subsets(ray_fiber(fam, k))
                   if 0 < len(s) < g.r]
        s = rng.choice(subsets)
        new = twist(fam, k, s)
        comp = [i for i in range(g.r) if i not in s]
        assert twist(new, k, comp) == fam
        done += 1
