from fractions import Fraction as Fr
import random

import pytest

from mmk.errors import UsageError, ValidationError
from mmk.exactlin import det
from mmk.fan import (check_fan, classify_fan, initial_fan, resolve,
                     star_subdivide)
from mmk.grp import build_group

from conftest import random_cyclic_group


def ray_sets(fan):
    return {frozenset(fan.rays[i] for i in c) for c in fan.max_cones}


def covers_simplex(fan):
    """Independent support check: the simplices cut from the max cones by the
    hyperplane sum = 1 have total volume equal to the standard simplex."""
    total = sum(abs(det([fan.rays[i] for i in c])) for c in fan.max_cones)
    return total == 1


def test_initial_fan_a3(a3_group):
    fan = initial_fan(a3_group)
    assert fan.max_cones == ((0, 1),)
    assert abs(det(fan.lattice_basis)) == Fr(1, 4)


def test_initial_fan_trivial():
    fan = initial_fan(build_group(3, []))
    assert fan.lattice_basis == tuple(tuple(int(i == j) for j in range(3))
                                      for i in range(3))
    assert classify_fan(fan)["smooth"]


def test_initial_fan_pm(pm_group):
    fan = initial_fan(pm_group)
    assert len(fan.max_cones) == 1
    assert abs(det(fan.lattice_basis)) == Fr(1, 2)


def test_a4_single_subdivision(a4_group):
    fan = star_subdivide(initial_fan(a4_group), (Fr(3, 5), Fr(2, 5)))
    v = (Fr(3, 5), Fr(2, 5))
    assert ray_sets(fan) == {frozenset({(1, 0), v}), frozenset({v, (0, 1)})}
    flags = classify_fan(fan)
    assert not flags["relative_minimal_model"]


def test_a3_resolution(a3_group):
    fan, history = resolve(a3_group)
    assert history == [(Fr(3, 4), Fr(1, 4)), (Fr(1, 2), Fr(1, 2)),
                       (Fr(1, 4), Fr(3, 4))]
    e1, e2 = (1, 0), (0, 1)
    t1, t2, t3 = history
    assert ray_sets(fan) == {frozenset(s) for s in
                             [(e1, t1), (t1, t2), (t2, t3), (t3, e2)]}
    assert classify_fan(fan) == {"simplicial": True, "smooth": True,
                                 "crepant": True,
                                 "relative_minimal_model": True}


def test_interior_point_splits_into_n_cones():
    g = build_group(3, [(3, [1, 1, 1])])
    fan = star_subdivide(initial_fan(g), (Fr(1, 3),) * 3)
    assert len(fan.max_cones) == 3
    assert covers_simplex(fan)


def test_pm_resolution(pm_group):
    fan, history = resolve(pm_group)
    assert history == []
    assert classify_fan(fan) == {"simplicial": True, "smooth": False,
                                 "crepant": True,
                                 "relative_minimal_model": True}


def test_subdivision_errors(a3_group):
    fan = initial_fan(a3_group)
    with pytest.raises(ValidationError):
        star_subdivide(fan, (Fr(1, 3), Fr(2, 3)))    # not in N_G
    with pytest.raises(ValidationError):
        star_subdivide(fan, (Fr(-1, 4), Fr(5, 4)))   # outside support
    with pytest.raises(ValidationError):
        star_subdivide(fan, (1, 0))                   # existing ray
    with pytest.raises(ValidationError):
        star_subdivide(fan, (Fr(3, 2), Fr(1, 2)))     # not primitive


def test_bad_junior_order(a3_group):
    with pytest.raises(UsageError):
        resolve(a3_group, [1, 2])


def test_overlapping_cones_rejected(a3_group):
    fan = initial_fan(a3_group)
    bad = fan.__class__(group=fan.group, lattice_basis=fan.lattice_basis,
                        rays=fan.rays + ((Fr(1, 2), Fr(1, 2)),),
                        labels=fan.labels + (("point", 2),),
                        max_cones=((0, 1), (0, 2)))
    with pytest.raises(ValidationError):
        check_fan(bad)


def test_random_resolutions_smooth_and_covering():
    rng = random.Random(7)
    for _ in range(60):
        g = random_cyclic_group(rng, orders=range(2, 13))
        fan, history = resolve(g)
        flags = classify_fan(fan)
        assert flags["smooth"] and flags["relative_minimal_model"]
        assert covers_simplex(fan)
        assert len(fan.rays) == g.n + len(history)


def test_ray_set_independent_of_order():
    rng = random.Random(11)
    for _ in range(25):
        g = random_cyclic_group(rng)
        fan, _ = resolve(g)
        order = [fan.exceptional_elements[k] for k in range(fan.m)]
        rng.shuffle(order)
        other, _ = resolve(g, order)
        assert set(other.rays) == set(fan.rays)
        if g.n == 2:
            assert ray_sets(other) == ray_sets(fan)


def test_subdivision_adds_one_ray_and_keeps_support():
    g = build_group(3, [(7, [1, 2, 4])])
    fan = initial_fan(g)
    for idx in [1, 2, 4]:
        before = len(fan.rays)
        fan = star_subdivide(fan, g.elements[idx])
        assert len(fan.rays) == before + 1
        assert covers_simplex(fan)
