from fractions import Fraction as Fr
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from mmk.errors import ResourceGuardError
from mmk.grp import build_group
from mmk.mckay import (Pattern, Stability, build_mckay, check_stability,
                       closed_subsets, components, is_closed, to_dot,
                       validate_pattern)

X, Y = 0, 1


def brute_closed(pattern):
    out = []
    for size in range(pattern.r + 1):
        for s in combinations(range(pattern.r), size):
            if is_closed(pattern, s):
                out.append(s)
    return sorted(out, key=lambda t: (len(t), t))


def test_a3_quiver(a3_group):
    q = build_mckay(a3_group)
    assert [q.head(i, X) for i in range(4)] == [1, 2, 3, 0]
    assert [q.head(i, Y) for i in range(4)] == [3, 0, 1, 2]
    for i, j in q.arrows():
        w = q.weight(i, j)
        assert sum(w) == 0 and w.count(1) == 1 and w.count(-1) == 1


def test_trivial_quiver():
    q = build_mckay(build_group(2, []))
    assert q.r == 1 and len(q.arrows()) == 2
    assert q.weight(0, 0) == (0,)


def test_pm_quiver(pm_group):
    q = build_mckay(pm_group)
    assert sorted((i, q.head(i, j)) for i, j in q.arrows()) == \
        [(0, 1)] * 4 + [(1, 0)] * 4


def sigma1_pattern(g):
    return Pattern.from_arrows(g, [(0, X), (0, Y), (3, Y)])


def sigma2_pattern(g):
    return Pattern.from_arrows(g, [(1, X)])


def test_components(a3_group):
    assert components(sigma1_pattern(a3_group)) == [(0, 1, 2, 3)]
    assert components(sigma2_pattern(a3_group)) == [(0,), (1, 2), (3,)]
    empty = Pattern.from_arrows(a3_group, [])
    assert components(empty) == [(0,), (1,), (2,), (3,)]


def test_closed_subsets_sigma1(a3_group):
    proper = [s for s in closed_subsets(sigma1_pattern(a3_group))
              if 0 < len(s) < 4]
    assert sorted(proper) == sorted([(1,), (2,), (1, 2), (2, 3), (1, 2, 3)])


def test_closed_subsets_sigma2(a3_group):
    subsets = closed_subsets(sigma2_pattern(a3_group))
    assert len(subsets) == 12
    assert all(2 in s for s in subsets if 1 in s)


def test_closed_subsets_empty_pattern(a3_group):
    assert len(closed_subsets(Pattern.from_arrows(a3_group, []))) == 16


def test_closed_subsets_guard():
    g = build_group(2, [(17, [1, 16])])
    with pytest.raises(ResourceGuardError):
        closed_subsets(Pattern.from_arrows(g, []))


def test_stability(a3_group):
    theta = [-3, 1, 1, 1]
    assert check_stability(sigma1_pattern(a3_group), theta) is Stability.STABLE
    assert check_stability(sigma2_pattern(a3_group), theta) is Stability.UNSTABLE
    assert check_stability(sigma1_pattern(a3_group), [0] * 4) is \
        Stability.SEMISTABLE


def test_validate_pattern(a3_group):
    assert validate_pattern(sigma1_pattern(a3_group))
    assert not validate_pattern(Pattern.from_arrows(a3_group, [(0, X), (1, Y)]))
    full = Pattern.from_matrix(a3_group, [[1, 1]] * 4)
    assert validate_pattern(full)


def test_dot_labels(a3_group):
    text = to_dot(a3_group, sigma1_pattern(a3_group))
    assert 'label="rho3: y"' in text
    assert text.count("->") == 3


patterns = st.integers(2, 8).flatmap(lambda r: st.tuples(
    st.just(r), st.lists(st.lists(st.booleans(), min_size=2, max_size=2),
                         min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(patterns)
def test_closed_subsets_match_brute_force(data):
    r, p = data
    g = build_group(2, [(r, [1, r - 1])])
    pattern = Pattern.from_matrix(g, p)
    subsets = closed_subsets(pattern)
    assert subsets == brute_closed(pattern)
    as_sets = {frozenset(s) for s in subsets}
    for a in as_sets:
        for b in as_sets:
            assert a | b in as_sets and a & b in as_sets


@settings(max_examples=60, deadline=None)
@given(patterns, st.lists(st.integers(-5, 5), min_size=8, max_size=8))
def test_unstable_survives_arrow_removal(data, raw):
    r, p = data
    g = build_group(2, [(r, [1, r - 1])])
    theta = [Fr(x) for x in raw[:r - 1]]
    theta = [-sum(theta)] + theta
    pattern = Pattern.from_matrix(g, p)
    if check_stability(pattern, theta) is not Stability.UNSTABLE:
        return
    smaller = Pattern.from_matrix(g, [[0, row[1]] for row in p])
    assert check_stability(smaller, theta) is not Stability.STABLE
