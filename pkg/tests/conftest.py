import random
from fractions import Fraction as Fr

import pytest

from mmk import build_group, make_family, resolve

A3_COLUMNS = [
    (0, Fr(3, 4), Fr(1, 2), Fr(1, 4)),
    (0, Fr(1, 2), Fr(1), Fr(1, 2)),
    (0, Fr(-3, 4), Fr(-1, 2), Fr(-1, 4)),
]

# ray indices in the resolved A3 fan: e1, e2, tau1, tau2, tau3
E1, E2, T1, T2, T3 = range(5)
SIGMA1 = (T1, T2)
SIGMA2 = (T2, T3)


def matrix_from_columns(cols):
    return [[c[i] for c in cols] for i in range(len(cols[0]))]


@pytest.fixture
def a3_group():
    return build_group(2, [(4, [3, 1])])


@pytest.fixture
def a3_fan(a3_group):
    return resolve(a3_group)[0]


@pytest.fixture
def a3_family(a3_fan):
    return make_family(a3_fan, matrix_from_columns(A3_COLUMNS))


@pytest.fixture
def a4_group():
    return build_group(2, [(5, [3, 2])])


@pytest.fixture
def pm_group():
    return build_group(4, [(2, [1, 1, 1, 1])])


def random_cyclic_group(rng, orders=range(2, 9), dims=(2, 3)):
    n = rng.choice(list(dims))
    r = rng.choice(list(orders))
    w = [rng.randrange(r) for _ in range(n - 1)]
    w.append((-sum(w)) % r)
    return build_group(n, [(r, w)])


def random_generic_theta(rng, r):
    from mmk.gnat import vanishing_subset
    while True:
        rest = [Fr(rng.randint(-12, 12), rng.randint(1, 3)) for _ in range(r - 1)]
        theta = [-sum(rest)] + rest
        if vanishing_subset(theta) is None:
            return theta


@pytest.fixture
def rng():
    return random.Random(20240601)
