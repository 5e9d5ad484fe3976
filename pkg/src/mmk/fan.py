"""Fans supported on the positive orthant of N_G.

Rays are stored in ambient Q^n coordinates, so the junior points v_g appear
literally and crepancy is "coordinate sum equals 1". ``lattice_basis`` is a
Z-basis of N_G = Z^n + sum Z v_g, used for lattice membership and smoothness.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import UsageError, ValidationError
from .exactlin import (PolyCone, det, hnf_basis, intersect_cones, is_face,
                       rank, solve, vec)
from .grp import junior_elements


def coordinate(j):
    return ("coordinate", j)


def exceptional(k):
    return ("exceptional", k)


@dataclass(frozen=True)
class Fan:
    group: object
    lattice_basis: tuple
    rays: tuple
    labels: tuple
    max_cones: tuple            # sorted tuples of ray indices
    exceptional_elements: tuple = field(default=())   # k -> group element id

    @property
    def n(self):
        return self.group.n

    @property
    def m(self):
        return len(self.exceptional_elements)

    def exceptional_ray(self, k):
        """Ray index of the k-th exceptional divisor."""
        return self.labels.index(exceptional(k))

    def ray_label(self, idx):
        return self.labels[idx]

    def cone(self, ray_ids):
        return PolyCone([self.rays[i] for i in ray_ids], self.n)

    def find_cone(self, ray_ids):
        key = tuple(sorted(ray_ids))
        try:
            return self.max_cones.index(key)
        except ValueError:
            raise UsageError(f"{key} is not a maximal cone of the fan") from None

    def lattice_coords(self, v):
        return solve(self.lattice_basis, vec(v))

    def all_cones(self):
        """Every cone of the fan (faces of maximal cones) as ray-index tuples.

        Only valid for simplicial fans, where faces are subsets of rays.
        """
        out = set()
        for c in self.max_cones:
            for size in range(len(c) + 1):
                out.update(combinations(c, size))
        return sorted(out, key=lambda t: (len(t), t))


def _lattice_basis(group):
    gens = [tuple(Fraction(int(i == j)) for j in range(group.n))
            for i in range(group.n)]
    gens += list(group.elements)
    basis, _ = hnf_basis(gens)
    return tuple(basis)


def check_fan(fan, new=None):
    """Raise ValidationError unless the cones are strongly convex and meet
    along common faces.

    With ``new`` (a set of max cones) only pairs involving a new cone are
    checked, for fans obtained from an already checked one.
    """
    cones = [fan.cone(c) for c in fan.max_cones]
    fresh = [new is None or ids in new for ids in fan.max_cones]
    for ids, c, f in zip(fan.max_cones, cones, fresh):
        if f and not c.is_pointed():
            raise ValidationError(f"cone {ids} is not strongly convex")
    for (i, a), (j, b) in combinations(enumerate(cones), 2):
        if not (fresh[i] or fresh[j]):
            continue
        inter = intersect_cones(a, b)
        if not (is_face(a, inter) and is_face(b, inter)):
            raise ValidationError(
                f"cones {fan.max_cones[i]} and {fan.max_cones[j]} do not meet "
                "in a common face")


def initial_fan(group):
    n = group.n
    rays = tuple(tuple(Fraction(int(i == j)) for j in range(n))
                 for i in range(n))
    return Fan(group=group, lattice_basis=_lattice_basis(group), rays=rays,
               labels=tuple(coordinate(j) for j in range(n)),
               max_cones=(tuple(range(n)),))


def is_lattice_point(fan, v):
    return all(c.denominator == 1 for c in fan.lattice_coords(v))


def _is_primitive(fan, v):
    g = 0
    for c in fan.lattice_coords(v):
        g = gcd(g, int(c))
    return g == 1


def _is_simplicial_cone(fan, ids):
    return rank([fan.rays[i] for i in ids]) == len(ids)


def star_subdivide(fan, v, check=True):
    """Star subdivision of a simplicial fan at the lattice point ``v``."""
    v = vec(v)
    n = fan.n
    if len(v) != n:
        raise ValidationError("subdivision point has wrong dimension")
    if not is_lattice_point(fan, v):
        raise ValidationError(f"{v} is not a point of N_G")
    if not _is_primitive(fan, v):
        raise ValidationError(f"{v} is not primitive in N_G")
    if v in fan.rays:
        raise ValidationError(f"{v} is already a ray of the fan")
    for ids in fan.max_cones:
        if len(ids) != n or not _is_simplicial_cone(fan, ids):
            raise UsageError("star_subdivide requires a simplicial fan")
    new_idx = len(fan.rays)
    cones = []
    hit = False
    for ids in fan.max_cones:
        coeffs = solve([fan.rays[i] for i in ids], v)
        if any(c < 0 for c in coeffs):
            cones.append(ids)
            continue
        hit = True
        for pos, c in enumerate(coeffs):
            if c > 0:
                cones.append(tuple(sorted(ids[:pos] + (new_idx,) + ids[pos + 1:])))
    if not hit:
        raise ValidationError(f"{v} lies outside the support of the fan")
    exc = fan.exceptional_elements
    try:
        g = fan.group.elements.index(v)
    except ValueError:
        g = None
    if g is not None and sum(v) == 1:
        label = exceptional(len(exc))
        exc = exc + (g,)
    else:
        label = ("point", new_idx)
    result = Fan(group=fan.group, lattice_basis=fan.lattice_basis,
                 rays=fan.rays + (v,),
                 labels=fan.labels + (label,), max_cones=tuple(sorted(cones)),
                 exceptional_elements=exc)
    if check:
        check_fan(result, set(cones) - set(fan.max_cones))
    return result


def classify_fan(fan):
    n = fan.n
    simplicial = all(_is_simplicial_cone(fan, ids) for ids in fan.max_cones)
    smooth = simplicial and all(
        len(ids) == n
        and abs(det([fan.lattice_coords(fan.rays[i]) for i in ids])) == 1
        for ids in fan.max_cones)
    crepant = all(sum(r) == 1 for r in fan.rays)
    expected = set(fan.rays[:n]) | {fan.group.elements[g]
                                     for g in junior_elements(fan.group)}
    rmm = simplicial and set(fan.rays) == expected and len(fan.rays) == len(expected)
    return {"simplicial": simplicial, "smooth": smooth, "crepant": crepant,
            "relative_minimal_model": rmm}


def resolve(group, junior_order=None, check=True):
    """Star-subdivide the initial fan at every junior point in order.

    Returns the fan and the list of points actually subdivided.
    """
    juniors = junior_elements(group)
    if junior_order is None:
        junior_order = juniors
    junior_order = list(junior_order)
    if sorted(junior_order) != sorted(juniors):
        raise UsageError(
            f"junior_order {junior_order} is not a permutation of the junior "
            f"elements {juniors}")
    fan = initial_fan(group)
    history = []
    for g in junior_order:
        v = group.elements[g]
        if v in fan.rays:
            continue
        fan = star_subdivide(fan, v, check=check)
        history.append(v)
    return fan, history
