"""Gnat families on a toric resolution and their distinguished fibers.

A family is the matrix b[i][k]: the sheaf attached to rho_i is
O(-sum_k b[i][k] E_k). Multiplication by x_j from rho_i to rho_{k(i,j)}
vanishes to order c(i, j, k) = b[i][k] + v_{g_k, j} - b[k(i,j)][k] along E_k,
and the reductor condition asks that every c be a nonnegative integer.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InternalError, UsageError, ValidationError, guard_limit
from .exactlin import PolyCone, dot, rank, solve, vec
from .grp import char_pairing
from .mckay import Pattern, build_mckay, components, escaping_arrow, theta_of


@dataclass(frozen=True)
class GnatFamily:
    fan: object
    b: tuple        # b[i][k], r rows of m fractions

    @property
    def group(self):
        return self.fan.group

    def column(self, k):
        return tuple(row[k] for row in self.b)


def reductor(fan, b, i, j, k):
    g = fan.group
    v = g.elements[fan.exceptional_elements[k]]
    return b[i][k] + v[j] - b[g.k_table[i][j]][k]


def reductor_violations(fan, b):
    g = fan.group
    bad = []
    for k in range(fan.m):
        for i in range(g.r):
            for j in range(g.n):
                c = reductor(fan, b, i, j, k)
                if c < 0 or c.denominator != 1:
                    bad.append((i, j, k, c))
    return bad


def make_family(fan, b):
    g = fan.group
    b = tuple(tuple(Fraction(x) for x in row) for row in b)
    if len(b) != g.r or any(len(row) != fan.m for row in b):
        raise ValidationError(
            f"family matrix must have shape {g.r}x{fan.m}")
    if any(b[0]):
        raise ValidationError("family must be normalized: b[0][k] = 0")
    bad = reductor_violations(fan, b)
    if bad:
        desc = ", ".join(f"c({i},{j},{k})={c}" for i, j, k, c in bad)
        raise ValidationError(f"reductor condition fails: {desc}")
    return GnatFamily(fan, b)


def canonical_family(fan):
    g = fan.group
    b = [[char_pairing(g, i, fan.exceptional_elements[k])
          for k in range(fan.m)] for i in range(g.r)]
    return make_family(fan, b)


def _cone_split(fan, cone):
    coords, excs = [], []
    for idx in cone:
        kind, t = fan.labels[idx]
        if kind == "coordinate":
            coords.append(t)
        elif kind == "exceptional":
            excs.append(t)
        else:
            raise UsageError(f"ray {idx} is neither a coordinate nor a junior ray")
    return coords, excs


def fiber(family, cone):
    """Pattern of the fiber over the distinguished point of ``cone``.

    ``cone`` is a tuple of ray indices of the family's fan.
    """
    fan = family.fan
    g = fan.group
    coords, excs = _cone_split(fan, cone)
    p = [[0] * g.n for _ in range(g.r)]
    for i in range(g.r):
        for j in range(g.n):
            if j in coords:
                continue
            if all(reductor(fan, family.b, i, j, k) == 0 for k in excs):
                p[i][j] = 1
    return Pattern.from_matrix(g, p)


def ray_fiber(family, k):
    return fiber(family, (family.fan.exceptional_ray(k),))


def fiber_monomials(family, cone):
    """Laurent monomials m_i with <ray, m_i> = b[i][k] on the rays of ``cone``."""
    fan = family.fan
    n = fan.n
    if len(cone) != n or rank([fan.rays[i] for i in cone]) != n:
        raise UsageError("fiber_monomials needs an n-dimensional simplicial cone")
    rows = [fan.rays[i] for i in cone]
    columns = [tuple(row[c] for row in rows) for c in range(n)]
    out = []
    for i in range(fan.group.r):
        rhs = []
        for idx in cone:
            kind, t = fan.labels[idx]
            rhs.append(family.b[i][t] if kind == "exceptional" else Fraction(0))
        out.append(solve(columns, rhs))
    return out


@dataclass(frozen=True)
class ThetaCone:
    """The cone in the stability space spanned by the weights of the
    supported arrows.

    Stability parameters are sum-zero vectors; the cone is stored in the
    coordinates (theta_1, ..., theta_{r-1}), which determine theta_0.
    """
    cone: PolyCone
    dim: int
    summands: int

    def contains(self, theta):
        theta = vec(theta)
        if sum(theta) != 0:
            raise UsageError("theta must sum to zero")
        return self.cone.contains(theta[1:])


def theta_cone(family, cone):
    pattern = fiber(family, cone)
    return theta_cone_of_pattern(build_mckay(family.group), pattern)


def theta_cone_of_pattern(quiver, pattern):
    r = quiver.r
    gens = [quiver.weight(i, j)[1:] for i, j, _ in pattern.support()]
    c = PolyCone(gens, r - 1)
    d = rank(gens)
    return ThetaCone(c, d, r - d)


def twist(family, ell, subset):
    """Exchange the submodule on ``subset`` and its quotient along E_ell."""
    g = family.group
    s = set(subset)
    if not s or len(s) >= g.r or not s <= set(range(g.r)):
        raise UsageError("twist needs a proper nonempty vertex subset")
    pattern = ray_fiber(family, ell)
    esc = escaping_arrow(pattern, s)
    if esc is not None:
        i, j, h = esc
        raise UsageError(
            f"subset {sorted(s)} is not closed in the fiber at E_{ell}: "
            f"arrow {i} -> {h} by coordinate {j} leaves it")
    b = [list(row) for row in family.b]
    for i in range(g.r):
        if 0 in s and i not in s:
            b[i][ell] += 1
        elif 0 not in s and i in s:
            b[i][ell] -= 1
    return make_family(family.fan, b)


def vanishing_subset(theta):
    """Return a proper nonempty subset on which theta vanishes, or None."""
    r = len(theta)
    for size in range(1, r):
        for s in combinations(range(r), size):
            if theta_of(theta, s) == 0:
                return s
    return None


def _wall_subset(h):
    """Vertex subset S with facet functional h equal to theta(S)."""
    r1 = len(h)
    vals = set(h)
    if vals <= {0, 1}:
        return tuple(i + 1 for i in range(r1) if h[i] == 1)
    if vals <= {0, -1}:
        return (0,) + tuple(i + 1 for i in range(r1) if h[i] == 0)
    raise InternalError(f"facet normal {h} is not of the form theta(S)")


def walk(family, theta, history=None):
    """Twist ``family`` until theta lies in the cone of every exceptional ray.

    For each exceptional divisor in turn a segment is drawn from an interior
    point of its current cone to theta; each twist crosses the first wall met
    along that segment, into the neighbouring chamber.
    """
    g = family.group
    theta = vec(theta)
    if len(theta) != g.r or sum(theta) != 0:
        raise ValidationError("theta must have length r and sum to zero")
    vanish = vanishing_subset(theta)
    if vanish is not None:
        raise ValidationError(f"theta is not generic: theta({list(vanish)}) = 0")
    target = theta[1:]
    cap = min(2 ** (2 * g.r), guard_limit("max_walk_steps"))
    steps = 0
    for ell in range(family.fan.m):
        tc = theta_cone(family, (family.fan.exceptional_ray(ell),))
        if tc.contains(theta):
            continue
        start = tc.cone.interior_point()
        t_cur = Fraction(0)
        while not tc.contains(theta):
            steps += 1
            if steps > cap:
                raise InternalError("walk exceeded its iteration cap")
            best_t, walls = None, []
            for h in tc.cone.facet_normals:
                ht = dot(h, target)
                if ht >= 0:
                    continue
                h0 = dot(h, start)
                t = h0 / (h0 - ht)
                if t < t_cur:
                    continue
                if best_t is None or t < best_t:
                    best_t, walls = t, [h]
                elif t == best_t:
                    walls.append(h)
            if best_t is None:
                raise InternalError("walk lost the segment towards theta")
            subset = min(_wall_subset(h) for h in walls)
            family = twist(family, ell, subset)
            if history is not None:
                history.append((ell, subset))
            t_cur = best_t
            tc = theta_cone(family, (family.fan.exceptional_ray(ell),))
    return family


def frac_law_holds(family):
    g = family.group
    fan = family.fan
    return all(
        (family.b[i][k]
         - char_pairing(g, i, fan.exceptional_elements[k])).denominator == 1
        for i in range(g.r) for k in range(fan.m))


def summand_count(pattern):
    return len(components(pattern))

