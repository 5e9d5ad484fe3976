"""Exact rational linear algebra and polyhedral cones.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions.
Cones are converted between generator and halfspace form with the double
description method (the dual formulation of Fourier-Motzkin elimination),
using the algebraic adjacency test so that no redundant rays survive a step.
"""
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from .errors import ResourceGuardError, UsageError, guard_limit

ZERO = Fraction(0)


def vec(values):
    return tuple(Fraction(x) for x in values)


def dot(u, v):
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def is_zero(v):
    return not any(v)


def frac_part(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def common_denominator(vectors):
    d = 1
    for v in vectors:
        for x in v:
            d = lcm(d, Fraction(x).denominator)
    return d


def primitive(v):
    """Scale ``v`` to the primitive integral vector on the same ray."""
    v = vec(v)
    if is_zero(v):
        return v
    d = common_denominator([v])
    ints = [int(x * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints)


def rank(vectors):
    return len(row_echelon(vectors)[0])


def row_echelon(vectors):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    rows = [list(vec(v)) for v in vectors]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def solve(columns, rhs):
    """Solve ``sum_i x_i * columns[i] = rhs`` for a square nonsingular system."""
    n = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(rhs[i])]
           for i in range(n)]
    rows, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        raise UsageError("singular linear system")
    return tuple(row[n] for row in rows)


def det(rows):
    m = [list(vec(r)) for r in rows]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


# ---------------------------------------------------------------------------
# Hermite normal form


def hnf(rows, transform=False):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows of H (upper echelon, positive pivots, entries
    above a pivot reduced into ``[0, pivot)``). With ``transform=True`` also
    returns a unimodular U with ``U @ rows`` equal to H padded by zero rows;
    the trailing rows of U then span the integer left kernel.
    """
    a = [[int(x) for x in r] for r in rows]
    m = len(a)
    ncols = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]

    def combine(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    pr = 0
    for c in range(ncols):
        if pr == m:
            break
        while True:
            nz = [i for i in range(pr, m) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[pr], a[piv] = a[piv], a[pr]
            u[pr], u[piv] = u[piv], u[pr]
            for i in range(pr + 1, m):
                if a[i][c]:
                    combine(i, pr, a[i][c] // a[pr][c])
            if all(a[i][c] == 0 for i in range(pr + 1, m)):
                break
        if not a[pr][c]:
            continue
        if a[pr][c] < 0:
            a[pr] = [-x for x in a[pr]]
            u[pr] = [-x for x in u[pr]]
        for i in range(pr):
            if a[i][c]:
                combine(i, pr, a[i][c] // a[pr][c])
        pr += 1
    h = [tuple(r) for r in a[:pr]]
    if transform:
        return h, [tuple(r) for r in u]
    return h


def hnf_basis(vectors):
    """HNF basis of the lattice generated by ``vectors`` and its rank.

    Rational input is allowed: vectors are scaled by a common denominator,
    reduced, and scaled back.
    """
    vectors = [vec(v) for v in vectors]
    if not vectors:
        return [], 0
    d = common_denominator(vectors)
    h = hnf([[int(x * d) for x in v] for v in vectors])
    basis = [tuple(Fraction(x, d) for x in row) for row in h]
    return basis, len(basis)


def integer_kernel(rows):
    """Basis of ``{c in Z^m : sum_i c_i rows[i] = 0}``."""
    if not rows:
        return []
    d = common_denominator(rows)
    ints = [[int(Fraction(x) * d) for x in r] for r in rows]
    h, u = hnf(ints, transform=True)
    return hnf([row for row in u[len(h):]]) if len(h) < len(rows) else []


# ---------------------------------------------------------------------------
# Cones


def _check_dim(d):
    if d > guard_limit("max_ambient_dim"):
        raise ResourceGuardError(
            f"ambient dimension {d} exceeds guard "
            f"{guard_limit('max_ambient_dim')}")


def _int_primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _int_dot(u, v):
    return sum(a * b for a, b in zip(u, v) if a and b)


def _int_rank(rows):
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    rk = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk]
        for i in range(rk + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [p[c] * x - f * y for x, y in zip(m[i], p)]
        rk += 1
        if rk == len(m):
            break
    return rk


def _to_int(v):
    d = common_denominator([v])
    return _int_primitive([int(x * d) for x in v])


def _double_description(normals, d):
    """Generators of ``{y in Q^d : <a, y> >= 0 for a in normals}``.

    Returns ``(lineality, rays)``: a basis of the lineality space and the
    extreme rays of the pointed part, all primitive integral.
    """
    _check_dim(d)
    lin = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays = []    # list of (ray, frozenset of tight constraint indices)
    done = []
    normals = [_to_int(a) for a in normals]
    for idx, a in enumerate(normals):
        if not any(a):
            done.append(idx)
            rays = [(r, t | {idx}) for r, t in rays]
            continue
        vals = [_int_dot(a, l) for l in lin]
        k = next((i for i, x in enumerate(vals) if x), None)
        if k is not None:
            l = lin.pop(k)
            s = vals.pop(k)
            if s < 0:
                l, s = tuple(-x for x in l), -s
            lin = [_int_primitive([s * x - vi * y for x, y in zip(li, l)])
                   for li, vi in zip(lin, vals)]
            rays = [(_int_primitive([s * x - _int_dot(a, r) * y
                                     for x, y in zip(r, l)]), t | {idx})
                    for r, t in rays]
            rays.append((l, frozenset(done)))
        else:
            pos, zero, neg = [], [], []
            for r, t in rays:
                x = _int_dot(a, r)
                (pos if x > 0 else neg if x < 0 else zero).append((r, t, x))
            new = [(r, t) for r, t, _ in pos]
            new += [(r, t | {idx}) for r, t, _ in zero]
            target = d - len(lin) - 2
            for p, tp, xp in pos:
                for q, tq, xq in neg:
                    common = tp & tq
                    if len(common) < target:
                        continue
                    if _int_rank([normals[i] for i in common]) != target:
                        continue
                    w = [xp * y - xq * x for x, y in zip(p, q)]
                    new.append((_int_primitive(w), common | {idx}))
            rays = new
        done.append(idx)
    seen = set()
    out = []
    for r, _ in rays:
        if r not in seen and any(r):
            seen.add(r)
            out.append(r)
    return ([tuple(Fraction(x) for x in l) for l in lin],
            [tuple(Fraction(x) for x in r) for r in out])


def _as_generators(lineality, rays):
    gens = []
    for l in lineality:
        gens.append(l)
        gens.append(scale(-1, l))
    gens.extend(rays)
    return gens


class PolyCone:
    """A rational polyhedral cone given by generators.

    The halfspace description (inner normals) and an irredundant generator
    set are computed lazily. Equality of cones is point-set equality; use
    :meth:`same_as`.
    """

    def __init__(self, generators, ambient_dim=None):
        gens = [vec(g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise UsageError("ambient_dim required for an empty cone")
            ambient_dim = len(gens[0])
        for g in gens:
            if len(g) != ambient_dim:
                raise UsageError("generator length differs from ambient_dim")
        self.ambient_dim = ambient_dim
        self.generators = tuple(g for g in gens if not is_zero(g))

    @classmethod
    def from_halfspaces(cls, normals, ambient_dim):
        lin, rays = _double_description(normals, ambient_dim)
        cone = cls(_as_generators(lin, rays), ambient_dim)
        cone.__dict__["_irredundant"] = (tuple(lin), tuple(rays))
        return cone

    def __repr__(self):
        gens = ", ".join("(" + ",".join(str(x) for x in g) + ")"
                         for g in self.rays)
        return f"PolyCone[{gens}]"

    @cached_property
    def _dual_dd(self):
        return _double_description(self.generators, self.ambient_dim)

    @cached_property
    def halfspaces(self):
        """Inner normals h with ``cone = {x : <h, x> >= 0}``.

        Equations appear as a pair ``h, -h``.
        """
        lin, rays = self._dual_dd
        return tuple(_as_generators(lin, rays))

    @cached_property
    def _int_halfspaces(self):
        return tuple(tuple(int(x) for x in h) for h in self.halfspaces)

    @cached_property
    def facet_normals(self):
        """Inner normals of the facets (lineality of the dual excluded)."""
        return tuple(self._dual_dd[1])

    @cached_property
    def equations(self):
        """Basis of linear forms vanishing on the cone."""
        return tuple(self._dual_dd[0])

    @cached_property
    def _irredundant(self):
        lin, rays = self._dual_dd
        return _double_description(_as_generators(lin, rays),
                                   self.ambient_dim)

    @property
    def lineality(self):
        return self._irredundant[0]

    @property
    def extreme_rays(self):
        return self._irredundant[1]

    @property
    def rays(self):
        """Irredundant generators; lineality directions appear as +/- pairs."""
        return tuple(_as_generators(*self._irredundant))

    @cached_property
    def dim(self):
        return rank(self.generators)

    def is_pointed(self):
        return not self.lineality

    def contains(self, v):
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise UsageError("dimension mismatch in cone membership")
        # halfspaces are integral, so scaling v to an integer vector is enough
        d = common_denominator([v])
        w = [int(x * d) for x in v]
        return all(_int_dot(h, w) >= 0 for h in self._int_halfspaces)

    def contains_cone(self, other):
        return all(self.contains(g) for g in other.generators)

    def same_as(self, other):
        return (self.ambient_dim == other.ambient_dim
                and self.contains_cone(other) and other.contains_cone(self))

    def interior_point(self):
        """A point in the relative interior (sum of irredundant generators)."""
        p = tuple(ZERO for _ in range(self.ambient_dim))
        for g in self.rays:
            p = add(p, g)
        return p


def cone_contains(cone, v):
    return cone.contains(v)


def dual_cone(cone):
    lin, rays = cone._dual_dd
    dual = PolyCone(_as_generators(lin, rays), cone.ambient_dim)
    dual.__dict__["_irredundant"] = (tuple(lin), tuple(rays))
    return dual


def intersect_cones(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise UsageError("cones live in different ambient spaces")
    return PolyCone.from_halfspaces(a.halfspaces + b.halfspaces, a.ambient_dim)


def join_cones(a, b):
    """The cone generated by ``a`` and ``b``."""
    if a.ambient_dim != b.ambient_dim:
        raise UsageError("cones live in different ambient spaces")
    return PolyCone(a.generators + b.generators, a.ambient_dim)


def minimal_face(a, s):
    """Smallest face of ``a`` containing the subcone ``s``."""
    if not a.contains_cone(s):
        raise UsageError("minimal_face: s is not contained in a")
    tight = [h for h in a.facet_normals
             if all(dot(h, g) == 0 for g in s.generators)]
    gens = [g for g in a.rays if all(dot(h, g) == 0 for h in tight)]
    return PolyCone(gens, a.ambient_dim)


def is_face(a, f):
    """Whether the subcone ``f`` is a face of ``a``."""
    return minimal_face(a, f).same_as(f)
