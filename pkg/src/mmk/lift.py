"""Charts of a star subdivision and lifting of constellations along them.

Subdividing at a junior point v, the chart sigma_l = Cone(e_1, .., v, .., e_n)
(v in slot l) is the quotient of C^n by G_l = N_G / N_l, where N_l is spanned
by the chart's rays. Its coordinates xi_j are dual to those rays. Characters
of G are sent to characters of G_l by the round-down function, which floors
the exponent in slot l; patterns of G_l lift to patterns of G through it.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm

from .errors import InternalError, UsageError, ValidationError
from .exactlin import dot, frac_part, vec
from .grp import build_group, char_pairing, junior_elements
from .fan import initial_fan, resolve, star_subdivide
from .gnat import fiber, make_family
from .mckay import Pattern, components, validate_pattern
from .moduli import dual_lattice_basis


CASE1, CASE2, CASE3 = "Case1", "Case2", "Case3"


@dataclass(frozen=True)
class ChartContext:
    group: object
    v: tuple
    ell: int
    xi_basis: tuple
    chart_group: object
    char_map: tuple

    def chart_coords(self, u):
        """Coordinates of u in the basis (e_1, .., v, .., e_n)."""
        return chart_coords(self.v, self.ell, u)


def chart_coords(v, ell, u):
    u = vec(u)
    c = [u[j] - v[j] * u[ell] / v[ell] for j in range(len(u))]
    c[ell] = u[ell] / v[ell]
    return tuple(c)


def _as_generator(w):
    order = 1
    for x in w:
        order = lcm(order, x.denominator)
    return order, [int(x * order) for x in w]


def chart_context(group, v, ell):
    v = vec(v)
    n = group.n
    if not 0 <= ell < n:
        raise UsageError(f"chart index {ell} out of range")
    if v[ell] == 0:
        raise UsageError(f"v has zero entry in slot {ell}; no chart there")
    if sum(v) != 1:
        raise UsageError(f"{v} is not a junior point")
    xi = []
    for j in range(n):
        f = [Fraction(0)] * n
        if j == ell:
            f[ell] = 1 / v[ell]
        else:
            f[j] = Fraction(1)
            f[ell] = -v[j] / v[ell]
        xi.append(tuple(f))
    e_ell = tuple(Fraction(int(t == ell)) for t in range(n))
    images = [chart_coords(v, ell, e_ell)]
    images += [chart_coords(v, ell, g) for g in group.generators]
    gens = [_as_generator(tuple(frac_part(x) for x in w)) for w in images]
    try:
        chart_group = build_group(n, gens)
    except ValidationError as exc:
        raise InternalError(f"chart group is not in SL_n: {exc}") from None
    ctx = ChartContext(group, v, ell, tuple(xi), chart_group, ())
    cmap = tuple(_round_down_class(ctx, m) for m in group.char_reps)
    ctx = ChartContext(group, v, ell, tuple(xi), chart_group, cmap)
    _check_well_defined(ctx)
    return ctx


def round_down(ctx, monomial):
    m = [int(x) for x in monomial]
    out = list(m)
    out[ctx.ell] = floor(dot(ctx.v, m))
    return tuple(out)


def _round_down_class(ctx, m):
    return ctx.chart_group.char_index(round_down(ctx, m))


def round_down_char(ctx, i):
    return ctx.char_map[i]


def _check_well_defined(ctx):
    mg = dual_lattice_basis(initial_fan(ctx.group).lattice_basis)
    for i, m in enumerate(ctx.group.char_reps):
        for u in mg:
            for sign in (1, -1):
                m2 = tuple(a + sign * int(b) for a, b in zip(m, u))
                if _round_down_class(ctx, m2) != ctx.char_map[i]:
                    raise InternalError(
                        f"round-down is not constant on the class of rho_{i}")
    hit = set(ctx.char_map)
    if hit != set(range(ctx.chart_group.r)):
        raise InternalError("round-down is not surjective on characters")


def classify_arrow(ctx, i, j):
    """Which of the three round-down cases the arrow (i, j) falls into."""
    g, cg = ctx.group, ctx.chart_group
    pairing = frac_part(dot(g.char_reps[i], ctx.v))
    carry = pairing + ctx.v[j] >= 1
    if j != ctx.ell:
        case = CASE2 if carry else CASE1
    else:
        case = CASE1 if carry else CASE3
    a = ctx.char_map[i]
    target = ctx.char_map[g.k_table[i][j]]
    if case == CASE1:
        ok = cg.k_table[a][j] == target
    elif case == CASE2:
        ok = cg.k_table[cg.k_table[a][ctx.ell]][j] == target
    else:
        ok = a == target
    if not ok:
        raise InternalError(f"arrow ({i},{j}) fits none of the round-down cases")
    return case


def lift_pattern(ctx, gl_pattern):
    cg = ctx.chart_group
    if gl_pattern.k_table != cg.k_table or not validate_pattern(gl_pattern):
        raise UsageError("not a valid pattern of the chart group")
    g = ctx.group
    q = gl_pattern.p
    ell = ctx.ell
    p = [[0] * g.n for _ in range(g.r)]
    for i in range(g.r):
        a = ctx.char_map[i]
        for j in range(g.n):
            case = classify_arrow(ctx, i, j)
            if case == CASE1:
                p[i][j] = q[a][j]
            elif case == CASE2:
                p[i][j] = q[a][ell] and q[cg.k_table[a][ell]][j]
            else:
                p[i][j] = 1
    out = Pattern.from_matrix(g, p)
    if not validate_pattern(out):
        raise InternalError("lifted pattern violates the quiver relations")
    return out


def push_pattern(ctx, g_pattern):
    cg = ctx.chart_group
    g = ctx.group
    values = {}
    for i in range(g.r):
        a = ctx.char_map[i]
        for j in range(g.n):
            if classify_arrow(ctx, i, j) != CASE1:
                continue
            val = g_pattern.p[i][j]
            if values.setdefault((a, j), val) != val:
                raise UsageError("pattern not in the lifting domain of this chart")
    q = [[0] * g.n for _ in range(cg.r)]
    for a in range(cg.r):
        for j in range(g.n):
            if (a, j) not in values:
                raise InternalError(f"no case-1 preimage for ({a},{j})")
            q[a][j] = values[(a, j)]
    return Pattern.from_matrix(cg, q)


def ray_pattern(group, column, w):
    """Fiber pattern at the ray through the junior point w for one column."""
    p = [[0] * group.n for _ in range(group.r)]
    for i in range(group.r):
        for j in range(group.n):
            if column[i] + w[j] - column[group.k_table[i][j]] == 0:
                p[i][j] = 1
    return Pattern.from_matrix(group, p)


def solve_column(group, pattern, w):
    """Coefficients b_i along the divisor of w with c = 0 on the support."""
    w = vec(w)
    b = [None] * group.r
    b[0] = Fraction(0)
    stack = [0]
    support = pattern.support()
    while stack:
        i = stack.pop()
        for t, j, h in support:
            if t == i and b[h] is None:
                b[h] = b[i] + w[j]
                stack.append(h)
            elif h == i and b[t] is None:
                b[t] = b[i] - w[j]
                stack.append(t)
    if any(x is None for x in b):
        raise UsageError("pattern is disconnected; coefficients are not determined")
    for t, j, h in support:
        if b[t] + w[j] != b[h]:
            raise ValidationError(f"inconsistent coefficients along arrow {t}->{h}")
    for i in range(group.r):
        for j in range(group.n):
            c = b[i] + w[j] - b[group.k_table[i][j]]
            if c < 0 or c.denominator != 1:
                raise ValidationError(f"reductor value {c} at ({i},{j})")
    return tuple(b)


def solve_b_from_pattern(fan, pattern, k):
    w = fan.group.elements[fan.exceptional_elements[k]]
    return solve_column(fan.group, pattern, w)


def _special_columns(group, order, record):
    """Map junior point -> coefficient column of the special family."""
    if not order:
        return {}
    v = group.elements[order[0]]
    columns = {v: tuple(char_pairing(group, i, order[0]) for i in range(group.r))}
    _check_canonical_chart(group, v, columns[v])
    rest = [group.elements[g] for g in order[1:]]
    for ell in range(group.n):
        if v[ell] == 0:
            continue
        ctx = chart_context(group, v, ell)
        inside = [w for w in rest if all(c >= 0 for c in ctx.chart_coords(w))]
        cg = ctx.chart_group
        sub_order = [cg.element_index(ctx.chart_coords(w)) for w in inside]
        sub = _special_columns(cg, sub_order, record)
        for w in inside:
            w2 = cg.elements[cg.element_index(ctx.chart_coords(w))]
            gl_pattern = ray_pattern(cg, sub[w2], w2)
            lifted = lift_pattern(ctx, gl_pattern)
            if record is not None:
                record.append((ctx, gl_pattern, lifted))
            col = solve_column(group, lifted, w)
            if ray_pattern(group, col, w) != lifted:
                raise InternalError(f"fiber at {w} differs from its lifted pattern")
            if columns.setdefault(w, col) != col:
                raise InternalError(f"charts disagree on the coefficients of {w}")
    return columns


def _check_canonical_chart(group, v, column):
    """On the first blow-up the fiber at sigma_l keeps exactly the x_l arrows
    with b_i + v_l = b_{k(i,l)}."""
    fan1 = star_subdivide(initial_fan(group), v, check=False)
    fam1 = make_family(fan1, [[x] for x in column])
    n = group.n
    for ell in range(n):
        if v[ell] == 0:
            continue
        cone = tuple(j for j in range(n) if j != ell) + (n,)
        p = [[0] * n for _ in range(group.r)]
        for i in range(group.r):
            p[i][ell] = int(column[i] + v[ell] == column[group.k_table[i][ell]])
        if fiber(fam1, cone) != Pattern.from_matrix(group, p):
            raise InternalError(f"canonical fiber mismatch on chart {ell}")


def build_special_family(group, junior_order=None, record=None):
    """Resolution fan and the recursively lifted family on it.

    ``record``, if a list, receives (chart context, chart pattern, lifted
    pattern) for every lift performed.
    """
    fan, _ = resolve(group, junior_order)
    order = [fan.exceptional_elements[k] for k in range(fan.m)]
    columns = _special_columns(group, order, record)
    b = [[columns[group.elements[g]][i] for g in order] for i in range(group.r)]
    family = make_family(fan, b)
    for k in range(fan.m):
        if len(components(ray_pattern(group, family.column(k),
                                      group.elements[order[k]]))) != 1:
            raise InternalError(f"fiber at exceptional ray {k} is decomposable")
    return fan, family


def chart_report(ctx):
    return {
        "v": ctx.v, "ell": ctx.ell, "order": ctx.chart_group.r,
        "xi": ctx.xi_basis, "char_map": ctx.char_map,
    }


def junior_charts(group, junior_order=None):
    """Chart contexts of the first subdivision point."""
    order = junior_order if junior_order is not None else junior_elements(group)
    if not order:
        return []
    v = group.elements[order[0]]
    return [chart_context(group, v, ell) for ell in range(group.n) if v[ell] != 0]
