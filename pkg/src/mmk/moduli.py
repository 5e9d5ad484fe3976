"""The quotient fan of a gnat family and the fine-moduli verdict.

The arrow functions x_{i,j} generate a lattice M_V inside Z^{r-1} + Z^n: the
first block is the weight of the arrow under the torus (C*)^r / C*, the
second block is the monomial x_j. All cones below live in the rational span
of M_V, which is all of Q^{r-1+n}; the standard dot product pairs it with its
dual, and the projection q_G to N_G is "take the second block".
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import InternalError, ResourceGuardError, UsageError, guard_limit
from .exactlin import (PolyCone, dual_cone, hnf_basis, integer_kernel,
                       intersect_cones, is_face, join_cones, minimal_face,
                       primitive, solve)
from .fan import classify_fan, initial_fan
from .gnat import fiber, reductor
from .mckay import build_mckay, components


@dataclass(frozen=True)
class MVLattice:
    quiver: object
    mu: dict
    basis: tuple
    invariant_sublattice: tuple

    @property
    def rank(self):
        return len(self.basis)

    @property
    def ambient_dim(self):
        return self.quiver.r - 1 + self.quiver.n


def _mu(quiver, i, j):
    w = quiver.weight(i, j)
    first = tuple(w[t] - w[0] for t in range(1, quiver.r))
    second = tuple(int(t == j) for t in range(quiver.n))
    return first + second


def dual_lattice_basis(basis):
    """Basis of {m : <u, m> in Z for all u in basis} for a full-rank basis."""
    n = len(basis)
    rows = []
    for c in range(n):
        unit = [Fraction(int(t == c)) for t in range(n)]
        # m with <basis[t], m> = unit[t]
        rows.append(solve(_transpose(basis), unit))
    return hnf_basis(rows)[0]


def _transpose(rows):
    return [tuple(r[c] for r in rows) for c in range(len(rows[0]))]


def mv_lattice(quiver):
    r, n = quiver.r, quiver.n
    if r * n > guard_limit("max_arrows"):
        raise ResourceGuardError(
            f"{r * n} arrows exceed guard {guard_limit('max_arrows')}")
    mu = {(i, j): _mu(quiver, i, j) for i in range(r) for j in range(n)}
    basis, rk = hnf_basis(list(mu.values()))
    if rk != n + r - 1:
        raise InternalError(f"M_V has rank {rk}, expected {n + r - 1}")
    first = [tuple(int(x) for x in b[:r - 1]) for b in basis]
    if r > 1:
        kernel = integer_kernel(first)
        inv = [tuple(sum(c * b[r - 1 + t] for c, b in zip(row, basis))
                     for t in range(n)) for row in kernel]
    else:
        inv = [b[r - 1:] for b in basis]
    inv_basis, inv_rank = hnf_basis(inv)
    expected = dual_lattice_basis(initial_fan(quiver.group).lattice_basis)
    if inv_rank != n or list(inv_basis) != list(expected):
        raise InternalError("invariant part of M_V differs from M_G")
    return MVLattice(quiver, mu, tuple(basis), tuple(inv_basis))


def q_g(u, r):
    return tuple(u[r - 1:])


def sigma_tilde(family, cone, lattice=None):
    """The cone of N_V over the chart of ``cone`` (dual of S_sigma)."""
    quiver = build_mckay(family.group)
    if lattice is None:
        lattice = mv_lattice(quiver)
    pattern = fiber(family, cone)
    gens = list(lattice.mu.values())
    for i, j, _ in pattern.support():
        gens.append(tuple(-x for x in lattice.mu[(i, j)]))
    return dual_cone(PolyCone(gens, lattice.ambient_dim))


def project(cone_tilde, r, n):
    return PolyCone([q_g(g, r) for g in cone_tilde.rays], n)


def cox_generators(fan):
    if not classify_fan(fan)["relative_minimal_model"]:
        raise UsageError("cox_generators needs a relative minimal model")
    g = fan.group
    vs = [g.elements[e] for e in fan.exceptional_elements]
    out = [(("y", j), tuple(v[j] for v in vs)) for j in range(g.n)]
    for k in range(fan.m):
        out.append((("z", k), tuple(Fraction(-int(t == k))
                                    for t in range(fan.m))))
    return out


def phi_map(family):
    """(i, j) -> (j, exponent vector of t_k) with exponent b[k(i,j)] - b[i]."""
    fan = family.fan
    g = fan.group
    b = family.b
    vs = [g.elements[e] for e in fan.exceptional_elements]
    table = {}
    for i in range(g.r):
        for j in range(g.n):
            h = g.k_table[i][j]
            exps = tuple(b[h][k] - b[i][k] for k in range(fan.m))
            # y_j times prod z_k^{c(i,j,k)} has the same valuations.
            for k in range(fan.m):
                c = reductor(fan, b, i, j, k)
                if c < 0 or c.denominator != 1 or vs[k][j] - c != exps[k]:
                    raise InternalError(
                        f"arrow ({i},{j}) does not factor through Cox(X)")
            table[(i, j)] = (j, exps)
    return table


def phi_factorization(family):
    """(i, j) -> exponents of z_k in the Cox-ring image of x_{i,j}."""
    fan = family.fan
    g = fan.group
    return {(i, j): tuple(int(reductor(fan, family.b, i, j, k))
                          for k in range(fan.m))
            for i in range(g.r) for j in range(g.n)}


def psi_matrix(family, grading_orders=None):
    """Rows k, columns i = 1..r-1: grading_orders[k] * b[i][k]."""
    fan = family.fan
    g = fan.group
    if grading_orders is None:
        grading_orders = [g.orders[e] for e in fan.exceptional_elements]
    if len(grading_orders) != fan.m:
        raise UsageError("one grading order per exceptional divisor is needed")
    rows = []
    for k in range(fan.m):
        row = []
        for i in range(1, g.r):
            x = grading_orders[k] * family.b[i][k]
            if x.denominator != 1:
                raise InternalError(
                    f"grading order {grading_orders[k]} does not clear b[{i}][{k}]")
            row.append(int(x))
        rows.append(tuple(row))
    return rows


class Verdict(Enum):
    FINE = "FineModuli"
    NOT_FINE = "NotFine"


@dataclass
class QuotientFanReport:
    max_cones: list                 # PolyCones of Sigma_F
    rays: list                      # primitive ray directions of Sigma_F
    contracted_rays: list           # ray indices of Sigma
    verdict: Verdict
    witnesses: list                 # max cones of Sigma with decomposable fiber
    alpha_is_iso: bool
    steps: int
    images: list = field(default_factory=list)   # q_G(sigma~) per max cone
    preimages: list = field(default_factory=list)

    def cone_ray_ids(self, fan):
        """Each max cone of Sigma_F as Sigma ray indices where possible."""
        lookup = {primitive(r): idx for idx, r in enumerate(fan.rays)}
        out = []
        for c in self.max_cones:
            ids = [lookup.get(primitive(r)) for r in c.extreme_rays]
            out.append(tuple(sorted(ids)) if None not in ids else None)
        return out


def _drop_contained(cones, keep):
    """Remove cones properly contained in (or equal to) ``keep``."""
    return [c for c in cones if c is keep or not keep.contains_cone(c)]


def _maximal(cones):
    out = []
    for c in cones:
        if any(o.contains_cone(c) for o in out):
            continue
        out = [o for o in out if not c.contains_cone(o)]
        out.append(c)
    return out


def coarsen(cones):
    """Merge cones until every pairwise intersection is a face of both."""
    s = _maximal(list(cones))
    cap = guard_limit("max_coarsen_steps")
    steps = 0
    while True:
        pair = None
        for a in range(len(s)):
            for b in range(len(s)):
                if a == b:
                    continue
                inter = intersect_cones(s[a], s[b])
                if not is_face(s[a], inter):
                    pair = (a, b, inter)
                    break
            if pair:
                break
        if pair is None:
            return s, steps
        steps += 1
        if steps > cap:
            raise InternalError(
                f"coarsening exceeded {cap} steps; cones: {s!r}")
        a, b, inter = pair
        tau2 = minimal_face(s[b], inter)
        if not s[a].contains_cone(tau2):
            new = join_cones(s[a], tau2)
            s[a] = new
        else:
            tau1 = minimal_face(s[a], inter)
            new = join_cones(s[b], tau1)
            s[b] = new
        s = _drop_contained(s, new)


def quotient_fan(fan, family):
    if not classify_fan(fan)["relative_minimal_model"]:
        raise UsageError("quotient_fan needs a relative minimal model")
    g = fan.group
    r, n = g.r, g.n
    quiver = build_mckay(g)
    lattice = mv_lattice(quiver)
    images = []
    witnesses = []
    for ids in fan.max_cones:
        st = sigma_tilde(family, ids, lattice)
        images.append(project(st, r, n))
        if len(components(fiber(family, ids))) > 1:
            witnesses.append(ids)
    cones, steps = coarsen(images)
    rays = []
    for c in cones:
        for ray in c.extreme_rays:
            p = primitive(ray)
            if p not in rays:
                rays.append(p)
    contracted = [idx for idx, ray in enumerate(fan.rays)
                  if primitive(ray) not in rays]
    sigma = [fan.cone(ids) for ids in fan.max_cones]
    same = (len(cones) == len(sigma)
            and all(any(c.same_as(s) for s in sigma) for c in cones))
    verdict = Verdict.NOT_FINE if witnesses else Verdict.FINE
    if verdict is Verdict.FINE and not same:
        raise InternalError("indecomposable fibers everywhere but Sigma_F != Sigma")
    preimages = [[idx for idx, img in enumerate(images) if c.contains_cone(img)]
                 for c in cones]
    return QuotientFanReport(max_cones=cones, rays=rays,
                             contracted_rays=contracted, verdict=verdict,
                             witnesses=witnesses, alpha_is_iso=same,
                             steps=steps, images=images, preimages=preimages)
