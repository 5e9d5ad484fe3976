"""McKay quivers, 0/1 representation patterns and King stability.

Vertex i is the character rho_i; the arrow (i, j) is multiplication by x_j
and goes from i to k(i, j). A pattern records which arrows act nontrivially
in a distinguished G-constellation. Because every character of an abelian
group occurs once in the regular representation, submodules are exactly the
vertex subsets closed under supported arrows.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

import networkx as nx

from .errors import ResourceGuardError, UsageError, guard_limit
from .exactlin import rank


@dataclass(frozen=True)
class McKayQuiver:
    group: object

    @property
    def r(self):
        return self.group.r

    @property
    def n(self):
        return self.group.n

    def head(self, i, j):
        return self.group.k_table[i][j]

    def arrows(self):
        return [(i, j) for i in range(self.r) for j in range(self.n)]

    def weight(self, i, j):
        """wt(i, j) = e_{k(i,j)} - e_i in Z^r."""
        w = [0] * self.r
        w[i] -= 1
        w[self.head(i, j)] += 1
        return tuple(w)


def build_mckay(group):
    return McKayQuiver(group)


@dataclass(frozen=True)
class Pattern:
    """Support matrix p[i][j] in {0,1} over a fixed k-table."""
    k_table: tuple
    p: tuple

    @classmethod
    def from_matrix(cls, group, p):
        return cls(group.k_table, tuple(tuple(int(bool(x)) for x in row)
                                        for row in p))

    @classmethod
    def from_arrows(cls, group, arrows):
        p = [[0] * group.n for _ in range(group.r)]
        for i, j in arrows:
            p[i][j] = 1
        return cls.from_matrix(group, p)

    @property
    def r(self):
        return len(self.k_table)

    @property
    def n(self):
        return len(self.k_table[0]) if self.k_table else 0

    def support(self):
        """Supported arrows as (tail, coordinate, head) triples."""
        return [(i, j, self.k_table[i][j]) for i in range(self.r)
                for j in range(self.n) if self.p[i][j]]

    def __getitem__(self, ij):
        i, j = ij
        return self.p[i][j]


def validate_pattern(pattern):
    """The 0/1 shadow of the commutation relations x_j x_j' = x_j' x_j."""
    k, p = pattern.k_table, pattern.p
    for i in range(pattern.r):
        for j, j2 in combinations(range(pattern.n), 2):
            lhs = p[i][j] and p[k[i][j]][j2]
            rhs = p[i][j2] and p[k[i][j2]][j]
            if bool(lhs) != bool(rhs):
                return False
    return True


def components(pattern):
    """Connected components of the undirected support graph, sorted."""
    g = nx.Graph()
    g.add_nodes_from(range(pattern.r))
    g.add_edges_from((i, h) for i, _, h in pattern.support())
    comps = [tuple(sorted(c)) for c in nx.connected_components(g)]
    return sorted(comps)


def support_rank(quiver, pattern):
    return rank([quiver.weight(i, j) for i, j, _ in pattern.support()])


def closed_subsets(pattern):
    """Every vertex subset closed under supported arrows (including the empty
    set and the full set), as sorted tuples in a deterministic order."""
    if pattern.r > guard_limit("max_closed_vertices"):
        raise ResourceGuardError(
            f"closed-subset enumeration over {pattern.r} vertices exceeds "
            f"guard {guard_limit('max_closed_vertices')}")
    g = nx.DiGraph()
    g.add_nodes_from(range(pattern.r))
    g.add_edges_from((i, h) for i, _, h in pattern.support() if i != h)
    cond = nx.condensation(g)
    members = cond.graph["mapping"]
    blocks = {c: sorted(v for v, cc in members.items() if cc == c)
              for c in cond.nodes}
    # Closed sets of the condensation DAG are up-sets: if a block is taken,
    # all of its successors are taken. Enumerate them by processing blocks
    # in reverse topological order.
    order = list(reversed(list(nx.topological_sort(cond))))
    succ = {c: set(cond.successors(c)) for c in cond.nodes}
    results = [frozenset()]
    for c in order:
        extra = []
        for s in results:
            if succ[c] <= s:
                extra.append(s | {c})
        results += extra
    out = set()
    for s in results:
        verts = []
        for c in s:
            verts.extend(blocks[c])
        out.add(tuple(sorted(verts)))
    return sorted(out, key=lambda t: (len(t), t))


def is_closed(pattern, subset):
    s = set(subset)
    return all(h in s for i, _, h in pattern.support() if i in s)


def escaping_arrow(pattern, subset):
    s = set(subset)
    for i, j, h in pattern.support():
        if i in s and h not in s:
            return (i, j, h)
    return None


class Stability(Enum):
    STABLE = "Stable"
    SEMISTABLE = "Semistable"
    UNSTABLE = "Unstable"


def theta_of(theta, subset):
    return sum((Fraction(theta[i]) for i in subset), Fraction(0))


def check_stability(pattern, theta):
    theta = [Fraction(t) for t in theta]
    if len(theta) != pattern.r:
        raise UsageError("theta has wrong length")
    if sum(theta) != 0:
        raise UsageError("theta must sum to zero")
    subsets = closed_subsets(pattern)
    if any(theta_of(theta, s) < 0 for s in subsets):
        return Stability.UNSTABLE
    proper = [s for s in subsets if 0 < len(s) < pattern.r]
    if all(theta_of(theta, s) > 0 for s in proper):
        return Stability.STABLE
    return Stability.SEMISTABLE


def variable_names(n):
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{j + 1}" for j in range(n)]


def monomial_label(m, names):
    parts = []
    for e, name in zip(m, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def to_dot(group, pattern=None):
    """DOT text of the McKay quiver, or of the support of ``pattern``."""
    names = variable_names(group.n)
    lines = ["digraph mckay {"]
    for i, m in enumerate(group.char_reps):
        lines.append(f'  v{i} [label="rho{i}: {monomial_label(m, names)}"];')
    for i in range(group.r):
        for j in range(group.n):
            if pattern is None or pattern.p[i][j]:
                lines.append(f'  v{i} -> v{group.k_table[i][j]} '
                             f'[label="{names[j]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
