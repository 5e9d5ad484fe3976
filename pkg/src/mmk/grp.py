"""Finite abelian subgroups of SL_n given by weight vectors.

An element g acts diagonally by exp(2 pi i v_{g,j}) on x_j; we store v_g in
[0, 1)^n. Characters are classes of monomial exponents m in Z^n, with
<m, g> = sum_j m_j v_{g,j} mod 1.
"""
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import UsageError, ValidationError
from .exactlin import dot, frac_part


def _reduce(v):
    return tuple(frac_part(x) for x in v)


def _order(v):
    r = 1
    for x in v:
        r = lcm(r, x.denominator)
    return r


@dataclass(frozen=True)
class AbelianAction:
    n: int
    generators: tuple      # deduplicated generator weight vectors
    elements: tuple        # v_g in [0,1)^n, identity first
    orders: tuple
    char_reps: tuple       # integer exponent vector per character
    chi_j_index: tuple     # character index of x_j
    k_table: tuple         # k_table[i][j] = class of m_i + f_j

    @property
    def r(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def char_key(self, m):
        """Pairings of a monomial with the generators; identifies its class."""
        return tuple(frac_part(dot(m, g)) for g in self.generators)

    def char_index(self, m):
        return self._char_lookup[self.char_key(m)]

    def element_index(self, v):
        v = _reduce(tuple(Fraction(x) for x in v))
        try:
            return self.elements.index(v)
        except ValueError:
            raise UsageError(f"{v} is not an element of the group") from None

    @property
    def _char_lookup(self):
        cache = self.__dict__.get("_lookup")
        if cache is None:
            cache = {self.char_key(m): i for i, m in enumerate(self.char_reps)}
            object.__setattr__(self, "_lookup", cache)
        return cache

    def is_cyclic(self):
        return self.r in self.orders


def build_group(n, generators):
    """Close the given generators into an AbelianAction.

    ``generators`` is a list of ``(order, weights)`` pairs meaning the
    element with v = weights / order.
    """
    if n < 1:
        raise ValidationError("dimension n must be positive")
    gens = []
    for idx, (order, weights) in enumerate(generators):
        order = int(order)
        weights = [int(w) for w in weights]
        if order < 1:
            raise ValidationError(f"generator {idx}: order must be positive")
        if len(weights) != n:
            raise ValidationError(
                f"generator {idx}: expected {n} weights, got {len(weights)}")
        if any(not 0 <= w < order for w in weights):
            raise ValidationError(
                f"generator {idx}: weights must lie in [0, {order})")
        if sum(weights) % order:
            raise ValidationError(
                f"generator {idx} (order {order}, weights {weights}) is not in "
                f"SL_{n}: weight sum {sum(weights)} is not divisible by {order}")
        v = tuple(Fraction(w, order) for w in weights)
        if any(v) and v not in gens:
            gens.append(v)
    return _close(n, tuple(gens))


def _close(n, gens):
    zero = tuple(Fraction(0) for _ in range(n))
    elements = [zero]
    seen = {zero}
    queue = deque([zero])
    while queue:
        g = queue.popleft()
        for h in gens:
            s = _reduce(tuple(a + b for a, b in zip(g, h)))
            if s not in seen:
                seen.add(s)
                elements.append(s)
                queue.append(s)
    orders = tuple(_order(g) for g in elements)
    r = len(elements)

    def key(m):
        return tuple(frac_part(dot(m, g)) for g in gens)

    def add_keys(a, b):
        return tuple(frac_part(x + y) for x, y in zip(a, b))

    # Breadth-first search over monomials gives a minimal-degree
    # representative for every character, ties broken lexicographically.
    zero_m = tuple(0 for _ in range(n))
    reps = {key(zero_m): zero_m}
    frontier = [zero_m]
    while len(reps) < r:
        nxt = []
        for m in frontier:
            for j in range(n):
                m2 = tuple(x + (j == t) for t, x in enumerate(m))
                k2 = key(m2)
                if k2 not in reps:
                    reps[k2] = m2
                    nxt.append(m2)
        frontier = nxt
    unit_keys = [key(tuple(int(t == j) for t in range(n))) for j in range(n)]

    trivial = key(zero_m)
    if r in orders:
        psi = next((u for u in unit_keys if _key_order(u) == r), None)
        if psi is None:
            g = elements[orders.index(r)]
            target = Fraction(1, r)
            psi = next(k for k, m in reps.items()
                       if frac_part(dot(m, g)) == target)
        ordered = [trivial]
        cur = trivial
        for _ in range(r - 1):
            cur = add_keys(cur, psi)
            ordered.append(cur)
    else:
        ordered = [trivial] + sorted(k for k in reps if k != trivial)
    index = {k: i for i, k in enumerate(ordered)}
    char_reps = tuple(reps[k] for k in ordered)
    chi = tuple(index[u] for u in unit_keys)
    k_table = tuple(tuple(index[add_keys(k, u)] for u in unit_keys)
                    for k in ordered)
    return AbelianAction(n=n, generators=gens, elements=tuple(elements),
                         orders=orders, char_reps=char_reps,
                         chi_j_index=chi, k_table=k_table)


def _key_order(k):
    return _order(k)


def age(group, g):
    return int(sum(group.elements[g]))


def junior_elements(group):
    return [i for i in range(group.r) if sum(group.elements[i]) == 1]


def char_pairing(group, i, g):
    return frac_part(dot(group.char_reps[i], group.elements[g]))


def group_from_config(cfg):
    """Build a group from the JSON fragment ``{"n": .., "generators": [..]}``."""
    try:
        n = cfg["n"]
        gens = [(g["order"], g["weights"]) for g in cfg.get("generators", [])]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed group specification: {exc}") from None
    return build_group(n, gens)
