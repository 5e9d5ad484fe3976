"""JSON encoding of exact rationals and the package's value types.

Rationals are written as ["num", "den"] pairs of decimal strings.
"""
from fractions import Fraction

from .errors import ValidationError


def rat(x):
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


def rat_vec(v):
    return [rat(x) for x in v]


def parse_rat(obj):
    """Accept ["num", "den"], an integer, or a string such as "3/4"."""
    try:
        if isinstance(obj, (list, tuple)):
            if len(obj) != 2:
                raise ValueError("expected [num, den]")
            den = int(obj[1])
            if den == 0:
                raise ValueError("zero denominator")
            return Fraction(int(obj[0]), den)
        if isinstance(obj, bool):
            raise ValueError("booleans are not rationals")
        if isinstance(obj, (int, str)):
            return Fraction(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational {obj!r}: {exc}") from None
    raise ValidationError(f"bad rational {obj!r}")


def parse_rat_vec(seq):
    if not isinstance(seq, (list, tuple)):
        raise ValidationError(f"expected a list of rationals, got {seq!r}")
    return tuple(parse_rat(x) for x in seq)


def parse_matrix(rows):
    if not isinstance(rows, (list, tuple)):
        raise ValidationError("expected a matrix (list of rows)")
    return tuple(parse_rat_vec(row) for row in rows)


def group_to_json(group):
    from .grp import age, junior_elements
    return {
        "n": group.n,
        "r": group.r,
        "elements": [rat_vec(v) for v in group.elements],
        "orders": list(group.orders),
        "ages": [age(group, g) for g in range(group.r)],
        "juniors": junior_elements(group),
        "characters": [list(m) for m in group.char_reps],
        "chi": list(group.chi_j_index),
        "k_table": [list(row) for row in group.k_table],
    }


def fan_to_json(fan):
    return {
        "lattice_basis": [rat_vec(v) for v in fan.lattice_basis],
        "rays": [rat_vec(v) for v in fan.rays],
        "labels": [list(lab) for lab in fan.labels],
        "max_cones": [list(c) for c in fan.max_cones],
        "exceptional_elements": list(fan.exceptional_elements),
    }


def fan_from_json(group, obj):
    from .fan import Fan
    try:
        return Fan(group=group,
                   lattice_basis=parse_matrix(obj["lattice_basis"]),
                   rays=parse_matrix(obj["rays"]),
                   labels=tuple((str(a), int(b)) for a, b in obj["labels"]),
                   max_cones=tuple(tuple(int(i) for i in c)
                                   for c in obj["max_cones"]),
                   exceptional_elements=tuple(
                       int(g) for g in obj["exceptional_elements"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed fan: {exc}") from None


def family_to_json(family):
    return {"b": [rat_vec(row) for row in family.b]}


def family_from_json(fan, obj):
    from .gnat import make_family
    rows = obj["b"] if isinstance(obj, dict) else obj
    return make_family(fan, parse_matrix(rows))
