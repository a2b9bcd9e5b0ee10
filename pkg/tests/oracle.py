"""Exhaustive subschema oracle over the default document universe."""

from __future__ import annotations

from jsonsub.json_model import normalize
from jsonsub.subtype import DoesNotHold, Holds, Undecidable
from jsonsub.validator import Validator, enumerate_universe, validate
from strategies import DENSE_GRID

UNIVERSE = enumerate_universe()


def counterexamples(s, t, universe=UNIVERSE) -> list:
    vs, vt = Validator(normalize(s)), Validator(normalize(t))
    return [d for d in universe if vs.is_valid(d) and not vt.is_valid(d)]


def agrees(verdict, s, t, universe=UNIVERSE) -> bool:
    """Does a verdict match exhaustive enumeration?

    Holds needs an empty counterexample set.  DoesNotHold needs a universe
    counterexample, or an internal witness the validator confirms (some
    witnesses lie outside the small universe).  Undecidable is exempt.
    """
    if isinstance(verdict, Undecidable):
        return True
    ce = counterexamples(s, t, universe)
    if isinstance(verdict, Holds):
        return not ce
    assert isinstance(verdict, DoesNotHold)
    if ce:
        return True
    w = verdict.witness
    return validate(w, s) and not validate(w, t)


def grid_subset(lhs, rhs, grid=None) -> bool:
    """Number containment of two (positive, negated) schema lists on a dense grid."""
    def member(pos, neg):
        vp, vn = [Validator(normalize(s)) for s in pos], [Validator(normalize(s)) for s in neg]
        return lambda x: all(v.is_valid(x) for v in vp) and not any(v.is_valid(x) for v in vn)

    inside, outside = member(*lhs), member(*rhs)
    return all(outside(x) for x in (grid or DENSE_GRID) if inside(x))
