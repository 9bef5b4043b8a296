"""Independent pointwise-function oracle for the sequence-space unitization.

A pair ``(e, lam)`` over the sequence space is read as the function
``k -> e(k) + lam`` on the indices together with the value ``lam`` at an extra
point "at infinity".  Positivity, order, absolute value, join and meet are
computed pointwise on that function, with no reference to the cone test or
the absolute-value formula under test, and the result is re-encoded as a
pair.  This is the second route for every cross-check in the test suite.
"""

from fractions import Fraction

from trunclat import UnitizedElement, coeff, sparse, support


def _indices(*ues):
    out = set()
    for ue in ues:
        out.update(support(ue.e))
    return sorted(out)


def value_at(ue: UnitizedElement, k: int) -> Fraction:
    return coeff(ue.e, k) + ue.lam


def o_positive(ue: UnitizedElement) -> bool:
    if ue.lam < 0:
        return False
    return all(value_at(ue, k) >= 0 for k in _indices(ue))


def o_leq(a: UnitizedElement, b: UnitizedElement) -> bool:
    if a.lam > b.lam:
        return False
    return all(value_at(a, k) <= value_at(b, k) for k in _indices(a, b))


def _from_values(values: dict[int, Fraction], lam: Fraction) -> UnitizedElement:
    return UnitizedElement(sparse({k: v - lam for k, v in values.items()}), lam)


def o_abs(ue: UnitizedElement) -> UnitizedElement:
    lam = abs(ue.lam)
    return _from_values({k: abs(value_at(ue, k)) for k in _indices(ue)}, lam)


def o_join(a: UnitizedElement, b: UnitizedElement) -> UnitizedElement:
    lam = max(a.lam, b.lam)
    values = {k: max(value_at(a, k), value_at(b, k)) for k in _indices(a, b)}
    return _from_values(values, lam)


def o_meet(a: UnitizedElement, b: UnitizedElement) -> UnitizedElement:
    lam = min(a.lam, b.lam)
    values = {k: min(value_at(a, k), value_at(b, k)) for k in _indices(a, b)}
    return _from_values(values, lam)
