"""Truncation catalog, axiom checkers, and fixed-set machinery.

A truncation is a map on the positive cone with ``a ^ tr(b) <= tr(a) <= a``
(tau1) and ``tr(a) = 0  =>  a = 0`` (tau2).  The built-in kinds are:

* ``MeetWithUnit(u)``: ``x |-> x ^ u`` for a fixed ``u >= 0`` (unital);
* ``MeetWithOne``: componentwise minimum with the constant 1 on ``SparseSeq``
  (non-unital: the constant-one sequence has infinite support);
* ``LexMeetZeroOne``: ``x |-> x ^ (0,1)`` on the lexicographic plane, which is
  the unital truncation with unit ``(0,1)``;
* ``IdentityTruncation``: ``x |-> x`` on ``IdentityLine`` (non-unital, and not
  an Archimedean truncation: every multiple of a fixed point stays fixed);
* ``FixtureTruncation``: an arbitrary callable, for tests and bounded searches.

The fixed set of a truncation is ``{x : tr(|x|) = |x|}``; two truncations on
the same space agree exactly when their fixed sets agree, which is what
:func:`compare_fixed_sets` probes on samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DescriptorError, NegativeInput, PreconditionViolated, SpaceMismatch
from .report import LawReport
from .spaces import (
    Element,
    IdentityLine,
    LexPlane,
    Space,
    SparseSeq,
    element_from_json,
    element_to_json,
    leq,
    lexpair,
    line,
    meet,
    scale,
    zero,
)

_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Truncation kinds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeetWithUnit:
    unit: Element


@dataclass(frozen=True)
class MeetWithOne:
    pass


@dataclass(frozen=True)
class LexMeetZeroOne:
    pass


@dataclass(frozen=True)
class IdentityTruncation:
    pass


@dataclass(frozen=True)
class FixtureTruncation:
    """A user-supplied truncation-like map, compared by name."""

    name: str
    fn: Callable[[Element], Element] = field(compare=False)
    unit: Element | None = None


TruncationKind = (
    MeetWithUnit | MeetWithOne | LexMeetZeroOne | IdentityTruncation | FixtureTruncation
)


@dataclass(frozen=True)
class TruncationSpec:
    """A truncation attached to the space it acts on."""

    space: Space
    kind: TruncationKind

    @property
    def unital(self) -> bool:
        match self.kind:
            case MeetWithUnit():
                return True
            case LexMeetZeroOne():
                return True
            case FixtureTruncation(unit=u):
                return u is not None
        return False

    @property
    def unit(self) -> Element | None:
        match self.kind:
            case MeetWithUnit(unit=u):
                return u
            case LexMeetZeroOne():
                return lexpair(0, 1)
            case FixtureTruncation(unit=u):
                return u
        return None


def truncation(space: Space, kind: TruncationKind) -> TruncationSpec:
    """Validated constructor: each kind is only available on its home space."""
    match kind:
        case MeetWithUnit(unit=u):
            if u.space != space:
                raise SpaceMismatch("truncation unit lives in a different space")
            if not leq(zero(space), u):
                raise ValueError("truncation unit must be >= 0")
        case MeetWithOne():
            if not isinstance(space, SparseSeq):
                raise ValueError("meet_with_one is only defined on SparseSeq")
        case LexMeetZeroOne():
            if not isinstance(space, LexPlane):
                raise ValueError("lex_meet_zero_one is only defined on LexPlane")
        case IdentityTruncation():
            if not isinstance(space, IdentityLine):
                raise ValueError("the identity truncation is only cataloged on IdentityLine")
        case FixtureTruncation():
            pass
        case _:
            raise TypeError(f"unknown truncation kind {kind!r}")
    return TruncationSpec(space, kind)


def truncate(t: TruncationSpec, x: Element) -> Element:
    """Apply the truncation to ``x >= 0``; the result satisfies ``0 <= tr(x) <= x``."""
    if x.space != t.space:
        raise SpaceMismatch("element does not live on the truncation's space")
    if not leq(zero(t.space), x):
        raise NegativeInput(f"truncate requires a positive element, got {x!r}")
    match t.kind:
        case MeetWithUnit(unit=u):
            return meet(x, u)
        case MeetWithOne():
            return Element(x.space, tuple((k, v if v < _ONE else _ONE) for k, v in x.payload))
        case LexMeetZeroOne():
            return meet(x, lexpair(0, 1))
        case IdentityTruncation():
            return x
        case FixtureTruncation(fn=fn):
            return fn(x)
    raise TypeError(f"unknown truncation kind {t.kind!r}")


def in_fixed_set(t: TruncationSpec, x: Element) -> bool:
    """Fixed-set membership: ``tr(|x|) = |x|`` (defined for arbitrary sign)."""
    if x.space != t.space:
        raise SpaceMismatch("element does not live on the truncation's space")
    a = abs(x)
    return truncate(t, a) == a


# ---------------------------------------------------------------------------
# Axiom and property checks
# ---------------------------------------------------------------------------

def _ejson(x: Element):
    return element_to_json(x)


def check_tau1(
    t: TruncationSpec, pairs: Sequence[tuple[Element, Element]], seed: int = 0
) -> LawReport:
    """``a ^ tr(b) <= tr(a) <= a`` over sampled positive pairs."""
    pairs = list(pairs)
    if not pairs:
        raise PreconditionViolated("tau1 needs at least one sample pair")
    for a, b in pairs:
        ta = truncate(t, a)
        tb = truncate(t, b)
        if not leq(meet(a, tb), ta) or not leq(ta, a):
            witness = {"a": _ejson(a), "b": _ejson(b), "tr_a": _ejson(ta), "tr_b": _ejson(tb)}
            return LawReport.refuted("tau1", len(pairs), seed, witness)
    return LawReport.passed("tau1", len(pairs), seed)


def check_tau2(t: TruncationSpec, samples: Sequence[Element], seed: int = 0) -> LawReport:
    """``tr(a) = 0  =>  a = 0`` over positive samples."""
    samples = list(samples)
    if not samples:
        raise PreconditionViolated("tau2 needs at least one sample")
    z = zero(t.space)
    for a in samples:
        if truncate(t, a) == z and a != z:
            return LawReport.refuted("tau2", len(samples), seed, {"a": _ejson(a)})
    return LawReport.passed("tau2", len(samples), seed)


@dataclass(frozen=True)
class SymbolicPass:
    reason: str


@dataclass(frozen=True)
class SymbolicViolation:
    witness: Element
    reason: str


@dataclass(frozen=True)
class ViolationWitness:
    """A sample that stayed fixed through every checked multiple (bounded evidence)."""

    witness: Element
    bound: int


@dataclass(frozen=True)
class NoViolationUpTo:
    bound: int


Tau3Result = SymbolicPass | SymbolicViolation | ViolationWitness | NoViolationUpTo


def check_tau3(
    t: TruncationSpec, samples: Sequence[Element], bound: int = 100
) -> Tau3Result:
    """Decide the multiples axiom: ``tr(n*a) = n*a`` for all n forces ``a = 0``.

    The cataloged kinds are decided symbolically from their closed forms; a
    fixture truncation falls back to a bounded search over the samples, which
    can only produce bounded evidence, never a proof.
    """
    z = zero(t.space)
    for a in samples:
        if not leq(z, a):
            raise NegativeInput("tau3 samples must be positive")
    positive = [a for a in samples if a != z]
    match t.kind:
        case IdentityTruncation():
            witness = positive[0] if positive else line(1)
            return SymbolicViolation(
                witness, "every positive element is fixed together with all its multiples"
            )
        case MeetWithOne():
            return SymbolicPass(
                "n*x <= 1 componentwise for every n forces each coordinate to 0"
            )
        case LexMeetZeroOne():
            return SymbolicPass(
                "n*x <= (0,1) for every n forces the first coordinate to 0, then the second"
            )
        case MeetWithUnit(unit=u):
            if isinstance(t.space, LexPlane):
                if u.payload[0] > 0:
                    return SymbolicViolation(
                        lexpair(0, 1),
                        "n*(0,1) <= u holds for every n because the unit's first coordinate is positive",
                    )
                return SymbolicPass(
                    "the unit lies on the second axis, so multiples escape it coordinatewise"
                )
            return SymbolicPass(
                "n*x <= u componentwise for every n forces each coordinate to 0"
            )
        case FixtureTruncation():
            for a in positive:
                fixed_through_bound = True
                for n in range(1, bound + 1):
                    na = scale(n, a)
                    if truncate(t, na) != na:
                        fixed_through_bound = False
                        break
                if fixed_through_bound:
                    return ViolationWitness(a, bound)
            return NoViolationUpTo(bound)
    raise TypeError(f"unknown truncation kind {t.kind!r}")


def check_prop21(
    t: TruncationSpec, pairs: Sequence[tuple[Element, Element]], seed: int = 0
) -> LawReport:
    """The exchange identity ``a ^ tr(b) = tr(a) ^ b`` over sampled positive pairs."""
    pairs = list(pairs)
    if not pairs:
        raise PreconditionViolated("prop21 needs at least one sample pair")
    for a, b in pairs:
        lhs = meet(a, truncate(t, b))
        rhs = meet(truncate(t, a), b)
        if lhs != rhs:
            witness = {"a": _ejson(a), "b": _ejson(b), "lhs": _ejson(lhs), "rhs": _ejson(rhs)}
            return LawReport.refuted("prop21", len(pairs), seed, witness)
    return LawReport.passed("prop21", len(pairs), seed)


_PROP22_ITEMS = ("bound", "monotone", "idempotent", "image", "downward", "birkhoff")


def check_prop22(
    t: TruncationSpec, pairs: Sequence[tuple[Element, Element]], seed: int = 0
) -> LawReport:
    """The six elementary truncation properties over sampled positive pairs.

    Per pair ``(x, y)``: tr(x) <= x; monotonicity along ``x <= x + y``;
    idempotency; the image lies in the fixed set (and fixed points are their
    own truncation); the fixed set is downward closed; and the Birkhoff-type
    inequality ``|tr(x) - tr(y)| <= tr(|x - y|)``.
    """
    pairs = list(pairs)
    if not pairs:
        raise PreconditionViolated("prop22 needs at least one sample pair")

    def failing_item(x: Element, y: Element) -> tuple[str, dict] | None:
        tx = truncate(t, x)
        ty = truncate(t, y)
        if not leq(tx, x):
            return "bound", {"x": _ejson(x)}
        bigger = x + y
        if not leq(tx, truncate(t, bigger)):
            return "monotone", {"x": _ejson(x), "y": _ejson(bigger)}
        if truncate(t, tx) != tx:
            return "idempotent", {"x": _ejson(x), "tr_x": _ejson(tx)}
        if not in_fixed_set(t, tx) or (in_fixed_set(t, x) and tx != x):
            return "image", {"x": _ejson(x), "tr_x": _ejson(tx)}
        below_fixed = meet(x, ty)
        if not in_fixed_set(t, below_fixed):
            return "downward", {"x": _ejson(below_fixed), "y": _ejson(ty)}
        if not leq(abs(tx - ty), truncate(t, abs(x - y))):
            return "birkhoff", {"x": _ejson(x), "y": _ejson(y)}
        return None

    for x, y in pairs:
        failure = failing_item(x, y)
        if failure is not None:
            item, data = failure
            return LawReport.refuted(
                "prop22", len(pairs), seed, {"item": item, **data}, detail=f"item={item}"
            )
    return LawReport.passed("prop22", len(pairs), seed, detail="items=" + ",".join(_PROP22_ITEMS))


def compare_fixed_sets(
    t1: TruncationSpec, t2: TruncationSpec, samples: Sequence[Element], seed: int = 0
) -> LawReport:
    """Probe whether two truncations on the same space agree, via their fixed sets.

    The sample set is enriched with both truncations' outputs: whenever two
    honest truncations differ at a point, their fixed sets must already differ
    at one of the outputs, so on the enriched set the two agreement verdicts
    coincide.
    """
    if t1.space != t2.space:
        raise SpaceMismatch("fixed-set comparison needs a common space")
    positives = []
    seen = set()
    for s in samples:
        a = abs(s)
        if a not in seen:
            seen.add(a)
            positives.append(a)
    enriched = list(positives)
    for p in positives:
        for out in (truncate(t1, p), truncate(t2, p)):
            if out not in seen:
                seen.add(out)
                enriched.append(out)

    fixed_witness = None
    for x in enriched:
        if in_fixed_set(t1, x) != in_fixed_set(t2, x):
            fixed_witness = x
            break
    trunc_witness = None
    for x in enriched:
        if truncate(t1, x) != truncate(t2, x):
            trunc_witness = x
            break

    fixed_agree = fixed_witness is None
    trunc_agree = trunc_witness is None
    if fixed_agree and trunc_agree:
        return LawReport.passed("lemma23.compare", len(enriched), seed)
    witness = {
        "fixed_sets_agree": fixed_agree,
        "truncations_agree": trunc_agree,
        "fixed_set_witness": None if fixed_witness is None else _ejson(fixed_witness),
        "truncation_witness": None if trunc_witness is None else _ejson(trunc_witness),
    }
    return LawReport.refuted("lemma23.compare", len(enriched), seed, witness)


# ---------------------------------------------------------------------------
# Wire format
# ---------------------------------------------------------------------------

def truncation_to_json(t: TruncationSpec) -> dict:
    match t.kind:
        case MeetWithUnit(unit=u):
            return {"kind": "meet_with_unit", "unit": element_to_json(u)}
        case MeetWithOne():
            return {"kind": "meet_with_one"}
        case LexMeetZeroOne():
            return {"kind": "lex_meet_zero_one"}
        case IdentityTruncation():
            return {"kind": "identity"}
        case FixtureTruncation(name=name):
            raise DescriptorError(f"fixture truncation {name!r} has no wire format")
    raise TypeError(f"unknown truncation kind {t.kind!r}")


def truncation_from_json(space: Space, obj) -> TruncationSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DescriptorError(f"truncation descriptor must be an object with a 'kind' key: {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "meet_with_unit":
            if "unit" not in obj:
                raise DescriptorError("meet_with_unit needs a 'unit' element")
            return truncation(space, MeetWithUnit(element_from_json(space, obj["unit"])))
        if kind == "meet_with_one":
            return truncation(space, MeetWithOne())
        if kind == "lex_meet_zero_one":
            return truncation(space, LexMeetZeroOne())
        if kind == "identity":
            return truncation(space, IdentityTruncation())
    except (ValueError, SpaceMismatch) as exc:
        raise DescriptorError(str(exc)) from exc
    raise DescriptorError(f"unknown truncation kind {kind!r}")
