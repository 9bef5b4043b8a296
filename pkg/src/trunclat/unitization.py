"""The unitization of a truncated space: a formal unit adjoined to the base.

Elements are pairs ``x + lam*1`` with ``x`` in the base space and ``lam``
rational.  The positive cone is

    ``lam = 0`` and ``x >= 0``,  or  ``lam > 0`` and ``(1/lam) * neg(x)``
    lies in the base truncation's fixed set,

and the absolute value is evaluated from the closed form

    ``|x + lam| = |x| - 2|lam| * tr((1/lam) neg(x)  v  (-1/lam) pos(x)) + |lam|``

for ``lam != 0`` (and ``|x|`` for ``lam = 0``).  Joins and meets are derived
from the absolute value via ``a v b = (a + b + |a - b|) / 2``, so the formula
above is the single source of truth for the whole order structure; its
correctness is cross-checked in the test suite against an independent
pointwise oracle.  The truncation on the unitization is the meet with the
adjoined unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DescriptorError, NegativeInput, SpaceMismatch
from .rational import Rational, coerce_rational, format_rational, parse_rational
from .spaces import (
    Element,
    IdentityLine,
    Space,
    SparseSeq,
    element_from_json,
    element_to_json,
    join,
    leq,
    line,
    neg,
    pos,
    scale,
    sparse,
    support,
    zero,
)
from .truncation import TruncationSpec, in_fixed_set, truncate
from .report import LawReport

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class UnitizedElement:
    """``e + lam * 1`` with ``e`` in the base space."""

    e: Element
    lam: Rational

    def __add__(self, other: "UnitizedElement") -> "UnitizedElement":
        return UnitizedElement(self.e + other.e, self.lam + other.lam)

    def __sub__(self, other: "UnitizedElement") -> "UnitizedElement":
        return UnitizedElement(self.e - other.e, self.lam - other.lam)

    def __neg__(self) -> "UnitizedElement":
        return UnitizedElement(-self.e, -self.lam)

    def __rmul__(self, c) -> "UnitizedElement":
        c = coerce_rational(c)
        return UnitizedElement(scale(c, self.e), c * self.lam)


@dataclass(frozen=True)
class UnitizationCtx:
    """A base space together with its truncation; fixes the meaning of ``1``."""

    space: Space
    trunc: TruncationSpec

    def __post_init__(self) -> None:
        if self.trunc.space != self.space:
            raise SpaceMismatch("truncation does not act on the base space")

    @property
    def zero(self) -> UnitizedElement:
        return UnitizedElement(zero(self.space), Fraction(0))

    @property
    def one(self) -> UnitizedElement:
        return UnitizedElement(zero(self.space), Fraction(1))

    def embed(self, x: Element) -> UnitizedElement:
        if x.space != self.space:
            raise SpaceMismatch("cannot embed an element of a different space")
        return UnitizedElement(x, Fraction(0))

    def scalar(self, lam) -> UnitizedElement:
        return UnitizedElement(zero(self.space), coerce_rational(lam))


def unitize(trunc: TruncationSpec) -> UnitizationCtx:
    return UnitizationCtx(trunc.space, trunc)


# ---------------------------------------------------------------------------
# Order structure
# ---------------------------------------------------------------------------

def is_positive(ctx: UnitizationCtx, a: UnitizedElement) -> bool:
    """Cone membership.

    For a positive scalar part the test reduces to fixed-set membership of the
    rescaled negative part, which is already a positive element.
    """
    if a.lam < 0:
        return False
    if a.lam == 0:
        return leq(zero(ctx.space), a.e)
    return in_fixed_set(ctx.trunc, scale(1 / a.lam, neg(a.e)))


def leq_u(ctx: UnitizationCtx, a: UnitizedElement, b: UnitizedElement) -> bool:
    return is_positive(ctx, b - a)


def lt_u(ctx: UnitizationCtx, a: UnitizedElement, b: UnitizedElement) -> bool:
    return a != b and leq_u(ctx, a, b)


def abs_u(ctx: UnitizationCtx, a: UnitizedElement) -> UnitizedElement:
    if a.lam == 0:
        return UnitizedElement(abs(a.e), Fraction(0))
    lam_abs = abs(a.lam)
    inv = 1 / a.lam
    # (1/lam) neg(e) v (-1/lam) pos(e) is >= 0 for either sign of lam
    arg = join(scale(inv, neg(a.e)), scale(-inv, pos(a.e)))
    truncated = truncate(ctx.trunc, arg)
    e_part = abs(a.e) - scale(2 * lam_abs, truncated)
    return UnitizedElement(e_part, lam_abs)


def join_u(ctx: UnitizationCtx, a: UnitizedElement, b: UnitizedElement) -> UnitizedElement:
    return _HALF * (a + b + abs_u(ctx, a - b))


def meet_u(ctx: UnitizationCtx, a: UnitizedElement, b: UnitizedElement) -> UnitizedElement:
    return _HALF * (a + b - abs_u(ctx, a - b))


def pos_u(ctx: UnitizationCtx, a: UnitizedElement) -> UnitizedElement:
    return join_u(ctx, a, ctx.zero)


def neg_u(ctx: UnitizationCtx, a: UnitizedElement) -> UnitizedElement:
    return join_u(ctx, -a, ctx.zero)


def truncate_u(ctx: UnitizationCtx, a: UnitizedElement) -> UnitizedElement:
    """Truncation on the unitization: meet with the adjoined unit."""
    if not is_positive(ctx, a):
        raise NegativeInput("truncate_u requires a positive element")
    return meet_u(ctx, a, ctx.one)


def in_fixed_u(ctx: UnitizationCtx, a: UnitizedElement) -> bool:
    b = abs_u(ctx, a)
    return truncate_u(ctx, b) == b


# ---------------------------------------------------------------------------
# Structure checks (fixed set, ideal absorption, orthogonal complement)
# ---------------------------------------------------------------------------

def check_thm11_fixedset(
    ctx: UnitizationCtx, samples: Sequence[Element], seed: int = 0
) -> LawReport:
    """Base fixed set == elements whose absolute value sits below the unit."""
    samples = list(samples)
    for x in samples:
        via_fixed = in_fixed_set(ctx.trunc, x)
        via_order = leq_u(ctx, ctx.embed(abs(x)), ctx.one)
        if via_fixed != via_order:
            witness = {
                "x": element_to_json(x),
                "in_fixed_set": via_fixed,
                "abs_leq_one": via_order,
            }
            return LawReport.refuted("thm11.fixedset", len(samples), seed, witness)
    return LawReport.passed("thm11.fixedset", len(samples), seed)


def check_ideal(
    ctx: UnitizationCtx,
    pairs: Sequence[tuple[Element, UnitizedElement]],
    seed: int = 0,
) -> LawReport:
    """Absorption: ``|b| <= |a|`` with ``a`` in the base forces ``b`` into the base."""
    pairs = list(pairs)
    absorbed = 0
    for a, b in pairs:
        if leq_u(ctx, abs_u(ctx, b), ctx.embed(abs(a))):
            absorbed += 1
            if b.lam != 0:
                witness = {"a": element_to_json(a), "b": unitized_to_json(b)}
                return LawReport.refuted("thm11.ideal", len(pairs), seed, witness)
    return LawReport.passed(
        "thm11.ideal", len(pairs), seed, detail=f"absorbed={absorbed}"
    )


@dataclass(frozen=True)
class UnitalSpan:
    """The orthogonal complement is spanned by ``1 - u``; carries the verified witness."""

    w: UnitizedElement
    verified_pairs: int
    failure: object = None


@dataclass(frozen=True)
class NonUnitalZero:
    """Every nonzero candidate met some base element; carries a sample table."""

    separated: int
    table: tuple
    unresolved: tuple = ()


OrthoResult = UnitalSpan | NonUnitalZero


def _separator_candidates(ctx, z: UnitizedElement, e_samples):
    """Base elements likely to meet ``|z|`` nontrivially, tried in order."""
    if z.e != zero(ctx.space):
        yield abs(z.e)
    if isinstance(ctx.space, SparseSeq):
        fresh = max(support(z.e), default=0) + 1
        yield sparse({fresh: 1})
    elif isinstance(ctx.space, IdentityLine):
        yield line(1)
    for x in e_samples:
        a = abs(x)
        if a != zero(ctx.space):
            yield a


def orthogonal_complement_witness(
    ctx: UnitizationCtx,
    e_samples: Sequence[Element],
    scalars: Sequence[Rational] = (Fraction(1), Fraction(-2), Fraction(1, 3)),
    candidates: Sequence[UnitizedElement] = (),
) -> OrthoResult:
    """Describe the base space's disjoint complement inside the unitization.

    Unital base: returns ``w = 1 - u`` and verifies ``|c*w| ^ |x| = 0`` for
    every sampled base element ``x`` and scalar ``c``.  Non-unital base: for
    each nonzero candidate, searches for a base element whose absolute value
    meets the candidate's nontrivially; candidates with no separator found are
    reported as unresolved rather than declared orthogonal.
    """
    zero_u = ctx.zero
    if ctx.trunc.unital:
        u = ctx.trunc.unit
        w = UnitizedElement(scale(-1, u), Fraction(1))
        checked = 0
        for x in e_samples:
            target = ctx.embed(abs(x))
            for c in scalars:
                if meet_u(ctx, abs_u(ctx, c * w), target) != zero_u:
                    failure = {
                        "x": element_to_json(x),
                        "c": format_rational(Fraction(c)),
                    }
                    return UnitalSpan(w, checked, failure)
                checked += 1
        return UnitalSpan(w, checked)

    table = []
    unresolved = []
    for z in candidates:
        if z == zero_u:
            continue
        az = abs_u(ctx, z)
        separator = None
        for x in _separator_candidates(ctx, z, e_samples):
            if meet_u(ctx, az, ctx.embed(x)) != zero_u:
                separator = x
                break
        if separator is None:
            unresolved.append(unitized_to_json(z))
        else:
            table.append((unitized_to_json(z), element_to_json(separator)))
    return NonUnitalZero(len(table), tuple(table), tuple(unresolved))


# ---------------------------------------------------------------------------
# Wire format
# ---------------------------------------------------------------------------

def unitized_to_json(a: UnitizedElement) -> dict:
    return {"e": element_to_json(a.e), "lambda": format_rational(a.lam)}


def unitized_from_json(space: Space, obj) -> UnitizedElement:
    if not isinstance(obj, Mapping) or "e" not in obj or "lambda" not in obj:
        raise DescriptorError(
            f"unitized element must be an object with 'e' and 'lambda' keys: {obj!r}"
        )
    try:
        lam = parse_rational(obj["lambda"])
    except ValueError as exc:
        raise DescriptorError(str(exc)) from exc
    return UnitizedElement(element_from_json(space, obj["e"]), lam)
