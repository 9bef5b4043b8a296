"""Deterministic, seed-replayable sample streams for the law engine.

Identical ``(seed, space, bounds)`` always yields the identical stream: the
generator draws exclusively through :class:`random.Random` integer methods,
whose Mersenne-twister behaviour is stable across platforms, and all values
are exact rationals.  Magnitudes and sparse supports are bounded to keep
exact arithmetic fast.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .spaces import (
    Element,
    FinitePointwise,
    IdentityLine,
    LexPlane,
    Space,
    SparseSeq,
    add,
    meet,
    neg,
    pos,
    scale,
    sparse,
    zero,
)
from .truncation import truncate
from .unitization import UnitizationCtx, UnitizedElement, abs_u

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Bounds:
    max_index: int = 16
    max_magnitude: int = 32
    max_support: int = 4


class SampleGen:
    """A seeded stream of elements of one space."""

    def __init__(self, seed: int, space: Space, bounds: Bounds | None = None):
        self.seed = int(seed) & _MASK64
        self.space = space
        self.bounds = bounds or Bounds()
        self._rng = random.Random(self.seed)

    def randint(self, lo: int, hi: int) -> int:
        return self._rng.randint(lo, hi)

    def index_subset(self, upper: int) -> list[int]:
        """A uniformly sized random subset of ``1..upper``, in sample order."""
        return self._rng.sample(range(1, upper + 1), self._rng.randint(0, upper))

    def rational(self, *, nonneg: bool = False, nonzero: bool = False) -> Fraction:
        m = self.bounds.max_magnitude
        den = self._rng.randint(1, m)
        if nonzero:
            num = self._rng.randint(1, m)
            if not nonneg and self._rng.randint(0, 1):
                num = -num
        else:
            num = self._rng.randint(0 if nonneg else -m, m)
        return Fraction(num, den)

    def _values(self, count: int, *, nonneg: bool, nonzero: bool) -> tuple[Fraction, ...]:
        return tuple(self.rational(nonneg=nonneg, nonzero=nonzero) for _ in range(count))

    def _sparse(self, *, nonneg: bool) -> Element:
        k = self._rng.randint(0, self.bounds.max_support)
        indices = sorted(self._rng.sample(range(1, self.bounds.max_index + 1), k))
        return sparse({i: self.rational(nonneg=nonneg, nonzero=True) for i in indices})

    def element(self) -> Element:
        match self.space:
            case FinitePointwise(dim):
                return Element(self.space, self._values(dim, nonneg=False, nonzero=False))
            case SparseSeq():
                return self._sparse(nonneg=False)
            case LexPlane():
                return Element(self.space, self._values(2, nonneg=False, nonzero=False))
            case IdentityLine():
                return Element(self.space, self.rational())
        raise TypeError(f"unknown space {self.space!r}")

    def positive(self) -> Element:
        match self.space:
            case FinitePointwise(dim):
                return Element(self.space, self._values(dim, nonneg=True, nonzero=False))
            case SparseSeq():
                return self._sparse(nonneg=True)
            case LexPlane():
                # any pair with positive first coordinate is positive; mix in
                # second-axis-only positives, which the lex order treats specially
                if self._rng.randint(0, 3) == 0:
                    return Element(self.space, (Fraction(0), self.rational(nonneg=True)))
                return Element(
                    self.space,
                    (self.rational(nonneg=True, nonzero=True), self.rational()),
                )
            case IdentityLine():
                return Element(self.space, self.rational(nonneg=True))
        raise TypeError(f"unknown space {self.space!r}")

    def positive_nonzero(self) -> Element:
        z = zero(self.space)
        for _ in range(8):
            x = self.positive()
            if x != z:
                return x
        return add(self.positive(), self._unit_like())

    def _unit_like(self) -> Element:
        match self.space:
            case FinitePointwise(dim):
                return Element(self.space, (Fraction(1),) * dim)
            case SparseSeq():
                return sparse({1: 1})
            case LexPlane():
                return Element(self.space, (Fraction(0), Fraction(1)))
            case IdentityLine():
                return Element(self.space, Fraction(1))
        raise TypeError(f"unknown space {self.space!r}")

    def pair(self) -> tuple[Element, Element]:
        return self.element(), self.element()

    def positive_pair(self) -> tuple[Element, Element]:
        return self.positive(), self.positive()

    def increasing_chain(self, length: int, cap: Element) -> tuple[Element, ...]:
        """An increasing chain ``0 <= x_1 <= ... <= x_n <= cap`` (``cap >= 0``)."""
        out = []
        current = meet(self.positive(), cap)
        out.append(current)
        for _ in range(length - 1):
            current = meet(add(current, self.positive()), cap)
            out.append(current)
        return tuple(out)

    # -- unitized sampling ---------------------------------------------------

    def unitized(self) -> UnitizedElement:
        return UnitizedElement(self.element(), self.rational())

    def positive_unitized(self, ctx: UnitizationCtx) -> UnitizedElement:
        """A cone member, built constructively so all cone branches are exercised."""
        branch = self._rng.randint(0, 3)
        if branch == 0:
            return ctx.embed(self.positive())
        if branch == 1:
            return ctx.scalar(self.rational(nonneg=True))
        if branch == 2:
            # pos(x) - lam * tr((1/lam) neg(x)) has rescaled negative part in
            # the fixed set by idempotency, so the pair is in the cone
            lam = self.rational(nonneg=True, nonzero=True)
            x = self.element()
            fixed = truncate(ctx.trunc, scale(1 / lam, neg(x)))
            return UnitizedElement(pos(x) - scale(lam, fixed), lam)
        return abs_u(ctx, self.unitized())

    def positive_unitized_scalar(self, ctx: UnitizationCtx) -> UnitizedElement:
        """A cone member with strictly positive scalar part."""
        for _ in range(8):
            a = self.positive_unitized(ctx)
            if a.lam > 0:
                return a
        return self.positive_unitized(ctx) + ctx.one
