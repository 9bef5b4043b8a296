"""Exact vector-lattice kernel: spaces, elements, and the primitive order operations.

Four concrete spaces are supported:

* ``FinitePointwise(n)``: rational n-tuples under the componentwise order;
* ``SparseSeq``: finitely supported rational sequences indexed by 1, 2, ...
  under the componentwise order (canonical form stores no zeros, so structural
  equality is semantic equality);
* ``LexPlane``: rational pairs under the lexicographic order, which is total:
  joins and meets are computed by comparison, never componentwise;
* ``IdentityLine``: a single rational axis.

Elements are immutable values and every operation is pure and exact.
The sign decomposition follows the lattice convention: ``pos(a) = a v 0`` and
``neg(a) = (-a) v 0`` are both positive, with ``a = pos(a) - neg(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DescriptorError, EmptySet, PreconditionViolated, SpaceMismatch
from .rational import coerce_rational, format_rational, parse_rational

_ZERO = Fraction(0)
_MINUS_ONE = Fraction(-1)


# ---------------------------------------------------------------------------
# Spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinitePointwise:
    """Rational ``dim``-tuples, componentwise order."""

    dim: int

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dimension must be an integer >= 1, got {self.dim!r}")


@dataclass(frozen=True)
class SparseSeq:
    """Finitely supported rational sequences indexed by 1, 2, ..., componentwise order."""


@dataclass(frozen=True)
class LexPlane:
    """Rational pairs under the lexicographic (total) order."""


@dataclass(frozen=True)
class IdentityLine:
    """A single rational axis."""


Space = FinitePointwise | SparseSeq | LexPlane | IdentityLine


_coerce = coerce_rational


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Element:
    """A space-tagged lattice element.

    The payload shape depends on the space: a tuple of rationals for
    ``FinitePointwise``, a sorted tuple of ``(index, value)`` pairs with no
    zero values for ``SparseSeq``, a rational pair for ``LexPlane``, and a
    single rational for ``IdentityLine``.  Use the constructors below rather
    than instantiating directly.
    """

    space: Space
    payload: object

    def __add__(self, other: "Element") -> "Element":
        return add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        return sub(self, other)

    def __neg__(self) -> "Element":
        return scale(_MINUS_ONE, self)

    def __rmul__(self, c) -> "Element":
        return scale(_coerce(c), self)

    def __abs__(self) -> "Element":
        return join(self, scale(_MINUS_ONE, self))

    def __le__(self, other: "Element") -> bool:
        return leq(self, other)

    def __lt__(self, other: "Element") -> bool:
        return leq(self, other) and self != other


def fp(*values) -> Element:
    """A ``FinitePointwise(len(values))`` element."""
    payload = tuple(_coerce(v) for v in values)
    if not payload:
        raise ValueError("finite pointwise elements need at least one coordinate")
    return Element(FinitePointwise(len(payload)), payload)


def fp_const(dim: int, value) -> Element:
    """The constant vector in ``FinitePointwise(dim)``."""
    v = _coerce(value)
    return Element(FinitePointwise(dim), (v,) * dim)


def sparse(entries: Mapping[int, object] | Iterable[tuple[int, object]] = ()) -> Element:
    """A finitely supported sequence; zero values are dropped, indices must be >= 1."""
    items = entries.items() if isinstance(entries, Mapping) else entries
    cleaned = {}
    for k, v in items:
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"sparse indices must be integers >= 1, got {k!r}")
        value = _coerce(v)
        if value != 0:
            cleaned[k] = value
    return Element(SparseSeq(), tuple(sorted(cleaned.items())))


def lexpair(first, second) -> Element:
    return Element(LexPlane(), (_coerce(first), _coerce(second)))


def line(value) -> Element:
    return Element(IdentityLine(), _coerce(value))


def zero(space: Space) -> Element:
    match space:
        case FinitePointwise(dim):
            return Element(space, (_ZERO,) * dim)
        case SparseSeq():
            return Element(space, ())
        case LexPlane():
            return Element(space, (_ZERO, _ZERO))
        case IdentityLine():
            return Element(space, _ZERO)
    raise TypeError(f"unknown space {space!r}")


def support(a: Element) -> tuple[int, ...]:
    """Indices with nonzero value (``SparseSeq`` only)."""
    if not isinstance(a.space, SparseSeq):
        raise SpaceMismatch("support is defined for SparseSeq elements")
    return tuple(k for k, _ in a.payload)


def coeff(a: Element, index: int) -> Fraction:
    """The value of a ``SparseSeq`` element at ``index`` (zero off the support)."""
    if not isinstance(a.space, SparseSeq):
        raise SpaceMismatch("coeff is defined for SparseSeq elements")
    for k, v in a.payload:
        if k == index:
            return v
    return _ZERO


# ---------------------------------------------------------------------------
# Primitive operations
# ---------------------------------------------------------------------------

def _same_space(a: Element, b: Element) -> None:
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space!r} vs {b.space!r}")


def _sparse_merge(pa, pb, fn) -> tuple:
    da = dict(pa)
    db = dict(pb)
    out = []
    for k in sorted(set(da) | set(db)):
        v = fn(da.get(k, _ZERO), db.get(k, _ZERO))
        if v != 0:
            out.append((k, v))
    return tuple(out)


def _lex_leq(pa, pb) -> bool:
    return pa[0] < pb[0] or (pa[0] == pb[0] and pa[1] <= pb[1])


def add(a: Element, b: Element) -> Element:
    _same_space(a, b)
    match a.space:
        case FinitePointwise() | LexPlane():
            return Element(a.space, tuple(x + y for x, y in zip(a.payload, b.payload)))
        case SparseSeq():
            return Element(a.space, _sparse_merge(a.payload, b.payload, lambda x, y: x + y))
        case IdentityLine():
            return Element(a.space, a.payload + b.payload)
    raise TypeError(f"unknown space {a.space!r}")


def sub(a: Element, b: Element) -> Element:
    return add(a, scale(_MINUS_ONE, b))


def scale(c, a: Element) -> Element:
    c = _coerce(c)
    match a.space:
        case FinitePointwise() | LexPlane():
            return Element(a.space, tuple(c * x for x in a.payload))
        case SparseSeq():
            if c == 0:
                return Element(a.space, ())
            return Element(a.space, tuple((k, c * v) for k, v in a.payload))
        case IdentityLine():
            return Element(a.space, c * a.payload)
    raise TypeError(f"unknown space {a.space!r}")


def leq(a: Element, b: Element) -> bool:
    _same_space(a, b)
    match a.space:
        case FinitePointwise():
            return all(x <= y for x, y in zip(a.payload, b.payload))
        case SparseSeq():
            da = dict(a.payload)
            db = dict(b.payload)
            return all(da.get(k, _ZERO) <= db.get(k, _ZERO) for k in set(da) | set(db))
        case LexPlane():
            return _lex_leq(a.payload, b.payload)
        case IdentityLine():
            return a.payload <= b.payload
    raise TypeError(f"unknown space {a.space!r}")


def join(a: Element, b: Element) -> Element:
    _same_space(a, b)
    match a.space:
        case FinitePointwise():
            return Element(a.space, tuple(max(x, y) for x, y in zip(a.payload, b.payload)))
        case SparseSeq():
            return Element(a.space, _sparse_merge(a.payload, b.payload, max))
        case LexPlane():
            # The lex order is total: the join is the larger pair, not the
            # componentwise maximum.
            return a if _lex_leq(b.payload, a.payload) else b
        case IdentityLine():
            return Element(a.space, max(a.payload, b.payload))
    raise TypeError(f"unknown space {a.space!r}")


def meet(a: Element, b: Element) -> Element:
    _same_space(a, b)
    match a.space:
        case FinitePointwise():
            return Element(a.space, tuple(min(x, y) for x, y in zip(a.payload, b.payload)))
        case SparseSeq():
            return Element(a.space, _sparse_merge(a.payload, b.payload, min))
        case LexPlane():
            return b if _lex_leq(b.payload, a.payload) else a
        case IdentityLine():
            return Element(a.space, min(a.payload, b.payload))
    raise TypeError(f"unknown space {a.space!r}")


def pos(a: Element) -> Element:
    """Positive part ``a v 0``."""
    return join(a, zero(a.space))


def neg(a: Element) -> Element:
    """Negative part ``(-a) v 0``; always >= 0, with ``a = pos(a) - neg(a)``."""
    return join(scale(_MINUS_ONE, a), zero(a.space))


def sup_finite(elements: Iterable[Element]) -> Element:
    """Supremum of a nonempty finite collection.

    Componentwise maximum for the pointwise spaces; the lexicographic maximum
    for ``LexPlane``.  Finite suprema always exist in the four built-in
    spaces.
    """
    items = list(elements)
    if not items:
        raise EmptySet("sup_finite of an empty collection")
    acc = items[0]
    for x in items[1:]:
        acc = join(acc, x)
    return acc


# ---------------------------------------------------------------------------
# Chain constructions
# ---------------------------------------------------------------------------

def _check_increasing(chain: Sequence[Element], what: str) -> None:
    for i in range(len(chain) - 1):
        if not leq(chain[i], chain[i + 1]):
            raise PreconditionViolated(f"{what} is not increasing at position {i}")


def decompose_chain(
    chain: Sequence[Element], u: Element, v: Element
) -> tuple[tuple[Element, ...], tuple[Element, ...]]:
    """Split an increasing chain ``0 <= x_i <= |u| + |v|`` into two increasing chains.

    Returns ``(u_chain, v_chain)`` with ``u_i = (x_i v (-|u|)) ^ |u|`` and
    ``v_i = x_i - u_i``, which satisfy ``0 <= u_i <= |u|``, ``0 <= v_i <= |v|``
    and ``u_i + v_i = x_i``.
    """
    items = tuple(chain)
    if not items:
        raise PreconditionViolated("chain must be nonempty")
    _same_space(u, v)
    for x in items:
        _same_space(x, u)
    au = abs(u)
    av = abs(v)
    cap = add(au, av)
    z = zero(u.space)
    for i, x in enumerate(items):
        if not leq(z, x) or not leq(x, cap):
            raise PreconditionViolated(f"chain element {i} is not within [0, |u|+|v|]")
    _check_increasing(items, "chain")
    minus_au = scale(_MINUS_ONE, au)
    us = tuple(meet(join(x, minus_au), au) for x in items)
    vs = tuple(sub(x, ux) for x, ux in zip(items, us))
    return us, vs


def check_chain_sup_additivity(
    xchain: Sequence[Element], ychain: Sequence[Element]
) -> bool:
    """Whether ``sup(x_i + y_i) = sup(x_i) + sup(y_i)`` for two increasing chains.

    For finite increasing chains the supremum is the last element, so this
    must always return True; a False return is a kernel regression.
    """
    xs = tuple(xchain)
    ys = tuple(ychain)
    if not xs or len(xs) != len(ys):
        raise PreconditionViolated("chains must be nonempty and of equal length")
    for x in xs:
        _same_space(x, xs[0])
    for y in ys:
        _same_space(y, xs[0])
    _check_increasing(xs, "first chain")
    _check_increasing(ys, "second chain")
    sums = [add(x, y) for x, y in zip(xs, ys)]
    return sup_finite(sums) == add(sup_finite(xs), sup_finite(ys))


# ---------------------------------------------------------------------------
# Wire format
# ---------------------------------------------------------------------------

def space_to_json(space: Space) -> dict:
    match space:
        case FinitePointwise(dim):
            return {"space": "finite_pointwise", "dim": dim}
        case SparseSeq():
            return {"space": "sparse_seq"}
        case LexPlane():
            return {"space": "lex_plane"}
        case IdentityLine():
            return {"space": "identity_line"}
    raise TypeError(f"unknown space {space!r}")


def space_from_json(obj) -> Space:
    if not isinstance(obj, Mapping) or "space" not in obj:
        raise DescriptorError(f"space descriptor must be an object with a 'space' key: {obj!r}")
    name = obj["space"]
    if name == "finite_pointwise":
        dim = obj.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise DescriptorError("finite_pointwise needs an integer 'dim' >= 1")
        return FinitePointwise(dim)
    if name == "sparse_seq":
        return SparseSeq()
    if name == "lex_plane":
        return LexPlane()
    if name == "identity_line":
        return IdentityLine()
    raise DescriptorError(f"unknown space name {name!r}")


def element_to_json(a: Element):
    match a.space:
        case FinitePointwise() | LexPlane():
            return [format_rational(v) for v in a.payload]
        case SparseSeq():
            return {str(k): format_rational(v) for k, v in a.payload}
        case IdentityLine():
            return format_rational(a.payload)
    raise TypeError(f"unknown space {a.space!r}")


def element_from_json(space: Space, obj) -> Element:
    try:
        match space:
            case FinitePointwise(dim):
                if not isinstance(obj, list) or len(obj) != dim:
                    raise DescriptorError(f"expected a list of {dim} rationals, got {obj!r}")
                return Element(space, tuple(parse_rational(v) for v in obj))
            case SparseSeq():
                if not isinstance(obj, Mapping):
                    raise DescriptorError(f"expected an index->rational object, got {obj!r}")
                return sparse({int(k): parse_rational(v) for k, v in obj.items()})
            case LexPlane():
                if not isinstance(obj, list) or len(obj) != 2:
                    raise DescriptorError(f"expected a pair of rationals, got {obj!r}")
                return Element(space, (parse_rational(obj[0]), parse_rational(obj[1])))
            case IdentityLine():
                if not isinstance(obj, str):
                    raise DescriptorError(f"expected a 'p/q' string, got {obj!r}")
                return Element(space, parse_rational(obj))
    except (ValueError, TypeError) as exc:
        raise DescriptorError(f"bad element payload {obj!r}: {exc}") from exc
    raise TypeError(f"unknown space {space!r}")
