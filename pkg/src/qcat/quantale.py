"""Commutative quantale bases for enriched categories.

A quantale here is a complete lattice carrying a commutative monoid
structure whose tensor preserves joins.  Every instance exposes the
order (``leq``), the tensor, its right adjoint (``residual``), finite
joins and meets, and the distinguished elements ``bottom``, ``unit``
and ``top``.

Built-in instances:

``RBOT``
    The extended nonnegative reals [0, inf] with a free bottom element
    ``bot`` adjoined below 0.  Tensor is addition, with ``bot``
    absorbing.  Categories enriched in it are causal spaces: homs are
    proper-time intervals and ``bot`` marks pairs that are not causally
    related.

``LAWVERE``
    The nonnegative reals [0, inf] ordered so that an arrow a -> b
    exists iff b <= a numerically; tensor is (truncated) addition and
    the residual is truncated subtraction.  Categories enriched in it
    are generalized metric spaces.

``BOOL``
    Truth values under conjunction; enriched categories are preorders.

``product(...)``
    Finite products of the above, componentwise.

Finite values are exact ``fractions.Fraction``s, so all law checking is
decidable.  A descriptor may opt into a comparison tolerance (used by
generators whose values come from floating point); the tolerance only
loosens comparisons, never the arithmetic itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class Tag(Enum):
    """Variant tag of a quantale element."""

    BOT = "bot"
    FINITE = "finite"
    INF = "inf"
    BOOL = "bool"
    TUPLE = "tuple"


class CarrierMismatch(ValueError):
    """A value's shape does not belong to the descriptor's carrier."""


@dataclass(frozen=True, eq=False)
class QVal:
    """A value in some quantale carrier.

    ``value`` holds the payload: an exact nonnegative ``Fraction`` for
    FINITE, a ``bool`` for BOOL, a tuple of component ``QVal``s for
    TUPLE, and ``None`` for the poles BOT and INF.
    """

    tag: Tag
    value: Fraction | bool | tuple["QVal", ...] | None = None

    def __post_init__(self) -> None:
        if self.tag is Tag.FINITE:
            if not isinstance(self.value, Fraction):
                raise TypeError("finite payload must be a Fraction")
            if self.value < 0:
                raise ValueError(f"finite payload must be nonnegative, got {self.value}")
        elif self.tag is Tag.BOOL:
            if not isinstance(self.value, bool):
                raise TypeError("bool payload must be a bool")
        elif self.tag is Tag.TUPLE:
            if (
                not isinstance(self.value, tuple)
                or not self.value
                or not all(isinstance(p, QVal) for p in self.value)
            ):
                raise TypeError("tuple payload must be a nonempty tuple of QVal")
        elif self.value is not None:
            raise TypeError(f"{self.tag.value} carries no payload")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, QVal):
            return NotImplemented
        return self.tag is other.tag and self.value == other.value

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.tag, self.value))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"QVal({format_value(self)})"

    @property
    def is_bot(self) -> bool:
        return self.tag is Tag.BOT

    @property
    def is_inf(self) -> bool:
        return self.tag is Tag.INF

    @property
    def is_finite(self) -> bool:
        return self.tag is Tag.FINITE


BOT = QVal(Tag.BOT)
INF = QVal(Tag.INF)
TRUE = QVal(Tag.BOOL, True)
FALSE = QVal(Tag.BOOL, False)


def finite(x: int | str | float | Fraction) -> QVal:
    """Wrap an exact nonnegative rational.

    Floats are converted exactly (binary value, no decimal rounding);
    pass a string such as ``"0.1"`` for decimal intent.
    """
    return QVal(Tag.FINITE, x if isinstance(x, Fraction) else Fraction(x))


def boolean(b: bool) -> QVal:
    return TRUE if b else FALSE


def tuple_val(parts: Iterable[QVal]) -> QVal:
    return QVal(Tag.TUPLE, tuple(parts))


class Kind(Enum):
    RBOT = "rbot"
    LAWVERE = "lawvere"
    BOOL = "bool"
    PRODUCT = "product"


@dataclass(frozen=True)
class QuantaleDescriptor:
    """Identifies a built-in quantale instance plus a comparison tolerance.

    ``tolerance`` is 0 for exact carriers; generators producing
    floating-point values opt into a positive tolerance, which loosens
    ``leq`` between finite values by that amount.
    """

    kind: Kind
    tolerance: float = 0.0
    factors: tuple["QuantaleDescriptor", ...] = ()

    def __post_init__(self) -> None:
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        if self.kind is Kind.PRODUCT:
            if not self.factors:
                raise ValueError("product quantale needs at least one factor")
        elif self.factors:
            raise ValueError(f"{self.kind.value} takes no factors")


RBOT = QuantaleDescriptor(Kind.RBOT)
LAWVERE = QuantaleDescriptor(Kind.LAWVERE)
BOOL = QuantaleDescriptor(Kind.BOOL)


def rbot(tolerance: float = 0.0) -> QuantaleDescriptor:
    return QuantaleDescriptor(Kind.RBOT, tolerance)


def product(*factors: QuantaleDescriptor, tolerance: float = 0.0) -> QuantaleDescriptor:
    return QuantaleDescriptor(Kind.PRODUCT, tolerance, tuple(factors))


@lru_cache(maxsize=64)
def _tol_fraction(tolerance: float) -> Fraction:
    return Fraction(tolerance)


def carrier_check(q: QuantaleDescriptor, v: QVal) -> None:
    """Raise :class:`CarrierMismatch` unless ``v`` lives in ``q``'s carrier."""
    if q.kind is Kind.RBOT:
        if v.tag not in (Tag.BOT, Tag.FINITE, Tag.INF):
            raise CarrierMismatch(f"{v!r} is not an element of the causal base")
    elif q.kind is Kind.LAWVERE:
        if v.tag not in (Tag.FINITE, Tag.INF):
            raise CarrierMismatch(f"{v!r} is not an element of the metric base")
    elif q.kind is Kind.BOOL:
        if v.tag is not Tag.BOOL:
            raise CarrierMismatch(f"{v!r} is not a truth value")
    else:
        if v.tag is not Tag.TUPLE or len(v.value) != len(q.factors):
            raise CarrierMismatch(f"{v!r} does not match the product shape")
        for f, p in zip(q.factors, v.value):
            carrier_check(f, p)


def leq(q: QuantaleDescriptor, a: QVal, b: QVal) -> bool:
    """Whether an arrow a -> b exists in ``q``'s order.

    Total order for RBOT and LAWVERE, componentwise for products.
    Finite-vs-finite comparison is loosened by ``q.tolerance``.
    """
    carrier_check(q, a)
    carrier_check(q, b)
    return _leq(q, a, b)


def _leq(q: QuantaleDescriptor, a: QVal, b: QVal) -> bool:
    if q.kind is Kind.RBOT:
        if a.tag is Tag.BOT or b.tag is Tag.INF:
            return True
        if b.tag is Tag.BOT or a.tag is Tag.INF:
            return False
        if q.tolerance:
            return a.value <= b.value + _tol_fraction(q.tolerance)
        return a.value <= b.value
    if q.kind is Kind.LAWVERE:
        # arrow a -> b iff b <= a numerically
        if a.tag is Tag.INF or (b.tag is Tag.FINITE and b.value == 0):
            return True
        if b.tag is Tag.INF:
            return False
        if q.tolerance:
            return b.value <= a.value + _tol_fraction(q.tolerance)
        return b.value <= a.value
    if q.kind is Kind.BOOL:
        return (not a.value) or b.value
    return all(_leq(f, x, y) for f, x, y in zip(q.factors, a.value, b.value))


def eq(q: QuantaleDescriptor, a: QVal, b: QVal) -> bool:
    """Equality up to ``q``'s tolerance: mutual ``leq``."""
    return leq(q, a, b) and leq(q, b, a)


def tensor(q: QuantaleDescriptor, a: QVal, b: QVal) -> QVal:
    """Monoidal tensor: addition (bot absorbing) on the numeric bases,
    conjunction on truth values, componentwise on products."""
    carrier_check(q, a)
    carrier_check(q, b)
    return _tensor(q, a, b)


def _tensor(q: QuantaleDescriptor, a: QVal, b: QVal) -> QVal:
    if q.kind is Kind.RBOT:
        if a.tag is Tag.BOT or b.tag is Tag.BOT:
            return BOT
        if a.tag is Tag.INF or b.tag is Tag.INF:
            return INF
        return QVal(Tag.FINITE, a.value + b.value)
    if q.kind is Kind.LAWVERE:
        if a.tag is Tag.INF or b.tag is Tag.INF:
            return INF
        return QVal(Tag.FINITE, a.value + b.value)
    if q.kind is Kind.BOOL:
        return boolean(a.value and b.value)
    return QVal(Tag.TUPLE, tuple(_tensor(f, x, y) for f, x, y in zip(q.factors, a.value, b.value)))


def residual(q: QuantaleDescriptor, a: QVal, c: QVal) -> QVal:
    """The largest x with tensor(a, x) <= c (internal hom a -> c).

    On the causal base this is the familiar table: residuating out of
    bot gives top, residuating into bot gives bot, and finite values
    subtract when they can.  On the metric base it is truncated
    subtraction; on truth values, implication.
    """
    carrier_check(q, a)
    carrier_check(q, c)
    return _residual(q, a, c)


def _residual(q: QuantaleDescriptor, a: QVal, c: QVal) -> QVal:
    if q.kind is Kind.RBOT:
        if a.tag is Tag.BOT or c.tag is Tag.INF:
            return INF
        if c.tag is Tag.BOT or a.tag is Tag.INF:
            return BOT
        if a.value <= c.value:
            return QVal(Tag.FINITE, c.value - a.value)
        return BOT
    if q.kind is Kind.LAWVERE:
        if a.tag is Tag.INF:
            return QVal(Tag.FINITE, Fraction(0))
        if c.tag is Tag.INF:
            return INF
        return QVal(Tag.FINITE, max(c.value - a.value, Fraction(0)))
    if q.kind is Kind.BOOL:
        return boolean((not a.value) or c.value)
    return QVal(Tag.TUPLE, tuple(_residual(f, x, y) for f, x, y in zip(q.factors, a.value, c.value)))


def unit(q: QuantaleDescriptor) -> QVal:
    if q.kind in (Kind.RBOT, Kind.LAWVERE):
        return QVal(Tag.FINITE, Fraction(0))
    if q.kind is Kind.BOOL:
        return TRUE
    return QVal(Tag.TUPLE, tuple(unit(f) for f in q.factors))


def bottom(q: QuantaleDescriptor) -> QVal:
    if q.kind is Kind.RBOT:
        return BOT
    if q.kind is Kind.LAWVERE:
        return INF
    if q.kind is Kind.BOOL:
        return FALSE
    return QVal(Tag.TUPLE, tuple(bottom(f) for f in q.factors))


def top(q: QuantaleDescriptor) -> QVal:
    if q.kind is Kind.RBOT:
        return INF
    if q.kind is Kind.LAWVERE:
        return QVal(Tag.FINITE, Fraction(0))
    if q.kind is Kind.BOOL:
        return TRUE
    return QVal(Tag.TUPLE, tuple(top(f) for f in q.factors))


def _leq_exact(q: QuantaleDescriptor, a: QVal, b: QVal) -> bool:
    # lattice selection ignores the tolerance: joins and meets are exact
    if q.tolerance == 0:
        return _leq(q, a, b)
    return _leq(QuantaleDescriptor(q.kind, 0.0, q.factors), a, b)


def join(q: QuantaleDescriptor, family: Iterable[QVal]) -> QVal:
    """Least upper bound of a finite family; the empty join is bottom."""
    vals = list(family)
    for v in vals:
        carrier_check(q, v)
    return _join(q, vals)


def _join(q: QuantaleDescriptor, vals: Sequence[QVal]) -> QVal:
    if q.kind is Kind.PRODUCT:
        if not vals:
            return bottom(q)
        return QVal(
            Tag.TUPLE,
            tuple(_join(f, [v.value[i] for v in vals]) for i, f in enumerate(q.factors)),
        )
    if not vals:
        return bottom(q)
    best = vals[0]
    for v in vals[1:]:
        if _leq_exact(q, best, v):
            best = v
    return best


def meet(q: QuantaleDescriptor, family: Iterable[QVal]) -> QVal:
    """Greatest lower bound of a finite family; the empty meet is top."""
    vals = list(family)
    for v in vals:
        carrier_check(q, v)
    return _meet(q, vals)


def _meet(q: QuantaleDescriptor, vals: Sequence[QVal]) -> QVal:
    if q.kind is Kind.PRODUCT:
        if not vals:
            return top(q)
        return QVal(
            Tag.TUPLE,
            tuple(_meet(f, [v.value[i] for v in vals]) for i, f in enumerate(q.factors)),
        )
    if not vals:
        return top(q)
    best = vals[0]
    for v in vals[1:]:
        if _leq_exact(q, v, best):
            best = v
    return best


def join_witness(q: QuantaleDescriptor, family: Iterable[QVal]) -> bool:
    """Whether unit <= join(family) implies unit <= m for some member m.

    Total-order bases always satisfy this; product quantales can fail
    it, which is exactly what breaks Cauchy completeness there.
    """
    vals = list(family)
    u = unit(q)
    if not leq(q, u, join(q, vals)):
        return True
    return any(_leq(q, u, m) for m in vals)


@dataclass(frozen=True)
class LawViolation:
    law: str
    operands: tuple[QVal, ...]
    detail: str

    def to_json(self) -> dict:
        return {
            "law": self.law,
            "operands": [format_value(v) for v in self.operands],
            "detail": self.detail,
        }


@dataclass(frozen=True)
class LawReport:
    quantale: QuantaleDescriptor
    sample: tuple[QVal, ...]
    violations: tuple[LawViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "quantale": descriptor_to_json(self.quantale),
            "tolerance": self.quantale.tolerance,
            "sample": [format_value(v) for v in self.sample],
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }


def check_laws(
    q: QuantaleDescriptor,
    sample: Iterable[QVal],
    *,
    tensor_fn=None,
    residual_fn=None,
) -> LawReport:
    """Exhaustively check the quantale laws over all triples of ``sample``.

    Checked: unit laws, commutativity, associativity, the residuation
    adjunction (tensor(a, b) <= c iff b <= residual(a, c)), tensor
    monotonicity, and tensor distributing over sampled binary joins.
    ``tensor_fn``/``residual_fn`` substitute the operations under test
    (used to exercise the harness against corrupted tables).
    """
    vals = tuple(sample)
    for v in vals:
        carrier_check(q, v)
    tns = tensor_fn or (lambda a, b: _tensor(q, a, b))
    rsd = residual_fn or (lambda a, c: _residual(q, a, c))
    u = unit(q)
    out: list[LawViolation] = []

    for a in vals:
        if not eq(q, tns(u, a), a):
            out.append(LawViolation("unit", (a,), f"tensor(unit, {format_value(a)}) != {format_value(a)}"))
        if not eq(q, tns(a, u), a):
            out.append(LawViolation("unit", (a,), f"tensor({format_value(a)}, unit) != {format_value(a)}"))
    for a in vals:
        for b in vals:
            if not eq(q, tns(a, b), tns(b, a)):
                out.append(LawViolation("commutativity", (a, b), "tensor(a, b) != tensor(b, a)"))
    for a in vals:
        for b in vals:
            ab = tns(a, b)
            for c in vals:
                if not eq(q, tns(ab, c), tns(a, tns(b, c))):
                    out.append(LawViolation("associativity", (a, b, c), "tensor not associative"))
                if _leq(q, ab, c) != _leq(q, b, rsd(a, c)):
                    out.append(
                        LawViolation(
                            "residuation",
                            (a, b, c),
                            f"tensor(a, b) <= c is {_leq(q, ab, c)} but "
                            f"b <= residual(a, c) = {format_value(rsd(a, c))} is {_leq(q, b, rsd(a, c))}",
                        )
                    )
                if _leq(q, a, b) and not _leq(q, tns(a, c), tns(b, c)):
                    out.append(LawViolation("monotonicity", (a, b, c), "a <= b but tensor(a, c) !<= tensor(b, c)"))
                if not eq(q, tns(a, _join(q, [b, c])), _join(q, [tns(a, b), tns(a, c)])):
                    out.append(
                        LawViolation("join_distributivity", (a, b, c), "tensor(a, b v c) != tensor(a, b) v tensor(a, c)")
                    )
    return LawReport(q, vals, tuple(out))


def qval_sort_key(v: QVal):
    """Deterministic total-order key within any one carrier."""
    if v.tag is Tag.BOT:
        return (0, 0)
    if v.tag is Tag.FINITE:
        return (1, v.value)
    if v.tag is Tag.INF:
        return (2, 0)
    if v.tag is Tag.BOOL:
        return (1 if v.value else 0, 0)
    return tuple(qval_sort_key(p) for p in v.value)


# ---------------------------------------------------------------------------
# Textual value syntax shared by all file formats.
#
# "bot"/"⊥", "inf"/"∞", decimal or rational literals ("5", "5/2", "2.5"),
# "true"/"false", and tuples "(v1,v2)".  Output is canonical: "bot", "inf",
# exact fraction strings, "true"/"false".
# ---------------------------------------------------------------------------


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` at paren depth zero."""
    parts: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def parse_value(raw: str | int | float | bool) -> QVal:
    """Parse one value in the shared textual syntax."""
    if isinstance(raw, bool):
        return boolean(raw)
    if isinstance(raw, int):
        if raw < 0:
            raise ValueError(f"negative value {raw} is not in any carrier")
        return finite(Fraction(raw))
    if isinstance(raw, float):
        try:
            frac = Fraction(str(raw))
        except ValueError:
            frac = Fraction(raw)
        if frac < 0:
            raise ValueError(f"negative value {raw} is not in any carrier")
        return QVal(Tag.FINITE, frac)
    if not isinstance(raw, str):
        raise ValueError(f"cannot parse {raw!r} as a value")
    text = raw.strip()
    low = text.lower()
    if low in ("bot", "⊥"):
        return BOT
    if low in ("inf", "∞"):
        return INF
    if low == "true":
        return TRUE
    if low == "false":
        return FALSE
    if text.startswith("(") and text.endswith(")"):
        inner = text[1:-1]
        parts = split_top_level(inner)
        if any(not p.strip() for p in parts):
            raise ValueError(f"empty tuple component in {raw!r}")
        return tuple_val(parse_value(p) for p in parts)
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse {raw!r} as a value") from exc
    if frac < 0:
        raise ValueError(f"negative value {raw!r} is not in any carrier")
    return QVal(Tag.FINITE, frac)


def format_value(v: QVal) -> str:
    """Canonical textual form of a value."""
    if v.tag is Tag.BOT:
        return "bot"
    if v.tag is Tag.INF:
        return "inf"
    if v.tag is Tag.FINITE:
        return str(v.value)
    if v.tag is Tag.BOOL:
        return "true" if v.value else "false"
    return "(" + ",".join(format_value(p) for p in v.value) + ")"


def descriptor_to_json(q: QuantaleDescriptor) -> str | list:
    if q.kind is Kind.PRODUCT:
        return [descriptor_to_json(f) for f in q.factors]
    return q.kind.value


def descriptor_from_json(data: str | list, tolerance: float = 0.0) -> QuantaleDescriptor:
    if isinstance(data, str):
        low = data.strip().lower()
        for kind in (Kind.RBOT, Kind.LAWVERE, Kind.BOOL):
            if low == kind.value:
                return QuantaleDescriptor(kind, tolerance)
        raise ValueError(f"unknown quantale {data!r}")
    if isinstance(data, list) and data:
        return QuantaleDescriptor(
            Kind.PRODUCT, tolerance, tuple(descriptor_from_json(f) for f in data)
        )
    raise ValueError(f"unknown quantale {data!r}")


def parse_quantale_name(text: str, tolerance: float = 0.0) -> QuantaleDescriptor:
    """Parse a command-line quantale name: a base name or a comma list
    of base names for a product (e.g. ``bool,bool``)."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return descriptor_from_json(parts[0], tolerance)
    return descriptor_from_json(parts, tolerance)
