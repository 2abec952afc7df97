"""Finite categories enriched in a quantale.

A category is a list of object labels together with a square matrix of
quantale values, ``hom[i][j] = E(object_i, object_j)``, subject to

* unit law:         unit <= E(X, X)
* composition law:  E(X, Y) tensor E(Y, Z) <= E(X, Z)

Over the causal base the objects are events and ``E(X, Y)`` is the
maximal proper time from X to Y (bot when Y is not in X's future); over
the metric base they are points of a generalized metric space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .quantale import (
    CarrierMismatch,
    Kind,
    QuantaleDescriptor,
    QVal,
    Tag,
    carrier_check,
    descriptor_from_json,
    descriptor_to_json,
    eq,
    format_value,
    leq,
    meet,
    parse_value,
    tensor,
    unit,
)


@dataclass(frozen=True)
class VCategory:
    """Object labels plus the square hom matrix over one quantale."""

    quantale: QuantaleDescriptor
    objects: tuple[str, ...]
    hom: tuple[tuple[QVal, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "hom", tuple(tuple(row) for row in self.hom))
        n = len(self.objects)
        if len(set(self.objects)) != n:
            raise ValueError("object labels must be unique")
        if any(not isinstance(o, str) for o in self.objects):
            raise ValueError("object labels must be strings")
        if len(self.hom) != n:
            raise ValueError(f"hom matrix has {len(self.hom)} rows for {n} objects")
        for i, row in enumerate(self.hom):
            if len(row) != n:
                raise ValueError(f"hom row {i} has {len(row)} entries for {n} objects")
            for v in row:
                carrier_check(self.quantale, v)

    def __len__(self) -> int:
        return len(self.objects)

    def index(self, label: str) -> int:
        try:
            return self.objects.index(label)
        except ValueError:
            raise ValueError(f"unknown object {label!r}") from None

    def hom_between(self, a: str, b: str) -> QVal:
        return self.hom[self.index(a)][self.index(b)]


def unit_category(q: QuantaleDescriptor, label: str = "*") -> VCategory:
    """The one-object category I with endohom the monoidal unit."""
    return VCategory(q, (label,), ((unit(q),),))


@dataclass(frozen=True)
class CategoryReport:
    """Every unit and composition violation of a candidate category."""

    unit_violations: tuple[tuple[str, QVal], ...]
    composition_violations: tuple[tuple[str, str, str, QVal, QVal], ...]

    @property
    def ok(self) -> bool:
        return not self.unit_violations and not self.composition_violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "unit_violations": [
                {"object": o, "endohom": format_value(v)} for o, v in self.unit_violations
            ],
            "composition_violations": [
                {
                    "via": [i, j, k],
                    "composite": format_value(c),
                    "direct": format_value(d),
                }
                for i, j, k, c, d in self.composition_violations
            ],
        }


_FLOAT_PATH_MIN_OBJECTS = 16


def validate_category(c: VCategory, *, method: str = "auto") -> CategoryReport:
    """Check the unit and composition laws, listing every violation.

    ``method`` is "auto", "exact" or "float"; "float" is a vectorized
    path for causal-base categories that have opted into a tolerance
    (their finite values are float-representable by construction) and
    is selected automatically for large such categories.
    """
    if method not in ("auto", "exact", "float"):
        raise ValueError(f"unknown method {method!r}")
    use_float = (
        c.quantale.kind is Kind.RBOT
        and c.quantale.tolerance > 0
        and (method == "float" or (method == "auto" and len(c) >= _FLOAT_PATH_MIN_OBJECTS))
    )
    if method == "float" and not use_float:
        raise ValueError("float validation requires the causal base with a tolerance")
    if use_float:
        return _validate_rbot_float(c)
    return _validate_exact(c)


def _validate_exact(c: VCategory) -> CategoryReport:
    q = c.quantale
    u = unit(q)
    n = len(c)
    hom = c.hom
    unit_v = [
        (c.objects[i], hom[i][i]) for i in range(n) if not leq(q, u, hom[i][i])
    ]
    comp_v = []
    for i in range(n):
        for j in range(n):
            vij = hom[i][j]
            for k in range(n):
                composite = tensor(q, vij, hom[j][k])
                if not leq(q, composite, hom[i][k]):
                    comp_v.append(
                        (c.objects[i], c.objects[j], c.objects[k], composite, hom[i][k])
                    )
    return CategoryReport(tuple(unit_v), tuple(comp_v))


def _rbot_float_matrix(c: VCategory) -> np.ndarray:
    n = len(c)
    a = np.empty((n, n), dtype=np.float64)
    for i, row in enumerate(c.hom):
        for j, v in enumerate(row):
            if v.tag is Tag.BOT:
                a[i, j] = -np.inf
            elif v.tag is Tag.INF:
                a[i, j] = np.inf
            else:
                a[i, j] = float(v.value)
    return a


def _validate_rbot_float(c: VCategory) -> CategoryReport:
    n = len(c)
    tol = c.quantale.tolerance
    a = _rbot_float_matrix(c)
    unit_v = [
        (c.objects[i], c.hom[i][i]) for i in range(n) if not (a[i, i] >= -tol)
    ]
    bound = a + tol
    triples: list[tuple[int, int, int]] = []
    for j in range(n):
        with np.errstate(invalid="ignore"):
            s = a[:, j : j + 1] + a[j : j + 1, :]
        # nan only arises as (-inf) + inf, where bot absorbs
        s[np.isnan(s)] = -np.inf
        bad = np.argwhere(s > bound)
        triples.extend((int(i), j, int(k)) for i, k in bad)
    triples.sort()
    q = c.quantale
    comp_v = tuple(
        (
            c.objects[i],
            c.objects[j],
            c.objects[k],
            tensor(q, c.hom[i][j], c.hom[j][k]),
            c.hom[i][k],
        )
        for i, j, k in triples
    )
    return CategoryReport(tuple(unit_v), comp_v)


def opposite(c: VCategory) -> VCategory:
    """Reverse all homs: E_op(X, Y) = E(Y, X)."""
    n = len(c)
    return VCategory(
        c.quantale,
        c.objects,
        tuple(tuple(c.hom[j][i] for j in range(n)) for i in range(n)),
    )


def tensor_categories(c: VCategory, d: VCategory) -> VCategory:
    """Product-of-objects category with hom((A,X),(B,Y)) = C(A,B) tensor D(X,Y)."""
    if c.quantale != d.quantale:
        raise ValueError("tensor requires categories over the same quantale")
    q = c.quantale
    labels = tuple(f"({a},{x})" for a in c.objects for x in d.objects)
    nd = len(d)
    rows = []
    for i in range(len(c)):
        for p in range(nd):
            rows.append(
                tuple(
                    tensor(q, c.hom[i][j], d.hom[p][r])
                    for j in range(len(c))
                    for r in range(nd)
                )
            )
    return VCategory(q, labels, tuple(rows))


@dataclass(frozen=True)
class VFunctor:
    """An object map that does not decrease homs: D(A,B) <= E(FA,FB)."""

    source: VCategory
    target: VCategory
    object_map: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "object_map", tuple(tuple(p) for p in self.object_map))
        mapping = dict(self.object_map)
        if set(mapping) != set(self.source.objects) or len(mapping) != len(self.object_map):
            raise ValueError("object map must be total on the source objects")
        for dst in mapping.values():
            if dst not in self.target.objects:
                raise ValueError(f"object map hits unknown target object {dst!r}")

    @classmethod
    def from_mapping(
        cls, source: VCategory, target: VCategory, mapping: Mapping[str, str]
    ) -> "VFunctor":
        return cls(source, target, tuple((o, mapping[o]) for o in source.objects))

    def apply(self, label: str) -> str:
        m = self.__dict__.get("_map")
        if m is None:
            m = dict(self.object_map)
            object.__setattr__(self, "_map", m)
        return m[label]


def functor_check(f: VFunctor) -> bool:
    """Whether the object map satisfies D(A,B) <= E(FA,FB) at every pair."""
    d, e = f.source, f.target
    q = d.quantale
    for i, a in enumerate(d.objects):
        fi = e.index(f.apply(a))
        for j, b in enumerate(d.objects):
            if not leq(q, d.hom[i][j], e.hom[fi][e.index(f.apply(b))]):
                return False
    return True


def functor_hom(f: VFunctor, g: VFunctor) -> QVal:
    """Functor-category hom: the meet over A of E(FA, GA)."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("functors must share source and target")
    e = f.target
    return meet(
        e.quantale,
        [e.hom[e.index(f.apply(a))][e.index(g.apply(a))] for a in f.source.objects],
    )


def nat_trans_exists(f: VFunctor, g: VFunctor) -> bool:
    """Whether a transformation F => G exists: unit <= functor_hom(F, G)."""
    q = f.target.quantale
    return leq(q, unit(q), functor_hom(f, g))


def underlying_preorder(c: VCategory) -> frozenset[tuple[str, str]]:
    """Edges i -> j where the unit maps into the hom.

    For a valid category the result is reflexive and transitive: the
    underlying preorder (the causal set of a causal space).
    """
    q = c.quantale
    u = unit(q)
    n = len(c)
    return frozenset(
        (c.objects[i], c.objects[j])
        for i in range(n)
        for j in range(n)
        if leq(q, u, c.hom[i][j])
    )


def preorder_dot(objects: Sequence[str], edges: Iterable[tuple[str, str]]) -> str:
    """Render a preorder in DOT: one node per object, one edge per
    non-identity relation, sorted for byte stability."""

    def quote(s: str) -> str:
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["digraph preorder {"]
    for o in objects:
        lines.append(f"  {quote(o)};")
    for a, b in sorted(edges):
        if a != b:
            lines.append(f"  {quote(a)} -> {quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def idempotent_split_check(edges: Iterable[tuple[str, str]]) -> bool:
    """Idempotents in a preorder always split (the only endo-arrow on an
    object is its identity), so this returns True for every preorder.

    The input must actually be one; a non-reflexive or non-transitive
    edge set is rejected.
    """
    es = set(tuple(e) for e in edges)
    verts = {v for e in es for v in e}
    for v in verts:
        if (v, v) not in es:
            raise ValueError(f"edge set is not reflexive at {v!r}")
    succ: dict[str, set[str]] = {v: set() for v in verts}
    for a, b in es:
        succ[a].add(b)
    for a, b in es:
        for cdest in succ[b]:
            if (a, cdest) not in es:
                raise ValueError(f"edge set is not transitive: {a!r} -> {b!r} -> {cdest!r}")
    return True


REGULAR = "regular"
IRREGULAR = "irregular"


@dataclass(frozen=True)
class EndohomReport:
    """Per-object endohom classes plus any law violations.

    Valid causal-base categories only ever have endohoms 0 (regular
    events) or inf (irregular ones), endohoms act on other homs by
    equality, irregular objects see everything through bot or inf, and
    two regular events can only cause each other when both homs are 0.
    A violation here means the category was invalid to begin with.
    """

    classes: tuple[tuple[str, str], ...]
    violations: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "classes": {o: c for o, c in self.classes},
            "violations": [{"law": l, "detail": d} for l, d in self.violations],
        }


def classify_endohoms(c: VCategory) -> EndohomReport:
    """Label each object regular (endohom 0) or irregular (endohom inf)
    and verify the endohom laws of causal spaces."""
    if c.quantale.kind is not Kind.RBOT:
        raise CarrierMismatch("endohom classification requires the causal base")
    q = c.quantale
    u = unit(q)
    n = len(c)
    hom = c.hom
    classes: list[tuple[str, str]] = []
    violations: list[tuple[str, str]] = []
    for i, o in enumerate(c.objects):
        endo = hom[i][i]
        if not eq(q, tensor(q, endo, endo), endo):
            violations.append(
                ("endohom-idempotent", f"E({o},{o}) = {format_value(endo)} is not idempotent")
            )
        if endo.tag is Tag.INF:
            classes.append((o, IRREGULAR))
        elif eq(q, endo, u):
            classes.append((o, REGULAR))
        else:
            classes.append((o, "invalid"))
            violations.append(
                ("endohom-value", f"E({o},{o}) = {format_value(endo)} is neither 0 nor inf")
            )
    kind = dict(classes)
    for i, x in enumerate(c.objects):
        for j, y in enumerate(c.objects):
            if not eq(q, tensor(q, hom[j][i], hom[i][i]), hom[j][i]):
                violations.append(
                    ("endohom-action", f"E({y},{x}) tensor E({x},{x}) != E({y},{x})")
                )
            if not eq(q, tensor(q, hom[i][i], hom[i][j]), hom[i][j]):
                violations.append(
                    ("endohom-action", f"E({x},{x}) tensor E({x},{y}) != E({x},{y})")
                )
    for i, x in enumerate(c.objects):
        if kind[x] == IRREGULAR:
            for j, y in enumerate(c.objects):
                for v in (hom[j][i], hom[i][j]):
                    if v.tag is Tag.FINITE:
                        violations.append(
                            (
                                "irregular-homs",
                                f"irregular {x} has finite hom {format_value(v)} with {y}",
                            )
                        )
    for i, x in enumerate(c.objects):
        for j, y in enumerate(c.objects):
            if i < j and kind[x] == REGULAR and kind[y] == REGULAR:
                fwd, back = hom[i][j], hom[j][i]
                if fwd.tag is not Tag.BOT and back.tag is not Tag.BOT:
                    if not (eq(q, fwd, u) and eq(q, back, u)):
                        violations.append(
                            (
                                "regular-pair",
                                f"regular {x}, {y} have homs {format_value(fwd)}, "
                                f"{format_value(back)}: neither both 0 nor one bot",
                            )
                        )
    return EndohomReport(tuple(classes), tuple(violations))


def category_to_json(c: VCategory) -> dict:
    return {
        "quantale": descriptor_to_json(c.quantale),
        "tolerance": c.quantale.tolerance,
        "objects": list(c.objects),
        "hom": [[format_value(v) for v in row] for row in c.hom],
    }


def category_from_json(data: object, *, where: str = "category") -> VCategory:
    if not isinstance(data, dict):
        raise ValueError(f"{where}: expected an object")
    for field in ("quantale", "objects", "hom"):
        if field not in data:
            raise ValueError(f"{where}: missing field {field!r}")
    tolerance = data.get("tolerance", 0.0)
    if not isinstance(tolerance, (int, float)) or isinstance(tolerance, bool):
        raise ValueError(f"{where}.tolerance: expected a number")
    try:
        q = descriptor_from_json(data["quantale"], float(tolerance))
    except ValueError as exc:
        raise ValueError(f"{where}.quantale: {exc}") from None
    objects = data["objects"]
    if not isinstance(objects, list) or any(not isinstance(o, str) for o in objects):
        raise ValueError(f"{where}.objects: expected a list of strings")
    hom_rows = data["hom"]
    if not isinstance(hom_rows, list):
        raise ValueError(f"{where}.hom: expected a matrix")
    hom: list[tuple[QVal, ...]] = []
    for i, row in enumerate(hom_rows):
        if not isinstance(row, list):
            raise ValueError(f"{where}.hom[{i}]: expected a row")
        vals = []
        for j, raw in enumerate(row):
            try:
                vals.append(parse_value(raw))
            except ValueError as exc:
                raise ValueError(f"{where}.hom[{i}][{j}]: {exc}") from None
        hom.append(tuple(vals))
    try:
        return VCategory(q, tuple(objects), tuple(hom))
    except (ValueError, CarrierMismatch) as exc:
        raise ValueError(f"{where}: {exc}") from None
