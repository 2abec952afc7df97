"""Modules (profunctors) between enriched categories and Cauchy theory.

A module M: D -/-> E is a matrix ``mat[X][A]`` indexed by a target
object X in E and a source object A in D, compatible with both hom
actions:

* left action:   E(Y,X) tensor M(X,A) <= M(Y,A)
* right action:  M(X,A) tensor D(A,B) <= M(X,B)

Composition takes joins of tensors over the middle category.  A module
out of the one-object category I is Cauchy when it has a right adjoint;
in the posetal setting the adjoint, when it exists, is the canonical
residual matrix, which makes Cauchyness a decision procedure.  A
category is Cauchy complete when every Cauchy module into it is
representable, i.e. a hom column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .category import (
    VCategory,
    category_from_json,
    category_to_json,
    unit_category,
    validate_category,
)
from .quantale import (
    QVal,
    bottom,
    carrier_check,
    eq,
    format_value,
    join,
    leq,
    meet,
    parse_value,
    qval_sort_key,
    residual,
    tensor,
    top,
    unit,
)


@dataclass(frozen=True)
class VModule:
    """Rectangular matrix of quantale values between two categories,
    indexed (target object, source object)."""

    source: VCategory
    target: VCategory
    mat: tuple[tuple[QVal, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mat", tuple(tuple(row) for row in self.mat))
        if self.source.quantale != self.target.quantale:
            raise ValueError("module endpoints must share a quantale")
        rows, cols = len(self.target.objects), len(self.source.objects)
        if len(self.mat) != rows:
            raise ValueError(f"module matrix has {len(self.mat)} rows for {rows} target objects")
        for i, row in enumerate(self.mat):
            if len(row) != cols:
                raise ValueError(f"module row {i} has {len(row)} entries for {cols} source objects")
            for v in row:
                carrier_check(self.source.quantale, v)

    @property
    def quantale(self):
        return self.source.quantale


@dataclass(frozen=True)
class ModuleReport:
    """Action violations of a candidate module."""

    left_violations: tuple[tuple[str, str, str, QVal, QVal], ...]
    right_violations: tuple[tuple[str, str, str, QVal, QVal], ...]

    @property
    def ok(self) -> bool:
        return not self.left_violations and not self.right_violations

    def to_json(self) -> dict:
        def rows(vs):
            return [
                {"at": list(ix), "composite": format_value(a), "entry": format_value(b)}
                for *ix, a, b in vs
            ]

        return {
            "ok": self.ok,
            "left_violations": rows(self.left_violations),
            "right_violations": rows(self.right_violations),
        }


def validate_module(m: VModule) -> ModuleReport:
    """List every left/right action violation; empty lists mean valid."""
    q = m.quantale
    e, d = m.target, m.source
    left = []
    for y in range(len(e)):
        for x in range(len(e)):
            exy = e.hom[y][x]
            for a in range(len(d)):
                composite = tensor(q, exy, m.mat[x][a])
                if not leq(q, composite, m.mat[y][a]):
                    left.append(
                        (e.objects[y], e.objects[x], d.objects[a], composite, m.mat[y][a])
                    )
    right = []
    for x in range(len(e)):
        for a in range(len(d)):
            mxa = m.mat[x][a]
            for b in range(len(d)):
                composite = tensor(q, mxa, d.hom[a][b])
                if not leq(q, composite, m.mat[x][b]):
                    right.append(
                        (e.objects[x], d.objects[a], d.objects[b], composite, m.mat[x][b])
                    )
    return ModuleReport(tuple(left), tuple(right))


def identity_module(c: VCategory) -> VModule:
    """The hom matrix of C seen as a module C -/-> C."""
    return VModule(c, c, c.hom)


def compose(m: VModule, n: VModule) -> VModule:
    """Composite m . n of m: D -/-> E with n: C -/-> D.

    Entry (X, P) is the join over middle objects A of
    M(X, A) tensor N(A, P).
    """
    if m.source != n.target:
        raise ValueError("modules are not composable: source of the first must be the target of the second")
    q = m.quantale
    mid = len(m.source)
    rows = []
    for x in range(len(m.target)):
        row = []
        for p in range(len(n.source)):
            row.append(
                join(q, [tensor(q, m.mat[x][a], n.mat[a][p]) for a in range(mid)])
            )
        rows.append(tuple(row))
    return VModule(n.source, m.target, tuple(rows))


def representable(c: VCategory, label: str) -> VModule:
    """The module I -/-> C picking out an object: the hom column at it."""
    p = c.index(label)
    i = unit_category(c.quantale)
    return VModule(i, c, tuple((c.hom[y][p],) for y in range(len(c))))


def corepresentable(c: VCategory, label: str) -> VModule:
    """The module C -/-> I of an object: the hom row at it."""
    p = c.index(label)
    i = unit_category(c.quantale)
    return VModule(c, i, (tuple(c.hom[p]),))


def canonical_right_adjoint(m: VModule) -> VModule:
    """The largest candidate right adjoint of m: D -/-> E.

    N(A, X) is the meet over Y in E of the residual of M(Y, A) into
    E(Y, X): entrywise the largest matrix satisfying the counit
    inequality.  Posetal adjoints are unique, so if m has any right
    adjoint this one works.
    """
    q = m.quantale
    d, e = m.source, m.target
    rows = []
    for a in range(len(d)):
        row = []
        for x in range(len(e)):
            row.append(
                meet(q, [residual(q, m.mat[y][a], e.hom[y][x]) for y in range(len(e))])
            )
        rows.append(tuple(row))
    return VModule(e, d, tuple(rows))


@dataclass(frozen=True)
class AdjunctionReport:
    """Unit/counit status of a candidate adjunction m -| n, with the
    failing indices and values."""

    unit_ok: bool
    counit_ok: bool
    unit_failures: tuple[tuple[str, str, QVal, QVal], ...]
    counit_failures: tuple[tuple[str, str, QVal, QVal], ...]

    @property
    def ok(self) -> bool:
        return self.unit_ok and self.counit_ok

    def to_json(self) -> dict:
        return {
            "unit_ok": self.unit_ok,
            "counit_ok": self.counit_ok,
            "unit_failures": [
                {"at": [a, b], "hom": format_value(h), "composite": format_value(c)}
                for a, b, h, c in self.unit_failures
            ],
            "counit_failures": [
                {"at": [x, y], "composite": format_value(c), "hom": format_value(h)}
                for x, y, c, h in self.counit_failures
            ],
        }


def check_adjunction(m: VModule, n: VModule) -> AdjunctionReport:
    """Check m -| n for m: D -/-> E, n: E -/-> D.

    Unit: D(A, B) <= (n . m)(A, B) entrywise.
    Counit: (m . n)(X, Y) <= E(X, Y) entrywise.
    """
    if n.source != m.target or n.target != m.source:
        raise ValueError("adjunction candidates must be composable both ways")
    q = m.quantale
    d, e = m.source, m.target
    nm = compose(n, m)
    unit_failures = []
    for a in range(len(d)):
        for b in range(len(d)):
            if not leq(q, d.hom[a][b], nm.mat[a][b]):
                unit_failures.append(
                    (d.objects[a], d.objects[b], d.hom[a][b], nm.mat[a][b])
                )
    mn = compose(m, n)
    counit_failures = []
    for x in range(len(e)):
        for y in range(len(e)):
            if not leq(q, mn.mat[x][y], e.hom[x][y]):
                counit_failures.append(
                    (e.objects[x], e.objects[y], mn.mat[x][y], e.hom[x][y])
                )
    return AdjunctionReport(
        not unit_failures, not counit_failures, tuple(unit_failures), tuple(counit_failures)
    )


def _require_unit_source(m: VModule) -> None:
    src = m.source
    q = m.quantale
    if len(src.objects) != 1 or not eq(q, src.hom[0][0], unit(q)):
        raise ValueError("module source must be the one-object unit category")


def is_cauchy(m: VModule) -> bool:
    """Whether a module I -/-> E has a right adjoint."""
    _require_unit_source(m)
    return check_adjunction(m, canonical_right_adjoint(m)).ok


def representing_objects(m: VModule) -> tuple[str, ...]:
    """All objects Z with M(Y) = E(Y, Z) for every Y, in label order."""
    _require_unit_source(m)
    e = m.target
    q = m.quantale
    out = []
    for z in range(len(e)):
        if all(eq(q, m.mat[y][0], e.hom[y][z]) for y in range(len(e))):
            out.append(e.objects[z])
    return tuple(out)


def find_representing(m: VModule) -> str | None:
    """First object representing m, or None."""
    matches = representing_objects(m)
    return matches[0] if matches else None


def cauchy_witness(m: VModule, n: VModule) -> str | None:
    """First object Z with unit <= N(Z) tensor M(Z), for an adjoint pair.

    Over the causal base such a Z always exists and represents m; over
    a product quantale the join witnessing the unit can be spread over
    several objects, in which case there is no single witness and this
    returns None.
    """
    _require_unit_source(m)
    report = check_adjunction(m, n)
    if not report.ok:
        raise ValueError("cauchy_witness requires an adjoint pair")
    q = m.quantale
    e = m.target
    u = unit(q)
    for z in range(len(e)):
        if leq(q, u, tensor(q, n.mat[0][z], m.mat[z][0])):
            return e.objects[z]
    return None


_GRID_CAP = 64


def _closure_values(q, values: set[QVal], cap: int) -> set[QVal]:
    from itertools import product as iproduct

    from .quantale import Kind, tuple_val

    if q.kind is Kind.PRODUCT:
        factor_sets = []
        for i, f in enumerate(q.factors):
            comps = {v.value[i] for v in values}
            factor_sets.append(sorted(_closure_values(f, comps, cap), key=qval_sort_key))
        out = {tuple_val(parts) for parts in iproduct(*factor_sets)}
        if len(out) > cap:
            raise ValueError(f"default module grid exceeded {cap} values; pass an explicit grid")
        return out
    seen = set(values) | {bottom(q), unit(q), top(q)}
    while True:
        fresh = set()
        for a in seen:
            for b in seen:
                r = residual(q, a, b)
                if r not in seen:
                    fresh.add(r)
        if not fresh:
            break
        seen.update(fresh)
        if len(seen) > cap:
            raise ValueError(f"default module grid exceeded {cap} values; pass an explicit grid")
    return seen


def default_module_grid(c: VCategory, cap: int = _GRID_CAP) -> tuple[QVal, ...]:
    """Hom values with bottom, unit and top, closed under residuals;
    for product quantales the closure is componentwise (the cartesian
    product of the factor closures), since adjoint candidates are built
    from componentwise residuals.

    Raises if the closure exceeds ``cap`` distinct values.
    """
    values: set[QVal] = set()
    for row in c.hom:
        values.update(row)
    if not values:
        values = {unit(c.quantale)}
    return tuple(sorted(_closure_values(c.quantale, values, cap), key=qval_sort_key))


def enumerate_modules_into(c: VCategory, grid: Iterable[QVal]) -> Iterator[VModule]:
    """All modules I -/-> C with entries drawn from ``grid``.

    Enumerated column-wise in grid order with constraint propagation:
    a partial column is abandoned as soon as some pair violates the
    left action.
    """
    q = c.quantale
    vals = tuple(sorted(set(grid), key=qval_sort_key))
    for v in vals:
        carrier_check(q, v)
    n = len(c)
    hom = c.hom
    i_cat = unit_category(q)
    column: list[QVal] = []

    def extend(i: int) -> Iterator[tuple[QVal, ...]]:
        if i == n:
            yield tuple(column)
            return
        for v in vals:
            if not leq(q, tensor(q, hom[i][i], v), v):
                continue
            ok = True
            for j in range(i):
                w = column[j]
                if not leq(q, tensor(q, hom[j][i], v), w):
                    ok = False
                    break
                if not leq(q, tensor(q, hom[i][j], w), v):
                    ok = False
                    break
            if ok:
                column.append(v)
                yield from extend(i + 1)
                column.pop()

    for col in extend(0):
        yield VModule(i_cat, c, tuple((v,) for v in col))


@dataclass(frozen=True)
class CauchyFinding:
    module: VModule
    representing: str | None
    witness: str | None


@dataclass(frozen=True)
class CompletenessReport:
    """Result of an exhaustive Cauchy-completeness search over a grid.

    ``findings`` lists every Cauchy module found, with its representing
    object and unit witness when they exist; ``counterexamples`` are
    the Cauchy modules that no object represents.  Deterministic: both
    are sorted by matrix order regardless of evaluation order.
    """

    category: VCategory
    grid: tuple[QVal, ...]
    modules_checked: int
    findings: tuple[CauchyFinding, ...]

    @property
    def counterexamples(self) -> tuple[VModule, ...]:
        return tuple(f.module for f in self.findings if f.representing is None)

    @property
    def complete(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "grid": [format_value(v) for v in self.grid],
            "modules_checked": self.modules_checked,
            "cauchy_count": len(self.findings),
            "cauchy": [
                {
                    "column": [format_value(v) for (v,) in f.module.mat],
                    "representing": f.representing,
                    "witness": f.witness,
                }
                for f in self.findings
            ],
            "counterexamples": [
                [format_value(v) for (v,) in mod.mat] for mod in self.counterexamples
            ],
        }


def _column_key(m: VModule):
    return tuple(qval_sort_key(v) for (v,) in m.mat)


def cauchy_completeness_report(
    c: VCategory, grid: Iterable[QVal] | None = None
) -> CompletenessReport:
    """Enumerate grid-valued modules I -/-> C, decide which are Cauchy,
    and report the Cauchy ones no object represents."""
    report = validate_category(c)
    if not report.ok:
        raise ValueError("cauchy_completeness_report requires a valid category")
    grid_vals = (
        default_module_grid(c) if grid is None else tuple(sorted(set(grid), key=qval_sort_key))
    )
    for v in grid_vals:
        carrier_check(c.quantale, v)
    checked = 0
    findings: list[CauchyFinding] = []
    for m in enumerate_modules_into(c, grid_vals):
        checked += 1
        n = canonical_right_adjoint(m)
        if not check_adjunction(m, n).ok:
            continue
        rep = find_representing(m)
        wit = cauchy_witness(m, n)
        findings.append(CauchyFinding(m, rep, wit))
    findings.sort(key=lambda f: _column_key(f.module))
    return CompletenessReport(c, grid_vals, checked, tuple(findings))


def module_to_json(m: VModule) -> dict:
    src: object
    if m.source == unit_category(m.quantale):
        src = "I"
    else:
        src = category_to_json(m.source)
    return {
        "source": src,
        "target": category_to_json(m.target),
        "mat": [[format_value(v) for v in row] for row in m.mat],
    }


def module_from_json(data: object, *, where: str = "module") -> VModule:
    if not isinstance(data, dict):
        raise ValueError(f"{where}: expected an object")
    for field in ("source", "target", "mat"):
        if field not in data:
            raise ValueError(f"{where}: missing field {field!r}")
    target = category_from_json(data["target"], where=f"{where}.target")
    raw_src = data["source"]
    if raw_src == "I":
        source = unit_category(target.quantale)
    else:
        source = category_from_json(raw_src, where=f"{where}.source")
    raw_mat = data["mat"]
    if not isinstance(raw_mat, list):
        raise ValueError(f"{where}.mat: expected a matrix")
    mat: list[tuple[QVal, ...]] = []
    for i, row in enumerate(raw_mat):
        if not isinstance(row, list):
            raise ValueError(f"{where}.mat[{i}]: expected a row")
        vals = []
        for j, raw in enumerate(row):
            try:
                vals.append(parse_value(raw))
            except ValueError as exc:
                raise ValueError(f"{where}.mat[{i}][{j}]: {exc}") from None
        mat.append(tuple(vals))
    try:
        return VModule(source, target, tuple(mat))
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None
