"""Generators and ingestion for causal spaces.

Two sources of examples: uniform sprinklings into a 2D flat spacetime
rectangle, and finite causal sets (DAGs) whose homs are longest-path
lengths.  Both produce categories over the causal base; the sprinkling
opts into a 1e-9 comparison tolerance because its values pass through
floating-point square roots, while DAG ingestion is exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .category import VCategory
from .quantale import BOT, QVal, finite, rbot

MINKOWSKI_TOLERANCE = 1e-9


class CycleError(ValueError):
    """The input graph is not acyclic; carries a witness cycle."""

    def __init__(self, cycle: tuple[str, ...]):
        self.cycle = tuple(cycle)
        super().__init__("graph contains a cycle: " + " -> ".join(self.cycle))


@dataclass(frozen=True)
class CausalDag:
    """A finite directed graph; acyclicity is verified on ingestion."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertices")
        known = set(self.vertices)
        seen = set()
        for a, b in self.edges:
            if a not in known or b not in known:
                raise ValueError(f"edge ({a!r}, {b!r}) mentions an unknown vertex")
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a!r}, {b!r})")
            seen.add((a, b))


def dag_from_text(text: str) -> CausalDag:
    """Parse an edge list, one ``a b`` pair per line; blank lines and
    ``#`` comments are skipped.  Vertices appear in first-use order."""
    vertices: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'source target', got {line!r}")
        for v in parts:
            if v not in seen:
                seen.add(v)
                vertices.append(v)
        edges.append((parts[0], parts[1]))
    return CausalDag(tuple(vertices), tuple(edges))


def dag_from_json(data: object, *, where: str = "dag") -> CausalDag:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise ValueError(f"{where}: expected an object with 'vertices' and 'edges'")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or any(not isinstance(v, str) for v in vertices):
        raise ValueError(f"{where}.vertices: expected a list of strings")
    edges = data["edges"]
    if not isinstance(edges, list):
        raise ValueError(f"{where}.edges: expected a list of pairs")
    pairs = []
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2 or any(not isinstance(v, str) for v in e):
            raise ValueError(f"{where}.edges[{i}]: expected a pair of vertex names")
        pairs.append((e[0], e[1]))
    try:
        return CausalDag(tuple(vertices), tuple(pairs))
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None


def _find_cycle(dag: CausalDag) -> tuple[str, ...]:
    succ: dict[str, list[str]] = {v: [] for v in dag.vertices}
    for a, b in dag.edges:
        succ[a].append(b)
    color: dict[str, int] = {v: 0 for v in dag.vertices}  # 0 new, 1 on stack, 2 done
    stack: list[str] = []

    def dfs(v: str) -> tuple[str, ...] | None:
        color[v] = 1
        stack.append(v)
        for w in succ[v]:
            if color[w] == 1:
                i = stack.index(w)
                return tuple(stack[i:] + [w])
            if color[w] == 0:
                found = dfs(w)
                if found:
                    return found
        stack.pop()
        color[v] = 2
        return None

    for v in dag.vertices:
        if color[v] == 0:
            found = dfs(v)
            if found:
                return found
    raise AssertionError("no cycle found in a graph that failed toposort")


def toposort(dag: CausalDag) -> list[str]:
    """Kahn's algorithm; raises :class:`CycleError` with a witness."""
    indeg = {v: 0 for v in dag.vertices}
    succ: dict[str, list[str]] = {v: [] for v in dag.vertices}
    for a, b in dag.edges:
        succ[a].append(b)
        indeg[b] += 1
    queue = [v for v in dag.vertices if indeg[v] == 0]
    order: list[str] = []
    while queue:
        v = queue.pop(0)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != len(dag.vertices):
        raise CycleError(_find_cycle(dag))
    return order


def causal_space_from_dag(dag: CausalDag) -> VCategory:
    """The causal space of a causal set: hom(A, B) is the number of
    edges on the longest directed path from A to B, 0 on the diagonal,
    and bot when B is unreachable.

    Longest paths over a topological order make composition hold: a
    path through an intermediate vertex is never longer than the
    longest direct one.
    """
    order = toposort(dag)
    pos = {v: i for i, v in enumerate(order)}
    succ: dict[str, list[str]] = {v: [] for v in dag.vertices}
    for a, b in dag.edges:
        succ[a].append(b)
    longest: dict[str, dict[str, int]] = {}
    for src in dag.vertices:
        dist: dict[str, int] = {src: 0}
        for v in order[pos[src]:]:
            if v not in dist:
                continue
            dv = dist[v]
            for w in succ[v]:
                if dist.get(w, -1) < dv + 1:
                    dist[w] = dv + 1
        longest[src] = dist
    rows = []
    for a in dag.vertices:
        row: list[QVal] = []
        dist = longest[a]
        for b in dag.vertices:
            if a == b:
                row.append(finite(0))
            elif b in dist:
                row.append(finite(dist[b]))
            else:
                row.append(BOT)
        rows.append(tuple(row))
    return VCategory(rbot(), dag.vertices, tuple(rows))


def longest_path_oracle(
    dag: CausalDag, a: str, b: str, max_paths: int = 200_000
) -> int | None:
    """Exhaustive path enumeration, for checking the dynamic program.

    Returns the maximal edge count over all directed paths a -> b, 0
    when a == b, and None when b is unreachable.  Raises when more than
    ``max_paths`` paths would be walked.
    """
    for v in (a, b):
        if v not in dag.vertices:
            raise ValueError(f"unknown vertex {v!r}")
    if a == b:
        return 0
    succ: dict[str, list[str]] = {v: [] for v in dag.vertices}
    for x, y in dag.edges:
        succ[x].append(y)
    best: int | None = None
    walked = 0
    on_path: set[str] = {a}

    def dfs(v: str, length: int) -> None:
        nonlocal best, walked
        if v == b:
            walked += 1
            if walked > max_paths:
                raise ValueError(f"path enumeration exceeded {max_paths} paths")
            if best is None or length > best:
                best = length
            return
        for w in succ[v]:
            if w in on_path:
                raise CycleError((w, v, w))
            on_path.add(w)
            dfs(w, length + 1)
            on_path.discard(w)

    dfs(a, 0)
    return best


@dataclass(frozen=True)
class Event2D:
    """A point (t, x) of 2D flat spacetime."""

    t: float
    x: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t) and math.isfinite(self.x)):
            raise ValueError("event coordinates must be finite")


def interval_2d(e1: Event2D, e2: Event2D) -> QVal:
    """Proper-time interval from e1 to e2: sqrt(dt^2 - dx^2) when e2 is
    in e1's future lightcone (dt >= |dx|), bot otherwise."""
    dt = e2.t - e1.t
    dx = abs(e2.x - e1.x)
    if dt >= dx:
        return finite(math.sqrt(dt * dt - dx * dx))
    return BOT


def minkowski_sample(
    n: int,
    seed: int,
    bounds: tuple[float, float, float, float] = (0.0, 1.0, 0.0, 1.0),
) -> tuple[VCategory, list[Event2D]]:
    """Sprinkle ``n`` uniform events into the rectangle ``(t0, t1, x0, x1)``
    and build their causal space at tolerance 1e-9.

    Deterministic per seed and platform: coordinates are
    ``lo + (hi - lo) * r`` for consecutive outputs r of the Mersenne
    Twister ``random()`` stream seeded with ``seed``, t drawn before x,
    events in order.  Finite hom values are the exact binary values of
    the computed square roots.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    t0, t1, x0, x1 = bounds
    if not (t1 > t0 and x1 > x0):
        raise ValueError(f"degenerate bounds {bounds}")
    rng = random.Random(seed)
    events = []
    for _ in range(n):
        t = t0 + (t1 - t0) * rng.random()
        x = x0 + (x1 - x0) * rng.random()
        events.append(Event2D(t, x))
    labels = tuple(f"p{i}" for i in range(n))
    rows = tuple(
        tuple(interval_2d(events[i], events[j]) for j in range(n)) for i in range(n)
    )
    return VCategory(rbot(MINKOWSKI_TOLERANCE), labels, rows), events


def _signed_interval(p1: tuple[int, int], p2: tuple[int, int]) -> int:
    # mixed-signature convention: time-like (and light-like) intervals
    # are negative, space-like ones positive; inputs are integer points
    # whose squared intervals are perfect squares
    dt = p2[0] - p1[0]
    dx = abs(p2[1] - p1[1])
    s = dt * dt - dx * dx
    if s >= 0:
        return -math.isqrt(s)
    return math.isqrt(-s)


@dataclass(frozen=True)
class MixedSignatureRecord:
    """Witness that signed intervals on [-inf, inf] break the triangle
    inequality when time-like and space-like legs mix."""

    a: tuple[int, int]
    b: tuple[int, int]
    c: tuple[int, int]
    d_ab: int
    d_bc: int
    d_ac: int

    @property
    def chained(self) -> int:
        return self.d_ab + self.d_bc

    @property
    def violation(self) -> bool:
        return self.chained < self.d_ac

    def to_json(self) -> dict:
        return {
            "points": {"A": list(self.a), "B": list(self.b), "C": list(self.c)},
            "d_ab": self.d_ab,
            "d_bc": self.d_bc,
            "d_ac": self.d_ac,
            "chained": self.chained,
            "violation": self.violation,
        }


def mixed_signature_check() -> MixedSignatureRecord:
    """Evaluate the canonical three-event witness A=(0,0), B=(-1,0),
    C=(0,1): the chained signed interval is -1 while the direct one is
    1, so no triangle inequality can hold for the mixed signature."""
    a, b, c = (0, 0), (-1, 0), (0, 1)
    return MixedSignatureRecord(
        a,
        b,
        c,
        _signed_interval(a, b),
        _signed_interval(b, c),
        _signed_interval(a, c),
    )
