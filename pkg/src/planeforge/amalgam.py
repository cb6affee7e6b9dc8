"""Amalgamation over a shared part, primitive steps, decompositions.

The shared part C must look the same from both sides.  Lines whose trace
on C has >= 3 points are lines *of* C, so the two sides hold the same line
object and their extensions union automatically — in the free and the
canonical amalgam alike.  Lines meeting C in at most two points are
private to their side: the free amalgam keeps them apart (and fails when
two of them collide on a shared pair), the canonical amalgam glues them
by their shared trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .embedding import embeddings
from .errors import (
    ExchangeViolation,
    InvalidPlaneError,
    NotPrimitive,
    NotStrong,
    NotWedgeSubgeometry,
    PlaneError,
    PreconditionError,
    guard_subsets,
)
from .plane import Plane, is_wedge_subgeometry, restrict, validate
from .predim import d_rel, delta, in_K0, is_k_strong, is_strong


@dataclass(frozen=True)
class AmalgamResult:
    plane: Plane
    kind: str  # "free" | "canonical"
    identified_lines: frozenset[tuple[frozenset[str], frozenset[str]]]


@dataclass(frozen=True)
class FreeAmalgam:
    """Sharp-step outcome: the free amalgam went through."""

    plane: Plane


@dataclass(frozen=True, eq=False)
class StrongEmbedding:
    """Sharp-step outcome: the first plane embeds strongly into the second."""

    mapping: dict[str, str]


@dataclass(frozen=True)
class PrimitiveCase:
    """Dichotomy for a primitive step: growth 1 with its single new point,
    or growth 0 (any number of new points)."""

    growth: int
    point: str | None = None


@dataclass(frozen=True)
class Decomposition:
    chain: tuple[frozenset[str], ...]

    @property
    def length(self) -> int:
        return len(self.chain) - 1


def _shared_part(a: Plane, b: Plane, shared: Iterable[str], op: str) -> frozenset[str]:
    c = frozenset(shared)
    if a.points & b.points != c:
        raise PreconditionError(f"{op}: shared part must equal the point intersection")
    if restrict(a, c) != restrict(b, c):
        raise PreconditionError(f"{op}: the two planes disagree on the shared part")
    return c


def _line_classes(
    a: Plane, b: Plane, c: frozenset[str]
) -> tuple[dict[frozenset[str], list[frozenset[str] | None]], set[frozenset[str]]]:
    """Group lines by their C-trace (>= 2 points); loose lines pass through.

    At most one line per side can carry a given trace (two would share two
    points), so each class is a pair [line-in-a, line-in-b].
    """
    classes: dict[frozenset[str], list[frozenset[str] | None]] = {}
    loose: set[frozenset[str]] = set()
    for side, plane in enumerate((a, b)):
        for line in plane.lines:
            trace = line & c
            if len(trace) >= 2:
                classes.setdefault(trace, [None, None])[side] = line
            else:
                loose.add(line)
    return classes, loose


def free_amalgam(a: Plane, b: Plane, shared: Iterable[str]) -> AmalgamResult:
    """Union of the two planes over their shared part, no gluing beyond it."""
    c = _shared_part(a, b, shared, "free_amalgam")
    classes, lines = _line_classes(a, b, c)
    identified: set[tuple[frozenset[str], frozenset[str]]] = set()
    for trace, (la, lb) in classes.items():
        if len(trace) >= 3:
            lines.add((la or trace) | (lb or trace))
            if la and lb and la != lb:
                identified.add((la, lb))
        else:
            if la and lb:
                raise ExchangeViolation(
                    f"lines {sorted(la)} and {sorted(lb)} both extend the "
                    f"shared pair {sorted(trace)}"
                )
            lines.add(la or lb)  # exactly one side present
    out = Plane(a.points | b.points, frozenset(lines))
    try:
        validate(out)
    except InvalidPlaneError as exc:  # cross-class collision outside C
        raise ExchangeViolation(str(exc)) from exc
    return AmalgamResult(out, "free", frozenset(identified))


def canonical_amalgam(a: Plane, b: Plane, shared: Iterable[str]) -> AmalgamResult:
    """Glue the two planes over C, identifying lines with a common C-trace."""
    c = _shared_part(a, b, shared, "canonical_amalgam")
    core = restrict(a, c)
    for name, side in (("first", a), ("second", b)):
        if not is_wedge_subgeometry(core, side):
            raise NotWedgeSubgeometry(
                f"canonical_amalgam: shared part is not wedge-compatible "
                f"in the {name} plane"
            )
    classes, lines = _line_classes(a, b, c)
    identified: set[tuple[frozenset[str], frozenset[str]]] = set()
    for trace, (la, lb) in classes.items():
        lines.add((la or trace) | (lb or trace))
        if la and lb and la != lb:
            identified.add((la, lb))
    out = Plane(a.points | b.points, frozenset(lines))
    validate(out)
    gained = delta(a) + delta(b) - delta(a, c)
    assert delta(out) == gained, (
        f"canonical amalgam broke predimension additivity: "
        f"{delta(out)} != {gained}"
    )
    return AmalgamResult(out, "canonical", frozenset(identified))


def is_primitive(plane: Plane, lower: Iterable[str], upper: Iterable[str]) -> bool:
    """No proper intermediate X with lower <= X <= upper (both strong)."""
    lo, up = frozenset(lower), frozenset(upper)
    if not lo <= up <= plane.points:
        raise PreconditionError("is_primitive: need lower ⊆ upper ⊆ plane")
    if not is_strong(plane, lo, up):
        raise NotStrong("is_primitive: lower part is not strong in the upper")
    free = sorted(up - lo)
    guard_subsets(len(free), "is_primitive")
    for size in range(1, len(free)):
        for mid in combinations(free, size):
            x = lo | frozenset(mid)
            if is_strong(plane, lo, x) and is_strong(plane, x, up):
                return False
    return True


def classify_primitive(
    plane: Plane, lower: Iterable[str], upper: Iterable[str]
) -> PrimitiveCase:
    """Primitive steps either grow delta by 1 (then one new point) or by 0."""
    lo, up = frozenset(lower), frozenset(upper)
    if not is_primitive(plane, lo, up):
        raise NotPrimitive("classify_primitive: the step is not primitive")
    growth = delta(plane, up) - delta(plane, lo)
    assert growth in (0, 1), f"primitive step grew delta by {growth}"
    if growth == 1:
        new = up - lo
        assert len(new) == 1, "delta-1 primitive step with several new points"
        return PrimitiveCase(1, next(iter(new)))
    return PrimitiveCase(0)


def decompose(plane: Plane, lower: Iterable[str], upper: Iterable[str]) -> Decomposition:
    """Chain of primitive strong steps from lower to upper.

    Deterministic: each step takes the smallest proper strong intermediate
    (by size, then lexicographically), which is necessarily primitive and
    makes the chain as long as possible.
    """
    lo, up = frozenset(lower), frozenset(upper)
    if not is_strong(plane, lo, up):
        raise NotStrong("decompose: lower part is not strong in the upper")
    chain = [lo]
    current = lo
    while current != up:
        free = sorted(up - current)
        guard_subsets(len(free), "decompose")
        step = None
        for size in range(1, len(free) + 1):
            for mid in combinations(free, size):
                x = current | frozenset(mid)
                if is_strong(plane, current, x) and is_strong(plane, x, up):
                    step = x
                    break
            if step is not None:
                break
        chain.append(step)
        current = step
    return Decomposition(tuple(chain))


def sharp_step(
    a: Plane, b: Plane, shared: Iterable[str]
) -> FreeAmalgam | StrongEmbedding:
    """Amalgamate a primitive extension with a 1-strong base, sharply.

    Returns the free amalgam whenever it is valid and hereditarily
    nonnegative; otherwise a strong embedding of the first plane into the
    second over the shared part.  One of the two always exists.
    """
    c = _shared_part(a, b, shared, "sharp_step")
    if not is_strong(a, c):
        raise NotStrong("sharp_step: shared part must be strong in the first plane")
    if not is_primitive(a, c, a.points):
        raise NotPrimitive("sharp_step: first plane must be primitive over the shared part")
    if not is_k_strong(b, c, 1):
        raise NotStrong("sharp_step: shared part must be 1-strong in the second plane")
    if a.points == c:
        return StrongEmbedding({p: p for p in sorted(c)})
    try:
        free = free_amalgam(a, b, c)
    except ExchangeViolation:
        free = None
    if free is not None and in_K0(free.plane):
        return FreeAmalgam(free.plane)
    identity = {p: p for p in sorted(c)}
    for emb in embeddings(a, b, identity):
        if is_strong(b, frozenset(emb.values())):
            return StrongEmbedding(emb)
    raise PlaneError("sharp_step: neither a free amalgam nor a strong embedding")


def d_independent(
    plane: Plane,
    a: Iterable[str],
    b: Iterable[str],
    shared: Iterable[str],
) -> bool:
    """Whether growing the base from C to B leaves the d-value of A alone.

    The numeric test d(A/C) = d(A/B) is asserted against the structural
    one: the induced plane on A u B is the canonical amalgam of the two
    restrictions, and A u B is strong in the ambient plane.
    """
    aa, bb, cc = frozenset(a), frozenset(b), frozenset(shared)
    if aa & bb != cc:
        raise PreconditionError("d_independent: shared part must be the intersection")
    for side, name in ((aa, "A"), (bb, "B")):
        if not is_strong(plane, side):
            raise NotStrong(f"d_independent: {name} is not strong in the plane")
        if not is_strong(plane, cc, side):
            raise NotStrong(f"d_independent: shared part is not strong in {name}")
    numeric = d_rel(plane, aa, cc) == d_rel(plane, aa, bb)
    merged = canonical_amalgam(restrict(plane, aa), restrict(plane, bb), cc)
    structural = (
        restrict(plane, aa | bb) == merged.plane and is_strong(plane, aa | bb)
    )
    assert numeric == structural, (
        "numeric and structural independence tests disagree"
    )
    return numeric
