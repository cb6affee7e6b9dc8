"""Induced-copy search: embed one plane into another.

An embedding here is always *induced*: the image carries exactly the lines
of the source, no more (a stored line of the target may meet the image in
at most two points unless it is the image of a source line).
"""

from __future__ import annotations

from typing import Iterator

from .errors import PreconditionError
from .plane import Plane, _lines_through, line_through, restrict


def _placement_order(sub: Plane, fixed: frozenset[str]) -> list[str]:
    """Free points ordered so each one touches placed structure early."""
    deg = {p: len(_lines_through(sub)[p]) for p in sub.points}
    placed = set(fixed)
    order: list[str] = []
    remaining = set(sub.points) - placed
    while remaining:
        best = max(
            remaining,
            key=lambda p: (
                sum(1 for q in placed if line_through(sub, p, q)),
                deg[p],
                p,
            ),
        )
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return order


def _consistent(sub: Plane, sup: Plane, mapping: dict[str, str], p: str) -> bool:
    """Pairwise collinearity checks against all already-placed points."""
    q = mapping[p]
    image = set(mapping.values())
    for p2, q2 in mapping.items():
        if p2 == p:
            continue
        sub_line = line_through(sub, p, p2)
        sup_line = line_through(sup, q, q2)
        if sub_line is not None and sup_line is None:
            return False
        if sub_line is None and sup_line is not None:
            # a free pair may share a target line, but never a third image point
            if sum(1 for r in sup_line if r in image) > 2:
                return False
    return True


def embeddings(
    sub: Plane, sup: Plane, fixed: dict[str, str] | None = None
) -> Iterator[dict[str, str]]:
    """All induced embeddings of sub into sup extending `fixed`."""
    fixed = dict(fixed or {})
    if not set(fixed) <= sub.points:
        raise PreconditionError("embeddings: fixed keys must be source points")
    if not set(fixed.values()) <= sup.points:
        raise PreconditionError("embeddings: fixed values must be target points")
    if len(set(fixed.values())) != len(fixed):
        return
    if sub.n_points > sup.n_points:
        return

    sup_deg = {q: len(_lines_through(sup)[q]) for q in sup.points}
    sub_deg = {p: len(_lines_through(sub)[p]) for p in sub.points}
    order = _placement_order(sub, frozenset(fixed))

    def extend(i: int, mapping: dict[str, str], used: set[str]) -> Iterator[dict[str, str]]:
        if i == len(order):
            image = frozenset(mapping.values())
            want = frozenset(
                frozenset(mapping[p] for p in line) for line in sub.lines
            )
            if restrict(sup, image).lines == want:
                yield dict(mapping)
            return
        p = order[i]
        for q in sorted(sup.points - used):
            if sub_deg[p] > sup_deg[q]:
                continue
            mapping[p] = q
            if _consistent(sub, sup, mapping, p):
                used.add(q)
                yield from extend(i + 1, mapping, used)
                used.remove(q)
            del mapping[p]

    start = dict(fixed)
    for p in fixed:
        if not _consistent(sub, sup, start, p):
            return
    yield from extend(0, start, set(fixed.values()))


def find_embedding(
    sub: Plane, sup: Plane, fixed: dict[str, str] | None = None
) -> dict[str, str] | None:
    """First induced embedding, or None."""
    return next(embeddings(sub, sup, fixed), None)


def are_isomorphic(a: Plane, b: Plane) -> bool:
    if a.n_points != b.n_points or len(a.lines) != len(b.lines):
        return False
    if sorted(len(l) for l in a.lines) != sorted(len(l) for l in b.lines):
        return False
    return find_embedding(a, b) is not None
