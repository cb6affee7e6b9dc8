"""Core incidence structure: points, lines, closure, rank, flats.

A plane is a finite simple rank-<=3 combinatorial geometry given by its
point set and its nontrivial lines (the lines with at least three points).
Two-point lines are implicit: any pair of points not covered by a stored
line spans a trivial line of its own.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import InvalidPlaneError

_NAME_RE = re.compile(r"^[^\s#]+$")


@dataclass(frozen=True)
class Plane:
    points: frozenset[str]
    lines: frozenset[frozenset[str]]

    @property
    def n_points(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:  # keep test failure output readable
        pts = ",".join(sorted(self.points))
        lns = ";".join(",".join(sorted(l)) for l in sorted(self.lines, key=sorted))
        return f"Plane({pts} | {lns})"


def make_plane(points: Iterable[str], lines: Iterable[Iterable[str]] = ()) -> Plane:
    """Build a plane from loose iterables, without validating it."""
    return Plane(frozenset(points), frozenset(frozenset(l) for l in lines))


def validate(plane: Plane) -> None:
    """Raise InvalidPlaneError unless the incidence data is structurally sound.

    Checks: point names are nonempty, whitespace-free and not comment-like;
    every line is a subset of the point set with at least 3 points; two
    distinct lines meet in at most one point.
    """
    for p in plane.points:
        if not isinstance(p, str) or not _NAME_RE.match(p):
            raise InvalidPlaneError(f"bad point name: {p!r}")
    for line in plane.lines:
        if len(line) < 3:
            raise InvalidPlaneError(
                f"line {sorted(line)} has {len(line)} points; lines need at least 3"
            )
        stray = line - plane.points
        if stray:
            raise InvalidPlaneError(
                f"line {sorted(line)} uses unknown points {sorted(stray)}"
            )
    lines = sorted(plane.lines, key=sorted)
    for i, l1 in enumerate(lines):
        for l2 in lines[i + 1 :]:
            common = l1 & l2
            if len(common) > 1:
                raise InvalidPlaneError(
                    f"lines {sorted(l1)} and {sorted(l2)} share {sorted(common)}"
                )


@lru_cache(maxsize=None)
def _lines_through(plane: Plane) -> dict[str, frozenset[frozenset[str]]]:
    """point -> set of stored lines through it."""
    index: dict[str, set[frozenset[str]]] = {p: set() for p in plane.points}
    for line in plane.lines:
        for p in line:
            index[p].add(line)
    return {p: frozenset(ls) for p, ls in index.items()}


@lru_cache(maxsize=None)
def _line_of_pair(plane: Plane) -> dict[frozenset[str], frozenset[str]]:
    """unordered pair -> the stored line through it, for covered pairs only."""
    index: dict[frozenset[str], frozenset[str]] = {}
    for line in plane.lines:
        for pair in _pairs(line):
            index[pair] = line
    return index


def _pairs(points: Iterable[str]) -> Iterable[frozenset[str]]:
    pts = sorted(points)
    for i, p in enumerate(pts):
        for q in pts[i + 1 :]:
            yield frozenset((p, q))


def line_through(plane: Plane, p: str, q: str) -> frozenset[str] | None:
    """The stored line through two distinct points, or None."""
    return _line_of_pair(plane).get(frozenset((p, q)))


def closure(plane: Plane, subset: Iterable[str]) -> frozenset[str]:
    """Smallest flat of the plane containing the subset."""
    x = frozenset(subset)
    if not x <= plane.points:
        raise InvalidPlaneError(f"subset {sorted(x - plane.points)} outside plane")
    if len(x) <= 1:
        return x
    for line in plane.lines:
        if x <= line:
            return line
    if len(x) == 2:
        return x
    return plane.points


def rank(plane: Plane, subset: Iterable[str] | None = None) -> int:
    """Matroid rank of a subset (whole plane by default)."""
    x = plane.points if subset is None else frozenset(subset)
    if not x <= plane.points:
        raise InvalidPlaneError(f"subset {sorted(x - plane.points)} outside plane")
    if len(x) <= 2:
        return len(x)
    if any(x <= line for line in plane.lines):
        return 2
    return 3


def flats(plane: Plane) -> frozenset[frozenset[str]]:
    """All flats: empty set, points, lines (stored and trivial), ground set."""
    out: set[frozenset[str]] = {frozenset()}
    out.update(frozenset((p,)) for p in plane.points)
    out.update(rank2_flats(plane))
    out.add(plane.points)
    return frozenset(out)


def lines_based_in(plane: Plane, base: Iterable[str]) -> frozenset[frozenset[str]]:
    """Stored lines meeting `base` in at least two points."""
    b = frozenset(base)
    return frozenset(line for line in plane.lines if len(line & b) >= 2)


def restrict(plane: Plane, subset: Iterable[str]) -> Plane:
    """Induced subplane on a subset: keep line traces with >= 3 points."""
    x = frozenset(subset)
    if not x <= plane.points:
        raise InvalidPlaneError(f"subset {sorted(x - plane.points)} outside plane")
    traces = frozenset(line & x for line in plane.lines if len(line & x) >= 3)
    return Plane(x, traces)


def is_induced_subplane(sub: Plane, sup: Plane) -> bool:
    return sub.points <= sup.points and sub == restrict(sup, sub.points)


def is_subgeometry(sub: Plane, sup: Plane) -> bool:
    """Points carry over and every sub-line lies inside some sup-line."""
    if not sub.points <= sup.points:
        return False
    return all(
        any(line <= sup_line for sup_line in sup.lines) for line in sub.lines
    )


def rank2_flats(plane: Plane) -> frozenset[frozenset[str]]:
    """Stored lines plus the trivial pair flats not covered by any line."""
    covered = _line_of_pair(plane)
    trivial = frozenset(p for p in _pairs(plane.points) if p not in covered)
    return plane.lines | trivial


def is_wedge_subgeometry(sub: Plane, sup: Plane) -> bool:
    """Whether `sub` sits wedge-compatibly inside `sup`.

    Requires (a) distinct rank-2 flats of sub (trivial pairs included) to
    have distinct closures in sup, and (b) no outside point of sup to lie
    on two such closures.  Induced subplanes satisfy (a) automatically;
    (b) fails exactly when an outside point sits on two sup-lines that
    each meet sub twice — the configuration that would make two merged
    lines cross twice in an amalgam.
    """
    if not is_subgeometry(sub, sup):
        return False
    closures = [closure(sup, flat) for flat in rank2_flats(sub)]
    if len(set(closures)) != len(closures):
        return False
    for p in sup.points - sub.points:
        based = sum(
            1 for line in _lines_through(sup)[p] if len(line & sub.points) >= 2
        )
        if based >= 2:
            return False
    return True
