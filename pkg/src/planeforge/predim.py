"""Predimension calculus: delta, Mason's alpha, d-values, strong sets, icl.

delta(X) = |X| - sum over lines of max(|l cap X| - 2, 0) is submodular, so
min { delta(X) : A subseteq X subseteq U } is computable exactly by a
min-cut reduction (select a line, earn its trace nullity, pay one per
covered point outside A).  All the d / strong / icl / K0 operations run
through that engine; nothing here enumerates subsets except is_k_strong,
whose contract is genuinely about bounded-size increments.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, inf
from typing import Iterable

from .errors import BudgetExceeded, PreconditionError, subset_budget
from .flow import FlowNetwork
from .plane import Plane, flats, rank


def _as_subset(plane: Plane, subset: Iterable[str] | None, what: str) -> frozenset[str]:
    if subset is None:
        return plane.points
    x = frozenset(subset)
    if not x <= plane.points:
        raise PreconditionError(f"{what}: {sorted(x - plane.points)} outside plane")
    return x


def delta(plane: Plane, subset: Iterable[str] | None = None) -> int:
    """Predimension: point count minus total line nullity of the trace."""
    x = _as_subset(plane, subset, "delta")
    penalty = 0
    for line in plane.lines:
        k = len(line & x)
        if k >= 3:
            penalty += k - 2
    return len(x) - penalty


def delta_rel(plane: Plane, subset: Iterable[str], base: Iterable[str]) -> int:
    """Relative predimension delta(X / B) = delta(X u B) - delta(B)."""
    x = _as_subset(plane, subset, "delta_rel")
    b = _as_subset(plane, base, "delta_rel")
    return delta(plane, x | b) - delta(plane, b)


def alpha(plane: Plane, subset: Iterable[str] | None = None) -> int:
    """Mason's alpha: |X| - rk(X) - sum of alpha over proper subflats."""
    x = _as_subset(plane, subset, "alpha")
    all_flats = sorted(flats(plane), key=len)
    memo: dict[frozenset[str], int] = {}

    def value(s: frozenset[str]) -> int:
        got = memo.get(s)
        if got is None:
            got = len(s) - rank(plane, s) - sum(
                memo[f] for f in all_flats if len(f) < len(s) and f < s
            )
            memo[s] = got
        return got

    for f in all_flats:  # increasing size, so dependencies are ready
        value(f)
    return value(x)


# --- the min-delta engine ---------------------------------------------------


def _min_delta(
    plane: Plane, seed: frozenset[str], universe: frozenset[str]
) -> tuple[int, frozenset[str]]:
    """Minimum of delta over seed <= X <= universe, with the smallest argmin.

    Selecting a line earns (trace size - 2) and costs one per trace point
    outside the seed; a max-flow on the selection network yields the best
    total.  The source side of the residual graph is the inclusion-minimal
    optimal selection, and the smallest minimizer keeps exactly the points
    covered by two or more selected lines.
    """
    traces = [line & universe for line in plane.lines]
    traces = [t for t in traces if len(t) >= 3]
    costed = sorted(set().union(*traces) - seed) if traces else []
    pt_node = {p: 2 + len(traces) + i for i, p in enumerate(costed)}

    net = FlowNetwork(2 + len(traces) + len(costed))
    source, sink = 0, 1
    profit_total = 0
    for i, t in enumerate(traces):
        node = 2 + i
        profit_total += len(t) - 2
        net.add_edge(source, node, len(t) - 2)
        for p in t - seed:
            net.add_edge(node, pt_node[p], inf)
    for p in costed:
        net.add_edge(pt_node[p], sink, 1)

    best_gain = profit_total - int(net.max_flow(source, sink))
    side = net.source_side(source)

    degree: dict[str, int] = {}
    for i, t in enumerate(traces):
        if 2 + i in side:
            for p in t - seed:
                degree[p] = degree.get(p, 0) + 1
    minimizer = seed | {p for p, d in degree.items() if d >= 2}
    return len(seed) - best_gain, minimizer


def _seed_and_universe(
    plane: Plane,
    subset: Iterable[str],
    within: Iterable[str] | None,
    what: str,
) -> tuple[frozenset[str], frozenset[str]]:
    universe = _as_subset(plane, within, what)
    seed = frozenset(subset)
    if not seed <= universe:
        raise PreconditionError(f"{what}: subset must lie inside the ambient set")
    return seed, universe


def d_value(
    plane: Plane, subset: Iterable[str], within: Iterable[str] | None = None
) -> int:
    """d(A) = min delta over supersets of A (inside `within` if given)."""
    seed, universe = _seed_and_universe(plane, subset, within, "d_value")
    return _min_delta(plane, seed, universe)[0]


def d_rel(plane: Plane, subset: Iterable[str], base: Iterable[str]) -> int:
    """d(A / B) = d(A u B) - d(B)."""
    a = frozenset(subset)
    b = _as_subset(plane, base, "d_rel")
    return d_value(plane, a | b) - d_value(plane, b)


def icl(
    plane: Plane, subset: Iterable[str], within: Iterable[str] | None = None
) -> frozenset[str]:
    """Intrinsic closure: the smallest strong superset of `subset`.

    Equals the inclusion-minimal delta-minimizer over supersets; minimizers
    form a lattice, so the smallest one is unique.
    """
    seed, universe = _seed_and_universe(plane, subset, within, "icl")
    return _min_delta(plane, seed, universe)[1]


def is_strong(
    plane: Plane, subset: Iterable[str], within: Iterable[str] | None = None
) -> bool:
    """A <= B: no superset of A inside B has smaller delta."""
    seed, universe = _seed_and_universe(plane, subset, within, "is_strong")
    return _min_delta(plane, seed, universe)[0] == delta(plane, seed)


def is_k_strong(
    plane: Plane,
    subset: Iterable[str],
    k: int,
    within: Iterable[str] | None = None,
) -> bool:
    """delta never drops when at most k points of the ambient are added."""
    if k < 0:
        raise PreconditionError("is_k_strong: k must be nonnegative")
    seed, universe = _seed_and_universe(plane, subset, within, "is_k_strong")
    free = sorted(universe - seed)
    if k >= len(free):
        return is_strong(plane, seed, universe)
    work = sum(comb(len(free), i) for i in range(1, k + 1))
    if work > 2 ** subset_budget():
        raise BudgetExceeded(
            f"is_k_strong: {work} increments exceed the subset budget"
        )
    base = delta(plane, seed)
    for size in range(1, k + 1):
        for extra in combinations(free, size):
            if delta(plane, seed | frozenset(extra)) < base:
                return False
    return True


def in_K0(plane: Plane) -> bool:
    """Hereditary nonnegativity: every subset has delta >= 0."""
    return _min_delta(plane, frozenset(), plane.points)[0] == 0


@dataclass(frozen=True)
class PredimReport:
    delta: int
    alpha: int
    in_k0: bool
    violating_subset: frozenset[str] | None

    def text(self) -> str:
        viol = (
            " ".join(sorted(self.violating_subset))
            if self.violating_subset
            else "-"
        )
        return (
            f"delta: {self.delta}\n"
            f"alpha: {self.alpha}\n"
            f"in_K0: {'true' if self.in_k0 else 'false'}\n"
            f"violating_subset: {viol}\n"
        )


def predim_report(plane: Plane) -> PredimReport:
    value, witness = _min_delta(plane, frozenset(), plane.points)
    ok = value == 0
    return PredimReport(
        delta=delta(plane),
        alpha=alpha(plane),
        in_k0=ok,
        violating_subset=None if ok else witness,
    )
