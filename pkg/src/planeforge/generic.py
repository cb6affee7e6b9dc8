"""Bounded construction of generic-plane approximations, genericity audits,
and the named witness configurations.

The builder closes an initially empty plane under strong extensions, working
through extension situations at the level of isomorphism types: a situation
is a pair (base type, extension class), and firing one glues a fresh copy of
the class onto a cached strong subset of that type via canonical
amalgamation.  Types are swept in tiers ordered by size, so every situation
is reached after finitely many steps.  check_genericity measures how much of
that closure a finished stage actually exhibits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .amalgam import canonical_amalgam, classify_primitive, decompose, is_primitive
from .census import (
    EXTENSION_CAP,
    canonical_labeling,
    enumerate_planes,
    enumerate_strong_extensions,
    exact_census,
)
from .embedding import are_isomorphic, embeddings
from .errors import (
    BudgetExceeded,
    NotStrong,
    PlaneError,
    PreconditionError,
    guard_subsets,
)
from .plane import Plane, line_through, make_plane, restrict, validate
from .predim import alpha, d_rel, d_value, delta, icl, in_K0, is_strong

ICL_SWEEP_CAP = 200_000


def plane_label(plane: Plane) -> str:
    """Compact human-readable tag: point count plus sorted line list."""
    if not plane.lines:
        return f"{len(plane.points)}p"
    body = ";".join(
        " ".join(sorted(l)) for l in sorted(plane.lines, key=lambda l: sorted(l))
    )
    return f"{len(plane.points)}p[{body}]"


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class StepRecord:
    """One amalgamation step: which subset grew, by which class, into what."""

    index: int
    base: frozenset
    added: frozenset
    template: Plane
    template_label: str
    identified: frozenset


@dataclass(frozen=True)
class ExtensionChain:
    stages: tuple
    steps: tuple

    @property
    def final(self) -> Plane:
        return self.stages[-1]

    def __repr__(self) -> str:
        return f"ExtensionChain({len(self.steps)} steps, final={self.final!r})"


@dataclass(frozen=True)
class _TypePair:
    base_size: int
    new_size: int
    base_key: tuple
    base_rep: Plane
    ext_index: int
    template: Plane

    @property
    def fire_key(self):
        return (self.base_key, self.new_size, self.ext_index)


def _canonical_key_and_map(plane: Plane):
    label = canonical_labeling(plane)
    key = (
        len(plane.points),
        tuple(sorted(tuple(sorted(label[p] for p in l)) for l in plane.lines)),
    )
    inverse = {i: p for p, i in label.items()}
    return key, inverse


class _Builder:
    def __init__(self, ext_bound: int):
        self.ext_bound = ext_bound
        self.stage = make_plane(())
        self.stages = [self.stage]
        self.records: list[StepRecord] = []
        self.counter = 0
        # type key -> (instance points, map canonical-label -> stage point)
        self.instances: dict = {}
        self._register(frozenset())

    def _register(self, image: frozenset) -> None:
        if len(image) > 7:
            return  # never needed as a base: tier bases stay census-sized
        sub = restrict(self.stage, image)
        key, inverse = _canonical_key_and_map(sub)
        if key not in self.instances:
            self.instances[key] = (image, inverse)

    def fire(self, base_key, base_rep: Plane, template: Plane) -> None:
        inst_points, inst_map = self.instances[base_key]
        rep_label = canonical_labeling(base_rep)
        sigma = {p: inst_map[rep_label[p]] for p in base_rep.points}
        fresh = {}
        for p in sorted(template.points - base_rep.points):
            self.counter += 1
            fresh[p] = f"x{self.counter}"
        rename = {**sigma, **fresh}
        concrete = make_plane(
            [rename[p] for p in template.points],
            [[rename[p] for p in l] for l in template.lines],
        )
        result = canonical_amalgam(self.stage, concrete, inst_points)
        new_stage = result.plane
        if not is_strong(new_stage, self.stage.points):
            raise PlaneError("builder invariant broken: stage not strong in successor")
        if not in_K0(new_stage):
            raise PlaneError("builder invariant broken: stage left K0")
        self.records.append(
            StepRecord(
                index=len(self.records),
                base=inst_points,
                added=frozenset(fresh.values()),
                template=template,
                template_label=plane_label(template),
                identified=result.identified_lines,
            )
        )
        self.stage = new_stage
        self.stages.append(new_stage)
        self._register(frozenset(rename.values()))


def _tier_pairs(tier: int, ext_bound: int) -> list[_TypePair]:
    """Extension situations whose larger side first reaches ``tier``."""
    pairs: list[_TypePair] = []
    for base_size in range(0, tier + 1):
        for new_size in range(1, ext_bound + 1):
            if max(base_size, new_size) != tier:
                continue
            for base in exact_census(base_size):
                base_key, _ = _canonical_key_and_map(base)
                exts = enumerate_strong_extensions(base, ext_bound)
                for ext_index, template in enumerate(exts):
                    if len(template.points) - base_size != new_size:
                        continue
                    pairs.append(
                        _TypePair(
                            base_size=base_size,
                            new_size=new_size,
                            base_key=base_key,
                            base_rep=base,
                            ext_index=ext_index,
                            template=template,
                        )
                    )
    return pairs


def build_generic(steps: int, ext_bound: int, seeds=()) -> ExtensionChain:
    """Grow a stage chain from the empty plane by ``steps`` amalgamations.

    Situations are fired tier by tier; a situation whose base type has no
    strong instance in the current stage yet is pushed back and retried after
    the others.  ``seeds`` are extension templates over the empty set,
    processed first (one step each) — the fair sweep reaches every class
    eventually, seeding just front-loads chosen ones.  The chain records the
    concrete base, the added points, and the line identifications per step.
    """
    if steps < 0:
        raise PreconditionError("step count must be nonnegative")
    if ext_bound < 1:
        raise PreconditionError("extension bound must be at least 1")
    if ext_bound > EXTENSION_CAP:
        raise BudgetExceeded(
            f"extension bound capped at {EXTENSION_CAP}, requested {ext_bound}"
        )

    builder = _Builder(ext_bound)
    empty_key, _ = _canonical_key_and_map(make_plane(()))
    empty_rep = make_plane(())

    for seed in seeds:
        if len(builder.records) >= steps:
            break
        validate(seed)
        if not in_K0(seed):
            raise PreconditionError("seed template is not hereditarily nonnegative")
        builder.fire(empty_key, empty_rep, seed)

    pending: deque = deque()
    fired = set()
    tier = 0
    tiers_left = True
    while len(builder.records) < steps:
        progressed = False
        requeue = []
        while pending and len(builder.records) < steps:
            pair = pending.popleft()
            if pair.fire_key in fired:
                continue
            if pair.base_key not in builder.instances:
                requeue.append(pair)
                continue
            builder.fire(pair.base_key, pair.base_rep, pair.template)
            fired.add(pair.fire_key)
            progressed = True
        pending.extend(requeue)
        if len(builder.records) >= steps:
            break
        if not tiers_left and not progressed:
            break  # nothing fireable remains
        if tiers_left:
            tier += 1
            try:
                pending.extend(_tier_pairs(tier, ext_bound))
            except BudgetExceeded:
                tiers_left = False

    return ExtensionChain(stages=tuple(builder.stages), steps=tuple(builder.records))


# ---------------------------------------------------------------------------
# genericity audit


@dataclass(frozen=True)
class TypeRow:
    base_label: str
    ext_label: str
    realized: bool
    base_points: frozenset | None
    image_points: frozenset | None


@dataclass(frozen=True)
class AuditReport:
    radius: int
    rows: tuple
    max_icl_size: int
    max_icl_subset: frozenset
    frontier_sets: int
    icl_subsets_checked: int
    skipped_sizes: tuple
    subset_pairs_checked: int | None = None
    subset_pairs_realized: int | None = None

    @property
    def unrealized(self) -> tuple:
        return tuple(r for r in self.rows if not r.realized)

    @property
    def realization_rate(self) -> float:
        if not self.rows:
            return 1.0
        return sum(1 for r in self.rows if r.realized) / len(self.rows)

    @property
    def passed(self) -> bool:
        return not self.unrealized

    def text(self) -> str:
        lines = [
            f"radius: {self.radius}",
            f"types_total: {len(self.rows)}",
            f"types_realized: {sum(1 for r in self.rows if r.realized)}",
            f"types_unrealized: {len(self.unrealized)}",
            f"realization_rate: {self.realization_rate:.3f}",
            f"max_icl_size: {self.max_icl_size}",
            "max_icl_subset: "
            + (" ".join(sorted(self.max_icl_subset)) if self.max_icl_subset else "-"),
            f"icl_frontier_sets: {self.frontier_sets}",
            f"icl_subsets_checked: {self.icl_subsets_checked}",
            "icl_sizes_skipped: "
            + (" ".join(str(s) for s in self.skipped_sizes) if self.skipped_sizes else "-"),
        ]
        if self.subset_pairs_checked is not None:
            lines.append(f"subset_pairs_checked: {self.subset_pairs_checked}")
            lines.append(f"subset_pairs_realized: {self.subset_pairs_realized}")
        for row in self.unrealized:
            lines.append(f"unrealized: {row.base_label} -> {row.ext_label}")
        return "\n".join(lines)


def _typed_strong_subsets(plane: Plane, base_rep: Plane):
    """Strong subsets of ``plane`` inducing a copy of ``base_rep``, lex order."""
    size = len(base_rep.points)
    for combo in combinations(sorted(plane.points), size):
        pts = frozenset(combo)
        if not are_isomorphic(restrict(plane, pts), base_rep):
            continue
        if not is_strong(plane, pts):
            continue
        yield pts


def _realize_over(plane: Plane, base_rep: Plane, instance: frozenset, template: Plane):
    """Image of ``template`` over ``instance`` strongly embedded in ``plane``."""
    sub = restrict(plane, instance)
    for sigma in embeddings(base_rep, sub):
        for emb in embeddings(template, plane, fixed=sigma):
            image = frozenset(emb.values())
            if is_strong(plane, image):
                return image
    return None


def check_genericity(plane: Plane, radius: int, per_subset: bool = False) -> AuditReport:
    """Audit how completely ``plane`` realizes small strong extensions.

    For every base type of at most ``radius`` points and every strong
    extension class adding at most ``radius`` points, reports whether some
    strong subset of that type extends inside ``plane`` to a strong copy of
    the class.  Also sweeps the intrinsic closure of every subset of size at
    most ``radius`` (size-3 sweeps are skipped past 200k subsets) and counts
    closures that swallow the whole plane.  ``per_subset`` additionally
    checks realization over every strong subset individually — exhaustive,
    so it is guarded by the subset budget.
    """
    if radius < 0:
        raise PreconditionError("radius must be nonnegative")
    validate(plane)
    if not in_K0(plane):
        raise PreconditionError("ambient plane is not hereditarily nonnegative")

    rows = []
    subset_checked = subset_realized = None
    if per_subset:
        guard_subsets(len(plane.points), "per-subset genericity audit")
        subset_checked = subset_realized = 0

    for base_rep in enumerate_planes(radius):
        templates = enumerate_strong_extensions(base_rep, radius)
        if not templates:
            continue
        instance_cache: list[frozenset] = []
        instance_gen = _typed_strong_subsets(plane, base_rep)

        def instances():
            yield from instance_cache
            for pts in instance_gen:
                instance_cache.append(pts)
                yield pts

        if per_subset:
            all_instances = list(instances())

        for template in templates:
            realized_at = None
            witness_image = None
            for inst in instances():
                image = _realize_over(plane, base_rep, inst, template)
                if image is not None:
                    realized_at = inst
                    witness_image = image
                    break
            rows.append(
                TypeRow(
                    base_label=plane_label(base_rep),
                    ext_label=plane_label(template),
                    realized=realized_at is not None,
                    base_points=realized_at,
                    image_points=witness_image,
                )
            )
            if per_subset:
                for inst in all_instances:
                    subset_checked += 1
                    if _realize_over(plane, base_rep, inst, template) is not None:
                        subset_realized += 1

    points = sorted(plane.points)
    max_size = 0
    max_subset: frozenset = frozenset()
    frontier = 0
    checked = 0
    skipped = []
    for size in range(0, radius + 1):
        if size >= 3 and comb(len(points), size) > ICL_SWEEP_CAP:
            skipped.append(size)
            continue
        for combo in combinations(points, size):
            closure = icl(plane, frozenset(combo))
            checked += 1
            if len(closure) > max_size:
                max_size = len(closure)
                max_subset = closure
            if closure == plane.points and plane.points:
                frontier += 1

    return AuditReport(
        radius=radius,
        rows=tuple(rows),
        max_icl_size=max_size,
        max_icl_subset=max_subset,
        frontier_sets=frontier,
        icl_subsets_checked=checked,
        skipped_sizes=tuple(skipped),
        subset_pairs_checked=subset_checked,
        subset_pairs_realized=subset_realized,
    )


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class WitnessBundle:
    name: str
    plane: Plane
    assertions: tuple
    metrics: dict = field(default_factory=dict)

    def __getattr__(self, item):
        try:
            return self.metrics[item]
        except KeyError:
            raise AttributeError(item) from None

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.assertions)

    def text(self) -> str:
        lines = [
            f"witness: {self.name}",
            f"points: {len(self.plane.points)}",
            f"lines: {len(self.plane.lines)}",
        ]
        for key in sorted(self.metrics):
            value = self.metrics[key]
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{key}: {value}")
        for description, passed in self.assertions:
            lines.append(("PASS " if passed else "FAIL ") + description)
        return "\n".join(lines)


def non_desarguesian_plane() -> Plane:
    """Two triangles perspective from a point, with the axis line omitted.

    Ten points, nine 3-point lines: the perspector o, triangle a1 a2 a3,
    triangle b1 b2 b3, and the three cross points c12 c13 c23 — everything
    the Desargues configuration has except the line c12 c13 c23.
    """
    points = "o a1 a2 a3 b1 b2 b3 c12 c13 c23".split()
    lines = [
        "o a1 b1",
        "o a2 b2",
        "o a3 b3",
        "a1 a2 c12",
        "a1 a3 c13",
        "a2 a3 c23",
        "b1 b2 c12",
        "b1 b3 c13",
        "b2 b3 c23",
    ]
    return make_plane(points, [l.split() for l in lines])


def witness_non_desarguesian() -> WitnessBundle:
    plane = non_desarguesian_plane()
    try:
        validate(plane)
        valid = True
    except PlaneError:
        valid = False
    dv = delta(plane)
    av = alpha(plane)
    points = sorted(plane.points)
    hereditary = True
    for size in range(len(points) + 1):
        for combo in combinations(points, size):
            if delta(plane, frozenset(combo)) < 0:
                hereditary = False
                break
        if not hereditary:
            break
    nullities = sorted(len(l) - 2 for l in plane.lines)
    assertions = (
        ("delta equals 1", dv == 1),
        ("alpha equals -2", av == -2),
        ("exactly 9 lines, each of nullity 1", nullities == [1] * 9),
        ("every one of the 1024 subsets has nonnegative delta", hereditary),
        ("lines pairwise meet in at most one point", valid),
    )
    return WitnessBundle(
        name="non-desarguesian",
        plane=plane,
        assertions=assertions,
        metrics={"delta": dv, "alpha": av, "in_K0": hereditary},
    )


def witness_not_one_based() -> WitnessBundle:
    plane = make_plane("p1 p2 p3 q1 q2".split(), [["p1", "q1", "q2"]])
    c = frozenset({"p1", "p2", "p3"})
    a = c | {"q2"}
    b = c | {"q1"}
    d_ac = d_rel(plane, frozenset({"q2"}), c)
    d_ab = d_rel(plane, a, b)
    from .amalgam import d_independent

    assertions = (
        ("C is strong in A", is_strong(plane, c, a)),
        ("A is strong in the plane", is_strong(plane, a)),
        ("C is strong in B", is_strong(plane, c, b)),
        ("B is strong in the plane", is_strong(plane, b)),
        ("A and B meet exactly in C", a & b == c),
        ("d(A/C) = 1", d_ac == 1),
        ("d(A/B) = 0", d_ab == 0),
        ("A and B are not d-independent over C", not d_independent(plane, a, b, c)),
    )
    return WitnessBundle(
        name="not-one-based",
        plane=plane,
        assertions=assertions,
        metrics={
            "delta_A": delta(plane, a),
            "delta_B": delta(plane, b),
            "delta_D": delta(plane),
            "d_A_over_C": d_ac,
            "d_A_over_B": d_ab,
        },
    )


def witness_weak_ei() -> WitnessBundle:
    """Two disjoint closed pairs that determine the same line.

    The four-point line {a, b, a2, b2} is glued onto a small generically
    built stage; each of {a, b} and {a2, b2} is its own intrinsic closure in
    the ambient, yet both generate the same line — so the line has no
    smallest closed set of definition.
    """
    stage = build_generic(steps=6, ext_bound=2).final
    four = make_plane("a b a2 b2".split(), [["a", "b", "a2", "b2"]])
    ambient = canonical_amalgam(stage, four, frozenset()).plane
    pair1 = frozenset({"a", "b"})
    pair2 = frozenset({"a2", "b2"})
    line1 = line_through(ambient, "a", "b")
    line2 = line_through(ambient, "a2", "b2")
    assertions = (
        ("the four-point line is strong in the ambient", is_strong(ambient, four.points)),
        ("both pairs determine a line", line1 is not None and line2 is not None),
        ("the two pairs determine the same line", line1 == line2),
        ("icl({a,b}) = {a,b}", icl(ambient, pair1) == pair1),
        ("icl({a2,b2}) = {a2,b2}", icl(ambient, pair2) == pair2),
        ("the two closed pairs are disjoint", not (pair1 & pair2)),
    )
    return WitnessBundle(
        name="weak-ei",
        plane=ambient,
        assertions=assertions,
        metrics={
            "ambient_points": len(ambient.points),
            "shared_line": " ".join(sorted(line1)) if line1 else "-",
        },
    )


def morley_chain(k: int) -> WitnessBundle:
    """The one-line chain q0, q1, ..., qk over the base {p1, p2, p3}.

    q0 joins the line through p1 and p2; each later point joins the line
    through q_{m} and one of p1/p2 — which is the same growing line — so
    Q_k is three free points plus a (k+3)-point line through two of them.
    Decomposition length grows by exactly one per level.
    """
    if k < 0:
        raise PreconditionError("chain index must be nonnegative")
    if k > 8:
        raise BudgetExceeded(f"morley chain capped at k = 8, requested {k}")
    base = frozenset({"p1", "p2", "p3"})

    def stage_plane(m: int) -> Plane:
        qs = [f"q{i}" for i in range(m + 1)]
        return make_plane(
            ["p1", "p2", "p3", *qs],
            [["p1", "p2", *qs]],
        )

    plane = stage_plane(k)
    lengths = []
    for m in range(k + 1):
        sub = stage_plane(m)
        lengths.append(decompose(sub, base, sub.points).length)
    increments = all(
        lengths[m + 1] == lengths[m] + 1 for m in range(k)
    )
    chain = decompose(plane, base, plane.points).chain
    case0 = all(
        classify_primitive(plane, chain[i], chain[i + 1]).growth == 0
        for i in range(len(chain) - 1)
    )
    d_q = d_rel(plane, frozenset({f"q{k}"}), base)
    assertions = (
        ("the base {p1,p2,p3} is strong in Q_k", is_strong(plane, base)),
        (f"d(q{k}/B) = 0", d_q == 0),
        ("decomposition length grows by one per level", increments),
        ("every decomposition step has growth 0", case0),
    )
    return WitnessBundle(
        name=f"morley-chain:{k}",
        plane=plane,
        assertions=assertions,
        metrics={
            "length": lengths[-1],
            "lengths": " ".join(str(v) for v in lengths),
            "d_qk_over_B": d_q,
        },
    )


def figure2_plane() -> WitnessBundle:
    """Six points, lines adf / cde / bef: a primitive extension of width 3."""
    plane = make_plane(
        "a b c d e f".split(),
        [["a", "d", "f"], ["c", "d", "e"], ["b", "e", "f"]],
    )
    lower = frozenset({"a", "b", "c"})
    upper = plane.points
    primitive = is_primitive(plane, lower, upper)
    case = classify_primitive(plane, lower, upper)
    assertions = (
        ("{a,b,c} is strong in the plane", is_strong(plane, lower)),
        ("{a,b,c} -> full plane is primitive", primitive),
        ("the extension has growth 0", case.growth == 0),
        ("three points are added", len(upper - lower) == 3),
        ("delta of the full plane is 3", delta(plane) == 3),
    )
    return WitnessBundle(
        name="figure2",
        plane=plane,
        assertions=assertions,
        metrics={"delta": delta(plane), "growth": case.growth},
    )


def iterated_amalgam(aprime: Plane, bprime: Plane, k: int) -> Plane:
    """The k-fold canonical amalgam of disjoint copies of B' over A'.

    Copies are glued one at a time; points of B' outside A' are renamed with
    a per-copy suffix.  The result's delta is exactly k*delta(B') -
    (k-1)*delta(A'), and every copy stays strong in it.
    """
    if k < 1:
        raise PreconditionError("copy count must be at least 1")
    validate(aprime)
    validate(bprime)
    if restrict(bprime, aprime.points) != aprime:
        raise PreconditionError("A' must be an induced subplane of B'")
    if not in_K0(bprime):
        raise PreconditionError("B' is not hereditarily nonnegative")
    if not is_strong(bprime, aprime.points):
        raise NotStrong("A' must be strong in B'")

    outside = sorted(bprime.points - aprime.points)
    result = bprime
    copies = [frozenset(bprime.points)]
    for i in range(2, k + 1):
        rename = {p: p for p in aprime.points}
        for p in outside:
            cand = f"{p}.{i}"
            while cand in result.points:
                cand += "'"
            rename[p] = cand
        copy = make_plane(
            [rename[p] for p in bprime.points],
            [[rename[p] for p in l] for l in bprime.lines],
        )
        result = canonical_amalgam(result, copy, aprime.points).plane
        copies.append(frozenset(rename.values()))

    expected = k * delta(bprime) - (k - 1) * delta(aprime)
    if delta(result) != expected:
        raise PlaneError(
            f"amalgam delta {delta(result)} differs from expected {expected}"
        )
    for pts in copies:
        if not is_strong(result, pts):
            raise PlaneError("a copy of B' is not strong in the iterated amalgam")
    return result


WITNESSES = {
    "non-desarguesian": witness_non_desarguesian,
    "not-one-based": witness_not_one_based,
    "weak-ei": witness_weak_ei,
    "figure2": figure2_plane,
}
