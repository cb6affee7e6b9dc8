"""Census of small planes and strong-extension classes, up to isomorphism.

Enumeration works on integer-labelled line sets with two symmetry prunes
(covered points form a label prefix; lines are added in strictly ascending
lexicographic order, new labels taken consecutively), then collapses the
survivors into isomorphism classes.  Class representatives are relabelled
onto letters through the same canonical labelling that orders the census.
"""

from __future__ import annotations

import string
from itertools import combinations, permutations

from .embedding import are_isomorphic
from .errors import BudgetExceeded, PreconditionError
from .plane import Plane, _lines_through, make_plane, restrict, validate
from .predim import in_K0, is_strong

CENSUS_CAP = 7
EXTENSION_CAP = 4

_census_cache: dict[int, list[Plane]] = {}
_extension_cache: dict[tuple, list[Plane]] = {}


# ---------------------------------------------------------------------------
# canonical form


def _color_classes(plane: Plane) -> list[list[str]]:
    """Partition points into orbit-respecting classes by iterated refinement.

    Starts from the multiset of incident line sizes and refines each point's
    color by the colors it sees along its lines, until the partition is
    stable.  The returned class order depends only on the color data, never
    on point names, so isomorphic planes refine to matching class sequences.
    """
    through = _lines_through(plane)
    color: dict[str, object] = {
        p: tuple(sorted(len(l) for l in through[p])) for p in plane.points
    }
    n_classes = len(set(color.values()))
    while True:
        rank = {c: i for i, c in enumerate(sorted(set(color.values())))}
        refined = {
            p: (
                rank[color[p]],
                tuple(
                    sorted(
                        (len(l), tuple(sorted(rank[color[q]] for q in l if q != p)))
                        for l in through[p]
                    )
                ),
            )
            for p in plane.points
        }
        refined_count = len(set(refined.values()))
        if refined_count == n_classes:
            break
        color = refined
        n_classes = refined_count
    groups: dict[object, list[str]] = {}
    for p in sorted(plane.points):
        groups.setdefault(color[p], []).append(p)
    return [groups[c] for c in sorted(groups)]


def canonical_labeling(plane: Plane) -> dict[str, int]:
    """A relabelling points -> 0..n-1 that minimizes the encoded line set.

    Labels are assigned in blocks following the refined color classes; within
    each class every permutation is tried and the lexicographically smallest
    line encoding wins.  Points on no line all land in one class and never
    affect the encoding, so only covered classes are permuted.
    """
    classes = _color_classes(plane)
    through = _lines_through(plane)
    offsets = []
    base = 0
    for cls in classes:
        offsets.append(base)
        base += len(cls)
    fixed: dict[str, int] = {}
    variable: list[tuple[list[str], int]] = []
    for cls, off in zip(classes, offsets):
        if len(cls) == 1 or not through[cls[0]]:
            for i, p in enumerate(cls):
                fixed[p] = off + i
        else:
            variable.append((cls, off))

    best_key = None
    best_map = None
    for assignment in _assignments(variable):
        label = dict(fixed)
        label.update(assignment)
        key = tuple(
            sorted(tuple(sorted(label[p] for p in l)) for l in plane.lines)
        )
        if best_key is None or key < best_key:
            best_key = key
            best_map = label
    return best_map


def _assignments(variable):
    if not variable:
        yield {}
        return
    (cls, off), rest = variable[0], variable[1:]
    for perm in permutations(cls):
        head = {p: off + i for i, p in enumerate(perm)}
        for tail in _assignments(rest):
            out = dict(head)
            out.update(tail)
            yield out


def canonical_key(plane: Plane) -> tuple:
    """Hashable isomorphism invariant: (n, minimal relabelled line set)."""
    label = canonical_labeling(plane)
    lines = tuple(sorted(tuple(sorted(label[p] for p in l)) for l in plane.lines))
    return (len(plane.points), lines)


def _signature(plane: Plane) -> tuple:
    through = _lines_through(plane)
    profile = sorted(
        tuple(sorted(len(l) for l in through[p])) for p in plane.points
    )
    return (
        len(plane.points),
        tuple(sorted(len(l) for l in plane.lines)),
        tuple(profile),
    )


# ---------------------------------------------------------------------------
# plane census


def _labeled_line_sets(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All line sets over points 0..n-1, one representative labelling each.

    Prunes to labellings where every line extends the covered prefix by
    consecutive new labels and the line list is strictly ascending; each
    isomorphism class keeps at least one labelling (greedy argument), and
    duplicates are removed afterwards.
    """
    candidates = []
    for size in range(3, n + 1):
        candidates.extend(combinations(range(n), size))
    candidates.sort()
    pair_index = {pair: i for i, pair in enumerate(combinations(range(n), 2))}
    masks = []
    for line in candidates:
        m = 0
        for pair in combinations(line, 2):
            m |= 1 << pair_index[pair]
        masks.append(m)

    out: list[tuple[tuple[int, ...], ...]] = []

    def grow(start: int, chosen: list, used_mask: int, covered: int) -> None:
        out.append(tuple(chosen))
        for i in range(start, len(candidates)):
            line = candidates[i]
            fresh = [p for p in line if p >= covered]
            if fresh != list(range(covered, covered + len(fresh))):
                continue
            if masks[i] & used_mask:
                continue
            chosen.append(line)
            grow(i + 1, chosen, used_mask | masks[i], covered + len(fresh))
            chosen.pop()

    grow(0, [], 0, 0)
    return out


def _planes_exactly(n: int) -> list[Plane]:
    if n == 0:
        return [make_plane(())]
    reps: list[Plane] = []
    buckets: dict[tuple, list[Plane]] = {}
    names = [str(i) for i in range(n)]
    for line_set in _labeled_line_sets(n):
        plane = make_plane(names, [[str(p) for p in line] for line in line_set])
        if not in_K0(plane):
            continue
        sig = _signature(plane)
        bucket = buckets.setdefault(sig, [])
        if any(are_isomorphic(plane, seen) for seen in bucket):
            continue
        bucket.append(plane)
        reps.append(plane)
    return reps


def _relabel_to_letters(plane: Plane) -> tuple[tuple, Plane]:
    label = canonical_labeling(plane)
    name = {p: string.ascii_lowercase[label[p]] for p in plane.points}
    relabeled = make_plane(
        [name[p] for p in plane.points],
        [[name[p] for p in l] for l in plane.lines],
    )
    key = (
        len(plane.points),
        tuple(sorted(tuple(sorted(label[p] for p in l)) for l in plane.lines)),
    )
    return key, relabeled


def enumerate_planes(n: int) -> list[Plane]:
    """All planes with at most ``n`` points, one per isomorphism class.

    Representatives use points ``a``, ``b``, ... in a canonical labelling and
    are sorted by size then canonical key, so the output order is stable.
    Only hereditarily nonnegative planes are returned.  Guarded at 7 points;
    beyond that the class count and the per-plane checks explode.
    """
    if n < 0:
        raise PreconditionError("census size must be nonnegative")
    if n > CENSUS_CAP:
        raise BudgetExceeded(f"census capped at {CENSUS_CAP} points, requested {n}")
    out: list[Plane] = []
    for k in range(n + 1):
        if k not in _census_cache:
            keyed = [_relabel_to_letters(p) for p in _planes_exactly(k)]
            keyed.sort(key=lambda kp: kp[0])
            _census_cache[k] = [p for _, p in keyed]
        out.extend(_census_cache[k])
    return out


def exact_census(n: int) -> list[Plane]:
    """Planes with exactly ``n`` points, one per isomorphism class."""
    full = enumerate_planes(n)
    return [p for p in full if len(p.points) == n]


# ---------------------------------------------------------------------------
# strong extension classes


def _fresh_names(base: Plane, count: int) -> list[str]:
    names = []
    i = 1
    while len(names) < count:
        cand = f"n{i}"
        if cand not in base.points:
            names.append(cand)
        i += 1
    return names


def _extension_line_sets(base: Plane, new: list[str]):
    """Yield every valid line set extending ``base`` by points ``new``.

    Each base line may absorb a subset of the new points; additional lines
    use at most two base points and at least one new point, so the trace of
    every line on the base is exactly a base line or at most a pair — the
    extension is induced by construction.  Compatibility is tracked through
    pair bitmasks; two lines may share at most one point, which is the same
    as their pair masks being disjoint (extended base lines contribute only
    the pairs they add beyond their base line).
    """
    allpts = sorted(base.points) + list(new)
    pair_index = {
        tuple(sorted(pair)): i for i, pair in enumerate(combinations(allpts, 2))
    }

    def mask(pts) -> int:
        m = 0
        for pair in combinations(sorted(pts), 2):
            m |= 1 << pair_index[pair]
        return m

    base_lines = sorted(tuple(sorted(l)) for l in base.lines)
    new_subsets = []
    for size in range(1, len(new) + 1):
        new_subsets.extend(combinations(new, size))

    # options[i] = list of (line tuple, added pair mask) for base line i
    options = []
    for bl in base_lines:
        opts = [(bl, 0)]
        for sub in new_subsets:
            ext = tuple(sorted(bl + sub))
            opts.append((ext, mask(ext) & ~mask(bl)))
        options.append(opts)

    extra = []
    for bsize in range(0, 3):
        for bpart in combinations(sorted(base.points), bsize):
            for sub in new_subsets:
                if bsize + len(sub) < 3:
                    continue
                line = tuple(sorted(bpart + sub))
                extra.append((line, mask(line)))
    extra.sort()

    def pick_base(i: int, lines: list, used: int):
        if i == len(options):
            yield from pick_extra(0, lines, used)
            return
        for line, extra_mask in options[i]:
            if extra_mask & used:
                continue
            lines.append(line)
            yield from pick_base(i + 1, lines, used | extra_mask)
            lines.pop()

    def pick_extra(start: int, lines: list, used: int):
        yield tuple(lines)
        for j in range(start, len(extra)):
            line, line_mask = extra[j]
            if line_mask & used:
                continue
            lines.append(line)
            yield from pick_extra(j + 1, lines, used | line_mask)
            lines.pop()

    base_pair_mask = 0
    for bl in base_lines:
        base_pair_mask |= mask(bl)
    yield from pick_base(0, [], base_pair_mask)


def _over_base_key(base: Plane, new: list[str], lines) -> tuple:
    """Canonical encoding of an extension up to permuting the new points."""
    best = None
    for perm in permutations(range(len(new))):
        rename = {p: (1, perm[i]) for i, p in enumerate(new)}
        encoded = tuple(
            sorted(
                tuple(sorted(rename.get(p, (0, p)) for p in line))
                for line in lines
            )
        )
        if best is None or encoded < best:
            best = encoded
    return (len(new), best)


def enumerate_strong_extensions(base: Plane, k: int) -> list[Plane]:
    """Strong extension classes of ``base`` by at most ``k`` new points.

    Returns proper extensions B (at least one new point, named n1, n2, ...)
    with base strong in B and B hereditarily nonnegative, one representative
    per isomorphism over the base (base points fixed pointwise), in a stable
    order.  Guarded at 4 new points.
    """
    if k > EXTENSION_CAP:
        raise BudgetExceeded(
            f"extension search capped at {EXTENSION_CAP} new points, requested {k}"
        )
    if k < 0:
        raise PreconditionError("extension bound must be nonnegative")
    validate(base)
    if not in_K0(base):
        raise PreconditionError("base plane is not hereditarily nonnegative")

    # Keyed on the exact plane: isomorphic bases on the same point set can
    # still differ in their labeled lines, and extensions fix base points.
    cache_key = (base, k)
    if cache_key in _extension_cache:
        return list(_extension_cache[cache_key])

    found: dict[tuple, Plane] = {}
    for m in range(1, k + 1):
        new = _fresh_names(base, m)
        allpts = list(base.points) + new
        for lines in _extension_line_sets(base, new):
            plane = make_plane(allpts, lines)
            key = _over_base_key(base, new, lines)
            if key in found:
                continue
            if not in_K0(plane):
                continue
            if not is_strong(plane, base.points):
                continue
            found[key] = plane
    ordered = sorted(found.items(), key=lambda kv: kv[0])
    result = [p for _, p in ordered]
    _extension_cache[cache_key] = result
    return list(result)
