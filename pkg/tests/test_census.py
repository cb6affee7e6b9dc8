import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from planeforge import (
    BudgetExceeded,
    PreconditionError,
    are_isomorphic,
    canonical_key,
    delta,
    enumerate_planes,
    enumerate_strong_extensions,
    exact_census,
    find_embedding,
    in_K0,
    is_strong,
    make_plane,
    validate,
)
from planeforge.census import CENSUS_CAP, EXTENSION_CAP

from .conftest import random_plane

EXACT_COUNTS = {0: 1, 1: 1, 2: 1, 3: 2, 4: 3, 5: 5, 6: 10}


def test_exact_class_counts_up_to_six():
    for n, want in EXACT_COUNTS.items():
        assert len(exact_census(n)) == want, f"n={n}"
    assert len(enumerate_planes(6)) == sum(EXACT_COUNTS.values()) == 23


def test_census_members_are_valid_and_nonnegative():
    for plane in enumerate_planes(6):
        validate(plane)
        assert in_K0(plane)
        assert plane.points <= frozenset("abcdefg")


def test_census_has_no_duplicate_classes():
    reps = enumerate_planes(5)
    for a, b in combinations(reps, 2):
        assert not are_isomorphic(a, b)


def test_census_order_is_stable():
    first = enumerate_planes(5)
    second = enumerate_planes(5)
    assert first == second
    sizes = [p.n_points for p in first]
    assert sizes == sorted(sizes)


def test_known_shapes_show_up():
    six = exact_census(6)
    fig2 = make_plane("abcdef", ["adf", "cde", "bef"])
    quad = make_plane("abcdef", ["abc", "ade", "bdf", "cef"])  # complete quadrilateral
    assert sum(are_isomorphic(p, fig2) for p in six) == 1
    assert sum(are_isomorphic(p, quad) for p in six) == 1


def test_exactly_seven_includes_fano(fano):
    seven = exact_census(7)
    assert len(seven) == 24
    assert sum(are_isomorphic(p, fano) for p in seven) == 1
    # fano is the unique delta-0 class; everything else stays positive
    assert sorted(delta(p) for p in seven)[0] == 0
    assert sum(delta(p) == 0 for p in seven) == 1


def test_census_guards():
    with pytest.raises(PreconditionError):
        enumerate_planes(-1)
    with pytest.raises(BudgetExceeded):
        enumerate_planes(CENSUS_CAP + 1)


def test_canonical_key_is_label_invariant(fano):
    rho = dict(zip("1234567", ["west", "north", "u", "v7", "e_e", "Q", "zz"]))
    renamed = make_plane(
        rho.values(),
        [[rho[c] for c in l] for l in ["123", "145", "167", "246", "257", "347", "356"]],
    )
    assert canonical_key(fano) == canonical_key(renamed)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_canonical_key_respects_isomorphism(seed):
    rng = random.Random(seed)
    plane = random_plane(rng, max_points=8)
    names = sorted(plane.points)
    perm = names[:]
    rng.shuffle(perm)
    rho = dict(zip(names, perm))
    relabeled = make_plane(
        [rho[p] for p in names], [[rho[p] for p in l] for l in plane.lines]
    )
    assert canonical_key(plane) == canonical_key(relabeled)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_canonical_key_separates_classes(seed):
    rng = random.Random(seed)
    a = random_plane(rng, max_points=7)
    b = random_plane(rng, max_points=7)
    assert (canonical_key(a) == canonical_key(b)) == are_isomorphic(a, b)


# --- strong extension classes -------------------------------------------------


def test_extension_counts_at_radius_two():
    empty = make_plane(())
    point = make_plane("p")
    pair = make_plane("pq")
    assert len(enumerate_strong_extensions(empty, 2)) == 2
    assert len(enumerate_strong_extensions(point, 2)) == 3
    assert len(enumerate_strong_extensions(pair, 2)) == 7


def test_extension_shapes_over_a_pair():
    pair = make_plane("pq")
    exts = enumerate_strong_extensions(pair, 2)
    line_sets = sorted(
        tuple(sorted("".join(sorted(l)) for l in e.lines)) for e in exts
    )
    assert line_sets == sorted(
        [
            (),                # one generic point
            ("n1pq",),         # point on the line through the base pair
            (),                # two generic points
            ("n1pq",),         # line point plus a generic one
            ("n1n2pq",),       # both new points on the base line
            ("n1n2p",),        # new line through p only
            ("n1n2q",),        # new line through q only
        ]
    )


def test_extensions_are_proper_strong_and_clean():
    base = make_plane("abc", ["abc"])
    exts = enumerate_strong_extensions(base, 2)
    for ext in exts:
        validate(ext)
        assert base.points < ext.points
        assert in_K0(ext)
        assert is_strong(ext, base.points)
        new = ext.points - base.points
        assert new <= {"n1", "n2"}


def test_extensions_distinct_over_base():
    pair = make_plane("pq")
    exts = enumerate_strong_extensions(pair, 2)
    fixed_pairs = 0
    for a, b in combinations(exts, 2):
        if a.n_points != b.n_points:
            continue
        ident = {p: p for p in pair.points}
        # an embedding fixing the base pointwise would merge the classes
        m = find_embedding(a, b, fixed=ident)
        if m is not None and frozenset(m.values()) == b.points:
            fixed_pairs += 1
    assert fixed_pairs == 0


def test_extension_base_points_fixed_not_permuted():
    # a line through p and a line through q are distinct classes over {p, q}
    pair = make_plane("pq")
    exts = enumerate_strong_extensions(pair, 2)
    shapes = ["".join(sorted(next(iter(e.lines)))) for e in exts if len(e.lines) == 1 and "n2" in e.points]
    assert "n1n2p" in shapes and "n1n2q" in shapes


def test_extension_guards():
    base = make_plane("ab")
    with pytest.raises(BudgetExceeded):
        enumerate_strong_extensions(base, EXTENSION_CAP + 1)
    with pytest.raises(PreconditionError):
        enumerate_strong_extensions(base, -1)
    from .test_predim import AG23

    with pytest.raises(PreconditionError):
        enumerate_strong_extensions(AG23, 1)


def test_extension_determinism():
    tri = make_plane("abc", ["abc"])
    assert enumerate_strong_extensions(tri, 1) == enumerate_strong_extensions(tri, 1)
    assert len(enumerate_strong_extensions(tri, 1)) == 2
