import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcfloer import gc_core
from gcfloer.gc_core import (
    GCPoint,
    build_polytope,
    classify_fiber,
    contains,
    detect_diamonds,
    face_dimension,
    fl3_profile,
    fl3_s3_point,
    fl3_shape,
    gc_map,
    gr24_profile,
    gr25_L1_frame,
    gr25_L1_point,
    gr25_profile,
    gr2n_profile,
    gr2n_un_point,
    grassmannian_shape,
    index_set,
    polytope_from_json,
    polytope_to_json,
)


def spaces():
    return [
        ("Fl3", fl3_shape(), fl3_profile(1, 1)),
        ("Gr24", grassmannian_shape(2, 4), gr24_profile(1)),
        ("Gr25", grassmannian_shape(2, 5), gr25_profile(1)),
    ]


def test_index_sets():
    assert index_set(fl3_shape(), fl3_profile(1, 1)).pairs == ((1, 2), (2, 2), (1, 1))
    assert index_set(grassmannian_shape(2, 4), gr24_profile(1)).pairs == (
        (2, 3),
        (1, 2),
        (2, 2),
        (1, 1),
    )
    assert index_set(grassmannian_shape(2, 5), gr25_profile(1)).pairs == (
        (2, 4),
        (1, 3),
        (2, 3),
        (1, 2),
        (2, 2),
        (1, 1),
    )


def test_profile_validation():
    with pytest.raises(ValueError):
        gc_core.EigenProfile((Fraction(0), Fraction(1))).validate(
            grassmannian_shape(1, 2)
        )


# ---------------------------------------------------------------------------
# exact facet oracle: vertex enumeration over the rationals


def _exact_rows(polytope):
    """(coeffs, const) with coeffs . u + const >= 0, everything a Fraction."""
    rows = []
    for iq in polytope.inequalities:
        coeffs = [Fraction(0)] * len(polytope.index)
        const = Fraction(0)
        for side, sgn in ((iq.upper, 1), (iq.lower, -1)):
            if isinstance(side, Fraction):
                const += sgn * side
            else:
                coeffs[polytope.index.position(side)] += sgn
        rows.append((coeffs, const))
    return rows


def _solve_exact(rows_subset):
    """Solve coeffs . u = -const by Gaussian elimination over Fraction;
    None when singular."""
    n = len(rows_subset[0][0])
    aug = [list(c) + [-k] for c, k in rows_subset]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _facet_oracle(polytope):
    """Facet flags by vertex enumeration: an inequality is a facet iff its
    tight vertex set has affine rank N - 1."""
    rows = _exact_rows(polytope)
    n = len(polytope.index)
    vertices = set()
    for subset in itertools.combinations(range(len(rows)), n):
        u = _solve_exact([rows[i] for i in subset])
        if u is None:
            continue
        if all(sum(c * v for c, v in zip(coeffs, u)) + const >= 0 for coeffs, const in rows):
            vertices.add(tuple(u))
    flags = []
    for coeffs, const in rows:
        tight = [
            v for v in vertices if sum(c * x for c, x in zip(coeffs, v)) + const == 0
        ]
        if not tight:
            flags.append(False)
            continue
        base = tight[0]
        diffs = np.array(
            [[float(x - b) for x, b in zip(v, base)] for v in tight[1:]]
        )
        rank = np.linalg.matrix_rank(diffs) if len(diffs) else 0
        flags.append(rank == n - 1)
    return flags


@pytest.mark.parametrize("space,shape,profile", spaces())
def test_facets_match_exact_oracle(space, shape, profile):
    polytope = build_polytope(shape, profile)
    got = [iq.facet for iq in polytope.inequalities]
    assert got == _facet_oracle(polytope)


def test_inequality_and_facet_counts():
    counts = {}
    for space, shape, profile in spaces():
        polytope = build_polytope(shape, profile)
        counts[space] = (
            len(polytope.inequalities),
            sum(1 for iq in polytope.inequalities if iq.facet),
        )
    assert counts == {"Fl3": (6, 6), "Gr24": (8, 6), "Gr25": (12, 9)}


# ---------------------------------------------------------------------------
# membership, faces, diamonds


def test_contains_and_face_dimension():
    shape, profile = fl3_shape(), fl3_profile(1, 1)
    polytope = build_polytope(shape, profile)
    interior = GCPoint((0.5, -0.5, 0.1), polytope.index)
    inside, active = contains(polytope, interior)
    assert inside and not active
    assert face_dimension(polytope, interior) == 3
    vertex = GCPoint((1.0, 0.0, 1.0), polytope.index)
    inside, active = contains(polytope, vertex)
    assert inside and len(active) >= 3
    assert face_dimension(polytope, vertex) == 0
    outside = GCPoint((2.0, 0.0, 0.0), polytope.index)
    assert not contains(polytope, outside)[0]


def test_detect_diamonds():
    shape, profile = fl3_shape(), fl3_profile(1, 1)
    u = GCPoint((0.0, 0.0, 0.0), index_set(shape, profile))
    assert detect_diamonds(shape, profile, u) == [(2, 1)]
    u = GCPoint((0.5, -0.5, 0.0), index_set(shape, profile))
    assert detect_diamonds(shape, profile, u) == []

    shape, profile = grassmannian_shape(2, 5), gr25_profile(1)
    idx = index_set(shape, profile)
    assert detect_diamonds(shape, profile, GCPoint((0.5, 0.7, 0.3, 0.3, 0.3, 0.3), idx)) == [(2, 1)]
    assert detect_diamonds(shape, profile, GCPoint((0.5, 0.5, 0.5, 0.5, 0.3, 0.2), idx)) == [(3, 1)]
    assert sorted(
        detect_diamonds(shape, profile, GCPoint((0.4,) * 6, idx))
    ) == [(2, 1), (3, 1)]


# ---------------------------------------------------------------------------
# the moment map and fiber constructors


def test_gc_map_on_fiber_constructors():
    shape, profile = fl3_shape(), fl3_profile(2, 1)
    u = gc_map(fl3_s3_point(2, 1, [0.6, 0.8]), shape, profile)
    assert np.abs(u.as_array()).max() < 1e-9

    shape, profile = grassmannian_shape(2, 4), gr2n_profile(2, 1)
    A = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    u = gc_map(gr2n_un_point(2, 1, -0.4, A), shape, profile)
    assert np.abs(u.as_array() + 0.4).max() < 1e-9

    shape, profile = grassmannian_shape(2, 5), gr25_profile(1)
    u = gc_map(gr25_L1_point(1, 0.8, 0.6, 0.2, 0.3, -1.2), shape, profile)
    assert np.abs(u.as_array() - [0.6, 0.8, 0.2, 0.2, 0.2, 0.2]).max() < 1e-9


def test_gr25_L1_frame_is_isometric():
    Z = gr25_L1_frame(1, 0.8, 0.6, 0.2)
    assert np.abs(Z.conj().T @ Z - np.eye(2)).max() < 1e-12


def test_gc_map_rejects_off_orbit():
    shape, profile = fl3_shape(), fl3_profile(1, 1)
    with pytest.raises(ValueError, match="orbit"):
        gc_map(np.diag([2.0, 0.0, -1.0]), shape, profile)
    with pytest.raises(ValueError, match="Hermitian"):
        gc_map(np.array([[0.0, 1.0, 0], [0, 0, 0], [0, 0, 0]]), shape, profile)


def test_constructor_input_validation():
    with pytest.raises(ValueError):
        fl3_s3_point(1, 1, [1.0, 1.0])
    with pytest.raises(ValueError):
        gr2n_un_point(2, 1, 1.5, np.eye(2))
    with pytest.raises(ValueError):
        gr2n_un_point(2, 1, 0.2, np.ones((2, 2)))
    with pytest.raises(ValueError):
        gr25_L1_frame(1, 0.5, 0.7, 0.2)


# ---------------------------------------------------------------------------
# fiber classification


def test_classify_fiber_table():
    profile = fl3_profile(1, 1)
    idx = index_set(fl3_shape(), profile)
    f = classify_fiber("Fl3", profile, GCPoint((0.5, -0.5, 0.1), idx))
    assert (f.kind, f.real_dimension, f.lagrangian) == ("torus", 3, True)
    f = classify_fiber("Fl3", profile, GCPoint((0.0, 0.0, 0.0), idx))
    assert (f.kind, f.real_dimension, f.lagrangian) == ("S3", 3, True)
    f = classify_fiber("Fl3", profile, GCPoint((1.0, 0.0, 1.0), idx))
    assert f.kind == "torus" and f.real_dimension == 0

    profile = gr24_profile(1)
    idx = index_set(grassmannian_shape(2, 4), profile)
    f = classify_fiber("Gr24", profile, GCPoint((1.0,) * 4, idx))
    assert (f.kind, f.real_dimension, f.lagrangian) == ("U2", 4, True)
    assert "displaceable" not in f.annotations  # the monotone level
    f = classify_fiber("Gr24", profile, GCPoint((0.3,) * 4, idx))
    assert f.kind == "U2" and "displaceable" in f.annotations

    profile = gr25_profile(1)
    idx = index_set(grassmannian_shape(2, 5), profile)
    f = classify_fiber("Gr25", profile, GCPoint((0.5, 0.7, 0.3, 0.3, 0.3, 0.3), idx))
    assert (f.kind, f.real_dimension, f.lagrangian) == ("U2xT2", 6, True)
    assert "displaceable" in f.annotations
    f = classify_fiber("Gr25", profile, GCPoint((0.5, 0.5, 0.5, 0.5, 0.2, 0.3), idx))
    assert (f.kind, f.real_dimension, f.lagrangian) == ("U2xT2", 6, True)
    f = classify_fiber("Gr25", profile, GCPoint((0.4,) * 6, idx))
    assert (f.kind, f.real_dimension, f.lagrangian) == ("U2", 4, False)

    with pytest.raises(ValueError, match="polytope"):
        classify_fiber("Fl3", fl3_profile(1, 1), GCPoint((5.0, 0.0, 0.0), idx3()))
    with pytest.raises(ValueError, match="unknown space"):
        classify_fiber("Gr36", gr24_profile(1), (0.3,) * 4)


def idx3():
    return index_set(fl3_shape(), fl3_profile(1, 1))


def test_classify_fiber_unknown_stratum():
    # a boundary degeneracy outside the hard-coded table
    profile = gr25_profile(1)
    idx = index_set(grassmannian_shape(2, 5), profile)
    u = GCPoint((0.0, 0.3, 0.0, 0.0, 0.0, 0.0), idx)
    f = classify_fiber("Gr25", profile, u)
    assert f.kind == "unknown-nonsmooth"
    assert f.real_dimension == -1


# ---------------------------------------------------------------------------
# serialization


@pytest.mark.parametrize("space,shape,profile", spaces())
def test_polytope_json_roundtrip(space, shape, profile):
    polytope = build_polytope(shape, profile)
    doc = polytope_to_json(polytope)
    back = polytope_from_json(doc)
    assert back == polytope


# ---------------------------------------------------------------------------
# random membership


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_random_orbit_points_map_into_polytope(seed):
    rng = np.random.default_rng(seed)
    shape, profile = grassmannian_shape(2, 4), gr24_profile(1)
    polytope = build_polytope(shape, profile)
    vals = np.array([float(v) for v in profile.values])
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, _ = np.linalg.qr(g)
    x = q @ np.diag(vals) @ q.conj().T
    u = gc_map(x, shape, profile)
    assert contains(polytope, u)[0]
