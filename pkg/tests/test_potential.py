from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcfloer import potential
from gcfloer.gc_core import (
    build_polytope,
    fl3_profile,
    fl3_shape,
    gr24_profile,
    gr25_profile,
    grassmannian_shape,
)
from gcfloer.potential import (
    SolverConfig,
    build_potential,
    evaluate,
    find_critical_points,
    fl3_critical_candidates,
    fl3_critical_points,
    gr24_critical_candidates,
    gr24_critical_values,
    gr25_critical_candidates,
    gr25_critical_values,
    gradient_at,
    hessian_at,
    hessian_nondegenerate,
    log_gradient,
    verify_candidate,
)


def fl3_potential():
    return build_potential(fl3_shape(), fl3_profile(1, 1))


def gr24_potential():
    return build_potential(grassmannian_shape(2, 4), gr24_profile(1))


def gr25_potential():
    return build_potential(grassmannian_shape(2, 5), gr25_profile(1))


def test_term_counts_and_facet_rule():
    assert len(fl3_potential().terms) == 6
    assert len(gr24_potential().terms) == 6
    assert len(gr25_potential().terms) == 9
    # without the facet rule every raw inequality contributes
    po = build_potential(grassmannian_shape(2, 5), gr25_profile(1), facet_rule=False)
    assert len(po.terms) == 12


def test_fl3_terms_explicitly():
    # T^{l1}/y1 + y1 + 1/y2 + T^{l2} y2 + y1/y3 + y3/y2 at l1 = l2 = 1
    assert fl3_potential().term_multiset() == sorted(
        [
            (Fraction(1), (-1, 0, 0)),
            (Fraction(0), (1, 0, 0)),
            (Fraction(0), (0, -1, 0)),
            (Fraction(1), (0, 1, 0)),
            (Fraction(0), (1, 0, -1)),
            (Fraction(0), (0, -1, 1)),
        ]
    )


def test_evaluate_and_gradient_by_finite_differences():
    po = gr24_potential()
    rng = np.random.default_rng(5)
    y = np.exp(rng.normal(size=4) + 1j * rng.normal(size=4))
    T0 = 0.5
    grad = gradient_at(po, y, T0)
    hess = hessian_at(po, y, T0)
    h = 1e-6
    for j in range(4):
        yp, ym = y.copy(), y.copy()
        yp[j] *= np.exp(h)
        ym[j] *= np.exp(-h)
        fd = (evaluate(po, yp, T0) - evaluate(po, ym, T0)) / (2 * h)
        assert abs(fd - grad[j]) < 1e-6 * max(1.0, abs(grad[j]))
        fd_row = (gradient_at(po, yp, T0) - gradient_at(po, ym, T0)) / (2 * h)
        assert np.abs(fd_row - hess[j]).max() < 1e-5 * max(1.0, np.abs(hess).max())


def test_log_gradient_matches_gradient_at():
    po = fl3_potential()
    grads = log_gradient(po)
    y = np.array([0.7, -1.2 + 0.5j, 0.9j])
    T0 = 0.45
    direct = gradient_at(po, y, T0)
    for j, g in enumerate(grads):
        assert abs(evaluate(g, y, T0) - direct[j]) < 1e-12


def test_evaluate_rejects_zero_coordinate():
    with pytest.raises(ValueError):
        evaluate(fl3_potential(), [1.0, 0.0, 1.0], 0.5)


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(T0=1.5)
    with pytest.raises(ValueError):
        SolverConfig(newton_tol=0.0)


def test_find_critical_points_deterministic():
    po = fl3_potential()
    cfg = SolverConfig(T0=0.5, starts=120, seed=0)
    a = find_critical_points(po, cfg)
    b = find_critical_points(po, cfg)
    assert len(a) == 6
    assert all(np.allclose(x.y, y.y) for x, y in zip(a, b))
    assert all(c.residual < 1e-9 for c in a)


def test_solver_recovers_closed_forms():
    for po, cands in (
        (fl3_potential(), fl3_critical_candidates(1)),
        (gr24_potential(), gr24_critical_candidates(1)),
    ):
        T0 = 0.5
        found = find_critical_points(po, SolverConfig(T0=T0, starts=200, seed=1))
        assert len(found) == len(cands)
        want = sorted(
            tuple(np.round(c.numeric_at(T0), 6)) for c in cands
        )
        got = sorted(tuple(np.round(np.array(c.y), 6)) for c in found)
        for w, g in zip(want, got):
            assert np.abs(np.array(w) - np.array(g)).max() < 1e-5


def test_fl3_critical_points_are_critical_for_generic_profile():
    po = build_potential(fl3_shape(), fl3_profile(2, 1))
    T0 = 0.55
    for y in fl3_critical_points(2, 1, T0):
        assert np.abs(gradient_at(po, y, T0)).max() < 1e-12


def test_verify_candidate_report():
    po = gr24_potential()
    cand = gr24_critical_candidates(1)[0]
    rep = verify_candidate(po, cand, T0_list=(0.45, 0.55), polytope=build_polytope(
        grassmannian_shape(2, 4), gr24_profile(1)
    ))
    assert rep["max_residual"] < 1e-12
    assert rep["valuations"] == (Fraction(1), Fraction(3, 2), Fraction(1, 2), Fraction(1))
    assert rep["value_exponent_rational"] == Fraction(1, 2)
    assert rep["in_interior"]
    with pytest.raises(ValueError):
        verify_candidate(po, potential.CriticalCandidate(y=(1.0, 1.0, 1.0, 1.0)))


def test_hessian_nondegenerate_requires_critical_point():
    po = fl3_potential()
    with pytest.raises(ValueError):
        hessian_nondegenerate(po, potential.CriticalCandidate(y=(1.0, 1.0, 1.0)), 0.5)
    ok, det = hessian_nondegenerate(po, fl3_critical_candidates(1)[0], 0.5)
    assert ok and det > 0


def test_gr25_values_match_candidates():
    po = gr25_potential()
    T0 = 0.6
    got = sorted(
        np.round(evaluate(po, c.numeric_at(T0), T0), 9)
        for c in gr25_critical_candidates(1)
    )
    want = sorted(np.round(v, 9) for v in gr25_critical_values(1, T0))
    assert np.abs(np.array(got) - np.array(want)).max() < 1e-8


def test_gr24_values_scale_as_q_quarter():
    for lam in (1, Fraction(3, 2)):
        for T0 in (0.4, 0.7):
            Q = T0 ** float(2 * lam)
            vals = gr24_critical_values(lam, T0)
            assert np.allclose(
                sorted(np.abs(vals)), [4 * np.sqrt(2) * Q**0.25] * 4
            )


@settings(max_examples=25, deadline=None)
@given(t0=st.floats(0.3, 0.8), k=st.integers(0, 5))
def test_closed_form_residuals_random_t0(t0, k):
    po = gr25_potential()
    cand = gr25_critical_candidates(1)[k]
    y = cand.numeric_at(t0)
    assert np.abs(gradient_at(po, y, t0)).max() < 1e-10
