"""The Landau-Ginzburg potential of Gelfand-Cetlin torus fibers.

The potential is a Laurent polynomial in the fiber variables
y_i^{(k)} = e^{x_i^{(k)}} T^{u_i^{(k)}}, one term per facet of the
Gelfand-Cetlin polytope (upper >= lower becomes y_upper / y_lower, with
constant entries lambda_{n_j} entering as Q_j = T^{lambda_{n_j}}).
Critical points are found by multistart Newton iteration in logarithmic
coordinates, where the Jacobian of the gradient system is the logarithmic
Hessian of the potential.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gc_core import build_polytope, contains
from .novikov import as_fraction


@dataclass(frozen=True)
class LaurentTerm:
    coeff: complex
    t_exp: Fraction
    y_exp: tuple  # integer exponent vector over the index set

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "t_exp", as_fraction(self.t_exp))
        object.__setattr__(self, "y_exp", tuple(int(e) for e in self.y_exp))


@dataclass(frozen=True)
class LaurentPoly:
    terms: tuple
    index: object  # GCIndexSet labelling the variables

    @property
    def nvars(self):
        return len(self.index)

    def term_multiset(self):
        return sorted((t.t_exp, t.y_exp) for t in self.terms)

    def exponent_matrix(self):
        return np.array([t.y_exp for t in self.terms], dtype=float)

    def coeff_vector(self, T0):
        return np.array([t.coeff * T0 ** float(t.t_exp) for t in self.terms])


def _merge_terms(raw_terms):
    merged = {}
    for coeff, t_exp, y_exp in raw_terms:
        key = (t_exp, y_exp)
        merged[key] = merged.get(key, 0.0) + coeff
    return tuple(
        LaurentTerm(c, t_exp, y_exp)
        for (t_exp, y_exp), c in sorted(merged.items())
        if c != 0
    )


def build_potential(shape, profile, facet_rule=True, polytope=None):
    """One Laurent term per facet (or per raw inequality if facet_rule is
    False, for comparison with the literal summation)."""
    if polytope is None:
        polytope = build_polytope(shape, profile)
    idx = polytope.index
    raw = []
    for ineq in polytope.inequalities:
        if facet_rule and not ineq.facet:
            continue
        t_exp = Fraction(0)
        y_exp = [0] * len(idx)
        for side, sgn in ((ineq.upper, 1), (ineq.lower, -1)):
            if isinstance(side, Fraction):
                t_exp += sgn * side
            else:
                y_exp[idx.position(side)] += sgn
        raw.append((1.0 + 0.0j, t_exp, tuple(y_exp)))
    return LaurentPoly(_merge_terms(raw), idx)


def evaluate(po, y, T0):
    y = np.asarray(y, dtype=complex)
    if np.any(y == 0):
        raise ValueError("potential is undefined where a coordinate vanishes")
    total = 0.0 + 0.0j
    for t in po.terms:
        total += t.coeff * T0 ** float(t.t_exp) * np.prod(y ** np.array(t.y_exp))
    return total


def log_gradient(po):
    """Vector of y_j d/dy_j PO = d/dx_j PO, one LaurentPoly per variable."""
    out = []
    for j in range(po.nvars):
        terms = tuple(
            LaurentTerm(t.coeff * t.y_exp[j], t.t_exp, t.y_exp)
            for t in po.terms
            if t.y_exp[j] != 0
        )
        out.append(LaurentPoly(terms, po.index))
    return out


def _grad_hess_at_w(po, w, T0):
    """Gradient and logarithmic Hessian at w (y = exp(w)); w may be a batch
    of shape (..., nvars)."""
    E = po.exponent_matrix()  # (terms, nvars)
    c = po.coeff_vector(T0)  # (terms,)
    vals = c * np.exp(w @ E.T)  # (..., terms)
    grad = vals @ E  # (..., nvars)
    hess = np.einsum("...t,tj,tl->...jl", vals, E, E)
    return grad, hess


def gradient_at(po, y, T0):
    y = np.asarray(y, dtype=complex)
    return _grad_hess_at_w(po, np.log(y), T0)[0]


def hessian_at(po, y, T0):
    y = np.asarray(y, dtype=complex)
    return _grad_hess_at_w(po, np.log(y), T0)[1]


@dataclass(frozen=True)
class SolverConfig:
    T0: float = 0.5
    starts: int = 2000
    seed: int = 0
    newton_tol: float = 1e-10
    dedupe_tol: float = 1e-6
    max_iters: int = 100

    def __post_init__(self):
        if not 0 < self.T0 < 1:
            raise ValueError("T0 must lie in (0, 1)")
        if self.newton_tol <= 0:
            raise ValueError("newton_tol must be positive")


@dataclass(frozen=True)
class CriticalCandidate:
    """Either a numeric point y, or the exponent form y_j = c_j T^{e_j}."""

    y: tuple = None
    coeffs: tuple = None
    exps: tuple = None
    residual: float = None
    hessian_det: float = None

    def numeric_at(self, T0):
        if self.y is not None:
            return np.array(self.y, dtype=complex)
        return np.array(
            [c * T0 ** float(e) for c, e in zip(self.coeffs, self.exps)],
            dtype=complex,
        )


def _canonical_w(w):
    """Reduce imaginary parts modulo 2*pi into (-pi, pi]."""
    re = w.real
    im = np.mod(w.imag + np.pi, 2.0 * np.pi) - np.pi
    im = np.where(np.isclose(im, -np.pi, atol=1e-12), np.pi, im)
    return re + 1j * im


def _wrap_angle(d):
    return np.mod(d + np.pi, 2.0 * np.pi) - np.pi


def find_critical_points(po, config=SolverConfig()):
    """Deduplicated Newton limit points of the log-gradient system.

    Starts are sampled in log-coordinates (uniform argument, log-modulus in
    [3 log T0, -3 log T0]) with per-start seeds; the returned list is sorted
    by a canonical key and is deterministic given (seed, starts).
    """
    n = po.nvars
    T0 = config.T0
    lo = 3.0 * math.log(T0)
    converged = []
    for start in range(config.starts):
        rng = np.random.default_rng([config.seed, start])
        re = rng.uniform(lo, -lo, size=n)
        im = rng.uniform(-np.pi, np.pi, size=n)
        w = re + 1j * im
        ok = False
        for _ in range(config.max_iters):
            grad, hess = _grad_hess_at_w(po, w, T0)
            if np.max(np.abs(grad)) < config.newton_tol:
                ok = True
                break
            try:
                step = np.linalg.solve(hess, -grad)
            except np.linalg.LinAlgError:
                break
            norm = np.linalg.norm(step)
            if not np.isfinite(norm):
                break
            if norm > 20.0:
                step *= 20.0 / norm
            w = w + step
        if not ok:
            continue
        # reject degenerate limit points (row-normalized determinant)
        _, hess = _grad_hess_at_w(po, w, T0)
        row_norms = np.max(np.abs(hess), axis=1)
        if np.any(row_norms == 0):
            continue
        det = np.linalg.det(hess / row_norms[:, None])
        if abs(det) <= 1e-10:
            continue
        converged.append(_canonical_w(w))

    # order-independent dedupe: sort by canonical key, then cluster
    def key(w):
        return tuple(
            (round(v.real, 8), round(v.imag, 8)) for v in w
        )

    converged.sort(key=key)
    reps = []
    for w in converged:
        dup = False
        for rep in reps:
            diff = np.abs((w.real - rep.real) + 1j * _wrap_angle(w.imag - rep.imag))
            if np.max(diff) < config.dedupe_tol * (1.0 + np.max(np.abs(rep))):
                dup = True
                break
        if not dup:
            reps.append(w)

    out = []
    for w in reps:
        y = np.exp(w)
        grad, hess = _grad_hess_at_w(po, w, T0)
        row_norms = np.max(np.abs(hess), axis=1)
        det = np.linalg.det(hess / row_norms[:, None])
        out.append(
            CriticalCandidate(
                y=tuple(y),
                residual=float(np.max(np.abs(grad))),
                hessian_det=float(abs(det)),
            )
        )
    return out


def verify_candidate(po, cand, T0_list=(0.45, 0.55), polytope=None):
    """Check an exponent-form candidate: gradient residuals at each T0,
    valuations, and a two-point fit of the critical value to c T^e."""
    if cand.exps is None:
        raise ValueError("verify_candidate needs an exponent-form candidate")
    residuals = []
    values = []
    for T0 in T0_list:
        y = cand.numeric_at(T0)
        residuals.append(float(np.max(np.abs(gradient_at(po, y, T0)))))
        values.append(evaluate(po, y, T0))
    report = {
        "max_residual": max(residuals),
        "residuals": residuals,
        "valuations": tuple(cand.exps),
        "values": values,
    }
    if len(T0_list) >= 2 and values[0] != 0 and values[1] != 0:
        e_fit = (math.log(abs(values[0])) - math.log(abs(values[1]))) / (
            math.log(T0_list[0]) - math.log(T0_list[1])
        )
        report["value_exponent"] = e_fit
        report["value_exponent_rational"] = Fraction(e_fit).limit_denominator(100)
        report["value_coefficient"] = values[0] / T0_list[0] ** e_fit
    if polytope is not None:
        u = [float(e) for e in cand.exps]
        inside, active = contains(polytope, u, tol=1e-9)
        report["in_interior"] = bool(inside and not active)
    return report


def hessian_nondegenerate(po, cand, T0):
    """(is_nondegenerate, |det H|) for the logarithmic Hessian at cand."""
    y = cand.numeric_at(T0)
    grad = gradient_at(po, y, T0)
    if np.max(np.abs(grad)) > 1e-8:
        raise ValueError("candidate is not critical (residual > 1e-8)")
    H = hessian_at(po, y, T0)
    n = H.shape[0]
    det = abs(np.linalg.det(H))
    norm = np.linalg.norm(H, 2)
    return det > 1e-10 * norm**n, det


# ---------------------------------------------------------------------------
# closed-form critical points of the three reference spaces


def fl3_critical_points(l1, l2, T0):
    """The six critical points of the Fl(3) potential, numerically at T0.

    y3 runs over the cube roots of Q1 Q2 Q3, y2 = +-sqrt(Q3 (y3 + Q2)),
    y1 = y3^2 / y2, with Q1 = T^{l1}, Q2 = 1, Q3 = T^{-l2}.
    """
    l1f, l2f = float(l1), float(l2)
    Q1, Q2, Q3 = T0**l1f, 1.0, T0**-l2f
    zeta3 = np.exp(2j * np.pi / 3.0)
    root = (Q1 * Q2 * Q3) ** (1.0 / 3.0)
    points = []
    for k in range(3):
        y3 = zeta3**k * root
        base = np.sqrt(Q3 * (y3 + Q2) + 0j)
        for sign in (1.0, -1.0):
            y2 = sign * base
            y1 = y3**2 / y2
            points.append(np.array([y1, y2, y3]))
    return points


def fl3_critical_candidates(lam):
    """Exponent-form critical points for Fl(3) with l1 = l2 = lam (the only
    case in which all six are Novikov monomials)."""
    lam = as_fraction(lam)
    zeta3 = np.exp(2j * np.pi / 3.0)
    cands = []
    for k in range(3):
        c3 = zeta3**k
        base = np.sqrt(c3 + 1.0 + 0j)
        for sign in (1.0, -1.0):
            c2 = sign * base
            c1 = c3**2 / c2
            cands.append(
                CriticalCandidate(
                    coeffs=(c1, c2, c3),
                    exps=(lam / 2, -lam / 2, Fraction(0)),
                )
            )
    return cands


def gr24_critical_candidates(lam):
    """The four critical points of the Gr(2,4) potential (Q = T^{2 lam}):
    (y1, ..., y4) = ((-1)^i Q^{1/2}, i^{-i} (Q^3/4)^{1/4}, i^i (4Q)^{1/4},
    (-1)^i Q^{1/2}); note y2 = Q / y3 forces the reciprocal phase on y2."""
    lam = as_fraction(lam)
    cands = []
    for i in range(4):
        m1 = (-1.0 + 0j) ** i
        sq = 1j**i
        cands.append(
            CriticalCandidate(
                coeffs=(m1, 4.0**-0.25 / sq, sq * 4.0**0.25, m1),
                exps=(lam, 3 * lam / 2, lam / 2, lam),
            )
        )
    return cands


def gr24_critical_values(lam, T0):
    """4 sqrt(2) i^i Q^{1/4} with Q = T^{2 lam}."""
    lamf = float(lam)
    Q = T0 ** (2.0 * lamf)
    return [4.0 * np.sqrt(2.0) * 1j**i * Q**0.25 for i in range(4)]


def gr25_critical_candidates(lam):
    """The ten critical points of the Gr(2,5) potential (Q = T^{lam}).

    All ten are monomial: y6 = zeta5^m Q^{2/5} (so y6^5 = Q^2), and
    y4 = r Q / y6 with r a root of r^2 + r - 1 = 0, then
    y3 = Q/y4, y5 = y6^2/y4, y2 = Q/y5, y1 = Q/y6.
    """
    lam = as_fraction(lam)
    zeta5 = np.exp(2j * np.pi / 5.0)
    roots = ((-1.0 + np.sqrt(5.0)) / 2.0, (-1.0 - np.sqrt(5.0)) / 2.0)
    cands = []
    for m in range(5):
        z = zeta5**m
        for r in roots:
            c6 = z
            c4 = r / z
            c3 = 1.0 / c4
            c5 = z**2 / c4
            c2 = 1.0 / c5
            c1 = 1.0 / z
            cands.append(
                CriticalCandidate(
                    coeffs=(c1, c2, c3, c4, c5, c6),
                    exps=(
                        3 * lam / 5,
                        4 * lam / 5,
                        2 * lam / 5,
                        3 * lam / 5,
                        lam / 5,
                        2 * lam / 5,
                    ),
                )
            )
    return cands


def gr25_critical_values(lam, T0):
    """-5 (zeta5^i + zeta5^j) Q^{1/5} for 0 <= i < j <= 4, Q = T^{lam}."""
    lamf = float(lam)
    Q = T0**lamf
    zeta5 = np.exp(2j * np.pi / 5.0)
    return [
        -5.0 * (zeta5**i + zeta5**j) * Q**0.2
        for i in range(5)
        for j in range(i + 1, 5)
    ]
