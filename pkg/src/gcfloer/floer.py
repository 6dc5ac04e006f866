"""Holomorphic disks, disk-count integrals, and Floer differentials of the
non-torus Gelfand-Cetlin fibers.

The Maslov-4 disks of the S^3 fiber in Fl(3) and the U(n) fibers in
Gr(n,2n) admit explicit rational parametrizations; their areas are checked
by pulling back the (weighted) Fubini-Study forms to the unit disk through
the Cayley transform.  The Floer differentials are assembled from their
closed forms and cross-validated against the disk-count integrals, then
decomposed as Novikov modules.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .novikov import NovikovMatrix, NovikovSeries, as_fraction, module_presentation
from .numerics import integrate_periodic

# ---------------------------------------------------------------------------
# disk classes and parametrizations


@dataclass(frozen=True)
class DiskClass:
    label: str  # "beta1" or "beta2"
    area: float
    maslov: int = 4


@dataclass(frozen=True)
class DiskMapFl3:
    """Bidegree (1,1) curve through the S^3 fiber of Fl(3).

    w(z) = ([c z + a1 : a2 : sqrt(l1/l2)(c z + 1)],
            [cbar z + a1bar : a2bar : -sqrt(l2/l1)(cbar z + 1)])
    with |c| = 1 and c^2 = -(a1 - 1)/(a1bar - 1); the restriction to the
    upper half plane represents beta1 (sign +1) or beta2 (sign -1).
    """

    a: tuple
    c: complex
    sign: int
    l1: float
    l2: float

    @property
    def disk_class(self):
        if self.sign > 0:
            return DiskClass("beta1", self.l1)
        return DiskClass("beta2", self.l2)

    def evaluate(self, z):
        a1, a2 = self.a
        r = np.sqrt(self.l1 / self.l2)
        p = np.array([self.c * z + a1, a2, r * (self.c * z + 1.0)])
        q = np.array(
            [
                np.conj(self.c) * z + np.conj(a1),
                np.conj(a2),
                -(1.0 / r) * (np.conj(self.c) * z + 1.0),
            ]
        )
        return p, q

    def plucker_residual(self, z):
        """Incidence relation Z1 Z23 + Z2 Z31 + Z3 Z12 along the curve."""
        p, q = self.evaluate(z)
        return abs(np.dot(p, q))

    def projective_polys(self):
        """Weighted homogeneous coordinate polynomials in z (coeff lists,
        ascending degree) for the two projective factors."""
        a1, a2 = self.a
        r = np.sqrt(self.l1 / self.l2)
        p = [[a1, self.c], [a2, 0.0], [r, r * self.c]]
        q = [
            [np.conj(a1), np.conj(self.c)],
            [np.conj(a2), 0.0],
            [-1.0 / r, -np.conj(self.c) / r],
        ]
        return [(self.l1, p), (self.l2, q)]


def fl3_disk(a, sign, l1=1.0, l2=1.0):
    """Disk through the S^3 fiber with boundary data a in S^3, a1 != 1."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (2,) or abs(np.linalg.norm(a) - 1.0) > 1e-10:
        raise ValueError("a must be a unit vector in C^2")
    if abs(a[0] - 1.0) < 1e-12:
        raise ValueError("a1 = 1 is excluded (the curve degenerates)")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c2 = -(a[0] - 1.0) / (np.conj(a[0]) - 1.0)
    root = np.sqrt(c2)
    if root.imag == 0:
        raise ValueError("degenerate boundary datum (real c)")
    c = root if (root.imag > 0) == (sign > 0) else -root
    return DiskMapFl3((complex(a[0]), complex(a[1])), complex(c), sign, float(l1), float(l2))


@dataclass(frozen=True)
class DiskMapGr:
    """Degree-one curve through the U(n) fiber L_t of Gr(n,2n):
    F(z) = sqrt((lam-t)/(lam+t)) (I - (c - cbar)/(z - cbar) a a*)."""

    n: int
    a: tuple
    c: complex
    lam: float
    t: float

    @property
    def scale(self):
        return math.sqrt((self.lam - self.t) / (self.lam + self.t))

    @property
    def disk_class(self):
        if self.c.imag < 0:
            return DiskClass("beta1", self.lam + self.t)
        return DiskClass("beta2", self.lam - self.t)

    def evaluate(self, z):
        a = np.array(self.a)[:, None]
        aa = a @ a.conj().T
        return self.scale * (
            np.eye(self.n) - (self.c - np.conj(self.c)) / (z - np.conj(self.c)) * aa
        )

    def A_matrix(self):
        a = np.array(self.a)[:, None]
        aa = a @ a.conj().T
        return np.eye(self.n) + (self.c**2 / abs(self.c) ** 2 - 1.0) * aa

    def unitarity_defect(self, x):
        u = self.evaluate(x) / self.scale
        return np.abs(u.conj().T @ u - np.eye(self.n)).max()

    def pq_polys(self):
        """The coprime factorization (P(z), Q(z)) with F = Q P^{-1}:
        P = (z - cbar) I, Q = scale (z I - cbar A); returned as coefficient
        arrays of shape (n, n, 2) ascending in z."""
        cb = np.conj(self.c)
        A = self.A_matrix()
        P = np.zeros((self.n, self.n, 2), dtype=complex)
        Q = np.zeros((self.n, self.n, 2), dtype=complex)
        for i in range(self.n):
            P[i, i] = [-cb, 1.0]
        Q[:, :, 0] = -self.scale * cb * A
        Q[:, :, 1] = self.scale * np.eye(self.n)
        return P, Q

    def plucker_polys(self):
        """For n = 2: the six Plucker coordinates of the stacked 4x2 curve
        [P; Q], each a quadratic polynomial in z (coeff lists)."""
        if self.n != 2:
            raise ValueError("Plucker coordinates implemented for n = 2 only")
        P, Q = self.pq_polys()
        rows = np.concatenate([P, Q], axis=0)  # (4, 2, 2)

        def minor(i, j):
            # degree-2 coefficients of rows[i,0]*rows[j,1] - rows[i,1]*rows[j,0]
            out = np.zeros(3, dtype=complex)
            for d1 in range(2):
                for d2 in range(2):
                    out[d1 + d2] += (
                        rows[i, 0, d1] * rows[j, 1, d2]
                        - rows[i, 1, d1] * rows[j, 0, d2]
                    )
            return list(out)

        order = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        return [minor(i, j) for i, j in order]

    def projective_polys(self):
        return [(2.0 * self.lam, self.plucker_polys())]

    def winding_number(self, samples=4000):
        """Winding of det(F(x)/scale) = (x - c)/(x - cbar) along R + {inf}."""
        phis = np.linspace(-np.pi, np.pi, samples, endpoint=False)
        xs = np.tan(phis / 2.0)
        vals = (xs - self.c) / (xs - np.conj(self.c))
        args = np.unwrap(np.angle(vals))
        total = args[-1] - args[0]
        return int(round(total / (2.0 * np.pi)))


def gr_disk(n, a, c, lam, t):
    a = np.asarray(a, dtype=complex)
    if a.shape != (n,) or abs(np.linalg.norm(a) - 1.0) > 1e-10:
        raise ValueError("a must be a unit vector in C^n")
    c = complex(c)
    if abs(abs(c) - 1.0) > 1e-10:
        raise ValueError("|c| must be 1")
    if abs(c.imag) < 1e-12:
        raise ValueError("c must be non-real")
    lam, t = float(lam), float(t)
    if not -lam < t < lam:
        raise ValueError("need -lam < t < lam")
    return DiskMapGr(n, tuple(complex(v) for v in a), c, lam, t)


# ---------------------------------------------------------------------------
# disk areas via the Cayley transform


def _cayley_poly(coeffs):
    """Given p(z) = sum c_k z^k, return the coefficients of
    (1 - zeta)^D p(i (1 + zeta)/(1 - zeta)), a polynomial in zeta."""
    D = len(coeffs) - 1
    out = np.zeros(D + 1, dtype=complex)
    up = np.array([1.0, 1.0]) * 1j  # i (1 + zeta)
    down = np.array([1.0, -1.0])  # 1 - zeta
    for k, ck in enumerate(coeffs):
        term = np.array([complex(ck)])
        for _ in range(k):
            term = np.convolve(term, up)
        for _ in range(D - k):
            term = np.convolve(term, down)
        out[: len(term)] += term
    return out


def _fs_area_disk(zeta_polys, order=64):
    """(1/pi) integral over the unit disk of the Fubini-Study density of the
    projective curve zeta -> [p_0(zeta) : ... : p_m(zeta)]."""
    xg, wg = np.polynomial.legendre.leggauss(order)
    r = 0.5 * (xg + 1.0)
    wr = 0.5 * wg
    th = np.pi * (xg + 1.0)
    wt = np.pi * wg
    R, TH = np.meshgrid(r, th)
    Z = R * np.exp(1j * TH)
    W = np.outer(wt, wr * r)
    F = np.stack([np.polyval(np.array(c)[::-1], Z) for c in zeta_polys])
    dF = np.stack(
        [np.polyval(np.polyder(np.array(c)[::-1]), Z) for c in zeta_polys]
    )
    n2 = np.sum(np.abs(F) ** 2, axis=0)
    d2 = np.sum(np.abs(dF) ** 2, axis=0)
    ip = np.sum(np.conj(F) * dF, axis=0)
    K = (n2 * d2 - np.abs(ip) ** 2) / n2**2
    return float(np.sum(W * K)) / np.pi


def disk_area(disk, weights=None, order=64):
    """Symplectic area of the disk (restriction to the upper half plane),
    as the weighted sum of Fubini-Study areas of its projective factors."""
    factors = disk.projective_polys()
    if weights is not None:
        if len(weights) != len(factors):
            raise ValueError("one weight per projective factor")
        factors = [(w, polys) for w, (_, polys) in zip(weights, factors)]
    total = 0.0
    for weight, polys in factors:
        zeta_polys = [_cayley_poly(c) for c in polys]
        total += weight * _fs_area_disk(zeta_polys, order)
    return total


# ---------------------------------------------------------------------------
# involutions and Plucker embeddings


def involution_fl3(point, l1, l2):
    """Anti-holomorphic involution on P^2 x P^2 fixing the S^3 fiber."""
    p, q = point
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    ratio = float(l1) / float(l2)
    new_p = np.array([np.conj(q[0]), np.conj(q[1]), -ratio * np.conj(q[2])])
    new_q = np.array([np.conj(p[0]), np.conj(p[1]), -np.conj(p[2]) / ratio])
    return new_p, new_q


def involution_gr24(t, point, lam):
    """Anti-holomorphic involution on P^5 fixing the U(2) fiber L_t."""
    z = np.asarray(point, dtype=complex)
    lam, t = float(lam), float(t)
    r = (lam + t) / (lam - t)
    z12, z13, z14, z23, z24, z34 = np.conj(z)
    return np.array([r * z34, z24, -z23, -z14, z13, z12 / r])


def fl3_embed_s3(a, l1, l2):
    """Plucker image of an S^3-fiber point with boundary datum a."""
    a = np.asarray(a, dtype=complex)
    r = np.sqrt(float(l1) / float(l2))
    p = np.array([a[0], a[1], r])
    q = np.array([np.conj(a[0]), np.conj(a[1]), -1.0 / r])
    return p, q


def gr24_embed_lt(a0, a1, a2, lam, t):
    """Plucker image of the L_t point labelled by (a0, (a1, a2)) in
    U(1) x SU(2)."""
    lam, t = float(lam), float(t)
    s = math.sqrt((lam + t) / (lam - t))
    return np.array(
        [
            s,
            -a0 * np.conj(a2),
            np.conj(a1),
            -a0 * a1,
            -a2,
            a0 / s,
        ],
        dtype=complex,
    )


def plucker_of_frame(Z):
    """Plucker coordinates (12, 13, 14, 23, 24, 34) of a 4x2 frame."""
    Z = np.asarray(Z, dtype=complex)
    order = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return np.array(
        [Z[i, 0] * Z[j, 1] - Z[i, 1] * Z[j, 0] for i, j in order]
    )


def projective_equal(p, q, tol=1e-9):
    p = np.asarray(p, dtype=complex).ravel()
    q = np.asarray(q, dtype=complex).ravel()
    i = int(np.argmax(np.abs(p)))
    if abs(p[i]) == 0 or abs(q[i]) == 0:
        return False
    p = p / p[i]
    q = q / q[i]
    return bool(np.max(np.abs(p - q)) < tol * max(1.0, np.max(np.abs(p))))


# ---------------------------------------------------------------------------
# disk-count integrals


def open_gw_integral(k, l, x, tol=1e-12):
    """The (k, l) disk-count integral
    int_0^{2pi} (1/k!) ((theta/2pi) x)^k (1/l!) ((1 - theta/2pi) x)^l
    (1 - cos theta) dtheta / 2pi."""
    if k < 0 or l < 0:
        raise ValueError("k, l must be non-negative")
    x = complex(x)
    kf = math.factorial(k)
    lf = math.factorial(l)

    def f(theta):
        s = theta / (2.0 * np.pi)
        return (
            (s * x) ** k / kf * ((1.0 - s) * x) ** l / lf * (1.0 - np.cos(theta))
        )

    return integrate_periodic(f, tol)


def open_gw_series(x, K=40, tol=1e-12):
    """sum_{k + l <= K} open_gw_integral(k, l, x); equals e^x up to the
    reported tail bound |x|^{K+1}/(K+1)!."""
    total = 0.0 + 0.0j
    for k in range(K + 1):
        for l in range(K + 1 - k):
            total += open_gw_integral(k, l, x, tol)
    tail = abs(x) ** (K + 1) / math.factorial(K + 1)
    return total, tail


def pair_integral(k, l, tol=1e-12):
    """The (k, l) integral of the (b, -b) pair differential at b = i pi/2:
    int (1/k!) (i theta/4)^k (1/l!) (i (theta/4 - pi/2))^l
    (1 - cos theta) dtheta / 2pi."""
    kf = math.factorial(k)
    lf = math.factorial(l)

    def f(theta):
        return (
            (0.25j * theta) ** k
            / kf
            * (1j * (theta / 4.0 - np.pi / 2.0)) ** l
            / lf
            * (1.0 - np.cos(theta))
        )

    return integrate_periodic(f, tol)


def pair_series(K=40, tol=1e-12):
    """sum_{k + l <= K} pair_integral(k, l); equals 8/(3 pi) per disk class."""
    total = 0.0 + 0.0j
    for k in range(K + 1):
        for l in range(K + 1 - k):
            total += pair_integral(k, l, tol)
    return total


# ---------------------------------------------------------------------------
# Floer differentials and modules


def m1_fl3(l1, l2, truncation=10):
    """Floer differential of the S^3 fiber on the basis (e0, e3):
    e3 -> (T^{l1} + T^{l2}) e0 (the + sign convention is fixed; the module
    decomposition does not depend on it)."""
    l1 = as_fraction(l1)
    l2 = as_fraction(l2)
    if l1 <= 0 or l2 <= 0:
        raise ValueError("l1, l2 must be positive")
    f = NovikovSeries(((l1, 1.0), (l2, 1.0)), truncation)
    z = NovikovSeries.zero(truncation)
    return NovikovMatrix([[z, f], [z, z]])


def m1b_gr24(lam, t, x, truncation=10):
    """Deformed Floer differential of the U(2) fiber L_t on the basis
    (e0, e1, e3, e1 e3): e3 -> f e0 and e1 e3 -> f e1 with
    f = e^x T^{lam + t} + e^{-x} T^{lam - t}."""
    lam = as_fraction(lam)
    t = as_fraction(t)
    if not -lam < t < lam:
        raise ValueError("need -lam < t < lam")
    if isinstance(x, BoundingCochain):
        x = x.x
    x = complex(x)
    f = NovikovSeries(
        ((lam + t, np.exp(x)), (lam - t, np.exp(-x))), truncation
    )
    z = NovikovSeries.zero(truncation)
    return NovikovMatrix(
        [
            [z, z, f, z],
            [z, z, z, f],
            [z, z, z, z],
            [z, z, z, z],
        ]
    )


def delta_pair_gr24(lam, from_series=True, K=40, truncation=10):
    """Floer differential of the pair (L_0, +b), (L_0, -b) at b = i pi/2 e1:
    e3 -> (16/3pi) T^lam e0 and e1 e3 -> (32/3pi) T^lam e1.

    With from_series=True the 16/(3 pi) coefficient is produced by the
    disk-count quadrature series (summed over both disk classes) and the
    closed form is asserted within 1e-8."""
    lam = as_fraction(lam)
    if lam <= 0:
        raise ValueError("lam must be positive")
    closed = 16.0 / (3.0 * np.pi)
    if from_series:
        coeff = 2.0 * pair_series(K)
        if abs(coeff - closed) > 1e-8:
            raise RuntimeError(
                f"quadrature series {coeff} disagrees with 16/(3 pi)"
            )
    else:
        coeff = closed
    f1 = NovikovSeries(((lam, coeff),), truncation)
    f2 = NovikovSeries(((lam, 2.0 * coeff),), truncation)
    z = NovikovSeries.zero(truncation)
    return NovikovMatrix(
        [
            [z, z, f1, z],
            [z, z, z, f2],
            [z, z, z, z],
            [z, z, z, z],
        ]
    )


def floer_module(d, ring="Lambda0"):
    """Module decomposition of the homology of a Floer differential."""
    return module_presentation(d, ring=ring)


def displacement_energy_bound(lam, t):
    """h(t) = (2 lam / pi) arctan sqrt((lam^2 - t^2)/t^2); h(0) = lam by the
    one-sided limit, h(+-lam) = 0."""
    lam, t = float(lam), float(t)
    if abs(t) > lam:
        raise ValueError("need |t| <= lam")
    if t == 0.0:
        return lam
    if abs(t) == lam:
        return 0.0
    return (2.0 * lam / math.pi) * math.atan(math.sqrt((lam**2 - t**2) / t**2))


@dataclass(frozen=True)
class BoundingCochain:
    """b = x e1 with the representative of x chosen modulo 2 pi i."""

    x: complex

    def __post_init__(self):
        x = complex(self.x)
        im = math.remainder(x.imag, 2.0 * math.pi)
        if im <= -math.pi:
            im += 2.0 * math.pi
        object.__setattr__(self, "x", complex(x.real, im))
