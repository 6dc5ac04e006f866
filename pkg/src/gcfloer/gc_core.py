"""Gelfand-Cetlin patterns, polytopes, the moment map, and fiber geometry.

Conventions.  A flag manifold F(n_1, ..., n_r; n) is identified with the
adjoint orbit of diag(lambda_1, ..., lambda_n) where the eigenvalue profile
is blockwise constant with strict drops exactly at the steps n_1, ..., n_r.
The Gelfand-Cetlin map records, for 1 <= i <= k <= n-1, the i-th largest
eigenvalue of the upper-left k x k submatrix; entries that interlacing
forces to be constant are dropped, and the remaining N entries (N the
complex dimension) are ordered by level k descending, then i ascending.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .novikov import as_fraction
from .numerics import check_hermitian, hermitian_eigenvalues


# ---------------------------------------------------------------------------
# shapes and profiles


@dataclass(frozen=True)
class FlagShape:
    steps: tuple  # (n_1, ..., n_r), strictly increasing
    ambient: int  # n

    def __post_init__(self):
        steps = tuple(int(s) for s in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise ValueError("at least one step is required")
        if any(b <= a for a, b in zip((0,) + steps, steps)):
            raise ValueError("steps must be strictly increasing and positive")
        if steps[-1] >= self.ambient:
            raise ValueError("steps must be < ambient dimension")

    @property
    def complex_dim(self):
        levels = (0,) + self.steps + (self.ambient,)
        return sum(
            (levels[i] - levels[i - 1]) * (self.ambient - levels[i])
            for i in range(1, len(levels) - 1)
        )

    @property
    def levels(self):
        return (0,) + self.steps + (self.ambient,)


@dataclass(frozen=True)
class EigenProfile:
    values: tuple  # (lambda_1 >= ... >= lambda_n) as exact Fractions

    def __post_init__(self):
        object.__setattr__(
            self, "values", tuple(as_fraction(v) for v in self.values)
        )

    @classmethod
    def from_blocks(cls, shape, block_values):
        """Profile from one value per block (r+1 values, strictly decreasing)."""
        levels = shape.levels
        if len(block_values) != len(levels) - 1:
            raise ValueError("need one value per block")
        vals = []
        for j, bv in enumerate(block_values):
            vals.extend([as_fraction(bv)] * (levels[j + 1] - levels[j]))
        return cls(tuple(vals))

    def validate(self, shape):
        if len(self.values) != shape.ambient:
            raise ValueError("profile length does not match ambient dimension")
        for i in range(1, shape.ambient):
            if i in shape.steps:
                if not self.values[i - 1] > self.values[i]:
                    raise ValueError(f"profile must drop strictly at step {i}")
            else:
                if self.values[i - 1] != self.values[i]:
                    raise ValueError(f"profile must be constant within a block at {i}")

    def value(self, i):
        """lambda_i, 1-based."""
        return self.values[i - 1]


def fl3_shape():
    return FlagShape((1, 2), 3)


def grassmannian_shape(k, n):
    return FlagShape((k,), n)


def fl3_profile(l1, l2):
    """Fl(3) as the orbit of diag(l1, 0, -l2)."""
    return EigenProfile((as_fraction(l1), Fraction(0), -as_fraction(l2)))


def gr24_profile(lam):
    """Gr(2,4) as the orbit of diag(2 lam, 2 lam, 0, 0)."""
    q = 2 * as_fraction(lam)
    return EigenProfile((q, q, Fraction(0), Fraction(0)))


def gr2n_profile(n, lam):
    """Gr(n,2n) as the orbit of diag(lam, ..., -lam)."""
    lam = as_fraction(lam)
    return EigenProfile((lam,) * n + (-lam,) * n)


def gr25_profile(lam):
    """Gr(2,5) as the orbit of diag(lam, lam, 0, 0, 0)."""
    lam = as_fraction(lam)
    return EigenProfile((lam, lam, Fraction(0), Fraction(0), Fraction(0)))


# ---------------------------------------------------------------------------
# index sets and points


def is_constant_entry(shape, profile, i, k):
    """True when interlacing forces lambda_i^{(k)} to equal lambda_i."""
    n = shape.ambient
    if k == n:
        return True
    return profile.value(i) == profile.value(i + n - k)


@dataclass(frozen=True)
class GCIndexSet:
    pairs: tuple  # ((i, k), ...) ordered by level k descending, i ascending

    def position(self, pair):
        return self.pairs.index(tuple(pair))

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def index_set(shape, profile):
    profile.validate(shape)
    n = shape.ambient
    pairs = [
        (i, k)
        for k in range(n - 1, 0, -1)
        for i in range(1, k + 1)
        if not is_constant_entry(shape, profile, i, k)
    ]
    result = GCIndexSet(tuple(pairs))
    if len(result) != shape.complex_dim:
        raise ValueError("non-constant entry count does not match the dimension")
    return result


@dataclass(frozen=True)
class GCPoint:
    values: tuple  # floats, parallel to the index set ordering
    index: GCIndexSet

    def __post_init__(self):
        if len(self.values) != len(self.index):
            raise ValueError("value count does not match the index set")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def entry(self, i, k):
        return self.values[self.index.position((i, k))]

    def as_array(self):
        return np.array(self.values)


# ---------------------------------------------------------------------------
# inequalities and the polytope

# A side of an inequality is either a pattern entry (i, k) or an exact
# rational constant.


def _side_is_const(side):
    return isinstance(side, Fraction)


def _side_key(side):
    return ("const", side) if _side_is_const(side) else ("var", side)


@dataclass(frozen=True)
class GCInequality:
    upper: object  # (i, k) or Fraction
    lower: object  # (i, k) or Fraction
    facet: bool = False

    def affine(self, idx):
        """Return (coeffs, const) with upper - lower = coeffs . u + const."""
        coeffs = np.zeros(len(idx))
        const = 0.0
        for side, sgn in ((self.upper, 1.0), (self.lower, -1.0)):
            if _side_is_const(side):
                const += sgn * float(side)
            else:
                coeffs[idx.position(side)] += sgn
        return coeffs, const

    def label(self):
        def fmt(side):
            if _side_is_const(side):
                return str(side)
            i, k = side
            return f"u[{i},{k}]"

        return f"{fmt(self.upper)} >= {fmt(self.lower)}"


@dataclass(frozen=True)
class GCPolytope:
    shape: FlagShape
    profile: EigenProfile
    index: GCIndexSet
    inequalities: tuple


def _entry_or_const(shape, profile, i, k):
    if is_constant_entry(shape, profile, i, k):
        return profile.value(i)
    return (i, k)


def _raw_inequalities(shape, profile):
    """All diagonal-adjacency bounds touching at least one non-constant entry."""
    n = shape.ambient
    seen = set()
    ineqs = []
    for k in range(n, 1, -1):
        for i in range(1, k):
            upper_left = _entry_or_const(shape, profile, i, k)
            mid = _entry_or_const(shape, profile, i, k - 1)
            lower_right = _entry_or_const(shape, profile, i + 1, k)
            for upper, lower in ((upper_left, mid), (mid, lower_right)):
                if _side_is_const(upper) and _side_is_const(lower):
                    continue
                key = (_side_key(upper), _side_key(lower))
                if key in seen:
                    continue
                seen.add(key)
                ineqs.append((upper, lower))
    return ineqs


def _facet_flags(ineqs, idx, profile):
    """LP redundancy test: an inequality is a facet iff dropping it enlarges
    the feasible set (its slack can be made negative subject to the rest)."""
    rows = []
    consts = []
    for upper, lower in ineqs:
        tmp = GCInequality(upper, lower)
        coeffs, const = tmp.affine(idx)
        rows.append(coeffs)
        consts.append(const)
    rows = np.array(rows)
    consts = np.array(consts)
    bound = 2.0 * max(abs(float(v)) for v in profile.values) + 1.0
    flags = []
    for j in range(len(ineqs)):
        mask = np.arange(len(ineqs)) != j
        # minimize rows[j] . u  subject to  rows[m] . u >= -consts[m], m != j
        res = linprog(
            c=rows[j],
            A_ub=-rows[mask],
            b_ub=consts[mask],
            bounds=[(-bound, bound)] * rows.shape[1],
            method="highs",
        )
        if not res.success:
            raise RuntimeError(f"facet LP failed: {res.message}")
        flags.append(bool(res.fun + consts[j] < -1e-9))
    return flags


def build_polytope(shape, profile):
    idx = index_set(shape, profile)
    raw = _raw_inequalities(shape, profile)
    flags = _facet_flags(raw, idx, profile)
    ineqs = tuple(
        GCInequality(upper, lower, facet=flag)
        for (upper, lower), flag in zip(raw, flags)
    )
    return GCPolytope(shape, profile, idx, ineqs)


def contains(polytope, u, tol=1e-8):
    """Membership test; returns (bool, list of active inequality indices)."""
    if not isinstance(u, GCPoint):
        u = GCPoint(tuple(u), polytope.index)
    vec = u.as_array()
    inside = True
    active = []
    for j, ineq in enumerate(polytope.inequalities):
        coeffs, const = ineq.affine(polytope.index)
        slack = float(coeffs @ vec + const)
        if slack < -tol:
            inside = False
        elif abs(slack) <= tol:
            active.append(j)
    return inside, active


def face_dimension(polytope, u, tol=1e-8):
    """Dimension of the face whose relative interior contains u."""
    inside, active = contains(polytope, u, tol)
    if not inside:
        raise ValueError("point is not in the polytope")
    if not active:
        return len(polytope.index)
    normals = np.array(
        [polytope.inequalities[j].affine(polytope.index)[0] for j in active]
    )
    rank = np.linalg.matrix_rank(normals, tol=1e-10)
    return len(polytope.index) - rank


def _full_table(shape, profile, u):
    """All pattern values v[k][i] (1-based i), constants filled in."""
    n = shape.ambient
    table = {}
    for k in range(1, n + 1):
        for i in range(1, k + 1):
            if is_constant_entry(shape, profile, i, k):
                table[(i, k)] = float(profile.value(i))
            else:
                table[(i, k)] = u.entry(i, k)
    return table


def detect_diamonds(shape, profile, u, tol=1e-8):
    """Diamond degeneracies (k, i): lambda_i^{(k)} = lambda_{i+1}^{(k)} with
    the entries directly above (i+1, k+1) and below (i, k-1) equal too."""
    if not isinstance(u, GCPoint):
        u = GCPoint(tuple(u), index_set(shape, profile))
    n = shape.ambient
    table = _full_table(shape, profile, u)
    found = []
    for k in range(2, n):
        for i in range(1, k):
            corners = ((i, k), (i + 1, k), (i + 1, k + 1), (i, k - 1))
            # a diamond all of whose corners are forced constants is a
            # feature of the profile, not a degeneracy of the point
            if all(is_constant_entry(shape, profile, ci, ck) for ci, ck in corners):
                continue
            v = table[(i, k)]
            if all(abs(table[c] - v) <= tol for c in corners[1:]):
                found.append((k, i))
    return found


# ---------------------------------------------------------------------------
# the moment map


def gc_map(x, shape, profile, tol=1e-8):
    """Gelfand-Cetlin map: eigenvalues of upper-left submatrices of x."""
    x = check_hermitian(x)
    n = shape.ambient
    if x.shape[0] != n:
        raise ValueError("matrix size does not match the ambient dimension")
    spec = hermitian_eigenvalues(x)
    target = [float(v) for v in profile.values]
    for got, want in zip(spec, target):
        if abs(got - want) > tol:
            raise ValueError(
                f"matrix is not on the orbit: eigenvalue {got:.12g} != {want:.12g}"
            )
    idx = index_set(shape, profile)
    values = []
    level_eigs = {k: hermitian_eigenvalues(x[:k, :k]) for k in range(1, n)}
    for i, k in idx:
        values.append(level_eigs[k][i - 1])
    # verify constant entries
    for k in range(1, n):
        for i in range(1, k + 1):
            if is_constant_entry(shape, profile, i, k):
                want = float(profile.value(i))
                got = level_eigs[k][i - 1]
                if abs(got - want) > tol:
                    raise ValueError(
                        f"constant entry ({i},{k}) is {got:.12g}, expected {want:.12g}"
                    )
    return GCPoint(tuple(values), idx)


# ---------------------------------------------------------------------------
# fiber constructors


def fl3_s3_point(l1, l2, a):
    """A point of the Lagrangian S^3 fiber of Fl(3) over u = (0,0,0)."""
    l1f, l2f = float(l1), float(l2)
    if l1f <= 0 or l2f <= 0:
        raise ValueError("l1, l2 must be positive")
    a = np.asarray(a, dtype=complex)
    if a.shape != (2,) or abs(np.linalg.norm(a) - 1.0) > 1e-10:
        raise ValueError("a must be a unit vector in C^2")
    z = np.sqrt(l1f * l2f) * a
    x = np.zeros((3, 3), dtype=complex)
    x[0, 2] = z[0]
    x[1, 2] = z[1]
    x[2, 0] = np.conj(z[0])
    x[2, 1] = np.conj(z[1])
    x[2, 2] = l1f - l2f
    return x


def gr2n_un_point(n, lam, t, A):
    """A point of the Lagrangian U(n) fiber of Gr(n,2n) over u = (t,...,t)."""
    lamf, tf = float(lam), float(t)
    if not -lamf < tf < lamf:
        raise ValueError("need -lam < t < lam")
    A = np.asarray(A, dtype=complex)
    if A.shape != (n, n) or np.abs(A.conj().T @ A - np.eye(n)).max() > 1e-10:
        raise ValueError("A must be an n x n unitary matrix")
    s = np.sqrt(lamf**2 - tf**2)
    x = np.zeros((2 * n, 2 * n), dtype=complex)
    x[:n, :n] = tf * np.eye(n)
    x[n:, n:] = -tf * np.eye(n)
    x[:n, n:] = s * A.conj().T
    x[n:, :n] = s * A
    return x


def gr25_L1_frame(lam, s1, s2, t, theta1=0.0, theta2=0.0, B=None):
    """Normalized 5x2 frame Z with Z* Z = I_2 for a point of L1(s1, s2, t).

    Rows 1-2 are sqrt(t/lam) B for a 2x2 unitary B; rows 3-5 carry the
    radical normalization of the stratum.
    """
    lamf, s1f, s2f, tf = map(float, (lam, s1, s2, t))
    if not lamf > s1f > s2f > tf > 0:
        raise ValueError("need lam > s1 > s2 > t > 0")
    if B is None:
        B = np.eye(2, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if B.shape != (2, 2) or np.abs(B.conj().T @ B - np.eye(2)).max() > 1e-10:
        raise ValueError("B must be a 2 x 2 unitary matrix")
    den = lamf * (lamf - s2f)
    e1 = np.exp(1j * float(theta1))
    e2 = np.exp(1j * float(theta2))
    Z = np.zeros((5, 2), dtype=complex)
    Z[:2, :] = np.sqrt(tf / lamf) * B
    Z[2, 0] = np.sqrt((s2f - tf) * (lamf - s1f) / den) * e1
    Z[2, 1] = -np.sqrt((lamf - tf) * (s1f - s2f) / den) * e1
    Z[3, 0] = np.sqrt((s2f - tf) * (s1f - s2f) / den) * e2
    Z[3, 1] = np.sqrt((lamf - tf) * (lamf - s1f) / den) * e2
    Z[4, 0] = np.sqrt((lamf - s2f) / lamf)
    return Z


def gr25_L1_point(lam, s1, s2, t, theta1=0.0, theta2=0.0, B=None):
    """A point x = lam Z Z* of the U(2) x T^2 fiber L1(s1, s2, t) of Gr(2,5)."""
    Z = gr25_L1_frame(lam, s1, s2, t, theta1, theta2, B)
    return float(lam) * (Z @ Z.conj().T)


# ---------------------------------------------------------------------------
# fiber classification


@dataclass(frozen=True)
class FiberDescriptor:
    kind: str  # torus | S3 | U2 | U2xT2 | unknown-nonsmooth
    real_dimension: int
    lagrangian: bool
    annotations: tuple = ()


SPACES = {
    "Fl3": (fl3_shape, lambda params: fl3_profile(*params)),
    "Gr24": (lambda: grassmannian_shape(2, 4), lambda params: gr24_profile(*params)),
    "Gr25": (lambda: grassmannian_shape(2, 5), lambda params: gr25_profile(*params)),
}


def classify_fiber(space, profile, u, tol=1e-8):
    """Classify the Gelfand-Cetlin fiber over u for one of the three spaces.

    space is "Fl3", "Gr24", or "Gr25"; profile fixes the polytope.  Strata
    beyond the hard-coded table come back as unknown-nonsmooth.
    """
    if space not in SPACES:
        raise ValueError(f"unknown space {space!r}")
    shape = SPACES[space][0]()
    polytope = build_polytope(shape, profile)
    if not isinstance(u, GCPoint):
        u = GCPoint(tuple(u), polytope.index)
    inside, _active = contains(polytope, u, tol)
    if not inside:
        raise ValueError("point is not in the polytope")
    n_dim = len(polytope.index)
    diamonds = detect_diamonds(shape, profile, u, tol)
    if not diamonds:
        dim = face_dimension(polytope, u, tol)
        return FiberDescriptor("torus", dim, dim == n_dim)

    vals = u.values
    vmax = float(max(profile.values))
    vmin = float(min(profile.values))
    mid_block = (vmax + vmin) / 2.0

    if space == "Fl3" and diamonds == [(2, 1)]:
        center = float(profile.value(2))
        if all(abs(v - center) <= tol for v in vals):
            return FiberDescriptor("S3", 3, True)
    if space == "Gr24" and diamonds == [(2, 1)]:
        t = vals[0]
        if all(abs(v - t) <= tol for v in vals) and vmin + tol < t < vmax - tol:
            ann = () if abs(t - mid_block) <= tol else ("displaceable",)
            return FiberDescriptor("U2", 4, True, ann)
    if space == "Gr25":
        lamf = vmax
        ann = ("displaceable", "HF vanishes over Lambda")
        if diamonds == [(2, 1)]:
            # L1(s1, s2, t): u = (s2, s1, t, t, t, t), lam > s1 > s2 > t > 0
            s2v, s1v, t = vals[0], vals[1], vals[2]
            if (
                all(abs(v - t) <= tol for v in vals[2:])
                and lamf - tol > s1v > s2v + tol
                and s2v > t + tol
                and t > tol
            ):
                return FiberDescriptor("U2xT2", 6, True, ann)
        if diamonds == [(3, 1)]:
            # L2(s1, s2, t): u = (t, t, t, t, s1, s2), 0 < s1 < s2 < t < lam
            t, s1v, s2v = vals[0], vals[4], vals[5]
            if (
                all(abs(v - t) <= tol for v in vals[:4])
                and tol < s1v < s2v - tol
                and s2v < t - tol
                and t < lamf - tol
            ):
                return FiberDescriptor("U2xT2", 6, True, ann)
        if sorted(diamonds) == [(2, 1), (3, 1)]:
            # all entries equal t in (0, lam): a U(2) fiber of dimension 4,
            # isotropic but not Lagrangian.
            t = vals[0]
            if all(abs(v - t) <= tol for v in vals) and tol < t < lamf - tol:
                return FiberDescriptor("U2", 4, False)
    return FiberDescriptor("unknown-nonsmooth", -1, False)


# ---------------------------------------------------------------------------
# serialization


def _side_to_json(side):
    if _side_is_const(side):
        return {"const": [side.numerator, side.denominator]}
    return {"var": list(side)}


def _side_from_json(data):
    if "const" in data:
        num, den = data["const"]
        return Fraction(num, den)
    return tuple(data["var"])


def polytope_to_json(polytope, point=None, fiber=None):
    doc = {
        "shape": {"steps": list(polytope.shape.steps), "ambient": polytope.shape.ambient},
        "profile": [[v.numerator, v.denominator] for v in polytope.profile.values],
        "index_set": [list(p) for p in polytope.index.pairs],
        "inequalities": [
            {
                "upper": _side_to_json(iq.upper),
                "lower": _side_to_json(iq.lower),
                "facet": iq.facet,
            }
            for iq in polytope.inequalities
        ],
    }
    if point is not None:
        doc["point"] = list(point.values)
    if fiber is not None:
        doc["fiber"] = {
            "kind": fiber.kind,
            "real_dimension": fiber.real_dimension,
            "lagrangian": fiber.lagrangian,
            "annotations": list(fiber.annotations),
        }
    return doc


def polytope_from_json(doc):
    shape = FlagShape(tuple(doc["shape"]["steps"]), doc["shape"]["ambient"])
    profile = EigenProfile(tuple(Fraction(n, d) for n, d in doc["profile"]))
    idx = GCIndexSet(tuple(tuple(p) for p in doc["index_set"]))
    ineqs = tuple(
        GCInequality(
            _side_from_json(iq["upper"]),
            _side_from_json(iq["lower"]),
            iq["facet"],
        )
        for iq in doc["inequalities"]
    )
    return GCPolytope(shape, profile, idx, ineqs)
