"""Arithmetic in the Novikov ring and module decompositions.

Elements are truncated formal sums sum_i a_i T^{e_i} with exact rational
exponents e_i and complex double coefficients a_i.  Exponents are kept exact
(fractions.Fraction) because torsion exponents of Floer cohomology modules
are the payload of the whole computation; coefficients only ever need to be
distinguished from zero.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

DEFAULT_TRUNCATION = Fraction(10)
COEFF_PRUNE = 1e-14
PIVOT_ZERO_TOL = 1e-10


def as_fraction(x):
    """Convert x to an exact Fraction.

    Floats go through their shortest decimal repr, so as_fraction(0.3) is
    exactly 3/10.  Strings accept "p/q" and decimal forms.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


@dataclass(frozen=True)
class NovikovSeries:
    """A truncated Novikov series: sorted (exponent, coefficient) pairs."""

    terms: tuple = ()
    truncation: Fraction = DEFAULT_TRUNCATION

    def __post_init__(self):
        trunc = as_fraction(self.truncation)
        merged = {}
        for exp, coeff in self.terms:
            exp = as_fraction(exp)
            merged[exp] = merged.get(exp, 0.0 + 0.0j) + complex(coeff)
        cleaned = tuple(
            (exp, merged[exp])
            for exp in sorted(merged)
            if abs(merged[exp]) >= COEFF_PRUNE and exp < trunc
        )
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "truncation", trunc)

    @classmethod
    def zero(cls, truncation=DEFAULT_TRUNCATION):
        return cls((), truncation)

    @classmethod
    def one(cls, truncation=DEFAULT_TRUNCATION):
        return cls(((Fraction(0), 1.0 + 0.0j),), truncation)

    @classmethod
    def monomial(cls, exp, coeff=1.0, truncation=DEFAULT_TRUNCATION):
        return cls(((as_fraction(exp), complex(coeff)),), truncation)

    def is_zero(self, tol=0.0):
        return all(abs(c) <= tol for _, c in self.terms)

    def valuation(self):
        """Least exponent; +inf for the zero series."""
        if not self.terms:
            return math.inf
        return self.terms[0][0]

    @property
    def leaves_lambda0(self):
        """True when the series has a negative exponent (lies in Lambda \\ Lambda_0)."""
        return bool(self.terms) and self.terms[0][0] < 0

    def leading_coefficient(self):
        if not self.terms:
            raise ZeroDivisionError("zero series has no leading coefficient")
        return self.terms[0][1]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = min(self.truncation, other.truncation)
        return NovikovSeries(self.terms + other.terms, trunc)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return NovikovSeries(tuple((e, -c) for e, c in self.terms), self.truncation)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = min(self.truncation, other.truncation)
        prods = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if e < trunc:
                    prods.append((e, c1 * c2))
        return NovikovSeries(tuple(prods), trunc)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scalar_mul(self, scalar):
        return NovikovSeries(
            tuple((e, c * complex(scalar)) for e, c in self.terms), self.truncation
        )

    def shift(self, exp):
        """Multiply by T^exp (exp may be negative)."""
        exp = as_fraction(exp)
        return NovikovSeries(tuple((e + exp, c) for e, c in self.terms), self.truncation)

    def invert(self):
        """Multiplicative inverse; may leave Lambda_0 (negative exponents)."""
        if not self.terms:
            raise ZeroDivisionError("cannot invert the zero series")
        v = self.terms[0][0]
        c0 = self.terms[0][1]
        # a = c0 T^v (1 + r) with val(r) > 0; invert the unit part by a
        # geometric series, which terminates below the truncation.
        r = NovikovSeries(
            tuple((e - v, c / c0) for e, c in self.terms[1:]), self.truncation
        )
        result = NovikovSeries.one(self.truncation)
        power = NovikovSeries.one(self.truncation)
        rv = r.valuation()
        if rv is not math.inf:
            n_terms = int(self.truncation / rv) + 1
            for _ in range(n_terms):
                power = power * (-r)
                if power.is_zero():
                    break
                result = result + power
        return result.scalar_mul(1.0 / c0).shift(-v)

    def __call__(self, t0):
        """Evaluate at a numeric T=t0 in (0,1)."""
        return sum(c * (t0 ** float(e)) for e, c in self.terms)

    def to_lists(self):
        return [
            [e.numerator, e.denominator, c.real, c.imag] for e, c in self.terms
        ]

    @classmethod
    def from_lists(cls, data, truncation=DEFAULT_TRUNCATION):
        return cls(
            tuple((Fraction(num, den), complex(re, im)) for num, den, re, im in data),
            truncation,
        )

    def _coerce(self, other):
        if isinstance(other, NovikovSeries):
            return other
        if isinstance(other, (int, float, complex)):
            return NovikovSeries.monomial(0, other, self.truncation)
        return NotImplemented

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            coeff = f"({c.real:g}{c.imag:+g}i)" if c.imag else f"{c.real:g}"
            parts.append(coeff if e == 0 else f"{coeff}*T^({e})")
        return " + ".join(parts)


@dataclass
class NovikovMatrix:
    """Dense matrix of Novikov series with a shared truncation."""

    entries: list  # list of rows of NovikovSeries

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must be non-empty")
        trunc = min(s.truncation for row in self.entries for s in row)
        self.entries = [
            [NovikovSeries(s.terms, trunc) for s in row] for row in self.entries
        ]

    @classmethod
    def zeros(cls, rows, cols, truncation=DEFAULT_TRUNCATION):
        return cls(
            [[NovikovSeries.zero(truncation) for _ in range(cols)] for _ in range(rows)]
        )

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def truncation(self):
        return self.entries[0][0].truncation

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = NovikovSeries.zero(min(self.truncation, other.truncation))
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return NovikovMatrix(out)

    def is_zero(self, tol=0.0):
        return all(s.is_zero(tol) for row in self.entries for s in row)

    def copy(self):
        return NovikovMatrix([[s for s in row] for row in self.entries])

    def to_lists(self):
        return [[s.to_lists() for s in row] for row in self.entries]


@dataclass
class NovikovModuleDecomp:
    """H = Lambda_0^free_rank + sum_i Lambda_0 / T^{e_i} Lambda_0."""

    free_rank: int
    torsion_exponents: tuple
    warnings: list = field(default_factory=list)

    def lambda_rank(self):
        """Rank after inverting T (over the Novikov field)."""
        return self.free_rank

    def to_dict(self):
        return {
            "free_rank": self.free_rank,
            "torsion": [[e.numerator, e.denominator] for e in self.torsion_exponents],
        }


def _smith_valuations(d, warnings):
    """Pivot valuations of d by Gaussian elimination over Lambda_0.

    Lambda_0 is a valuation ring, so any minimum-valuation entry is a valid
    pivot.  Returns the sorted list of pivot valuations (the valuations of
    the invariant factors).
    """
    work = [[s for s in row] for row in d.entries]
    nrows, ncols = len(work), len(work[0])
    active_rows = list(range(nrows))
    active_cols = list(range(ncols))
    pivots = []
    while active_rows and active_cols:
        best = None
        for i in active_rows:
            for j in active_cols:
                v = work[i][j].valuation()
                if v is not math.inf and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        pivot = work[pi][pj]
        if abs(pivot.leading_coefficient()) < PIVOT_ZERO_TOL:
            warnings.append(
                f"near-zero pivot coefficient {abs(pivot.leading_coefficient()):.3g} "
                f"at ({pi},{pj}); treated as zero"
            )
            work[pi][pj] = NovikovSeries.zero(pivot.truncation)
            continue
        inv = pivot.invert()
        for i in active_rows:
            if i == pi:
                continue
            factor = work[i][pj] * inv
            if factor.is_zero():
                continue
            for j in active_cols:
                work[i][j] = work[i][j] - factor * work[pi][j]
        for j in active_cols:
            if j == pj:
                continue
            factor = work[pi][j] * inv
            if factor.is_zero():
                continue
            for i in active_rows:
                work[i][j] = work[i][j] - factor * work[i][pj]
        pivots.append(v)
        active_rows.remove(pi)
        active_cols.remove(pj)
    return sorted(pivots)


def module_presentation(d, two_step=False, ring="Lambda0", tol=1e-12):
    """Decompose the homology of d over the Novikov ring.

    With two_step=False, d must be a square matrix with d @ d = 0 and the
    result is ker(d)/im(d).  With two_step=True, d is an arbitrary
    presentation matrix of a two-step complex and the result is
    ker(d) + coker(d).  Either way the answer is a free part plus torsion
    pieces Lambda_0 / T^{e} Lambda_0 read off from the pivot valuations.

    ring="Lambda" reports the result after inverting T (all torsion dies).
    """
    if ring not in ("Lambda0", "Lambda"):
        raise ValueError("ring must be 'Lambda0' or 'Lambda'")
    warnings = []
    if not two_step:
        if d.rows != d.cols:
            raise ValueError("a differential must be square (or pass two_step=True)")
        sq = d @ d
        if not sq.is_zero(tol):
            raise ValueError("not a differential: d @ d != 0 within truncation")
    vals = _smith_valuations(d, warnings)
    r = len(vals)
    torsion = tuple(sorted(v for v in vals if v > 0))
    for e in torsion:
        if e >= d.truncation:
            raise ValueError("torsion exponent reaches the truncation level")
    if two_step:
        free = (d.rows - r) + (d.cols - r)
    else:
        # ker/im of a square-zero d: rank n - 2r free plus one torsion piece
        # per nonzero pivot valuation.
        free = d.rows - 2 * r
        if free < 0:
            raise ValueError("rank exceeds what a square-zero differential allows")
    if ring == "Lambda":
        return NovikovModuleDecomp(free, (), warnings)
    return NovikovModuleDecomp(free, torsion, warnings)
