"""Quantum multiplication by c_1 on small quantum cohomology.

Grassmannians use the quantum Pieri rule for the hyperplane class sigma_1 on
the partition basis; the full flag 3-space uses the quantum Chevalley rule
on the Weyl-group basis with two quantum parameters.  Eigenvalues are
computed numerically at specialized quantum parameters and compared with
potential critical values by optimal bipartite matching.
"""

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .numerics import complex_eigenvalues


def partitions_in_box(k, m):
    """All partitions with at most k parts, each at most m, sorted."""
    result = []
    for lam in itertools.product(range(m + 1), repeat=k):
        if all(lam[i] >= lam[i + 1] for i in range(k - 1)):
            result.append(tuple(p for p in lam if p > 0))
    return sorted(set(result), key=lambda p: (sum(p), p))


@dataclass(frozen=True)
class QHMatrix:
    """Square matrix with entries polynomial in quantum parameters.

    coeffs maps a tuple of q-degrees to an integer matrix; at(*q) sums
    q^degree * matrix over all stored degrees.
    """

    basis: tuple
    coeffs: dict  # degree tuple -> np.ndarray (int)

    @property
    def dim(self):
        return len(self.basis)

    def at(self, *q):
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for degrees, mat in self.coeffs.items():
            factor = 1.0 + 0.0j
            for d, qv in zip(degrees, q):
                factor *= complex(qv) ** d
            out += factor * mat
        return out


def sigma1_matrix(k, n):
    """Quantum Pieri matrix of sigma_1 on QH*(Gr(k, n)).

    Classical part adds one box; the quantum part contributes
    q * sigma_{(lam_2 - 1, ..., lam_k - 1)} exactly when lam_1 = n - k and
    all k parts are >= 1.
    """
    if not (1 <= k < n <= 6):
        raise ValueError("need 1 <= k < n <= 6")
    m = n - k
    basis = tuple(partitions_in_box(k, m))
    pos = {lam: i for i, lam in enumerate(basis)}
    dim = len(basis)
    classical = np.zeros((dim, dim), dtype=int)
    quantum = np.zeros((dim, dim), dtype=int)
    for j, lam in enumerate(basis):
        padded = list(lam) + [0] * (k - len(lam))
        for i in range(k):
            new = padded.copy()
            new[i] += 1
            if new[i] > m:
                continue
            if i > 0 and new[i] > new[i - 1]:
                continue
            mu = tuple(p for p in new if p > 0)
            classical[pos[mu], j] += 1
        if len(lam) == k and lam[0] == m and min(lam) >= 1:
            mu = tuple(p - 1 for p in lam[1:] if p - 1 > 0)
            quantum[pos[mu], j] += 1
    return QHMatrix(basis, {(0,): classical, (1,): quantum})


def c1_eigenvalues_grassmannian(k, n, q_value):
    """Eigenvalues of quantum multiplication by c_1 = n sigma_1."""
    mat = n * sigma1_matrix(k, n).at(q_value)
    return complex_eigenvalues(mat)


def _s3_elements():
    return sorted(itertools.permutations((1, 2, 3)))


def _length(w):
    return sum(1 for i in range(3) for j in range(i + 1, 3) if w[i] > w[j])


def _apply_transposition(w, a, b):
    """Right multiplication w t_ab (swap the entries at positions a, b)."""
    w = list(w)
    w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
    return tuple(w)


def fl3_c1_matrix():
    """Quantum Chevalley matrix of c_1 = 2 (sigma_{s1} + sigma_{s2}) on
    QH*(Fl(3)) over the Weyl-group basis, with parameters (q1, q2).

    For the simple reflection s_i, sigma_{s_i} * sigma_w sums sigma_{w t_ab}
    over a <= i < b with l(w t_ab) = l(w) + 1 (classical part) plus
    q_a ... q_{b-1} sigma_{w t_ab} when l(w t_ab) = l(w) - (2(b-a) - 1).
    """
    basis = tuple(_s3_elements())
    pos = {w: i for i, w in enumerate(basis)}
    dim = len(basis)
    # degree tuples are (d1, d2) for q1^d1 q2^d2
    coeffs = {}

    def add(degree, row, col, value):
        if degree not in coeffs:
            coeffs[degree] = np.zeros((dim, dim), dtype=int)
        coeffs[degree][row, col] += value

    transpositions = {
        (1, 2): (1, 0),
        (2, 3): (0, 1),
        (1, 3): (1, 1),
    }
    for i in (1, 2):  # the two simple reflections
        for w in basis:
            lw = _length(w)
            for (a, b), qdeg in transpositions.items():
                if not a <= i < b:
                    continue
                wt = _apply_transposition(w, a, b)
                lwt = _length(wt)
                if lwt == lw + 1:
                    add((0, 0), pos[wt], pos[w], 2)
                elif lwt == lw - (2 * (b - a) - 1):
                    add(qdeg, pos[wt], pos[w], 2)
    return QHMatrix(basis, coeffs)


def fl3_c1_eigenvalues(q1_value, q2_value):
    mat = fl3_c1_matrix().at(q1_value, q2_value)
    return complex_eigenvalues(mat)


def fl3_quantum_parameters(l1, l2, T0):
    """Quantum parameters matched to Novikov data: q1 = Q1/Q2, q2 = Q2/Q3
    for Q_j = T^{lambda_{n_j}} with profile (l1, 0, -l2)."""
    return T0 ** float(l1), T0 ** float(l2)


def multiset_match(a, b, tol, allow_zero_padding=False):
    """Optimal matching of two complex multisets.

    Returns (matched, pairing) where pairing is a list of index pairs
    (i, j) with |a[i] - b[j]| < tol; padded entries are indexed None.
    """
    a = [complex(v) for v in a]
    b = [complex(v) for v in b]
    if len(a) != len(b):
        if not allow_zero_padding:
            raise ValueError("multisets have different sizes")
        while len(a) < len(b):
            a.append(0.0 + 0.0j)
        while len(b) < len(a):
            b.append(0.0 + 0.0j)
    cost = np.array([[abs(x - y) for y in b] for x in a])
    rows, cols = linear_sum_assignment(cost)
    ok = bool(np.all(cost[rows, cols] < tol))
    pairing = [(int(i), int(j)) for i, j in zip(rows, cols)]
    return ok, pairing
