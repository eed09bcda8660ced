"""Vectors, matrices and canonical subspaces over GF(p).

Conventions used everywhere in the package:

* vectors are rows and matrices act on the right, ``v -> v @ A``;
* a vector's *point id* is its rank in lexicographic order of coordinates,
  first coordinate most significant, so id 0 is the zero vector;
* matrices are ``numpy`` integer arrays with entries in ``[0, p)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, DegreeMismatch, DimensionMismatch, FieldMismatch, SingularMatrix
from .gf import FieldElement, FieldSpec

DEFAULT_SUBSPACE_CAP = 10**6


# --- points -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _weights(p: int, d: int) -> np.ndarray:
    w = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    w.flags.writeable = False
    return w


def point_id(coords, p: int) -> int:
    coords = np.asarray(coords, dtype=np.int64) % p
    return int(coords @ _weights(p, len(coords)))


def point_ids(rows: np.ndarray, p: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    return (rows % p) @ _weights(p, rows.shape[-1])


def coords_of(pid: int, p: int, d: int) -> np.ndarray:
    return all_points(p, d)[pid]


@lru_cache(maxsize=None)
def all_points(p: int, d: int) -> np.ndarray:
    """(p^d, d) array; row i holds the coordinates of point id i."""
    idx = np.arange(p**d, dtype=np.int64)
    out = np.empty((p**d, d), dtype=np.int64)
    for j in range(d - 1, -1, -1):
        out[:, j] = idx % p
        idx //= p
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def addition_table(p: int, d: int) -> np.ndarray:
    """table[a, b] = id of point a + point b; only built for desk-scale spaces."""
    pts = all_points(p, d)
    tab = point_ids(pts[:, None, :] + pts[None, :, :], p)
    tab.flags.writeable = False
    return tab


@lru_cache(maxsize=None)
def negation(p: int, d: int) -> np.ndarray:
    neg = point_ids(-all_points(p, d), p)
    neg.flags.writeable = False
    return neg


def point_permutation(A: np.ndarray, p: int) -> np.ndarray:
    """perm[i] = id of (point i) @ A."""
    d = A.shape[0]
    return point_ids(all_points(p, d) @ A, p)


# --- matrices ---------------------------------------------------------------

def as_matrix(rows, p: int) -> np.ndarray:
    A = np.array(rows, dtype=np.int64) % p
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got shape {A.shape}")
    return A


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64)


def mat_mul(A, B, p: int) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"{A.shape} @ {B.shape}")
    return (A @ B) % p


def apply(A, v, p: int) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    if v.shape[-1] != A.shape[0]:
        raise DimensionMismatch(f"vector of length {v.shape[-1]} vs {A.shape}")
    return (v @ A) % p


def rref(M, p: int):
    """Reduced row echelon form over GF(p); returns (R, pivot_columns)."""
    R = np.array(M, dtype=np.int64) % p
    if R.ndim != 2:
        R = R.reshape(-1, R.shape[-1] if R.ndim else 0)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, p: int) -> int:
    return len(rref(M, p)[1])


def mat_det(A, p: int) -> int:
    A = np.array(A, dtype=np.int64) % p
    n = A.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if len(nz) == 0:
            return 0
        i = c + nz[0]
        if i != c:
            A[[c, i]] = A[[i, c]]
            det = -det
        piv = int(A[c, c])
        det = det * piv % p
        inv = pow(piv, -1, p)
        for i in range(c + 1, n):
            if A[i, c]:
                A[i] = (A[i] - A[i, c] * inv * A[c]) % p
    return det % p


def mat_inv(A, p: int) -> np.ndarray:
    n = A.shape[0]
    R, piv = rref(np.hstack([A % p, identity(n)]), p)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return R[:, n:].copy()


def mat_pow(A, e: int, p: int) -> np.ndarray:
    if e < 0:
        A, e = mat_inv(A, p), -e
    out = identity(A.shape[0])
    while e:
        if e & 1:
            out = (out @ A) % p
        A = (A @ A) % p
        e >>= 1
    return out


def mat_ops(op: str, A, B=None, p: int = 2):
    if op == "mul":
        return mat_mul(A, B, p)
    if op == "inv":
        return mat_inv(A, p)
    if op == "det":
        return mat_det(A, p)
    if op == "apply":
        return apply(A, B, p)
    raise ValueError(f"unknown op {op!r}")


def matrix_order(A, p: int, limit: int = 10**7) -> int:
    I = identity(A.shape[0])
    X = A % p
    for n in range(1, limit + 1):
        if np.array_equal(X, I):
            return n
        X = (X @ A) % p
    raise CapExceeded(f"order exceeds {limit}")


def block_diag(*blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def companion_matrix(poly, p: int) -> np.ndarray:
    """Companion matrix of a monic poly (constant term first), row convention.

    Row i is the image of x^i under multiplication by x modulo ``poly``.
    """
    d = len(poly) - 1
    C = np.zeros((d, d), dtype=np.int64)
    for i in range(d - 1):
        C[i, i + 1] = 1
    C[d - 1] = [(-c) % p for c in poly[:d]]
    return C


# --- tensors ----------------------------------------------------------------

def tensor(u, v, p: int) -> np.ndarray:
    """u (x) v with basis x_i (x) u_j ordered (i, j)-lexicographically."""
    return np.kron(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)) % p


def mat_tensor(A, B, p: int) -> np.ndarray:
    return np.kron(A, B) % p


# --- subspaces --------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """GF(p)-subspace of V_d(p) stored by its RREF basis."""

    p: int
    d: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def key(self) -> bytes:
        return np.array(self.basis, dtype=np.uint8).tobytes()

    def basis_array(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.d)

    def members(self) -> np.ndarray:
        """Sorted point ids of all p^dim vectors in the subspace."""
        return _members(self.p, self.d, self.basis)

    def __contains__(self, v) -> bool:
        pid = v if isinstance(v, (int, np.integer)) else point_id(v, self.p)
        return pid in set(self.members().tolist())

    def image(self, A) -> "Subspace":
        return span(apply(A, self.basis_array(), self.p), self.p, self.d)

    def to_json(self):
        return [list(r) for r in self.basis]


@lru_cache(maxsize=1 << 16)
def _members(p, d, basis):
    B = np.array(basis, dtype=np.int64).reshape(len(basis), d)
    coeffs = all_points(p, len(basis))
    ids = point_ids(coeffs @ B, p)
    ids.sort()
    ids.flags.writeable = False
    return ids


def span(vectors, p: int, d: int | None = None) -> Subspace:
    vectors = [np.asarray(v, dtype=np.int64) for v in vectors]
    if d is None:
        if not vectors:
            raise DimensionMismatch("cannot infer dimension of empty span")
        d = len(vectors[0])
    if not vectors:
        return Subspace(p, d, ())
    if any(v.shape != (d,) for v in vectors):
        raise DimensionMismatch(f"span needs vectors of length {d}")
    M = np.vstack(vectors)
    R, piv = rref(M, p)
    return Subspace(p, d, tuple(tuple(int(x) for x in row) for row in R[: len(piv)]))


def span_of_ids(ids, p: int, d: int) -> Subspace:
    return span([all_points(p, d)[i] for i in ids], p, d)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(p: int, d: int, t: int, cap: int = DEFAULT_SUBSPACE_CAP) -> list[Subspace]:
    """All t-dimensional subspaces of V_d(p), ordered by pivot set then free entries."""
    if not 0 <= t <= d:
        raise DimensionMismatch(f"t={t} outside [0, {d}]")
    total = gaussian_binomial(d, t, p)
    if total > cap:
        raise CapExceeded(f"{total} subspaces exceed cap {cap}")
    out = []
    for pivots in itertools.combinations(range(d), t):
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            R = [[0] * d for _ in range(t)]
            for i, pc in enumerate(pivots):
                R[i][pc] = 1
            for (i, c), x in zip(free, vals):
                R[i][c] = x
            out.append(Subspace(p, d, tuple(tuple(r) for r in R)))
    return out


# --- restriction of scalars ---------------------------------------------------

def coords(a: FieldElement) -> np.ndarray:
    return np.array(a.coeffs, dtype=np.int64)


def mul_matrix(a: FieldElement) -> np.ndarray:
    """GF(p)-matrix of y -> y*a on the polynomial basis {1, x, ..., x^(e-1)}."""
    F = a.field
    rows = []
    xk = F.one
    for _ in range(F.d):
        rows.append((xk * a).coeffs)
        xk = xk * F.gen
    return np.array(rows, dtype=np.int64)


def field_blowup(M, F: FieldSpec | None = None) -> np.ndarray:
    """Replace each GF(p^e) entry by its e x e multiplication matrix over GF(p)."""
    M = [list(row) for row in M]
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionMismatch("matrix must be square")
    if F is None:
        F = M[0][0].field
    e = F.d
    out = np.zeros((n * e, n * e), dtype=np.int64)
    for i, row in enumerate(M):
        for j, a in enumerate(row):
            a = F(a)
            if a.field != F:
                raise FieldMismatch("entries from different fields")
            out[i * e:(i + 1) * e, j * e:(j + 1) * e] = mul_matrix(a)
    if mat_det(out, F.p) == 0:
        raise SingularMatrix("blown-up matrix is singular")
    return out


def frobenius_matrix(F: FieldSpec, power: int = 1) -> np.ndarray:
    """GF(p)-matrix of x -> x^(p^power) on GF(p^d)."""
    rows = []
    xk = F.one
    for _ in range(F.d):
        rows.append((xk ** (F.p ** (power % F.d))).coeffs)
        xk = xk * F.gen
    return np.array(rows, dtype=np.int64)


def vector_of(elems, F: FieldSpec) -> np.ndarray:
    """Blow a vector over GF(p^e) up to a GF(p)-vector (concatenated coordinates)."""
    return np.concatenate([coords(F(a)) for a in elems])


def check_degree(e: int, d: int):
    if e <= 0 or d % e:
        raise DegreeMismatch(f"{e} does not divide {d}")
