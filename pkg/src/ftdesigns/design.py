"""Incidence structures D = (V, B^G) for affine groups G = T:G0.

Points are the point ids of V = V_d(p); translations are never stored as
group elements, they act through :func:`linalg.addition_table`.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import group as gr
from . import linalg as la
from .errors import (
    CapExceeded,
    DegreeMismatch,
    NotResolvable,
    NotTwoDesign,
    ParameterMismatch,
    PreconditionViolated,
    TrivialBlock,
)
from .gf import FieldSpec, field_create

DEFAULT_BLOCK_CAP = 10**5
FULL_PAIR_LIMIT = 729


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    r: int
    k: int
    lam: int

    def as_tuple(self):
        return (self.v, self.k, self.r, self.b, self.lam)

    def identities_hold(self) -> bool:
        return self.b * self.k == self.v * self.r and self.r * (self.k - 1) == self.lam * (self.v - 1)


@dataclass
class Design:
    p: int
    d: int
    blocks: np.ndarray                 # (b, k), rows sorted, rows in lexicographic order
    base_block: tuple[int, ...]
    group: object                      # GroupClosure or list of generators
    block_orbit: list[tuple[int, ...]]  # B^{G0}
    field: FieldSpec | None = None     # GF(q) when V is a blow-up of V_n(q)
    n: int | None = None

    @property
    def v(self) -> int:
        return self.p ** self.d

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        return self.blocks.shape[1]

    def block_set(self) -> set[tuple[int, ...]]:
        return set(map(tuple, self.blocks.tolist()))

    def blocks_through(self, x: int) -> np.ndarray:
        return self.blocks[np.any(self.blocks == x, axis=1)]

    def __eq__(self, other):
        return (
            isinstance(other, Design)
            and self.v == other.v
            and self.blocks.shape == other.blocks.shape
            and np.array_equal(self.blocks, other.blocks)
        )

    def dump(self, lam: int | None = None) -> str:
        r = self.b * self.k // self.v
        if lam is None:
            lam = r * (self.k - 1) // (self.v - 1)
        lines = [f"{self.v} {self.b} {r} {self.k} {lam}"]
        lines.extend(" ".join(map(str, row)) for row in self.blocks.tolist())
        return "\n".join(lines) + "\n"


def _generator_perms(G0, p: int) -> list[np.ndarray]:
    if isinstance(G0, gr.GroupClosure):
        mats = G0.gen_matrices
    else:
        mats = [g for _, g in gr._labelled(G0)]
    return [la.point_permutation(g, p) for g in mats]


def _as_ids(B, p: int) -> tuple[int, ...]:
    out = set()
    for x in B:
        if isinstance(x, (int, np.integer)):
            out.add(int(x))
        else:
            out.add(la.point_id(x, p))
    return tuple(sorted(out))


def base_orbit(G0, B, p: int) -> list[tuple[int, ...]]:
    """B^{G0} as sorted id tuples."""
    return gr.block_orbit(_generator_perms(G0, p), _as_ids(B, p))


def design_from_base_block(p: int, d: int, G0, B, cap: int = DEFAULT_BLOCK_CAP,
                           field: FieldSpec | None = None, n: int | None = None) -> Design:
    """Blocks {C + w : C in B^{G0}, w in V}, deduplicated and sorted."""
    B = _as_ids(B, p)
    v = p**d
    if 0 not in B:
        raise PreconditionViolated("base block must contain the zero vector")
    if len(B) <= 2 or len(B) >= v:
        raise TrivialBlock(f"block size {len(B)} is trivial for v = {v}")
    orbit0 = base_orbit(G0, B, p)
    if len(orbit0) * v // len(B) > cap * len(B) and len(orbit0) * v > cap * v:
        raise CapExceeded(f"at least {len(orbit0)} blocks through 0 exceed cap {cap}")
    add = la.addition_table(p, d)
    O = np.array(orbit0, dtype=np.int64)
    # (r0, k, v) -> (r0 * v, k)
    trans = add[O][:, :, :].transpose(0, 2, 1).reshape(-1, O.shape[1])
    trans = np.sort(trans, axis=1)
    blocks = np.unique(trans, axis=0)
    if len(blocks) > cap:
        raise CapExceeded(f"{len(blocks)} blocks exceed cap {cap}")
    return Design(p, d, blocks, B, G0, orbit0, field=field, n=n)


def replication(D: Design) -> np.ndarray:
    return np.bincount(D.blocks.ravel(), minlength=D.v)


def pair_counts(D: Design) -> np.ndarray:
    """(v, v) matrix of block counts for each ordered pair a < b (upper triangle)."""
    v, k = D.v, D.k
    idx = np.concatenate([D.blocks[:, i] * v + D.blocks[:, j] for i in range(k) for j in range(i + 1, k)])
    return np.bincount(idx, minlength=v * v).reshape(v, v)


def verify_parameters(D: Design, method: str = "auto") -> DesignParams:
    """(v, b, r, k, lambda), checking every point pair (or the orbit formula for large v)."""
    rep = replication(D)
    if rep.min() != rep.max():
        raise NotResolvable(f"replication numbers vary: {rep.min()}..{rep.max()}")
    r = int(rep[0])
    if method == "auto":
        method = "pairs" if D.v <= FULL_PAIR_LIMIT else "orbit"
    if method == "pairs":
        counts = pair_counts(D)
        iu = np.triu_indices(D.v, 1)
        vals = counts[iu]
        lam = int(vals[0])
        bad = np.nonzero(vals != lam)[0]
        if len(bad):
            i = bad[0]
            witness = (int(iu[0][i]), int(iu[1][i]))
            raise NotTwoDesign(
                f"pair {witness} lies in {int(vals[i])} blocks, pair (0, 1) in {lam}", witness=witness
            )
    else:
        lams = set(lambda_by_orbit_formula(D.group, D.base_block, D.p).values())
        if len(lams) != 1:
            raise NotTwoDesign(f"orbit formula gives several lambdas: {sorted(lams)}")
        lam = next(iter(lams))
        if lam.denominator != 1:
            raise NotTwoDesign(f"non-integral lambda {lam}")
        lam = int(lam)
    return DesignParams(D.v, D.b, r, D.k, lam)


def _translate_sorted(add, neg, C: np.ndarray, y: int) -> tuple[int, ...]:
    return tuple(sorted(add[C, neg[y]].tolist()))


def orbit_closed_under_translation(orbit0, p: int, d: int) -> bool:
    """True iff C - y lies in ``orbit0`` for every C in it and every y in C."""
    seen = set(orbit0)
    add = la.addition_table(p, d)
    neg = la.negation(p, d)
    O = np.array(orbit0, dtype=np.int64)
    # all C - y at once: (r0, k, k)
    shifted = np.sort(add[O[:, None, :], neg[O][:, :, None]], axis=2)
    return all(row in seen for row in map(tuple, shifted.reshape(-1, O.shape[1]).tolist()))


def flag_transitive_zero_check(G0, B, p: int, d: int | None = None) -> bool:
    """True iff every C - y (C in B^{G0}, y in C) is again in B^{G0}.

    Then the blocks through 0 are exactly B^{G0} and T:G0 is flag-transitive.
    """
    ids = _as_ids(B, p)
    if 0 not in ids:
        raise PreconditionViolated("base block must contain the zero vector")
    if d is None:
        d = _dim_of(G0)
    return orbit_closed_under_translation(base_orbit(G0, ids, p), p, d)


def _dim_of(G0) -> int:
    if isinstance(G0, gr.GroupClosure):
        return G0.dim
    return gr._labelled(G0)[0][1].shape[0]


def orbit_lambdas(r: int, B, decomp: gr.OrbitDecomposition) -> dict[int, Fraction]:
    Bset = set(B)
    return {
        rep: Fraction(r * len(Bset.intersection(members)), len(members))
        for rep, members in decomp.orbits
    }


def lambda_by_orbit_formula(G0, B, p: int, check: bool = True) -> dict[int, Fraction]:
    """lambda(x) = |B^{G0}| * |B cap x^{G0}| / |x^{G0}| for each orbit representative x."""
    ids = _as_ids(B, p)
    d = _dim_of(G0)
    orbit0 = base_orbit(G0, ids, p)
    if check and not orbit_closed_under_translation(orbit0, p, d):
        raise PreconditionViolated("blocks through 0 are not B^{G0}; orbit formula does not apply")
    return orbit_lambdas(len(orbit0), ids, gr.orbits_on_nonzero(G0, p))


# --- block shape --------------------------------------------------------------

@dataclass(frozen=True)
class BlockShapeReport:
    t: int
    shape: str
    translation_stabilizer: tuple[int, ...]
    cici_index: Fraction
    index_integral: bool


def cici_index(p: int, d: int, k: int, t: int) -> Fraction:
    return Fraction(2 * p**t * (p**d - 1), k * (k - 1))


def block_shape(B, p: int, d: int) -> BlockShapeReport:
    ids = _as_ids(B, p)
    if 0 not in ids:
        raise PreconditionViolated("block must contain the zero vector")
    add = la.addition_table(p, d)
    TB = tuple(w for w in ids if tuple(sorted(add[list(ids), w].tolist())) == ids)
    size = len(TB)
    t = 0
    while p**t < size:
        t += 1
    k = len(ids)
    if size == 1:
        shape = "semiregular_k_divides_r"
    elif k == size:
        shape = "subspace_k_eq_p^t"
    elif k == 2 * size and p % 2 == 1:
        shape = "two_coset_k_eq_2p^t"
    else:
        shape = "inconsistent"
    idx = cici_index(p, d, k, t)
    return BlockShapeReport(t, shape, TB, idx, idx.denominator == 1)


# --- fingerprints ---------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    intersection_profile: tuple[tuple[int, int], ...]
    secondary_profile: tuple | None
    derived_walks: tuple[int, ...]
    orbit_signature: tuple[int, ...] | None = field(default=None, compare=False)

    def intrinsic(self):
        return (self.intersection_profile, self.secondary_profile, self.derived_walks)

    def digest(self) -> str:
        payload = json.dumps(
            {
                "intersection": self.intersection_profile,
                "secondary": self.secondary_profile,
                "walks": self.derived_walks,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


SECONDARY_LIMIT = 5 * 10**6
WALK_MODULUS = 1_000_003
WALK_LENGTH = 8


def _incidence(D: Design) -> np.ndarray:
    M = np.zeros((D.b, D.v), dtype=np.int32)
    rows = np.repeat(np.arange(D.b), D.k)
    M[rows, D.blocks.ravel()] = 1
    return M


def fingerprint(D: Design, point: int = 0) -> Fingerprint:
    """Relabeling-invariant data for a point-transitive design.

    ``intersection_profile`` counts |C cap C'| over unordered pairs of blocks
    through ``point``.  ``secondary_profile`` is, for blocks B missing the
    point, the histogram of the vectors (#blocks C through the point with
    |C cap B| = i)_i.  ``derived_walks`` holds tr(A^j) mod a prime for
    j = 1..8, A the collinearity graph of the other points on blocks through
    the point.  All three are isomorphism invariants whenever Aut(D) is
    transitive on points, as for every translation design built here.
    """
    through = D.blocks_through(point)
    M = _incidence(D)
    Mt = M[np.any(D.blocks == point, axis=1)]
    inter = Mt @ Mt.T
    iu = np.triu_indices(len(Mt), 1)
    profile = tuple(sorted(Counter(inter[iu].tolist()).items()))
    secondary = None
    if D.b * len(through) <= SECONDARY_LIMIT:
        missing = M[~np.any(D.blocks == point, axis=1)]
        cross = missing @ Mt.T                      # (b - r, r)
        hist = Counter()
        for row in cross:
            hist[tuple(np.bincount(row, minlength=D.k + 1).tolist())] += 1
        secondary = tuple(sorted(hist.items()))
    others = np.ones(D.v, dtype=bool)
    others[point] = False
    A = (Mt.T @ Mt)[np.ix_(others, others)].astype(np.int64)
    np.fill_diagonal(A, 0)
    A %= WALK_MODULUS
    walks = []
    W = np.eye(len(A), dtype=np.int64)
    for _ in range(WALK_LENGTH):
        W = (W @ A) % WALK_MODULUS
        walks.append(int(np.trace(W) % WALK_MODULUS))
    sig = None
    if isinstance(D.group, gr.GroupClosure):
        stab = gr.setwise_stabilizer(D.group, D.base_block)
        sig = tuple(gr.orbits_on_nonzero(stab).lengths)
    return Fingerprint(profile, secondary, tuple(walks), sig)


def fingerprints_differ(D1: Design, D2: Design) -> bool:
    """True certifies non-isomorphism; False means inconclusive, never isomorphic."""
    p1, p2 = verify_parameters(D1), verify_parameters(D2)
    if p1 != p2:
        raise ParameterMismatch(f"{p1} vs {p2}")
    return fingerprint(D1).intrinsic() != fingerprint(D2).intrinsic()


def scalar_matrix(F: FieldSpec, n: int, e: int) -> np.ndarray:
    """GF(p)-matrix of multiplication by a generator of GF(p^e) inside GF(q) on V_n(q)."""
    if e <= 0 or F.d % e:
        raise DegreeMismatch(f"GF(p^{e}) is not a subfield of GF(p^{F.d})")
    g = F.omega ** ((F.order - 1) // (F.p**e - 1))
    return la.block_diag(*([la.mul_matrix(g)] * n))


def is_subspace(ids, p: int, d: int) -> bool:
    ids = tuple(sorted(ids))
    S = la.span_of_ids(ids, p, d)
    return tuple(S.members().tolist()) == ids


def blocks_field_structure(D: Design, e: int) -> bool:
    """True iff every block through 0 is a GF(p^e)-subspace (e = 0 or 1: GF(p)-subspace)."""
    F = D.field or field_create(D.p, 1)
    n = D.n or D.d
    scal = None
    if e > 1:
        scal = la.point_permutation(scalar_matrix(F, n, e), D.p)
    for C in D.blocks_through(0).tolist():
        C = tuple(C)
        if not is_subspace(C, D.p, D.d):
            return False
        if scal is not None and tuple(sorted(scal[list(C)].tolist())) != C:
            return False
    return True
