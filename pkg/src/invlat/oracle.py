"""Ground-truth classifier by exhaustive enumeration.

``classify_all`` walks every subspace of F^n and sorts it into the
invariant / hyperinvariant / characteristic classes by direct definition
checking: invariance is the cheap first gate, the centralizer basis
decides hyperinvariance, and unit checks run only on the invariant
non-hyperinvariant survivors.

Characteristic membership of such a survivor W is decided exactly.  The
elements of Z(A) carrying W into itself form a linear subspace U_W, and
the units violating W are precisely the units of Z(A) outside U_W; so

* with a small centralizer, all units are enumerated once and candidates
  are pruned against each (tier 1; survivors of the full scan are
  certified);
* otherwise Z(A) \\ U_W is searched for a unit: deterministic seeded
  sampling finds a violator quickly when one exists, and an exhaustive
  coset scan certifies the rest (tier 2; scans beyond the unit cap raise
  an explicit "undecided" error instead of guessing).

GF(2) instances use a bit-packed enumeration core; everything else runs
on the generic exact types.
"""

import time
from dataclasses import dataclass
from itertools import combinations, product
from random import Random

from .centralizer import DEFAULT_UNIT_CAP, centralizer_basis
from .errors import CapExceededError, InfiniteFieldError, UndecidedError
from .matrix import Matrix, inverse, mat_vec, minimal_polynomial, rank
from .subspace import (
    DEFAULT_SUBSPACE_CAP,
    Subspace,
    enumerate_all_subspaces,
    kernel_basis,
    span,
    subspace_count,
)

__all__ = [
    "OracleReport",
    "classify_all",
    "RandomInstance",
    "random_instance",
]

_TIER1_CAP_GF2 = 1 << 16
_TIER1_CAP_OTHER = 10_000
_SAMPLE_TRIES = 2_000


@dataclass(frozen=True)
class OracleReport:
    matrix: Matrix
    total_subspaces: int
    invariant: tuple
    hyperinvariant: tuple
    characteristic: tuple
    centralizer_dim: int
    unit_mode: str
    units_tested: int
    findings: tuple
    elapsed: float  # wall time, metadata only; never serialized

    def counts(self):
        return {
            "total": self.total_subspaces,
            "invariant": len(self.invariant),
            "hyperinvariant": len(self.hyperinvariant),
            "characteristic": len(self.characteristic),
        }


# ----------------------------------------------------------------------
# Bit-packed GF(2) helpers: a vector of GF(2)^n is an int with bit j for
# coordinate j; a subspace is a tuple of RREF row ints plus pivot columns.


def _gf2_pack(row):
    return sum(1 << j for j, e in enumerate(row) if e)


def _gf2_cols(A):
    n = A.nrows
    return [sum(1 << i for i in range(n) if A.rows[i][j]) for j in range(n)]


def _gf2_apply(cols, w):
    v = 0
    while w:
        lsb = w & -w
        v ^= cols[lsb.bit_length() - 1]
        w ^= lsb
    return v


def _gf2_reduce(v, rows, pivots):
    for r, p in zip(rows, pivots):
        if (v >> p) & 1:
            v ^= r
    return v


def _gf2_rref(vectors):
    rows = []
    pivots = []
    for v in vectors:
        v = _gf2_reduce(v, rows, pivots)
        if v:
            rows.append(v)
            pivots.append((v & -v).bit_length() - 1)
    order = sorted(range(len(rows)), key=lambda i: pivots[i])
    rows = [rows[i] for i in order]
    pivots = [pivots[i] for i in order]
    for i in range(len(rows)):
        for j in range(len(rows)):
            if i != j and (rows[j] >> pivots[i]) & 1:
                rows[j] ^= rows[i]
    return rows, pivots


def _gf2_sum(a, b):
    rows, pivots = _gf2_rref(list(a) + list(b))
    return tuple(rows)


def _gf2_intersect(a, b, n):
    stacked = [r | (r << n) for r in a] + list(b)
    rows, pivots = _gf2_rref(stacked)
    inter = [r >> n for r, p in zip(rows, pivots) if p >= n]
    rows2, _ = _gf2_rref(inter)
    return tuple(rows2)


def _gf2_enumerate_invariant(A, cap):
    """(total_count, [(rows, pivots) of every A-invariant subspace])."""
    n = A.nrows
    total = subspace_count(n, 2)
    if total > cap:
        raise CapExceededError(
            f"subspace count {total} exceeds cap {cap}", count=total, cap=cap
        )
    cols = _gf2_cols(A)
    out = [((), ())]
    seen = 1
    for d in range(1, n + 1):
        for piv in combinations(range(n), d):
            pivset = set(piv)
            free = [
                (i, j)
                for i in range(d)
                for j in range(piv[i] + 1, n)
                if j not in pivset
            ]
            base = [1 << p for p in piv]
            for mask in range(1 << len(free)):
                rows = base.copy()
                m = mask
                t = 0
                while m:
                    if m & 1:
                        i, j = free[t]
                        rows[i] |= 1 << j
                    m >>= 1
                    t += 1
                seen += 1
                ok = True
                for w in rows:
                    v = _gf2_reduce(_gf2_apply(cols, w), rows, piv)
                    if v:
                        ok = False
                        break
                if ok:
                    out.append((tuple(rows), piv))
    if seen != total:
        raise AssertionError("enumeration miscount against the Gaussian binomial total")
    return total, out


def _gf2_unpack(field, n, packed):
    rows, piv = packed
    one, zero = field.one(), field.zero()
    basis = tuple(
        tuple(one if (r >> j) & 1 else zero for j in range(n)) for r in rows
    )
    return Subspace(field, n, basis, piv)


# ----------------------------------------------------------------------


def _stabilizes(B, W):
    return all(W.member(mat_vec(B, row)) for row in W.basis)


def _stabilizer_coords(Z, W):
    """U_W = {x in F^d : (sum x_t Z_t) W <= W} as a subspace of F^d."""
    field = Z.matrix.field
    n = Z.matrix.nrows
    rows = []
    for w in W.basis:
        residues = [W.reduce(mat_vec(B, w)) for B in Z.elements]
        for coord in range(n):
            rows.append(tuple(res[coord] for res in residues))
    M = Matrix(field, tuple(rows), _raw=True)
    return kernel_basis(M)


def _combo_matrix(Z, coords):
    field = Z.matrix.field
    acc = Matrix.zeros(field, Z.matrix.nrows)
    for c, B in zip(coords, Z.elements):
        if c:
            acc = acc + B * c
    return acc


def _classify_characteristic(A, Z, candidates, cap_units, seed):
    """Subset of (invariant, non-hyperinvariant) candidates that are
    characteristic, plus scan metadata."""
    field = A.field
    n = A.nrows
    d = Z.dim
    q = field.order
    tier1_cap = _TIER1_CAP_GF2 if q == 2 else _TIER1_CAP_OTHER
    if not candidates:
        return set(), ("none", 0)
    if q**d <= min(tier1_cap, cap_units):
        alive = set(candidates)
        tested = 0
        elems = tuple(field.elements())
        for coords in product(elems, repeat=d):
            B = _combo_matrix(Z, coords)
            if rank(B) != n:
                continue
            tested += 1
            alive = {W for W in alive if _stabilizes(B, W)}
            if not alive:
                break
        return alive, ("full-enumeration", tested)
    # tier 2: per-candidate stabilizer subalgebra
    rng = Random(seed)
    certified = set()
    tested = 0
    elems = tuple(field.elements())
    for W in candidates:
        UW = _stabilizer_coords(Z, W)
        if UW.dim == d:
            certified.add(W)  # all of Z stabilizes W
            continue
        found = False
        for _ in range(_SAMPLE_TRIES):
            coords = tuple(elems[rng.randrange(q)] for _ in range(d))
            if UW.member(coords):
                continue
            B = _combo_matrix(Z, coords)
            tested += 1
            if rank(B) == n:
                found = True  # a unit moving W
                break
        if found:
            continue
        # exhaustive scan of Z \ U_W (every possible violator lives there)
        outside = q**d - q**UW.dim
        if outside > cap_units:
            raise UndecidedError(
                f"undecided at this scale: {outside} centralizer elements outside the "
                f"stabilizer of a candidate exceed cap {cap_units}"
            )
        comp = _complement_basis(UW, field, d)
        uw_vectors = _all_vectors(UW, field)
        for c_coords in _nonzero_combos(comp, field):
            for u in uw_vectors:
                coords = tuple(a + b for a, b in zip(c_coords, u))
                B = _combo_matrix(Z, coords)
                tested += 1
                if rank(B) == n:
                    found = True
                    break
            if found:
                break
        if not found:
            certified.add(W)
    return certified, ("stabilizer-subalgebra", tested)


def _complement_basis(U, field, d):
    """Coordinate vectors extending U's basis to all of F^d."""
    rows = list(U.basis)
    comp = []
    for j in range(d):
        e = tuple(field.one() if t == j else field.zero() for t in range(d))
        cand = span(rows + comp + [e], field, d)
        if cand.dim > len(rows) + len(comp):
            comp.append(e)
    return comp


def _all_vectors(U, field):
    """Every vector of a subspace U (field finite, |U| small)."""
    if U.dim == 0:
        return [tuple(field.zero() for _ in range(U.n))]
    elems = tuple(field.elements())
    out = []
    for coords in product(elems, repeat=U.dim):
        v = [field.zero()] * U.n
        for c, row in zip(coords, U.basis):
            if c:
                for j in range(U.n):
                    v[j] = v[j] + c * row[j]
        out.append(tuple(v))
    return out


def _nonzero_combos(vectors, field):
    elems = tuple(field.elements())
    for coords in product(elems, repeat=len(vectors)):
        if not any(coords):
            continue
        v = None
        for c, row in zip(coords, vectors):
            scaled = tuple(c * a for a in row)
            v = scaled if v is None else tuple(x + y for x, y in zip(v, scaled))
        yield v


def _closed_under_ops(members, n, field, findings, label, pair_cap=300_000):
    """Verify closure under sum and intersection; append findings on failure."""
    mset = set(members)
    total = subspace_count(n, field.order)
    if len(members) == total:
        return  # the full lattice of subspaces is trivially closed
    pairs = len(members) * (len(members) - 1) // 2
    if pairs > pair_cap:
        findings.append(f"{label}: closure check skipped ({pairs} pairs over budget)")
        return
    if field.order == 2:
        packed = {tuple(_gf2_pack(r) for r in w.basis) for w in members}
        plist = sorted(packed)
        for i in range(len(plist)):
            for j in range(i + 1, len(plist)):
                if _gf2_sum(plist[i], plist[j]) not in packed:
                    findings.append(f"{label}: not closed under sum")
                    return
                if _gf2_intersect(plist[i], plist[j], n) not in packed:
                    findings.append(f"{label}: not closed under intersection")
                    return
        return
    mlist = list(members)
    for i in range(len(mlist)):
        for j in range(i + 1, len(mlist)):
            if mlist[i].sum(mlist[j]) not in mset:
                findings.append(f"{label}: not closed under sum")
                return
            if mlist[i].intersect(mlist[j]) not in mset:
                findings.append(f"{label}: not closed under intersection")
                return


def classify_all(A, *, cap_subspaces=DEFAULT_SUBSPACE_CAP, cap_units=DEFAULT_UNIT_CAP, seed=0):
    """Classify every subspace of F^n as invariant / hyperinvariant /
    characteristic with respect to A, by definition checking."""
    field = A.field
    if not field.is_finite:
        raise InfiniteFieldError("infinite field: the oracle needs a finite field")
    if not A.is_square:
        raise ValueError("square matrix required")
    t0 = time.perf_counter()
    n = A.nrows
    if field.order == 2:
        total, packed_inv = _gf2_enumerate_invariant(A, cap_subspaces)
        invariant = [_gf2_unpack(field, n, p) for p in packed_inv]
    else:
        total = subspace_count(n, field.order)
        if total > cap_subspaces:
            raise CapExceededError(
                f"subspace count {total} exceeds cap {cap_subspaces}",
                count=total,
                cap=cap_subspaces,
            )
        invariant = [
            W
            for W in enumerate_all_subspaces(field, n, cap=cap_subspaces)
            if all(W.member(mat_vec(A, row)) for row in W.basis)
        ]
    Z = centralizer_basis(A)
    hyper = [W for W in invariant if all(_stabilizes(B, W) for B in Z.elements)]
    hset = set(hyper)
    candidates = [W for W in invariant if W not in hset]
    extra, (mode, tested) = _classify_characteristic(A, Z, candidates, cap_units, seed)
    char = [W for W in invariant if W in hset or W in extra]
    findings = []
    # self-consistency: the three classes nest and are closed
    if not (hset <= set(char) <= set(invariant)):
        findings.append("class nesting violated")
    _closed_under_ops(invariant, n, field, findings, "invariant")
    _closed_under_ops(hyper, n, field, findings, "hyperinvariant")
    _closed_under_ops(char, n, field, findings, "characteristic")
    key = lambda s: s.sort_key()
    return OracleReport(
        matrix=A,
        total_subspaces=total,
        invariant=tuple(sorted(invariant, key=key)),
        hyperinvariant=tuple(sorted(hyper, key=key)),
        characteristic=tuple(sorted(char, key=key)),
        centralizer_dim=Z.dim,
        unit_mode=mode,
        units_tested=tested,
        findings=tuple(findings),
        elapsed=time.perf_counter() - t0,
    )


# ----------------------------------------------------------------------
# Seeded instance generators.


@dataclass(frozen=True)
class RandomInstance:
    matrix: Matrix
    style: str
    seed: int
    min_poly: object
    segre: tuple = None
    detail: dict = None


def _jordan_nilpotent(field, partition):
    n = sum(partition)
    zero, one = field.zero(), field.one()
    rows = [[zero] * n for _ in range(n)]
    pos = 0
    for t in partition:
        for i in range(1, t):
            rows[pos + i][pos + i - 1] = one
        pos += t
    return Matrix(field, tuple(tuple(r) for r in rows), _raw=True)


def _canonical_primary(field, p, blocks):
    """Canonical p-primary matrix: per block, companion copies with identity
    subdiagonal blocks; block i contributes s*blocks[i] dimensions."""
    from .matrix import block_diag, companion

    s = p.degree
    C = companion(p)
    zero, one = field.zero(), field.one()
    big_blocks = []
    for r_i in blocks:
        size = s * r_i
        rows = [[zero] * size for _ in range(size)]
        for b in range(r_i):
            for i in range(s):
                for j in range(s):
                    rows[b * s + i][b * s + j] = C.rows[i][j]
            if b > 0:
                for i in range(s):
                    rows[b * s + i][(b - 1) * s + i] = one
        big_blocks.append(Matrix(field, tuple(tuple(r) for r in rows), _raw=True))
    return block_diag(field, big_blocks)


def _random_invertible(field, n, rng):
    q = field.order
    while True:
        M = Matrix(
            field,
            tuple(
                tuple(field.element_from_index(rng.randrange(q)) for _ in range(n))
                for _ in range(n)
            ),
            _raw=True,
        )
        if rank(M) == n:
            return M


def _random_partition(n, rng):
    parts = []
    while n:
        p = rng.randrange(1, n + 1)
        parts.append(p)
        n -= p
    return tuple(sorted(parts, reverse=True))


def random_instance(field, n, style, seed, *, partition=None, factor_poly=None, blocks=None):
    """Deterministic test instance of one of three styles.

    ``nilpotent-partition``: nilpotent with the given (or random) Segre
    characteristic, conjugated by a random invertible matrix.
    ``companion-primary``: p-primary matrix built from companion blocks of
    ``factor_poly`` with ``blocks`` giving the multiplicities partition,
    conjugated likewise.  ``general``: a uniformly random matrix.
    """
    if not field.is_finite:
        raise InfiniteFieldError("infinite field: random instances need a finite field")
    rng = Random(seed)
    if style == "nilpotent-partition":
        part = tuple(partition) if partition else _random_partition(n, rng)
        if sum(part) != n:
            raise ValueError("partition does not sum to the dimension")
        J = _jordan_nilpotent(field, part)
        P = _random_invertible(field, n, rng)
        M = P @ J @ inverse(P)
        return RandomInstance(
            matrix=M,
            style=style,
            seed=seed,
            min_poly=minimal_polynomial(M),
            segre=part,
            detail={"partition": part},
        )
    if style == "companion-primary":
        if factor_poly is None:
            raise ValueError("companion-primary needs factor_poly")
        s = factor_poly.degree
        if blocks is None:
            if n % s:
                raise ValueError("dimension not a multiple of deg(factor)")
            blocks = _random_partition(n // s, rng)
        blocks = tuple(sorted(blocks, reverse=True))
        if s * sum(blocks) != n:
            raise ValueError("blocks do not fill the dimension")
        A0 = _canonical_primary(field, factor_poly, blocks)
        P = _random_invertible(field, n, rng)
        M = P @ A0 @ inverse(P)
        return RandomInstance(
            matrix=M,
            style=style,
            seed=seed,
            min_poly=minimal_polynomial(M),
            segre=blocks,
            detail={"factor": factor_poly, "blocks": blocks},
        )
    if style == "general":
        q = field.order
        M = Matrix(
            field,
            tuple(
                tuple(field.element_from_index(rng.randrange(q)) for _ in range(n))
                for _ in range(n)
            ),
            _raw=True,
        )
        return RandomInstance(
            matrix=M, style=style, seed=seed, min_poly=minimal_polynomial(M)
        )
    raise ValueError(f"unknown style {style!r}")
