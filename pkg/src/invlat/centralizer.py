"""The commutant algebra Z(A), its units, and the membership predicates.

``centralizer_basis`` solves AX = XA as an n^2-dimensional homogeneous
linear system.  A subspace is hyperinvariant when every basis element of
Z(A) maps it into itself (linearity makes basis checking sufficient),
and characteristic when A and every *invertible* element of Z(A) do.
Unit enumeration walks all coordinate tuples over the basis and filters
by nonsingularity, so it is exact but only available over finite fields
within a configured cap.
"""

from dataclasses import dataclass
from itertools import product

from .errors import CapExceededError, InfiniteFieldError, UndecidedError
from .matrix import Matrix, mat_vec, rank
from .subspace import kernel_basis

__all__ = [
    "CentralizerBasis",
    "centralizer_basis",
    "unit_elements",
    "is_hyperinvariant",
    "is_characteristic",
    "DEFAULT_UNIT_CAP",
]

DEFAULT_UNIT_CAP = 1 << 20


@dataclass(frozen=True)
class CentralizerBasis:
    """F-basis of Z(A) = {B : AB = BA}."""

    matrix: Matrix  # the A those elements commute with
    elements: tuple  # tuple of Matrix

    @property
    def dim(self):
        return len(self.elements)


def centralizer_basis(A):
    """Basis of the solution space of AX - XA = 0, reshaped to matrices."""
    if not A.is_square:
        raise ValueError("centralizer requires a square matrix")
    field = A.field
    n = A.nrows
    zero = field.zero()
    # equation (i,j): sum_k A[i,k] X[k,j] - X[i,k] A[k,j] = 0; unknowns
    # vec(X) row-major
    rows = []
    for i in range(n):
        for j in range(n):
            coef = [zero] * (n * n)
            for k in range(n):
                a = A.rows[i][k]
                if a:
                    coef[k * n + j] = coef[k * n + j] + a
                b = A.rows[k][j]
                if b:
                    coef[i * n + k] = coef[i * n + k] - b
            rows.append(tuple(coef))
    system = Matrix(field, tuple(rows), _raw=True)
    ker = kernel_basis(system)
    mats = tuple(
        Matrix(field, tuple(tuple(v[i * n : (i + 1) * n]) for i in range(n)), _raw=True)
        for v in ker.basis
    )
    for B in mats:
        if A @ B != B @ A:
            raise AssertionError("centralizer solver produced a non-commuting matrix")
    # I and A always commute with A; make sure the solution space has them
    vec = lambda M: tuple(e for row in M.rows for e in row)
    if not ker.member(vec(Matrix.identity(field, n))) or not ker.member(vec(A)):
        raise AssertionError("centralizer basis misses I or A")
    return CentralizerBasis(A, mats)


def _combo(Z, coords):
    field = Z.matrix.field
    n = Z.matrix.nrows
    acc = Matrix.zeros(field, n)
    for c, B in zip(coords, Z.elements):
        if c:
            acc = acc + B * c
    return acc


def unit_elements(Z, cap=DEFAULT_UNIT_CAP):
    """All invertible elements of Z, exactly once, in coordinate order."""
    field = Z.matrix.field
    if not field.is_finite:
        raise InfiniteFieldError("infinite field: cannot enumerate centralizer units")
    d = Z.dim
    total = field.order**d
    if total > cap:
        raise CapExceededError(
            f"centralizer has {field.order}^{d} = {total} elements, cap {cap}",
            count=total,
            cap=cap,
        )
    n = Z.matrix.nrows
    elems = tuple(field.elements())
    for coords in product(elems, repeat=d):
        B = _combo(Z, coords)
        if rank(B) == n:
            yield B


def _stabilizes(B, W):
    return all(W.member(mat_vec(B, row)) for row in W.basis)


def is_hyperinvariant(W, A, Z=None):
    """True iff BW <= W for every element of the centralizer of A."""
    if Z is None:
        Z = centralizer_basis(A)
    return all(_stabilizes(B, W) for B in Z.elements)


def is_characteristic(W, A, Z=None, cap=DEFAULT_UNIT_CAP):
    """True iff AW <= W and BW <= W for every invertible B commuting with A.

    Enumerates the unit group directly (early exit on the first violating
    unit); over an infinite field or beyond the cap this predicate is not
    decidable here and raises (the lattice engine's theorem dispatch
    covers those cases).
    """
    if not _stabilizes(A, W):
        return False
    if Z is None:
        Z = centralizer_basis(A)
    if is_hyperinvariant(W, A, Z):
        return True
    if not A.field.is_finite:
        raise InfiniteFieldError(
            "infinite field: characteristic membership needs the theorem dispatch"
        )
    try:
        for B in unit_elements(Z, cap=cap):
            if not _stabilizes(B, W):
                return False
    except CapExceededError as exc:
        raise UndecidedError(
            f"undecided at this scale: unit enumeration needs {exc.count} > cap {exc.cap}"
        ) from exc
    return True
