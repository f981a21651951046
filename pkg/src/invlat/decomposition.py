"""Splitting an operator into primary components and semisimple + nilpotent parts.

For a square A over F with minimal polynomial m = p_1^{k_1} ... p_r^{k_r}:

* ``primary_decomposition`` produces the components V_i = ker p_i(A)^{k_i}
  together with the restriction A_i of A to V_i.
* ``jordan_chevalley`` handles one separable p-primary component: the
  Newton iteration S <- S - p(S) p'(S)^{-1} started at A converges in at
  most ceil(log2 r) steps to the unique semisimple S with A = S + N,
  SN = NS, N nilpotent, and both parts polynomials in A (a certificate
  q with S = q(A) is recovered and checked).
* ``build_k_structure`` turns F^n into a vector space over K = F[S]
  (a field because p is irreducible), computes the matrix of N as a
  K-linear map, its Segre characteristic, and Jordan chain generators.

Everything is exact and deterministic; all stated invariants are checked
before a value is returned.
"""

import math
from dataclasses import dataclass

from .errors import FieldMismatchError, InseparableFactorError
from .fields import ExtensionField, FiniteField, RationalField
from .matrix import (
    Matrix,
    inverse,
    mat_vec,
    minimal_polynomial,
    poly_at_matrix,
    rank,
    solve,
)
from .poly import Poly, factor, is_separable
from .subspace import Subspace, kernel_basis, span

__all__ = [
    "PrimaryComponent",
    "primary_decomposition",
    "JCDecomposition",
    "jordan_chevalley",
    "KStructure",
    "build_k_structure",
    "OperatorAnalysis",
    "ComponentAnalysis",
    "analyze_operator",
    "segre_characteristic",
]


@dataclass(frozen=True)
class PrimaryComponent:
    """One primary summand V_i = ker p(A)^k with A restricted to it."""

    factor: Poly
    multiplicity: int
    subspace: Subspace  # V_i inside F^n, canonical basis
    restriction: Matrix  # A_i in the V_i basis (dim x dim)

    @property
    def dim(self):
        return self.subspace.dim

    def lift_vector(self, x):
        """Coordinates in the V_i basis -> vector in F^n."""
        field = self.restriction.field
        n = self.subspace.n
        out = [field.zero()] * n
        for coef, row in zip(x, self.subspace.basis):
            if coef:
                for j in range(n):
                    out[j] = out[j] + coef * row[j]
        return tuple(out)

    def lift_subspace(self, W):
        """Subspace of F^dim (V_i coordinates) -> Subspace of F^n."""
        return span([self.lift_vector(r) for r in W.basis], self.restriction.field, self.subspace.n)


def primary_decomposition(A, factorization):
    """Components of V under A for a verified factorization of m_A."""
    if not A.is_square:
        raise ValueError("primary decomposition requires a square matrix")
    field = A.field
    n = A.nrows
    m = minimal_polynomial(A)
    prod = Poly.one(field)
    for p, k in factorization:
        prod = prod * p**k
    if prod != m:
        raise ValueError("factorization inconsistent with the minimal polynomial")
    comps = []
    total = 0
    all_rows = []
    for p, k in factorization:
        M = poly_at_matrix(p**k, A)
        V = kernel_basis(M)
        # restriction: solve for the coordinates of A*b in the basis of V
        B_cols = Matrix.from_cols(field, V.basis)
        cols = []
        for b in V.basis:
            cols.append(solve(B_cols, mat_vec(A, b)))
        Ai = Matrix.from_cols(field, cols)
        mi = minimal_polynomial(Ai)
        if mi != (p**k).monic():
            raise AssertionError("restricted minimal polynomial mismatch")
        comps.append(PrimaryComponent(p, k, V, Ai))
        total += V.dim
        all_rows.extend(V.basis)
    if total != n or span(all_rows, field, n).dim != n:
        raise AssertionError("primary components do not sum directly to the whole space")
    return comps


@dataclass(frozen=True)
class JCDecomposition:
    """A = S + N with S semisimple, N nilpotent, SN = NS; S = certificate(A)."""

    S: Matrix
    N: Matrix
    certificate: Poly

    def verify(self, A, p):
        n = A.nrows
        assert self.S + self.N == A
        assert self.S @ self.N == self.N @ self.S
        assert (self.N ** n).is_zero
        assert poly_at_matrix(p, self.S).is_zero
        assert poly_at_matrix(self.certificate, A) == self.S


def jordan_chevalley(A, p, r, start=None):
    """Semisimple + nilpotent splitting of A with m_A = p^r, p separable.

    Newton iteration S_{t+1} = S_t - p(S_t) p'(S_t)^{-1}; p'(S_t) is
    invertible because gcd(p, p') = 1 and p(S_t) stays nilpotent.  The
    optional ``start`` overrides the initial S_0 = A (used by the
    uniqueness probe).
    """
    if not A.is_square:
        raise ValueError("square matrix required")
    if p.field != A.field:
        raise FieldMismatchError("factor and matrix over different fields")
    if not is_separable(p):
        raise InseparableFactorError(
            f"Jordan-Chevalley unavailable: inseparable factor {p!r}"
        )
    if not poly_at_matrix(p**r, A).is_zero:
        raise ValueError("input contract violated: p(A)^r != 0")
    dp = p.derivative()
    S = A if start is None else start
    max_iter = max(1, math.ceil(math.log2(max(r, 2)))) + 2
    for _ in range(max_iter):
        P = poly_at_matrix(p, S)
        if P.is_zero:
            break
        S = S - P @ inverse(poly_at_matrix(dp, S))
    else:
        raise AssertionError("Newton iteration failed to terminate")
    N = A - S
    q = _polynomial_certificate(A, S)
    dec = JCDecomposition(S, N, q)
    dec.verify(A, p)
    return dec


def _polynomial_certificate(A, S):
    """q with q(A) = S, solved in the Krylov span I, A, ..., A^(d-1)."""
    field = A.field
    n = A.nrows
    d = minimal_polynomial(A).degree
    powers = [Matrix.identity(field, n)]
    for _ in range(d - 1):
        powers.append(powers[-1] @ A)
    cols = [tuple(e for row in P.rows for e in row) for P in powers]
    target = tuple(e for row in S.rows for e in row)
    x = solve(Matrix.from_cols(field, cols), target)
    return Poly(field, x)


# ----------------------------------------------------------------------


def segre_characteristic(N):
    """Jordan block sizes of a nilpotent matrix, largest first.

    Derived from kernel dimensions of powers: the number of blocks of
    size >= j is dim ker N^j - dim ker N^(j-1).
    """
    n = N.nrows
    kdims = [0]
    P = Matrix.identity(N.field, n)
    while kdims[-1] < n:
        P = P @ N
        kdims.append(n - rank(P))
        if len(kdims) > n + 1:
            raise ValueError("matrix is not nilpotent")
    ge_counts = [kdims[j] - kdims[j - 1] for j in range(1, len(kdims))]
    parts = []
    for j, c in enumerate(ge_counts, start=1):
        nxt = ge_counts[j] if j < len(ge_counts) else 0
        parts.extend([j] * (c - nxt))
    parts.sort(reverse=True)
    assert sum(parts) == n
    return tuple(parts)


@dataclass(frozen=True)
class KStructure:
    """F^n viewed as a K = F[S] vector space, and N as a K-linear map.

    ``generators`` are the chosen K-basis vectors (scanned standard basis
    vectors, deterministic); the F-basis groups each generator g with
    S g, ..., S^(s-1) g.  ``nk`` is the matrix of N over K in that basis,
    ``segre`` its Segre characteristic over K, ``chains`` Jordan chain
    generators over K (each chain listed generator first).
    """

    s: int
    field_k: object
    generators: tuple
    f_basis: Matrix  # columns: blocks (g, Sg, ..., S^{s-1}g) per generator
    f_basis_inv: Matrix
    nk: Matrix
    segre: tuple
    chains: tuple

    @property
    def k_dim(self):
        return self.nk.nrows

    def to_k(self, v):
        """F^n vector -> K^{n/s} coordinate vector."""
        x = mat_vec(self.f_basis_inv, v)
        out = []
        for j in range(self.k_dim):
            block = x[j * self.s : (j + 1) * self.s]
            out.append(self._k_from_coeffs(block))
        return tuple(out)

    def to_f(self, w):
        """K^{n/s} coordinate vector -> F^n vector."""
        coords = []
        for a in w:
            coords.extend(self._k_to_coeffs(a))
        return mat_vec(self.f_basis, tuple(coords))

    def _k_from_coeffs(self, block):
        K = self.field_k
        if self.s == 1:
            return block[0]
        if isinstance(K, FiniteField):
            return K.element([c.c[0] for c in block])
        return K.element(list(block))

    def _k_to_coeffs(self, a):
        F = self.f_basis.field
        if self.s == 1:
            return (a,)
        return tuple(F.element(c) for c in a.c)

    def k_subspace_to_f(self, W):
        """K-subspace of K^{n/s} -> the same set as an F-subspace of F^n."""
        K = self.field_k
        field = self.f_basis.field
        n = self.f_basis.nrows
        rows = []
        if self.s == 1:
            rows = [self.to_f(r) for r in W.basis]
        else:
            alpha = K.generator()
            for r in W.basis:
                scaled = r
                for _ in range(self.s):
                    rows.append(self.to_f(scaled))
                    scaled = tuple(alpha * c for c in scaled)
        return span(rows, field, n)

    def f_subspace_to_k(self, W):
        """F-subspace closed under S -> K-subspace of K^{n/s}."""
        return span([self.to_k(r) for r in W.basis], self.field_k, self.k_dim)


def build_k_structure(S, N, p):
    """K-structure of the space for a verified decomposition (S, N) and factor p."""
    field = S.field
    n = S.nrows
    s = p.degree
    if not poly_at_matrix(p, S).is_zero:
        raise ValueError("p(S) != 0: not a valid semisimple part for this factor")
    if s == 1:
        K = field
    elif isinstance(field, RationalField):
        K = ExtensionField(tuple(p.coeffs))
    elif isinstance(field, FiniteField):
        if field.k != 1:
            raise ValueError(
                "extension of an extension field is not supported: base field "
                f"{field!r} with degree-{s} factor"
            )
        K = FiniteField(field.p, s, modulus=tuple(c.c[0] for c in p.coeffs))
    else:
        raise TypeError(f"unsupported base field {field!r}")

    # greedy K-basis: scan e_1, ..., e_n; a vector outside the K-span so far
    # contributes the block (v, Sv, ..., S^{s-1} v), all new dimensions
    generators = []
    blocks = []
    covered = span([], field, n)
    for i in range(n):
        if covered.dim == n:
            break
        e = tuple(field.one() if j == i else field.zero() for j in range(n))
        if covered.member(e):
            continue
        block = [e]
        for _ in range(s - 1):
            block.append(mat_vec(S, block[-1]))
        generators.append(e)
        blocks.extend(block)
        covered = span(list(covered.basis) + block, field, n)
    if len(blocks) != n or covered.dim != n:
        raise AssertionError("K-basis construction failed to exhaust the space")
    f_basis = Matrix.from_cols(field, blocks)
    f_basis_inv = inverse(f_basis)

    m = n // s

    def to_k(v):
        x = mat_vec(f_basis_inv, v)
        out = []
        for j in range(m):
            block = x[j * s : (j + 1) * s]
            if s == 1:
                out.append(block[0])
            elif isinstance(K, FiniteField):
                out.append(K.element([c.c[0] for c in block]))
            else:
                out.append(K.element(list(block)))
        return tuple(out)

    cols = [to_k(mat_vec(N, g)) for g in generators]
    nk = Matrix.from_cols(K, cols)
    segre = segre_characteristic(nk)
    chains = _jordan_chains(nk, segre)
    result = KStructure(
        s=s,
        field_k=K,
        generators=tuple(generators),
        f_basis=f_basis,
        f_basis_inv=f_basis_inv,
        nk=nk,
        segre=segre,
        chains=chains,
    )
    _verify_k_structure(result, S, N)
    return result


def _jordan_chains(nk, segre):
    """Chain generators over K: for each block size t (descending), a vector of
    height exactly t independent from earlier chains; chain = (v, Nv, ...)."""
    K = nk.field
    m = nk.nrows
    powers = [Matrix.identity(K, m)]
    for _ in range(segre[0] if segre else 0):
        powers.append(powers[-1] @ nk)
    kernels = [kernel_basis(P) for P in powers]
    chains = []
    chosen = []  # every vector of every chain so far
    for t in sorted(segre, reverse=True):
        big = kernels[t]
        small = kernels[t - 1]
        pick = None
        for cand in big.basis:
            if not span(list(small.basis) + chosen + [cand], K, m).dim == span(
                list(small.basis) + chosen, K, m
            ).dim:
                pick = cand
                break
        if pick is None:
            raise AssertionError("Jordan chain extraction failed")
        chain = [pick]
        for _ in range(t - 1):
            chain.append(mat_vec(nk, chain[-1]))
        chains.append(tuple(chain))
        chosen.extend(chain)
    if span(chosen, K, m).dim != m:
        raise AssertionError("Jordan chains do not span")
    return tuple(chains)


def _verify_k_structure(ks, S, N):
    n = S.nrows
    assert ks.s * sum(ks.segre) == n
    # N is K-linear and nk represents it: check on every generator block
    for j, g in enumerate(ks.generators):
        img = ks.to_k(mat_vec(N, g))
        col = ks.nk.col(j)
        assert img == col
    # round trip of coordinates
    for g in ks.generators:
        assert ks.to_f(ks.to_k(g)) == g


# ----------------------------------------------------------------------
# Whole-operator analysis: factorization + per-component decomposition.


@dataclass(frozen=True)
class ComponentAnalysis:
    component: PrimaryComponent
    jc: JCDecomposition  # of the restricted matrix A_i
    kstruct: KStructure


@dataclass(frozen=True)
class OperatorAnalysis:
    matrix: Matrix
    min_poly: Poly
    factorization: object
    components: tuple
    S: Matrix  # semisimple part assembled on F^n
    N: Matrix

    @property
    def single_component(self):
        return len(self.components) == 1


def analyze_operator(A, *, hint=None, seed=0):
    """Factor m_A, split into primary components, decompose each one."""
    if not A.is_square:
        raise ValueError("square matrix required")
    m = minimal_polynomial(A)
    fact = factor(m, hint=hint, seed=seed)
    comps = primary_decomposition(A, fact)
    analyses = []
    for comp in comps:
        dec = jordan_chevalley(comp.restriction, comp.factor, comp.multiplicity)
        ks = build_k_structure(dec.S, dec.N, comp.factor)
        analyses.append(ComponentAnalysis(comp, dec, ks))
    field = A.field
    n = A.nrows
    # assemble the global S: it acts like S_i on each component
    basis_cols = []
    s_images = []
    for ca in analyses:
        comp = ca.component
        for local_idx, b in enumerate(comp.subspace.basis):
            basis_cols.append(b)
            s_local = ca.jc.S.col(local_idx)
            s_images.append(comp.lift_vector(s_local))
    B = Matrix.from_cols(field, basis_cols)
    S_glob = Matrix.from_cols(field, s_images) @ inverse(B)
    N_glob = A - S_glob
    assert S_glob @ N_glob == N_glob @ S_glob
    assert (N_glob ** n).is_zero
    return OperatorAnalysis(A, m, fact, tuple(analyses), S_glob, N_glob)
