"""Canonical subspaces of F^n and finite lattices of them.

A Subspace is identified by the reduced row-echelon basis of its row
space, so equality, hashing and ordering are structural: two subspaces
are equal iff their canonical bases agree entrywise.  Intersections use
the Zassenhaus stacked-basis trick; enumeration walks RREF shapes
(dimension, pivot-column set, free entries) so every subspace appears
exactly once.
"""

from dataclasses import dataclass

from .errors import CapExceededError, ClosureError, FieldMismatchError, InfiniteFieldError
from .matrix import Matrix, rref

__all__ = [
    "Subspace",
    "span",
    "zero_subspace",
    "full_space",
    "kernel_basis",
    "image_basis",
    "gaussian_binomial",
    "subspace_count",
    "enumerate_all_subspaces",
    "Lattice",
    "build_lattice",
    "to_dot",
    "subspace_label",
    "DEFAULT_SUBSPACE_CAP",
]

DEFAULT_SUBSPACE_CAP = 2_000_000


class Subspace:
    __slots__ = ("field", "n", "basis", "pivots")

    def __init__(self, field, n, basis, pivots):
        # internal: use span() to construct from arbitrary generators
        self.field = field
        self.n = n
        self.basis = basis
        self.pivots = pivots

    @property
    def dim(self):
        return len(self.basis)

    @property
    def is_zero(self):
        return not self.basis

    @property
    def is_full(self):
        return len(self.basis) == self.n

    def _check(self, other):
        if not isinstance(other, Subspace):
            raise TypeError(f"expected Subspace, got {other!r}")
        if other.field != self.field or other.n != self.n:
            raise FieldMismatchError("subspaces of different ambient spaces")

    def reduce(self, v):
        """Residue of v after elimination against the canonical basis."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.n):
                    v[j] = v[j] - c * row[j]
        return tuple(v)

    def member(self, v):
        if len(v) != self.n:
            raise ValueError("vector length does not match ambient dimension")
        v = tuple(self.field.element(e) for e in v)
        return not any(self.reduce(v))

    def contains(self, other):
        self._check(other)
        return all(not any(self.reduce(row)) for row in other.basis)

    def sum(self, other):
        self._check(other)
        return span(self.basis + other.basis, self.field, self.n)

    def intersect(self, other):
        """Zassenhaus: rref of [U|U; W|0]; zero-left rows carry the intersection."""
        self._check(other)
        field = self.field
        n = self.n
        zero = field.zero()
        stacked = [row + row for row in self.basis]
        stacked += [row + (zero,) * n for row in other.basis]
        if not stacked:
            return zero_subspace(field, n)
        R, rk, piv = rref(Matrix(field, tuple(stacked), _raw=True))
        inter_rows = []
        for row, p in zip(R.rows[:rk], piv):
            if p >= n:
                inter_rows.append(row[n:])
        result = span(inter_rows, field, n)
        # rank-nullity sanity on every call
        total = span(self.basis + other.basis, field, n)
        if total.dim + result.dim != self.dim + other.dim:
            raise AssertionError("modular law violated: intersection is wrong")
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and other.field == self.field
            and other.n == self.n
            and other.basis == self.basis
        )

    def __hash__(self):
        return hash((self.field, self.n, self.basis))

    def sort_key(self):
        fk = self.field.sort_key
        return (self.dim, tuple(tuple(fk(e) for e in row) for row in self.basis))

    def __repr__(self):
        return f"Subspace({subspace_label(self)} in {self.field!r}^{self.n})"


def span(vectors, field, n):
    """Canonical subspace spanned by the given vectors (empty -> zero)."""
    vecs = [tuple(field.element(e) for e in v) for v in vectors]
    for v in vecs:
        if len(v) != n:
            raise ValueError("generator length does not match ambient dimension")
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return zero_subspace(field, n)
    R, rk, piv = rref(Matrix(field, tuple(vecs), _raw=True))
    return Subspace(field, n, R.rows[:rk], piv)


def zero_subspace(field, n):
    return Subspace(field, n, (), ())


def full_space(field, n):
    ident = Matrix.identity(field, n)
    return Subspace(field, n, ident.rows, tuple(range(n)))


def kernel_basis(M):
    """Null space of M as a canonical Subspace of F^ncols."""
    field = M.field
    n = M.ncols
    R, rk, piv = rref(M)
    free = [j for j in range(n) if j not in piv]
    zero, one = field.zero(), field.one()
    vecs = []
    for j in free:
        v = [zero] * n
        v[j] = one
        for i, p in enumerate(piv):
            v[p] = -R.rows[i][j]
        vecs.append(tuple(v))
    return span(vecs, field, n)


def image_basis(M):
    """Column space of M as a canonical Subspace of F^nrows."""
    return span(tuple(zip(*M.rows)), M.field, M.nrows)


def gaussian_binomial(n, d, q):
    """Number of d-dimensional subspaces of an n-dimensional space over GF(q)."""
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n, q):
    return sum(gaussian_binomial(n, d, q) for d in range(n + 1))


def enumerate_all_subspaces(field, n, cap=DEFAULT_SUBSPACE_CAP):
    """Every subspace of F^n exactly once, ordered by (dim, pivot set, free entries).

    Walks all RREF shapes; the field must be finite and the total count
    must stay within ``cap``.
    """
    if not field.is_finite:
        raise InfiniteFieldError("infinite field: cannot enumerate subspaces over " + repr(field))
    total = subspace_count(n, field.order)
    if total > cap:
        raise CapExceededError(
            f"subspace count {total} exceeds cap {cap}", count=total, cap=cap
        )
    from itertools import combinations, product

    elems = tuple(field.elements())
    zero, one = field.zero(), field.one()
    yield zero_subspace(field, n)
    for d in range(1, n + 1):
        for piv in combinations(range(n), d):
            free_slots = []
            for i, p in enumerate(piv):
                for j in range(p + 1, n):
                    if j not in piv:
                        free_slots.append((i, j))
            for assignment in product(elems, repeat=len(free_slots)):
                rows = [[zero] * n for _ in range(d)]
                for i, p in enumerate(piv):
                    rows[i][p] = one
                for (i, j), val in zip(free_slots, assignment):
                    rows[i][j] = val
                yield Subspace(field, n, tuple(tuple(r) for r in rows), piv)


# ----------------------------------------------------------------------
# Finite lattices with Hasse cover relations.


@dataclass(frozen=True)
class Lattice:
    """Finite set of subspaces closed under sum and intersection.

    ``members`` is canonically sorted; ``covers`` lists index pairs
    (i, j) with members[i] covered by members[j]; ``flags`` optionally
    labels each member (e.g. "hyperinvariant" / "characteristic-only").
    """

    members: tuple
    covers: tuple
    flags: tuple | None = None

    def __len__(self):
        return len(self.members)

    def subspaces(self):
        return set(self.members)

    def bottom(self):
        return self.members[0]

    def top(self):
        return self.members[-1]

    def flag_of(self, s):
        if self.flags is None:
            return None
        return self.flags[self.members.index(s)]


def build_lattice(subspaces, flags=None, check_closure=True):
    """Assemble a Lattice, verifying distinctness, bounds and closure.

    ``flags`` maps Subspace -> str (optional).  Cover relations are the
    transitive reduction of inclusion.
    """
    members = list(subspaces)
    if len(set(members)) != len(members):
        raise ValueError("duplicate subspaces in lattice construction")
    if not members:
        raise ValueError("empty lattice")
    field, n = members[0].field, members[0].n
    for s in members:
        if s.field != field or s.n != n:
            raise FieldMismatchError("lattice members in different ambient spaces")
    members.sort(key=lambda s: s.sort_key())
    mset = set(members)
    if members[0].dim != 0:
        raise ClosureError("lattice misses the zero subspace")
    if members[-1].dim != n:
        raise ClosureError("lattice misses the full space")
    if check_closure:
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                u, w = members[i], members[j]
                if u.sum(w) not in mset:
                    raise ClosureError(
                        f"not closed under sum: {subspace_label(u)} + {subspace_label(w)}"
                    )
                if u.intersect(w) not in mset:
                    raise ClosureError(
                        f"not closed under intersection: {subspace_label(u)} ∩ {subspace_label(w)}"
                    )
    less = [[False] * len(members) for _ in members]
    for i, u in enumerate(members):
        for j, w in enumerate(members):
            if i != j and u.dim < w.dim and w.contains(u):
                less[i][j] = True
    covers = []
    for i in range(len(members)):
        for j in range(len(members)):
            if not less[i][j]:
                continue
            if any(less[i][k] and less[k][j] for k in range(len(members))):
                continue
            covers.append((i, j))
    flag_tuple = None
    if flags is not None:
        flag_tuple = tuple(flags.get(s, "") for s in members)
    return Lattice(tuple(members), tuple(sorted(covers)), flag_tuple)


def subspace_label(s):
    """Human-readable basis label: "0", "V", or "<e2+e4, e3>"."""
    if s.is_zero:
        return "0"
    if s.is_full:
        return "V"
    parts = []
    for row in s.basis:
        terms = []
        for j, c in enumerate(row):
            if not c:
                continue
            cs = s.field.format_element(c)
            if cs == "1":
                terms.append(f"e{j + 1}")
            elif all(ch.isdigit() or ch in "-/" for ch in cs):
                terms.append(f"{cs}e{j + 1}")
            else:
                terms.append(f"({cs})e{j + 1}")
        parts.append("+".join(terms))
    return "<" + ", ".join(parts) + ">"


def to_dot(lattice, name="hasse"):
    """Deterministic Graphviz DOT text for the Hasse diagram."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, s in enumerate(lattice.members):
        label = subspace_label(s)
        if lattice.flags is not None and lattice.flags[i]:
            label += f" [{lattice.flags[i]}]"
        label = label.replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in lattice.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
