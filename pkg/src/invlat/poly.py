"""Dense univariate polynomials over an exact field.

Coefficients are stored lowest degree first with no trailing zeros; the
zero polynomial has an empty coefficient tuple and ``degree == -1`` (a
sentinel, never meaningful numerically).

Besides ring arithmetic this module provides monic gcd, separability
testing, and full factorization: over a finite field by squarefree
decomposition + distinct-degree splitting + seeded Cantor-Zassenhaus,
over Q by squarefree decomposition + rational-root extraction for the
easy degrees, with a verified user hint for anything harder.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import FactorHintError, FieldMismatchError
from .fields import QQ, FiniteField, RationalField

__all__ = [
    "Poly",
    "poly_gcd",
    "poly_xgcd",
    "poly_lcm",
    "is_separable",
    "is_irreducible",
    "Factorization",
    "factor",
    "parse_poly",
    "format_poly",
]


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        self.field = field
        cs = [field.element(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    # -- basics -------------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 is the zero-polynomial sentinel."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def coefficient(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero()

    def monic(self):
        if self.is_zero or self.is_monic:
            return self
        inv = self.field.one() / self.lead
        return Poly(self.field, tuple(c * inv for c in self.coeffs))

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {other!r}")
        if other.field != self.field:
            raise FieldMismatchError(f"polynomials over different fields: {self.field!r} vs {other.field!r}")

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            self.field,
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)),
        )

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            self.field,
            tuple(self.coefficient(i) - other.coefficient(i) for i in range(n)),
        )

    def __neg__(self):
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field.element(other)
            return Poly(self.field, tuple(a * c for a in self.coeffs))
        self._check(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.field.zero()] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = self.field.one() / other.lead
        while len(rem) - 1 >= db and rem:
            shift = len(rem) - 1 - db
            coef = rem[-1] * inv_lead
            q[shift] = coef
            for i, bi in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - coef * bi
            while rem and not rem[-1]:
                rem.pop()
        return Poly(self.field, tuple(q)), Poly(self.field, tuple(rem))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation at a field element."""
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self):
        if self.degree < 1:
            return Poly.zero(self.field)
        cs = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            s = self.field.zero()
            for _ in range(i):
                s = s + c
            cs.append(s)
        return Poly(self.field, tuple(cs))

    def shift_compose_pth_root(self):
        """For f with f' = 0 over GF(p^k): the g with g(x^p) = f."""
        fld = self.field
        p = fld.p
        out = []
        for i in range(0, len(self.coeffs), p):
            # Frobenius inverse on GF(p^k) is c -> c^(p^(k-1))
            out.append(self.coeffs[i] ** (p ** (fld.k - 1)))
        return Poly(fld, tuple(out))

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(self.field.sort_key(c) for c in self.coeffs))

    def __repr__(self):
        return format_poly(self)


# ----------------------------------------------------------------------


def poly_gcd(f, g):
    """Monic greatest common divisor; poly_gcd(f, 0) = monic(f)."""
    f._check(g)
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def poly_xgcd(f, g):
    """(d, u, v) with u*f + v*g = d, d monic."""
    f._check(g)
    r0, r1 = f, g
    u0, u1 = Poly.one(f.field), Poly.zero(f.field)
    v0, v1 = Poly.zero(f.field), Poly.one(f.field)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero:
        return r0, u0, v0
    inv = Poly.constant(f.field, f.field.one() / r0.lead)
    return r0.monic(), inv * u0, inv * v0


def poly_lcm(f, g):
    if f.is_zero or g.is_zero:
        return Poly.zero(f.field)
    return ((f * g) // poly_gcd(f, g)).monic()


def is_separable(f):
    """True iff gcd(f, f') = 1.  Errors on constants."""
    if f.degree < 1:
        raise ValueError("separability is undefined for constant polynomials")
    return poly_gcd(f, f.derivative()).degree == 0


def is_irreducible(f):
    """Irreducibility over the polynomial's own field.

    Finite fields: Rabin's criterion.  Q: decided for degree <= 3 via
    rational roots; larger degrees raise (callers use factorization hints
    there).
    """
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    fld = f.field
    if isinstance(fld, FiniteField):
        q = fld.order
        x = Poly.x(fld)
        if _powmod(x, q**f.degree, f) != x % f:
            return False
        d = f.degree
        t = 2
        divs = []
        dd = d
        while t * t <= dd:
            if dd % t == 0:
                divs.append(t)
                while dd % t == 0:
                    dd //= t
            t += 1
        if dd > 1:
            divs.append(dd)
        for t in divs:
            h = _powmod(x, q ** (d // t), f) - (x % f)
            if poly_gcd(h, f).degree != 0:
                return False
        return True
    if isinstance(fld, RationalField):
        if f.degree <= 3:
            return not _rational_roots(f)
        raise ValueError("irreducibility over QQ undecided for degree > 3; supply a hint")
    raise TypeError(f"irreducibility test unsupported over {fld!r}")


def _powmod(base, e, mod):
    result = Poly.one(base.field) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


# ----------------------------------------------------------------------
# Factorization.


@dataclass(frozen=True)
class Factorization:
    """Factors as (irreducible monic Poly, multiplicity), sorted canonically.

    ``trusted`` marks rational factorizations whose irreducibility rests on
    an unverifiable user hint (degree >= 4 factors).  ``seed`` is the PRNG
    seed used by the equal-degree splitting, recorded for reproducibility.
    """

    factors: tuple
    trusted: bool = False
    seed: int = 0

    def expand(self):
        f = Poly.one(self.factors[0][0].field)
        for p, m in self.factors:
            f = f * p**m
        return f

    def __iter__(self):
        return iter(self.factors)


def factor(f, *, hint=None, seed=0):
    """Factor a monic polynomial of degree >= 1 into irreducible powers.

    Finite fields need no hint.  Over Q a hint (iterable of (Poly, mult))
    is verified and used; without one, squarefree splitting plus rational
    roots handles everything whose root-free parts have degree <= 3.
    """
    if not f.is_monic:
        raise ValueError("factor() requires a monic polynomial")
    if f.degree < 1:
        raise ValueError("factor() requires degree >= 1")
    fld = f.field
    if isinstance(fld, FiniteField):
        pairs = []
        for g, mult in _squarefree_decomposition(f):
            for h in _factor_squarefree(g, random.Random(seed)):
                pairs.append((h, mult))
        pairs.sort(key=lambda pm: pm[0].sort_key())
        result = Factorization(tuple(pairs), trusted=False, seed=seed)
        _verify_factorization(f, result)
        return result
    if isinstance(fld, RationalField):
        if hint is not None:
            return _verified_hint(f, hint, seed)
        return _factor_rationals(f, seed)
    raise TypeError(f"factorization unsupported over {fld!r}")


def _verify_factorization(f, result):
    prod = Poly.one(f.field)
    for p, m in result.factors:
        if not p.is_monic:
            raise FactorHintError(f"factor {p!r} is not monic")
        prod = prod * p**m
    if prod != f:
        raise FactorHintError("product of factors does not reproduce the input")
    fs = [p for p, _ in result.factors]
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if poly_gcd(fs[i], fs[j]).degree != 0:
                raise FactorHintError(f"factors {fs[i]!r} and {fs[j]!r} are not coprime")
    if not result.trusted:
        for p, _ in result.factors:
            if not is_irreducible(p):
                raise FactorHintError(f"claimed factor {p!r} is reducible")


def _squarefree_decomposition(f):
    """Multiplicity-graded squarefree split, characteristic-p aware."""
    fld = f.field
    out = []
    df = f.derivative()
    if df.is_zero:
        g = f.shift_compose_pth_root()
        for h, m in _squarefree_decomposition(g):
            out.append((h, m * fld.p))
        return out
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        g = c.shift_compose_pth_root()
        for h, m in _squarefree_decomposition(g):
            out.append((h, m * fld.p))
    return out


def _factor_squarefree(f, rng):
    """Irreducible factors of a squarefree monic f over a finite field."""
    out = []
    for g, d in _distinct_degree_split(f):
        out.extend(_equal_degree_split(g, d, rng))
    return out


def _distinct_degree_split(f):
    fld = f.field
    q = fld.order
    x = Poly.x(fld)
    pieces = []
    h = x
    d = 0
    rest = f
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            pieces.append((rest, rest.degree))
            break
        h = _powmod(h, q, rest)
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            pieces.append((g, d))
            rest = rest // g
            h = h % rest
    return pieces


def _equal_degree_split(f, d, rng):
    """Cantor-Zassenhaus: f squarefree, all factors of degree d."""
    fld = f.field
    if f.degree == d:
        return [f.monic()]
    q = fld.order
    while True:
        h = Poly(fld, tuple(fld.element_from_index(rng.randrange(q)) for _ in range(f.degree)))
        if h.degree < 1:
            continue
        g = poly_gcd(h, f)
        if 0 < g.degree < f.degree:
            break
        if fld.p == 2:
            # trace map over GF(2^k): T(h) = h + h^2 + ... + h^(2^(d*k-1))
            t = Poly.zero(fld)
            acc = h % f
            for _ in range(d * fld.k):
                t = (t + acc) % f
                acc = (acc * acc) % f
            g = poly_gcd(t, f)
        else:
            t = _powmod(h, (q**d - 1) // 2, f) - Poly.one(fld)
            g = poly_gcd(t, f)
        if 0 < g.degree < f.degree:
            break
    left = _equal_degree_split(g.monic(), d, rng)
    right = _equal_degree_split((f // g).monic(), d, rng)
    return sorted(left + right, key=lambda p: p.sort_key())


def _rational_roots(f):
    """All rational roots of f with multiplicity, via the rational root theorem."""
    from math import gcd

    den = 1
    for c in f.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    # strip powers of x first
    roots = []
    low = 0
    while low < len(ints) and ints[low] == 0:
        low += 1
    if low:
        roots.extend([Fraction(0)] * low)
        ints = ints[low:]
    if len(ints) <= 1:
        return roots
    a0, aN = abs(ints[0]), abs(ints[-1])
    cands = set()
    for pnum in _divisors(a0):
        for pden in _divisors(aN):
            cands.add(Fraction(pnum, pden))
            cands.add(Fraction(-pnum, pden))
    poly = Poly(QQ, [Fraction(c) for c in ints])
    for r in sorted(cands):
        while poly.degree > 0 and not poly(r):
            roots.append(r)
            poly = poly // Poly(QQ, (-r, 1))
    return roots


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _factor_rationals(f, seed):
    pairs = {}
    for g, mult in _squarefree_decomposition(f):
        rest = g
        for r in _rational_roots(g):
            lin = Poly(QQ, (-r, 1))
            pairs[lin] = pairs.get(lin, 0) + mult
            rest = rest // lin
        if rest.degree == 0:
            continue
        if rest.degree > 3:
            raise FactorHintError(
                f"factorization hint required: degree-{rest.degree} root-free part {rest!r} over QQ"
            )
        # degree 2 or 3 with no rational root is irreducible
        pairs[rest.monic()] = pairs.get(rest.monic(), 0) + mult
    items = sorted(pairs.items(), key=lambda pm: pm[0].sort_key())
    result = Factorization(tuple(items), trusted=False, seed=seed)
    _verify_factorization(f, result)
    return result


def _verified_hint(f, hint, seed):
    pairs = []
    trusted = False
    for p, m in hint:
        if not isinstance(p, Poly):
            raise FactorHintError("hint entries must be (Poly, multiplicity)")
        if p.field != f.field:
            raise FieldMismatchError("hint factor over a different field")
        if int(m) < 1:
            raise FactorHintError("hint multiplicities must be positive")
        pairs.append((p.monic(), int(m)))
    pairs.sort(key=lambda pm: pm[0].sort_key())
    for p, _ in pairs:
        if p.degree > 3:
            trusted = True
        elif not is_irreducible(p):
            raise FactorHintError(f"hint factor {p!r} is reducible over QQ")
    result = Factorization(tuple(pairs), trusted=trusted, seed=seed)
    # always verify product and coprimality; skip the (impossible) deg>3 check
    prod = Poly.one(f.field)
    for p, m in pairs:
        prod = prod * p**m
    if prod != f:
        raise FactorHintError("hint product does not reproduce the polynomial")
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if poly_gcd(pairs[i][0], pairs[j][0]).degree != 0:
                raise FactorHintError("hint factors are not pairwise coprime")
    return result


# ----------------------------------------------------------------------
# Text syntax: "x^2+x+1", decimal coefficients, "a/b" fractions over Q,
# "[c0,c1,...]" coefficient-vector literals over GF(p^k).


def format_poly(f, var="x"):
    if f.is_zero:
        return "0"
    fld = f.field
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.coefficient(i)
        if not c:
            continue
        cs = _format_coeff(fld, c)
        if i == 0:
            terms.append(cs)
        else:
            v = var if i == 1 else f"{var}^{i}"
            terms.append(v if cs == "1" else f"{cs}{v}")
    out = terms[0]
    for t in terms[1:]:
        out += "+" + t if not t.startswith("-") else t
    return out


def _format_coeff(fld, c):
    if isinstance(fld, FiniteField):
        if fld.k == 1:
            return str(c.c[0])
        return "[" + ",".join(str(d) for d in c.c) + "]"
    return str(c)


def parse_poly(text, field, var="x"):
    """Parse the CLI polynomial syntax into a Poly over ``field``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    terms = []
    buf = ""
    depth = 0
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and buf not in ("", "+", "-"):
            terms.append(buf)
            buf = ch
        else:
            buf += ch
    terms.append(buf)
    coeffs = {}
    for term in terms:
        sign = 1
        t = term
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        if not t:
            raise ValueError(f"malformed term {term!r}")
        if var in t:
            head, _, tail = t.partition(var)
            head = head.rstrip("*")
            exp = 1
            if tail:
                if not tail.startswith("^"):
                    raise ValueError(f"malformed term {term!r}")
                exp = int(tail[1:])
            cstr = head if head else "1"
        else:
            cstr = t
            exp = 0
        c = _parse_coeff(cstr, field)
        if sign < 0:
            c = -c
        coeffs[exp] = coeffs.get(exp, field.zero()) + c
    deg = max(coeffs) if coeffs else 0
    return Poly(field, tuple(coeffs.get(i, field.zero()) for i in range(deg + 1)))


def _parse_coeff(s, field):
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"malformed coefficient vector {s!r}")
        parts = [p for p in s[1:-1].split(",") if p]
        return field.element([int(p) for p in parts])
    if "/" in s:
        return field.element(Fraction(s))
    return field.element(int(s))
