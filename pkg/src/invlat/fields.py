"""Exact base fields.

Three kinds of field are supported:

* ``QQ`` -- the rationals; elements are ``fractions.Fraction`` (always in
  lowest terms with positive denominator).
* ``FiniteField(p, k, modulus)`` -- GF(p^k) presented as Z_p[x] modulo a
  monic irreducible of degree k; elements carry a coefficient vector of
  length k over Z_p.  ``gf_build(p, k)`` picks the modulus
  deterministically (numerically least monic irreducible, coefficients
  read as base-p digits, constant term least significant) so results are
  reproducible.
* ``ExtensionField(modulus)`` -- a simple extension Q[t]/(m(t)) for a
  monic irreducible m over Q; elements are residue coefficient vectors of
  Fractions.  Used for the field generated by a semisimple operator over
  the rationals; the caller is responsible for m being irreducible
  (non-invertible residues raise).

All values are immutable; all operations are pure functions.
"""

from fractions import Fraction

from .errors import FieldMismatchError, InfiniteFieldError

__all__ = [
    "QQ",
    "RationalField",
    "FiniteField",
    "GFElem",
    "ExtensionField",
    "ExtElem",
    "gf_build",
    "is_prime",
]


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ----------------------------------------------------------------------
# Polynomials over Z_p as int tuples (ascending degree, no trailing zeros).
# Internal helpers only: they bootstrap GF(p^k) arithmetic and the modulus
# search without depending on the generic Poly class.


def _zp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _zp_add(a, b, p):
    n = max(len(a), len(b))
    return _zp_trim(
        ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)
    )


def _zp_sub(a, b, p):
    n = max(len(a), len(b))
    return _zp_trim(
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)
    )


def _zp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _zp_trim(out)


def _zp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(da - db + 1, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        coef = (a[-1] * inv_lead) % p
        q[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        while a and a[-1] == 0:
            a.pop()
    return _zp_trim(q), _zp_trim(a)


def _zp_rem(a, b, p):
    return _zp_divmod(a, b, p)[1]


def _zp_monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return _zp_trim((c * inv) % p for c in a)


def _zp_gcd(a, b, p):
    while b:
        a, b = b, _zp_rem(a, b, p)
    return _zp_monic(a, p)


def _zp_xgcd(a, b, p):
    # returns (g, u, v) with u*a + v*b = g, g monic
    r0, r1 = a, b
    u0, u1 = (1,), ()
    v0, v1 = (), (1,)
    while r1:
        q, r = _zp_divmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, _zp_sub(u0, _zp_mul(q, u1, p), p)
        v0, v1 = v1, _zp_sub(v0, _zp_mul(q, v1, p), p)
    if not r0:
        return (), u0, v0
    inv = pow(r0[-1], -1, p)
    scale = (inv % p,)
    return _zp_monic(r0, p), _zp_mul(scale, u0, p), _zp_mul(scale, v0, p)


def _zp_powmod(a, e, mod, p):
    result = (1,)
    base = _zp_rem(a, mod, p)
    while e:
        if e & 1:
            result = _zp_rem(_zp_mul(result, base, p), mod, p)
        base = _zp_rem(_zp_mul(base, base, p), mod, p)
        e >>= 1
    return result


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _zp_is_irreducible(f, p):
    """Rabin irreducibility test for f over Z_p."""
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    x = (0, 1)
    # x^(p^d) == x (mod f)
    if _zp_powmod(x, p**d, f, p) != _zp_rem(x, f, p):
        return False
    for t in _prime_divisors(d):
        h = _zp_sub(_zp_powmod(x, p ** (d // t), f, p), x, p)
        if _zp_gcd(h, f, p) != (1,):
            return False
    return True


# ----------------------------------------------------------------------


class RationalField:
    """The field of rational numbers; elements are Fraction values."""

    is_finite = False
    characteristic = 0
    order = None

    def element(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def sort_key(self, a):
        return a

    def format_element(self, a):
        return str(a)

    def elements(self):
        raise InfiniteFieldError("infinite field: QQ has no element enumeration")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class GFElem:
    """Element of GF(p^k): coefficient vector of length k over Z_p."""

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c  # int tuple, length k, already reduced

    def _check(self, other):
        if not isinstance(other, GFElem) or other.field != self.field:
            raise FieldMismatchError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return GFElem(self.field, tuple((a + b) % p for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return GFElem(self.field, tuple((a - b) % p for a, b in zip(self.c, other.c)))

    def __neg__(self):
        p = self.field.p
        return GFElem(self.field, tuple((-a) % p for a in self.c))

    def __mul__(self, other):
        self._check(other)
        f = self.field
        prod = _zp_mul(_zp_trim(self.c), _zp_trim(other.c), f.p)
        red = _zp_rem(prod, f.modulus, f.p)
        return GFElem(f, red + (0,) * (f.k - len(red)))

    def inverse(self):
        f = self.field
        a = _zp_trim(self.c)
        if not a:
            raise ZeroDivisionError("inverse of zero in " + repr(f))
        g, u, _ = _zp_xgcd(a, f.modulus, f.p)
        if g != (1,):
            raise ZeroDivisionError(f"{self!r} is not invertible (modulus not irreducible?)")
        u = _zp_rem(u, f.modulus, f.p)
        return GFElem(f, u + (0,) * (f.k - len(u)))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e):
        f = self.field
        if e < 0:
            return self.inverse() ** (-e)
        r = _zp_powmod(_zp_trim(self.c), e, f.modulus, f.p) if e else (1,)
        return GFElem(f, r + (0,) * (f.k - len(r)))

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        return isinstance(other, GFElem) and other.field == self.field and other.c == self.c

    def __hash__(self):
        return hash((self.field, self.c))

    def __repr__(self):
        return self.field.format_element(self)


class FiniteField:
    """GF(p^k) with a fixed monic irreducible modulus over Z_p.

    ``modulus`` is an int coefficient tuple (ascending degree, length k+1,
    leading coefficient 1).  Two fields compare equal iff (p, k, modulus)
    agree.
    """

    is_finite = True

    def __init__(self, p, k=1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not isinstance(k, int) or k < 1:
            raise ValueError("extension degree must be a positive integer")
        if modulus is None:
            modulus = _find_modulus(p, k)
        modulus = _zp_trim(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _zp_is_irreducible(modulus, p):
            raise ValueError("modulus is not irreducible over GF(%d)" % p)
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self.characteristic = p

    def element(self, value):
        if isinstance(value, GFElem):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} belongs to {value.field!r}, not {self!r}")
            return value
        if isinstance(value, int):
            # constant embedding of the prime field
            return GFElem(self, (value % self.p,) + (0,) * (self.k - 1))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes in {self!r}")
            num = value.numerator % self.p
            den = pow(value.denominator % self.p, -1, self.p)
            return GFElem(self, ((num * den) % self.p,) + (0,) * (self.k - 1))
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                raise ValueError(f"coefficient vector longer than {self.k}")
            c = tuple(int(v) % self.p for v in value)
            return GFElem(self, c + (0,) * (self.k - len(c)))
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def zero(self):
        return GFElem(self, (0,) * self.k)

    def one(self):
        return GFElem(self, (1,) + (0,) * (self.k - 1))

    def generator(self):
        """The residue class of x (equals the chosen root of the modulus)."""
        if self.k == 1:
            raise ValueError("prime field has no extension generator")
        return GFElem(self, (0, 1) + (0,) * (self.k - 2))

    def element_from_index(self, i):
        digits = []
        for _ in range(self.k):
            digits.append(i % self.p)
            i //= self.p
        return GFElem(self, tuple(digits))

    def index_of(self, a):
        i = 0
        for c in reversed(a.c):
            i = i * self.p + c
        return i

    def elements(self):
        """All field elements in index order (deterministic)."""
        for i in range(self.order):
            yield self.element_from_index(i)

    def sort_key(self, a):
        return self.index_of(a)

    def format_element(self, a):
        if self.k == 1:
            return str(a.c[0])
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = a.c[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "a" if i == 1 else f"a^{i}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(terms) if terms else "0"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.k == self.k
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        mod = _format_zp_poly(self.modulus)
        return f"GF({self.p}^{self.k})[{mod}]"


def _format_zp_poly(c):
    terms = []
    for i in range(len(c) - 1, -1, -1):
        ci = c[i]
        if ci == 0:
            continue
        if i == 0:
            terms.append(str(ci))
        else:
            var = "x" if i == 1 else f"x^{i}"
            terms.append(var if ci == 1 else f"{ci}{var}")
    return "+".join(terms) if terms else "0"


def _find_modulus(p, k):
    """Numerically least monic irreducible of degree k over Z_p."""
    for idx in range(p**k):
        digits = []
        i = idx
        for _ in range(k):
            digits.append(i % p)
            i //= p
        cand = _zp_trim(tuple(digits) + (1,))
        if _zp_is_irreducible(cand, p):
            return cand
    raise RuntimeError("no irreducible modulus found (impossible for prime p)")


def gf_build(p, k=1):
    """GF(p^k) with the deterministically chosen least monic irreducible modulus."""
    return FiniteField(p, k)


# ----------------------------------------------------------------------
# Q[t]/(m): helpers over Fraction coefficient tuples.


def _q_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _q_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _q_trim(out)


def _q_sub(a, b):
    n = max(len(a), len(b))
    return _q_trim(
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    )


def _q_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        coef = a[-1] / b[-1]
        q[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] -= coef * bi
        while a and a[-1] == 0:
            a.pop()
    return _q_trim(q), _q_trim(a)


def _q_xgcd(a, b):
    r0, r1 = a, b
    u0, u1 = (Fraction(1),), ()
    while r1:
        q, r = _q_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _q_sub(u0, _q_mul(q, u1))
    return r0, u0


class ExtElem:
    """Residue of Q[t] modulo the extension modulus."""

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c  # Fraction tuple, length field.k

    def _check(self, other):
        if not isinstance(other, ExtElem) or other.field != self.field:
            raise FieldMismatchError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._check(other)
        return ExtElem(self.field, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        self._check(other)
        return ExtElem(self.field, tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return ExtElem(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        self._check(other)
        f = self.field
        prod = _q_mul(_q_trim(self.c), _q_trim(other.c))
        _, red = _q_divmod(prod, f.modulus)
        return ExtElem(f, red + (Fraction(0),) * (f.k - len(red)))

    def inverse(self):
        f = self.field
        a = _q_trim(self.c)
        if not a:
            raise ZeroDivisionError("inverse of zero in " + repr(f))
        g, u = _q_xgcd(a, f.modulus)
        if len(g) != 1:
            raise ZeroDivisionError(f"{self!r} not invertible: modulus is reducible")
        u = _q_mul(u, (Fraction(1) / g[0],))
        _, u = _q_divmod(u, f.modulus)
        return ExtElem(f, u + (Fraction(0),) * (f.k - len(u)))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        return isinstance(other, ExtElem) and other.field == self.field and other.c == self.c

    def __hash__(self):
        return hash((self.field, self.c))

    def __repr__(self):
        return self.field.format_element(self)


class ExtensionField:
    """Q[t]/(m(t)) for a monic m over Q, assumed irreducible by the caller."""

    is_finite = False
    characteristic = 0
    order = None

    def __init__(self, modulus):
        mod = _q_trim(Fraction(c) for c in modulus)
        if len(mod) < 2:
            raise ValueError("extension modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("extension modulus must be monic")
        self.modulus = mod
        self.k = len(mod) - 1

    def element(self, value):
        if isinstance(value, ExtElem):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} belongs to {value.field!r}, not {self!r}")
            return value
        if isinstance(value, (int, str, Fraction)):
            return ExtElem(self, (Fraction(value),) + (Fraction(0),) * (self.k - 1))
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                raise ValueError(f"coefficient vector longer than {self.k}")
            c = tuple(Fraction(v) for v in value)
            return ExtElem(self, c + (Fraction(0),) * (self.k - len(c)))
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def zero(self):
        return ExtElem(self, (Fraction(0),) * self.k)

    def one(self):
        return ExtElem(self, (Fraction(1),) + (Fraction(0),) * (self.k - 1))

    def generator(self):
        return ExtElem(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.k - 2))

    def sort_key(self, a):
        return a.c

    def format_element(self, a):
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = a.c[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(terms) if terms else "0"

    def elements(self):
        raise InfiniteFieldError("infinite field: " + repr(self))

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("QQext", self.modulus))

    def __repr__(self):
        return f"QQ[t]/({_format_q_poly(self.modulus)})"


def _format_q_poly(c):
    terms = []
    for i in range(len(c) - 1, -1, -1):
        ci = c[i]
        if ci == 0:
            continue
        if i == 0:
            terms.append(str(ci))
        else:
            var = "t" if i == 1 else f"t^{i}"
            terms.append(var if ci == 1 else f"{ci}{var}")
    return "+".join(terms) if terms else "0"
