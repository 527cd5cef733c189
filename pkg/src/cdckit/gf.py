"""Exact arithmetic in GF(q) and GF(q^m) for small prime powers q.

Elements of GF(q) are integers 0..q-1 encoding base-p coefficient vectors
(little-endian: digit i is the coefficient of t^i).  Extension-field elements
are length-m tuples over the base field in the fixed polynomial basis
1, t, ..., t^(m-1).  All moduli are fixed and deterministic so downstream
constructions and coset enumerations are bit-reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import BadArguments, DegreeTooLarge, UnsupportedOrder, VerificationFailed

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# Lexicographically smallest monic irreducible polynomial per (p, e),
# ascending coefficients (constant term first, leading 1 last).
_BASE_MODULI = {
    (2, 2): (1, 1, 1),      # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),   # t^3 + t + 1
    (3, 2): (1, 0, 1),      # t^2 + 1
}


def _factor(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            if not out or out[-1] != d:
                out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldCtx:
    """Arithmetic context for GF(q), q = p^e."""

    q: int
    p: int
    e: int
    modulus: tuple[int, ...]
    generator: int
    exp: tuple[int, ...] = dc_field(repr=False)
    log: tuple[int, ...] = dc_field(repr=False)
    _add: tuple[tuple[int, ...], ...] = dc_field(repr=False)
    _mul: tuple[tuple[int, ...], ...] = dc_field(repr=False)

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self.neg(b)]

    def neg(self, a):
        if self.p == 2 or a == 0:
            return a
        digits = [(-d) % self.p for d in self._digits(a)]
        return self._undigits(digits)

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if a == 0:
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def elements(self):
        return range(self.q)

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, digits):
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists over GF(p) and reduce by a monic modulus."""
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    deg = len(modulus) - 1
    for i in range(len(res) - 1, deg - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(deg):
                res[i - deg + j] = (res[i - deg + j] - c * modulus[j]) % p
    return res[:deg]


def _verify_axioms(ctx):
    els = range(ctx.q)
    for a in els:
        if ctx.add(a, 0) != a or ctx.mul(a, 1) != a:
            raise VerificationFailed("identity axiom fails")
        if a and ctx.mul(a, ctx.inv(a)) != 1:
            raise VerificationFailed("inverse axiom fails")
        for b in els:
            if ctx.add(a, b) != ctx.add(b, a) or ctx.mul(a, b) != ctx.mul(b, a):
                raise VerificationFailed("commutativity fails")
            for c in els:
                if ctx.add(ctx.add(a, b), c) != ctx.add(a, ctx.add(b, c)):
                    raise VerificationFailed("additive associativity fails")
                if ctx.mul(ctx.mul(a, b), c) != ctx.mul(a, ctx.mul(b, c)):
                    raise VerificationFailed("multiplicative associativity fails")
                if ctx.mul(a, ctx.add(b, c)) != ctx.add(ctx.mul(a, b), ctx.mul(a, c)):
                    raise VerificationFailed("distributivity fails")


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldCtx:
    """Build (and exhaustively verify) the GF(q) context for a supported q."""
    if q not in SUPPORTED_ORDERS:
        raise UnsupportedOrder(f"q={q} not in supported orders {SUPPORTED_ORDERS}")
    for p in (2, 3, 5, 7):
        e = 0
        n = q
        while n % p == 0:
            n //= p
            e += 1
        if n == 1:
            break
    modulus = _BASE_MODULI.get((p, e), (0, 1) if e == 1 else None)

    def digits(a):
        out = []
        for _ in range(e):
            out.append(a % p)
            a //= p
        return out

    def undigits(ds):
        v = 0
        for d in reversed(ds):
            v = v * p + d
        return v

    def mul_raw(a, b):
        if e == 1:
            return (a * b) % p
        return undigits(_poly_mulmod(digits(a), digits(b), modulus, p))

    # smallest element of full multiplicative order is the table generator
    generator = None
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = mul_raw(x, g)
            order += 1
        if order == q - 1:
            generator = g
            break
    if generator is None:
        raise VerificationFailed(f"no generator found for q={q}")

    exp = [1] * (q - 1)
    log = [-1] * q
    log[1] = 0
    x = 1
    for i in range(1, q - 1):
        x = mul_raw(x, generator)
        exp[i] = x
        log[x] = i

    add_t = tuple(
        tuple(undigits([(da + db) % p for da, db in zip(digits(a), digits(b))])
              for b in range(q))
        for a in range(q)
    )
    mul_t = tuple(tuple(mul_raw(a, b) for b in range(q)) for a in range(q))

    ctx = FieldCtx(q=q, p=p, e=e, modulus=modulus, generator=generator,
                   exp=tuple(exp), log=tuple(log), _add=add_t, _mul=mul_t)
    _verify_axioms(ctx)
    return ctx


# ---------------------------------------------------------------------------
# extension fields GF(q^m)
# ---------------------------------------------------------------------------

def _ext_poly_is_irreducible(base: FieldCtx, coeffs):
    """Ben-Or test: f of degree m is irreducible over GF(q) iff
    gcd(x^(q^d) - x, f) = 1 for all d <= m/2."""
    m = len(coeffs) - 1
    q = base.q

    def pmulmod(a, b):
        res = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    res[i + j] = base.add(res[i + j], base.mul(ai, bj))
        for i in range(len(res) - 1, m - 1, -1):
            c = res[i]
            if c:
                res[i] = 0
                for j in range(m):
                    res[i - m + j] = base.sub(res[i - m + j], base.mul(c, coeffs[j]))
        out = res[:m]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def ppowmod(a, k):
        result = [1]
        while k:
            if k & 1:
                result = pmulmod(result, a)
            a = pmulmod(a, a)
            k >>= 1
        return result

    def ptrim(a):
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        return a

    def pgcd(a, b):
        a, b = ptrim(list(a)), ptrim(list(b))
        while any(b):
            while len(a) >= len(b):
                shift = len(a) - len(b)
                f = base.div(a[-1], b[-1])
                for j in range(len(b)):
                    a[shift + j] = base.sub(a[shift + j], base.mul(f, b[j]))
                ptrim(a)
                if not any(a):
                    break
            a, b = b, a
        return ptrim(a)

    x = [0, 1]
    xq = [0, 1]
    for _ in range(1, m // 2 + 1):
        xq = ppowmod(xq, q)
        diff = [base.sub(c, xc) for c, xc in
                itertools.zip_longest(xq, x, fillvalue=0)]
        if not any(diff):
            return False
        g = pgcd(list(coeffs), diff)
        if len(g) > 1:
            return False
    return True


@dataclass(frozen=True)
class ExtFieldCtx:
    """Arithmetic context for GF(q^m) over a FieldCtx for GF(q)."""

    base: FieldCtx
    m: int
    modulus: tuple[int, ...]
    _reduction: tuple[tuple[int, ...], ...] = dc_field(repr=False)

    @property
    def order(self):
        return self.base.q ** self.m

    def zero(self):
        return (0,) * self.m

    def one(self):
        return (1,) + (0,) * (self.m - 1)

    def basis(self):
        """Polynomial basis 1, t, ..., t^(m-1)."""
        out = []
        for i in range(self.m):
            e = [0] * self.m
            e[i] = 1
            out.append(tuple(e))
        return tuple(out)

    def element(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != self.m:
            raise BadArguments("coefficient vector of wrong length")
        return coeffs

    def elements(self):
        return (tuple(reversed(t)) for t in
                itertools.product(self.base.elements(), repeat=self.m))

    def add(self, x, y):
        b = self.base
        return tuple(b.add(a, c) for a, c in zip(x, y))

    def sub(self, x, y):
        b = self.base
        return tuple(b.sub(a, c) for a, c in zip(x, y))

    def scalar_mul(self, c, x):
        b = self.base
        return tuple(b.mul(c, a) for a in x)

    def mul(self, x, y):
        b = self.base
        m = self.m
        res = [0] * (2 * m - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        res[i + j] = b.add(res[i + j], b.mul(xi, yj))
        out = list(res[:m])
        for i in range(m, 2 * m - 1):
            c = res[i]
            if c:
                red = self._reduction[i - m]
                for j in range(m):
                    out[j] = b.add(out[j], b.mul(c, red[j]))
        return tuple(out)

    def pow(self, x, k):
        result = self.one()
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, x):
        if not any(x):
            raise ZeroDivisionError("inverse of 0 in GF(%d^%d)" % (self.base.q, self.m))
        return self.pow(x, self.order - 2)

    def is_zero(self, x):
        return not any(x)


@lru_cache(maxsize=None)
def ext_new(q: int, m: int) -> ExtFieldCtx:
    """GF(q^m) with the smallest monic irreducible modulus of degree m."""
    base = field_new(q)
    if not 1 <= m <= 16:
        raise DegreeTooLarge(f"extension degree m={m} outside 1..16")
    if m == 1:
        coeffs = (0, 1)
    else:
        coeffs = None
        # enumerate monic degree-m polynomials in ascending integer encoding
        for code in range(q ** m):
            c = []
            v = code
            for _ in range(m):
                c.append(v % q)
                v //= q
            cand = tuple(c) + (1,)
            if cand[0] == 0:
                continue  # reducible: divisible by t
            if _ext_poly_is_irreducible(base, cand):
                coeffs = cand
                break
        if coeffs is None:
            raise VerificationFailed(f"no irreducible polynomial found for q={q}, m={m}")

    # reduction rows: t^(m+i) expressed in the polynomial basis
    b = base
    reduction = []
    row = [b.neg(c) for c in coeffs[:m]]  # t^m
    reduction.append(tuple(row))
    for _ in range(m - 2):
        shifted = [0] + row[:-1]
        c = row[-1]
        if c:
            for j in range(m):
                shifted[j] = b.add(shifted[j], b.mul(c, b.neg(coeffs[j])))
        row = shifted
        reduction.append(tuple(row))
    return ExtFieldCtx(base=base, m=m, modulus=coeffs, _reduction=tuple(reduction))


def frobenius(ctx: ExtFieldCtx, x, i: int):
    """x -> x^(q^i), the i-fold base-field power map."""
    return ctx.pow(x, ctx.base.q ** (i % ctx.m))


def expand_rows(ctx: ExtFieldCtx, v):
    """Expand a GF(q^m) vector into the m x n matrix of basis coordinates.

    Column j holds the coefficient vector of v[j] in the polynomial basis.
    """
    from .linalg import MatGF

    n = len(v)
    rows = [[v[j][i] for j in range(n)] for i in range(ctx.m)]
    return MatGF(ctx.base.q, rows)
