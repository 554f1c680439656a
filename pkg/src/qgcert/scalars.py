"""Exact arithmetic in Q, Q[q,q^-1] and the field Q(q).

A Scalar is a reduced fraction num/den of Laurent polynomials with rational
coefficients.  Canonical form: den is an ordinary polynomial in q (no negative
exponents) with nonzero constant term and leading coefficient 1, and
gcd(num, den) is a unit.  This makes equality a structural check.

No floating point anywhere; coefficients are fractions.Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

Rational = Fraction


class PoleError(ArithmeticError):
    """Raised when a Scalar is evaluated at a zero of its denominator."""

    def __init__(self, q0, order):
        super().__init__(f"pole of order {order} at q = {q0}")
        self.q0 = q0
        self.order = order


# ---------------------------------------------------------------------------
# Dense helpers for ordinary polynomials (lists of Fractions, index = degree).

def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    # b must be nonzero
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd(a, b):
    # monic gcd of ordinary polynomials over Q
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        lc = a[-1]
        a = [c / lc for c in a]
    return a


def _frac_gcd(values):
    # gcd over Q: gcd of numerators / lcm of denominators, positive
    num = 0
    den = 1
    for v in values:
        num = _int_gcd(num, v.numerator)
        den = den * v.denominator // _int_gcd(den, v.denominator)
    return Fraction(num, den)


class LaurentPoly:
    """Laurent polynomial over Q, stored as {exponent: coefficient}."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs:
            self.c = {e: v for e, v in coeffs.items() if v}
        else:
            self.c = {}

    @classmethod
    def const(cls, v):
        return cls({0: Fraction(v)})

    @classmethod
    def monomial(cls, v, e):
        return cls({e: Fraction(v)})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()})

    def __add__(self, other):
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                w = w + v
                if w:
                    c[e] = w
                else:
                    del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = c
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.c or not other.c:
            return LaurentPoly()
        c = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = c.get(e)
                if w is None:
                    c[e] = v1 * v2
                else:
                    w = w + v1 * v2
                    if w:
                        c[e] = w
                    else:
                        del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.c = c
        return out

    def scale(self, v):
        if not v:
            return LaurentPoly()
        return LaurentPoly({e: c * v for e, c in self.c.items()})

    def shift(self, k):
        """Multiply by q^k."""
        if k == 0:
            return self
        return LaurentPoly({e + k: v for e, v in self.c.items()})

    def min_exp(self):
        return min(self.c) if self.c else 0

    def max_exp(self):
        return max(self.c) if self.c else 0

    def subs_qinv(self):
        """The image under q -> q^-1."""
        return LaurentPoly({-e: v for e, v in self.c.items()})

    def content(self):
        """Positive rational gcd of the coefficients (0 for the zero poly)."""
        return _frac_gcd(self.c.values())

    def eval_at(self, q0):
        q0 = Fraction(q0)
        if q0 == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at q = 0")
        total = Fraction(0)
        for e, v in self.c.items():
            total += v * q0**e
        return total

    def to_dense(self):
        """Coefficient list of the ordinary-polynomial part; requires min_exp >= 0."""
        assert not self.c or self.min_exp() >= 0
        out = [Fraction(0)] * (self.max_exp() + 1 if self.c else 0)
        for e, v in self.c.items():
            out[e] = v
        return out

    @classmethod
    def from_dense(cls, p):
        return cls({e: v for e, v in enumerate(p) if v})

    def ord_at(self, q0):
        """Multiplicity of q0 as a root (0 if not a root)."""
        q0 = Fraction(q0)
        p = self.shift(-self.min_exp()).to_dense()
        order = 0
        while p:
            if sum(v * q0**e for e, v in enumerate(p)) != 0:
                break
            p, _ = _poly_divmod(p, [-Fraction(q0), Fraction(1)])
            order += 1
        return order

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({self.c!r})"


L_ZERO = LaurentPoly()
L_ONE = LaurentPoly.const(1)


class Scalar:
    """Element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num, den=None):
        if den is None:
            den = L_ONE
        if not den:
            raise ZeroDivisionError("zero denominator in Q(q)")
        if not num:
            self.num = L_ZERO
            self.den = L_ONE
            self._h = None
            return
        if den.c == L_ONE.c:
            self.num = num
            self.den = L_ONE
            self._h = None
            return
        # shift numerator and denominator to ordinary polynomials
        vn = num.min_exp()
        vd = den.min_exp()
        a = num.shift(-vn).to_dense()
        b = den.shift(-vd).to_dense()
        g = _poly_gcd(a, b)
        if len(g) > 1:
            a = _poly_divmod(a, g)[0]
            b = _poly_divmod(b, g)[0]
        lc = b[-1]
        if lc != 1:
            a = [v / lc for v in a]
            b = [v / lc for v in b]
        self.num = LaurentPoly.from_dense(a).shift(vn - vd)
        self.den = LaurentPoly.from_dense(b)
        self._h = None

    @classmethod
    def from_int(cls, v):
        return cls(LaurentPoly.const(v))

    @classmethod
    def from_fraction(cls, v):
        return cls(LaurentPoly.const(Fraction(v)))

    @classmethod
    def q_power(cls, e):
        return cls(LaurentPoly.monomial(1, e))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._h is None:
            self._h = hash((frozenset(self.num.c.items()), frozenset(self.den.c.items())))
        return self._h

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s.num = -self.num
        s.den = self.den
        s._h = None
        return s

    def __add__(self, other):
        if self.den.c == other.den.c:
            if self.den.c == L_ONE.c:
                s = Scalar.__new__(Scalar)
                s.num = self.num + other.num
                s.den = L_ONE
                s._h = None
                return s
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.den.c == L_ONE.c and other.den.c == L_ONE.c:
            s = Scalar.__new__(Scalar)
            s.num = self.num * other.num
            s.den = L_ONE
            s._h = None
            return s
        return Scalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(q)")
        return Scalar(self.num * other.den, self.den * other.num)

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverting zero in Q(q)")
        return Scalar(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = S_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def subs_qinv(self):
        return Scalar(self.num.subs_qinv(), self.den.subs_qinv())

    def specialize(self, q0):
        """Exact evaluation at a nonzero rational q0; PoleError at a pole."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise ZeroDivisionError("specialization requires q0 != 0")
        d = self.den.eval_at(q0)
        if d == 0:
            raise PoleError(q0, self.den.ord_at(q0))
        return self.num.eval_at(q0) / d

    def is_regular_at(self, q0):
        return self.den.eval_at(Fraction(q0)) != 0

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


S_ZERO = Scalar(L_ZERO)
S_ONE = Scalar(L_ONE)
S_Q = Scalar.q_power(1)


def sc(v):
    """Coerce an int or Fraction to a Scalar."""
    if isinstance(v, Scalar):
        return v
    return Scalar(LaurentPoly.const(Fraction(v)))


def scalar_arith(a, b, op):
    """Field arithmetic dispatcher: op in {'add','sub','mul','div'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def specialize(a, q0):
    return a.specialize(q0)


def quantum_integer(n, d=1):
    """[n]_{q^d} = (q^{dn} - q^{-dn})/(q^d - q^{-d}) as a Scalar."""
    if d <= 0:
        raise ValueError("d must be positive")
    if n == 0:
        return S_ZERO
    sign = 1
    if n < 0:
        sign, n = -1, -n
    return Scalar(LaurentPoly({d * (n - 1 - 2 * j): Fraction(sign) for j in range(n)}))


def quantum_factorial(n, d=1):
    out = S_ONE
    for j in range(2, n + 1):
        out = out * quantum_integer(j, d)
    return out


def quantum_binomial(m, k, d=1):
    """Gaussian binomial [m choose k]_{q^d}."""
    if k < 0 or k > m:
        return S_ZERO
    out = S_ONE
    for j in range(1, k + 1):
        out = out * quantum_integer(m - k + j, d) / quantum_integer(j, d)
    return out


def _poly_lcm_dense(a, b):
    g = _poly_gcd(a, b)
    lcm = _poly_divmod([x for x in a], g)[0]
    out = [Fraction(0)] * (len(lcm) + len(b) - 1)
    for i, x in enumerate(lcm):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def laurent_content(entries):
    """Content scalar c of a nonzero family of Scalars.

    Dividing every entry by c yields Laurent-polynomial entries whose
    coefficients have gcd 1 and whose lowest total q-exponent is 0 (this
    resolves the unit ambiguity q^n deterministically).
    """
    entries = [e for e in entries if e]
    if not entries:
        raise ValueError("content of the zero matrix is undefined")
    den = [Fraction(1)]
    for e in entries:
        den = _poly_lcm_dense(den, e.den.to_dense())
    den_poly = LaurentPoly.from_dense(den)
    coeffs = []
    vmin = None
    for e in entries:
        cofactor = _poly_divmod(den, e.den.to_dense())[0]
        cleared = e.num * LaurentPoly.from_dense(cofactor)
        coeffs.extend(cleared.c.values())
        m = cleared.min_exp()
        vmin = m if vmin is None else min(vmin, m)
    g = _frac_gcd(coeffs)
    return Scalar(LaurentPoly.monomial(g, vmin), den_poly)


# ---------------------------------------------------------------------------
# Text serialization: "q^2 - 3 + 2*q^-1", quotients as "(num)/(den)".

def _format_term(coef, exp, first):
    neg = coef < 0
    coef = -coef if neg else coef
    if exp == 0:
        body = str(coef)
    else:
        qp = "q" if exp == 1 else f"q^{exp}"
        body = qp if coef == 1 else f"{coef}*{qp}"
    if first:
        return ("-" + body) if neg else body
    return (" - " if neg else " + ") + body


def format_laurent(p):
    if not p.c:
        return "0"
    parts = []
    for e in sorted(p.c, reverse=True):
        parts.append(_format_term(p.c[e], e, not parts))
    return "".join(parts)


def format_scalar(s):
    if s.den.c == L_ONE.c:
        return format_laurent(s.num)
    return f"({format_laurent(s.num)})/({format_laurent(s.den)})"


def _parse_term(tok):
    tok = tok.strip()
    if "q" not in tok:
        return Fraction(tok), 0
    if "*" in tok:
        coef_s, qp = tok.split("*")
        coef = Fraction(coef_s)
    else:
        qp = tok
        coef = Fraction(1)
    qp = qp.strip()
    if qp == "q":
        return coef, 1
    assert qp.startswith("q^"), f"bad term {tok!r}"
    return coef, int(qp[2:])


def parse_laurent(text):
    text = text.strip()
    if text == "0":
        return LaurentPoly()
    # normalize to a list of signed terms
    if text.startswith("-"):
        text = "0 - " + text[1:]
    elif not text.startswith("0 "):
        text = "0 + " + text
    coeffs = {}
    # splitting on spaces is safe: coefficients never contain spaces
    terms = []
    pending_sign = 1
    for chunk in text[2:].split(" "):
        if chunk == "+":
            pending_sign = 1
        elif chunk == "-":
            pending_sign = -1
        elif chunk:
            terms.append((pending_sign, chunk))
    for sgn, tok in terms:
        coef, exp = _parse_term(tok)
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sgn * coef
    return LaurentPoly(coeffs)


def parse_scalar(text):
    text = text.strip()
    if text.startswith("(") and ")/(" in text and text.endswith(")"):
        num_s, den_s = text[1:-1].split(")/(")
        return Scalar(parse_laurent(num_s), parse_laurent(den_s))
    return Scalar(parse_laurent(text))
