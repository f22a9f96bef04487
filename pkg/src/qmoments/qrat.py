"""Exact rational functions in one formal parameter, integer coefficients.

A UniRat is a reduced fraction of dense integer-coefficient polynomials.
The parameter name (e.g. "q" or "t") is part of the value: combining values
with different names raises, and conversions (renaming, q -> 1/q, q -> q^k)
are explicit.  Constants carry no parameter name at all.
"""

from fractions import Fraction
from math import gcd

from .errors import ParamMismatch

# ---------------------------------------------------------------------------
# dense polynomial helpers: ascending coefficient tuples, () is the zero poly


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul_school(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pack_signed(c, w):
    pos = bytearray(w * len(c))
    neg = bytearray(w * len(c))
    for i, x in enumerate(c):
        if x > 0:
            pos[i * w : i * w + (x.bit_length() + 7) // 8] = x.to_bytes(
                (x.bit_length() + 7) // 8, "little"
            )
        elif x < 0:
            y = -x
            neg[i * w : i * w + (y.bit_length() + 7) // 8] = y.to_bytes(
                (y.bit_length() + 7) // 8, "little"
            )
    return int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")


def _pmul_kron(a, b):
    # Kronecker substitution: evaluate at 2^s, one big multiply, unpack.
    nt = len(a) + len(b) - 1
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bound = ma * mb * min(len(a), len(b))
    s = ((bound.bit_length() + 2 + 7) // 8) * 8
    w = s // 8
    p = _pack_signed(a, w) * _pack_signed(b, w)
    half = 1 << (s - 1)
    # add `half` to every digit so all digits are nonnegative: no carries
    p += half * (((1 << (s * nt)) - 1) // ((1 << s) - 1))
    raw = p.to_bytes(w * nt + 8, "little")
    out = [int.from_bytes(raw[i * w : (i + 1) * w], "little") - half for i in range(nt)]
    return _trim(out)


def _pmul(a, b):
    if not a or not b:
        return ()
    if min(len(a), len(b)) < 40:
        return _pmul_school(a, b)
    return _pmul_kron(a, b)


def _pshift(a, k):
    """Multiply by x^k, k >= 0."""
    return ((0,) * k + tuple(a)) if a else ()


def _pcontent(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def _pprim(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = _pcontent(a)
    if a[-1] < 0:
        g = -g
    if g != 1:
        a = tuple(x // g for x in a)
    return a


def _prem(a, b):
    """Pseudo-remainder of a by b (b nonzero)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        top = r[-1]
        if top == 0:
            r.pop()
            continue
        r = [lb * x for x in r]
        off = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[off + i] -= top * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def _pgcd(a, b):
    """Primitive gcd via the primitive PRS; result has positive lead."""
    a, b = _pprim(a), _pprim(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (1,)
        r = _pprim(_prem(a, b))
        a, b = b, r
    return a


def _pexactdiv(a, b):
    """Exact polynomial division over the integers; raises if inexact."""
    if not a:
        return ()
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    nq = len(a) - db
    if nq <= 0:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * nq
    for k in range(nq - 1, -1, -1):
        c = r[k + db]
        if c:
            cq, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = cq
            for i, bc in enumerate(b):
                r[k + i] -= cq * bc
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _pval(a):
    """Index of the lowest nonzero coefficient (a nonzero)."""
    for i, x in enumerate(a):
        if x:
            return i
    raise ValueError("zero polynomial has no valuation")


def _ismono(a):
    return bool(a) and not any(a[:-1])


def _peval(a, x):
    v = Fraction(0)
    for c in reversed(a):
        v = v * x + c
    return v


def _normalize(num, den):
    num, den = _trim(num), _trim(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    # common power of the parameter
    vd = _pval(den)
    if vd:
        vn = _pval(num)
        v = vn if vn < vd else vd
        if v:
            num, den = num[v:], den[v:]
    if den == (1,):
        return num, den
    if len(den) == 1:
        d = den[0]
        g = gcd(_pcontent(num), d) * (-1 if d < 0 else 1)
        if g != 1:
            num = tuple(x // g for x in num)
            d //= g
        return num, (d,)
    if _ismono(den):
        # num has a nonzero constant term here, so only content is shared
        g = gcd(_pcontent(num), den[-1]) * (-1 if den[-1] < 0 else 1)
    elif _ismono(num):
        # only integer content can be shared once the q-power is stripped
        g = gcd(num[-1], _pcontent(den)) * (-1 if den[-1] < 0 else 1)
    else:
        gp = _pgcd(num, den)
        if len(gp) > 1:
            num = _pexactdiv(num, gp)
            den = _pexactdiv(den, gp)
        if den == (1,):
            return num, den
        g = gcd(_pcontent(num), _pcontent(den)) * (-1 if den[-1] < 0 else 1)
    if g != 1:
        num = tuple(x // g for x in num)
        den = tuple(x // g for x in den)
    return num, den


def _unify(p1, p2):
    if p1 is None:
        return p2
    if p2 is None or p1 == p2:
        return p1
    raise ParamMismatch("cannot combine parameters %r and %r" % (p1, p2))


class UniRat:
    """Reduced ratio of integer polynomials in one named formal parameter."""

    __slots__ = ("num", "den", "param")

    def __init__(self, num, den=(1,), param=None):
        num, den = _normalize(tuple(num), tuple(den))
        if len(num) <= 1 and len(den) == 1:
            param = None
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "param", param if num else None)

    def __setattr__(self, *a):
        raise AttributeError("UniRat is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(c):
        """A constant (int or Fraction)."""
        if isinstance(c, UniRat):
            return c
        f = Fraction(c)
        return UniRat((f.numerator,), (f.denominator,))

    @staticmethod
    def poly(coeffs, param):
        """Polynomial from ascending int/Fraction coefficients."""
        coeffs = [Fraction(c) for c in coeffs]
        d = 1
        for c in coeffs:
            d = d * c.denominator // gcd(d, c.denominator)
        return UniRat(tuple(int(c * d) for c in coeffs), (d,), param)

    @staticmethod
    def var(param):
        return UniRat((0, 1), (1,), param)

    @staticmethod
    def mono(param, k, coeff=1):
        """coeff * q^k, any integer k."""
        f = Fraction(coeff)
        if k >= 0:
            return UniRat(_pshift((f.numerator,), k), (f.denominator,), param)
        return UniRat((f.numerator,), _pshift((f.denominator,), -k), param)

    @staticmethod
    def zero():
        return UniRat((),)

    @staticmethod
    def one():
        return UniRat((1,))

    # -- predicates and views ------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == (1,) and self.den == (1,)

    def is_polynomial(self):
        return self.den == (1,)

    def poly_coeffs(self):
        """Ascending coefficients when the value is a polynomial."""
        if len(self.den) > 1:
            raise ValueError("not a polynomial: %s" % (self,))
        d = self.den[0]
        return tuple(Fraction(c, d) for c in self.num)

    def constant(self):
        """The value as a Fraction if constant, else None."""
        if len(self.num) <= 1 and len(self.den) == 1:
            return Fraction(self.num[0] if self.num else 0, self.den[0])
        return None

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, UniRat):
            return other
        if isinstance(other, (int, Fraction)):
            return UniRat.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        param = _unify(self.param, other.param)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1 == d2:
            return UniRat(_padd(n1, n2), d1, param)
        if _ismono(d1) and _ismono(d2):
            # a/(c1 q^v1) + b/(c2 q^v2) over the common monomial denominator
            v1, v2 = len(d1) - 1, len(d2) - 1
            c1, c2 = d1[-1], d2[-1]
            v = max(v1, v2)
            num = _padd(
                _pshift(tuple(x * c2 for x in n1), v - v1),
                _pshift(tuple(x * c1 for x in n2), v - v2),
            )
            return UniRat(num, _pshift((c1 * c2,), v), param)
        num = _padd(_pmul(n1, d2), _pmul(n2, d1))
        return UniRat(num, _pmul(d1, d2), param)

    __radd__ = __add__

    def __neg__(self):
        r = UniRat.__new__(UniRat)
        object.__setattr__(r, "num", _pneg(self.num))
        object.__setattr__(r, "den", self.den)
        object.__setattr__(r, "param", self.param)
        return r

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        param = _unify(self.param, other.param)
        return UniRat(
            _pmul(self.num, other.num), _pmul(self.den, other.den), param
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        param = _unify(self.param, other.param)
        return UniRat(
            _pmul(self.num, other.den), _pmul(self.den, other.num), param
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return UniRat.one()
        base = self
        if k < 0:
            if not self.num:
                raise ZeroDivisionError("0 ** negative")
            base = UniRat(self.den, self.num, self.param)
            k = -k
        out = None
        while k:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniRat.const(other)
        if not isinstance(other, UniRat):
            return NotImplemented
        if self.num != other.num or self.den != other.den:
            return False
        if self.param is None or other.param is None:
            return True
        return self.param == other.param

    def __hash__(self):
        return hash((self.num, self.den, self.param))

    # -- parameter conversions ------------------------------------------------

    def rename(self, param):
        """Same coefficients under a new parameter name."""
        return UniRat(self.num, self.den, param)

    def recip_param(self):
        """Substitute q -> 1/q."""
        if not self.num:
            return self
        dn, dd = len(self.num) - 1, len(self.den) - 1
        num = tuple(reversed(self.num))
        den = tuple(reversed(self.den))
        if dd > dn:
            num = _pshift(num, dd - dn)
        elif dn > dd:
            den = _pshift(den, dn - dd)
        return UniRat(num, den, self.param)

    def pow_param(self, k):
        """Substitute q -> q^k for an integer k >= 1."""
        if k < 1:
            raise ValueError("k must be a positive integer")
        if k == 1:
            return self

        def stretch(c):
            out = [0] * ((len(c) - 1) * k + 1) if c else []
            for i, x in enumerate(c):
                out[i * k] = x
            return tuple(out)

        return UniRat(stretch(self.num), stretch(self.den), self.param)

    def eval_at(self, x):
        """Exact evaluation at a rational point."""
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at %s" % (x,))
        return _peval(self.num, x) / d

    # -- rendering -------------------------------------------------------------

    def as_json(self):
        return {
            "num": list(self.num),
            "den": list(self.den),
            "param": self.param,
        }

    def _pretty_poly(self, c):
        p = self.param or "q"
        bits = []
        for i, x in enumerate(c):
            if not x:
                continue
            if i == 0:
                bits.append(str(x))
                continue
            mag = "" if abs(x) == 1 else str(abs(x)) + "*"
            term = "%s%s" % (mag, p if i == 1 else "%s^%d" % (p, i))
            if not bits:
                bits.append(term if x > 0 else "-" + term)
            else:
                bits.append(("+ " if x > 0 else "- ") + term)
        return " ".join(bits) if bits else "0"

    def __repr__(self):
        if self.den == (1,):
            return self._pretty_poly(self.num)
        return "(%s)/(%s)" % (
            self._pretty_poly(self.num),
            self._pretty_poly(self.den),
        )


ZERO = UniRat.zero()
ONE = UniRat.one()
