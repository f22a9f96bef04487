"""q-shifted factorials, q-binomials, and truncated power series in z.

Scalars are UniRat rational functions in one formal parameter (default
"q"); series in the extra marker z are explicit truncations that record
their order and never read above it.
"""

from fractions import Fraction
from functools import lru_cache
from math import inf

from .errors import ParamMismatch, SingularityError
from .qrat import ONE, UniRat, ZERO, _padd, _pmul, _pshift


def _unify(p1, p2):
    if p1 is None:
        return p2
    if p2 is None or p1 == p2:
        return p1
    raise ParamMismatch("cannot combine parameters %r and %r" % (p1, p2))


# ---------------------------------------------------------------------------
# q-shifted factorials


@lru_cache(maxsize=None)
def _qq_raw(k, base):
    """Coefficient tuple of (q^base; q^base)_k."""
    if k == 0:
        return (1,)
    prev = _qq_raw(k - 1, base)
    # multiply by (1 - q^{base*k})
    return _padd(prev, tuple(-c for c in _pshift(prev, base * k)))


def qq(k, param="q", base=1):
    """(q^base; q^base)_k = prod_{j=1}^{k} (1 - q^{base*j})."""
    if k < 0:
        raise ValueError("qq needs k >= 0, got %r" % (k,))
    return UniRat(_qq_raw(k, base), (1,), param)


def qpochhammer(a, k, trunc=None, base=1, zpow=1, param=None):
    """The q-shifted factorial (a; q^base)_k.

    `a` is a monomial given as a pair (coeff, spow) meaning coeff * q^spow;
    `coeff` may be an int, Fraction, or UniRat in the same parameter.

    k >= 0 gives the finite product prod_{j=0}^{k-1} (1 - a q^{base*j});
    k < 0 gives 1 / prod_{j=1}^{-k} (1 - a q^{-base*j}), raising
    SingularityError when a factor vanishes; k = inf expands the infinite
    product as a series in an auxiliary marker z attached to `a` with
    exponent `zpow` (so the argument reads coeff * z^zpow * q^spow), and
    requires a truncation order.
    """
    coeff, spow = a
    c = UniRat.const(coeff) if not isinstance(coeff, UniRat) else coeff
    param = _unify(param, c.param) or "q"
    if k == inf:
        if trunc is None:
            raise ValueError("infinite q-shifted factorial needs a truncation order")
        if zpow < 1:
            raise ValueError("infinite q-shifted factorial needs a z marker (zpow >= 1)")
        coeffs = [ZERO] * (trunc + 1)
        j = 0
        while zpow * j <= trunc:
            coeffs[zpow * j] = (c ** j) * euler_coeff(j, spow, param=param, base=base)
            j += 1
        return ZSeries(coeffs, trunc, param)
    if k >= 0:
        out = ONE
        for j in range(k):
            out = out * (1 - c * UniRat.mono(param, spow + base * j))
        return out
    out = ONE
    for j in range(1, -k + 1):
        f = 1 - c * UniRat.mono(param, spow - base * j)
        if f.is_zero():
            raise SingularityError(
                "(a; q)_{%d}: factor 1 - a*q^-%d vanishes" % (k, j)
            )
        out = out * f
    return ONE / out


def euler_coeff(j, spow, param="q", base=1):
    """z^j coefficient of (z q^spow; q^base)_inf:
    (-1)^j q^{spow*j + base*j(j-1)/2} / (q^base; q^base)_j."""
    e = spow * j + base * (j * (j - 1) // 2)
    sign = -1 if j % 2 else 1
    return UniRat.mono(param, e, sign) / qq(j, param, base)


def euler_coeff_recip(j, spow, param="q", base=1):
    """z^j coefficient of 1 / (z q^spow; q^base)_inf:
    q^{spow*j} / (q^base; q^base)_j."""
    return UniRat.mono(param, spow * j) / qq(j, param, base)


# ---------------------------------------------------------------------------
# q-binomial coefficients


@lru_cache(maxsize=None)
def _qbin_raw(n, k):
    if k < 0 or k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    # q-Pascal: [n k] = [n-1 k-1] + q^k [n-1 k]
    return _padd(_qbin_raw(n - 1, k - 1), _pshift(_qbin_raw(n - 1, k), k))


def qbinomial(n, k, param="q"):
    """The Gaussian binomial [n k] in the given parameter; 0 out of range."""
    raw = _qbin_raw(n, k)
    assert all(c > 0 for c in raw)
    return UniRat(raw, (1,), param)


def qbinomial_inverse_identity(n, k, param="q"):
    """Check [n k] at q -> 1/q equals q^{k(k-n)} [n k] exactly."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    b = qbinomial(n, k, param)
    return b.recip_param() == UniRat.mono(param, k * (k - n)) * b


# ---------------------------------------------------------------------------
# truncated power series in the marker z


class ZSeries:
    """Power series in z, truncated: coefficients c_0..c_trunc of UniRat."""

    __slots__ = ("trunc", "coeffs", "param")

    def __init__(self, coeffs, trunc, param=None):
        cs = [UniRat.const(c) if not isinstance(c, UniRat) else c for c in coeffs]
        if len(cs) > trunc + 1:
            cs = cs[: trunc + 1]
        while len(cs) < trunc + 1:
            cs.append(ZERO)
        for c in cs:
            param = _unify(param, c.param)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "param", param)

    def __setattr__(self, *a):
        raise AttributeError("ZSeries is immutable")

    @staticmethod
    def zero(trunc, param=None):
        return ZSeries([], trunc, param)

    @staticmethod
    def one(trunc, param=None):
        return ZSeries([ONE], trunc, param)

    @staticmethod
    def z(trunc, param=None):
        return ZSeries([ZERO, ONE], trunc, param)

    def coeff_at(self, n):
        if not 0 <= n <= self.trunc:
            raise IndexError("coefficient %d above truncation %d" % (n, self.trunc))
        return self.coeffs[n]

    def _coerce(self, other):
        if isinstance(other, ZSeries):
            return other
        if isinstance(other, (int, Fraction, UniRat)):
            return ZSeries([other], self.trunc, self.param)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.trunc, other.trunc)
        return ZSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)],
            n,
            _unify(self.param, other.param),
        )

    __radd__ = __add__

    def __neg__(self):
        return ZSeries([-c for c in self.coeffs], self.trunc, self.param)

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
        n = min(self.trunc, other.trunc)
        out = [ZERO] * (n + 1)
        for i, ci in enumerate(self.coeffs[: n + 1]):
            if ci.is_zero():
                continue
            for j in range(n + 1 - i):
                cj = other.coeffs[j]
                if cj:
                    out[i + j] = out[i + j] + ci * cj
        return ZSeries(out, n, _unify(self.param, other.param))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ZSeries.one(self.trunc, self.param)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, u):
        u = UniRat.const(u) if not isinstance(u, UniRat) else u
        return ZSeries([c * u for c in self.coeffs], self.trunc, self.param)

    def subs_z(self, qpow=0, zpow=1):
        """Substitute z -> q^qpow * z^zpow (zpow >= 1)."""
        if zpow < 1:
            raise ValueError("zpow must be >= 1")
        out = [ZERO] * (self.trunc + 1)
        for n, c in enumerate(self.coeffs):
            if n * zpow > self.trunc:
                break
            if c:
                out[n * zpow] = c * UniRat.mono(self.param or "q", qpow * n)
        return ZSeries(out, self.trunc, self.param)

    def inverse(self):
        """Multiplicative inverse; the constant term must be nonzero."""
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise ZeroDivisionError("series with zero constant term")
        inv = [ONE / c0]
        for n in range(1, self.trunc + 1):
            s = ZERO
            for k in range(1, n + 1):
                ck = self.coeffs[k]
                if ck:
                    s = s + ck * inv[n - k]
            inv.append(-s / c0)
        return ZSeries(inv, self.trunc, self.param)

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def __repr__(self):
        bits = []
        for n, c in enumerate(self.coeffs):
            if c:
                bits.append("(%r)*z^%d" % (c, n))
        body = " + ".join(bits) if bits else "0"
        return "%s + O(z^%d)" % (body, self.trunc + 1)


# ---------------------------------------------------------------------------
# exact summation over a factored common denominator


@lru_cache(maxsize=None)
def _factor_pow_raw(j, e, base):
    """Coefficient tuple of (1 - q^{base*j})^e."""
    if e == 0:
        return (1,)
    half = _factor_pow_raw(j, e // 2, base)
    sq = _pmul(half, half)
    if e % 2:
        sq = _padd(sq, tuple(-c for c in _pshift(sq, base * j)))
    return sq


def sum_over_common_den(terms, param="q", base=1):
    """Exactly sum num / prod_j (1-q^{base*j})^e over terms [(num, {j: e})].

    Each term is a UniRat numerator together with a factored denominator
    given as a mapping from j >= 1 to the exponent of (1 - q^{base*j}).
    The sum is accumulated over the least common denominator and reduced
    once at the end.
    """
    terms = list(terms)
    lcm = {}
    for _, fac in terms:
        for j, e in fac.items():
            if e > lcm.get(j, 0):
                lcm[j] = e
    total = ZERO
    for num, fac in terms:
        if num.is_zero():
            continue
        scaled = num
        for j, e in lcm.items():
            need = e - fac.get(j, 0)
            if need:
                scaled = scaled * UniRat(_factor_pow_raw(j, need, base), (1,), param)
        total = total + scaled
    if total.is_zero():
        return ZERO
    den = ONE
    for j, e in sorted(lcm.items()):
        den = den * UniRat(_factor_pow_raw(j, e, base), (1,), param)
    return total / den
