"""Exact u-averaged moments over finite abelian p-groups and groups of
type S, rank-distribution laws with certified residuals, and the
conjectural prediction tables built from them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import ModeError
from .partitions import Partition, subpartitions
from .qseries import qbinomial
from .rbasis import c_coeff

ABELIAN = "ABELIAN"
TYPE_S = "TYPE_S"

CLASS_GROUP_IMAGINARY = "CLASS_GROUP_IMAGINARY"
CLASS_GROUP_REAL = "CLASS_GROUP_REAL"
SHA = "SHA"
SELMER = "SELMER"


def _check_u(u):
    """Exact mode needs an integral u; reject anything else loudly."""
    f = Fraction(u)
    if f.denominator != 1 or f < 0:
        raise ModeError(
            "exact mode needs a nonnegative integral u, got %s; "
            "use the float entry point" % (u,)
        )
    return int(f)


@dataclass(frozen=True)
class MomentQuery:
    """One moment request: the exponent partition, the prime, u, flavor."""

    lam: Partition
    p: int
    u: object
    flavor: str = ABELIAN

    def __post_init__(self):
        object.__setattr__(self, "lam", Partition(self.lam))
        if self.p < 2:
            raise ValueError("p must be at least 2")
        if self.flavor not in (ABELIAN, TYPE_S):
            raise ValueError("unknown flavor %r" % (self.flavor,))


@lru_cache(maxsize=None)
def _c_values(lam, p):
    """All (|mu|, C_{lam,mu} evaluated at p) over subpartitions of lam."""
    return tuple(
        (mu.size, c_coeff(lam, mu).eval_at(p)) for mu in subpartitions(lam)
    )


def m_u(query):
    """u-average of x^lam over finite abelian p-groups:
    sum over mu inside lam of C_{lam,mu}(p) p^{-|mu| u}."""
    if query.flavor != ABELIAN:
        raise ValueError("m_u computes the plain abelian flavor")
    u = _check_u(query.u)
    p = Fraction(query.p)
    return sum((c * p ** (-size * u) for size, c in _c_values(query.lam, query.p)),
               Fraction(0))


def m_u_s(query):
    """u-average of x^lam in the sense of groups of type S:
    sum over mu inside lam of C_{lam,mu}(p^2) p^{-|mu|(2u-1)}."""
    if query.flavor != TYPE_S:
        raise ValueError("m_u_s computes the type-S flavor")
    u = _check_u(query.u)
    p = Fraction(query.p)
    val = sum(
        (c * p ** (-size * (2 * u - 1))
         for size, c in _c_values(query.lam, query.p * query.p)),
        Fraction(0),
    )
    lam = query.lam
    if lam.length <= 1:
        # row partitions collapse to a geometric sum
        assert val == sum(p ** (-(2 * u - 1) * k) for k in range(lam.size + 1))
    return val


def m_u_float(lam, p, u, dps=30):
    """Arbitrary-precision float m_u for real u >= 0 at dps decimal digits."""
    lam = Partition(lam)
    with mpmath.workdps(dps):
        uu = mpmath.mpf(str(u)) if isinstance(u, float) else mpmath.mpmathify(u)
        total = mpmath.mpf(0)
        for size, c in _c_values(lam, p):
            total += mpmath.mpmathify(c) * mpmath.power(p, -size * uu)
        return total


def m_u_s_float(lam, p, u, dps=30):
    """Arbitrary-precision float m_u_s for real u >= 0 at dps decimal digits."""
    lam = Partition(lam)
    with mpmath.workdps(dps):
        uu = mpmath.mpf(str(u)) if isinstance(u, float) else mpmath.mpmathify(u)
        total = mpmath.mpf(0)
        for size, c in _c_values(lam, p * p):
            total += mpmath.mpmathify(c) * mpmath.power(p, -size * (2 * uu - 1))
        return total


def coherence_check(lam, p):
    """Check M_0^S(x^lam) = M_1^S(x^lam) * p^|lam| exactly; return (ok, report)."""
    lam = Partition(lam)
    lhs = m_u_s(MomentQuery(lam, p, 0, TYPE_S))
    base = m_u_s(MomentQuery(lam, p, 1, TYPE_S))
    scale = p**lam.size
    report = {
        "lam": lam,
        "p": p,
        "m0s": lhs,
        "m1s": base,
        "scale": scale,
        "m1s_scaled": base * scale,
    }
    return lhs == base * scale, report


@dataclass(frozen=True)
class RankProfile:
    """Prescribed p^j-ranks mu_1 >= ... >= mu_ell (trailing zeros included)."""

    mu: Partition
    ell: int
    p: int
    u: object
    trunc: int = 40

    def __post_init__(self):
        object.__setattr__(self, "mu", Partition(self.mu))
        if self.ell < max(1, self.mu.length):
            raise ValueError("ell must cover every nonzero rank")
        if self.trunc < 1:
            raise ValueError("truncation order must be at least 1")


@dataclass(frozen=True)
class Residual:
    """Truncated infinite product with a rigorous one-sided error bound.

    The true product lies in [value * (1 - error), value]."""

    value: object
    error: object
    terms: int

    def bounds(self):
        return (self.value * (1 - self.error), self.value)


def pj_rank_prob(profile, flavor=ABELIAN):
    """Probability of a full rank profile, as (exact factor, residual).

    ABELIAN: the u-probability that a finite abelian p-group has
    p^j-rank mu_j for j = 1..ell.  TYPE_S: the u-probability that a group
    of type S has p^j-rank 2*mu_j.  The infinite product over
    j >= mu_ell + 1 is returned truncated, with a geometric tail bound.
    """
    u = _check_u(profile.u)
    p = profile.p
    parts = [profile.mu.part(j) for j in range(1, profile.ell + 1)] + [0]
    weight = sum(a * a for a in parts)
    size = sum(parts)
    if flavor == ABELIAN:
        denom = Fraction(p) ** (weight + u * size)
        qstep, estart = 1, u
    elif flavor == TYPE_S:
        denom = Fraction(p) ** (2 * weight + (2 * u - 1) * size)
        qstep, estart = 2, 2 * u - 1
    else:
        raise ValueError("unknown flavor %r" % (flavor,))
    for j in range(profile.ell):
        for i in range(1, parts[j] - parts[j + 1] + 1):
            denom *= 1 - Fraction(1, p ** (qstep * i))
    factor = 1 / denom
    # residual: prod_{j >= mu_ell + 1} (1 - p^{-(estart + qstep*j)})
    lo = parts[profile.ell - 1] + 1 if profile.ell else 1
    partial = Fraction(1)
    for j in range(lo, lo + profile.trunc):
        partial *= 1 - Fraction(1, p ** (estart + qstep * j))
    tail_top = estart + qstep * (lo + profile.trunc)
    tail = Fraction(1, p**tail_top) / (1 - Fraction(1, p**qstep))
    with mpmath.workdps(40):
        residual = Residual(
            value=mpmath.mpmathify(partial),
            error=mpmath.mpmathify(tail),
            terms=profile.trunc,
        )
    return factor, residual


def conjecture_table(kind, lam=None, p=None, u=None, lm=None):
    """Predicted average for one conjectural table row, as an exact rational.

    CLASS_GROUP_IMAGINARY / CLASS_GROUP_REAL take lam and p (u fixed to 0
    resp. 1); SHA takes lam, p, and u; SELMER takes lm = (ell, m) and p,
    with lam = the rectangle ell^m.
    """
    if p is None or p < 2:
        raise ValueError("a prime p is required")
    if kind == CLASS_GROUP_IMAGINARY:
        return m_u(MomentQuery(Partition(lam), p, 0))
    if kind == CLASS_GROUP_REAL:
        return m_u(MomentQuery(Partition(lam), p, 1))
    if kind == SHA:
        if u is None:
            raise ValueError("SHA needs u")
        return m_u_s(MomentQuery(Partition(lam), p, u, TYPE_S))
    if kind == SELMER:
        ell, m = lm if lm is not None else (None, None)
        if ell is None:
            raise ValueError("SELMER needs lm=(ell, m)")
        lam = Partition([ell] * m)
        val = m_u_s(MomentQuery(lam, p, 0, TYPE_S))
        if ell == 1:
            prod = Fraction(1)
            for j in range(1, m + 1):
                prod *= 1 + Fraction(p) ** j
            assert val == prod
        return val
    raise ValueError("unknown conjecture kind %r" % (kind,))


def fouvry_klueners_numbers(n, p, real=False):
    """Moments of x^{1^n}: sum_k qbin(n,k; p) for the imaginary flavor and
    sum_k qbin(n,k; p) p^{-k} for the real flavor, exactly.

    Both values are asserted to agree with m_u at lam = 1^n (u = 0 and 1),
    so the real flavor also equals p^{-n} * sum_k qbin(n,k; p) p^k by the
    palindromic symmetry of the summands.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    val = Fraction(0)
    for k in range(n + 1):
        term = qbinomial(n, k).eval_at(p)
        val += term * Fraction(p) ** (-k) if real else term
    lam = Partition([1] * n)
    assert val == m_u(MomentQuery(lam, p, 1 if real else 0))
    return val
