"""The R-basis: partition-indexed polynomials R_lambda(x;t), their monomial
expansion, the inversion coefficients C_{lambda,mu}(q), mirror symmetry, and
the specialized skew coefficient tied to C by q -> 1/q.

Monomials are written in multiplicity coordinates: x^mu means
prod_i x_i^{m_i(mu)}, so the exponent of x_i is the number of parts of mu
equal to i.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .mpoly import MPoly
from .partitions import Partition, subpartitions
from .qrat import UniRat, ZERO
from .qseries import qbinomial

R_TO_MONOMIAL = "R_TO_MONOMIAL"
MONOMIAL_TO_R = "MONOMIAL_TO_R"


@dataclass(frozen=True)
class RExpansion:
    """Coefficient table keyed by subpartitions of lam.

    direction R_TO_MONOMIAL: R_lam = sum_mu coeff[mu] * x^mu.
    direction MONOMIAL_TO_R: x^lam = sum_mu coeff[mu] * R_mu.
    """

    lam: Partition
    direction: str
    coeffs: dict

    def __post_init__(self):
        for mu in self.coeffs:
            assert self.lam.contains(mu)

    def coeff(self, mu):
        return self.coeffs.get(Partition(mu), ZERO)

    def as_json(self):
        return [
            {"mu": str(mu), "coeff": c.as_json()}
            for mu, c in sorted(self.coeffs.items(), reverse=True)
        ]


def rlambda_poly(lam, ell=None, param="t"):
    """R_lam as a polynomial in x_1..x_ell (x_0 reads as 1); ell >= lam_1.

    Built as prod_{i=1..ell} prod_{j=conj(i+1)}^{conj(i)-1} (x_i - t^j x_{i-1});
    the equivalent multiplicity-indexed product is computed independently and
    the two are required to agree.
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if ell is None:
        ell = lam.part(1)
    if lam.part(1) > ell:
        raise ValueError(
            "R poly needs at least lam_1=%d variables, got ell=%d" % (lam.part(1), ell)
        )

    def factor(i, j):
        # x_i - t^j x_{i-1}, 1-based i, with x_0 == 1
        t_j = UniRat.mono(param, j, -1)
        e_i = tuple(1 if k == i - 1 else 0 for k in range(ell))
        if i == 1:
            lower = (0,) * ell
        else:
            lower = tuple(1 if k == i - 2 else 0 for k in range(ell))
        return MPoly({e_i: UniRat.one(), lower: t_j}, ell, param)

    out = MPoly.one(ell, param)
    for i in range(1, ell + 1):
        for j in range(lam.conj(i + 1), lam.conj(i)):
            out = out * factor(i, j)

    alt = MPoly.one(ell, param)
    for i in range(1, ell + 1):
        for j in range(lam.mult(i)):
            alt = alt * factor(i, lam.conj(i + 1) + j)
    assert out == alt
    return out


def _mu_from_exps(e):
    """Recover mu from multiplicity exponents: conj(mu)_i = sum_{k>=i} e_k."""
    conj = []
    s = 0
    for a in reversed(e):
        s += a
        conj.append(s)
    conj.reverse()
    return Partition([c for c in conj if c]).conjugate()


def rlambda_expand(lam, param="t", validate=True):
    """Monomial coefficients of R_lam from the closed form:
    coeff(x^mu) = (-1)^{|lam|-|mu|} t^{sum C(d_i,2) + sum conj(i+1) d_i}
                  prod_i [m_i(lam) choose d_i]_t with d_i = conj_lam(i)-conj_mu(i).

    With validate, R_lam is multiplied out and collected as a cross-check.
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    width = lam.part(1)
    coeffs = {}
    for mu in subpartitions(lam):
        d = [lam.conj(i) - mu.conj(i) for i in range(1, width + 1)]
        prod = UniRat.one()
        for i in range(1, width + 1):
            prod = prod * qbinomial(lam.mult(i), d[i - 1], param)
            if prod.is_zero():
                break
        if prod.is_zero():
            continue
        expo = sum(comb(di, 2) for di in d) + sum(
            lam.conj(i + 1) * d[i - 1] for i in range(1, width + 1)
        )
        sign = -1 if (lam.size - mu.size) % 2 else 1
        coeffs[mu] = UniRat.mono(param, expo, sign) * prod
    if validate:
        direct = rlambda_poly(lam, param=param)
        collected = {_mu_from_exps(e): c for e, c in direct.terms.items()}
        assert collected == coeffs
    return RExpansion(lam, R_TO_MONOMIAL, coeffs)


@lru_cache(maxsize=None)
def _c_coeff_cached(lam, mu, param):
    if not lam.contains(mu):
        return ZERO
    width = lam.part(1)
    prod = UniRat.one()
    expo = 0
    for i in range(1, width + 1):
        lc, mc, mc1 = lam.conj(i), mu.conj(i), mu.conj(i + 1)
        prod = prod * qbinomial(lc - mc1, lc - mc, param)
        expo += mc1 * (lc - mc)
    assert not prod.is_zero()
    return UniRat.mono(param, expo) * prod


def c_coeff(lam, mu, param="q"):
    """Inversion coefficient C_{lam,mu}: q^{sum conj_mu(i+1)(conj_lam(i)-conj_mu(i))}
    prod_i [conj_lam(i)-conj_mu(i+1) choose conj_lam(i)-conj_mu(i)]_q; 0 if mu is
    not contained in lam."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    return _c_coeff_cached(lam, mu, param)


def monomial_in_R_basis(lam, param="q", validate=True):
    """Expansion x^lam = sum_{mu within lam} C_{lam,mu} R_mu.

    With validate, the R_mu are themselves expanded into monomials and the
    whole sum is required to collapse to the single monomial x^lam.
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    coeffs = {mu: c_coeff(lam, mu, param) for mu in subpartitions(lam)}
    if validate:
        total = {}
        for mu, c in coeffs.items():
            ct = c if param == "t" else c.rename("t")
            for nu, r in rlambda_expand(mu, validate=False).coeffs.items():
                s = total.get(nu, ZERO) + ct * r
                if s.is_zero():
                    total.pop(nu, None)
                else:
                    total[nu] = s
        assert total == {lam: UniRat.one()}
    return RExpansion(lam, MONOMIAL_TO_R, coeffs)


def mirror_poly(lam, param="q"):
    """Coefficients in T of sum_{mu within lam} C_{lam,mu}(q) T^{|mu|};
    the sequence is checked to be palindromic (mirror symmetry)."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    out = [ZERO] * (lam.size + 1)
    for mu in subpartitions(lam):
        out[mu.size] = out[mu.size] + c_coeff(lam, mu, param)
    assert all(out[k] == out[lam.size - k] for k in range(lam.size + 1))
    return out


def dot_product_conjugates(lam, mu):
    """(conj(lam) | conj(mu)) = sum_i conj_lam(i) * conj_mu(i)."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    width = min(lam.part(1), mu.part(1))
    return sum(lam.conj(i) * mu.conj(i) for i in range(1, width + 1))


def qprime_skew(lam, mu, param="q"):
    """Skew coefficient q^{|mu|+n(lam)+n(mu)-(conj|conj)} prod_i
    [conj_lam(i)-conj_mu(i+1) choose conj_lam(i)-conj_mu(i)]_q; 0 if mu is not
    contained in lam.  Related to c_coeff by C_{lam,mu}(1/q) =
    q^{n(mu)-n(lam)} * this (checked in debug mode)."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    if not lam.contains(mu):
        return ZERO
    width = lam.part(1)
    expo = mu.size + lam.nstat() + mu.nstat() - dot_product_conjugates(lam, mu)
    # the exponent is n of the skew diagram, hence nonnegative
    assert expo == sum(
        comb(lam.conj(i) - mu.conj(i), 2) for i in range(1, width + 1)
    )
    prod = UniRat.one()
    for i in range(1, width + 1):
        prod = prod * qbinomial(
            lam.conj(i) - mu.conj(i + 1), lam.conj(i) - mu.conj(i), param
        )
    out = UniRat.mono(param, expo) * prod
    if __debug__:
        lhs = c_coeff(lam, mu, param).recip_param()
        assert lhs == UniRat.mono(param, mu.nstat() - lam.nstat()) * out
    return out
