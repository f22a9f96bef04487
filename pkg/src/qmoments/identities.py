"""Exact verification suite for the q-series and symmetric-function identities."""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ResourceBoundError
from .groups import PGroup, aut_order, torsion_order
from .hall_littlewood import b_lambda, hl_p, principal_spec
from .mpoly import MPoly
from .partitions import Partition, partitions_of, subpartitions
from .qrat import ONE, UniRat, ZERO
from .qseries import euler_coeff, euler_coeff_recip, qbinomial, qpochhammer, qq
from .rbasis import c_coeff, dot_product_conjugates, mirror_poly, qprime_skew

SYMBOLIC_EXACT = "symbolic-exact"
TRUNCATED_SERIES = "truncated-series"
RANDOM_POINT = "random-point"

MAX_ALPHABET = 4
MAX_ZTRUNC = 12
MAX_FINITE_N = 4
MAX_FINITE_K = 3
MIN_SAMPLES = 20

_MANIFEST_PATH = Path(__file__).parent / "data" / "manifest.json"


@dataclass(frozen=True)
class IdentityCase:
    """One verification case: an identity id plus its concrete parameters."""

    case_id: str
    params: dict
    strategy: str


@dataclass(frozen=True)
class Mismatch:
    """First failing coefficient: which series, which exponent, both values."""

    label: str
    key: str
    lhs: str
    rhs: str


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one case: pass/fail, localized mismatch, resource usage."""

    case_id: str
    params: dict
    strategy: str
    passed: bool
    mismatch: Mismatch | None
    compared: int
    elapsed: float
    seed: int | None = None

    def as_json(self):
        out = {
            "id": self.case_id,
            "params": dict(self.params),
            "strategy": self.strategy,
            "passed": self.passed,
            "compared": self.compared,
            "elapsed_seconds": round(self.elapsed, 6),
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.mismatch is not None:
            out["mismatch"] = {
                "series": self.mismatch.label,
                "coefficient": self.mismatch.key,
                "lhs": self.mismatch.lhs,
                "rhs": self.mismatch.rhs,
            }
        return out


def _is_zero_value(v):
    if v is None:
        return True
    if isinstance(v, UniRat):
        return v.is_zero()
    return v == 0


def _values_equal(a, b):
    if a is None:
        return _is_zero_value(b)
    if b is None:
        return _is_zero_value(a)
    return a == b


def _negate(v):
    if isinstance(v, UniRat):
        return ZERO - v
    return -v


def _key_order(k):
    return (len(k), k) if isinstance(k, tuple) else ((0, k),)


def _compare_pairs(pairs, mutate=False):
    """Compare (label, lhs_map, rhs_map) triples; return (passed, mismatch, n)."""
    if mutate:
        mutated = []
        flipped = False
        for label, lhs, rhs in pairs:
            rhs = dict(rhs)
            if not flipped:
                for k in sorted(rhs, key=_key_order):
                    if not _is_zero_value(rhs[k]):
                        rhs[k] = _negate(rhs[k])
                        flipped = True
                        break
            mutated.append((label, lhs, rhs))
        pairs = mutated
    compared = 0
    first = None
    for label, lhs, rhs in pairs:
        keys = sorted(set(lhs) | set(rhs), key=_key_order)
        for k in keys:
            compared += 1
            a, b = lhs.get(k), rhs.get(k)
            if not _values_equal(a, b) and first is None:
                first = Mismatch(label, repr(k), repr(a), repr(b))
    return first is None, first, compared


def _geom_factor(slot, nvars, cap, qpow=0, coeff=Fraction(1)):
    """Truncated expansion of 1/(1 - c*q^e*x_slot) up to x_slot^cap."""
    terms = {}
    for t in range(cap + 1):
        e = [0] * nvars
        e[slot] = t
        terms[tuple(e)] = UniRat.mono("q", qpow * t, coeff**t)
    return MPoly(terms, nvars, "q")


def _pair_geom(si, sj, nvars, cap, qpow=0):
    """Truncated expansion of 1/(1 - q^e*x_si*x_sj) up to (x_si*x_sj)^cap."""
    terms = {}
    for t in range(cap + 1):
        e = [0] * nvars
        e[si] = t
        e[sj] = t
        terms[tuple(e)] = UniRat.mono("q", qpow * t)
    return MPoly(terms, nvars, "q")


def _afac_scalar(r, a):
    """(a; 1/q)_r = prod_{t<r} (1 - a*q^{-t}) for a scalar value a."""
    out = ONE
    for t in range(r):
        out = out * (ONE - UniRat.mono("q", -t, a))
    return out


def _afac_poly(r, a_slot, nvars):
    """(a; 1/q)_r = prod_{t<r} (1 - a*q^{-t}) with a as a polynomial variable."""
    out = MPoly.one(nvars, "q")
    ea = [0] * nvars
    ea[a_slot] = 1
    ea = tuple(ea)
    zero = tuple([0] * nvars)
    for t in range(r):
        fac = MPoly({zero: ONE, ea: UniRat.mono("q", -t, -1)}, nvars, "q")
        out = out * fac
    return out


def _unit(nvars, slot, power=1):
    e = [0] * nvars
    e[slot] = power
    return tuple(e)


def _box_partitions(n, k):
    """All partitions fitting in an n x k box (at most n parts, each <= k)."""
    out = []
    for m in range(n * k + 1):
        out.extend(partitions_of(m, max_part=k, max_length=n))
    return out


# ---------------------------------------------------------------------------
# runners: each returns a list of (label, lhs_map, rhs_map) triples
# ---------------------------------------------------------------------------


def _run_qbin(params, rng):
    n = int(params["n"])
    lhs = {}
    for k in range(n + 1):
        lhs[k] = qbinomial(n, k) * UniRat.mono("q", math.comb(k, 2), (-1) ** k)
    coeffs = [ONE]
    for j in range(n):
        nxt = [ZERO] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] = nxt[i] + c
            nxt[i + 1] = nxt[i + 1] - c * UniRat.mono("q", j)
        coeffs = nxt
    rhs = {k: coeffs[k] for k in range(n + 1)}
    return [("z-coefficients", lhs, rhs)]


def _run_euler(params, rng):
    n = int(params["zmax"])
    if n > MAX_ZTRUNC:
        raise ResourceBoundError("z truncation", MAX_ZTRUNC, n)
    lhs = {j: UniRat.mono("q", j) / qq(j) for j in range(n + 1)}
    series = qpochhammer((1, 1), math.inf, trunc=n, zpow=1).inverse()
    rhs = {j: series.coeff_at(j) for j in range(n + 1)}
    return [("z-coefficients", lhs, rhs)]


def _run_genfun(params, rng):
    lam = Partition(tuple(params["lam"]))
    p = int(params["p"])
    n = int(params["zmax"])
    if n > MAX_ZTRUNC:
        raise ResourceBoundError("z truncation", MAX_ZTRUNC, n)
    lhs = {}
    for m in range(n + 1):
        acc = Fraction(0)
        for mu in partitions_of(m):
            group = PGroup(p, mu)
            value = 1
            for part in lam:
                value *= torsion_order(group, part)
            acc += Fraction(value, aut_order(mu, p))
        lhs[m] = acc
    cvals = {}
    for nu in subpartitions(lam):
        cvals[nu.size] = cvals.get(nu.size, Fraction(0)) + c_coeff(lam, nu).eval_at(
            Fraction(p)
        )
    rhs = {}
    invp = Fraction(1, p)
    for m in range(n + 1):
        acc = Fraction(0)
        for j in range(m + 1):
            inner = cvals.get(m - j)
            if inner is None:
                continue
            acc += euler_coeff_recip(j, 1).eval_at(invp) * inner
        rhs[m] = acc
    return [("z-coefficients", lhs, rhs)]


def _run_combinat(params, rng):
    lam = Partition(tuple(params["lam"]))
    n = int(params["zmax"])
    if n > MAX_ZTRUNC:
        raise ResourceBoundError("z truncation", MAX_ZTRUNC, n)
    lamc = lam.conjugate()
    route_a = {}
    for m in range(n + 1):
        acc = ZERO
        for mu in partitions_of(m):
            expo = sum(v * v for v in mu) - sum(
                lamc[i] * mu[i] for i in range(min(len(lamc), len(mu)))
            )
            acc = acc + UniRat.mono("q", expo) / b_lambda(mu.conjugate())
        route_a[m] = acc
    cvals = {}
    for nu in subpartitions(lam):
        cvals[nu.size] = cvals.get(nu.size, ZERO) + c_coeff(lam, nu).recip_param()
    route_b = {}
    for m in range(n + 1):
        acc = ZERO
        for j in range(m + 1):
            inner = cvals.get(m - j)
            if inner is None:
                continue
            acc = acc + euler_coeff_recip(j, 1) * inner
        route_b[m] = acc
    route_c = {}
    for m in range(n + 1):
        acc = ZERO
        for mu in partitions_of(m):
            ip = dot_product_conjugates(lam, mu)
            weight = UniRat.mono("q", mu.size + mu.nstat() - ip)
            principal = principal_spec(mu, math.inf, z_marker=True).coeff_at(mu.size)
            acc = acc + weight * principal
        route_c[m] = acc
    return [
        ("combinatorial-vs-inversion", route_a, route_b),
        ("principal-vs-inversion", route_c, route_b),
    ]


def _umoy_rhs(lam, n, base, zstep, shift):
    """Subpartition sum sum_nu C(lam,nu)(1/q^base) z^{zstep*|nu|} q^{shift*|nu|}."""
    rhs = {}
    for nu in subpartitions(lam):
        v = c_coeff(lam, nu).recip_param()
        if base != 1:
            v = v.pow_param(base)
        if shift:
            v = v * UniRat.mono("q", shift * nu.size)
        key = zstep * nu.size
        if key <= n:
            rhs[key] = rhs.get(key, ZERO) + v
    for m in range(n + 1):
        rhs.setdefault(m, ZERO)
    return rhs


def _run_umoy_abelian(params, rng):
    lam = Partition(tuple(params["lam"]))
    ell = int(params["ell"])
    n = int(params["zmax"])
    if n > MAX_ZTRUNC:
        raise ResourceBoundError("z truncation", MAX_ZTRUNC, n)
    if lam and lam[0] > ell:
        raise ValueError("largest part must not exceed the torsion exponent bound")
    lamc = lam.conjugate()
    lhs = {m: ZERO for m in range(n + 1)}
    for m in range(n + 1):
        for mu in partitions_of(m, max_part=ell):
            muc = mu.conjugate()
            ip = sum(lamc[i] * muc[i] for i in range(min(len(lamc), len(muc))))
            weight = UniRat.mono("q", 2 * mu.nstat() + mu.size - ip) / b_lambda(mu)
            spow = mu.conj(ell) + 1
            for j in range(n - m + 1):
                lhs[m + j] = lhs[m + j] + weight * euler_coeff(j, spow)
    rhs = _umoy_rhs(lam, n, 1, 1, 0)
    return [("z-coefficients", lhs, rhs)]


def _run_umoy_type_s(params, rng):
    lam = Partition(tuple(params["lam"]))
    ell = int(params["ell"])
    n = int(params["zmax"])
    if n > MAX_ZTRUNC:
        raise ResourceBoundError("z truncation", MAX_ZTRUNC, n)
    if lam and lam[0] > ell:
        raise ValueError("largest part must not exceed the torsion exponent bound")
    lamc = lam.conjugate()
    lhs = {m: ZERO for m in range(n + 1)}
    for mtot in range(n // 2 + 1):
        for mu in partitions_of(mtot, max_part=ell):
            muc = mu.conjugate()
            ip = sum(lamc[i] * muc[i] for i in range(min(len(lamc), len(muc))))
            bmu = ONE
            for v in set(mu):
                bmu = bmu * qq(mu.count(v), base=2)
            weight = (
                UniRat.mono("q", 4 * mu.nstat() + 2 * mu.size - 2 * ip - mu.size)
                / bmu
            )
            spow = 2 * mu.conj(ell) + 1
            for j in range((n - 2 * mtot) // 2 + 1):
                key = 2 * mtot + 2 * j
                lhs[key] = lhs[key] + weight * euler_coeff(j, spow, base=2)
    rhs = _umoy_rhs(lam, n, 2, 2, -1)
    return [("z-coefficients", lhs, rhs)]


def _run_delaunay(params, rng):
    ell = int(params["ell"])
    n = int(params["zmax"])
    if n > MAX_ZTRUNC:
        raise ResourceBoundError("z truncation", MAX_ZTRUNC, n)
    lhs = {m: ZERO for m in range(n + 1)}
    for m in range(n + 1):
        for mu in partitions_of(m, max_part=ell):
            weight = UniRat.mono("q", 2 * mu.nstat()) / b_lambda(mu)
            spow = mu.conj(ell) + 1
            for j in range(n - m + 1):
                lhs[m + j] = lhs[m + j] + weight * euler_coeff(j, spow)
    rhs = {m: (ONE if m <= ell else ZERO) for m in range(n + 1)}
    return [("z-coefficients", lhs, rhs)]


def _run_qbinhl(params, rng):
    nx = int(params["nx"])
    d = int(params["d"])
    if nx > MAX_ALPHABET:
        raise ResourceBoundError("alphabet size", MAX_ALPHABET, nx)
    nv = nx + 1
    a_slot = nx
    keep = lambda e: sum(e[:nx]) <= d
    lhs = MPoly.zero(nv, "q")
    for m in range(d + 1):
        for lam in partitions_of(m, max_length=nx):
            plam = hl_p(lam, nx)
            if plam.is_zero():
                continue
            term = plam.poly.embed(nv, list(range(nx)))
            term = term.mul(_afac_poly(len(lam), a_slot, nv))
            lhs = lhs + term.scale(UniRat.mono("q", lam.nstat()))
    rhs = MPoly.one(nv, "q")
    for i in range(nx):
        rhs = rhs.mul(_geom_factor(i, nv, d), keep)
    zero = tuple([0] * nv)
    for i in range(nx):
        e = [0] * nv
        e[i] = 1
        e[a_slot] = 1
        fac = MPoly({zero: ONE, tuple(e): UniRat.mono("q", 0, -1)}, nv, "q")
        rhs = rhs.mul(fac, keep)
    pairs = [("main", lhs.terms, rhs.terms)]
    lhs0 = lhs.subs_scalar(a_slot, Fraction(0))
    cauchy = MPoly.one(nv, "q")
    for i in range(nx):
        cauchy = cauchy.mul(_geom_factor(i, nv, d), keep)
    pairs.append(("cauchy-at-a-zero", lhs0.terms, cauchy.terms))
    return pairs


def _run_warnaar_a2(params, rng):
    nx, ny = int(params["nx"]), int(params["ny"])
    dx, dy = int(params["dx"]), int(params["dy"])
    if max(nx, ny) > MAX_ALPHABET:
        raise ResourceBoundError("alphabet size", MAX_ALPHABET, max(nx, ny))
    nv = nx + ny
    keep = lambda e: sum(e[:nx]) <= dx and sum(e[nx:]) <= dy
    lhs = MPoly.zero(nv, "q")
    for mx in range(dx + 1):
        for lam in partitions_of(mx, max_length=nx):
            plam = hl_p(lam, nx)
            if plam.is_zero():
                continue
            pl = plam.poly.embed(nv, list(range(nx)))
            for my in range(dy + 1):
                for mu in partitions_of(my, max_length=ny):
                    pmu = hl_p(mu, ny)
                    if pmu.is_zero():
                        continue
                    pm = pmu.poly.embed(nv, list(range(nx, nv)))
                    expo = (
                        lam.nstat()
                        + mu.nstat()
                        - dot_product_conjugates(lam, mu)
                    )
                    lhs = lhs + pl.mul(pm).scale(UniRat.mono("q", expo))
    rhs = MPoly.one(nv, "q")
    for i in range(nx):
        rhs = rhs.mul(_geom_factor(i, nv, dx), keep)
    for j in range(nx, nv):
        rhs = rhs.mul(_geom_factor(j, nv, dy), keep)
    zero = tuple([0] * nv)
    for i in range(nx):
        for j in range(nx, nv):
            cap = min(dx, dy)
            rhs = rhs.mul(_pair_geom(i, j, nv, cap, qpow=-1), keep)
            w = [0] * nv
            w[i] = 1
            w[j] = 1
            fac = MPoly({zero: ONE, tuple(w): UniRat.mono("q", 0, -1)}, nv, "q")
            rhs = rhs.mul(fac, keep)
    return [("xy-coefficients", lhs.terms, rhs.terms)]


def _run_lascoux(params, rng):
    nx, ny = int(params["nx"]), int(params["ny"])
    dx, dy = int(params["dx"]), int(params["dy"])
    if max(nx, ny) > MAX_ALPHABET:
        raise ResourceBoundError("alphabet size", MAX_ALPHABET, max(nx, ny))
    nv = nx + ny
    keep = lambda e: sum(e[:nx]) <= dx and sum(e[nx:]) <= dy
    lhs = MPoly.zero(nv, "q")
    lam_list = [
        lam
        for mx in range(dx + 1)
        for lam in partitions_of(mx, max_length=nx)
        if not hl_p(lam, nx).is_zero()
    ]
    for lam in lam_list:
        pl = hl_p(lam, nx).poly.embed(nv, list(range(nx)))
        for mu in subpartitions(lam):
            if len(mu) > ny or mu.size > dy:
                continue
            pmu = hl_p(mu, ny)
            if pmu.is_zero():
                continue
            pm = pmu.poly.embed(nv, list(range(nx, nv)))
            lhs = lhs + pl.mul(pm).scale(b_lambda(mu) * qprime_skew(lam, mu))
    rhs = MPoly.one(nv, "q")
    for i in range(nx):
        rhs = rhs.mul(_geom_factor(i, nv, dx), keep)
    zero = tuple([0] * nv)
    for i in range(nx):
        for j in range(nx, nv):
            cap = min(dx, dy)
            rhs = rhs.mul(_pair_geom(i, j, nv, cap), keep)
            w = [0] * nv
            w[i] = 1
            w[j] = 1
            fac = MPoly(
                {zero: ONE, tuple(w): UniRat.mono("q", 1, -1)}, nv, "q"
            )
            rhs = rhs.mul(fac, keep)
    pairs = [("xy-coefficients", lhs.terms, rhs.terms)]

    # principal one-variable y specialization: marker z at y -> z
    nvz = nx + 1
    z_slot = nx
    keepz = lambda e: sum(e[:nx]) <= dx and e[z_slot] <= dx
    lhz = MPoly.zero(nvz, "q")
    for lam in lam_list:
        pl = hl_p(lam, nx).poly.embed(nvz, list(range(nx)))
        for mu in subpartitions(lam):
            coeff = c_coeff(lam, mu).recip_param()
            e = _unit(nvz, z_slot, mu.size)
            lhz = lhz + pl.mul(MPoly({e: coeff}, nvz, "q")).scale(
                UniRat.mono("q", lam.nstat())
            )
    rhz = MPoly.one(nvz, "q")
    for i in range(nx):
        rhz = rhz.mul(_geom_factor(i, nvz, dx), keepz)
    for i in range(nx):
        rhz = rhz.mul(_pair_geom(i, z_slot, nvz, dx), keepz)
    pairs.append(("principal-y", lhz.terms, rhz.terms))

    mirr_lhs, mirr_rhs = {}, {}
    for lam in lam_list:
        by_size = {}
        for mu in subpartitions(lam):
            by_size[mu.size] = by_size.get(mu.size, ZERO) + c_coeff(
                lam, mu
            ).recip_param()
        ladder = mirror_poly(lam)
        for k, v in by_size.items():
            mirr_lhs[(str(tuple(lam)), k)] = v
            mirr_rhs[(str(tuple(lam)), k)] = ladder[k].recip_param()
    pairs.append(("mirror-consistency", mirr_lhs, mirr_rhs))
    return pairs


def _finite_lhs_terms(n, k, nv, a_slot):
    out = []
    for lam in _box_partitions(n, k):
        plam = hl_p(lam, n)
        if plam.is_zero():
            continue
        out.append(
            (
                lam,
                plam.poly.embed(nv, list(range(n))),
                len(lam),
                n - lam.mult(k),
            )
        )
    return out


def _run_finite_qbinhl(params, rng):
    n, k = int(params["n"]), int(params["k"])
    if n > MAX_FINITE_N:
        raise ResourceBoundError("alphabet size", MAX_FINITE_N, n)
    if k > MAX_FINITE_K:
        raise ResourceBoundError("column bound", MAX_FINITE_K, k)
    if "samples" in params:
        return _finite_qbinhl_random(n, k, int(params["samples"]), rng)
    return _finite_qbinhl_symbolic(n, k)


def _finite_qbinhl_symbolic(n, k):
    nv = n + 1
    a_slot = n
    zero = tuple([0] * nv)
    lhs = MPoly.zero(nv, "q")
    for lam, pl, ell, comp in _finite_lhs_terms(n, k, nv, a_slot):
        term = pl.mul(_afac_poly(ell, a_slot, nv)).mul(
            _afac_poly(comp, a_slot, nv)
        )
        lhs = lhs + term.scale(UniRat.mono("q", lam.nstat()))

    dfac = {}
    for i in range(n):
        for s in range(1, n + 1):
            dfac[("pole-x", i, s)] = MPoly(
                {_unit(nv, i): ONE, zero: UniRat.mono("q", 1 - s, -1)}, nv, "q"
            )
    for j in range(n):
        for s in range(n):
            dfac[("pole-one", j, s)] = MPoly(
                {zero: ONE, _unit(nv, j): UniRat.mono("q", s, -1)}, nv, "q"
            )
    for i in range(n):
        for j in range(n):
            if i != j:
                dfac[("vand", i, j)] = MPoly(
                    {_unit(nv, i): ONE, _unit(nv, j): UniRat.mono("q", 0, -1)}, nv, "q"
                )

    lhs_cleared = lhs
    for fac in dfac.values():
        lhs_cleared = lhs_cleared.mul(fac)

    rhs_cleared = MPoly.zero(nv, "q")
    for bits in itertools.product((0, 1), repeat=n):
        inset = [i for i in range(n) if bits[i]]
        outset = [j for j in range(n) if not bits[j]]
        s0 = len(inset)
        used = set()
        num = MPoly(
            {zero: UniRat.mono("q", k * math.comb(s0, 2))}, nv, "q"
        )
        num = num.mul(_afac_poly(s0, a_slot, nv)).mul(
            _afac_poly(n - s0, a_slot, nv)
        )
        for i in inset:
            # x_i^k * (x_i - a*q^{1-n}) over the pole (x_i - q^{1-s0})
            fac = MPoly(
                {
                    _unit(nv, i): ONE,
                    _unit(nv, a_slot): UniRat.mono("q", 1 - n, -1),
                },
                nv,
                "q",
            )
            num = num.mul(fac).mul(MPoly({_unit(nv, i, k): ONE}, nv, "q"))
            used.add(("pole-x", i, s0))
        for j in outset:
            ea = [0] * nv
            ea[j] = 1
            ea[a_slot] = 1
            fac = MPoly({zero: ONE, tuple(ea): UniRat.mono("q", 0, -1)}, nv, "q")
            num = num.mul(fac)
            used.add(("pole-one", j, s0))
        for i in inset:
            for j in outset:
                fac = MPoly(
                    {_unit(nv, i): ONE, _unit(nv, j): UniRat.mono("q", 1, -1)},
                    nv,
                    "q",
                )
                num = num.mul(fac)
                used.add(("vand", i, j))
        for key, fac in dfac.items():
            if key not in used:
                num = num.mul(fac)
        rhs_cleared = rhs_cleared + num
    return [("cleared-coefficients", lhs_cleared.terms, rhs_cleared.terms)]


def _finite_qbinhl_random(n, k, samples, rng):
    if samples < MIN_SAMPLES:
        raise ValueError("need at least %d random sample points" % MIN_SAMPLES)
    lhs_map, rhs_map = {}, {}
    terms = _finite_lhs_terms(n, k, n, None)
    for idx in range(samples):
        xs = []
        while len(xs) < n:
            v = Fraction(rng.randint(2, 60), rng.randint(1, 17))
            if v in (0, 1, -1) or v in xs:
                continue
            xs.append(v)
        a = Fraction(rng.randint(2, 40), rng.randint(1, 17))
        lhs = ZERO
        for lam, pl, ell, comp in terms:
            val = pl.eval_scalars(xs)
            lhs = lhs + (
                UniRat.mono("q", lam.nstat())
                * _afac_scalar(ell, a)
                * _afac_scalar(comp, a)
                * val
            )
        rhs = ZERO
        for bits in itertools.product((0, 1), repeat=n):
            inset = [i for i in range(n) if bits[i]]
            outset = [j for j in range(n) if not bits[j]]
            s0 = len(inset)
            term = (
                UniRat.mono("q", k * math.comb(s0, 2))
                * _afac_scalar(s0, a)
                * _afac_scalar(n - s0, a)
            )
            for i in inset:
                numer = UniRat.const(xs[i]) - UniRat.mono("q", 1 - n, a)
                denom = UniRat.const(xs[i]) - UniRat.mono("q", 1 - s0)
                term = term * UniRat.const(xs[i] ** k) * numer / denom
            for j in outset:
                numer = ONE - UniRat.mono("q", 0, a * xs[j])
                denom = ONE - UniRat.mono("q", s0, xs[j])
                term = term * numer / denom
            for i in inset:
                for j in outset:
                    numer = UniRat.const(xs[i]) - UniRat.mono("q", 1, xs[j])
                    term = term * numer / UniRat.const(xs[i] - xs[j])
            rhs = rhs + term
        lhs_map[idx] = lhs
        rhs_map[idx] = rhs
    return [("sample-points", lhs_map, rhs_map)]


def _run_csq(params, rng):
    n, k = int(params["n"]), int(params["k"])
    if n > MAX_FINITE_N:
        raise ResourceBoundError("alphabet size", MAX_FINITE_N, n)
    if k > MAX_FINITE_K:
        raise ResourceBoundError("column bound", MAX_FINITE_K, k)
    nv = 2  # variables: z, a
    z_slot, a_slot = 0, 1
    zero = (0, 0)
    qn = qq(n)

    lhs = MPoly.zero(nv, "q")
    for lam in _box_partitions(n, k):
        ell = len(lam)
        scal = (
            UniRat.mono("q", 2 * lam.nstat())
            * qn
            / (qq(n - ell) * b_lambda(lam))
        )
        term = MPoly({(lam.size, 0): scal}, nv, "q")
        term = term.mul(_afac_poly(ell, a_slot, nv)).mul(
            _afac_poly(n - lam.mult(k), a_slot, nv)
        )
        lhs = lhs + term

    dz = {
        j: MPoly({zero: ONE, (1, 0): UniRat.mono("q", j, -1)}, nv, "q")
        for j in range(-1, 2 * n)
    }
    lhs_cleared = lhs
    for fac in dz.values():
        lhs_cleared = lhs_cleared.mul(fac)

    rhs_cleared = MPoly.zero(nv, "q")
    for r in range(n + 1):
        scal = UniRat.mono("q", (2 * k + 3) * math.comb(r, 2), (-1) ** r) / qq(r)
        # finite factor (q^{n-r+1}; q)_r
        for t in range(r):
            scal = scal * (ONE - UniRat.mono("q", n - r + 1 + t))
        term = MPoly({(k * r, 0): scal}, nv, "q")
        term = term.mul(
            MPoly({zero: ONE, (1, 0): UniRat.mono("q", 2 * r - 1, -1)}, nv, "q")
        )
        for t in range(n - r):
            term = term.mul(
                MPoly(
                    {zero: ONE, (1, 1): UniRat.mono("q", r + t, -1)}, nv, "q"
                )
            )
        term = term.mul(_afac_poly(r, a_slot, nv))
        for t in range(r):
            term = term.mul(
                MPoly(
                    {(1, 0): ONE, (0, 1): UniRat.mono("q", 1 - n - t, -1)},
                    nv,
                    "q",
                )
            )
        term = term.mul(_afac_poly(n - r, a_slot, nv))
        for j, fac in dz.items():
            if not (r - 1 <= j <= r + n - 1):
                term = term.mul(fac)
        rhs_cleared = rhs_cleared + term
    return [("cleared-coefficients", lhs_cleared.terms, rhs_cleared.terms)]


def _run_mirror_swap(params, rng):
    lam = Partition(tuple(params["lam"]))
    by_size = {}
    for nu in subpartitions(lam):
        by_size[nu.size] = by_size.get(nu.size, ZERO) + c_coeff(lam, nu).recip_param()
    m = lam.size
    pal_lhs = {j: by_size.get(j, ZERO) for j in range(m + 1)}
    pal_rhs = {j: by_size.get(m - j, ZERO) for j in range(m + 1)}
    pairs = [("palindrome", pal_lhs, pal_rhs)]
    sw_lhs, sw_rhs = {}, {}
    for u in (1, 2):
        left = ZERO
        right = ZERO
        for j, v in by_size.items():
            left = left + v * UniRat.mono("q", -j * u)
            right = right + v * UniRat.mono("q", j * u)
        sw_lhs[u] = left
        sw_rhs[u] = UniRat.mono("q", -m * u) * right
    pairs.append(("swap", sw_lhs, sw_rhs))
    return pairs


_RUNNERS = {
    "QBIN": _run_qbin,
    "EULER": _run_euler,
    "GENFUN": _run_genfun,
    "COMBINAT": _run_combinat,
    "UMOY_ABELIAN": _run_umoy_abelian,
    "UMOY_TYPE_S": _run_umoy_type_s,
    "DELAUNAY": _run_delaunay,
    "QBINHL": _run_qbinhl,
    "WARNAAR_A2": _run_warnaar_a2,
    "LASCOUX": _run_lascoux,
    "FINITE_QBINHL": _run_finite_qbinhl,
    "CSQ": _run_csq,
    "MIRROR_SWAP": _run_mirror_swap,
}

IDENTITY_IDS = tuple(sorted(_RUNNERS))


def verify(case, mutate=False):
    """Run one case and report pass/fail with the first mismatching coefficient."""
    if case.case_id not in _RUNNERS:
        raise ValueError("unknown identity id: %r" % (case.case_id,))
    seed = case.params.get("seed")
    rng = random.Random(seed if seed is not None else 0)
    start = time.perf_counter()
    pairs = _RUNNERS[case.case_id](case.params, rng)
    passed, mismatch, compared = _compare_pairs(pairs, mutate=mutate)
    elapsed = time.perf_counter() - start
    return VerificationReport(
        case_id=case.case_id,
        params=dict(case.params),
        strategy=case.strategy,
        passed=passed,
        mismatch=mismatch,
        compared=compared,
        elapsed=elapsed,
        seed=seed,
    )


def load_manifest(path=None):
    """Read the case manifest; returns (version, seed, list of IdentityCase)."""
    raw = json.loads(Path(path or _MANIFEST_PATH).read_text())
    cases = [
        IdentityCase(c["id"], dict(c.get("params", {})), c["strategy"])
        for c in raw["cases"]
    ]
    return raw["version"], raw.get("default_seed"), cases


def run_suite(ids=None, manifest=None, budget=None):
    """Verify every manifest case (optionally filtered); reports sorted by id."""
    _, _, cases = load_manifest(manifest)
    if ids is not None:
        wanted = set(ids)
        unknown = wanted - set(_RUNNERS)
        if unknown:
            raise ValueError("unknown identity id: %r" % (sorted(unknown)[0],))
        cases = [c for c in cases if c.case_id in wanted]
    reports = []
    spent = 0.0
    for case in cases:
        if budget is not None and spent > budget:
            break
        rep = verify(case)
        spent += rep.elapsed
        reports.append(rep)
    return sorted(reports, key=lambda r: (r.case_id, repr(sorted(r.params.items()))))
