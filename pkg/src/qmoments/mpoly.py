"""Sparse multivariate polynomials over exact rational-function scalars.

An MPoly maps exponent tuples (one slot per variable) to nonzero UniRat
coefficients.  Variables never appear in denominators; exact division is
provided for quotients known to be polynomial (Vandermonde-type factors).
"""

from fractions import Fraction

from .qrat import UniRat, ZERO


def _unify(p1, p2):
    if p1 is None:
        return p2
    if p2 is None or p1 == p2:
        return p1
    from .errors import ParamMismatch

    raise ParamMismatch("cannot combine parameters %r and %r" % (p1, p2))


class MPoly:
    """Polynomial in x_1..x_nvars with UniRat coefficients."""

    __slots__ = ("nvars", "terms", "param")

    def __init__(self, terms, nvars, param=None):
        clean = {}
        for e, c in terms.items():
            if not isinstance(c, UniRat):
                c = UniRat.const(c)
            if c.is_zero():
                continue
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent %r has wrong arity" % (e,))
            param = _unify(param, c.param)
            clean[e] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "param", param)

    def __setattr__(self, *a):
        raise AttributeError("MPoly is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(nvars, param=None):
        return MPoly({}, nvars, param)

    @staticmethod
    def one(nvars, param=None):
        return MPoly({(0,) * nvars: UniRat.one()}, nvars, param)

    @staticmethod
    def const(c, nvars, param=None):
        return MPoly({(0,) * nvars: c}, nvars, param)

    @staticmethod
    def var(i, nvars, param=None):
        """x_i for 0-based i."""
        e = [0] * nvars
        e[i] = 1
        return MPoly({tuple(e): UniRat.one()}, nvars, param)

    @staticmethod
    def mono(exps, coeff=1, param=None):
        exps = tuple(exps)
        return MPoly({exps: coeff}, len(exps), param)

    # -- views ----------------------------------------------------------------

    def coeff_of(self, exps):
        return self.terms.get(tuple(exps), ZERO)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def homogeneous_degree(self):
        """Common total degree of all terms, or None."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else 0

    # -- ring operations -------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("operand arities differ: %d vs %d" % (self.nvars, other.nvars))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, UniRat)):
            other = MPoly.const(other, self.nvars)
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return MPoly(out, self.nvars, _unify(self.param, other.param))

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.nvars, self.param)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, UniRat)):
            other = MPoly.const(other, self.nvars)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def mul(self, other, keep=None):
        """Product, optionally dropping exponents where keep(exps) is false."""
        if isinstance(other, (int, Fraction, UniRat)):
            other = MPoly.const(other, self.nvars)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if keep is not None and e not in out and not keep(e):
                    continue
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        return MPoly(out, self.nvars, _unify(self.param, other.param))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UniRat, MPoly)):
            return self.mul(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c):
        if not isinstance(c, UniRat):
            c = UniRat.const(c)
        if c.is_zero():
            return MPoly.zero(self.nvars, self.param)
        return MPoly(
            {e: v * c for e, v in self.terms.items()},
            self.nvars,
            _unify(self.param, c.param),
        )

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = MPoly.one(self.nvars, self.param)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def divexact(self, other):
        """Exact division by a polynomial divisor; raises if any remainder."""
        if isinstance(other, (int, Fraction, UniRat)):
            u = other if isinstance(other, UniRat) else UniRat.const(other)
            return self.scale(UniRat.one() / u)
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        dlead = max(other.terms)
        dc = other.terms[dlead]
        rest = [(e, c) for e, c in other.terms.items() if e != dlead]
        r = dict(self.terms)
        out = {}
        while r:
            m = max(r)
            qe = tuple(a - b for a, b in zip(m, dlead))
            if any(x < 0 for x in qe):
                raise ArithmeticError("inexact polynomial division")
            qc = r.pop(m) / dc
            out[qe] = qc
            for e, c in rest:
                t = tuple(a + b for a, b in zip(qe, e))
                s = r.get(t, ZERO) - qc * c
                if s.is_zero():
                    r.pop(t, None)
                else:
                    r[t] = s
        return MPoly(out, self.nvars, _unify(self.param, other.param))

    # -- substitutions ----------------------------------------------------------

    def permute_vars(self, perm):
        """Relabel variables: old slot i becomes new slot perm[i]."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, a in enumerate(e):
                ne[perm[i]] = a
            out[tuple(ne)] = c
        return MPoly(out, self.nvars, self.param)

    def swap_vars(self, i, j):
        perm = list(range(self.nvars))
        perm[i], perm[j] = perm[j], perm[i]
        return self.permute_vars(perm)

    def embed(self, nvars, positions):
        """View inside a larger variable list; old slot i goes to positions[i]."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, a in enumerate(e):
                ne[positions[i]] = a
            out[tuple(ne)] = c
        return MPoly(out, nvars, self.param)

    def subs_scalar(self, i, value):
        """Substitute x_i -> value (a UniRat scalar); arity is preserved."""
        if not isinstance(value, UniRat):
            value = UniRat.const(value)
        out = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1 :]
            nc = c * value ** e[i] if e[i] else c
            s = out.get(ne)
            t = nc if s is None else s + nc
            out[ne] = t
        return MPoly(out, self.nvars, _unify(self.param, value.param))

    def eval_scalars(self, values):
        """Full substitution x_i -> values[i]; returns a UniRat."""
        vals = [v if isinstance(v, UniRat) else UniRat.const(v) for v in values]
        if len(vals) != self.nvars:
            raise ValueError("need %d values" % self.nvars)
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for a, v in zip(e, vals):
                if a:
                    t = t * v ** a
            total = total + t
        return total

    def specialize_param(self, x):
        """Evaluate every coefficient at the rational point x."""
        out = {}
        for e, c in self.terms.items():
            out[e] = UniRat.const(c.eval_at(x))
        return MPoly(out, self.nvars)

    # -- comparison and rendering -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.nvars != other.nvars or self.terms != other.terms:
            return False
        if self.param is None or other.param is None:
            return True
        return self.param == other.param

    def as_json(self):
        return [
            {"exps": list(e), "coeff": c.as_json()}
            for e, c in sorted(self.terms.items(), reverse=True)
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                "x%d^%d" % (i + 1, a) if a > 1 else "x%d" % (i + 1)
                for i, a in enumerate(e)
                if a
            )
            bits.append("(%r)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(bits)
