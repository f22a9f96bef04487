"""Integer partitions: parsing, statistics, containment, enumeration."""

from functools import lru_cache
from math import comb

from .errors import ParseError


@lru_cache(maxsize=None)
def _conjugate(parts):
    if not parts:
        return ()
    return tuple(sum(1 for a in parts if a >= i) for i in range(1, parts[0] + 1))


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (empty allowed).

    Trailing zeros in the input are stripped; anything non-monotone or
    negative is rejected.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(a) for a in parts)
        n = len(parts)
        while n and parts[n - 1] == 0:
            n -= 1
        parts = parts[:n]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ParseError("parts must be weakly decreasing, got %r" % (parts,))
        if parts and parts[-1] < 0:
            raise ParseError("parts must be nonnegative, got %r" % (parts,))
        return tuple.__new__(cls, parts)

    def __repr__(self):
        return "Partition(%s)" % (tuple(self),)

    def __str__(self):
        return ",".join(str(a) for a in self)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def part(self, i):
        """The i-th part, 1-based; 0 beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self):
        """Transpose of the Young diagram: part i counts parts >= i."""
        return Partition(_conjugate(tuple(self)))

    def conj(self, i):
        """The i-th part of the conjugate, 1-based; 0 beyond lam_1."""
        c = _conjugate(tuple(self))
        return c[i - 1] if 1 <= i <= len(c) else 0

    def mult(self, i):
        """Multiplicity of the part value i >= 1."""
        return sum(1 for a in self if a == i)

    def nstat(self):
        """Sum of (i-1)*lam_i over 1-based i; equals sum of C(conj_i, 2)."""
        v = sum(i * a for i, a in enumerate(self))
        assert v == sum(comb(c, 2) for c in self.conjugate())
        return v

    def contains(self, mu):
        """True iff mu_i <= lam_i for every i (missing parts read as 0)."""
        mu = mu if isinstance(mu, Partition) else Partition(mu)
        ok = len(mu) <= len(self) and all(m <= a for m, a in zip(mu, self))
        if __debug__:
            mc, lc = mu.conjugate(), self.conjugate()
            ok2 = len(mc) <= len(lc) and all(m <= a for m, a in zip(mc, lc))
            assert ok == ok2
        return ok

    def mult_form(self):
        """Render as multiplicity clauses, e.g. (2,1,1) -> "1^2 2^1"."""
        vals = sorted(set(self))
        return " ".join("%d^%d" % (v, self.mult(v)) for v in vals)


def render(lam, style="parts"):
    """Canonical text for a partition: "parts" (comma form) or "mults"."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if style == "parts":
        return str(lam)
    if style == "mults":
        return lam.mult_form()
    raise ValueError("unknown style %r" % (style,))


def parse_partition(text):
    """Parse "3,1,1" (comma form) or "1^2 3^1" (multiplicity form).

    Blank text yields the empty partition.  The comma form must already be
    weakly decreasing; the multiplicity form is order-free.
    """
    s = text.strip()
    if not s:
        return Partition()
    if "^" in s:
        mults = {}
        for tok in s.split():
            head, sep, tail = tok.partition("^")
            if not sep:
                raise ParseError("expected value^mult clause, got %r" % (tok,))
            try:
                v, m = int(head), int(tail)
            except ValueError:
                raise ParseError("non-integer token %r" % (tok,)) from None
            if v <= 0:
                raise ParseError("part value must be positive in %r" % (tok,))
            if m < 0:
                raise ParseError("negative multiplicity in %r" % (tok,))
            mults[v] = mults.get(v, 0) + m
        parts = []
        for v in sorted(mults, reverse=True):
            parts.extend([v] * mults[v])
        return Partition(parts)
    parts = []
    for tok in s.split(","):
        tok = tok.strip()
        try:
            a = int(tok)
        except ValueError:
            raise ParseError("non-integer token %r" % (tok,)) from None
        if a <= 0:
            raise ParseError("zero or negative part %r" % (tok,))
        parts.append(a)
    for x, y in zip(parts, parts[1:]):
        if x < y:
            raise ParseError("comma form must be weakly decreasing, got %r" % (text,))
    return Partition(parts)


def partitions_of(n, max_part=None, max_length=None):
    """Yield the partitions of n in reverse-lexicographic order on parts."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield Partition()
        return
    mp = n if max_part is None else min(max_part, n)
    ml = n if max_length is None else max_length

    def rec(rem, mx, slots, prefix):
        if rem == 0:
            yield Partition(prefix)
            return
        if slots == 0 or mx == 0:
            return
        lo = -(-rem // slots)  # smallest feasible first part
        for a in range(min(mx, rem), lo - 1, -1):
            yield from rec(rem - a, a, slots - 1, prefix + (a,))

    yield from rec(n, mp, ml, ())


def subpartitions(lam):
    """Yield every mu with mu_i <= lam_i, each exactly once."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)

    def rec(i, cap):
        if i == len(lam):
            yield ()
            return
        for a in range(min(cap, lam[i]), 0, -1):
            for rest in rec(i + 1, a):
                yield (a,) + rest
        yield ()

    for parts in rec(0, lam[0] if lam else 0):
        yield Partition(parts)
