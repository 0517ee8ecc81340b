"""Exact sparse arithmetic in Z[beta, x_1..x_N] under degree caps, plus
windowed Laurent series in an auxiliary variable z over that ring.

All computation happens in the quotient of Z[beta, x_1..x_N] by the monomial
ideal spanned by beta^b * x^alpha with b > beta_cap or |alpha| > x_cap.
Truncating to the caps is a ring homomorphism, so every coefficient below the
caps is exact.  Coefficients are Python ints; Fractions appear transiently
(the 1/n in Hamiltonian weights, the 1/k! in exponentials) and are collapsed
back to ints whenever the denominator clears.

A cap value of None means "no truncation" in that direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError, UsageError, WindowError


def cap_min(a, b):
    """Componentwise min of two cap values, None acting as +infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def cap_ok(value, cap):
    """True iff a degree fits under a cap (None = no bound)."""
    return cap is None or value <= cap


@dataclass(frozen=True)
class Ring:
    """The quotient ring Z[beta, x_1..x_N] / (terms above the caps)."""

    n_vars: int
    beta_cap: int | None
    x_cap: int | None

    def __post_init__(self):
        if self.n_vars < 0:
            raise UsageError("n_vars must be nonnegative")
        for cap in (self.beta_cap, self.x_cap):
            if cap is not None and cap < 0:
                raise UsageError("caps must be nonnegative or None")

    def meet(self, other: "Ring") -> "Ring":
        """Common quotient ring: same variables, componentwise-min caps."""
        if self.n_vars != other.n_vars:
            raise UsageError(
                f"mixed variable counts: {self.n_vars} vs {other.n_vars}")
        if self == other:
            return self
        return Ring(self.n_vars, cap_min(self.beta_cap, other.beta_cap),
                    cap_min(self.x_cap, other.x_cap))

    def bumped(self, by: int = 1) -> "Ring":
        """Same ring with both caps raised (used for stabilization reruns)."""
        bc = None if self.beta_cap is None else self.beta_cap + by
        xc = None if self.x_cap is None else self.x_cap + by
        return Ring(self.n_vars, bc, xc)

    # -- element constructors ------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = _norm_coeff(c)
        if c == 0:
            return Poly(self, {})
        return Poly(self, {(0, (0,) * self.n_vars): c})

    def x(self, k: int) -> "Poly":
        """The variable x_k (1-based)."""
        if not 1 <= k <= self.n_vars:
            raise UsageError(f"x_{k} does not exist with n_vars={self.n_vars}")
        if not cap_ok(1, self.x_cap):
            return self.zero()
        degs = [0] * self.n_vars
        degs[k - 1] = 1
        return Poly(self, {(0, tuple(degs)): 1})

    def beta(self) -> "Poly":
        if not cap_ok(1, self.beta_cap):
            return self.zero()
        return Poly(self, {(1, (0,) * self.n_vars): 1})

    def monomial(self, beta_deg: int, x_degs, coeff=1) -> "Poly":
        x_degs = tuple(x_degs)
        if len(x_degs) != self.n_vars:
            raise UsageError("exponent vector length != n_vars")
        if beta_deg < 0 or any(e < 0 for e in x_degs):
            raise UsageError("exponents must be nonnegative")
        coeff = _norm_coeff(coeff)
        if coeff == 0 or not cap_ok(beta_deg, self.beta_cap) \
                or not cap_ok(sum(x_degs), self.x_cap):
            return self.zero()
        return Poly(self, {(beta_deg, x_degs): coeff})


def _norm_coeff(c):
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    return c


class Poly:
    """Sparse polynomial: mapping (beta_deg, x_degs) -> nonzero coefficient.

    Immutable after construction.  Arithmetic truncates into the meet of the
    operand rings, so values computed at different caps combine soundly.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def beta_degree(self) -> int:
        """Max beta exponent, -1 for the zero polynomial."""
        return max((k[0] for k in self.terms), default=-1)

    def x_degree(self) -> int:
        """Max total x-degree, -1 for the zero polynomial."""
        return max((sum(k[1]) for k in self.terms), default=-1)

    def coefficient(self, beta_deg: int, x_degs) -> int | Fraction:
        return self.terms.get((beta_deg, tuple(x_degs)), 0)

    def has_integer_coefficients(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def require_integer_coefficients(self) -> "Poly":
        if not self.has_integer_coefficients():
            raise InternalError(
                "final result has non-integer coefficients: "
                "a transient denominator failed to clear")
        return self

    # -- arithmetic -----------------------------------------------------

    def _compat(self, other: "Poly") -> Ring:
        return self.ring.meet(other.ring)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        ring = self._compat(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = _norm_coeff(s)
        return Poly(ring, _retrunc(out, ring) if ring is not self.ring else out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        ring = self._compat(other)
        bcap, xcap = ring.beta_cap, ring.x_cap
        a = [(k[0], k[1], sum(k[1]), c) for k, c in self.terms.items()]
        b = [(k[0], k[1], sum(k[1]), c) for k, c in other.terms.items()]
        if len(a) > len(b):          # fewer outer iterations on the big list
            a, b = b, a
        b.sort(key=lambda t: t[2])   # ascending x-degree enables early break
        out: dict = {}
        get = out.get
        for b1, x1, d1, c1 in a:
            brem = None if bcap is None else bcap - b1
            xrem = None if xcap is None else xcap - d1
            for b2, x2, d2, c2 in b:
                if xrem is not None and d2 > xrem:
                    break
                if brem is not None and b2 > brem:
                    continue
                key = (b1 + b2, tuple(map(_add, x1, x2)))
                s = get(key, 0) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return Poly(ring, {k: _norm_coeff(c) for k, c in out.items() if c != 0})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Poly":
        c = _norm_coeff(c)
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        return Poly(self.ring,
                    {k: _norm_coeff(v * c) for k, v in self.terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise UsageError("only nonnegative integer powers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def truncate(self, ring: Ring) -> "Poly":
        """Image in a smaller quotient ring (caps meet; n_vars must match)."""
        target = self.ring.meet(ring)
        if target == self.ring:
            return self
        return Poly(target, _retrunc(self.terms, target))

    # -- ordering / equality / rendering --------------------------------

    def sorted_terms(self):
        """Terms in graded-lex order: grade = beta_deg + total x-degree,
        ties broken by descending (beta_deg, x_1, ..., x_N).  This is the
        canonical serialization order."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][0] + sum(kv[0][1]),
                            tuple(-e for e in (kv[0][0],) + kv[0][1])))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring.n_vars == other.ring.n_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.n_vars, frozenset(self.terms.items())))

    def to_text(self) -> str:
        """Render as ASCII, beta written as 'b': e.g. 'x1 + x2 + b*x1*x2'."""
        if not self.terms:
            return "0"
        parts = []
        for (bdeg, xdegs), coeff in self.sorted_terms():
            factors = []
            if bdeg == 1:
                factors.append("b")
            elif bdeg > 1:
                factors.append(f"b^{bdeg}")
            for k, e in enumerate(xdegs, start=1):
                if e == 1:
                    factors.append(f"x{k}")
                elif e > 1:
                    factors.append(f"x{k}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.to_text()})"


def _add(u, v):
    return u + v


def _retrunc(terms: dict, ring: Ring) -> dict:
    bcap, xcap = ring.beta_cap, ring.x_cap
    return {k: c for k, c in terms.items()
            if cap_ok(k[0], bcap) and cap_ok(sum(k[1]), xcap) and c != 0}


def gen_binomial(a: int, s: int) -> int:
    """Generalized binomial C(a, s) = a(a-1)...(a-s+1)/s! for any integer a,
    s >= 0.  C(a, 0) = 1; for negative a this never vanishes."""
    if s < 0:
        raise UsageError("gen_binomial needs s >= 0")
    num = math.prod(range(a - s + 1, a + 1))
    return num // math.factorial(s)


def determinant(rows):
    """Determinant of a square matrix by Laplace expansion, memoized over
    column subsets.  Works over any commutative ring whose elements support
    +, -, * and 0-scaling (Poly, int, Fraction); fine for r up to ~8."""
    r = len(rows)
    if r == 0:
        raise UsageError("determinant of an empty matrix: caller decides")
    for row in rows:
        if len(row) != r:
            raise UsageError("determinant needs a square matrix")
    zero = rows[0][0] * 0
    memo = {}

    def expand(cols: frozenset):
        i = r - len(cols)          # expand along row i over remaining cols
        if len(cols) == 1:
            (j,) = cols
            return rows[i][j]
        value = memo.get(cols)
        if value is not None:
            return value
        acc = zero
        for pos, j in enumerate(sorted(cols)):
            entry = rows[i][j]
            term = entry * expand(cols - {j})
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return expand(frozenset(range(r)))


class SeriesWindow:
    """A z-Laurent series over Poly, represented on a finite window.

    coeffs holds the (nonzero) coefficients for exponents in [lo, hi].
    exact_below / exact_above record that every coefficient of the true
    series below lo / above hi vanishes *in the quotient ring*, so a window
    with both flags set captures the whole series.  Multiplication shrinks
    the window to the range where the convolution is provably complete and
    never returns a silently partial coefficient.
    """

    __slots__ = ("lo", "hi", "coeffs", "ring", "exact_below", "exact_above")

    def __init__(self, ring: Ring, lo: int, hi: int, coeffs: dict,
                 exact_below: bool = True, exact_above: bool = True):
        if lo > hi:
            raise UsageError("empty series window")
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.coeffs = {n: p for n, p in coeffs.items() if not p.is_zero()}
        for n in self.coeffs:
            if not lo <= n <= hi:
                raise UsageError("stored coefficient outside window")
        self.exact_below = exact_below
        self.exact_above = exact_above

    def coefficient(self, n: int) -> Poly:
        """Exact z^n coefficient, or WindowError if outside the valid range."""
        if self.lo <= n <= self.hi:
            return self.coeffs.get(n, self.ring.zero())
        if n < self.lo and self.exact_below:
            return self.ring.zero()
        if n > self.hi and self.exact_above:
            return self.ring.zero()
        raise WindowError(
            f"coefficient of z^{n} is not guaranteed by window "
            f"[{self.lo}, {self.hi}] (exact_below={self.exact_below}, "
            f"exact_above={self.exact_above})")

    def scale_poly(self, p: Poly) -> "SeriesWindow":
        return SeriesWindow(
            self.ring, self.lo, self.hi,
            {n: c * p for n, c in self.coeffs.items()},
            self.exact_below, self.exact_above)

    def multiply(self, other: "SeriesWindow",
                 asserted_support=None) -> "SeriesWindow":
        """Product window.  A coefficient of the result is kept only where
        every contribution a_k * b_{n-k} is either computable (both factors
        in-window) or known to vanish in the quotient ring (flagged side).

        asserted_support=(lo, hi): the caller guarantees, by an argument
        about the factors (e.g. positive z-degrees always carry at least
        that much x-degree), that the true product is supported inside
        [lo, hi] in the quotient ring; storage is clipped accordingly while
        keeping the exactness flags.
        """
        ring = self.ring.meet(other.ring)
        lo = self.lo + other.lo
        hi = self.hi + other.hi
        valid_lo, valid_hi = None, None
        if not self.exact_below:
            if not other.exact_above:
                raise WindowError("product has no provably complete range")
            valid_lo = _imax(valid_lo, self.lo + other.hi)
        if not self.exact_above:
            if not other.exact_below:
                raise WindowError("product has no provably complete range")
            valid_hi = _imin(valid_hi, self.hi + other.lo)
        if not other.exact_below:
            if not self.exact_above:
                raise WindowError("product has no provably complete range")
            valid_lo = _imax(valid_lo, self.hi + other.lo)
        if not other.exact_above:
            if not self.exact_below:
                raise WindowError("product has no provably complete range")
            valid_hi = _imin(valid_hi, self.lo + other.hi)
        if valid_lo is not None:
            lo = max(lo, valid_lo)
        if valid_hi is not None:
            hi = min(hi, valid_hi)
        if asserted_support is not None:
            clip_lo, clip_hi = asserted_support
            if clip_lo is not None:
                lo = max(lo, clip_lo)
            if clip_hi is not None:
                hi = min(hi, clip_hi)
        if lo > hi:
            raise WindowError("product window is empty")
        out: dict = {}
        for ka, pa in self.coeffs.items():
            for kb, pb in other.coeffs.items():
                n = ka + kb
                if lo <= n <= hi:
                    prod = pa * pb
                    if not prod.is_zero():
                        cur = out.get(n)
                        out[n] = prod if cur is None else cur + prod
        return SeriesWindow(ring, lo, hi, out,
                            self.exact_below and other.exact_below,
                            self.exact_above and other.exact_above)

    def trimmed(self) -> "SeriesWindow":
        """Shrink exact edges past stored zeros (pure representation change)."""
        lo, hi = self.lo, self.hi
        if self.exact_below:
            while lo < hi and lo not in self.coeffs:
                lo += 1
        if self.exact_above:
            while hi > lo and hi not in self.coeffs:
                hi -= 1
        if lo == self.lo and hi == self.hi:
            return self
        return SeriesWindow(self.ring, lo, hi,
                            {n: p for n, p in self.coeffs.items()
                             if lo <= n <= hi},
                            self.exact_below, self.exact_above)

    def __repr__(self):
        inner = ", ".join(f"z^{n}: {self.coeffs[n].to_text()}"
                          for n in sorted(self.coeffs))
        return (f"SeriesWindow[{self.lo}..{self.hi}]"
                f"({inner}, below={self.exact_below}, above={self.exact_above})")


def _imax(a, b):
    return b if a is None else max(a, b)


def _imin(a, b):
    return b if a is None else min(a, b)
