"""Exact multivariate polynomial arithmetic over the rationals.

A Polynomial fixes the ambient variable count n and stores its terms as a
dict mapping exponent tuples of length n to nonzero Fraction coefficients.
Coefficients are always Fractions; there are no floats anywhere.  Mixing
polynomials with different ambient n raises AmbientMismatch rather than
guessing a coercion.

Monomial order comparators (lex, grevlex) are exposed as standalone key
functions on exponent tuples so that Groebner code and canonical printing
share one definition.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction


class AmbientMismatch(ValueError):
    """Two objects disagree on the ambient variable count."""


def lex_key(exps):
    """Sort key for lexicographic order: bigger key = bigger monomial."""
    return tuple(exps)


def grevlex_key(exps):
    """Sort key for graded reverse lexicographic order.

    Compare total degree first; ties are broken so that the monomial whose
    rightmost differing exponent is smaller wins.
    """
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _coerce(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected int or Fraction coefficient, got {type(c).__name__}")


class Polynomial:
    """Immutable exact polynomial in variables x1..xn over Q."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms=None):
        if n < 0:
            raise ValueError("ambient variable count must be nonnegative")
        self.n = n
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise AmbientMismatch(f"exponent tuple {exps} has length != {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _coerce(c)
            if c:
                clean[exps] = c
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def one(cls, n):
        return cls.constant(n, 1)

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n, i):
        """The variable x_i, 1-indexed."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def monomial(cls, n, exps, c=1):
        return cls(n, {tuple(exps): c})

    # -- ring structure ----------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise AmbientMismatch(f"cannot mix ambient n={self.n} with n={other.n}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            if not c:
                return Polynomial.zero(self.n)
            return Polynomial(self.n, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure queries ---------------------------------------------

    def degree(self):
        """Total degree; the zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d):
        return Polynomial(self.n, {e: c for e, c in self.terms.items() if sum(e) == d})

    def homogeneous_parts(self):
        """Dict degree -> homogeneous component, zero parts omitted."""
        out = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.n, t) for d, t in sorted(out.items())}

    def leading(self, key=grevlex_key):
        """(exponent tuple, coefficient) of the order-maximal term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=key)
        return e, self.terms[e]

    # -- calculus --------------------------------------------------------

    def partial(self, i):
        """Partial derivative with respect to x_i (1-indexed)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"variable index {i} out of range 1..{self.n}")
        out = {}
        for e, c in self.terms.items():
            if e[i - 1]:
                f = list(e)
                f[i - 1] -= 1
                out[tuple(f)] = c * e[i - 1]
        return Polynomial(self.n, out)

    # -- substitution ------------------------------------------------------

    def specialize(self, point):
        """Evaluate at a rational point (sequence of n ints/Fractions)."""
        point = [_coerce(v) for v in point]
        if len(point) != self.n:
            raise AmbientMismatch(f"point has length {len(point)}, expected {self.n}")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def set_var_zero(self, i):
        """Substitute x_i -> 0, staying in the same ambient ring."""
        if not 1 <= i <= self.n:
            raise ValueError(f"variable index {i} out of range 1..{self.n}")
        return Polynomial(
            self.n, {e: c for e, c in self.terms.items() if e[i - 1] == 0}
        )

    def drop_var(self, i):
        """Remove an unused variable x_i and reindex to ambient n-1."""
        if not 1 <= i <= self.n:
            raise ValueError(f"variable index {i} out of range 1..{self.n}")
        out = {}
        for e, c in self.terms.items():
            if e[i - 1]:
                raise ValueError(f"polynomial depends on x{i}; substitute first")
            out[e[: i - 1] + e[i:]] = c
        return Polynomial(self.n - 1, out)

    # -- text form ---------------------------------------------------------

    def text(self):
        """Canonical serialization: grevlex-descending terms, no spaces.

        Term grammar: coefficient as p or p/q, then *xi or *xi^e factors for
        the positive exponents; coefficient 1 / -1 compresses to nothing / a
        sign when a variable factor is present.  Round-trips through parse().
        """
        if not self.terms:
            return "0"
        chunks = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e, start=1):
                if k == 1:
                    factors.append(f"x{i}")
                elif k > 1:
                    factors.append(f"x{i}^{k}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([_frac_text(mag)] + factors)
            else:
                body = _frac_text(mag)
            if not chunks:
                chunks.append(("-" if c < 0 else "") + body)
            else:
                chunks.append(("-" if c < 0 else "+") + body)
        return "".join(chunks)

    @classmethod
    def parse(cls, s, n):
        """Parse the text() format (tolerates whitespace)."""
        s = s.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        if s == "0":
            return cls.zero(n)
        terms = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            if not body:
                raise ValueError(f"bad polynomial syntax in {s!r}")
            coeff = Fraction(-1 if sign == "-" else 1)
            exps = [0] * n
            saw_coeff = False
            for part in body.split("*"):
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", part)
                if m:
                    i = int(m.group(1))
                    if not 1 <= i <= n:
                        raise ValueError(f"variable x{i} out of range 1..{n}")
                    exps[i - 1] += int(m.group(2) or 1)
                    continue
                m = re.fullmatch(r"(\d+)(?:/(\d+))?", part)
                if m and not saw_coeff:
                    coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
                    saw_coeff = True
                    continue
                raise ValueError(f"bad term part {part!r} in {s!r}")
            key = tuple(exps)
            s2 = terms.get(key, 0) + coeff
            if s2:
                terms[key] = s2
            else:
                terms.pop(key, None)
        return cls(n, terms)

    def __repr__(self):
        return f"Polynomial({self.n}, {self.text()!r})"


def _frac_text(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def variables(n):
    """[x1, ..., xn] as Polynomials."""
    return [Polynomial.variable(n, i) for i in range(1, n + 1)]


def diffop_apply(f, g):
    """Apply f as a constant-coefficient differential operator to g.

    Each monomial c*x^a of f acts as c * d^a/dx^a.  The pairing is exact:
    x^a applied to x^b gives prod_i b_i!/(b_i-a_i)! * x^(b-a) when b >= a
    componentwise and 0 otherwise.
    """
    if f.n != g.n:
        raise AmbientMismatch(f"cannot mix ambient n={f.n} with n={g.n}")
    out = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            if any(bi < ai for ai, bi in zip(a, b)):
                continue
            c = ca * cb
            for ai, bi in zip(a, b):
                if ai:
                    c *= math.perm(bi, ai)
            key = tuple(bi - ai for ai, bi in zip(a, b))
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Polynomial(f.n, out)


def vandermonde(n):
    """prod_{1 <= i < j <= n} (x_i - x_j)."""
    xs = variables(n)
    result = Polynomial.one(n)
    for i in range(n):
        for j in range(i + 1, n):
            result = result * (xs[i] - xs[j])
    return result


def exact_divide(f, g, key=grevlex_key):
    """Return f/g if g divides f exactly, else None.

    Single-divisor division: the remainder is zero iff g | f, because any
    nonzero remainder (f - q*g = (h - q)*g for f = h*g) would carry a term
    divisible by the leading term of g, which division forbids.
    """
    if f.n != g.n:
        raise AmbientMismatch(f"cannot mix ambient n={f.n} with n={g.n}")
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return Polynomial.zero(f.n)
    ge, gc = g.leading(key)
    work = dict(f.terms)
    quot = {}
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        if any(ei < gi for ei, gi in zip(e, ge)):
            return None
        shift = tuple(ei - gi for ei, gi in zip(e, ge))
        q = c / gc
        quot[shift] = q
        for e2, c2 in g.terms.items():
            if e2 == ge:
                continue
            key2 = tuple(a + b for a, b in zip(shift, e2))
            s = work.get(key2, 0) - q * c2
            if s:
                work[key2] = s
            else:
                work.pop(key2, None)
    return Polynomial(f.n, quot)


def divides(g, f):
    """True iff g divides f exactly (g nonzero)."""
    return exact_divide(f, g) is not None


def matrix_determinant(rows, n):
    """Determinant of a square matrix of polynomials in n variables.

    Laplace expansion memoized on column subsets; fine for the small
    matrices used here, and zero entries prune the expansion.
    """
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("matrix must be square")
    cache = {}

    def minor(r, cols):
        if not cols:
            return Polynomial.one(n)
        got = cache.get(cols)
        if got is not None:
            return got
        total = Polynomial.zero(n)
        sign = 1
        for idx, c in enumerate(cols):
            entry = rows[r][c]
            if entry:
                total = total + sign * entry * minor(r + 1, cols[:idx] + cols[idx + 1 :])
            sign = -sign
        cache[cols] = total
        return total

    return minor(0, tuple(range(size)))
