"""Polynomial-exterior tensor ring and its coinvariant quotient.

Elements mix ordinary variables x_1..x_n with anticommuting generators
t_1..t_n (t_i*t_j = -t_j*t_i, squares vanish).  Everything is bigraded by
(polynomial degree, anticommuting degree).  The quotient by the ideal of
positive-degree diagonal-symmetric elements is studied through exact
per-bidegree linear algebra: spanning rows for the ideal piece, ranks over
the rationals, and the staircase monomial family as a candidate basis.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .arrangements import staircase_monomials
from .polynomials import AmbientMismatch, Polynomial, grevlex_key


class SuperMonomial:
    """One product x^exps * t_J with the t-indices stored ascending."""

    __slots__ = ("exps", "thetas")

    def __init__(self, exps, thetas):
        exps = tuple(exps)
        thetas = tuple(thetas)
        n = len(exps)
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        if list(thetas) != sorted(set(thetas)):
            raise ValueError("t-indices must be strictly increasing")
        if thetas and not (1 <= thetas[0] and thetas[-1] <= n):
            raise ValueError("t-index out of range")
        self.exps = exps
        self.thetas = thetas

    @property
    def n(self):
        return len(self.exps)

    def bidegree(self):
        return (sum(self.exps), len(self.thetas))

    def text(self):
        parts = []
        for i, e in enumerate(self.exps, start=1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        parts.extend(f"t{i}" for i in self.thetas)
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        if not isinstance(other, SuperMonomial):
            return NotImplemented
        return self.exps == other.exps and self.thetas == other.thetas

    def __hash__(self):
        return hash((self.exps, self.thetas))

    def __repr__(self):
        return f"SuperMonomial({self.text()!r})"


def _merge_sign(a, b):
    """Sign for t_a * t_b with both tuples ascending; 0 on overlap."""
    if set(a) & set(b):
        return 0, ()
    inversions = sum(1 for i in a for j in b if i > j)
    merged = tuple(sorted(a + b))
    return (-1) ** inversions, merged


def _term_sort_key(key):
    exps, thetas = key
    return (len(thetas), tuple(-t for t in thetas), grevlex_key(exps))


class SuperElement:
    """Linear combination of SuperMonomials with rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[key] = c
        self.terms = clean

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls(n, {((0,) * n, ()): Fraction(1)})

    @classmethod
    def monomial(cls, mono, coeff=1):
        return cls(mono.n, {(mono.exps, mono.thetas): Fraction(coeff)})

    @classmethod
    def from_polynomial(cls, p):
        return cls(p.n, {(e, ()): c for e, c in p.terms.items()})

    @classmethod
    def theta(cls, n, i):
        if not 1 <= i <= n:
            raise ValueError(f"t-index {i} out of range")
        return cls(n, {((0,) * n, (i,)): Fraction(1)})

    def _check(self, other):
        if self.n != other.n:
            raise AmbientMismatch(f"cannot mix ambient n={self.n} with n={other.n}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SuperElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, SuperElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return SuperElement(self.n, out)

    def __neg__(self):
        return SuperElement(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SuperElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return SuperElement(self.n, {k: c * v for k, v in self.terms.items()})
        if not isinstance(other, SuperElement):
            return NotImplemented
        self._check(other)
        out = {}
        for (ea, ta), ca in self.terms.items():
            for (eb, tb), cb in other.terms.items():
                sign, merged = _merge_sign(ta, tb)
                if not sign:
                    continue
                exps = tuple(a + b for a, b in zip(ea, eb))
                key = (exps, merged)
                s = out.get(key, 0) + sign * ca * cb
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return SuperElement(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def bidegrees(self):
        return {(sum(e), len(t)) for e, t in self.terms}

    def is_bihomogeneous(self):
        return len(self.bidegrees()) <= 1

    def bidegree(self):
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError("element is zero or mixes bidegrees")
        return degs.pop()

    def text(self):
        if not self.terms:
            return "0"
        chunks = []
        for key in sorted(self.terms, key=_term_sort_key):
            c = self.terms[key]
            mono = SuperMonomial(*key).text()
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            chunks.append(("-" if c < 0 else "+") + body)
        joined = "".join(chunks)
        return joined[1:] if joined.startswith("+") else joined

    def __repr__(self):
        return f"SuperElement({self.n}, {self.text()!r})"


def euler_d(omega):
    """Total derivative: x-monomial f times t_J goes to sum d_i(f)*t_i*t_J."""
    n = omega.n
    out = {}
    for (exps, thetas), c in omega.terms.items():
        for i in range(1, n + 1):
            e = exps[i - 1]
            if not e or i in thetas:
                continue
            sign = (-1) ** sum(1 for t in thetas if t < i)
            new_exps = exps[: i - 1] + (e - 1,) + exps[i:]
            new_thetas = tuple(sorted(thetas + (i,)))
            key = (new_exps, new_thetas)
            s = out.get(key, 0) + sign * c * e
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return SuperElement(n, out)


def sn_act(w, omega):
    """Relabel both variable families along a permutation of 1..n."""
    w = tuple(w)
    n = omega.n
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..n")
    out = {}
    for (exps, thetas), c in omega.terms.items():
        new_exps = [0] * n
        for i, e in enumerate(exps, start=1):
            new_exps[w[i - 1] - 1] = e
        image = [w[t - 1] for t in thetas]
        inversions = sum(
            1
            for a in range(len(image))
            for b in range(a + 1, len(image))
            if image[a] > image[b]
        )
        key = (tuple(new_exps), tuple(sorted(image)))
        s = out.get(key, 0) + (-1) ** inversions * c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return SuperElement(n, out)


def power_sum_element(k, n):
    """Sum of k-th powers of the x-variables as a SuperElement."""
    if k < 1:
        raise ValueError("positive powers only")
    terms = {}
    for i in range(n):
        exps = [0] * n
        exps[i] = k
        terms[(tuple(exps), ())] = Fraction(1)
    return SuperElement(n, terms)


def invariant_generators(n):
    """Positive-degree diagonal invariants generating the quotient ideal.

    The power sums and their total derivatives suffice; the verification
    suite guards this choice through the total-dimension count.
    """
    gens = []
    for k in range(1, n + 1):
        p = power_sum_element(k, n)
        gens.append(p)
        gens.append(euler_d(p))
    return gens


def super_monomials(n, i, j):
    """All monomials of bidegree (i, j), deterministic order."""
    if i < 0 or j < 0 or j > n:
        return []
    exps_list = sorted(_exponents(n, i), key=grevlex_key, reverse=True)
    out = []
    for thetas in itertools.combinations(range(1, n + 1), j):
        for exps in exps_list:
            out.append(SuperMonomial(exps, thetas))
    return out


def _exponents(n, total):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _exponents(n - 1, total - head):
            yield (head,) + rest


def dim_bidegree(n, i, j):
    """Dimension of the full bidegree-(i, j) piece of the tensor ring."""
    if i < 0 or j < 0 or j > n:
        return 0
    return comb(n, j) * comb(i + n - 1, n - 1)


def invariant_ideal_rows(n, i, j):
    """Spanning set of the bidegree-(i, j) piece of the invariant ideal.

    Every ideal element of this bidegree is a combination of generator
    times monomial products, so those products span the piece.
    """
    rows = []
    for g in invariant_generators(n):
        gi, gj = g.bidegree()
        for m in super_monomials(n, i - gi, j - gj):
            rows.append(g * SuperElement.monomial(m))
    return rows


def rank_of_elements(elements):
    """Rank over the rationals of the span of the given elements.

    Sparse Gaussian elimination with monic pivot rows; columns are the
    monomial keys in their natural tuple order, so the result is
    deterministic and exact.
    """
    pivots = {}
    rank = 0
    for elem in elements:
        row = dict(elem.terms)
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = Fraction(1) / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
            factor = row.pop(col)
            for c, v in piv.items():
                if c == col:
                    continue
                s = row.get(c, 0) - factor * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
    return rank


def fubini(n):
    """Number of ordered set partitions of an n-element set."""
    vals = [1]
    for m in range(1, n + 1):
        vals.append(sum(comb(m, k) * vals[m - k] for k in range(1, m + 1)))
    return vals[n]


def _skip_sets(n):
    subsets = [
        frozenset(c)
        for r in range(n + 1)
        for c in itertools.combinations(range(1, n + 1), r)
    ]
    return sorted(subsets, key=lambda J: (len(J), tuple(sorted(-j for j in J))))


def artin_monomials(n):
    """Staircase monomials decorated per skip set, in display order.

    Blocks are ordered by skip-set size and then colexicographically from
    the top; within a block the staircase monomials descend in lex order.
    """
    out = []
    for J in _skip_sets(n):
        thetas = tuple(sorted(J))
        for exps in staircase_monomials(J, n):
            out.append(SuperMonomial(exps, thetas))
    return out


def sr_bigraded_dimensions(n):
    """Quotient dimensions per bidegree over the full relevant grid."""
    table = {}
    for i in range(n * (n - 1) // 2 + 1):
        for j in range(n + 1):
            rank = rank_of_elements(invariant_ideal_rows(n, i, j))
            table[(i, j)] = dim_bidegree(n, i, j) - rank
    return table


def verify_sr_basis(n):
    """Certify the decorated staircase monomials as a quotient basis.

    Works bidegree by bidegree: the candidate monomials of each bidegree
    must be independent from the ideal piece (stacked rank adds their
    count) and must exactly exhaust the quotient dimension; the grand
    total must match the ordered-set-partition count.
    """
    mons = artin_monomials(n)
    buckets = {}
    for m in mons:
        buckets.setdefault(m.bidegree(), []).append(m)
    total = 0
    for i in range(n * (n - 1) // 2 + 1):
        for j in range(n + 1):
            rows = invariant_ideal_rows(n, i, j)
            rank = rank_of_elements(rows)
            quotient_dim = dim_bidegree(n, i, j) - rank
            candidates = buckets.get((i, j), [])
            if quotient_dim != len(candidates):
                return False
            if candidates:
                stacked = rows + [SuperElement.monomial(m) for m in candidates]
                if rank_of_elements(stacked) != rank + len(candidates):
                    return False
            total += quotient_dim
    return total == len(mons) == fubini(n)
