"""Groebner bases over Q: plain Buchberger with the sugar strategy.

The engine is deliberately unfancy.  Buchberger with sugar-ordered pair
selection plus the coprimality and chain criteria is fast enough for every
ideal this library touches (n <= 5, small degrees); signature-based
algorithms would buy nothing here and cost auditability.

Orders are key functions on exponent tuples: grevlex (default), lex, and a
block order that eliminates a leading group of variables (used by the colon
computation).  Reduced bases are canonical (monic, auto-reduced, sorted), so
ideal equality is literal equality of reduced bases.

The environment variable COINVARR_GB_TERM_CAP, when set, bounds the total
number of stored terms across a basis-in-progress; exceeding it raises
GroebnerResourceError instead of exhausting memory.
"""

from __future__ import annotations

import heapq
import itertools
import os
from fractions import Fraction

from .polynomials import (
    AmbientMismatch,
    Polynomial,
    exact_divide,
    grevlex_key,
    lex_key,
)

ENV_TERM_CAP = "COINVARR_GB_TERM_CAP"

_ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


class GroebnerResourceError(RuntimeError):
    """Basis computation exceeded the configured term cap."""


def order_key(order):
    if callable(order):
        return order
    try:
        return _ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def elim_key(k):
    """Block order eliminating the first k variables (grevlex inside blocks)."""

    def key(exps):
        return (grevlex_key(exps[:k]), grevlex_key(exps[k:]))

    return key


def _env_cap():
    raw = os.environ.get(ENV_TERM_CAP)
    return int(raw) if raw else None


# -- raw term-dict plumbing (hot path) --------------------------------------


def _sub_scaled(t, g, coeff, shift):
    """t -= coeff * x^shift * g, in place on term dicts."""
    for e, c in g.items():
        k = tuple(a + b for a, b in zip(shift, e))
        s = t.get(k, 0) - coeff * c
        if s:
            t[k] = s
        else:
            t.pop(k, None)


def _nf_dict(t, prepared, key):
    """Fully reduce term dict t against prepared [(lead, poly dict)] rows."""
    t = dict(t)
    out = {}
    while t:
        e = max(t, key=key)
        c = t.pop(e)
        for le, g in prepared:
            if all(a >= b for a, b in zip(e, le)):
                shift = tuple(a - b for a, b in zip(e, le))
                t[e] = c
                _sub_scaled(t, g, c, shift)  # g is monic
                break
        else:
            out[e] = c
    return out


def _monic(t, key):
    lc = t[max(t, key=key)]
    if lc == 1:
        return dict(t)
    return {e: c / lc for e, c in t.items()}


def groebner_basis(polys, order="grevlex", term_cap=None):
    """Reduced Groebner basis of the ideal generated by polys.

    Returns a canonical list of monic Polynomials sorted by leading monomial.
    """
    key = order_key(order)
    cap = term_cap if term_cap is not None else _env_cap()
    nonzero = [p for p in polys if p]
    if not nonzero:
        return []
    n = nonzero[0].n
    for p in nonzero:
        if p.n != n:
            raise AmbientMismatch("generators disagree on ambient n")

    # deterministic start: sort generators by leading monomial then content
    start = sorted(
        ({e: c for e, c in p.terms.items()} for p in nonzero),
        key=lambda t: (key(max(t, key=key)), sorted(t.items())),
    )

    basis = []  # term dicts, monic
    leads = []
    sugars = []
    total_terms = 0

    def push(t, sugar):
        nonlocal total_terms
        t = _monic(t, key)
        basis.append(t)
        leads.append(max(t, key=key))
        sugars.append(sugar)
        total_terms += len(t)
        if cap is not None and total_terms > cap:
            raise GroebnerResourceError(
                f"basis grew past {cap} stored terms ({ENV_TERM_CAP})"
            )
        return len(basis) - 1

    heap = []

    def queue_pairs(j):
        lj = leads[j]
        dj = sugars[j] - sum(lj)
        for i in range(j):
            li = leads[i]
            lcm = tuple(max(a, b) for a, b in zip(li, lj))
            sugar = max(sugars[i] - sum(li), dj) + sum(lcm)
            heapq.heappush(heap, (sugar, key(lcm), i, j, lcm))

    for t in start:
        idx = push(t, max(sum(e) for e in t))
        queue_pairs(idx)

    done = set()
    while heap:
        sugar, _, i, j, lcm = heapq.heappop(heap)
        done.add((i, j))
        li, lj = leads[i], leads[j]
        # coprimality criterion: disjoint leads give a reducible S-pair
        if all(min(a, b) == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion: a third lead dividing the lcm, both side pairs done
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if all(a <= b for a, b in zip(leads[k], lcm)):
                if (min(i, k), max(i, k)) in done and (
                    min(j, k),
                    max(j, k),
                ) in done:
                    skip = True
                    break
        if skip:
            continue
        s = {}
        _sub_scaled(s, basis[i], Fraction(-1), tuple(a - b for a, b in zip(lcm, li)))
        _sub_scaled(s, basis[j], Fraction(1), tuple(a - b for a, b in zip(lcm, lj)))
        h = _nf_dict(s, list(zip(leads, basis)), key)
        if h:
            idx = push(h, sugar)
            queue_pairs(idx)

    # minimalize: drop elements whose lead another lead divides
    order_idx = sorted(range(len(basis)), key=lambda i: key(leads[i]))
    kept = []
    for i in order_idx:
        if any(all(a <= b for a, b in zip(leads[k], leads[i])) for k in kept):
            continue
        kept.append(i)
    # inter-reduce tails for the canonical reduced basis
    reduced = []
    for pos, i in enumerate(kept):
        others = [(leads[k], basis[k]) for k in kept if k != i]
        t = _nf_dict(basis[i], others, key)
        reduced.append(_monic(t, key))
    reduced.sort(key=lambda t: key(max(t, key=key)))
    return [Polynomial(n, t) for t in reduced]


def normal_form(f, basis, order="grevlex"):
    """Fully reduce f against a list of Polynomials (typically a GB)."""
    key = order_key(order)
    prepared = [
        (max(p.terms, key=key), _monic(p.terms, key)) for p in basis if p
    ]
    return Polynomial(f.n, _nf_dict(f.terms, prepared, key))


def s_polynomial(f, g, order="grevlex"):
    key = order_key(order)
    lf, cf = f.leading(key)
    lg, cg = g.leading(key)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = Polynomial.monomial(f.n, tuple(a - b for a, b in zip(lcm, lf)), Fraction(1, 1) / cf)
    mg = Polynomial.monomial(g.n, tuple(a - b for a, b in zip(lcm, lg)), Fraction(1, 1) / cg)
    return mf * f - mg * g


# -- ideals ------------------------------------------------------------------

_GB_CACHE = {}


class Ideal:
    """An ideal of Q[x1..xn] held by generators, with cached reduced bases."""

    __slots__ = ("n", "gens")

    def __init__(self, n, gens):
        gens = tuple(g for g in gens)
        for g in gens:
            if g.n != n:
                raise AmbientMismatch("generator ambient mismatch")
        self.n = n
        self.gens = gens

    def groebner(self, order="grevlex"):
        if callable(order):
            return groebner_basis(list(self.gens), order)
        key = (self.n, order, frozenset(g for g in self.gens if g))
        got = _GB_CACHE.get(key)
        if got is None:
            got = groebner_basis(list(self.gens), order)
            _GB_CACHE[key] = got
        return got

    def normal_form(self, f, order="grevlex"):
        if f.n != self.n:
            raise AmbientMismatch("ambient mismatch")
        return normal_form(f, self.groebner(order), order)

    def contains(self, f, order="grevlex"):
        return not self.normal_form(f, order)

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].degree() == 0

    def is_zero(self):
        return not self.groebner()

    def _lead_exps(self, order="grevlex"):
        key = order_key(order)
        return [g.leading(key)[0] for g in self.groebner(order)]

    def box_bounds(self, order="grevlex"):
        """Per-variable minimal pure-power lead degrees, or None if absent."""
        bounds = [None] * self.n
        for e in self._lead_exps(order):
            support = [i for i, a in enumerate(e) if a]
            if not support:
                return [0] * self.n  # unit ideal
            if len(support) == 1:
                i = support[0]
                if bounds[i] is None or e[i] < bounds[i]:
                    bounds[i] = e[i]
        return bounds

    def is_artinian(self, order="grevlex"):
        """True iff the quotient is finite-dimensional over Q.

        Criterion: every variable has a pure power among the leading terms
        of a Groebner basis (unit ideal counts, with dimension 0).
        """
        return all(b is not None for b in self.box_bounds(order))

    def standard_monomials(self, cap=None, order="grevlex"):
        """(monomial exponent list, complete flag) for the quotient basis.

        Artinian ideals enumerate the full finite list (complete=True);
        otherwise monomials of degree <= cap are returned with complete=False.
        """
        leads = self._lead_exps(order)
        bounds = self.box_bounds(order)
        out = []
        if all(b is not None for b in bounds):
            ranges = [range(b) for b in bounds]
            for exps in itertools.product(*ranges):
                if not any(
                    all(a >= b for a, b in zip(exps, le)) for le in leads
                ):
                    out.append(exps)
            out.sort(key=grevlex_key)
            return out, True
        if cap is None:
            raise ValueError("non-Artinian ideal needs an explicit degree cap")
        for d in range(cap + 1):
            for exps in _compositions(d, self.n):
                if not any(
                    all(a >= b for a, b in zip(exps, le)) for le in leads
                ):
                    out.append(exps)
        out.sort(key=grevlex_key)
        return out, False

    def dimension(self):
        """Vector-space dimension of the quotient, or None if infinite."""
        if not self.is_artinian():
            return None
        return len(self.standard_monomials()[0])

    def hilbert_series(self):
        """Tuple of graded quotient dimensions (Artinian, homogeneous only)."""
        for g in self.gens:
            if not g.is_homogeneous():
                raise ValueError("Hilbert series needs homogeneous generators")
        mons, complete = self.standard_monomials()
        if not complete:
            raise ValueError("Hilbert series requires an Artinian quotient")
        if not mons:
            return ()
        top = max(sum(e) for e in mons)
        counts = [0] * (top + 1)
        for e in mons:
            counts[sum(e)] += 1
        return tuple(counts)

    def graded_dimensions(self, cap, order="grevlex"):
        """Quotient dimensions in degrees 0..cap (homogeneous generators)."""
        for g in self.gens:
            if not g.is_homogeneous():
                raise ValueError("graded dimensions need homogeneous generators")
        mons, _ = self.standard_monomials(cap=cap, order=order)
        counts = [0] * (cap + 1)
        for e in mons:
            if sum(e) <= cap:
                counts[sum(e)] += 1
        return tuple(counts)

    def __repr__(self):
        inner = ", ".join(g.text() for g in self.gens)
        return f"Ideal({self.n}, [{inner}])"


def _compositions(d, n):
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d + 1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


def ideal_equal(I, J, order="grevlex"):
    """Ideal equality via canonical reduced bases."""
    if I.n != J.n:
        raise AmbientMismatch("ambient mismatch")
    return I.groebner(order) == J.groebner(order)


def colon(I, f, order="grevlex"):
    """The colon ideal I : f = {g : f*g in I}.

    Route: if f in I the colon is the unit ideal outright.  Otherwise
    compute I ∩ (f) by eliminating a fresh leading variable t from
    t*gens(I) + ((1-t)*f) and divide the t-free basis elements by f, which
    must be exact.  The fresh variable is eliminated by a block order, so no
    variable renaming is needed.
    """
    n = I.n
    if f.n != n:
        raise AmbientMismatch("ambient mismatch")
    if not f:
        raise ZeroDivisionError("colon by the zero polynomial")
    if I.contains(f):
        return Ideal(n, [Polynomial.one(n)])
    lifted = []
    for g in I.gens:
        if g:
            lifted.append(Polynomial(n + 1, {(1,) + e: c for e, c in g.terms.items()}))
    both = dict()
    for e, c in f.terms.items():
        both[(0,) + e] = c
        both[(1,) + e] = -c
    lifted.append(Polynomial(n + 1, both))  # (1 - t) * f
    gb = groebner_basis(lifted, elim_key(1))
    quotients = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            h = Polynomial(n, {e[1:]: c for e, c in g.terms.items()})
            q = exact_divide(h, f)
            if q is None:
                raise ArithmeticError("elimination produced a non-multiple of f")
            quotients.append(q)
    return Ideal(n, quotients)


def colon_by_factors(I, factors, order="grevlex"):
    """Iterated colon: I : (f1*f2*...*fk) = ((I : f1) : f2) ... : fk."""
    out = I
    for f in factors:
        out = colon(out, f, order)
        if out.is_unit():
            return out
    return out


def is_regular_sequence(polys, n):
    """Regularity test for exactly n homogeneous positive-degree polynomials.

    For a length-n homogeneous system of positive degrees, regularity is
    equivalent to the quotient being finite-dimensional, which the Groebner
    basis certifies through pure-power leading terms.
    """
    polys = list(polys)
    if len(polys) != n:
        raise ValueError(f"need exactly {n} polynomials, got {len(polys)}")
    for p in polys:
        if not p.is_homogeneous() or p.degree() < 1:
            raise ValueError("regularity test needs homogeneous positive degrees")
    return Ideal(n, polys).is_artinian()
