"""Solomon-Terao algebras of certified free arrangements.

The algebra of an arrangement under a coefficient map is the quotient of the
polynomial ring by the ideal of mapped derivations.  With a certified free
basis in hand the quotient is classified exactly into one of three mutually
exclusive shapes: the zero ring, an infinite-dimensional ring, or an Artinian
ring with palindromic Hilbert series given by the basis degrees.  The checks
in this module lean on that classification: short exact sequences become
Hilbert-series additivity plus one ideal identity, and monomial bases become
rank computations against Groebner normal forms.
"""

import itertools

from .arrangements import (
    Arrangement,
    column_counts,
    delete,
    full_arrangement,
    is_essential,
    is_southwest,
    linear_form,
    max_coordinate,
    restrict_coordinate,
    skip_arrangement,
    skip_forms_product,
    staircase,
    staircase_monomials,
)
from .derivations import ones_map, skip_basis, southwest_basis, st_ideal
from .groebner import Ideal, colon, ideal_equal
from .polynomials import Polynomial
from .superspace import rank_of_elements
from .symmetric import coinvariant_generators, steinberg_member

__all__ = [
    "STInstance",
    "certified_basis",
    "classify",
    "exact_sequence_check",
    "verify_box_basis",
    "verify_skip_quotient",
    "cospan_check",
    "colon_descent_check",
]


# -- classification ----------------------------------------------------------


class STInstance:
    """One classified quotient: target, map, basis, ideal, and shape tag.

    tag is "zero" (unit ideal), "infinite" (non-Artinian quotient), or
    "poincare-duality" (Artinian; hilbert then holds the graded dimensions
    and dimension their sum).  Exactly one tag applies.
    """

    __slots__ = ("target", "cmap", "basis", "ideal", "tag", "hilbert", "dimension")

    def __init__(self, target, cmap, basis, ideal, tag, hilbert, dimension):
        self.target = target
        self.cmap = cmap
        self.basis = basis
        self.ideal = ideal
        self.tag = tag
        self.hilbert = hilbert
        self.dimension = dimension

    def __repr__(self):
        if self.tag == "poincare-duality":
            return f"STInstance(tag={self.tag}, hilbert={self.hilbert})"
        return f"STInstance(tag={self.tag})"


def certified_basis(A):
    """A free basis this library can certify for the arrangement.

    Southwest arrangements get the column-product basis; the skip family is
    recognized from its coordinate pattern and gets the staircase basis.
    Anything else raises: freeness in general is out of scope.
    """
    if not isinstance(A, Arrangement):
        raise ValueError("certified bases exist only for arrangement targets")
    if is_southwest(A):
        return southwest_basis(A)
    skips = frozenset(
        j for j in range(1, A.n + 1) if (0, j) not in A.pairs
    )
    if A == skip_arrangement(skips, A.n):
        return skip_basis(skips, A.n)
    raise ValueError("no certified basis known for this arrangement")


def _range_product(sizes, n):
    # prod over the basis of (1 + q + ... + q^(m-1)), as a coefficient list
    out = [1]
    for m in sizes:
        if m < 1:
            return []
        nxt = [0] * (len(out) + m - 1)
        for i, c in enumerate(out):
            for k in range(m):
                nxt[i + k] += c
        out = nxt
    return out


def classify(target, cmap, basis=None):
    """Classify the quotient by the mapped-basis ideal into its three shapes.

    The basis defaults to certified_basis(target) and is re-certified by
    st_ideal either way.  In the Artinian case the computed Hilbert series
    must match the product formula over the shifted basis degrees and be
    palindromic; a mismatch means the certification is broken, so it raises
    rather than returning a report.
    """
    if basis is None:
        basis = certified_basis(target)
    basis = tuple(basis)
    ideal = st_ideal(target, cmap, basis)
    if ideal.is_unit():
        return STInstance(target, cmap, basis, ideal, "zero", (), 0)
    if not ideal.is_artinian():
        return STInstance(target, cmap, basis, ideal, "infinite", None, None)
    hilbert = ideal.hilbert_series()
    shifted = [theta.degree() + cmap.degree for theta in basis]
    if list(hilbert) != _range_product(shifted, ideal.n):
        raise ArithmeticError("Hilbert series disagrees with the basis degrees")
    if tuple(hilbert) != tuple(reversed(hilbert)):
        raise ArithmeticError("Artinian quotient has a non-palindromic series")
    return STInstance(
        target, cmap, basis, ideal, "poincare-duality", tuple(hilbert), sum(hilbert)
    )


# -- short exact sequence ----------------------------------------------------


def _coeff(h, k):
    return h[k] if 0 <= k < len(h) else 0


def exact_sequence_check(A, p=None):
    """Certify the deletion/restriction sequence at the coordinate form x_p.

    True iff the graded dimensions satisfy big = q*deleted + restricted
    coefficientwise (the zero algebra contributing nothing) and the
    restricted ideal equals the big ideal plus (x_p), read in the surviving
    variables.  p defaults to the largest coordinate index; the deletion
    stays in the certified family only there.
    """
    if not is_southwest(A) or not is_essential(A):
        raise ValueError("an essential southwest arrangement is required")
    top = max_coordinate(A)
    if top is None:
        raise ValueError("no coordinate form to delete")
    if p is None:
        p = top
    if p != top:
        raise ValueError("deletion is certified only at the largest coordinate")
    if A.n == 1:
        # The restriction lands in a zero-dimensional ambient space, where
        # the algebra is a single copy of the ground field.
        big = classify(A, ones_map(1))
        small = classify(delete(A, (0, 1)), ones_map(1))
        return small.tag == "zero" and big.hilbert == (1,)
    big = classify(A, ones_map(A.n))
    small = classify(delete(A, (0, p)), ones_map(A.n))
    rest = classify(restrict_coordinate(A, p), ones_map(A.n - 1))
    if big.hilbert is None or small.hilbert is None or rest.hilbert is None:
        return False
    width = max(len(big.hilbert), len(small.hilbert) + 1, len(rest.hilbert))
    for k in range(width):
        if _coeff(big.hilbert, k) != _coeff(small.hilbert, k - 1) + _coeff(
            rest.hilbert, k
        ):
            return False
    projected = Ideal(
        A.n - 1,
        [g.set_var_zero(p).drop_var(p) for g in big.ideal.gens],
    )
    return ideal_equal(projected, rest.ideal)


# -- monomial bases ----------------------------------------------------------


def _box_exponents(bounds):
    return sorted(itertools.product(*[range(b) for b in bounds]), reverse=True)


def verify_box_basis(A):
    """Check the box monomials under the column counts form a quotient basis.

    The quotient must be Artinian of dimension prod(h_i), and the normal
    forms of the box monomials must be linearly independent; with matching
    count that makes them a basis.
    """
    if not is_essential(A):
        raise ValueError("box bases are stated for essential arrangements")
    inst = classify(A, ones_map(A.n))
    if inst.tag != "poincare-duality":
        return False
    h = column_counts(A)
    exps = _box_exponents(h)
    if len(exps) != inst.dimension:
        return False
    rows = [
        inst.ideal.normal_form(Polynomial.monomial(A.n, e)) for e in exps
    ]
    return rank_of_elements(rows) == len(exps)


def verify_skip_quotient(skips, n):
    """Check the staircase monomials against the colon-ideal quotient.

    When 1 is skipped the colon ideal must be the whole ring and there is
    nothing to span.  Otherwise the quotient dimension must equal the
    staircase product and the staircase monomials must be independent there.
    """
    skips = frozenset(skips)
    quotient = colon(
        Ideal(n, coinvariant_generators(n)), skip_forms_product(skips, n)
    )
    if 1 in skips:
        return quotient.is_unit()
    exps = staircase_monomials(skips, n)
    count = 1
    for b in staircase(skips, n):
        count *= b
    if len(exps) != count:
        return False
    if quotient.dimension() != count:
        return False
    rows = [quotient.normal_form(Polynomial.monomial(n, e)) for e in exps]
    return rank_of_elements(rows) == count


# -- complement span ---------------------------------------------------------


def cospan_check(pairs, n, gb_cross_check=False):
    """Product of chosen forms lies in the symmetric ideal iff the rest
    of the forms fail to span the dual space; returns that biconditional.

    Membership goes through the differential-operator pairing; with
    gb_cross_check it must also agree with Groebner membership in the
    ideal of elementary generators.
    """
    chosen = {tuple(p) for p in pairs}
    everything = full_arrangement(n).pairs
    if not chosen <= everything:
        raise ValueError("pairs must come from the full arrangement")
    product = Polynomial.one(n)
    for p in sorted(chosen):
        product = product * linear_form(p, n)
    member = steinberg_member(product)
    rest = [linear_form(p, n) for p in sorted(everything - chosen)]
    spans = rank_of_elements(rest) == n
    if gb_cross_check:
        gb_member = Ideal(n, coinvariant_generators(n)).contains(product)
        if gb_member != member:
            return False
    return member == (not spans)


# -- colon descent between nested arrangements -------------------------------


def colon_descent_check(A, B, cmap, basis_a=None, basis_b=None):
    """Compare the small ideal with the big ideal coloned by the form ratio.

    Returns "holds" or "fails" when the two hypotheses are met: the big
    quotient is finite-dimensional and the ratio of defining polynomials
    stays outside the big ideal.  When either hypothesis fails there is
    nothing to test and the verdict is "skipped".
    """
    if not set(B.pairs) <= set(A.pairs):
        raise ValueError("the second arrangement must sit inside the first")
    if basis_a is None:
        basis_a = certified_basis(A)
    big = st_ideal(A, cmap, basis_a)
    ratio = Polynomial.one(A.n)
    for p in sorted(A.pairs - B.pairs):
        ratio = ratio * linear_form(p, A.n)
    if not big.is_artinian():
        return "skipped"
    if big.contains(ratio):
        return "skipped"
    if basis_b is None:
        basis_b = certified_basis(B)
    small = st_ideal(B, cmap, basis_b)
    return "holds" if ideal_equal(small, colon(big, ratio)) else "fails"
