"""Exact computational algebra for hyperplane arrangements and coinvariant rings.

Everything is computed over the rationals with exact arithmetic; there are no
floats anywhere in the package.
"""

__version__ = "0.1.0"
