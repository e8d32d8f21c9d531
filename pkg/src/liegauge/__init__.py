"""Symbolic gauge reduction of generic connections on classical Lie algebras.

Exact differential-polynomial arithmetic over Q, root systems and Weyl
groups of types A-D, Chevalley-basis matrix representations, the Bruhat-cell
differential systems of resolving Weyl elements, and the three-step gauge
reduction of the generic connection to its normal form.
"""

__version__ = "0.1.0"

from ._kernel import BACKEND as kernel_backend  # noqa: F401
