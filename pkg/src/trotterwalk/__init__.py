"""Trotterized quantum-walk search in the symmetric subspace.

Simulates continuous-time quantum-walk search on the hypercube, discretizes
it with high-order product formulas into QAOA sequences, evaluates analytic
depth bounds, and searches numerically for optimal depths.
"""

__version__ = "0.1.0"

from . import bounds, ctqw, depthsearch, symspace, trotter

__all__ = ["bounds", "ctqw", "depthsearch", "symspace", "trotter", "__version__"]
