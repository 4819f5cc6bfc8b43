"""Exact and asymptotic analysis of a Racah-type discrete distribution.

The distribution arises from decomposing a pure subset state over n sites
into its two-row symmetric-group isotypic blocks.  Subpackages:

- exact: arbitrary-precision rational hypergeometric building blocks
- dist: exact pmf/cdf, recurrence, moments
- oracle: formula-free brute-force cross-checks over the symmetric group
- asympt: limit profiles, local limit laws, CLT, large-deviation rates
- asymmetry: entropy and smoothed spectral-entropy measures
- qanalog: the q-deformed distribution
- cli: the command-line interface
"""

from . import exact, dist, oracle, asympt, asymmetry, qanalog, cli  # noqa: F401
from .dist import Params, validate_params  # noqa: F401

__all__ = ["exact", "dist", "oracle", "asympt", "asymmetry", "qanalog",
           "cli", "Params", "validate_params"]
__version__ = "0.1.0"
