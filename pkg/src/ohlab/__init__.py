"""Numerical laboratory for operator-Hilbert-space norms.

Submodules:

* ``quad``      -- arcsine-measure quadrature and exact interval masses
* ``numlin``    -- dense complex linear algebra (eigen, Schatten, parallel sums)
* ``geomean``   -- Pusz-Woronowicz primal/dual square-root formulas
* ``ohspace``   -- matrix-tuple norms (spectral oracle and alternating maximisation)
* ``kfunc``     -- two- and three-term sum-space norms on weighted grids
* ``tensorlog`` -- certified logarithmic tensor-norm brackets
* ``freeprob``  -- random-matrix and Fock-space freeness checks
* ``cli``       -- seeded experiment runner with machine-readable reports
"""

from . import cli, freeprob, geomean, kfunc, numlin, ohspace, quad, report, tensorlog

__version__ = "0.1.0"

__all__ = [
    "cli",
    "freeprob",
    "geomean",
    "kfunc",
    "numlin",
    "ohspace",
    "quad",
    "report",
    "tensorlog",
    "__version__",
]
