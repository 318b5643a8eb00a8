"""Dirac gap eigenvalues by the collapse-free min-max method.

Thin Python layer over the C++ core: gap eigenvalues of D_c + V through the
lambda-dependent B-spline matrix A_n(lambda), the lambda^T minimization
cross-route, Soler soliton shooting, Hardy-type inequality sweeps, the
nonrelativistic limit and the lowest-Landau-level problem.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
