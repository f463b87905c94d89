"""couette_lab: a numerical laboratory for 2D Couette-flow stability.

Linearized propagators, a sheared-frame pseudospectral solver for the
nonlinear vorticity equation, the time-dependent Fourier multipliers of
the associated energy method, resonance toy models, and sampled audits
of the quantitative inequalities the method rests on.
"""

from .backend import ACTIVE_BACKEND
from .grid import Grid, SpectralField

__all__ = ["ACTIVE_BACKEND", "Grid", "SpectralField", "__version__"]

__version__ = "0.1.0"
