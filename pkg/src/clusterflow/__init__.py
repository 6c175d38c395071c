"""clusterflow: exact-arithmetic cluster algebra engine.

Seed mutation over universal, tropical, and trivial coefficient semifields;
mutation-compatible log-canonical Poisson structures (finite and infinite
banded exchange matrices); tropical C/G-matrix and F-polynomial machinery;
and the lattice Lotka-Volterra and lattice Liouville dynamics they encode.
"""

__version__ = "0.1.0"
