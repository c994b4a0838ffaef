"""Single spin coupled to an infinitely coordinated Ising chain.

Finite-size exact spectra, the strong-coupling perturbative spectrum and the
classical energy landscape with its extremum-configuration phase diagram.
"""

from spinlab.kernels import BACKEND
from spinlab.params import ModelParams

__all__ = ["BACKEND", "ModelParams"]
__version__ = "0.1.0"
