"""Closed forms for Farhi's constant, the Fourier expansion of ln Gamma on
(0, 1), and numerical checks of each against an independent evaluation."""

from .specfun import CONSTANTS

__all__ = ["CONSTANTS"]
__version__ = "0.1.0"
