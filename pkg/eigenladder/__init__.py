"""
eigenladder: eigenoperator spectra, level spacings and thermal sums for nonlinear oscillators.
"""

__version__ = "0.1.0"

from .core import EigenLadder
from .oscillator import OscillatorSpec
from .ladder import LambdaFunction, Spectrum, build_spectrum

__all__ = ["EigenLadder", "OscillatorSpec", "LambdaFunction", "Spectrum", "build_spectrum", "__version__"]
