"""
infodist: information and disturbance of quantum measurements.

Quantum Fisher information for monotone metrics, the disturbance a Kraus
measurement causes to it, relative-entropy counterparts, and numerical
certifiers for the tradeoff between the two.
"""

__version__ = "0.1.0"
