"""Invariant quantization of linear fields on finite mode sets.

Submodules
----------
ccr_core
    Letters, words and phrases with normal ordering and time reversal.
fock
    Invariant quantizations, kets, bras and Gram matrices.
gupta_bleuler
    Photon constraint, constrained tensors and their positivity.
little_group
    The light-like little group E(2) as 4x4 Lorentz matrices.
classical_modes
    Mode-space symplectic form, brackets and generators.
"""

from .scalars import CQ

__version__ = "0.1.0"

__all__ = ["CQ", "__version__"]
