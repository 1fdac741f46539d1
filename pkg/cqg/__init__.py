"""
CQG Toolbox — finite-truncation harmonic analysis on compact quantum groups.

Given the irreducible corepresentation data of a compact quantum group
(dimensions, F-matrix eigenvalues, conjugates, fusion rules) inside a finite
truncation window, the toolbox realizes:

    - L¹(𝔾) on the basis φ^α_{ij} = u^α_{ij}·φ with its convolution,
      involution, characters, quantum characters and the Kac projection β₁
    - L²(𝔾) on the basis Λ(u^α_{ij}) with the Peter–Weyl inner product, the
      projections β₂(φ) and P_q, the star map and the restriction map r

and a verification suite that checks every structural identity numerically.
"""

__version__ = "1.0.0"
