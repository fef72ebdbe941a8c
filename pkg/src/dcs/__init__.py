"""Exact collective-field computations for the deformed Calogero-Sutherland model.

Modules:
    exactnum   rationals, rational functions in g, the field Q(sqrt(rs))
    partition  partitions, fat hooks, the lambda <-> n bijection, labels
    symfun     power-sum/monomial bases, Jack and super Jack polynomials
    fock       charged boson Fock space, H^{nu,k}, vertex-operator modes
    spectra    anyon states, eigenvalues, orthogonalization, audits
    qseries    truncated q-series and the completeness character identity
    numcheck   floating-point checks of the differential-operator statements
    cli        command-line front end
"""

from .exactnum import ModelParams, QuadScalar, RatFuncG, specialize_g

__all__ = ["ModelParams", "QuadScalar", "RatFuncG", "specialize_g"]
__version__ = "0.1.0"
