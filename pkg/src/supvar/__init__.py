"""Exact support-set computations for multiparameter supergroup algebras.

Everything is computed over small finite fields F_{p^n} with p odd, using
dense table-driven linear algebra, so all results are exact and reproducible.
"""

__version__ = "0.1.0"
