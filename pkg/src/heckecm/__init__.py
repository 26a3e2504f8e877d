"""CM-type combinatorics over finite Galois data, and critical Hecke L-values of
imaginary quadratic fields through Eisenstein-Kronecker series."""

__version__ = "0.1.0"
