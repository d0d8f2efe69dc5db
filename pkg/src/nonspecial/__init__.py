"""Non-special divisors of function fields over finite fields.

Submodules:

* :mod:`nonspecial.gf` finite fields F_{p^m} and polynomials over them;
* :mod:`nonspecial.doublecover` place counts of y^2 + y = f and y^2 = f;
* :mod:`nonspecial.zeta` L-polynomials, class numbers, effective divisors;
* :mod:`nonspecial.criteria` sufficient conditions and listed exceptions;
* :mod:`nonspecial.bounds` bilinear complexity bounds;
* :mod:`nonspecial.tables` the shipped dataset and its verifier.
"""

__version__ = "0.1.0"
