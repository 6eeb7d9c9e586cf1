"""curve_spectrum: how often does a curve have exactly N points mod p?

For an elliptic curve E: y^2 = x^3 + ax + b and a target N, the primes p
with #E(F_p) = N all live in the window ((sqrt N - 1)^2, (sqrt N + 1)^2).
This package counts them (M_E(N)), averages the count over the boxed
family |a| <= A, |b| <= B, and compares the result against two exact
reference quantities: a per-prime sum of Kronecker class numbers, and an
Euler-product constant K(N) scaled by N / (phi(N) log N).  Every closed
form is paired with a brute-force oracle in the test suite.
"""

from .arith import euler_phi, factorize, kappa, kronecker, primes_in
from .classno import (
    class_number,
    class_number_side_sum,
    deuring_mass,
    kronecker_class_number,
)
from .constants import TruncationSpec, identity_check, k_of_n, k0_truncated, predicted_average
from .curves import Curve, FamilyBox, count_points, family_average, family_size, hasse_window, m_e
from .errors import CurveSpectrumError
from .expt import IntervalSpec, bdh_statistic, e_err, run_experiment, theta

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "CurveSpectrumError",
    "FamilyBox",
    "IntervalSpec",
    "TruncationSpec",
    "bdh_statistic",
    "class_number",
    "class_number_side_sum",
    "count_points",
    "deuring_mass",
    "e_err",
    "euler_phi",
    "factorize",
    "family_average",
    "family_size",
    "hasse_window",
    "identity_check",
    "k0_truncated",
    "k_of_n",
    "kappa",
    "kronecker",
    "kronecker_class_number",
    "m_e",
    "predicted_average",
    "primes_in",
    "run_experiment",
    "theta",
]
