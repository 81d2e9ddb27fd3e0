"""abc-triple quality indices, curve-order triple searches and k-representation scans."""

from .abc_core import QualityReport, Triple, claim2_bound, make_triple, quality
from .arith import Factorization, Interval, factorize, is_prime, nearest_root, radical
from .kernels import BACKEND

__version__ = "0.1.0"
