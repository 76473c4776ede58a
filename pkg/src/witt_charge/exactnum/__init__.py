"""Exact cyclotomic arithmetic with certified sign extraction."""

from .algebraic import imag_unit, phase_of, quadratic_gauss_sum, sin_cyclo, sqrt_int
from .cyclotomic import CycloElem, cyclotomic_poly, divisors, embed, factorize, totient, zeta
from .interval import (
    ComplexInterval,
    certified_sign,
    eval_interval,
    get_precision,
    set_precision,
)
from .roots import GaloisElem, RootOfUnity, apply_to_root, as_root_of_unity, galois_apply

__all__ = [
    "CycloElem",
    "ComplexInterval",
    "GaloisElem",
    "RootOfUnity",
    "apply_to_root",
    "as_root_of_unity",
    "certified_sign",
    "cyclotomic_poly",
    "divisors",
    "embed",
    "eval_interval",
    "factorize",
    "galois_apply",
    "get_precision",
    "imag_unit",
    "phase_of",
    "quadratic_gauss_sum",
    "set_precision",
    "sin_cyclo",
    "sqrt_int",
    "totient",
    "zeta",
]
