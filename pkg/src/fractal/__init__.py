#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fractal spectra: самоподобные веса, струны Стилтьеса, спектры и их асимптотика
"""

from .selfsimilar import CantorParams, make_params, eval_P
from .stieltjes_string import BoundaryCondition, Pencil, StieltjesString, assemble_pencil, build_string
from .spectral import counting_function, eigenfunction, eigenvalue, spectrum
from .periodicity import (
    check_mixed_periodicity,
    check_neumann_periodicity,
    check_robin_periodicity,
    log_gap_partial_sums,
)
from .sigma import s_of_t, sigma_cauchy_diagnostic, sigma_k
from .singularity import criterion_products, step_approximate

__all__ = [
    'CantorParams', 'make_params', 'eval_P',
    'BoundaryCondition', 'Pencil', 'StieltjesString', 'assemble_pencil', 'build_string',
    'counting_function', 'eigenfunction', 'eigenvalue', 'spectrum',
    'check_neumann_periodicity', 'check_robin_periodicity', 'check_mixed_periodicity',
    'log_gap_partial_sums',
    'sigma_k', 's_of_t', 'sigma_cauchy_diagnostic',
    'step_approximate', 'criterion_products',
]
