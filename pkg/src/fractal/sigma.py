#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Перемасштабированные считающие функции σ_k(t) = κ^{-k} N(e^{kν+t}) на [0, ν]
и коэффициент s(t) = e^{-Dt} σ(t) асимптотики N(λ) = λ^D (s(ln λ) + o(1)).
"""

import math
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.core.config_manager import DEFAULT_CONFIG
from src.core.errors import DomainError
from src.fractal.selfsimilar import CantorParams
from src.fractal.spectral import SolverSettings, count_below, eigenvalues
from src.fractal.step_function import (
    StepFunction,
    mismatch_measure,
    staircase_from_jumps,
    step_l2_distance,
)
from src.fractal.stieltjes_string import (
    MAX_ATOMS,
    BoundaryCondition,
    Pencil,
    assemble_pencil,
    build_string,
)

LEVEL_MARGIN = DEFAULT_CONFIG["sigma"]["level_margin"]


def required_level(k: int, margin: int = LEVEL_MARGIN) -> int:
    """Минимальное поколение струны для σ_k"""
    return k + margin


def _check_sigma_args(params: CantorParams, k: int, level: int, margin: int, max_atoms: int) -> None:
    if k < 0:
        raise DomainError(f"k должно быть ≥ 0, получено {k}")
    needed = required_level(k, margin)
    if level < needed:
        raise DomainError(f"для k={k} требуется level ≥ {needed}, получено {level}")
    if params.kappa ** level > max_atoms:
        raise DomainError(f"κ^level = {params.kappa ** level} превышает предел {max_atoms}")


def positive_eigenvalues_below(
    pencil: Pencil, upper: float, rel_tol: float = 1e-10, settings: Optional[SolverSettings] = None
) -> np.ndarray:
    """Все положительные собственные значения пучка, меньшие upper"""
    total = count_below(pencil, upper, settings)
    first = 1 if pencil.bc.is_neumann else 0
    if total <= first:
        return np.empty(0)
    return eigenvalues(pencil, range(first, total), rel_tol, settings)


def sigma_from_pencil(
    params: CantorParams,
    k: int,
    pencil: Pencil,
    rel_tol: float = 1e-10,
    settings: Optional[SolverSettings] = None,
) -> StepFunction:
    """σ_k для уже собранного пучка (без проверки запаса поколений)"""
    nu = params.nu
    lam = positive_eigenvalues_below(pencil, math.exp((k + 1) * nu), rel_tol, settings)
    t = np.log(lam) - k * nu if lam.size else np.empty(0)
    base = int(np.count_nonzero(t < 0.0))
    jumps = t[(t >= 0.0) & (t < nu)]
    return staircase_from_jumps(jumps, base * params.kappa ** -float(k), params.kappa ** -float(k), (0.0, nu))


def sigma_k(
    params: CantorParams,
    k: int,
    level: int,
    bc: BoundaryCondition,
    rel_tol: float = 1e-10,
    margin: int = LEVEL_MARGIN,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> StepFunction:
    """
    Точная ступенчатая функция σ_k на [0, ν]

    Каждое собственное значение из (0, e^{(k+1)ν}) вычисляется один раз;
    разрыв ставится в t = ln λ - kν, скачок равен κ^{-k}. σ_k непрерывна
    справа, а κ^{-k}N(e^{kν+t}) при строгом счёте N непрерывна слева:
    они расходятся только в самих точках разрыва.

    Args:
        params: Параметры самоподобной функции
        k: Номер снимка
        level: Поколение струны (≥ k + 3)
        bc: Граничные условия
        rel_tol: Точность бисекции
        margin: Запас поколений сверх k
        max_atoms: Предел числа атомов
        settings: Настройки решателя

    Returns:
        Неубывающая StepFunction на [0, ν]

    Raises:
        DomainError: недостаточный level (в сообщении - требуемый минимум)
    """
    _check_sigma_args(params, k, level, margin, max_atoms)
    pencil = assemble_pencil(build_string(params, level, max_atoms), bc)
    sigma = sigma_from_pencil(params, k, pencil, rel_tol, settings)
    logger.debug(f"σ_{k}: level={level}, bc={bc.label()}, разрывов {sigma.num_breaks}")
    return sigma


def s_of_t(sigma: StepFunction, d_order: float, grid: int) -> np.ndarray:
    """
    Отсчёты s(t) = e^{-Dt} σ(t) на равномерной сетке [0, ν]

    Returns:
        Массив формы (grid, 2): строки (t, s)
    """
    if grid < 2:
        raise DomainError(f"grid должно быть ≥ 2, получено {grid}")
    lo, hi = sigma.domain
    t = np.linspace(lo, hi, grid)
    return np.column_stack((t, np.exp(-d_order * t) * sigma(t)))


def s_range(samples: np.ndarray) -> float:
    """Размах max s - min s по отсчётам"""
    s = np.asarray(samples)[:, 1]
    return float(s.max() - s.min())


def sigma_endpoints(sigma: StepFunction) -> Tuple[float, float]:
    """(σ_k(0), σ_k(ν)) - значения в концах окна"""
    return float(sigma(sigma.domain[0])), float(sigma(sigma.domain[1]))


def sigma_cauchy_diagnostic(
    params: CantorParams,
    k: int,
    level: int,
    bc: BoundaryCondition,
    rel_tol: float = 1e-10,
    margin: int = LEVEL_MARGIN,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> float:
    """
    κ^k·‖σ_{k+1} - σ_k‖_{L2[0,ν]}; ожидается стремление к нулю по k

    Оба снимка берутся с одной струны поколения level ≥ k + 4.
    """
    _check_sigma_args(params, k + 1, level, margin, max_atoms)
    pencil = assemble_pencil(build_string(params, level, max_atoms), bc)
    current = sigma_from_pencil(params, k, pencil, rel_tol, settings)
    following = sigma_from_pencil(params, k + 1, pencil, rel_tol, settings)
    return float(params.kappa ** k * step_l2_distance(following, current))


def sigma_mismatch(
    params: CantorParams,
    k: int,
    level: int,
    bc: BoundaryCondition,
    rel_tol: float = 1e-10,
    margin: int = LEVEL_MARGIN,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> float:
    """Мера множества {t ∈ [0, ν] : σ_{k+1}(t) ≠ σ_k(t)}"""
    _check_sigma_args(params, k + 1, level, margin, max_atoms)
    pencil = assemble_pencil(build_string(params, level, max_atoms), bc)
    current = sigma_from_pencil(params, k, pencil, rel_tol, settings)
    following = sigma_from_pencil(params, k + 1, pencil, rel_tol, settings)
    # Значения кратны κ^{-k-1}: половина шага отделяет совпадение от различия
    return mismatch_measure(following, current, tol=0.5 * params.kappa ** -(k + 1.0))
