#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Самоподобные функции канторовского типа.

Параметры κ, a, b, точки α_0..α_{2κ-1}, шаг самоподобия ν и спектральный
порядок D; вычисление P(x) прогоном через систему итерированных сжатий и
генерационные интервалы меры μ = dP.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from loguru import logger

from src.core.errors import DomainError

# Допуск на сборку точек α в единицах машинного эпсилон
ALPHA_ULPS = 8


@dataclass(frozen=True)
class CantorParams:
    """Параметры самоподобной функции канторовского типа"""
    kappa: int                      # Число копий
    a: float                        # Длина интервала копии
    b: float                        # Длина плато
    alphas: Tuple[float, ...]       # α_0..α_{2κ-1}
    nu: float                       # Шаг самоподобия ln(κ/a)
    d_order: float                  # Спектральный порядок ln κ / ν

    @property
    def scale(self) -> float:
        """Множитель спектральной периодичности κ/a"""
        return self.kappa / self.a

    @property
    def copy_starts(self) -> np.ndarray:
        """Левые концы интервалов копий α_{2k}"""
        return np.asarray(self.alphas[0::2], dtype=float)


def make_params(kappa: int, a: float) -> CantorParams:
    """
    Построение параметров по κ и a

    Args:
        kappa: Число копий (κ ≥ 2)
        a: Длина интервала копии, 0 < a < 1/κ

    Returns:
        CantorParams с вычисленными b, α, ν, D

    Raises:
        DomainError: κ < 2 или a вне (0, 1/κ)
    """
    if isinstance(kappa, bool) or int(kappa) != kappa:
        raise DomainError(f"kappa должно быть целым, получено {kappa!r}")
    kappa = int(kappa)
    if kappa < 2:
        raise DomainError(f"kappa должно быть ≥ 2, получено {kappa}")

    a = float(a)
    if not math.isfinite(a) or a <= 0.0:
        raise DomainError(f"a должно быть > 0, получено {a}")
    if a >= 1.0 / kappa:
        raise DomainError(f"a должно быть < 1/kappa = {1.0 / kappa!r}, получено {a}")

    b = (1.0 - kappa * a) / (kappa - 1)
    alphas = []
    for k in range(kappa):
        left = k * (a + b)
        alphas.extend((left, left + a))

    if abs(alphas[-1] - 1.0) > ALPHA_ULPS * np.finfo(float).eps:
        raise DomainError(f"α_{{2κ-1}} = {alphas[-1]!r} не совпадает с 1")
    alphas[-1] = 1.0

    nu = math.log(kappa / a)
    d_order = math.log(kappa) / nu
    params = CantorParams(kappa=kappa, a=a, b=b, alphas=tuple(alphas), nu=nu, d_order=d_order)
    logger.debug(f"CantorParams: κ={kappa}, a={a}, b={b}, ν={nu:.7f}, D={d_order:.7f}")
    return params


def eval_P(params: CantorParams, x: float, depth: int) -> float:
    """
    Значение P(x) с точностью κ^{-depth}

    На каждом шаге x либо попадает в интервал копии k (значение
    (k + P(x'))/κ, x' - перемасштабированная координата), либо на плато
    (α_{2k-1}, α_{2k}) со значением k/κ. По исчерпании глубины
    возвращается середина текущей ячейки значений.

    Args:
        params: Параметры функции
        x: Точка отрезка [0, 1]
        depth: Глубина прогона (≥ 0)

    Returns:
        Приближённое значение P(x)
    """
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x должно лежать в [0, 1], получено {x}")
    if depth < 0:
        raise DomainError(f"depth должно быть ≥ 0, получено {depth}")

    kappa, a = params.kappa, params.a
    alphas = params.alphas
    offset, cell = 0.0, 1.0

    for _ in range(depth):
        # Концы ячейки: значения P известны точно
        if x <= 0.0:
            return offset
        if x >= 1.0:
            return offset + cell

        for k in range(kappa):
            left, right = alphas[2 * k], alphas[2 * k + 1]
            if x <= right:
                if x >= left:
                    offset += cell * k / kappa
                    cell /= kappa
                    x = min(max((x - left) / a, 0.0), 1.0)
                else:
                    # Плато (α_{2k-1}, α_{2k})
                    return offset + cell * k / kappa
                break

    if x <= 0.0:
        return offset
    if x >= 1.0:
        return offset + cell
    return offset + 0.5 * cell


def eval_P_many(params: CantorParams, xs: Sequence[float], depth: int) -> np.ndarray:
    """Значения P в наборе точек"""
    return np.array([eval_P(params, float(x), depth) for x in xs], dtype=float)


def copy_interval_starts(params: CantorParams, level: int) -> np.ndarray:
    """
    Левые концы κ^level интервалов копий поколения level (по возрастанию)

    Длина каждого интервала равна a^level.
    """
    if level < 0:
        raise DomainError(f"level должно быть ≥ 0, получено {level}")

    starts = np.zeros(1)
    copy_starts = params.copy_starts
    for _ in range(level):
        starts = (copy_starts[:, None] + params.a * starts[None, :]).ravel()
    return starts
