#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Кусочно-постоянные функции на отрезке и их точные L2-нормы.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.core.errors import DomainError


@dataclass(frozen=True, eq=False)
class StepFunction:
    """
    Ступенчатая функция на [lo, hi], непрерывная справа

    values[0] действует на [lo, breaks[0]), values[i+1] - на [breaks[i], breaks[i+1]).
    """
    breaks: np.ndarray
    values: np.ndarray
    domain: Tuple[float, float]

    def __post_init__(self):
        breaks = np.asarray(self.breaks, dtype=float)
        values = np.asarray(self.values, dtype=float)
        lo, hi = float(self.domain[0]), float(self.domain[1])
        if not lo < hi:
            raise DomainError(f"пустая область определения [{lo}, {hi}]")
        if values.size != breaks.size + 1:
            raise DomainError(
                f"значений должно быть на одно больше точек разрыва: {values.size} против {breaks.size}"
            )
        if breaks.size and (np.any(np.diff(breaks) <= 0.0) or breaks[0] < lo or breaks[-1] > hi):
            raise DomainError("точки разрыва должны строго возрастать внутри области")
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "domain", (lo, hi))

    @property
    def num_breaks(self) -> int:
        return int(self.breaks.size)

    def __call__(self, t):
        idx = np.searchsorted(self.breaks, t, side="right")
        result = self.values[idx]
        return float(result) if np.ndim(result) == 0 else result

    def is_non_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.values) >= 0.0))

    def endpoint_values(self) -> Tuple[float, float]:
        return float(self.values[0]), float(self.values[-1])


def constant_step(value: float, domain: Tuple[float, float]) -> StepFunction:
    return StepFunction(breaks=np.empty(0), values=np.array([value]), domain=domain)


def _common_grid(f: StepFunction, g: StepFunction) -> np.ndarray:
    if not np.allclose(f.domain, g.domain, rtol=0.0, atol=1e-12):
        raise DomainError(f"области определения не совпадают: {f.domain} и {g.domain}")
    lo, hi = f.domain
    return np.unique(np.concatenate(([lo], f.breaks, g.breaks, [hi])))


def step_l2_distance(f: StepFunction, g: StepFunction) -> float:
    """Точная норма ‖f - g‖_{L2} по объединённым точкам разрыва"""
    grid = _common_grid(f, g)
    left = grid[:-1]
    diff = f(left) - g(left)
    return float(np.sqrt(np.sum(diff ** 2 * np.diff(grid))))


def mismatch_measure(f: StepFunction, g: StepFunction, tol: float = 0.0) -> float:
    """Мера множества {t : |f(t) - g(t)| > tol}"""
    grid = _common_grid(f, g)
    left = grid[:-1]
    differs = np.abs(f(left) - g(left)) > tol
    return float(np.sum(np.diff(grid)[differs]))


def staircase_from_jumps(
    jumps: Sequence[float], start: float, step: float, domain: Tuple[float, float]
) -> StepFunction:
    """
    Неубывающая ступенчатая функция: значение start, рост на step в каждой точке jumps

    Совпадающие точки объединяются в один разрыв с кратным скачком.
    """
    points, multiplicity = np.unique(np.asarray(jumps, dtype=float), return_counts=True)
    values = start + step * np.concatenate(([0], np.cumsum(multiplicity)))
    return StepFunction(breaks=points, values=values, domain=domain)
