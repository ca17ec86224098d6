#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Ступенчатые приближения монотонных функций и критерий чистой сингулярности.

f задаётся отсчётами (x_i, f_i) и понимается как их кусочно-линейная
интерполяция. step_approximate строит ступенчатую f_n не более чем с 2^n
разрывами и ‖f - f_n‖ < 2^{-n}(1+ε)(B-A)√(hi-lo); criterion_products
возвращает (#разрывов + 2)·‖f - f_n‖, стремление которых к нулю означает
чистую сингулярность f.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.core.errors import DomainError, MonotonicityError
from src.fractal.selfsimilar import CantorParams, copy_interval_starts
from src.fractal.step_function import StepFunction

PATCH_HALVINGS = 60


@dataclass(frozen=True, eq=False)
class MonotoneSamples:
    """Отсчёты неубывающей функции и её существенные грани (A, B)"""
    xs: np.ndarray
    fs: np.ndarray
    bounds: Tuple[float, float]

    @property
    def domain(self) -> Tuple[float, float]:
        return float(self.xs[0]), float(self.xs[-1])

    def __call__(self, x):
        return np.interp(x, self.xs, self.fs)


def make_samples(
    xs: Sequence[float], fs: Sequence[float], bounds: Optional[Tuple[float, float]] = None
) -> MonotoneSamples:
    """
    Проверка и упаковка отсчётов

    Raises:
        DomainError: меньше двух отсчётов, x не возрастают, грани не охватывают f
        MonotonicityError: f убывает (index - первый нарушающий отсчёт)
    """
    xs = np.asarray(xs, dtype=float)
    fs = np.asarray(fs, dtype=float)
    if xs.ndim != 1 or xs.size != fs.size:
        raise DomainError("xs и fs должны быть одномерными массивами одной длины")
    if xs.size < 2:
        raise DomainError(f"нужно не менее двух отсчётов, получено {xs.size}")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(fs))):
        raise DomainError("отсчёты должны быть конечными")

    bad_x = np.flatnonzero(np.diff(xs) <= 0.0)
    if bad_x.size:
        raise DomainError(f"x должны строго возрастать, нарушение в отсчёте {int(bad_x[0]) + 1}")
    bad_f = np.flatnonzero(np.diff(fs) < 0.0)
    if bad_f.size:
        index = int(bad_f[0]) + 1
        raise MonotonicityError(f"f убывает в отсчёте {index}", index=index)

    if bounds is None:
        bounds = (float(fs[0]), float(fs[-1]))
    low, high = float(bounds[0]), float(bounds[1])
    if low > fs[0] or high < fs[-1]:
        raise DomainError(f"грани ({low}, {high}) не охватывают значения f")
    return MonotoneSamples(xs=xs, fs=fs, bounds=(low, high))


def samples_from_function(
    fn: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, count: int
) -> MonotoneSamples:
    """Отсчёты функции на равномерной сетке"""
    xs = np.linspace(lo, hi, count)
    return make_samples(xs, fn(xs))


def samples_from_P(params: CantorParams, depth: int) -> MonotoneSamples:
    """
    Точные отсчёты P в концах интервалов копий поколения depth

    Интерполянт линеен на каждом интервале копии и постоянен на плато.
    """
    starts = copy_interval_starts(params, depth)
    length = params.a ** depth
    count = starts.size
    xs = np.empty(2 * count)
    xs[0::2] = starts
    xs[1::2] = starts + length
    fs = np.empty(2 * count)
    fs[0::2] = np.arange(count) / count
    fs[1::2] = np.arange(1, count + 1) / count
    xs[-1] = 1.0
    return make_samples(xs, fs, (0.0, 1.0))


def canonical_staircase(params: CantorParams, n: int) -> StepFunction:
    """
    Каноническая лестница поколения n

    Значение j/κ^n на плато между интервалами копий; разрыв в середине
    каждого из κ^n интервалов копий поколения n.
    """
    if n < 0:
        raise DomainError(f"n должно быть ≥ 0, получено {n}")
    starts = copy_interval_starts(params, n)
    breaks = starts + 0.5 * params.a ** n
    values = np.arange(starts.size + 1) / starts.size
    return StepFunction(breaks=breaks, values=values, domain=(0.0, 1.0))


def l2_error(f: MonotoneSamples, step: StepFunction, lo: Optional[float] = None, hi: Optional[float] = None) -> float:
    """
    Точная ‖f - step‖_{L2[lo, hi]} для кусочно-линейного f

    На каждом куске u = f - c линейна, ∫u² = h(u0² + u0·u1 + u1²)/3.
    """
    lo = f.domain[0] if lo is None else lo
    hi = f.domain[1] if hi is None else hi
    inner_x = f.xs[(f.xs > lo) & (f.xs < hi)]
    inner_b = step.breaks[(step.breaks > lo) & (step.breaks < hi)]
    grid = np.unique(np.concatenate(([lo], inner_x, inner_b, [hi])))
    left, right = grid[:-1], grid[1:]
    level = step(left)
    u0 = f(left) - level
    u1 = f(right) - level
    return float(math.sqrt(max(np.sum((right - left) * (u0 * u0 + u0 * u1 + u1 * u1)) / 3.0, 0.0)))


def lemma_bound(n: int, eps: float, low: float, high: float, lo: float, hi: float) -> float:
    """2^{-n}(1+ε)(B-A)√(hi-lo)"""
    return 2.0 ** -n * (1.0 + eps) * (high - low) * math.sqrt(hi - lo)


def _median_crossing(f: MonotoneSamples, level: float) -> float:
    """Первая точка, где интерполянт достигает level (бинарный поиск по сетке)"""
    i = int(np.searchsorted(f.fs, level, side="left"))
    if i == 0:
        return float(f.xs[0])
    x0, x1 = f.xs[i - 1], f.xs[i]
    f0, f1 = f.fs[i - 1], f.fs[i]
    return float(x0 + (level - f0) / (f1 - f0) * (x1 - x0))


def _sample_gap(f: MonotoneSamples, x: float, forward: bool) -> float:
    i = int(np.searchsorted(f.xs, x, side="right" if forward else "left"))
    if forward:
        return float(f.xs[min(i, f.xs.size - 1)] - x)
    return float(x - f.xs[max(i - 1, 0)])


class _Pieces:
    """Промежуточное представление: разрывы и значения на подотрезке"""

    __slots__ = ("breaks", "values")

    def __init__(self, breaks: List[float], values: List[float]):
        self.breaks = breaks
        self.values = values

    def to_step(self, lo: float, hi: float) -> StepFunction:
        return StepFunction(breaks=np.array(self.breaks), values=np.array(self.values), domain=(lo, hi))


def _approximate(
    f: MonotoneSamples, lo: float, hi: float, low: float, high: float, n: int, eps: float
) -> _Pieces:
    if high <= low:
        return _Pieces([], [low])
    if n == 0:
        return _Pieces([0.5 * (lo + hi)], [low, high])

    delta = 0.5 * (math.sqrt(1.0 + eps) - 1.0)
    median = 0.5 * (low + high)
    slack = delta * 0.5 * (high - low)
    f_lo, f_hi = float(f(lo)), float(f(hi))

    if f_lo > median - slack:
        # f(lo) уже выше медианы: приближение с нижней гранью f(lo) и подпорка A у левого конца
        inner = _approximate(f, lo, hi, f_lo, high, n - 1, delta)
        limit = inner.breaks[0] if inner.breaks else hi
        width = min(_sample_gap(f, lo, True), 0.5 * (limit - lo))
        return _patch(f, inner, lo, hi, low, high, n, eps, width, left=True)

    if f_hi < median + slack:
        inner = _approximate(f, lo, hi, low, f_hi, n - 1, delta)
        limit = inner.breaks[-1] if inner.breaks else lo
        width = min(_sample_gap(f, hi, False), 0.5 * (hi - limit))
        return _patch(f, inner, lo, hi, low, high, n, eps, width, left=False)

    zeta = _median_crossing(f, median)
    f_zeta = float(f(zeta))
    left = _approximate(f, lo, zeta, low, f_zeta, n - 1, delta)
    right = _approximate(f, zeta, hi, f_zeta, high, n - 1, delta)
    return _Pieces(left.breaks + right.breaks, left.values + right.values[1:])


def _patch(
    f: MonotoneSamples,
    inner: _Pieces,
    lo: float,
    hi: float,
    low: float,
    high: float,
    n: int,
    eps: float,
    width: float,
    left: bool,
) -> _Pieces:
    """Подпорка граничного значения на окрестности ширины width, сужаемой до выполнения оценки"""
    bound = lemma_bound(n, eps, low, high, lo, hi)
    for _ in range(PATCH_HALVINGS):
        if left:
            candidate = _Pieces([lo + width] + inner.breaks, [low] + inner.values)
        else:
            candidate = _Pieces(inner.breaks + [hi - width], inner.values + [high])
        if l2_error(f, candidate.to_step(lo, hi), lo, hi) < bound:
            return candidate
        width *= 0.5
    logger.warning(f"Подпорка на [{lo}, {hi}] не уложилась в оценку после {PATCH_HALVINGS} сужений")
    return candidate


def step_approximate(f: MonotoneSamples, n: int, eps: float) -> StepFunction:
    """
    Ступенчатое приближение f_n по рекурсивной конструкции

    На каждом шаге ищется ζ с |f(ζ) - (A+B)/2| < δ(B-A)/2, δ = (√(1+ε) - 1)/2,
    и отрезок делится в ζ; если f(lo) или f(hi) уже по другую сторону медианы,
    рекурсия идёт по всему отрезку с суженными гранями, а граничная ступень
    подпирается на малой окрестности конца.

    Args:
        f: Отсчёты монотонной функции
        n: Глубина (разрывов не более 2^n)
        eps: Запас ε > 0 в оценке

    Returns:
        Неубывающая StepFunction, равная A у левого конца и B у правого
    """
    if n < 0:
        raise DomainError(f"n должно быть ≥ 0, получено {n}")
    if not eps > 0.0:
        raise DomainError(f"eps должно быть > 0, получено {eps}")
    if f.xs.size < 2:
        raise DomainError("нужно не менее двух отсчётов")

    lo, hi = f.domain
    low, high = f.bounds
    pieces = _approximate(f, lo, hi, low, high, n, eps)
    return pieces.to_step(lo, hi)


def criterion_products(f: MonotoneSamples, approximants: Sequence[StepFunction]) -> np.ndarray:
    """
    c_n = (#разрывов f_n + 2)·‖f - f_n‖_{L2}

    Raises:
        DomainError: область приближения не совпадает с областью f
    """
    lo, hi = f.domain
    products = []
    for step in approximants:
        if not np.allclose(step.domain, (lo, hi), rtol=0.0, atol=1e-12):
            raise DomainError(f"область {step.domain} не совпадает с [{lo}, {hi}]")
        products.append((step.num_breaks + 2) * l2_error(f, step))
    return np.array(products)
