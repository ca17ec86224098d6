#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Спектральный решатель для пучка струны.

Число собственных значений ниже λ равно числу отрицательных ведущих
элементов LDLᵀ-разложения трёхдиагональной матрицы A - λM (закон инерции
Сильвестра). Отдельные собственные значения находятся бисекцией по этому
счётчику, собственные функции - обратными итерациями.
"""

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np
import scipy.linalg
from loguru import logger

from src.core.config_manager import DEFAULT_CONFIG
from src.core.errors import DomainError, NumericalError
from src.fractal.stieltjes_string import BoundaryCondition, Pencil

_SOLVER = DEFAULT_CONFIG["solver"]

PIVOT_FLOOR = _SOLVER["pivot_floor"]
PERTURB_RETRIES = _SOLVER["perturb_retries"]
PERTURB_REL = 1e-13
PERTURB_GROWTH = 8.0
MIN_REL_TOL = 1e-14
BRACKET_LOW = -1e-12
MAX_DOUBLINGS = 2000
MAX_BISECTIONS = 400
INVERSE_ITERATIONS = _SOLVER["inverse_iterations"]
INVERSE_SHIFT = 1e-8
RESIDUAL_LIMIT = 1e-6
ZERO_VALUE = 1e-12
SEED = 20100601


@dataclass(frozen=True)
class SolverSettings:
    """Настройки решателя из секции solver конфигурации"""
    pivot_floor: float = PIVOT_FLOOR
    perturb_retries: int = PERTURB_RETRIES
    inverse_iterations: int = INVERSE_ITERATIONS

    def __post_init__(self):
        if not self.pivot_floor > 0.0:
            raise DomainError(f"pivot_floor должно быть > 0, получено {self.pivot_floor}")
        if self.perturb_retries < 0:
            raise DomainError(f"perturb_retries должно быть ≥ 0, получено {self.perturb_retries}")
        if self.inverse_iterations < 1:
            raise DomainError(f"inverse_iterations должно быть ≥ 1, получено {self.inverse_iterations}")

    @classmethod
    def from_config(cls, solver: Mapping[str, Any]) -> "SolverSettings":
        return cls(
            pivot_floor=float(solver.get("pivot_floor", PIVOT_FLOOR)),
            perturb_retries=int(solver.get("perturb_retries", PERTURB_RETRIES)),
            inverse_iterations=int(solver.get("inverse_iterations", INVERSE_ITERATIONS)),
        )


DEFAULT_SETTINGS = SolverSettings()


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Начальный отрезок спектра задачи"""
    bc: BoundaryCondition
    level: int
    eigenvalues: np.ndarray
    tol: float  # относительная полуширина бисекции

    def __len__(self) -> int:
        return int(self.eigenvalues.size)

    def __getitem__(self, n: int) -> float:
        return float(self.eigenvalues[n])


@dataclass(frozen=True, eq=False)
class Eigenfunction:
    """Собственная функция в узлах струны (для Дирихле с нулями в концах)"""
    node_positions: np.ndarray
    node_values: np.ndarray
    derivative_values: np.ndarray
    eigen_index: int
    sign_changes: int
    residual: float


def _pivot_negatives(pencil: Pencil, lambdas: np.ndarray, pivot_floor: float):
    """
    Один проход LDLᵀ по строкам сжатой формы для всего массива λ

    Returns:
        (число отрицательных ведущих элементов, маска вырожденных ведущих)
    """
    diag, offdiag, mass = pencil.condensed()
    off2 = offdiag ** 2
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        pivot = diag[0] - lambdas * mass[0]
        negatives = (pivot < 0.0).astype(np.int64)
        degenerate = np.abs(pivot) < pivot_floor
        for i in range(1, diag.size):
            pivot = (diag[i] - lambdas * mass[i]) - off2[i - 1] / pivot
            negatives += pivot < 0.0
            degenerate |= ~(np.abs(pivot) >= pivot_floor)
    return negatives, degenerate


def count_below_many(
    pencil: Pencil, lambdas: Iterable[float], settings: Optional[SolverSettings] = None
) -> np.ndarray:
    """
    Число собственных значений пучка строго ниже каждого λ из массива

    При вырожденном ведущем элементе λ сдвигается на λ·1e-13 + pivot_floor
    (сдвиг растёт в 8 раз на каждой из perturb_retries попыток).
    При γ ≥ 0 форма неотрицательна, поэтому для λ ≤ 0 ответ равен нулю.

    Args:
        pencil: Пучок
        lambdas: Значения λ
        settings: Настройки решателя (по умолчанию из DEFAULT_CONFIG)

    Returns:
        Массив целых счётчиков
    """
    settings = settings or DEFAULT_SETTINGS
    lam = np.atleast_1d(np.asarray(lambdas, dtype=float))
    counts = np.zeros(lam.shape, dtype=np.int64)
    active = lam > 0.0
    if not np.any(active):
        return counts

    query = lam[active]
    result, degenerate = _pivot_negatives(pencil, query, settings.pivot_floor)
    shift = np.abs(query) * PERTURB_REL + settings.pivot_floor
    for attempt in range(settings.perturb_retries):
        if not np.any(degenerate):
            break
        logger.debug(f"Нулевой ведущий элемент при {int(degenerate.sum())} значениях λ, попытка {attempt + 1}")
        retry = query[degenerate] + shift[degenerate]
        shift[degenerate] *= PERTURB_GROWTH
        redo, still = _pivot_negatives(pencil, retry, settings.pivot_floor)
        result[degenerate] = redo
        index = np.flatnonzero(degenerate)
        degenerate[index] = still
    if np.any(degenerate):
        raise NumericalError(
            f"ведущий элемент остаётся нулевым при λ = {query[degenerate][0]!r} "
            f"после {settings.perturb_retries} сдвигов"
        )

    counts[active] = result
    return counts


def count_below(pencil: Pencil, lam: float, settings: Optional[SolverSettings] = None) -> int:
    """Число собственных значений пучка строго ниже lam"""
    return int(count_below_many(pencil, [lam], settings)[0])


def counting_function(pencil: Pencil, lam: float, settings: Optional[SolverSettings] = None) -> int:
    """
    Считающая функция N(λ) = #{n : 0 < λ_n < λ}

    Нулевое собственное значение задачи Неймана не учитывается.
    """
    if lam <= 0.0:
        raise DomainError(f"lambda должно быть > 0, получено {lam}")
    count = count_below(pencil, lam, settings)
    if pencil.bc.is_neumann:
        count = max(count - 1, 0)
    return count


def counting_function_many(
    pencil: Pencil, lambdas: Iterable[float], settings: Optional[SolverSettings] = None
) -> np.ndarray:
    """N(λ) для массива λ > 0"""
    lam = np.asarray(lambdas, dtype=float)
    if np.any(lam <= 0.0):
        raise DomainError("все значения lambda должны быть > 0")
    counts = count_below_many(pencil, lam, settings)
    if pencil.bc.is_neumann:
        counts = np.maximum(counts - 1, 0)
    return counts


def _check_indices(pencil: Pencil, indices: np.ndarray) -> None:
    total = pencil.n_eigen
    if indices.size and (indices.min() < 0 or indices.max() >= total):
        bad = indices[(indices < 0) | (indices >= total)][0]
        raise DomainError(f"индекс n={int(bad)} вне диапазона [0, {total})")


def eigenvalues(
    pencil: Pencil,
    indices: Sequence[int],
    rel_tol: float = 1e-10,
    settings: Optional[SolverSettings] = None,
) -> np.ndarray:
    """
    Одновременная бисекция для нескольких индексов

    Вилка [-1e-12, U], U удваивается от 1, пока count_below(U) ≤ n;
    бисекция продолжается до |λ̂ - λ_n| ≤ rel_tol·max(λ_n, 1).

    Args:
        pencil: Пучок
        indices: Номера собственных значений (от нуля)
        rel_tol: Относительная точность (≥ 1e-14)
        settings: Настройки решателя

    Returns:
        Массив приближений λ_n в порядке indices
    """
    if rel_tol < MIN_REL_TOL:
        raise DomainError(f"rel_tol должно быть ≥ {MIN_REL_TOL}, получено {rel_tol}")
    idx = np.asarray(list(indices), dtype=np.int64)
    _check_indices(pencil, idx)
    result = np.zeros(idx.size)
    if idx.size == 0:
        return result

    # Постоянная функция задачи Неймана: λ_0 = 0 точно
    zero_mode = (idx == 0) & pencil.bc.is_neumann
    todo = np.flatnonzero(~zero_mode)
    if todo.size == 0:
        return result
    target = idx[todo]

    upper = np.ones(todo.size)
    for _ in range(MAX_DOUBLINGS):
        grow = count_below_many(pencil, upper, settings) <= target
        if not np.any(grow):
            break
        upper[grow] *= 2.0
    else:
        raise NumericalError("не удалось построить верхнюю границу вилки")
    logger.debug(f"Вилка бисекции: max U = {upper.max():.6g} для {todo.size} индексов")

    lower = np.full(todo.size, BRACKET_LOW)
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lower + upper)
        open_ = 0.5 * (upper - lower) > rel_tol * np.maximum(np.abs(mid), 1.0)
        if not np.any(open_):
            break
        above = count_below_many(pencil, mid[open_], settings) > target[open_]
        sel = np.flatnonzero(open_)
        upper[sel[above]] = mid[open_][above]
        lower[sel[~above]] = mid[open_][~above]
    else:
        raise NumericalError("бисекция не сошлась")

    result[todo] = 0.5 * (lower + upper)
    return result


def eigenvalue(
    pencil: Pencil, n: int, rel_tol: float = 1e-10, settings: Optional[SolverSettings] = None
) -> float:
    """Собственное значение λ_n бисекцией по счётчику инерции"""
    return float(eigenvalues(pencil, [n], rel_tol, settings)[0])


def spectrum(
    pencil: Pencil,
    level: int,
    count: int,
    rel_tol: float = 1e-10,
    settings: Optional[SolverSettings] = None,
) -> Spectrum:
    """Первые count собственных значений в виде Spectrum"""
    if count < 0 or count > pencil.n_eigen:
        raise DomainError(f"count должно лежать в [0, {pencil.n_eigen}], получено {count}")
    values = eigenvalues(pencil, range(count), rel_tol, settings)
    return Spectrum(bc=pencil.bc, level=level, eigenvalues=values, tol=rel_tol)


def _banded(pencil: Pencil, shift: float) -> np.ndarray:
    size = pencil.size
    ab = np.zeros((3, size))
    ab[0, 1:] = pencil.offdiag
    ab[1, :] = pencil.diag - shift * pencil.massdiag
    ab[2, :-1] = pencil.offdiag
    return ab


def _apply(pencil: Pencil, lam: float, v: np.ndarray) -> np.ndarray:
    out = (pencil.diag - lam * pencil.massdiag) * v
    out[:-1] += pencil.offdiag * v[1:]
    out[1:] += pencil.offdiag * v[:-1]
    return out


def sign_changes(values: Sequence[float], zero: float = ZERO_VALUE) -> int:
    """Число строгих перемен знака; значения |v| < zero пропускаются"""
    signs = np.sign(np.asarray(values, dtype=float))
    signs = signs[np.abs(np.asarray(values, dtype=float)) >= zero]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def eigenfunction(
    pencil: Pencil,
    lambda_n: float,
    n: int,
    iterations: Optional[int] = None,
    seed: Optional[int] = SEED,
    settings: Optional[SolverSettings] = None,
) -> Eigenfunction:
    """
    Собственная функция, отвечающая λ_n

    Обратные итерации v ← (A - λ̂M)^{-1}Mv со сдвигом λ̂ = λ_n·(1 + 1e-8) от
    детерминированного начального вектора; нормировка по максимуму модуля.

    Args:
        pencil: Пучок
        lambda_n: Собственное значение (rel_tol ≤ 1e-10)
        n: Его номер
        iterations: Число итераций (по умолчанию settings.inverse_iterations)
        seed: Зерно начального вектора
        settings: Настройки решателя

    Returns:
        Eigenfunction с числом перемен знака

    Raises:
        NumericalError: невязка после итераций больше 1e-6
    """
    _check_indices(pencil, np.array([n]))
    if iterations is None:
        iterations = (settings or DEFAULT_SETTINGS).inverse_iterations
    if lambda_n > 0.0:
        shift = lambda_n * (1.0 + INVERSE_SHIFT)
    else:
        # A вырождена для Неймана: сдвиг влево
        shift = -INVERSE_SHIFT

    ab = _banded(pencil, shift)
    rng = np.random.default_rng(seed)
    v = rng.uniform(0.5, 1.5, pencil.size)
    v /= np.max(np.abs(v))
    try:
        for _ in range(iterations):
            v = scipy.linalg.solve_banded((1, 1), ab, pencil.massdiag * v)
            v /= np.max(np.abs(v))
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"обратные итерации для n={n} прерваны: {e}") from e

    scale = (
        np.max(np.abs(pencil.diag)) + 2.0 * np.max(np.abs(pencil.offdiag), initial=0.0)
        + abs(lambda_n) * np.max(pencil.massdiag)
    )
    residual = float(np.max(np.abs(_apply(pencil, lambda_n, v))) / scale)
    if not np.isfinite(residual) or residual > RESIDUAL_LIMIT:
        raise NumericalError(f"обратные итерации для n={n} не сошлись: невязка {residual:.3e}")

    positions = pencil.node_positions
    values = v
    if pencil.bc.is_dirichlet:
        positions = np.concatenate(([0.0], positions, [1.0]))
        values = np.concatenate(([0.0], values, [0.0]))

    significant = np.flatnonzero(np.abs(values) >= ZERO_VALUE)
    if significant.size and values[significant[0]] < 0.0:
        values = -values

    return Eigenfunction(
        node_positions=positions,
        node_values=values,
        derivative_values=np.diff(values) / np.diff(positions),
        eigen_index=n,
        sign_changes=sign_changes(values),
        residual=residual,
    )


def dense_eigenvalues(pencil: Pencil) -> np.ndarray:
    """
    Оракул: все конечные собственные значения плотным решателем

    Безмассовые узлы исключаются дополнением Шура, затем
    scipy.linalg.eigh решает обобщённую задачу для атомов.
    """
    a_mat, m_mat = pencil.dense()
    heavy = np.flatnonzero(pencil.massdiag > 0.0)
    light = np.flatnonzero(pencil.massdiag == 0.0)
    reduced = a_mat[np.ix_(heavy, heavy)]
    if light.size:
        coupling = a_mat[np.ix_(heavy, light)]
        block = a_mat[np.ix_(light, light)]
        reduced = reduced - coupling @ np.linalg.solve(block, coupling.T)
    reduced = 0.5 * (reduced + reduced.T)
    values = scipy.linalg.eigh(reduced, m_mat[np.ix_(heavy, heavy)], eigvals_only=True)
    return np.sort(values)
