#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Спектральная периодичность.

Проверка трёх тождеств между спектрами струн поколений m и m-1:

    neumann: λ_{κn}          = (κ/a)·λ_n,  обе задачи Неймана;
    robin:   λ_{κ(n+1)-1}    = (κ/a)·μ_n,  γ = 2/b против γ = 2a/b;
    mixed:   λ_{κ(n+1/2)}    = (κ/a)·μ_n,  Нейман против (0, 2a/b), κ чётно.

Для дискретизации с атомами в серединах интервалов копий тождества точные,
поэтому невязки ограничены только точностью бисекции.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from loguru import logger

from src.core.errors import DomainError
from src.fractal.selfsimilar import CantorParams
from src.fractal.spectral import SolverSettings, eigenvalues
from src.fractal.stieltjes_string import (
    MAX_ATOMS,
    BoundaryCondition,
    assemble_pencil,
    build_string,
)

CHECKS = ("neumann", "robin", "mixed")


@dataclass(frozen=True, eq=False)
class PeriodicityReport:
    """Пары (левая часть, правая часть) тождества и невязки"""
    check: str
    level: int
    n: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    residuals: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0

    def rows(self) -> List[Dict[str, float]]:
        return [
            {"n": int(n), "lhs": float(l), "rhs": float(r), "residual": float(e)}
            for n, l, r, e in zip(self.n, self.lhs, self.rhs, self.residuals)
        ]


def robin_pair(params: CantorParams):
    """Граничные условия (γ = 2/b, γ = 2a/b) для тождества с наклонной сшивкой"""
    outer = BoundaryCondition.robin(2.0 / params.b, 2.0 / params.b)
    inner = BoundaryCondition.robin(2.0 * params.a / params.b, 2.0 * params.a / params.b)
    return outer, inner


def mixed_inner(params: CantorParams) -> BoundaryCondition:
    """Условия y'(0) = 0, y'(1) = -(2a/b)·y(1)"""
    return BoundaryCondition.robin(0.0, 2.0 * params.a / params.b)


def _check_level(params: CantorParams, level: int, n_max: int, max_atoms: int) -> None:
    if level < 2:
        raise DomainError(f"level должно быть ≥ 2, получено {level}")
    if params.kappa ** level > max_atoms:
        raise DomainError(f"κ^level = {params.kappa ** level} превышает предел {max_atoms}")
    if n_max < 0 or n_max >= params.kappa ** (level - 1):
        raise DomainError(
            f"n_max должно лежать в [0, {params.kappa ** (level - 1)}), получено {n_max}"
        )


def _target_indices(params: CantorParams, check: str, n: np.ndarray) -> np.ndarray:
    kappa = params.kappa
    if check == "neumann":
        return kappa * n
    if check == "robin":
        return kappa * (n + 1) - 1
    return kappa * n + kappa // 2


def periodicity_report(
    params: CantorParams,
    level: int,
    n_max: int,
    check: str = "neumann",
    rel_tol: float = 1e-10,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> PeriodicityReport:
    """
    Сравнение спектра поколения level с масштабированным спектром поколения level-1

    Args:
        params: Параметры самоподобной функции
        level: Поколение m ≥ 2
        n_max: Последний номер n (< κ^{m-1})
        check: "neumann", "robin" или "mixed"
        rel_tol: Точность бисекции
        max_atoms: Предел числа атомов
        settings: Настройки решателя

    Returns:
        PeriodicityReport с невязками r_n = |lhs - rhs| / (1 + lhs)
    """
    if check not in CHECKS:
        raise DomainError(f"check должно быть одним из {CHECKS}, получено {check!r}")
    if check == "mixed" and params.kappa % 2:
        raise DomainError(f"проверка mixed требует чётного kappa, получено {params.kappa}")
    _check_level(params, level, n_max, max_atoms)

    if check == "neumann":
        outer = inner = BoundaryCondition.neumann()
    elif check == "robin":
        outer, inner = robin_pair(params)
    else:
        outer, inner = BoundaryCondition.neumann(), mixed_inner(params)

    fine = build_string(params, level, max_atoms)
    coarse = build_string(params, level - 1, max_atoms)
    n = np.arange(n_max + 1)
    lhs = eigenvalues(assemble_pencil(fine, outer), _target_indices(params, check, n), rel_tol, settings)
    rhs = params.scale * eigenvalues(assemble_pencil(coarse, inner), n, rel_tol, settings)
    residuals = np.abs(lhs - rhs) / (1.0 + lhs)

    logger.debug(f"Периодичность {check}: level={level}, n_max={n_max}, max r = {residuals.max():.3e}")
    return PeriodicityReport(check=check, level=level, n=n, lhs=lhs, rhs=rhs, residuals=residuals)


def check_neumann_periodicity(
    params: CantorParams,
    level: int,
    n_max: int,
    rel_tol: float = 1e-10,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> np.ndarray:
    """Невязки тождества λ_{κn} = (κ/a)·λ_n"""
    return periodicity_report(params, level, n_max, "neumann", rel_tol, max_atoms, settings).residuals


def check_robin_periodicity(
    params: CantorParams,
    level: int,
    n_max: int,
    rel_tol: float = 1e-10,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> np.ndarray:
    """Невязки тождества λ_{κ(n+1)-1}[γ=2/b] = (κ/a)·μ_n[γ=2a/b]"""
    return periodicity_report(params, level, n_max, "robin", rel_tol, max_atoms, settings).residuals


def check_mixed_periodicity(
    params: CantorParams,
    level: int,
    n_max: int,
    rel_tol: float = 1e-10,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> np.ndarray:
    """Невязки тождества λ_{κ(n+1/2)} = (κ/a)·μ_n[γ0=0, γ1=2a/b]; только чётное κ"""
    return periodicity_report(params, level, n_max, "mixed", rel_tol, max_atoms, settings).residuals


def log_gap_partial_sums(
    params: CantorParams,
    level: int,
    bc_a: BoundaryCondition,
    bc_b: BoundaryCondition,
    n_max: int,
    rel_tol: float = 1e-10,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> np.ndarray:
    """
    Частичные суммы S_k = Σ_{n=1}^{k} |ln μ_n - ln λ_n|, k = 1..n_max

    λ_n - спектр задачи Неймана (bc_a), μ_n - третьей задачи bc_b с γ ≥ 0.
    Ряд начинается с n = 1: у λ_0 = 0 нет логарифма.
    """
    if not bc_a.is_neumann:
        raise DomainError("bc_a должно быть условием Неймана")
    if bc_b.is_dirichlet:
        raise DomainError("bc_b должно быть условием третьего рода")
    if n_max < 1:
        raise DomainError(f"n_max должно быть ≥ 1, получено {n_max}")

    string = build_string(params, level, max_atoms)
    if n_max >= string.size:
        raise DomainError(f"n_max должно быть < {string.size}, получено {n_max}")

    n = np.arange(1, n_max + 1)
    lam = eigenvalues(assemble_pencil(string, bc_a), n, rel_tol, settings)
    mu = eigenvalues(assemble_pencil(string, bc_b), n, rel_tol, settings)
    return np.cumsum(np.abs(np.log(mu) - np.log(lam)))


def plateau_gap_partial_sums(
    params: CantorParams,
    level: int,
    n_max: int,
    rel_tol: float = 1e-10,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> np.ndarray:
    """
    Частичные суммы Σ_{n=1}^{k} |ln λ_{κ(n+1)-1} - ln λ_{κn}| для спектра Неймана

    Слагаемые - логарифмические ширины окон, где σ_k и σ_{k+1} могут различаться.
    """
    if n_max < 1:
        raise DomainError(f"n_max должно быть ≥ 1, получено {n_max}")
    string = build_string(params, level, max_atoms)
    kappa = params.kappa
    if kappa * (n_max + 1) - 1 >= string.size:
        raise DomainError(f"n_max должно быть < {string.size // kappa}, получено {n_max}")

    n = np.arange(1, n_max + 1)
    pencil = assemble_pencil(string, BoundaryCondition.neumann())
    upper = eigenvalues(pencil, kappa * (n + 1) - 1, rel_tol, settings)
    lower = eigenvalues(pencil, kappa * n, rel_tol, settings)
    return np.cumsum(np.abs(np.log(upper) - np.log(lower)))


def table_rows(
    params: CantorParams,
    level: int,
    which: str = "neumann",
    rows: int = 9,
    rel_tol: float = 1e-10,
    max_atoms: int = MAX_ATOMS,
    settings: Optional[SolverSettings] = None,
) -> List[Dict[str, float]]:
    """
    Таблица собственных значений одного уровня: n, base, scaled, target

        neumann: base = λ_n,            target = λ_{κn}            (n = 1..rows)
        robin:   base = μ_n[γ=2a/b],    target = λ_{κ(n+1)-1}[γ=2/b] (n = 0..rows-1)
        mixed:   base = μ_n[0, 2a/b],   target = λ_{κ(n+1/2)}      (n = 0..rows-1)

    scaled = (κ/a)·base; в сошедшемся спектре scaled ≈ target.
    """
    if which not in CHECKS:
        raise DomainError(f"which должно быть одним из {CHECKS}, получено {which!r}")
    if which == "mixed" and params.kappa % 2:
        raise DomainError(f"таблица mixed требует чётного kappa, получено {params.kappa}")
    if rows < 1:
        raise DomainError(f"rows должно быть ≥ 1, получено {rows}")

    string = build_string(params, level, max_atoms)
    if which == "neumann":
        n = np.arange(1, rows + 1)
        base_bc = target_bc = BoundaryCondition.neumann()
    elif which == "robin":
        n = np.arange(rows)
        target_bc, base_bc = robin_pair(params)
    else:
        n = np.arange(rows)
        target_bc, base_bc = BoundaryCondition.neumann(), mixed_inner(params)

    target_idx = _target_indices(params, which, n)
    if target_idx.max() >= string.size:
        raise DomainError(f"level={level} слишком мал для {rows} строк")

    base = eigenvalues(assemble_pencil(string, base_bc), n, rel_tol, settings)
    target = eigenvalues(assemble_pencil(string, target_bc), target_idx, rel_tol, settings)
    return [
        {"n": int(k), "base": float(x), "scaled": float(params.scale * x), "target": float(y)}
        for k, x, y in zip(n, base, target)
    ]
