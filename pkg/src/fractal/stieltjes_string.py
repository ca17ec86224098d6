#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Струна Стилтьеса поколения m и конечномерный пучок (A, M).

Мера μ = dP заменяется κ^m атомами массы κ^{-m} в серединах интервалов
копий поколения m. Для дискретной меры собственные функции кусочно-линейны
между атомами, поэтому ограничение квадратичной формы задачи на непрерывные
кусочно-линейные функции с изломами в атомах даёт точный пучок.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.core.config_manager import DEFAULT_CONFIG
from src.core.errors import DomainError, ResourceError
from src.fractal.selfsimilar import CantorParams, copy_interval_starts

MAX_ATOMS = DEFAULT_CONFIG["solver"]["max_atoms"]


class BCKind(str, Enum):
    """Тип граничных условий"""
    DIRICHLET = "dirichlet"
    ROBIN = "robin"


@dataclass(frozen=True)
class BoundaryCondition:
    """
    Граничные условия y'(0) = γ0 y(0), y'(1) = -γ1 y(1) либо y(0) = y(1) = 0

    Robin с γ0 = γ1 = 0 - задача Неймана.
    """
    kind: BCKind = BCKind.ROBIN
    gamma0: float = 0.0
    gamma1: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", BCKind(self.kind))
        for name in ("gamma0", "gamma1"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise DomainError(f"{name} должно быть конечным и ≥ 0, получено {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def neumann(cls) -> "BoundaryCondition":
        return cls(BCKind.ROBIN, 0.0, 0.0)

    @classmethod
    def dirichlet(cls) -> "BoundaryCondition":
        return cls(BCKind.DIRICHLET, 0.0, 0.0)

    @classmethod
    def robin(cls, gamma0: float, gamma1: float) -> "BoundaryCondition":
        return cls(BCKind.ROBIN, gamma0, gamma1)

    @property
    def is_dirichlet(self) -> bool:
        return self.kind is BCKind.DIRICHLET

    @property
    def is_neumann(self) -> bool:
        return self.kind is BCKind.ROBIN and self.gamma0 == 0.0 and self.gamma1 == 0.0

    def swapped(self) -> "BoundaryCondition":
        """Условия для отражённой задачи x ↦ 1 - x"""
        return BoundaryCondition(self.kind, self.gamma1, self.gamma0)

    def label(self) -> str:
        if self.is_dirichlet:
            return "dirichlet"
        if self.is_neumann:
            return "neumann"
        return f"robin({self.gamma0:g},{self.gamma1:g})"


@dataclass(frozen=True, eq=False)
class StieltjesString:
    """Дискретная мера поколения level: позиции и массы атомов"""
    params: CantorParams
    level: int
    positions: np.ndarray
    masses: np.ndarray

    @property
    def size(self) -> int:
        return int(self.positions.size)

    def reflected(self) -> "StieltjesString":
        """Струна после замены x ↦ 1 - x"""
        return StieltjesString(
            params=self.params,
            level=self.level,
            positions=(1.0 - self.positions)[::-1].copy(),
            masses=self.masses[::-1].copy(),
        )


@dataclass(frozen=True, eq=False)
class Pencil:
    """
    Пучок A - λM: A симметричная трёхдиагональная, M диагональная

    Для Робена узлы {0} ∪ атомы ∪ {1}, массы в концах нулевые; для Дирихле
    граничные узлы исключены. atom_diag/atom_offdiag - та же форма на атомах
    после точного исключения безмассовых концов (None, если концов нет).
    """
    diag: np.ndarray
    offdiag: np.ndarray
    massdiag: np.ndarray
    node_positions: np.ndarray
    bc: BoundaryCondition = field(default_factory=BoundaryCondition.neumann)
    atom_diag: Optional[np.ndarray] = None
    atom_offdiag: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return int(self.diag.size)

    @property
    def n_eigen(self) -> int:
        """Число конечных собственных значений (равно числу атомов)"""
        return int(np.count_nonzero(self.massdiag > 0.0))

    def condensed(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        (diag, offdiag, massdiag) на атомах для счёта инерции

        Исключённый конец даёт ведущий элемент 1/g + γ > 0 при любом λ,
        так что число отрицательных ведущих элементов не меняется.
        """
        if self.atom_diag is None:
            return self.diag, self.offdiag, self.massdiag
        return self.atom_diag, self.atom_offdiag, self.massdiag[1:-1]

    def dense(self):
        """Плотные матрицы (A, M) для проверки оракулом"""
        a_mat = np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return a_mat, np.diag(self.massdiag)


def build_string(params: CantorParams, level: int, max_atoms: int = MAX_ATOMS) -> StieltjesString:
    """
    Струна поколения level

    Args:
        params: Параметры самоподобной функции
        level: Номер поколения m ≥ 0
        max_atoms: Предел κ^level

    Returns:
        κ^level атомов массы κ^{-level} в серединах интервалов копий

    Raises:
        DomainError: level < 0
        ResourceError: κ^level > max_atoms
    """
    if level < 0:
        raise DomainError(f"level должно быть ≥ 0, получено {level}")
    n_atoms = params.kappa ** level
    if n_atoms > max_atoms:
        raise ResourceError(
            f"level={level} даёт {n_atoms} атомов при пределе {max_atoms}"
        )

    starts = copy_interval_starts(params, level)
    positions = starts + 0.5 * params.a ** level
    masses = np.full(n_atoms, float(params.kappa) ** -level)
    logger.debug(f"Струна: κ={params.kappa}, level={level}, атомов {n_atoms}")
    return StieltjesString(params=params, level=level, positions=positions, masses=masses)


def assemble_pencil(string: StieltjesString, bc: BoundaryCondition) -> Pencil:
    """
    Сборка пучка (A, M) для заданных граничных условий

    Args:
        string: Струна
        bc: Граничные условия

    Returns:
        Pencil; его конечные собственные значения совпадают со спектром
        граничной задачи для дискретной меры
    """
    nodes = np.concatenate(([0.0], string.positions, [1.0]))
    gaps = np.diff(nodes)
    if np.any(gaps <= 0.0):
        raise DomainError("атомы струны должны строго возрастать внутри (0, 1)")
    inv = 1.0 / gaps

    diag = np.empty(nodes.size)
    diag[0] = inv[0]
    diag[-1] = inv[-1]
    diag[1:-1] = inv[:-1] + inv[1:]
    offdiag = -inv
    massdiag = np.concatenate(([0.0], string.masses, [0.0]))

    if bc.is_dirichlet:
        # Граничные узлы исключаются (y = 0)
        return Pencil(
            diag=diag[1:-1].copy(),
            offdiag=offdiag[1:-1].copy(),
            massdiag=massdiag[1:-1].copy(),
            node_positions=nodes[1:-1].copy(),
            bc=bc,
        )

    # Шур-дополнение конца: 1/g - 1/(g(1 + γg)) = γ/(1 + γg), без вычитания больших 1/g
    left = inv[:-1].copy()
    left[0] = bc.gamma0 / (1.0 + bc.gamma0 * gaps[0])
    right = inv[1:].copy()
    right[-1] = bc.gamma1 / (1.0 + bc.gamma1 * gaps[-1])

    diag[0] += bc.gamma0
    diag[-1] += bc.gamma1
    return Pencil(
        diag=diag,
        offdiag=offdiag,
        massdiag=massdiag,
        node_positions=nodes,
        bc=bc,
        atom_diag=left + right,
        atom_offdiag=offdiag[1:-1].copy(),
    )
