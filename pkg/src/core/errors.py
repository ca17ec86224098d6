#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Иерархия исключений
Fractal Spectra Toolkit

Атрибут exit_code каждого класса - код завершения CLI.
"""

from typing import Optional


class SpectraError(Exception):
    """Базовое исключение пакета"""

    exit_code = 1


class DomainError(SpectraError, ValueError):
    """Нарушено предусловие: границы параметров, диапазон индекса, чётность, запас уровня"""

    exit_code = 2


class ResourceError(SpectraError):
    """Запрошенный уровень дискретизации превышает лимит атомов"""

    exit_code = 2


class NumericalError(SpectraError, ArithmeticError):
    """Сбой вычислительной процедуры (исчерпание возмущений, нет сходимости)"""

    exit_code = 3


class MonotonicityError(DomainError):
    """Входные отсчёты не монотонны"""

    exit_code = 4

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index

