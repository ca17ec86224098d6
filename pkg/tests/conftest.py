#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Общие фикстуры тестов
"""

import os

import hypothesis
import numpy as np
import pytest
from loguru import logger

from src.fractal.selfsimilar import make_params
from src.fractal.stieltjes_string import BoundaryCondition, assemble_pencil, build_string

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=10)
hypothesis.settings.register_profile("thorough", max_examples=500)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

ONE_THIRD = 0.3333333333333333


@pytest.fixture(autouse=True)
def quiet_logger():
    """Логи только WARNING и выше, чтобы не засорять вывод pytest"""
    logger.remove()
    logger.add(lambda message: None, level="WARNING")
    yield
    logger.remove()


@pytest.fixture
def cantor():
    """Классическая канторова лестница: κ=2, a=b=1/3"""
    return make_params(2, ONE_THIRD)


@pytest.fixture
def triadic():
    """κ=3, a=b=1/5"""
    return make_params(3, 0.2)


@pytest.fixture
def boundary_conditions():
    """Neumann, Dirichlet, γ=2, γ=6"""
    return {
        "neumann": BoundaryCondition.neumann(),
        "dirichlet": BoundaryCondition.dirichlet(),
        "gamma2": BoundaryCondition.robin(2.0, 2.0),
        "gamma6": BoundaryCondition.robin(6.0, 6.0),
    }


@pytest.fixture
def neumann_pencil(cantor):
    """Фабрика пучков Неймана для канторовой струны заданного поколения"""
    def _make(level):
        return assemble_pencil(build_string(cantor, level), BoundaryCondition.neumann())
    return _make
