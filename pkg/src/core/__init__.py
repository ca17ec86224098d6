#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Core modules for Fractal Spectra Toolkit
"""

from .config_manager import ConfigManager, DEFAULT_CONFIG
from .errors import DomainError, MonotonicityError, NumericalError, ResourceError, SpectraError
from .log_helper import build_logger, get_logger

__all__ = [
    'ConfigManager', 'DEFAULT_CONFIG', 'build_logger', 'get_logger',
    'SpectraError', 'DomainError', 'ResourceError', 'NumericalError', 'MonotonicityError',
]
