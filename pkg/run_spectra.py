#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fractal Spectra CLI Launcher
"""

import os
import sys

# Добавляем корень проекта для импорта src.*
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli.spectra_cli import main

if __name__ == '__main__':
    sys.exit(main())
