#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command line interface for Fractal Spectra Toolkit
"""

from .spectra_cli import build_parser, main

__all__ = ['build_parser', 'main']
