#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fractal Spectra Toolkit
Main Package
"""

__version__ = "1.0.0"
__author__ = "Fractal Spectra Team"
__description__ = "Spectral asymptotics of Sturm-Liouville problems with Cantor-type weights"
