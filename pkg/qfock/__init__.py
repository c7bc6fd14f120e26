# coding: utf-8
"""
Exact symbolic computation on q-deformed Fock spaces built from perfect
crystals of level l.
"""
__version__ = '0.1.0'
