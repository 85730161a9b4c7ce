"""
Release Version.

Created on 17 Oct 2026

:author: teampref contributors
:license: BSD 3-Clause
"""

__version__ = "0.1.0"
