"""Exact detection and spectral verification of isospectral covers.

Subpackages are imported lazily by the CLI/service; import the specific
module you need (groups, characters, gassmann, wreath, homwide, graphs).
"""
from __future__ import annotations

__version__ = "0.1.0"
