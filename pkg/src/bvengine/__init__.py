"""Finite Chu-construction engine over profunctors and Tambara modules."""
from __future__ import annotations

__version__ = "0.1.0"
