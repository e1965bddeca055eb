"""Exact census of dominant regions in Catalan-type hyperplane arrangements
for the noncrystallographic root systems H3, H4 and I2(m)."""

from .classifier import (
    ClassificationReport,
    catalan_numbers,
    classify_all,
    classify_system,
    sweep_ratio,
)
from .rootposet import RootPoset
from .rootsystem import RootSystem, SystemSpec, build, parse_spec

__all__ = [
    "ClassificationReport",
    "RootPoset",
    "RootSystem",
    "SystemSpec",
    "build",
    "catalan_numbers",
    "classify_all",
    "classify_system",
    "parse_spec",
    "sweep_ratio",
]

__version__ = "0.1.0"
