"""Symbolic error classes attached to volumes and constants.

A value v with class E stands for v * (1 + E).  Classes are ordered by how
weak the statement is, and combining values keeps the weakest class.
"""
from __future__ import annotations

import enum


class ErrorClass(enum.Enum):
    EXACT = ("exact", 0)
    ONE_OVER_G = ("O(1/g)", 1)
    ONE_OVER_G_TIMES_CP = ("O(1/g)*O(1)^p", 2)
    ONE_OVER_G_QUARTER = ("O(1/g^(1/4))", 3)
    ONE = ("O(1)", 4)
    BOUND_ONLY = ("O(1)^p", 5)

    def __init__(self, label, rank):
        self.label = label
        self.rank = rank

    def __str__(self):
        return self.label

    @property
    def has_interval(self) -> bool:
        return self.rank <= ErrorClass.ONE_OVER_G_QUARTER.rank

    def relative_width(self, g: int, p: int = 1, constant: float = 1.0) -> float:
        """Width of the relative error band for this class at genus g."""
        if self is ErrorClass.EXACT:
            return 0.0
        if self is ErrorClass.ONE_OVER_G:
            return constant / g
        if self is ErrorClass.ONE_OVER_G_TIMES_CP:
            return constant ** p / g
        if self is ErrorClass.ONE_OVER_G_QUARTER:
            return constant / g ** 0.25
        raise ValueError(f"error class {self.label} carries no interval")

    @classmethod
    def from_label(cls, label: str) -> "ErrorClass":
        for e in cls:
            if e.label == label or e.name.lower() == label.lower():
                return e
        raise ValueError(f"unknown error class {label!r}")


def worst(*classes: ErrorClass) -> ErrorClass:
    out = ErrorClass.EXACT
    for c in classes:
        if c.rank > out.rank:
            out = c
    return out
