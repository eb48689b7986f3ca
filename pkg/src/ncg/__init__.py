"""Exact noncommutative differential geometry for finite-dimensional *-algebras."""

from .field import QQ, QQI, GaussianRational
from .algebra import Algebra, Involution, PreconditionError, UnsupportedOperation

__all__ = ["QQ", "QQI", "GaussianRational", "Algebra", "Involution", "PreconditionError", "UnsupportedOperation"]
