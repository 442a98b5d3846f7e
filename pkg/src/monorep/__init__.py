"""Modular representation invariants of finite monoids."""

__version__ = "0.1.0"

from .monoid import FiniteMonoid, MonoidError, from_table  # noqa: E402
from .builders import builtin  # noqa: E402
from .characters import MonoidContext  # noqa: E402

__all__ = ["FiniteMonoid", "MonoidError", "MonoidContext", "builtin", "from_table", "__version__"]
