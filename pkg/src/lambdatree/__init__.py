"""Groups of infinite words over Z^n and their universal Λ-trees."""

from .ordered_group import LambdaElem
from .words import Letter, Word

__all__ = ["LambdaElem", "Letter", "Word"]
