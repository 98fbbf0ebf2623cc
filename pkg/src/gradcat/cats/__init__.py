"""The concrete graduated categories."""

from gradcat.cats.base import CatMorphism, CatObject, Category, GradeReport, MorphismFlags
from gradcat.cats.boolean import BoolCat
from gradcat.cats.concrete import MSetCat, PointedSetCat, PosCat, RelCat, SetCat
from gradcat.cats.vec import VecCat

# cyclic group of order 2 and the two-element idempotent monoid {1, e}
Z2 = ((0, 1), (1, 0))
IDEMPOTENT = ((0, 1), (1, 1))


def default_instances() -> list[Category]:
    """One representative of each of the seven instance families."""
    return [SetCat(), PointedSetCat(), PosCat(), BoolCat(), VecCat(2), MSetCat(Z2), RelCat((2,))]


__all__ = [
    "BoolCat", "CatMorphism", "CatObject", "Category", "GradeReport", "IDEMPOTENT",
    "MSetCat", "MorphismFlags", "PointedSetCat", "PosCat", "RelCat", "SetCat", "VecCat", "Z2",
    "default_instances",
]
