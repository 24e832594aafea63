"""Countably based spaces with decidable base relations, and the space zoo."""

from ..errors import ConfigError
from .base import (BaseElement, Point, PointedOpen, Space, WPointStrategy, default_fuel,
                   gruenhage_w_strategy)
from .finite import FiniteSpace, all_topologies, finite_space
from .oracles import (DenseOpenOracle, PunctureOracle, dense_refine, puncture_schedule,
                      whole_schedule)
from .rationals import Rationals, rational_enumeration
from .remark import RemarkSpace
from .sequences import BaireSpace, CantorSpace

ZOO_NAMES = ("rationals", "baire-omega", "cantor", "finite:<lattice-spec>", "remark-qd:<n>")


def space_from_name(name: str) -> Space:
    """Look up a zoo space by its name string."""
    name = name.strip()
    if name == "rationals":
        return Rationals()
    if name == "baire-omega":
        return BaireSpace()
    if name == "cantor":
        return CantorSpace()
    if name.startswith("finite:"):
        return finite_space(name[len("finite:"):])
    if name.startswith("remark-qd:"):
        try:
            n = int(name[len("remark-qd:"):])
        except ValueError as exc:
            raise ConfigError(f"bad surrogate bound in {name!r}") from exc
        return RemarkSpace(n)
    raise ConfigError(f"unknown space {name!r}; zoo: {', '.join(ZOO_NAMES)}")


def contains(space: Space, inner: BaseElement, outer: BaseElement) -> bool:
    return space.contains(inner, outer)


def pick_point(space: Space, U: BaseElement):
    return space.pick_point(U)


def refine(space: Space, x, V: BaseElement, step: int) -> BaseElement:
    return space.refine(x, V, step)


def neighborhood_base(space: Space, x):
    return space.neighborhood_base(x)


__all__ = [
    "BaseElement", "Point", "PointedOpen", "Space", "WPointStrategy", "default_fuel",
    "gruenhage_w_strategy", "FiniteSpace", "all_topologies", "finite_space",
    "DenseOpenOracle", "PunctureOracle", "dense_refine", "puncture_schedule", "whole_schedule",
    "Rationals", "rational_enumeration", "RemarkSpace", "BaireSpace", "CantorSpace",
    "ZOO_NAMES", "space_from_name", "contains", "pick_point", "refine", "neighborhood_base",
]
