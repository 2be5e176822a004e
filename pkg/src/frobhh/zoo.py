"""Named test algebras, addressable from the CLI as ``zoo:<name>``."""

from __future__ import annotations

from .algebra import AlgebraPresentation, finite_field_algebra, truncated_poly
from .fq import field_make

_BUILDERS = {
    "f2_x2": lambda: truncated_poly(field_make(2), [2]),
    "f2_x4": lambda: truncated_poly(field_make(2), [4]),
    "f3_x3": lambda: truncated_poly(field_make(3), [3]),
    "f2_xy": lambda: truncated_poly(field_make(2), [2, 2]),
    "f4": lambda: finite_field_algebra(2, 2),
    "f8": lambda: finite_field_algebra(2, 3),
    "f9": lambda: finite_field_algebra(3, 2),
    "f4_x2": lambda: truncated_poly(field_make(2, 2), [2]),
    # algebras over larger fields of scalars
    "f8_x2": lambda: truncated_poly(field_make(2, 3), [2]),
    "f9_x2": lambda: truncated_poly(field_make(3, 2), [2]),
    "f4_x3": lambda: truncated_poly(field_make(2, 2), [3]),
}

# the eight algebras of the vanishing suite
CORE = ("f2_x2", "f2_x4", "f3_x3", "f2_xy", "f4", "f8", "f9", "f4_x2")


def zoo_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def zoo_algebra(name: str) -> AlgebraPresentation:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown zoo algebra {name!r}; known: {', '.join(_BUILDERS)}") from None


def zoo(names=None) -> list[AlgebraPresentation]:
    return [zoo_algebra(n) for n in (names or _BUILDERS)]


def over_field(card: int, names=None) -> list[AlgebraPresentation]:
    """Zoo algebras whose scalars contain F_card (subfield containment by card power)."""
    out = []
    for a in zoo(names):
        big, small = a.scalar_card, card
        # F_small is a subfield of F_big iff big is a power of small's degree multiple
        if big % a.p == 0 and _is_subfield(small, big):
            out.append(a)
    return out


def _is_subfield(small: int, big: int) -> bool:
    if small == big:
        return True
    p = min(f for f in range(2, small + 1) if small % f == 0)
    e_small, e_big, s, b = 0, 0, small, big
    while s % p == 0:
        s //= p
        e_small += 1
    while b % p == 0:
        b //= p
        e_big += 1
    return s == 1 and b == 1 and e_big % e_small == 0
