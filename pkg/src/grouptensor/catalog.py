"""Built-in presentations used as a fixed test corpus.

Cyclic groups Z1..Z16, the Klein four-group, D4, Q8, S3, A4, and A5,
each given by a short standard presentation, plus the braid group B3
with a generating set for its pure braid subgroup (index 6, the kernel
of the map onto S3).  B3 is infinite and therefore kept out of the
finite catalog proper.
"""

from __future__ import annotations

from functools import lru_cache

from .fp import FiniteGroupRealization, FpPresentation, parse_presentation, parse_word, realize

__all__ = [
    "CATALOG",
    "CATALOG_ORDERS",
    "catalog_names",
    "catalog_presentation",
    "catalog_group",
    "braid3_presentation",
    "pure_braid3_words",
]

CATALOG = {
    **{f"Z{n}": f"< a | a^{n} >" for n in range(1, 17)},
    "Z2xZ2": "< a, b | a^2, b^2, a b a^-1 b^-1 >",
    "D4": "< r, s | r^4, s^2, (r s)^2 >",
    "Q8": "< a, b | a^4, a^2 b^-2, b^-1 a b a >",
    "S3": "< a, b | a^2, b^2, (a b)^3 >",
    "A4": "< a, b | a^2, b^3, (a b)^3 >",
    "A5": "< a, b | a^2, b^3, (a b)^5 >",
}

CATALOG_ORDERS = {
    **{f"Z{n}": n for n in range(1, 17)},
    "Z2xZ2": 4,
    "D4": 8,
    "Q8": 8,
    "S3": 6,
    "A4": 12,
    "A5": 60,
}


def catalog_names() -> tuple:
    return tuple(CATALOG)


def _canonical(name: str) -> str:
    for key in CATALOG:
        if key.lower() == name.lower():
            return key
    raise KeyError(f"unknown catalog group {name!r} (choices: {', '.join(CATALOG)})")


def catalog_presentation(name: str) -> FpPresentation:
    """Look up a presentation by (case-insensitive) catalog name.

    >>> catalog_presentation("s3").generator_names
    ('a', 'b')
    """
    return parse_presentation(CATALOG[_canonical(name)])


@lru_cache(maxsize=None)
def _realize_canonical(key: str) -> FiniteGroupRealization:
    return realize(parse_presentation(CATALOG[key]))


def catalog_group(name: str) -> FiniteGroupRealization:
    """Realize a catalog group (cached; realizations are immutable).

    >>> catalog_group("Q8").order
    8
    """
    return _realize_canonical(_canonical(name))


def braid3_presentation() -> FpPresentation:
    return parse_presentation("< s1, s2 | s1 s2 s1 (s2 s1 s2)^-1 >")


def pure_braid3_words() -> tuple:
    """Generators of the pure braid subgroup of B3 (index 6)."""
    p = braid3_presentation()
    return tuple(
        parse_word(t, p.generator_names) for t in ("s1^2", "s2^2", "s2 s1^2 s2^-1")
    )
