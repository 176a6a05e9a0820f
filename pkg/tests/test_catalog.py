import numpy as np
import pytest

from grouptensor.abelian import parse_abelian
from grouptensor.catalog import (
    CATALOG,
    CATALOG_ORDERS,
    braid3_presentation,
    catalog_group,
    catalog_names,
    catalog_presentation,
    pure_braid3_words,
)
from grouptensor.fp import coset_enumerate

KNOWN_ABELIANIZATIONS = {
    "Z2xZ2": "Z_2 x Z_2",
    "D4": "Z_2 x Z_2",
    "Q8": "Z_2 x Z_2",
    "S3": "Z_2",
    "A4": "Z_3",
    "A5": "1",
}


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_orders(name):
    assert catalog_group(name).order == CATALOG_ORDERS[name]


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_strategies_agree(name):
    p = catalog_presentation(name)
    hlt = coset_enumerate(p, strategy="hlt")
    felsch = coset_enumerate(p, strategy="felsch")
    assert np.array_equal(hlt.table, felsch.table)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_abelianizations_two_routes(name):
    p = catalog_presentation(name)
    expected = KNOWN_ABELIANIZATIONS.get(name)
    via_matrix = p.abelianization()
    via_realization = catalog_group(name).abelian_invariants()
    assert via_matrix == via_realization
    if expected is not None:
        assert via_matrix == parse_abelian(expected)
    if name.startswith("Z") and "x" not in name:
        n = CATALOG_ORDERS[name]
        assert via_matrix == parse_abelian("1" if n == 1 else f"Z_{n}")


def test_catalog_lookup():
    assert "A5" in catalog_names()
    assert catalog_presentation("q8") == catalog_presentation("Q8")
    assert catalog_group("s3") is catalog_group("S3")
    with pytest.raises(KeyError):
        catalog_presentation("M11")


def test_pure_braid_index():
    ct = coset_enumerate(braid3_presentation(), pure_braid3_words())
    assert ct.num_cosets == 6
