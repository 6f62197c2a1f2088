from __future__ import annotations

import pytest

from qualtime_tools.defaults import Limits
from qualtime_tools.errors import InvalidInstanceError, SizeLimitExceeded
from qualtime_tools.oracle import enumerate_partial_orders
from qualtime_tools.order import PartialOrder, make_partial_order
from qualtime_tools.width import (
    WaistDecomposition,
    effective_width_at_most,
    effective_width_certificate_check,
    find_waist_decomposition,
)


def test_chain_has_width_one(chain3: PartialOrder) -> None:
    certificate = find_waist_decomposition(chain3, 1)
    assert certificate is not None
    assert effective_width_certificate_check(chain3, 1, certificate)


@pytest.mark.parametrize("size", [2, 3, 4])
def test_antichain_needs_two_blocks(size: int) -> None:
    order = make_partial_order(range(size))
    assert not effective_width_at_most(order, 1)
    certificate = find_waist_decomposition(order, 2)
    assert certificate is not None
    assert effective_width_certificate_check(order, 2, certificate)


def test_small_orders_are_leaves() -> None:
    for size in (0, 1):
        order = make_partial_order(range(size))
        certificate = find_waist_decomposition(order, 1)
        assert certificate is not None and certificate.is_leaf
        assert certificate.depth() == 1


def test_diamond_has_width_two() -> None:
    order = make_partial_order("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    assert not effective_width_at_most(order, 1)
    assert effective_width_at_most(order, 2)


def test_certificate_with_misplaced_lower_element() -> None:
    order = make_partial_order([0, 1, 2], [(0, 1)])
    bad = WaistDecomposition(
        (0, 1, 2),
        waist=((1,),),
        lower=(0, 2),
        children=(WaistDecomposition((1,)), WaistDecomposition((0, 2))),
    )
    assert not effective_width_certificate_check(order, 2, bad)


def test_certificate_with_too_many_blocks() -> None:
    order = make_partial_order(range(3))
    certificate = WaistDecomposition(
        (0, 1, 2),
        waist=((0,), (1,), (2,)),
        children=tuple(WaistDecomposition((x,)) for x in range(3)),
    )
    assert effective_width_certificate_check(order, 3, certificate)
    assert not effective_width_certificate_check(order, 2, certificate)


def test_certificate_with_single_part_is_rejected() -> None:
    order = make_partial_order(range(2))
    certificate = WaistDecomposition(
        (0, 1), waist=((0, 1),), children=(WaistDecomposition((0, 1)),)
    )
    assert not effective_width_certificate_check(order, 2, certificate)


def test_lower_and_upper_must_be_separated_by_a_block() -> None:
    order = make_partial_order(["l", "w1", "w2", "u"], [("l", "w1"), ("w2", "u"), ("l", "u")])
    certificate = WaistDecomposition(
        ("l", "w1", "w2", "u"),
        waist=(("w1",), ("w2",)),
        lower=("l",),
        upper=("u",),
        children=tuple(WaistDecomposition((x,)) for x in ("w1", "w2", "l", "u")),
    )
    assert not effective_width_certificate_check(order, 2, certificate)
    assert effective_width_at_most(order, 2)


def test_size_cap() -> None:
    order = make_partial_order(range(9))
    with pytest.raises(SizeLimitExceeded):
        effective_width_at_most(order, 2)
    assert effective_width_at_most(make_partial_order(range(3)), 2, Limits(width_elements=3))


def test_width_parameter_must_be_positive(chain3: PartialOrder) -> None:
    with pytest.raises(InvalidInstanceError):
        effective_width_at_most(chain3, 0)


def test_width_is_monotone_on_small_orders() -> None:
    for size in range(5):
        for order in enumerate_partial_orders(size):
            results = [effective_width_at_most(order, k) for k in (1, 2, 3)]
            assert results == sorted(results)
            assert results[-1] or size > 3
