from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gck.errors import EmptyPlacesAbove
from gck.sha_parity import SquareClass, make_place, mu_place, sha_two_class

components = st.lists(
    st.tuples(st.text("YZ", min_size=1, max_size=2), st.lists(st.tuples(st.sampled_from("uvw"), st.booleans()), min_size=1, max_size=4)),
    min_size=1,
    max_size=4,
)


def test_square_class_group_law():
    one, two = SquareClass(1), SquareClass(2)
    assert one * one == one and two * two == one and one * two == two
    assert int(SquareClass.from_exponent(5)) == 2
    with pytest.raises(ValueError):
        SquareClass(4)


def test_one_deficient_place():
    d = make_place("v", [("Y1", [("w1", True), ("w2", False)]), ("Y2", [("w1", False)])])
    assert mu_place(d) == SquareClass(2)
    assert sha_two_class([d]) == SquareClass(2)


def test_two_deficient_places_cancel():
    d = make_place("v", [("Y1", [("w1", True)]), ("Y2", [("w1", True)])])
    e = make_place("p", [("Y1", [("w1", True)])])
    assert mu_place(d) == SquareClass(1)
    assert sha_two_class([d, e]) == SquareClass(2)


def test_empty_inputs():
    assert sha_two_class([]) == SquareClass(1)
    with pytest.raises(EmptyPlacesAbove) as info:
        mu_place(make_place("v", [("Y1", [])]))
    assert info.value.details["component"] == "Y1"


@given(components)
def test_parity_of_deficient_count(comps):
    d = make_place("v", comps)
    count = sum(flag for _, above in comps for _, flag in above)
    assert int(mu_place(d)) == (2 if count % 2 else 1)


@given(components, st.integers(0, 4))
def test_splitting_is_multiplicative(comps, at):
    d = make_place("v", comps)
    a, b = d.split(min(at, len(comps)))
    pieces = [p for p in (a, b) if p.components]
    assert sha_two_class(pieces) == mu_place(d)


@given(st.lists(components, max_size=5))
def test_order_of_places_is_irrelevant(places):
    ds = [make_place(f"v{i}", c) for i, c in enumerate(places)]
    assert sha_two_class(ds) == sha_two_class(list(reversed(ds)))
