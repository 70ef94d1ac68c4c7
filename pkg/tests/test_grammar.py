import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagtc.flag_ring import FlagRing
from flagtc.grammar import (
    SpecSyntaxError,
    format_free_factors,
    format_space,
    format_zd_spec,
    parse_free_factors,
    parse_space,
    parse_zd_spec,
)
from flagtc.surface_ring import SurfaceRing
from flagtc.tensor_ring import ZDProductSpec


@pytest.mark.parametrize("text,k,m", [
    ("F(1^3,6)", 3, 6), ("F(1^4)", 4, 1), ("F(1,1,3)", 2, 3), ("F(1,2)", 1, 2), ("F5", 4, 1),
    ("F_6", 5, 1), (" F( 1 ^ 2 , 4 ) ", 2, 4),
])
def test_flag_names(text, k, m):
    assert parse_space(text) == FlagRing(k, m)


def test_surface_name():
    assert parse_space("N(3)") == SurfaceRing(3)


@pytest.mark.parametrize("text", ["F(2,1)", "G(2)", "F(1^0,2)", "N(0)", "F1", ""])
def test_bad_names(text):
    with pytest.raises(ValueError):
        parse_space(text)


@pytest.mark.parametrize("k,m", [(1, 1), (2, 5), (4, 1)])
def test_space_round_trip(k, m):
    ring = FlagRing(k, m)
    assert parse_space(format_space(ring)) == ring
    assert parse_space("N(4)").name == "N(4)"


def test_grouped_powers_expand():
    assert parse_zd_spec("(z1*z2*z3)^7*z4^6") == ZDProductSpec.from_groups({2: (7, 7, 7, 6)})
    assert parse_zd_spec("(z[2,1] z[3,1])^2 z[2,1]") == ZDProductSpec(((2, 1, 3), (3, 1, 2)))
    assert parse_zd_spec("c[2,1]^3*c[3,1]^3") == ZDProductSpec(((2, 1, 3), (3, 1, 3)))
    assert parse_zd_spec("1") == ZDProductSpec()
    assert parse_zd_spec("((z1)^2)^3") == ZDProductSpec(((2, 1, 6),))


@pytest.mark.parametrize("text,column", [("z[2,1]^^3", 8), ("z[1,1]", 1), ("z[2,1]*", 8), ("q", 1),
                                         ("(z1", 4)])
def test_spec_errors_report_column(text, column):
    with pytest.raises(SpecSyntaxError) as err:
        parse_zd_spec(text)
    assert err.value.column + 1 == column
    assert "line 1" in str(err.value)


def test_surface_formatting():
    spec = parse_zd_spec("c[2,1]^3")
    assert format_zd_spec(spec, SurfaceRing(2)) == "c[2,1]^3"
    assert format_zd_spec(spec, FlagRing(1, 2)) == "z[2,1]^3"


def test_free_factors():
    assert parse_free_factors("z[3,1], z[3,2]") == [(3, 1), (3, 2)]
    assert format_free_factors([(3, 1), (3, 2)]) == "z[3,1],z[3,2]"
    for bad in ("", "z[3,1],,z[3,2]", "z3"):
        with pytest.raises(SpecSyntaxError):
            parse_free_factors(bad)


factor = st.tuples(st.integers(2, 5), st.integers(1, 4), st.integers(1, 20))


@given(st.lists(factor, max_size=8))
@settings(max_examples=150, deadline=None)
def test_spec_round_trip(factors):
    spec = ZDProductSpec(tuple(factors))
    text = spec.format()
    assert parse_zd_spec(text) == spec
    assert parse_zd_spec(text).format() == text
    assert parse_zd_spec(spec.format("c")) == spec


@given(st.lists(st.tuples(st.integers(2, 9), st.integers(1, 9)), min_size=1, max_size=6, unique=True))
@settings(max_examples=80, deadline=None)
def test_free_factor_round_trip(free):
    assert parse_free_factors(format_free_factors(free)) == free
