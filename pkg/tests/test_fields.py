from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wildmatroid.fields import GF, QQ, Residue, field_by_name, nullspace, rank

F3 = GF(3)


def test_rationals_parse_and_format_canonically():
    assert QQ.parse("6/4") == Fraction(3, 2)
    assert QQ.format(Fraction(-3, 2)) == "-3/2"
    assert QQ.format(QQ(2)) == "2/1"


def test_prime_field_arithmetic():
    a, b = F3(2), F3(5)
    assert a == b and a + b == F3(1) and a * b == F3(1)
    assert F3.parse("1/2") == F3(2)
    assert F3.format(F3(-1)) == "2/1"
    with pytest.raises(ZeroDivisionError):
        F3(1) / F3(3)


def test_field_lookup():
    assert field_by_name("QQ") is QQ
    assert field_by_name("GF(3)").p == 3
    with pytest.raises(ValueError):
        field_by_name("GF(4)")


def test_rank_and_nullspace():
    rows = [[1, -1, 0], [0, 1, -1], [-1, 0, 1]]
    assert rank([[QQ(x) for x in r] for r in rows]) == 2
    (v,) = nullspace([[QQ(x) for x in r] for r in rows], 3)
    assert all(sum(QQ(r[j]) * v[j] for j in range(3)) == 0 for r in rows)
    assert rank([[F3(1), F3(1)], [F3(2), F3(2)]], F3) == 1


small = st.integers(-20, 20)


@given(small, small, small)
def test_residues_form_a_field(a, b, c):
    x, y, z = F3(a), F3(b), F3(c)
    assert (x + y) * z == x * z + y * z
    assert x - x == F3.zero
    if y:
        assert (x / y) * y == x
    assert isinstance(x, Residue)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_nullity(rows):
    m = [[QQ(x) for x in r] for r in rows]
    basis = nullspace(m, 4)
    assert rank(m) + len(basis) == 4
    for v in basis:
        for r in m:
            assert sum(r[j] * v[j] for j in range(4)) == 0
