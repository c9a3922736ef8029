from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcg.catalog import BUILTIN_DESCRIPTORS, builtin_descriptors, builtin_groups
from gcg.errors import DescriptorError
from gcg.groups import (
    bits,
    check_group_axioms,
    descriptor_order,
    format_descriptor,
    make_generalized_dihedral,
    make_group,
    mask_of,
    parse_descriptor,
    product_group,
    subgroup_closure,
    subgroup_handle,
)


def test_parse_format_roundtrip():
    for name in ("Z1", "Z12", "D8", "A4", "Z2xZ2xZ3", "Z4xZ6"):
        assert format_descriptor(parse_descriptor(name)) == name


def test_parse_rejects_junk():
    for bad in ("", "Z0", "D3", "Q8", "Z2x", "xZ2", "Z-4"):
        with pytest.raises(DescriptorError):
            parse_descriptor(bad)


def test_descriptor_order():
    assert descriptor_order(parse_descriptor("Z6")) == 6
    assert descriptor_order(parse_descriptor("D8")) == 8
    assert descriptor_order(parse_descriptor("Z2xZ2xZ3")) == 12
    assert descriptor_order(parse_descriptor("A4")) == 12


def test_every_builtin_satisfies_group_axioms(caps):
    for g in builtin_groups(24, caps):
        check_group_axioms(g.mul, g.order)
        assert g.order == len(g.mul)
        assert g.element_orders[0] == 1


def test_cyclic_group_tables(caps):
    g = make_group("Z6", caps)
    assert g.abelian
    assert g.mul[2][5] == 1
    assert g.inv[1] == 5
    assert sorted(g.element_orders) == [1, 2, 3, 3, 6, 6]


def test_dihedral_group_tables(caps):
    g = make_group("D6", caps)
    assert not g.abelian
    assert g.order == 6
    # reflections are the elements p..2p-1 and square to the identity
    assert all(g.mul[i][i] == 0 for i in range(3, 6))
    assert sorted(g.element_orders) == [1, 2, 2, 2, 3, 3]


def test_product_group_row_major(caps):
    a = make_group("Z2", caps)
    b = make_group("Z3", caps)
    g = product_group(a, b)
    # element (i, j) has id i*3 + j
    assert g.order == 6
    assert g.mul[1 * 3 + 2][0 * 3 + 2] == 1 * 3 + (2 + 2) % 3
    assert g.abelian


def test_generalized_dihedral_relation(caps):
    inner = make_group("Z5", caps)
    g = make_generalized_dihedral(inner)
    check_group_axioms(g.mul, g.order)
    assert g.order == 10
    m = inner.order
    # every flip element inverts the inner part: (1,x)(1,y) = (0, -x + y)
    for x in range(m):
        for y in range(m):
            assert g.mul[m + x][m + y] == inner.mul[inner.inv[x]][y]


def test_alt4_is_nonabelian_order_12(caps):
    g = make_group("A4", caps)
    check_group_axioms(g.mul, g.order)
    assert g.order == 12
    assert not g.abelian
    assert sorted(g.element_orders) == [1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3]


def test_catalog_sorted_and_complete(caps):
    names = builtin_descriptors(24)
    orders = [descriptor_order(parse_descriptor(n)) for n in names]
    assert orders == sorted(orders)
    assert len(set(names)) == len(names)
    assert set(builtin_descriptors(8)) <= set(names)
    # every abelian group of order <= 8 appears in some presentation
    for want in ("Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8",
                 "Z2xZ4", "Z2xZ2xZ2"):
        assert want in names


def test_mask_helpers():
    assert mask_of([0, 2, 5]) == 0b100101
    assert list(bits(0b100101)) == [0, 2, 5]


def test_subgroup_closure_and_handle(caps):
    g = make_group("Z12", caps)
    mask = subgroup_closure(g, [4])
    assert sorted(bits(mask)) == [0, 4, 8]
    handle = subgroup_handle(g, mask)
    assert len(handle) == 3
    assert len(handle.cosets()) == 4


@settings(max_examples=30, deadline=None)
@given(name=st.sampled_from([n for n in BUILTIN_DESCRIPTORS
                             if descriptor_order(parse_descriptor(n)) <= 16]))
def test_inverse_table_is_involutive(name, caps):
    g = make_group(name, caps)
    for x in range(g.order):
        assert g.mul[x][g.inv[x]] == 0
        assert g.inv[g.inv[x]] == x
