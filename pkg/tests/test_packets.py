from fractions import Fraction as F

import pytest

from oracles import count_orthogonal_2, count_symplectic
from upackets.algebra import classical_group_order
from upackets.building import ReductionType
from upackets.errors import ConsistencyError, DomainError
from upackets.lparam import CharacterData, TameParameter
from upackets.packets import (
    PacketDescriptor,
    dl_degree,
    enumerate_members,
    label_members,
    members_for_decomposition,
    select_constituent,
)
from upackets.tori import elemental_decomposition
from upackets.weyl_signed import conjugacy_classes, coxeter, eta, identity

COXETER_Y = (F(2, 13), F(3, 13))


def _elliptic(m):
    return [c.representative for c in conjugacy_classes(m) if c.elliptic]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_sizes_are_powers_of_two(m):
    for w in _elliptic(m):
        for n in (2 * m, 2 * m + 1):
            dec = elemental_decomposition(n, w)
            members = members_for_decomposition(dec, 3)
            assert len(members) == 2**dec.j
            if n % 2 == 0:
                qs = sum(mem.quasi_split for mem in members)
                assert qs == len(members) // 2
            else:
                assert all(mem.quasi_split for mem in members)


def test_coxeter_packets():
    for n, size in ((4, 2), (5, 4)):
        desc = enumerate_members(TameParameter(n, coxeter(2), COXETER_Y), 5)
        assert desc.size == size
    desc = enumerate_members(TameParameter(4, coxeter(2), COXETER_Y), 5)
    assert {m.inner_form for m in desc.members} == {"quasi_split", "non_quasi_split"}
    assert sorted(m.dl_degree for m in desc.members) == [24, 576]
    assert sorted(m.reduction.label for m in desc.members) == ["O'_4", "Sp_4"]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_extreme_sizes(m):
    sizes = {}
    for w in _elliptic(m):
        sizes[w] = len(members_for_decomposition(elemental_decomposition(2 * m, w), 3))
    assert sizes[coxeter(m)] == 2 == min(sizes.values())
    assert sizes[eta(m)] == 2**m == max(sizes.values())


def test_dl_degree_examples():
    # SO_2^- over F_q has order q + 1; the torus is the whole group
    red = ReductionType(0, 2, False)
    assert dl_degree(red, [4], 3) == 1
    assert dl_degree(ReductionType(2, 0, True, 1), [4], 3) == 2
    # |Sp_4(3)| = 51840 has p'-part 640; two norm-one factors of order 4 leave 40
    assert dl_degree(ReductionType(4, 0, True, 1), [4, 4], 3) == 40
    with pytest.raises(ConsistencyError):
        dl_degree(ReductionType(2, 0, True, 1), [5], 3)


@pytest.mark.parametrize("p", [3, 5])
def test_group_orders_against_brute_force(p):
    assert classical_group_order("symplectic", 2, p).total == count_symplectic(2, p)
    assert classical_group_order("special_orthogonal", 2, p, split=True).total == count_orthogonal_2(p, False, True)
    assert classical_group_order("special_orthogonal", 2, p, split=False).total == count_orthogonal_2(p, True, True)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_degree_integrality(q):
    for m in (1, 2, 3):
        for w in _elliptic(m):
            for n in (2 * m, 2 * m + 1):
                for mem in members_for_decomposition(elemental_decomposition(n, w), q):
                    assert isinstance(mem.dl_degree, int) and mem.dl_degree >= 1


def test_select_constituent():
    dec = elemental_decomposition(5, coxeter(2))
    mem = members_for_decomposition(dec, 5)[0]
    for bit in (0, 1):
        out = select_constituent(mem, CharacterData((4,), (26,), bit), 5)
        assert out.central_bit == bit
        assert [c.z_value for c in out.constituents] == [1, -1]
        assert [c.selected for c in out.constituents] == [bit == 0, bit == 1]
    even = members_for_decomposition(elemental_decomposition(4, coxeter(2)), 5)[0]
    assert select_constituent(even, CharacterData((4,), (26,)), 4) is even


def test_odd_packet_constituents_from_u1():
    for u1 in (0, 1):
        desc = enumerate_members(TameParameter(5, coxeter(2), COXETER_Y, u1), 5)
        for mem in desc.members:
            chosen = [c.z_value for c in mem.constituents if c.selected]
            assert chosen == [(-1) ** u1]


def test_labels():
    desc = enumerate_members(TameParameter(5, coxeter(2), COXETER_Y), 5)
    assert desc.a_phi == (2, 2) and not desc.labels_warning
    assert sorted(m.label for m in desc.members) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert all(m.label == m.choice.bits() for m in desc.members)
    mixed = label_members(desc, (4,))
    assert sorted(m.label for m in mixed.members) == [(0,), (1,), (2,), (3,)]
    bad = label_members(desc, (2,))
    assert bad.labels_warning and all(m.label is None for m in bad.members)


def test_enumerate_rejects_invalid():
    with pytest.raises(DomainError):
        enumerate_members(TameParameter(4, identity(2), COXETER_Y), 5)
    with pytest.raises(DomainError):
        enumerate_members(TameParameter(4, eta(2), (0, 0)), 5)
    with pytest.raises(DomainError):
        enumerate_members(TameParameter(4, coxeter(2), COXETER_Y), 3)


def test_descriptor_shape():
    desc = enumerate_members(TameParameter(4, coxeter(2), COXETER_Y), 5)
    assert isinstance(desc, PacketDescriptor)
    assert desc.j == 1 and desc.general_position is True
    assert desc.character.exponents == (4,)
