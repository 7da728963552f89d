"""Assembly of the packet attached to a tame regular discrete parameter.

Each member corresponds to one embedding choice, i.e. one class of scalars
per elemental factor. For every member we record the inner form it lives on,
the fixed vertex, the reduction of the vertex stabilizer, the residue-field
torus and the degree of the resulting Deligne-Lusztig representation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import prod
from typing import Sequence

from .algebra import classical_group_order
from .building import ReductionType, VertexLattice, fixed_vertex, reduction_type
from .errors import ConsistencyError, DomainError
from .hermitian import (
    EmbeddingChoice,
    FieldParams,
    classify_space,
    disc_of_embedding,
    embedding_choices,
    is_quasi_split_embedding,
)
from .lparam import (
    CharacterData,
    TameParameter,
    character_data,
    compute_A_phi,
    is_general_position,
    validate,
)
from .tori import ElementalDecomposition, elemental_decomposition, tbar_orders

__all__ = [
    "Constituent",
    "PacketMember",
    "PacketDescriptor",
    "build_member",
    "enumerate_members",
    "dl_degree",
    "select_constituent",
    "label_members",
]


@dataclass(frozen=True)
class Constituent:
    """One of the two extensions to the full stabilizer; ``z_value`` is its
    value on the nontrivial central element."""

    z_value: int
    selected: bool


@dataclass(frozen=True)
class PacketMember:
    choice: EmbeddingChoice
    inner_form_bit: int
    space: str
    vertex: VertexLattice
    reduction: ReductionType
    tbar: tuple[int, ...]
    dl_degree: int
    central_bit: int | None = None
    constituents: tuple[Constituent, ...] = ()
    label: tuple[int, ...] | None = None

    @property
    def inner_form(self) -> str:
        # Every odd-dimensional unitary group is quasi-split.
        n = self.reduction.l + self.reduction.m_red
        return "quasi_split" if n % 2 or self.inner_form_bit == 0 else "non_quasi_split"

    @property
    def quasi_split(self) -> bool:
        return self.inner_form == "quasi_split"


@dataclass(frozen=True)
class PacketDescriptor:
    parameter: TameParameter | None
    q: int
    decomposition: ElementalDecomposition
    members: tuple[PacketMember, ...]
    character: CharacterData | None = None
    general_position: bool | None = None
    a_phi: tuple[int, ...] = ()
    labels_warning: bool = False

    @property
    def j(self) -> int:
        return self.decomposition.j

    @property
    def size(self) -> int:
        return len(self.members)


def dl_degree(reduction: ReductionType, tbar: Sequence[int], q: int) -> int:
    """p'-part of |Sp_l x SO_m| divided by the order of the torus."""
    sp = classical_group_order("symplectic", reduction.l, q)
    so = classical_group_order("special_orthogonal", reduction.m_red, q, split=reduction.orth_split)
    numerator = sp.p_prime_part * so.p_prime_part
    torus = prod(tbar)
    if torus <= 0 or numerator % torus:
        raise ConsistencyError(
            f"torus of order {torus} does not divide the p'-order {numerator} of {reduction.label}"
        )
    return numerator // torus


def build_member(
    dec: ElementalDecomposition, choice: EmbeddingChoice, q: int
) -> PacketMember:
    fp = FieldParams(q)
    n = dec.n
    red = reduction_type(dec, choice, n)
    tbar = tuple(tbar_orders(dec, q))
    disc = disc_of_embedding(dec, choice, fp)
    space = classify_space(n, disc, fp)
    bit = sum(choice.bits()) % 2
    if n % 2 == 0 and (bit == 0) != is_quasi_split_embedding(choice, n):
        raise ConsistencyError("inner form bit disagrees with quasi-splitness")
    if n % 2 == 0 and space.quasi_split != is_quasi_split_embedding(choice, n):
        raise ConsistencyError("discriminant disagrees with quasi-splitness")
    return PacketMember(
        choice=choice,
        inner_form_bit=bit,
        space=space.label,
        vertex=fixed_vertex(dec, choice),
        reduction=red,
        tbar=tbar,
        dl_degree=dl_degree(red, tbar, q),
    )


def select_constituent(member: PacketMember, cd: CharacterData, n: int) -> PacketMember:
    """For odd n, mark which of the two extensions matches the central bit."""
    if n % 2 == 0:
        return member
    bit = cd.u1_bit or 0
    constituents = tuple(Constituent(z, selected=(z == (-1) ** bit)) for z in (1, -1))
    return replace(member, central_bit=bit, constituents=constituents)


def _mixed_radix(index: int, divisors: Sequence[int]) -> tuple[int, ...]:
    digits = []
    for d in reversed(divisors):
        digits.append(index % d)
        index //= d
    return tuple(reversed(digits))


def label_members(desc: PacketDescriptor, divisors: Sequence[int]) -> PacketDescriptor:
    """Attach characters of A_phi. The all-zero choice gets the trivial
    character; with divisors all equal to 2 a member's label is its bit vector."""
    divisors = tuple(divisors)
    if prod(divisors) != desc.size:
        return replace(
            desc,
            a_phi=divisors,
            labels_warning=True,
            members=tuple(replace(mem, label=None) for mem in desc.members),
        )
    ordered = sorted(desc.members, key=lambda mem: mem.choice.bits())
    if all(d == 2 for d in divisors) and len(divisors) == desc.j:
        labels = {mem.choice: mem.choice.bits() for mem in ordered}
    else:
        labels = {mem.choice: _mixed_radix(i, divisors) for i, mem in enumerate(ordered)}
    members = tuple(replace(mem, label=labels[mem.choice]) for mem in desc.members)
    return replace(desc, a_phi=divisors, labels_warning=False, members=members)


def members_for_decomposition(dec: ElementalDecomposition, q: int) -> tuple[PacketMember, ...]:
    return tuple(build_member(dec, c, q) for c in embedding_choices(dec))


def enumerate_members(P: TameParameter, q: int) -> PacketDescriptor:
    report = validate(P, q)
    if not report.ok:
        raise DomainError("; ".join(report.diagnostics) or "invalid parameter")
    dec = elemental_decomposition(P.n, P.omega)
    cd = character_data(P, q)
    members = tuple(select_constituent(mem, cd, P.n) for mem in members_for_decomposition(dec, q))
    desc = PacketDescriptor(
        parameter=P,
        q=q,
        decomposition=dec,
        members=members,
        character=cd,
        general_position=is_general_position(cd, dec, q),
    )
    return label_members(desc, compute_A_phi(P))
