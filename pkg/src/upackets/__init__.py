"""Combinatorial L-packet data for tame regular discrete parameters of
ramified p-adic unitary groups."""

from .errors import ConsistencyError, DomainError
from .lparam import TameParameter
from .packets import PacketDescriptor, PacketMember, enumerate_members
from .weyl_signed import SignedPermutation

__all__ = [
    "ConsistencyError",
    "DomainError",
    "PacketDescriptor",
    "PacketMember",
    "SignedPermutation",
    "TameParameter",
    "enumerate_members",
]

__version__ = "0.1.0"
