"""Signed permutations of {±1, ..., ±m}: the hyperoctahedral group B_m.

An element is stored by its images of 1..m; the image of -i is -w(i).

Text notation
-------------
A cycle ``(a1 a2 ... ak)`` on signed indices means a1 -> a2 -> ... -> ak -> a1,
together with the negated cycle (-a1 -> -a2 -> ...). A negative cycle, whose
orbit contains both i and -i, is written out in full, e.g. ``(1 2 -1 -2)`` or
``(3 -3)``. Fixed points with w(i) = i are omitted and the identity prints as
``()``. Each printed cycle starts at its smallest absolute index, taken with a
positive sign, and cycles appear in increasing order of that index.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from math import factorial
from typing import Iterator, Sequence

from .algebra import partitions

__all__ = [
    "SignedPermutation",
    "SignedCycleType",
    "ConjugacyClass",
    "compose",
    "inverse",
    "identity",
    "act_on_index",
    "reflection",
    "eta",
    "coxeter",
    "signed_cycle_type",
    "conjugacy_classes",
    "class_representative",
    "is_elliptic",
    "centralizer_order_eta",
    "all_elements",
    "parse",
    "to_text",
]


@dataclass(frozen=True)
class SignedPermutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.images)
        if sorted(abs(x) for x in self.images) != list(range(1, m + 1)):
            raise ValueError(f"not a signed permutation of rank {m}: {self.images}")

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if i == 0 or abs(i) > self.m:
            raise ValueError(f"index {i} out of range for rank {self.m}")
        return self.images[i - 1] if i > 0 else -self.images[-i - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return compose(self, other)

    def inverse(self) -> "SignedPermutation":
        return inverse(self)

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles in canonical printed form (see the module docstring)."""
        seen: set[int] = set()
        out = []
        for i in range(1, self.m + 1):
            if i in seen:
                continue
            orbit = [i]
            x = self(i)
            while x != i:
                orbit.append(x)
                x = self(x)
            seen.update(abs(x) for x in orbit)
            if len(orbit) > 1:
                out.append(tuple(orbit))
        return out

    def signed_cycles(self) -> list[tuple[tuple[int, ...], bool]]:
        """Pairs (positive indices in the cycle, is_negative), including fixed points."""
        seen: set[int] = set()
        out = []
        for i in range(1, self.m + 1):
            if i in seen:
                continue
            members = [i]
            x = self(i)
            while abs(x) != i:
                members.append(abs(x))
                x = self(x)
            seen.update(members)
            out.append((tuple(members), x == -i))
        return out

    def order(self) -> int:
        w, k = self, 1
        e = identity(self.m)
        while w != e:
            w, k = compose(w, self), k + 1
        return k

    @cached_property
    def y_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Signed permutation matrix M with (M y)[|w(i)|] = sign(w(i)) * y[i]."""
        rows = [[0] * self.m for _ in range(self.m)]
        for i, img in enumerate(self.images):
            rows[abs(img) - 1][i] = 1 if img > 0 else -1
        return tuple(tuple(r) for r in rows)

    def act_on_vector(self, y: Sequence) -> tuple:
        out = [None] * self.m
        for i, img in enumerate(self.images):
            out[abs(img) - 1] = y[i] if img > 0 else -y[i]
        return tuple(out)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, order=True)
class SignedCycleType:
    mu: tuple[int, ...]
    nu: tuple[int, ...]

    def __post_init__(self) -> None:
        for part in (self.mu, self.nu):
            if any(p <= 0 for p in part) or list(part) != sorted(part, reverse=True):
                raise ValueError(f"not a partition: {part}")

    @property
    def m(self) -> int:
        return sum(self.mu) + sum(self.nu)

    @property
    def elliptic(self) -> bool:
        return not self.mu


@dataclass(frozen=True)
class ConjugacyClass:
    cycle_type: SignedCycleType
    size: int
    representative: SignedPermutation

    @property
    def elliptic(self) -> bool:
        return self.cycle_type.elliptic


def _check_rank(a: SignedPermutation, b: SignedPermutation) -> None:
    if a.m != b.m:
        raise ValueError(f"rank mismatch: {a.m} vs {b.m}")


def compose(w1: SignedPermutation, w2: SignedPermutation) -> SignedPermutation:
    """The product w1 w2, acting by w2 first."""
    _check_rank(w1, w2)
    return SignedPermutation(tuple(w1(x) for x in w2.images))


def inverse(w: SignedPermutation) -> SignedPermutation:
    out = [0] * w.m
    for i, img in enumerate(w.images, start=1):
        out[abs(img) - 1] = i if img > 0 else -i
    return SignedPermutation(tuple(out))


def identity(m: int) -> SignedPermutation:
    if m < 0:
        raise ValueError("rank must be nonnegative")
    return SignedPermutation(tuple(range(1, m + 1)))


def act_on_index(w: SignedPermutation, i: int) -> int:
    return w(i)


def reflection(m: int, i: int) -> SignedPermutation:
    """The sign change i <-> -i."""
    images = list(range(1, m + 1))
    images[i - 1] = -i
    return SignedPermutation(tuple(images))


def eta(m: int) -> SignedPermutation:
    """Product of all m sign changes (the central element -1)."""
    return SignedPermutation(tuple(-i for i in range(1, m + 1)))


def coxeter(m: int) -> SignedPermutation:
    """The negative m-cycle 1 -> 2 -> ... -> m -> -1."""
    if m < 1:
        raise ValueError("rank must be positive")
    return SignedPermutation(tuple(range(2, m + 1)) + (-1,))


def signed_cycle_type(w: SignedPermutation) -> SignedCycleType:
    mu, nu = [], []
    for members, negative in w.signed_cycles():
        (nu if negative else mu).append(len(members))
    return SignedCycleType(tuple(sorted(mu, reverse=True)), tuple(sorted(nu, reverse=True)))


def is_elliptic(w: SignedPermutation) -> bool:
    return signed_cycle_type(w).elliptic


def _centralizer_order(ct: SignedCycleType) -> int:
    total = 1
    for k in set(ct.mu) | set(ct.nu):
        a, b = ct.mu.count(k), ct.nu.count(k)
        total *= (2 * k) ** (a + b) * factorial(a) * factorial(b)
    return total


def class_representative(ct: SignedCycleType) -> SignedPermutation:
    """Positive cycles on the lowest indices, then negative cycles; each cycle
    is a -> a+1 -> ... -> a+r-1 -> ±a."""
    images: list[int] = []
    start = 1
    for parts, sign in ((ct.mu, 1), (ct.nu, -1)):
        for r in parts:
            images.extend(range(start + 1, start + r))
            images.append(sign * start)
            start += r
    return SignedPermutation(tuple(images))


def conjugacy_classes(m: int) -> list[ConjugacyClass]:
    """One entry per signed cycle type, ordered by |nu| then by mu and nu in
    lexicographically decreasing order."""
    if m < 1:
        raise ValueError("rank must be at least 1")
    order = (2**m) * factorial(m)
    out = []
    for k in range(m + 1):
        for mu in partitions(m - k):
            for nu in partitions(k):
                ct = SignedCycleType(mu, nu)
                out.append(ConjugacyClass(ct, order // _centralizer_order(ct), class_representative(ct)))
    return out


def centralizer_order_eta(m: int) -> int:
    if m < 1:
        raise ValueError("rank must be at least 1")
    return 2**m * factorial(m)


def all_elements(m: int) -> Iterator[SignedPermutation]:
    for perm in permutations(range(1, m + 1)):
        for signs in product((1, -1), repeat=m):
            yield SignedPermutation(tuple(s * p for s, p in zip(signs, perm)))


def to_text(w: SignedPermutation) -> str:
    cyc = w.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse(text: str, m: int) -> SignedPermutation:
    """Parse cycle notation into an element of rank ``m``."""
    s = text.strip()
    if not s:
        raise ValueError("empty permutation text")
    pos = 0
    images: dict[int, int] = {}
    for match in _CYCLE_RE.finditer(s):
        if s[pos:match.start()].strip():
            raise ValueError(f"unexpected text {s[pos:match.start()]!r} in {text!r}")
        pos = match.end()
        body = match.group(1).split()
        try:
            cyc = [int(tok) for tok in body]
        except ValueError:
            raise ValueError(f"non-integer entry in cycle {match.group(0)!r}") from None
        for a in cyc:
            if a == 0 or abs(a) > m:
                raise ValueError(f"index {a} out of range for rank {m}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            for src, dst in ((a, b), (-a, -b)):
                if images.get(src, dst) != dst:
                    raise ValueError(f"inconsistent cycles in {text!r}")
                images[src] = dst
    if s[pos:].strip():
        raise ValueError(f"unexpected text {s[pos:]!r} in {text!r}")
    try:
        return SignedPermutation(tuple(images.get(i, i) for i in range(1, m + 1)))
    except ValueError:
        raise ValueError(f"{text!r} does not define a signed permutation of rank {m}") from None
