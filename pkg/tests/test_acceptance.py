"""Acceptance suite: one test per criterion.

Run with pytest (the conftest hook prints a PASS/FAIL line per criterion) or
directly with ``python tests/test_acceptance.py``.
"""

import sys
from fractions import Fraction as F
from math import factorial, prod
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from oracles import conjugacy_orbits, count_symplectic, determinantal_divisors, rational_rank  # noqa: E402
from upackets.algebra import IntMatrix, classical_group_order  # noqa: E402
from upackets.building import appendix_table, brute_force_fixed_lattices, fixed_vertex, reduction_type  # noqa: E402
from upackets.hermitian import (  # noqa: E402
    FieldParams,
    classify_space,
    disc_of_embedding,
    embedding_choices,
)
from upackets.lparam import (  # noqa: E402
    TameParameter,
    character_data,
    compatible_alcove_points,
    compute_A_phi,
    is_general_position,
    regular_points,
    validate,
)
from upackets.packets import enumerate_members, members_for_decomposition  # noqa: E402
from upackets.tori import build_twisted_lattice, elemental_decomposition, is_anisotropic  # noqa: E402
from upackets.weyl_signed import (  # noqa: E402
    all_elements,
    compose,
    conjugacy_classes,
    coxeter,
    eta,
    inverse,
    is_elliptic,
    signed_cycle_type,
)

SEARCH_Q = (3, 5, 7, 9, 11, 13)


def _elliptic(m):
    return [c.representative for c in conjugacy_classes(m) if c.elliptic]


def _first_regular(n, w):
    """A regular Frobenius-compatible parameter for (n, w), searching small q."""
    for q in SEARCH_Q:
        for y in regular_points(n, w, q):
            return TameParameter(n, w, y), q
    return None


def test_criterion_1_hyperoctahedral_classes():
    for m, count in ((1, 2), (2, 5), (3, 10)):
        elements = list(all_elements(m))
        assert len(elements) == 2**m * factorial(m)
        orbits = conjugacy_orbits(elements, compose, inverse)
        classes = conjugacy_classes(m)
        assert len(orbits) == len(classes) == count
        assert sum(c.size for c in classes) == 2**m * factorial(m)
        by_type = {c.cycle_type: c for c in classes}
        for orbit in orbits:
            types = {signed_cycle_type(w) for w in orbit}
            assert len(types) == 1
            cls = by_type[types.pop()]
            assert cls.size == len(orbit) and cls.representative in orbit


def test_criterion_2_anisotropy_equivalence():
    for m in (1, 2, 3):
        for w in all_elements(m):
            no_positive = not signed_cycle_type(w).mu
            for n in (2 * m, 2 * m + 1):
                lat = build_twisted_lattice(n, w)
                identity = IntMatrix.identity(n)
                stacked = (lat.tau_action - identity).entries + (lat.frob_action - identity).entries
                oracle_rank_zero = n - rational_rank(stacked) == 0
                assert is_anisotropic(lat) == oracle_rank_zero == no_positive == is_elliptic(w)


def test_criterion_3_elemental_decomposition():
    for m in (1, 2, 3, 4):
        for c in conjugacy_classes(m):
            if not c.elliptic:
                continue
            for n in (2 * m, 2 * m + 1):
                dec = elemental_decomposition(n, c.representative)
                assert sum(f.s for f in dec.factors) == n
                expected = sorted([2 * r for r in c.cycle_type.nu] + ([1] if n % 2 else []))
                assert sorted(f.s for f in dec.factors) == expected
                assert dec.has_u1 == (n % 2 == 1)


def test_criterion_4_fixed_vertex_uniqueness():
    checked = 0
    for m in (1, 2, 3, 4):
        for w in _elliptic(m):
            for n in (2 * m, 2 * m + 1):
                dec = elemental_decomposition(n, w)
                if dec.j > 4:
                    continue
                for choice in embedding_choices(dec):
                    assert brute_force_fixed_lattices(dec, choice, 5) == [fixed_vertex(dec, choice)]
                    checked += 1
    assert checked > 0


def test_criterion_5_reduction_tables():
    flagged = []
    for n in (3, 4, 5, 6, 7):
        for w in _elliptic(n // 2):
            dec = elemental_decomposition(n, w)
            for choice in embedding_choices(dec):
                red = reduction_type(dec, choice, n)
                rows = {t.key for t in appendix_table(n, red.orth_split)}
                if red.m_red == 2:
                    flagged.append((n, choice.bits(), red.label, red.key in rows))
                    continue
                assert red.key in rows, (n, choice, red.label)
        if n % 2 == 0:
            qs = appendix_table(n, True)
            assert not any(t.m_red == 2 and t.l > 0 for t in qs)
            assert sum(t.l == n for t in qs) == 2
            assert not any(t.l == n for t in appendix_table(n, False))
    for n, bits, label, present in flagged:
        print(f"flagged m_red=2 corner: n={n} bits={bits} {label} (in table: {present})")


def test_criterion_6_packet_sizes():
    for m in (1, 2, 3):
        for w in _elliptic(m):
            for n in (2 * m, 2 * m + 1):
                found = _first_regular(n, w)
                assert found is not None, f"no regular parameter for n={n}, omega={w}"
                P, q = found
                desc = enumerate_members(P, q)
                assert desc.size == 2**desc.j
                if w == coxeter(m):
                    assert desc.size == (2 if n % 2 == 0 else 4)
        even_sizes = {w: enumerate_members(*_first_regular(2 * m, w)).size for w in _elliptic(m)}
        assert even_sizes[eta(m)] == 2**m == max(even_sizes.values())


def test_criterion_7_quasi_split_parity():
    for m in (1, 2, 3, 4):
        for w in _elliptic(m):
            for n in (2 * m, 2 * m + 1):
                dec = elemental_decomposition(n, w)
                if dec.j > 4:
                    continue
                for q in (3, 5):
                    fp = FieldParams(q)
                    for choice, mem in zip(embedding_choices(dec), members_for_decomposition(dec, q)):
                        space = classify_space(n, disc_of_embedding(dec, choice, fp), fp)
                        if n % 2:
                            assert mem.quasi_split and space.quasi_split
                        else:
                            even = sum(choice.parity) % 2 == 0
                            assert mem.quasi_split == space.quasi_split == even


def test_criterion_8_degree_integrality():
    assert count_symplectic(2, 3) == 24 == classical_group_order("symplectic", 2, 3).total
    for q in (3, 5, 7):
        for m in (1, 2, 3):
            for w in _elliptic(m):
                for n in (2 * m, 2 * m + 1):
                    for mem in members_for_decomposition(elemental_decomposition(n, w), q):
                        assert isinstance(mem.dl_degree, int) and mem.dl_degree > 0
                    # and the packets of actual parameters at this q
                    for y in list(regular_points(n, w, q))[:3]:
                        for mem in enumerate_members(TameParameter(n, w, y), q).members:
                            assert isinstance(mem.dl_degree, int) and mem.dl_degree > 0


def test_criterion_9_regularity_chain():
    regular = 0
    for m in (1, 2, 3):
        for w in all_elements(m):
            if not is_elliptic(w):
                continue
            for n in (2 * m, 2 * m + 1):
                dec = elemental_decomposition(n, w)
                for q in (3, 5, 7):
                    for y in compatible_alcove_points(n, w, q):
                        P = TameParameter(n, w, y)
                        if validate(P, q).regular:
                            regular += 1
                            assert is_general_position(character_data(P, q), dec, q), (n, w, q, y)
    assert regular > 0
    # counterexamples: the origin and a point on a single wall
    assert not validate(TameParameter(4, eta(2), (0, 0))).regular
    assert not validate(TameParameter(4, eta(2), (0, F(1, 7)))).regular
    assert not validate(TameParameter(4, eta(2), (F(1, 6), F(1, 6)))).regular


def test_criterion_10_component_group():
    for m in (1, 2, 3):
        for w in _elliptic(m):
            n = 2 * m
            dec = elemental_decomposition(n, w)
            lat = build_twisted_lattice(n, w)
            rows = [
                [lat.tau_action[i, k] - (i == k) for k in range(n)]
                + [lat.frob_action[i, k] - (i == k) for k in range(n)]
                for i in range(n)
            ]
            oracle = [d for d in determinantal_divisors(rows) if d > 1]
            a_phi = compute_A_phi(TameParameter(n, w, (0,) * m))
            assert a_phi == oracle
            assert prod(a_phi) == 2**dec.j == len(members_for_decomposition(dec, 3))


CRITERIA = [
    test_criterion_1_hyperoctahedral_classes,
    test_criterion_2_anisotropy_equivalence,
    test_criterion_3_elemental_decomposition,
    test_criterion_4_fixed_vertex_uniqueness,
    test_criterion_5_reduction_tables,
    test_criterion_6_packet_sizes,
    test_criterion_7_quasi_split_parity,
    test_criterion_8_degree_integrality,
    test_criterion_9_regularity_chain,
    test_criterion_10_component_group,
]


def main() -> int:
    failed = 0
    for k, fn in enumerate(CRITERIA, start=1):
        try:
            fn()
            status = "PASS"
        except Exception as exc:  # report every criterion, then fail overall
            status = f"FAIL ({type(exc).__name__}: {exc})"
            failed += 1
        print(f"criterion {k}: {status}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
