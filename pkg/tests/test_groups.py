"""Group layer: enumeration, cosets, cores, abelianizations, file parsing."""
from __future__ import annotations

import random
from math import factorial

import pytest

from coverspectra.errors import CapExceeded, DegreeMismatch, NotSubgroup, ParseError
from coverspectra.groups import (
    FiniteGroup,
    Permutation,
    abelian_basis,
    abelianization,
    are_conjugate_subgroups,
    compose,
    double_cosets,
    format_group_file,
    normal_core,
    parse_group_file,
)


def sym(n: int) -> FiniteGroup:
    gens = [Permutation.parse("(0 1)", n)]
    if n > 2:
        gens.append(Permutation(tuple(list(range(1, n)) + [0])))
    return FiniteGroup(n, gens)


def test_permutation_parse_and_format_roundtrip():
    p = Permutation.parse("(0 1)(2 4 3)", 5)
    assert p.images == (1, 0, 4, 2, 3)
    assert str(p) == "(0 1)(2 4 3)"
    assert Permutation.parse(str(p), 5) == p
    assert Permutation.parse("()", 4) == Permutation.identity(4)


def test_permutation_composition_applies_right_factor_first():
    p = Permutation.parse("(0 1)", 3)
    q = Permutation.parse("(1 2)", 3)
    assert (p * q).images == compose(p.images, q.images)
    # (p*q)(1) = p(q(1)) = p(2) = 2
    assert (p * q)(1) == 2


def test_permutation_rejects_bad_input():
    with pytest.raises(ParseError):
        Permutation.parse("(0 5)", 3)
    with pytest.raises(ParseError):
        Permutation.parse("(0 0 1)", 3)
    with pytest.raises(ParseError):
        Permutation.parse("0 1", 3)
    with pytest.raises(DegreeMismatch):
        Permutation.parse("(0 1)", 3) * Permutation.parse("(0 1)", 4)


def test_enumeration_s6_order_720_identity_first():
    G = sym(6)
    assert G.order == 720
    assert G.elements[0] == tuple(range(6))
    # determinism: rebuilding gives the same element order
    G2 = sym(6)
    assert G.elements == G2.elements


def test_enumeration_trivial_group():
    G = FiniteGroup(3, [])
    assert G.order == 1
    G2 = FiniteGroup(3, [Permutation.identity(3)])
    assert G2.order == 1


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        sym_gens = [Permutation.parse("(0 1)", 12),
                    Permutation(tuple(list(range(1, 12)) + [0]))]
        FiniteGroup(12, sym_gens, cap=1000)


def test_conjugacy_classes_s4():
    G = sym(4)
    classes = G.conjugacy_classes()
    sizes = sorted(len(c) for c in classes)
    assert sizes == [1, 3, 6, 6, 8]
    assert classes[0] == [0]
    # class sizes times centralizer orders equal the group order
    for c in classes:
        assert len(c) * G.centralizer_order(c[0]) == G.order


def test_subgroup_and_cosets_s3():
    G = sym(3)
    H = G.subgroup([Permutation.parse("(0 1)", 3)])
    assert H.order == 2
    cos = G.cosets(H)
    assert cos.n == 3
    assert cos.reps[0] == 0
    assert cos.reps == sorted(cos.reps)
    # the 3-cycle acts on the cosets as a 3-cycle
    three = G.index[Permutation.parse("(0 1 2)", 3).images]
    sigma = cos.act(three)
    assert sorted(sigma) == [0, 1, 2] and sigma != (0, 1, 2)
    seen = {0}
    cur = 0
    for _ in range(2):
        cur = sigma[cur]
        seen.add(cur)
    assert seen == {0, 1, 2}


def test_coset_cocycle_identity():
    rng = random.Random(7)
    G = sym(4)
    H = G.subgroup([Permutation.parse("(0 1)", 4), Permutation.parse("(0 1 2)", 4)])
    cos = G.cosets(H)
    for _ in range(60):
        g, gp = rng.randrange(G.order), rng.randrange(G.order)
        sig_g, coc_g = cos.action_with_cocycle(g)
        sig_gp, coc_gp = cos.action_with_cocycle(gp)
        prod = G.mul(g, gp)
        sig_p, coc_p = cos.action_with_cocycle(prod)
        for i in range(cos.n):
            assert sig_p[i] == sig_g[sig_gp[i]]
            assert coc_p[i] == G.mul(coc_g[sig_gp[i]], coc_gp[i])
            # defining property g * rep_i = rep_{sigma(i)} * h_i with h_i in H
            lhs = G.mul(g, cos.reps[i])
            rhs = G.mul(cos.reps[sig_g[i]], coc_g[i])
            assert lhs == rhs and H.contains(coc_g[i])


def test_double_cosets_s3_example():
    G = sym(3)
    H = G.subgroup([Permutation.parse("(0 1)", 3)])
    dcs = double_cosets(G, H, H)
    assert sorted(size for _, size in dcs) == [2, 4]


def test_normal_core_agrees_and_bounds():
    G = sym(4)
    H = G.subgroup([Permutation.parse("(0 1)", 4), Permutation.parse("(2 3)", 4)])
    core = normal_core(G, H)
    assert core.order == 1
    V = G.subgroup([Permutation.parse("(0 1)(2 3)", 4), Permutation.parse("(0 2)(1 3)", 4)])
    coreV = normal_core(G, V)
    assert coreV.members == V.members  # V4 is normal in S4
    assert G.order // core.order <= factorial(G.cosets(H).n)


def test_abelianization_s4_gives_z2():
    G = sym(4)
    _, divisors = abelianization(G.full_subgroup())
    assert divisors == [2]


def test_abelianization_dihedral_and_cyclic():
    # D4 = <(0 1 2 3), (0 2)> has abelianization Z/2 x Z/2
    G = FiniteGroup(4, [Permutation.parse("(0 1 2 3)", 4), Permutation.parse("(0 2)", 4)])
    assert G.order == 8
    _, divisors = abelianization(G.full_subgroup())
    assert divisors == [2, 2]
    # Z/6 as a single 6-cycle
    C = FiniteGroup(6, [Permutation(tuple(list(range(1, 6)) + [0]))])
    _, div6 = abelianization(C.full_subgroup())
    assert div6 == [6]


def test_abelian_basis_decomposes_z4_x_z2():
    G = FiniteGroup(
        6, [Permutation.parse("(0 1 2 3)", 6), Permutation.parse("(4 5)", 6)]
    )
    assert G.order == 8 and G.is_abelian()
    quo, divisors = abelianization(G.full_subgroup())
    assert divisors == [2, 4]
    basis, coords = abelian_basis(quo)
    assert sorted(o for _, o in basis) == [2, 4]
    # coordinates reconstruct every element uniquely
    assert len({tuple(c) for c in coords}) == quo.order
    for q in range(quo.order):
        acc = 0
        for (b, o), e in zip(basis, coords[q]):
            for _ in range(e % o):
                acc = quo.mul(acc, b)
        assert acc == q


def test_are_conjugate_subgroups():
    G = sym(3)
    H1 = G.subgroup([Permutation.parse("(0 1)", 3)])
    H2 = G.subgroup([Permutation.parse("(0 2)", 3)])
    g = are_conjugate_subgroups(G, H1, H2)
    assert g is not None
    gi = G.index[g.images]
    assert {G.conj(gi, m) for m in H1.members} == set(H2.members)
    H3 = G.subgroup([Permutation.parse("(0 1 2)", 3)])
    assert are_conjugate_subgroups(G, H1, H3) is None


def test_group_file_roundtrip_and_errors():
    text = """# sample
degree 6
(0 1)
(0 1 2 3 4 5)
subgroup H1:
(0 1)(2 3)
(0 2)(1 3)
subgroup H2:
(0 1)(2 3)
(0 1)(4 5)
"""
    G, subs = parse_group_file(text)
    assert G.order == 720
    assert set(subs) == {"H1", "H2"}
    assert subs["H1"].order == 4 and subs["H2"].order == 4
    out = format_group_file(
        6,
        G.generators,
        {name: [G.element(i) for i in h.gen_indices] for name, h in subs.items()},
    )
    G2, subs2 = parse_group_file(out)
    assert G2.order == 720
    assert subs2["H1"].members == subs["H1"].members

    with pytest.raises(ParseError):
        parse_group_file("degree 3\n(0 5)\n")
    with pytest.raises(ParseError):
        parse_group_file("(0 1)\n")
    small = FiniteGroup(3, [Permutation.parse("(0 1)", 3)])
    with pytest.raises(NotSubgroup):
        small.subgroup([Permutation.parse("(0 1 2)", 3)])


def test_word_reconstruction():
    rng = random.Random(11)
    G = sym(5)
    for _ in range(40):
        i = rng.randrange(G.order)
        word = G.word(i)
        acc = 0
        gens = G.generator_indices()
        for w in word:
            acc = G.mul(acc, gens[w])
        assert acc == i
