"""Wreath-level isometry test: candidate families, Mackey fast path vs dense
enumeration, budgets, uniqueness brute force, and the summary table."""
from __future__ import annotations

import random
from math import factorial

import pytest

from coverspectra.catalog import NAMED_PAIRS, komatsu_row
from coverspectra.errors import EllDividesOrder, EllTooSmall, TooLarge
from coverspectra.groups import FiniteGroup, Permutation, are_conjugate_subgroups
from coverspectra.wreath import (
    WreathContext,
    WreathLinearCharacter,
    choose_ell,
    dense_induced_inner,
    isometry_test,
    solitary_character,
    solitary_uniqueness_bruteforce,
    table1,
    table1_diff,
    wreath_induced_inner,
    wreath_linear_characters,
)


def _pair(name):
    G, subs, info = NAMED_PAIRS[name]()
    return G, subs["H1"], subs["H2"], info


def test_choose_ell_matches_published_values():
    for name, expected in [
        ("gassmann", 7),
        ("gerst", 3),
        ("brooks_tse", 5),
        ("barden_kang", 5),
        ("guralnick_p3", 5),  # standard mode would use 5; the table row uses 2
    ]:
        G, _, _, _ = _pair(name)
        ell = choose_ell(G)
        assert ell == expected
        assert ell <= 2 * G.order


def test_context_validation():
    G, h1, h2, _ = _pair("s3_pair")
    with pytest.raises(EllTooSmall):
        WreathContext(G, h1, h2, ell=4)  # not prime
    with pytest.raises(EllTooSmall):
        WreathContext(G, h1, h2, ell=2)  # quadratic needs Pintonello mode
    with pytest.raises(EllDividesOrder):
        WreathContext(G, h1, h2, ell=2, pintonello=True)  # |S3| is even
    with pytest.raises(ValueError):
        isometry_test(G, h1, h2, ell=5, pintonello=True)
    with pytest.raises(EllDividesOrder):
        isometry_test(G, h1, h2, ell=3)  # 3 divides |S3|; theorem needs coprime


def test_candidate_family_sizes():
    G, h1, h2, _ = _pair("gassmann")
    ctx = WreathContext(G, h1, h2)
    assert ctx.ell == 7 and ctx.n == 180
    fam = wreath_linear_characters(ctx, 2)
    assert len(fam) == 7 * 4  # ell * |H2^{ab}|, H2 Klein four
    assert fam[0].is_trivial()

    G, h1, h2, _ = _pair("brooks_tse")
    ctx = WreathContext(G, h1, h2)
    fam = wreath_linear_characters(ctx, 2)
    assert len(fam) == 5 * 2  # H2 iso to S4 has abelianisation Z/2

    # G = H: one coordinate, family of size ell * |G^{ab}|
    G, h1, _, _ = _pair("s3_pair")
    full = G.full_subgroup()
    ctx = WreathContext(G, full, full)
    assert ctx.n == 1
    assert len(wreath_linear_characters(ctx, 2)) == ctx.ell * 2

    # trivial group: exactly ell candidates
    T = FiniteGroup(1, [Permutation((0,))])
    triv = T.full_subgroup()
    tctx = WreathContext(T, triv, triv, ell=3)
    assert len(wreath_linear_characters(tctx, 2)) == 3


def test_anchor_is_a_fixed_coset():
    G, h1, h2, _ = _pair("s3_pair")
    ctx = WreathContext(G, h1, h2)
    fixed = ctx.fixed_coords(2)
    assert len(fixed) == 1  # exactly one coset gH1 with g H1 g^-1 = H2
    fam = wreath_linear_characters(ctx, 2)
    nontrivial = [c for c in fam if any(c.exps)]
    for c in nontrivial:
        assert all(e == 0 for i, e in enumerate(c.exps) if i != fixed[0])
    # side 1 always fixes the identity coset
    assert ctx.fixed_coords(1)[0] == 0
    xi = solitary_character(ctx)
    assert xi.exps[0] == 1 and sum(xi.exps) == 1


def test_all_ones_anchor_when_no_fixed_coordinate():
    # H2 of order 3 cannot fix any coset of an order-2 subgroup of S3
    G = FiniteGroup(3, [Permutation.parse("(0 1)", 3), Permutation.parse("(0 1 2)", 3)])
    h1 = G.subgroup([Permutation.parse("(0 1)", 3)])
    h2 = G.subgroup([Permutation.parse("(0 1 2)", 3)])
    ctx = WreathContext(G, h1, h2)
    assert ctx.fixed_coords(2) == []
    fam = wreath_linear_characters(ctx, 2)
    assert len(fam) == ctx.ell * 3
    assert any(all(e == 1 for e in c.exps) for c in fam)
    verdict = isometry_test(G, h1, h2)
    assert not verdict.equivalent  # subgroup orders differ


def test_solitary_inner_product_is_positive():
    for name in ("s3_pair", "klein_milnor", "gerst"):
        G, h1, h2, _ = _pair(name)
        ctx = WreathContext(G, h1, h2)
        xi = solitary_character(ctx)
        assert wreath_induced_inner(ctx, xi, xi) >= 1


def test_isometry_verdicts_on_named_pairs():
    expected = {
        "s3_pair": True,
        "gassmann": False,
        "gerst": False,
        "brooks_tse": False,
        "barden_kang": False,
        "klein_milnor": False,
        "s4_pair": False,
        "ikeda_lens": False,
    }
    for name, want in expected.items():
        G, h1, h2, info = _pair(name)
        verdict = isometry_test(G, h1, h2)
        assert verdict.equivalent is want, name
        assert verdict.checks_performed <= verdict.budget
        if not want:
            # non-equivalent pairs must consume the full candidate budget
            assert verdict.checks_performed == verdict.budget
            assert verdict.conjugator is None
        else:
            assert verdict.witness is not None
            assert verdict.conjugator is not None


def test_isometry_budgets_match_table():
    budgets = {
        "gerst": 24,
        "gassmann": 56,
        "brooks_tse": 20,
        "barden_kang": 80,
    }
    for name, want in budgets.items():
        G, h1, h2, _ = _pair(name)
        verdict = isometry_test(G, h1, h2)
        assert verdict.budget == want
        assert verdict.checks_performed == want


def test_guralnick_pintonello_run():
    G, h1, h2, info = _pair("guralnick_p3")
    assert info["weakly_conjugate"] and not info["conjugate"]
    verdict = isometry_test(G, h1, h2, pintonello=True)
    assert verdict.ell == 2 and verdict.pintonello
    assert not verdict.equivalent
    # weakly conjugate: the precondition passes, so the whole budget is used
    assert verdict.budget == 38 == 2 + 4 * 9
    assert verdict.checks_performed == 38
    # standard mode for the same pair: ell = 5, 2 * 5 * 9 = 90 checks
    verdict5 = isometry_test(G, h1, h2)
    assert verdict5.ell == 5 and verdict5.budget == 90
    assert not verdict5.equivalent


def test_pintonello_precondition_fails_fast():
    # odd-order pair that is not weakly conjugate: center vs non-central Z/3
    # inside the Heisenberg group of order 27
    from coverspectra.catalog import heisenberg

    G = heisenberg(3)
    center = [
        i
        for i in range(G.order)
        if all(G.mul(i, j) == G.mul(j, i) for j in G.generator_indices())
    ]
    zgen = next(i for i in center if G.element_order(i) == 3)
    h1 = G.subgroup_from_indices([zgen])
    noncentral = next(
        i for i in range(G.order) if G.element_order(i) == 3 and i not in center
    )
    h2 = G.subgroup_from_indices([noncentral])
    assert h1.order == h2.order == 3
    verdict = isometry_test(G, h1, h2, pintonello=True)
    assert not verdict.equivalent
    assert verdict.checks_performed == 2  # precondition fails, loop skipped


def test_conjugate_pair_witness_has_trivial_base():
    G, h1, h2, _ = _pair("s3_pair")
    verdict = isometry_test(G, h1, h2)
    assert verdict.equivalent
    assert verdict.witness["base_trivial"]
    assert sum(verdict.witness["exponent_vector"]) == 1
    # the witness is found early: k=0 candidates all fail, then the first
    # k=1 candidate (trivial base) wins
    assert verdict.checks_performed == 6


def test_wreath_abelianisation_order_small():
    # Ht = C^n : H has abelianisation of order ell^(#H-orbits) * |H^{ab}|.
    # Check by explicit commutator closure for S3 / <(01)> / ell=3, side 2.
    G, h1, h2, _ = _pair("s3_pair")
    ctx = WreathContext(G, h1, h2, ell=3)
    ell, n = ctx.ell, ctx.n
    h2_own = list(h2.members)
    elems = [
        (k, h)
        for k in __import__("itertools").product(range(ell), repeat=n)
        for h in h2_own
    ]

    def act(h, k):
        sigma = ctx.coord_action(h)
        out = [0] * n
        for i in range(n):
            out[sigma[i]] = k[i]
        return tuple(out)

    def mul(a, b):
        ka, ha = a
        kb, hb = b
        kb_moved = act(ha, kb)
        return (tuple((x + y) % ell for x, y in zip(ka, kb_moved)), G.mul(ha, hb))

    def inv(a):
        ka, ha = a
        hinv = G.inv(ha)
        return (tuple((-x) % ell for x in act(hinv, ka)), hinv)

    # derived subgroup = closure of all commutators
    comms = set()
    for a in elems:
        for b in elems:
            c = mul(mul(a, b), inv(mul(b, a)))
            comms.add(c)
    derived = set(comms)
    frontier = list(derived)
    while frontier:
        nxt = []
        for a in frontier:
            for c in comms:
                p = mul(a, c)
                if p not in derived:
                    derived.add(p)
                    nxt.append(p)
        frontier = nxt
    orbits = len(ctx.orbits(2))
    h2ab = h2.order // 1  # H2 is abelian of order 2
    assert len(elems) // len(derived) == ell**orbits * 2
    # the anchored candidate family is the size-(ell * |H^{ab}|) slice of it
    assert len(wreath_linear_characters(ctx, 2)) == ell * 2


def test_dense_agreement_162():
    # S3 / <(01)> / ell = 3: |Gt| = 3^3 * 6 = 162
    G, h1, h2, _ = _pair("s3_pair")
    ctx = WreathContext(G, h1, h2, ell=3)
    assert ctx.wreath_order() == 162
    fam1 = wreath_linear_characters(ctx, 1)
    fam2 = wreath_linear_characters(ctx, 2)
    xi = solitary_character(ctx)
    for a in [xi] + fam1:
        for b in fam2:
            assert wreath_induced_inner(ctx, a, b) == dense_induced_inner(ctx, a, b)
    for a in fam1:
        for b in fam1:
            assert wreath_induced_inner(ctx, a, b) == dense_induced_inner(ctx, a, b)


def test_dense_agreement_klein():
    # (Z/2)^2 pair, ell = 3, n = 2: |Gt| = 36
    G, h1, h2, _ = _pair("klein_milnor")
    ctx = WreathContext(G, h1, h2, ell=3)
    assert ctx.wreath_order() == 36
    fam1 = wreath_linear_characters(ctx, 1)
    fam2 = wreath_linear_characters(ctx, 2)
    for a in fam1:
        for b in fam1 + fam2:
            assert wreath_induced_inner(ctx, a, b) == dense_induced_inner(ctx, a, b)


def test_dense_agreement_nonfixed_anchor():
    # order-2 vs order-3 subgroups of S3 with ell = 5: |Gt| = 5^3 * 6 = 750
    G = FiniteGroup(3, [Permutation.parse("(0 1)", 3), Permutation.parse("(0 1 2)", 3)])
    h1 = G.subgroup([Permutation.parse("(0 1)", 3)])
    h2 = G.subgroup([Permutation.parse("(0 1 2)", 3)])
    ctx = WreathContext(G, h1, h2, ell=5)
    assert ctx.wreath_order() == 750
    xi = solitary_character(ctx)
    for b in wreath_linear_characters(ctx, 2):
        assert wreath_induced_inner(ctx, xi, b) == dense_induced_inner(ctx, xi, b)


def test_dense_cap():
    G, h1, h2, _ = _pair("gassmann")
    ctx = WreathContext(G, h1, h2)
    xi = solitary_character(ctx)
    with pytest.raises(TooLarge):
        dense_induced_inner(ctx, xi, xi)


def test_uniqueness_s3():
    G, h1, h2, _ = _pair("s3_pair")
    ctx = WreathContext(G, h1, h1, ell=3)
    report = solitary_uniqueness_bruteforce(ctx)
    assert report["unique"] and report["line_systems"] == 1
    assert report["matrix_group_order"] == 162
    assert report["separation"] and report["transitive"]
    assert report["trace_gap_positive"]


def test_uniqueness_z4_variants():
    G = FiniteGroup(4, [Permutation.parse("(0 1 2 3)", 4)])
    trivial = G.trivial_subgroup()
    half = G.subgroup([Permutation.parse("(0 2)(1 3)", 4)])
    full = G.full_subgroup()
    for handle, n in [(trivial, 4), (half, 2), (full, 1)]:
        ctx = WreathContext(G, handle, handle, ell=3)
        assert ctx.n == n
        report = solitary_uniqueness_bruteforce(ctx)
        assert report["unique"]
        assert report["trace_gap_positive"]
    # index 4: the full monomial image has order 3^4 * 4
    ctx = WreathContext(G, trivial, trivial, ell=3)
    assert solitary_uniqueness_bruteforce(ctx)["matrix_group_order"] == 324


def test_uniqueness_rejects_ell_two_and_huge_cases():
    G = FiniteGroup(3, [Permutation.parse("(0 1 2)", 3)])
    ctx = WreathContext(G, G.trivial_subgroup(), G.trivial_subgroup(), ell=2, pintonello=True)
    with pytest.raises(EllTooSmall):
        solitary_uniqueness_bruteforce(ctx)
    Gg, h1, h2, _ = _pair("gassmann")
    big = WreathContext(Gg, h1, h2)
    with pytest.raises(TooLarge):
        solitary_uniqueness_bruteforce(big)


def test_random_pairs_verdict_matches_conjugacy():
    # isometry_test itself asserts verdict == subgroup conjugacy; this test
    # feeds it a seeded variety of small pairs and records both outcomes occur
    rng = random.Random(20240817)
    outcomes = set()
    trials = 0
    while trials < 15:
        degree = rng.randrange(3, 6)
        gens = []
        for _ in range(2):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Permutation(tuple(images)))
        G = FiniteGroup(degree, gens)
        if G.order > 60 or G.order < 2:
            continue
        members = list(range(G.order))
        h1 = G.subgroup_from_indices([rng.choice(members)])
        if rng.random() < 0.5:
            h2 = h1.conjugate_by(rng.choice(members))
        else:
            h2 = G.subgroup_from_indices([rng.choice(members)])
        verdict = isometry_test(G, h1, h2)
        outcomes.add(verdict.equivalent)
        conj = are_conjugate_subgroups(G, h1, h2)
        assert verdict.equivalent == (conj is not None)
        trials += 1
    assert outcomes == {True, False}


def test_table1_all_rows_match():
    rows = table1()
    assert [r["name"] for r in rows] == [
        "Gerst",
        "Gassmann",
        "Komatsu",
        "Brooks-Tse",
        "Barden-Kang",
        "Guralnick",
    ]
    assert all(r["matches"] for r in rows)
    assert table1_diff(rows) == []
    by_name = {r["name"]: r for r in rows}
    assert (
        by_name["Gassmann"]["group_order"],
        by_name["Gassmann"]["subgroup_order"],
        by_name["Gassmann"]["ell"],
        by_name["Gassmann"]["dimension"],
        by_name["Gassmann"]["checks"],
    ) == (720, 4, 7, 180, 56)
    assert by_name["Guralnick"]["checks"] == 38
    assert by_name["Barden-Kang"]["dimension"] == 12


def test_komatsu_row_formulas():
    row = komatsu_row(3)
    assert row["group_order"] == factorial(27)
    assert row["dimension"] == factorial(26)
    assert row["subgroup_order"] == 27
    assert row["ell"] == 29  # smallest prime above 27, within Bertrand's bound
    assert row["checks"] == 522 == 2 * 29 * 9
    assert row["checks"] <= 2 * 9 * (2 * 27 - 3)  # the ell-free closed bound
    assert not row["executable"]
    # order-of-magnitude pins used by the table diff
    assert len(str(row["group_order"])) == 29  # ~1.1e28
    assert len(str(row["dimension"])) == 27  # ~4.0e26
