"""Built-in example groups and subgroup pairs.

Each builder returns (G, {"H1": handle, "H2": handle}, info) where info is a
small dict of pinned facts that the builder re-verifies on construction.
Sources for the data:

* the order-720 pair lives in S6 with both subgroups Klein four-groups;
* the order-32 pair is the affine realization x -> ax + b over Z/8 (the
  original arithmetic example, multiplicative stabilizer vs. its twist);
* the order-168 pair is GL(3,2) on the nonzero vectors of F_2^3, column
  stabilizer vs. row stabilizer of the first coordinate;
* the order-96 pair was found by a computational search over order-96
  permutation groups for a weakly-conjugate non-conjugate pair of Z/2 x Z/4
  subgroups; the winner G = A4 x Z/4 x Z/2 is frozen here and re-verified;
* the order-p^5 pair is the two-step nilpotent semidirect product
  (Z/p^2 x Z/p) : (Z/p)^2 with the commutator action pinned below (these two
  subgroups are *not* weakly conjugate, which is the point of the row);
* small helper pairs (S4, S3, Klein four, order-121 abelian) back unit tests.
"""
from __future__ import annotations

from math import factorial

from .errors import ParseError
from .groups import FiniteGroup, Permutation, SubgroupHandle, format_group_file


def _build(degree: int, gen_strs, sub_strs) -> tuple[FiniteGroup, dict[str, SubgroupHandle]]:
    gens = [Permutation.parse(s, degree) for s in gen_strs]
    G = FiniteGroup(degree, gens)
    subs = {
        name: G.subgroup([Permutation.parse(s, degree) for s in strs])
        for name, strs in sub_strs.items()
    }
    return G, subs


def s6_gassmann():
    """Order-720 pair: two Klein four-groups in S6, weakly conjugate, not conjugate."""
    G, subs = _build(
        6,
        ["(0 1)", "(0 1 2 3 4 5)"],
        {
            "H1": ["(0 1)(2 3)", "(0 2)(1 3)"],
            "H2": ["(0 1)(2 3)", "(0 1)(4 5)"],
        },
    )
    assert G.order == 720 and subs["H1"].order == 4 and subs["H2"].order == 4
    return G, subs, {"weakly_conjugate": True, "conjugate": False}


def gerst():
    """Order-32 pair: affine maps x -> ax+b on Z/8, a in {1,3,5,7}."""
    G, subs = _build(
        8,
        ["(0 1 2 3 4 5 6 7)", "(1 3)(2 6)(5 7)", "(1 5)(3 7)"],
        {
            "H1": ["(1 3)(2 6)(5 7)", "(1 5)(3 7)"],          # x -> 3x, x -> 5x
            "H2": ["(0 4)(1 7)(3 5)", "(0 4)(2 6)"],          # x -> 3x+4, x -> 5x+4
        },
    )
    assert G.order == 32 and subs["H1"].order == 4 and subs["H2"].order == 4
    return G, subs, {"weakly_conjugate": True, "conjugate": False}


def brooks_tse():
    """Order-168 pair: GL(3,2) on the 7 nonzero vectors of F_2^3.

    Point b-1 encodes the vector with bits (b&1, b>>1&1, b>>2&1).  H1 is the
    stabilizer of the first basis vector; H2 is the stabilizer of the first
    coordinate functional (matrices with first row (1,0,0)).
    """
    vecs = [((b >> 0) & 1, (b >> 1) & 1, (b >> 2) & 1) for b in range(1, 8)]
    idx = {v: i for i, v in enumerate(vecs)}

    def mat_perm(m):
        images = []
        for x in vecs:
            y = tuple(sum(m[r][c] * x[c] for c in range(3)) % 2 for r in range(3))
            images.append(idx[y])
        return Permutation(images)

    a = mat_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    b = mat_perm([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    G = FiniteGroup(7, [a, b])
    assert G.order == 168
    e1 = idx[(1, 0, 0)]
    h1_members = [i for i in range(G.order) if G.elements[i][e1] == e1]
    # first row (1,0,0) <=> the first coordinate of every image vector matches
    h2_members = [
        i
        for i in range(G.order)
        if all(vecs[G.elements[i][p]][0] == vecs[p][0] for p in range(7))
    ]
    H1 = G.subgroup_from_members(h1_members)
    H2 = G.subgroup_from_members(h2_members)
    assert H1.order == 24 and H2.order == 24
    return G, {"H1": H1, "H2": H2}, {"weakly_conjugate": True, "conjugate": False}


def barden_kang():
    """Order-96 pair in A4 x Z/4 x Z/2, both subgroups Z/2 x Z/4 of index 12.

    Found by direct search (see the module docstring); frozen here.
    """
    G, subs = _build(
        10,
        ["(0 1 2)", "(0 1)(2 3)", "(4 5 6 7)", "(8 9)"],
        {
            "H1": ["(0 1)(2 3)(4 5 6 7)", "(0 2)(1 3)(8 9)"],
            "H2": ["(0 1)(2 3)(4 5 6 7)", "(0 3)(1 2)(8 9)"],
        },
    )
    assert G.order == 96 and subs["H1"].order == 8 and subs["H2"].order == 8
    from .groups import abelianization

    assert abelianization(subs["H1"])[1] == [2, 4]
    assert abelianization(subs["H2"])[1] == [2, 4]
    return G, subs, {"weakly_conjugate": True, "conjugate": False}


def guralnick(p: int = 3):
    """Order-p^5 pair: (Z/p^2 x Z/p) : (Z/p)^2, weakly conjugate, not conjugate.

    The complement action is fixed by the images of the module generators
    a1 = (1,0), a2 = (0,1) under the complement generators h1, h2:
    h1: a1 -> (1,1), a2 -> (p,1);  h2: a1 -> (p+1,0), a2 -> (0,1).
    H1 is the full complement; H2 = <((0,0),(1,0)), ((p,0),(0,1))>.
    Elements are (x, y, u, v) with x mod p^2; the permutation carrier is the
    regular action on the p^5 element tuples.
    """
    if p < 3 or p % 2 == 0:
        raise ParseError("p must be an odd prime >= 3")
    p2 = p * p

    def sigma1(x, y):  # action of h1 on A
        return ((x + p * y) % p2, (x + y) % p)

    def sigma2(x, y):  # action of h2 on A
        return (((p + 1) * x) % p2, y % p)

    def act(u, v, x, y):
        for _ in range(u % p):
            x, y = sigma1(x, y)
        for _ in range(v % p):
            x, y = sigma2(x, y)
        return x, y

    # sanity: the two automorphisms commute and have order p (checked pointwise)
    for x in range(p2):
        for y in range(p):
            assert sigma1(*sigma2(x, y)) == sigma2(*sigma1(x, y))
            assert act(p, 0, x, y) == (x, y) and act(0, p, x, y) == (x, y)

    elems = [(x, y, u, v) for x in range(p2) for y in range(p) for u in range(p) for v in range(p)]
    eidx = {e: i for i, e in enumerate(elems)}

    def left_mult_perm(g):
        gx, gy, gu, gv = g
        images = []
        for (x, y, u, v) in elems:
            ax, ay = act(gu, gv, x, y)
            images.append(eidx[((gx + ax) % p2, (gy + ay) % p, (gu + u) % p, (gv + v) % p)])
        return Permutation(images)

    gen_tuples = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    G = FiniteGroup(len(elems), [left_mult_perm(g) for g in gen_tuples])
    assert G.order == p**5
    h1 = G.subgroup([left_mult_perm((0, 0, 1, 0)), left_mult_perm((0, 0, 0, 1))])
    h2 = G.subgroup([left_mult_perm((0, 0, 1, 0)), left_mult_perm((p, 0, 0, 1))])
    assert h1.order == p2 and h2.order == p2
    assert all(G.element_order(m) in (1, p) for m in h2.members)
    return G, {"H1": h1, "H2": h2}, {"weakly_conjugate": True, "conjugate": False}


def s4_multiplicity_pair():
    """S4 with H1 = <(0 1 2 3)> and H2 = the Klein four-group (not weakly conjugate)."""
    G, subs = _build(
        4,
        ["(0 1)", "(0 1 2 3)"],
        {
            "H1": ["(0 1 2 3)"],
            "H2": ["(0 1)(2 3)", "(0 2)(1 3)"],
        },
    )
    assert G.order == 24
    return G, subs, {"weakly_conjugate": False, "conjugate": False}


def s3_conjugate_pair():
    """S3 with two conjugate order-2 subgroups."""
    G, subs = _build(3, ["(0 1)", "(0 1 2)"], {"H1": ["(0 1)"], "H2": ["(0 2)"]})
    assert G.order == 6
    return G, subs, {"weakly_conjugate": True, "conjugate": True}


def klein_milnor():
    """Klein four-group with two distinct order-2 subgroups (not weakly conjugate)."""
    G, subs = _build(
        4,
        ["(0 1)(2 3)", "(0 2)(1 3)"],
        {"H1": ["(0 1)(2 3)"], "H2": ["(0 2)(1 3)"]},
    )
    assert G.order == 4
    return G, subs, {"weakly_conjugate": False, "conjugate": False}


def ikeda_lens():
    """(Z/11)^2 with its two factor subgroups (not weakly conjugate; order 121)."""
    a = Permutation(tuple(list(range(1, 11)) + [0] + list(range(11, 22))))
    b = Permutation(tuple(list(range(11)) + list(range(12, 22)) + [11]))
    G = FiniteGroup(22, [a, b])
    assert G.order == 121
    H1 = G.subgroup([a])
    H2 = G.subgroup([b])
    assert H1.order == 11 and H2.order == 11
    return G, {"H1": H1, "H2": H2}, {"weakly_conjugate": False, "conjugate": False}


def heisenberg(p: int = 3) -> FiniteGroup:
    """Unitriangular 3x3 matrices over F_p acting on F_p^3 (order p^3)."""
    pts = [(x, y, z) for x in range(p) for y in range(p) for z in range(p)]
    idx = {v: i for i, v in enumerate(pts)}

    def mat_perm(a, b, c):
        images = []
        for (x, y, z) in pts:
            images.append(idx[((x + a * y + b * z) % p, (y + c * z) % p, z)])
        return Permutation(images)

    G = FiniteGroup(len(pts), [mat_perm(1, 0, 0), mat_perm(0, 0, 1)])
    assert G.order == p**3
    return G


def komatsu_row(p: int = 3) -> dict:
    """Symbolic table row for the pair of order-p^3 subgroups inside Sym(p^3).

    Only closed formulas: the carrier group is far too large to enumerate.
    ell is the smallest prime > p^3 (every smaller odd prime divides (p^3)!),
    and Bertrand's postulate bounds it by 2p^3 - 3 for p >= 2.
    """
    n = p**3
    ell = n + 1
    while not _is_prime(ell):
        ell += 1
    assert ell <= 2 * n - 3, "smallest usable prime exceeds the published bound"
    return {
        "name": "Komatsu",
        "group_order": factorial(n),
        "subgroup_order": n,
        "ell": ell,
        "dimension": factorial(n - 1),
        "checks": 2 * ell * p * p,
        "executable": False,
    }


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


NAMED_PAIRS = {
    "gassmann": s6_gassmann,
    "gerst": gerst,
    "brooks_tse": brooks_tse,
    "barden_kang": barden_kang,
    "guralnick_p3": guralnick,
    "s4_pair": s4_multiplicity_pair,
    "s3_pair": s3_conjugate_pair,
    "klein_milnor": klein_milnor,
    "ikeda_lens": ikeda_lens,
}


def group_file_text(name: str) -> str:
    """The group file serialization of a named example pair."""
    if name not in NAMED_PAIRS:
        raise ParseError(f"unknown example {name!r}; known: {sorted(NAMED_PAIRS)}")
    G, subs, _ = NAMED_PAIRS[name]()
    return format_group_file(
        G.degree,
        G.generators,
        {
            tag: [G.element(i) for i in h.gen_indices]
            for tag, h in subs.items()
        },
    )
