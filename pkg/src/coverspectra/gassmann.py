"""Weak conjugacy (almost-conjugacy) reports and the twisted multiplicity test.

Two subgroups are weakly conjugate when every conjugacy class of the ambient
group meets both in the same number of elements; equivalently the induced
trivial characters agree.  Both criteria are computed and asserted equal.
The solo test decides whether two linear characters induce isomorphic
representations purely from a 2x2 matrix of induced inner products.
"""
from __future__ import annotations

from dataclasses import dataclass

from .characters import induce, mackey_inner, trivial_character
from .errors import GroupMismatch
from .groups import (
    FiniteGroup,
    SubgroupHandle,
    are_conjugate_subgroups,
    double_cosets,
    format_cycles,
)


@dataclass
class GassmannReport:
    weakly_conjugate: bool
    conjugate: bool
    conjugator: str | None
    class_profile: list[dict]
    a_matrix: list[list[int]]
    order: int
    subgroup_orders: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "weakly_conjugate": self.weakly_conjugate,
            "conjugate": self.conjugate,
            "conjugator": self.conjugator,
            "class_profile": self.class_profile,
            "a_matrix": self.a_matrix,
            "group_order": self.order,
            "subgroup_orders": list(self.subgroup_orders),
        }


def _check_subgroups(G: FiniteGroup, *handles: SubgroupHandle) -> None:
    for h in handles:
        if h.parent is not G:
            raise GroupMismatch("subgroup does not belong to this group")


def class_profile(G: FiniteGroup, h1: SubgroupHandle, h2: SubgroupHandle) -> list[dict]:
    out = []
    for cls in G.conjugacy_classes():
        in1 = sum(1 for x in cls if h1.contains(x))
        in2 = sum(1 for x in cls if h2.contains(x))
        out.append(
            {
                "representative": format_cycles(G.elements[cls[0]]),
                "class_size": len(cls),
                "count_in_h1": in1,
                "count_in_h2": in2,
            }
        )
    return out


def weak_conjugacy(G: FiniteGroup, h1: SubgroupHandle, h2: SubgroupHandle) -> GassmannReport:
    """Full report: class-counting criterion, induced-character criterion, conjugacy."""
    _check_subgroups(G, h1, h2)
    profile = class_profile(G, h1, h2)
    by_counts = all(row["count_in_h1"] == row["count_in_h2"] for row in profile)
    # Independent route: equality of the induced trivial characters.  The class
    # counting uses raw intersections; induction repeats it through centralizer
    # orders and cyclotomic bookkeeping, so agreement is a real consistency check.
    psi1 = induce(trivial_character(h1), h1)
    psi2 = induce(trivial_character(h2), h2)
    by_characters = (h1.order == h2.order) and psi1 == psi2
    assert by_counts == by_characters, "class counts and induced characters disagree"
    conj = are_conjugate_subgroups(G, h1, h2)
    amat = a_matrix(G, h1, h2, trivial_character(h1), trivial_character(h2))
    report = GassmannReport(
        weakly_conjugate=by_counts,
        conjugate=conj is not None,
        conjugator=str(conj) if conj is not None else None,
        class_profile=profile,
        a_matrix=amat,
        order=G.order,
        subgroup_orders=(h1.order, h2.order),
    )
    if report.conjugate:
        assert report.weakly_conjugate, "conjugate subgroups must be weakly conjugate"
    if report.weakly_conjugate:
        assert len({amat[0][0], amat[0][1], amat[1][0], amat[1][1]}) == 1, (
            "weakly conjugate pair must have a constant trivial-character a-matrix"
        )
    return report


def a_matrix(
    G: FiniteGroup,
    h1: SubgroupHandle,
    h2: SubgroupHandle,
    chi1,
    chi2,
    cross_check: bool | None = None,
) -> list[list[int]]:
    """a[i][j] = <Ind_{H_j} chi_j, Ind_{H_i} chi_i>, integers, with a12 = a21."""
    _check_subgroups(G, h1, h2)
    handles = {1: h1, 2: h2}
    chis = {1: chi1, 2: chi2}
    mat = [[0, 0], [0, 0]]
    for i in (1, 2):
        for j in (1, 2):
            val = mackey_inner(
                G, handles[j], handles[i], chis[j], chis[i], cross_check=cross_check
            )
            assert val.denominator == 1 and val >= 0, "induced inner product must be in Z>=0"
            mat[i - 1][j - 1] = int(val)
    assert mat[0][1] == mat[1][0], "a12 must equal a21 for integer inner products"
    return mat


def solo_test(
    G: FiniteGroup,
    h1: SubgroupHandle,
    h2: SubgroupHandle,
    chi1,
    chi2,
    cross_check: bool | None = None,
) -> bool:
    """True iff a11 = a21 and a12 = a22; asserted equal to Ind chi1 = Ind chi2.

    The equivalence is exactly <psi, psi> = a11 + a22 - a12 - a21 = 0 for
    psi = Ind chi1 - Ind chi2, which vanishes iff the two induced characters
    coincide.
    """
    mat = a_matrix(G, h1, h2, chi1, chi2, cross_check=cross_check)
    verdict = mat[0][0] == mat[1][0] and mat[0][1] == mat[1][1]
    direct = induce(chi1, h1) == induce(chi2, h2)
    assert verdict == direct, "multiplicity criterion must match character equality"
    return verdict


def res_ind_decomposition(
    G: FiniteGroup, h: SubgroupHandle, k: SubgroupHandle
) -> list[tuple[int, int]]:
    """Decomposition of Res_K Ind_H 1 into coset permutation modules.

    One part per (K, H) double coset KsH, of index [K : K meet sHs^{-1}];
    returned aggregated as (index, multiplicity) pairs, ascending.  The parts
    sum to [G:H], and the part of the identity double coset equals
    [K : K meet H] (value 1 when K = H: the untwisted slot).
    """
    _check_subgroups(G, h, k)
    parts: list[int] = []
    for s, _size in double_cosets(G, k, h):
        sinv = G.inv(s)
        inter = sum(
            1 for x in k.members if h.contains(G.mul(G.mul(sinv, x), s))
        )
        assert k.order % inter == 0
        parts.append(k.order // inter)
    assert sum(parts) == G.order // h.order, "parts must sum to [G:H]"
    agg: dict[int, int] = {}
    for p in sorted(parts):
        agg[p] = agg.get(p, 0) + 1
    return sorted(agg.items())
