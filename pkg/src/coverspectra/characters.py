"""Class functions and linear characters with exact cyclotomic values.

Only the character theory the verdicts need is implemented: linear characters
of subgroups (through the abelianization), induction and restriction of class
functions, exact inner products, and the double-coset (Mackey) form of
<Ind chi_1, Ind chi_2> with a built-in cross-check against the direct
computation on small groups.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm

from .cyclotomic import Cyclotomic, cyclo_sum
from .errors import GroupMismatch, MalformedCharacter
from .groups import (
    FiniteGroup,
    SubgroupHandle,
    abelian_basis,
    abelianization,
    double_cosets,
    format_cycles,
)

CROSS_CHECK_ORDER_BOUND = 1000


class ClassFunction:
    """A class function on a finite group, one exact value per conjugacy class."""

    def __init__(self, group: FiniteGroup, values):
        classes = group.conjugacy_classes()
        values = list(values)
        if len(values) != len(classes):
            raise MalformedCharacter(
                f"expected {len(classes)} class values, got {len(values)}"
            )
        self.group = group
        self.values = tuple(
            v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(v)
            for v in values
        )

    # -- constructors ---------------------------------------------------------
    @staticmethod
    def trivial(group: FiniteGroup) -> "ClassFunction":
        return ClassFunction(group, [1] * len(group.conjugacy_classes()))

    @staticmethod
    def regular(group: FiniteGroup) -> "ClassFunction":
        vals = [0] * len(group.conjugacy_classes())
        vals[group.class_of(0)] = group.order
        return ClassFunction(group, vals)

    # -- evaluation -------------------------------------------------------------
    def value_at(self, elem_idx: int) -> Cyclotomic:
        return self.values[self.group.class_of(elem_idx)]

    def degree(self) -> Cyclotomic:
        return self.value_at(0)

    # -- pointwise algebra --------------------------------------------------------
    def _check(self, other: "ClassFunction"):
        if self.group is not other.group:
            raise GroupMismatch("class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c) -> "ClassFunction":
        return ClassFunction(self.group, [v * Fraction(c) for v in self.values])

    def tensor(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction) or self.group is not other.group:
            return False
        return all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None

    def __repr__(self) -> str:
        return f"ClassFunction({[repr(v) for v in self.values]})"

    def json_value(self) -> list[dict]:
        classes = self.group.conjugacy_classes()
        out = []
        for cls, val in zip(classes, self.values):
            rep = self.group.elements[cls[0]]
            out.append(
                {"class_representative": format_cycles(rep), "value": val.json_value()}
            )
        return out


class LinearCharacter:
    """A degree-1 character of a subgroup, stored as an exponent map.

    chi(h) = zeta_M^{exps[h]} where M is the exponent of H^{ab} and exps is
    indexed by the member's position in the handle's sorted member list.
    """

    def __init__(self, handle: SubgroupHandle, modulus: int, exps: dict[int, int]):
        self.handle = handle
        self.modulus = max(1, modulus)
        self.exps = {k: v % self.modulus for k, v in exps.items()}
        if set(self.exps) != set(handle.members):
            raise MalformedCharacter("exponent map does not cover the subgroup")
        G = handle.parent
        for a in handle.gen_indices:
            for b in handle.gen_indices:
                ab = G.mul(a, b)
                if (self.exps[a] + self.exps[b] - self.exps[ab]) % self.modulus:
                    raise MalformedCharacter("exponent map is not multiplicative")

    def exponent_of(self, parent_idx: int) -> int:
        return self.exps[parent_idx]

    def value_of(self, parent_idx: int) -> Cyclotomic:
        return Cyclotomic.root_of_unity(self.modulus, self.exps[parent_idx])

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exps.values())

    def conjugate(self) -> "LinearCharacter":
        return LinearCharacter(
            self.handle, self.modulus, {k: -v for k, v in self.exps.items()}
        )

    def as_class_function(self) -> ClassFunction:
        own = self.handle.as_group()
        vals = []
        for cls in own.conjugacy_classes():
            pidx = self.handle.to_parent_index(cls[0])
            vals.append(self.value_of(pidx))
        return ClassFunction(own, vals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCharacter):
            return False
        if self.handle.members != other.handle.members:
            return False
        m = lcm(self.modulus, other.modulus)
        return all(
            (self.exps[k] * (m // self.modulus)) % m
            == (other.exps[k] * (m // other.modulus)) % m
            for k in self.exps
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearCharacter(mod {self.modulus} on subgroup of order {self.handle.order})"


def trivial_character(handle: SubgroupHandle) -> LinearCharacter:
    return LinearCharacter(handle, 1, {m: 0 for m in handle.members})


def linear_characters(handle: SubgroupHandle) -> list[LinearCharacter]:
    """All degree-1 characters of H, trivial first, in a deterministic order.

    Characters of H are characters of H/[H,H]; the abelian quotient is
    decomposed into independent cyclic factors and every exponent tuple on
    those factors gives one character.
    """
    quo, _ = abelianization(handle)
    basis, coords = abelian_basis(quo)
    if not basis:
        return [trivial_character(handle)]
    M = lcm(*(o for _, o in basis))
    member_coords = {m: coords[quo.project(m)] for m in handle.members}
    out = []
    for tup in product(*(range(o) for _, o in basis)):
        exps = {}
        for m, cvec in member_coords.items():
            e = 0
            for t, (_, o), c in zip(tup, basis, cvec):
                e += t * c * (M // o)
            exps[m] = e % M
        out.append(LinearCharacter(handle, M, exps))
    count = 1
    for _, o in basis:
        count *= o
    assert len(out) == count == quo.order, "character count must equal |H^{ab}|"
    assert out[0].is_trivial()
    return out


# ---------------------------------------------------------------------------
# Induction / restriction / inner products
# ---------------------------------------------------------------------------


def _as_class_function(chi, handle: SubgroupHandle) -> ClassFunction:
    if isinstance(chi, LinearCharacter):
        if chi.handle.members != handle.members or chi.handle.parent is not handle.parent:
            raise GroupMismatch("linear character is attached to a different subgroup")
        own = handle.as_group()
        vals = [
            chi.value_of(handle.to_parent_index(cls[0]))
            for cls in own.conjugacy_classes()
        ]
        return ClassFunction(own, vals)
    if isinstance(chi, ClassFunction):
        if chi.group is not handle.as_group():
            raise GroupMismatch("class function is not defined on this subgroup")
        return chi
    raise TypeError(f"not a character: {chi!r}")


def induce(chi, handle: SubgroupHandle) -> ClassFunction:
    """Ind_H^G chi as a class function on the parent group.

    Ind chi(g) = |C_G(g)| / |H| * sum of chi over [g] intersect H.
    """
    G = handle.parent
    f = _as_class_function(chi, handle)
    own = handle.as_group()
    values = []
    for cls in G.conjugacy_classes():
        hits = [t for t in cls if handle.contains(t)]
        if hits:
            total = cyclo_sum(
                f.values[own.class_of(handle.to_own_index(t))] for t in hits
            )
            scale = Fraction(G.centralizer_order(cls[0]), handle.order)
            values.append(total * scale)
        else:
            values.append(Cyclotomic.zero())
    out = ClassFunction(G, values)
    expected_degree = f.degree() * Fraction(handle.index_in_parent)
    assert out.degree() == expected_degree, "induced degree must be [G:H] * deg(chi)"
    return out


def restrict(f: ClassFunction, handle: SubgroupHandle) -> ClassFunction:
    """Res_H^G f as a class function on the subgroup's own group."""
    if f.group is not handle.parent:
        raise GroupMismatch("class function is not defined on the parent group")
    own = handle.as_group()
    vals = [f.value_at(handle.to_parent_index(cls[0])) for cls in own.conjugacy_classes()]
    return ClassFunction(own, vals)


def inner_product(f1: ClassFunction, f2: ClassFunction) -> Fraction:
    """<f1, f2> = (1/|G|) sum over G of f1(g) * conj(f2(g)), exact.

    The result of a character inner product is a rational integer; returning
    Fraction keeps intermediate class-function inner products exact too.
    """
    if f1.group is not f2.group:
        raise GroupMismatch("inner product across different groups")
    G = f1.group
    total = Cyclotomic.zero()
    for cls, a, b in zip(G.conjugacy_classes(), f1.values, f2.values):
        total = total + a * b.conjugate() * Fraction(len(cls))
    val = total * Fraction(1, G.order)
    if not val.is_rational():
        raise MalformedCharacter("inner product of class functions is not rational")
    return val.to_rational()


def mackey_inner(
    G: FiniteGroup,
    h1: SubgroupHandle,
    h2: SubgroupHandle,
    chi1,
    chi2,
    cross_check: bool | None = None,
) -> Fraction:
    """<Ind_{H1} chi1, Ind_{H2} chi2>_G by double-coset decomposition.

    For each double coset H2 s H1 the contribution is the inner product over
    K = H2 and s H1 s^{-1} of (s . chi1) with chi2, where (s . chi1)(x) =
    chi1(s^{-1} x s).  On groups of order <= 1000 the value is re-derived by
    explicit induction and asserted equal.
    """
    if h1.parent is not G or h2.parent is not G:
        raise GroupMismatch("subgroups do not belong to this group")
    f1 = _as_class_function(chi1, h1)
    f2 = _as_class_function(chi2, h2)
    own1, own2 = h1.as_group(), h2.as_group()
    total = Fraction(0)
    for s, _size in double_cosets(G, h2, h1):
        sinv = G.inv(s)
        members_k = [
            x for x in h2.members if h1.contains(G.mul(G.mul(sinv, x), s))
        ]
        acc = Cyclotomic.zero()
        for x in members_k:
            t = G.mul(G.mul(sinv, x), s)
            v1 = f1.values[own1.class_of(h1.to_own_index(t))]
            v2 = f2.values[own2.class_of(h2.to_own_index(x))]
            acc = acc + v1 * v2.conjugate()
        term = acc * Fraction(1, len(members_k))
        if not term.is_rational():
            raise MalformedCharacter("double-coset term is not rational")
        total += term.to_rational()
    if cross_check is None:
        cross_check = G.order <= CROSS_CHECK_ORDER_BOUND
    if cross_check:
        direct = inner_product(induce(f1, h1), induce(f2, h2))
        assert total == direct, (
            f"double-coset inner product {total} disagrees with direct value {direct}"
        )
    return total
