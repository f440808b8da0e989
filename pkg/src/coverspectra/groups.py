"""Finite permutation groups with exact combinatorial structure.

Conventions used throughout the package:

* permutations act on 0-based points; (p * q) means "apply q first, then p";
* group elements are stored as image tuples, enumerated by breadth-first
  search over right-multiplication by generators with the identity first, so
  element order is deterministic for a fixed generator list;
* a subgroup is a handle into its parent group (sorted member indices), and
  left cosets gH are represented by their minimal element index, listed in
  increasing order of that representative (the identity coset comes first).
"""
from __future__ import annotations

import re
from math import factorial, gcd, lcm

from .errors import CapExceeded, DegreeMismatch, GroupMismatch, NotSubgroup, ParseError

ENUMERATION_CAP = 2**20

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A permutation of {0, ..., degree-1} stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(degree: int, cycles: list[list[int]]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree:
                    raise ParseError(f"point {pt} out of range for degree {degree}")
            if len(set(cyc)) != len(cyc):
                raise ParseError(f"repeated point in cycle {cyc}")
            for i, pt in enumerate(cyc):
                images[pt] = cyc[(i + 1) % len(cyc)]
        return Permutation(images)

    @staticmethod
    def parse(text: str, degree: int) -> "Permutation":
        """Parse cycle notation like ``(0 1)(2 4 3)``; ``()`` is the identity."""
        text = text.strip()
        if not text:
            raise ParseError("empty permutation")
        stripped = text.replace(" ", "")
        if stripped == "()":
            return Permutation.identity(degree)
        leftover = _CYCLE_RE.sub("", text).strip()
        if leftover:
            raise ParseError(f"cannot parse permutation {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            pts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
            if not pts:
                continue
            try:
                cycles.append([int(p) for p in pts])
            except ValueError as exc:
                raise ParseError(f"bad point in cycle ({body})") from exc
        return Permutation.from_cycles(degree, cycles)

    def cycles(self, *, include_fixed: bool = False) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cyc) > 1 or include_fixed:
                out.append(cyc)
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        o = other.images
        s = self.images
        return Permutation(tuple(s[o[i]] for i in range(len(s))))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(inv)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self.images)})"

    def __str__(self) -> str:
        return format_cycles(self.images)


def format_cycles(images: tuple[int, ...]) -> str:
    perm = Permutation(images)
    cycs = perm.cycles()
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Image tuple of p*q (apply q first)."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, img in enumerate(p):
        inv[img] = i
    return tuple(inv)


class FiniteGroup:
    """A finite permutation group enumerated from generators."""

    def __init__(self, degree: int, generators: list[Permutation], *, cap: int = ENUMERATION_CAP):
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator degree {g.degree} does not match group degree {degree}"
                )
        self.degree = degree
        self.generators = [g for g in generators if g.images != tuple(range(degree))]
        gens = [g.images for g in self.generators]
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        parent: list[tuple[int, int]] = [(-1, -1)]
        head = 0
        while head < len(elements):
            x = elements[head]
            for gi, g in enumerate(gens):
                y = compose(x, g)
                if y not in index:
                    if len(elements) >= cap:
                        raise CapExceeded(f"group enumeration exceeded cap {cap}")
                    index[y] = len(elements)
                    elements.append(y)
                    parent.append((head, gi))
            head += 1
        self.elements: list[tuple[int, ...]] = elements
        self.index: dict[tuple[int, ...], int] = index
        self._parent = parent
        self.order = len(elements)
        self._inverses: list[int] | None = None
        self._classes: list[list[int]] | None = None
        self._class_of: list[int] | None = None
        self._coset_cache: dict[tuple[int, ...], "CosetSpace"] = {}

    # -- basic element operations -------------------------------------------
    def mul(self, i: int, j: int) -> int:
        return self.index[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        if self._inverses is None:
            self._inverses = [self.index[invert(x)] for x in self.elements]
        return self._inverses[i]

    def conj(self, g: int, x: int) -> int:
        """Index of g x g^{-1}."""
        return self.index[
            compose(compose(self.elements[g], self.elements[x]), invert(self.elements[g]))
        ]

    def element(self, i: int) -> Permutation:
        return Permutation(self.elements[i])

    def element_order(self, i: int) -> int:
        return Permutation(self.elements[i]).order()

    def generator_indices(self) -> list[int]:
        return [self.index[g.images] for g in self.generators]

    def word(self, i: int) -> list[int]:
        """Generator indices whose left-to-right product is element i."""
        out: list[int] = []
        while i != 0:
            p, g = self._parent[i]
            out.append(g)
            i = p
        out.reverse()
        return out

    def is_abelian(self) -> bool:
        gens = self.generator_indices()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def exponent(self) -> int:
        return lcm(*(self.element_order(i) for i in range(self.order)))

    # -- conjugacy classes ----------------------------------------------------
    def conjugacy_classes(self) -> list[list[int]]:
        if self._classes is None:
            gens = self.generator_indices()
            seen = [False] * self.order
            classes: list[list[int]] = []
            class_of = [-1] * self.order
            for start in range(self.order):
                if seen[start]:
                    continue
                orbit = [start]
                seen[start] = True
                queue = [start]
                while queue:
                    x = queue.pop()
                    for g in gens:
                        y = self.conj(g, x)
                        if not seen[y]:
                            seen[y] = True
                            orbit.append(y)
                            queue.append(y)
                orbit.sort()
                ci = len(classes)
                classes.append(orbit)
                for x in orbit:
                    class_of[x] = ci
            self._classes = classes
            self._class_of = class_of
        return self._classes

    def class_of(self, i: int) -> int:
        self.conjugacy_classes()
        assert self._class_of is not None
        return self._class_of[i]

    def centralizer_order(self, i: int) -> int:
        cls = self.conjugacy_classes()[self.class_of(i)]
        return self.order // len(cls)

    # -- subgroups ------------------------------------------------------------
    def subgroup(self, generators: list[Permutation]) -> "SubgroupHandle":
        for g in generators:
            if g.images not in self.index:
                raise NotSubgroup(f"generator {g} is not an element of the group")
        gen_idx = [self.index[g.images] for g in generators]
        members = self._closure(gen_idx)
        return SubgroupHandle(self, members, gen_idx)

    def subgroup_from_indices(self, gen_indices: list[int]) -> "SubgroupHandle":
        members = self._closure(gen_indices)
        return SubgroupHandle(self, members, list(gen_indices))

    def subgroup_from_members(self, member_indices) -> "SubgroupHandle":
        members = sorted(set(member_indices))
        if 0 not in members:
            raise NotSubgroup("member set does not contain the identity")
        mset = set(members)
        for a in members:
            if self.inv(a) not in mset:
                raise NotSubgroup("member set not closed under inversion")
        gens = self._greedy_generators(members)
        if len(self._closure(gens)) != len(members):
            raise NotSubgroup("member set not closed under multiplication")
        return SubgroupHandle(self, members, gens)

    def trivial_subgroup(self) -> "SubgroupHandle":
        return SubgroupHandle(self, [0], [])

    def full_subgroup(self) -> "SubgroupHandle":
        return SubgroupHandle(self, list(range(self.order)), self.generator_indices())

    def _closure(self, gen_indices: list[int]) -> list[int]:
        members = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gen_indices:
                y = self.mul(x, g)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return sorted(members)

    def _greedy_generators(self, members: list[int]) -> list[int]:
        gens: list[int] = []
        have = {0}
        for m in members:
            if m not in have:
                gens.append(m)
                have = set(self._closure(gens))
                if len(have) == len(members):
                    break
        return gens

    # -- cosets ----------------------------------------------------------------
    def cosets(self, handle: "SubgroupHandle") -> "CosetSpace":
        key = tuple(handle.members)
        if key not in self._coset_cache:
            self._coset_cache[key] = CosetSpace(self, handle)
        return self._coset_cache[key]


class SubgroupHandle:
    """A subgroup of a fixed parent group, stored as sorted member indices."""

    def __init__(self, parent: FiniteGroup, members: list[int], gen_indices: list[int]):
        self.parent = parent
        self.members = tuple(sorted(members))
        self.member_set = frozenset(members)
        self.gen_indices = list(gen_indices)
        self.order = len(self.members)
        if parent.order % self.order:
            raise NotSubgroup("Lagrange violated: subgroup size does not divide group order")
        self._own: FiniteGroup | None = None
        self._own_map: dict[int, int] | None = None

    @property
    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    def contains(self, elem_idx: int) -> bool:
        return elem_idx in self.member_set

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup on the same points."""
        if self._own is None:
            gens = [Permutation(self.parent.elements[i]) for i in self.gen_indices]
            own = FiniteGroup(self.parent.degree, gens)
            if own.order != self.order:
                raise NotSubgroup("generator closure disagrees with member list")
            self._own = own
            self._own_map = {self.parent.index[x]: k for k, x in enumerate(own.elements)}
        return self._own

    def to_own_index(self, parent_idx: int) -> int:
        self.as_group()
        assert self._own_map is not None
        return self._own_map[parent_idx]

    def to_parent_index(self, own_idx: int) -> int:
        own = self.as_group()
        return self.parent.index[own.elements[own_idx]]

    def conjugate_by(self, g_idx: int) -> "SubgroupHandle":
        G = self.parent
        members = sorted(G.conj(g_idx, m) for m in self.members)
        gens = [G.conj(g_idx, m) for m in self.gen_indices]
        return SubgroupHandle(G, members, gens)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupHandle)
            and self.parent is other.parent
            and self.members == other.members
        )

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"SubgroupHandle(order={self.order}, index={self.index_in_parent})"


class CosetSpace:
    """Left cosets gH of a subgroup, with the induced action and cocycle."""

    def __init__(self, G: FiniteGroup, handle: SubgroupHandle):
        self.group = G
        self.handle = handle
        coset_of = [-1] * G.order
        reps: list[int] = []
        for x in range(G.order):
            if coset_of[x] >= 0:
                continue
            ci = len(reps)
            reps.append(x)
            for h in handle.members:
                coset_of[G.mul(x, h)] = ci
        # Elements were scanned in index order, so each coset is discovered at
        # its minimal element, reps are increasing, and rep 0 is the identity.
        self.reps = reps
        self.coset_of = coset_of
        self.n = len(reps)
        self._action_cache: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}

    def act(self, g_idx: int) -> tuple[int, ...]:
        return self.action_with_cocycle(g_idx)[0]

    def action_with_cocycle(self, g_idx: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(sigma, h) with g * rep_i = rep_{sigma(i)} * h_i and h_i in H."""
        cached = self._action_cache.get(g_idx)
        if cached is not None:
            return cached
        G = self.group
        sigma = []
        coc = []
        for rep in self.reps:
            y = G.mul(g_idx, rep)
            ci = self.coset_of[y]
            sigma.append(ci)
            coc.append(G.mul(G.inv(self.reps[ci]), y))
        out = (tuple(sigma), tuple(coc))
        self._action_cache[g_idx] = out
        return out

    def orbits_of(self, handle: SubgroupHandle) -> list[list[int]]:
        """Orbits of a subgroup (given by its generators) on the coset points."""
        gens = handle.gen_indices
        seen = [False] * self.n
        orbits = []
        for start in range(self.n):
            if seen[start]:
                continue
            orb = [start]
            seen[start] = True
            queue = [start]
            while queue:
                i = queue.pop()
                for g in gens:
                    j = self.act(g)[i]
                    if not seen[j]:
                        seen[j] = True
                        orb.append(j)
                        queue.append(j)
            orbits.append(sorted(orb))
        return orbits


# ---------------------------------------------------------------------------
# Derived subgroup / abelianization
# ---------------------------------------------------------------------------


def derived_subgroup(handle: SubgroupHandle) -> SubgroupHandle:
    """Commutator subgroup of H: normal closure in H of generator commutators."""
    G = handle.parent
    gens = handle.gen_indices if handle.gen_indices else [0]
    comms = set()
    for a in gens:
        for b in gens:
            c = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
            comms.add(c)
    comms.discard(0)
    # Normal closure under conjugation by H generators, then subgroup closure.
    closure = set(comms)
    frontier = list(comms)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.conj(g, x)
            if y not in closure:
                closure.add(y)
                frontier.append(y)
    sub = {0}
    frontier = [0]
    gen_list = sorted(closure)
    while frontier:
        x = frontier.pop()
        for g in gen_list:
            y = G.mul(x, g)
            if y not in sub:
                sub.add(y)
                frontier.append(y)
    members = sorted(sub)
    gens_d = FiniteGroup._greedy_generators(G, members)
    return SubgroupHandle(G, members, gens_d)


class QuotientGroup:
    """H/N for N normal in H, as an abstract multiplication on coset indices."""

    def __init__(self, handle: SubgroupHandle, normal: SubgroupHandle):
        G = handle.parent
        self.handle = handle
        members = handle.members
        coset_of: dict[int, int] = {}
        reps: list[int] = []
        for x in members:
            if x in coset_of:
                continue
            ci = len(reps)
            reps.append(x)
            for nmem in normal.members:
                coset_of[G.mul(x, nmem)] = ci
        self.reps = reps
        self.coset_of = coset_of
        self.order = len(reps)
        self._G = G

    def mul(self, i: int, j: int) -> int:
        return self.coset_of[self._G.mul(self.reps[i], self.reps[j])]

    def inv(self, i: int) -> int:
        return self.coset_of[self._G.inv(self.reps[i])]

    def project(self, elem_idx: int) -> int:
        return self.coset_of[elem_idx]

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != 0:
            cur = self.mul(cur, i)
            k += 1
        return k


def abelian_divisors(orders: list[int]) -> list[int]:
    """Elementary divisors d_1 | d_2 | ... of an abelian group from its element orders.

    For each prime p, the multiset of exponents {e_i} with p-part
    prod Z/p^{e_i} is recovered from the counts s_k = log_p #{x : x^{p^k} = e}
    via #{i : e_i >= k} = s_k - s_{k-1}.
    """
    n = len(orders)
    if n == 1:
        return []
    primes: set[int] = set()
    for d in orders:
        dd, p = d, 2
        while dd > 1:
            if dd % p == 0:
                primes.add(p)
                while dd % p == 0:
                    dd //= p
            p += 1 if p == 2 else 2
    per_prime: dict[int, list[int]] = {}
    for p in sorted(primes):
        tks: list[int] = []  # tks[k-1] = number of cyclic p-factors with e_i >= k
        prev_s = 0
        k = 1
        while True:
            pk = p**k
            count = sum(1 for d in orders if pk % d == 0)
            sk = 0
            while p**sk < count:
                sk += 1
            assert p**sk == count, "element-order counts inconsistent with an abelian group"
            if sk == prev_s:
                break
            tks.append(sk - prev_s)
            prev_s = sk
            k += 1
        nfac = tks[0] if tks else 0
        exps = [sum(1 for t in tks if t > j) for j in range(nfac)]  # descending
        per_prime[p] = exps
    nfac = max(len(v) for v in per_prime.values())
    chain_desc = []
    for j in range(nfac):
        d = 1
        for p, exps in per_prime.items():
            if j < len(exps):
                d *= p ** exps[j]
        chain_desc.append(d)
    return list(reversed(chain_desc))


def abelianization(handle: SubgroupHandle) -> tuple[QuotientGroup, list[int]]:
    """(H / [H,H], elementary divisor chain d_1 | d_2 | ... with prod = |H^{ab}|)."""
    derived = derived_subgroup(handle)
    quo = QuotientGroup(handle, derived)
    orders = [quo.element_order(i) for i in range(quo.order)]
    return quo, abelian_divisors(orders)


def abelian_basis(quo: QuotientGroup) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Independent cyclic generators of an abelian quotient plus all coordinates.

    Returns (basis, coords) where basis is a list of (element index, order)
    with Q = prod <b_i>, and coords[q] are the exponents of q on that basis.
    Greedy is sound here: if the current span S is a direct summand and c has
    maximal order among elements with <c> meeting S trivially, then the
    complement-component k of c has order(k) = order(c) maximal in the
    complement, so <k> splits off and S + <c> is again a direct summand.
    """
    n = quo.order
    if n == 1:
        return [], [[]]
    orders = [quo.element_order(i) for i in range(n)]
    basis: list[tuple[int, int]] = []
    # span[elem] = coordinates over current basis, grown incrementally.
    span: dict[int, tuple[int, ...]] = {0: ()}
    for _ in range(n):
        if len(span) == n:
            break
        candidates = sorted(
            (i for i in range(n) if i not in span),
            key=lambda i: (-orders[i], i),
        )
        chosen = None
        for cand in candidates:
            # <cand> must meet the current span only at the identity.
            cur, k = cand, 1
            ok = True
            while cur != 0:
                if cur in span and cur != 0:
                    ok = False
                    break
                cur = quo.mul(cur, cand)
                k += 1
            if ok:
                chosen = (cand, orders[cand])
                break
        assert chosen is not None, "abelian basis extension failed"
        bi, bo = chosen
        new_span: dict[int, tuple[int, ...]] = {}
        cur = 0
        for e in range(bo):
            for elem, coords in span.items():
                new_span[quo.mul(elem, cur)] = coords + (e,)
            cur = quo.mul(cur, bi)
        span = new_span
        basis.append((bi, bo))
    assert len(span) == n
    coords = [[0] * len(basis) for _ in range(n)]
    for elem, cvec in span.items():
        coords[elem] = list(cvec)
    return basis, coords


# ---------------------------------------------------------------------------
# Normal core, conjugacy of subgroups, double cosets
# ---------------------------------------------------------------------------


def normal_core(G: FiniteGroup, handle: SubgroupHandle) -> SubgroupHandle:
    """Largest normal subgroup of G inside H, computed two independent ways."""
    if handle.parent is not G:
        raise GroupMismatch("subgroup does not belong to this group")
    cosets = G.cosets(handle)
    # Route 1: intersection of the conjugates g H g^{-1} over coset representatives.
    inter = set(handle.members)
    for rep in cosets.reps[1:]:
        inter &= {G.conj(rep, m) for m in handle.members}
    # Route 2: kernel of the coset action.
    ident = tuple(range(cosets.n))
    kernel = {x for x in range(G.order) if cosets.act(x) == ident}
    assert inter == kernel, "normal core routes disagree"
    core = G.subgroup_from_members(sorted(kernel))
    assert G.order // core.order <= factorial(cosets.n), "core index exceeds n!"
    return core


def are_conjugate_subgroups(
    G: FiniteGroup, h1: SubgroupHandle, h2: SubgroupHandle
) -> Permutation | None:
    """A g with g H1 g^{-1} = H2, or None; deterministic first find."""
    if h1.parent is not G or h2.parent is not G:
        raise GroupMismatch("subgroups do not belong to this group")
    if h1.order != h2.order:
        return None
    target = h2.member_set
    for g in range(G.order):
        if all(G.conj(g, m) in target for m in h1.gen_indices):
            if {G.conj(g, m) for m in h1.members} == target:
                return G.element(g)
    return None


def double_cosets(
    G: FiniteGroup, left: SubgroupHandle, right: SubgroupHandle
) -> list[tuple[int, int]]:
    """The double cosets (left) g (right) as (min-element representative, size)."""
    if left.parent is not G or right.parent is not G:
        raise GroupMismatch("subgroups do not belong to this group")
    cache = getattr(G, "_double_coset_cache", None)
    if cache is None:
        cache = {}
        G._double_coset_cache = cache
    key = (left.members, right.members)
    if key in cache:
        return cache[key]
    seen = [False] * G.order
    out = []
    for x in range(G.order):
        if seen[x]:
            continue
        block = set()
        for a in left.members:
            ax = G.mul(a, x)
            for b in right.members:
                block.add(G.mul(ax, b))
        for y in block:
            seen[y] = True
        out.append((x, len(block)))
    assert sum(size for _, size in out) == G.order
    cache[key] = out
    return out


# ---------------------------------------------------------------------------
# Group file format
# ---------------------------------------------------------------------------


def parse_group_file(text: str) -> tuple[FiniteGroup, dict[str, SubgroupHandle]]:
    """Parse the group file format.

    Line 1: ``degree d``.  Then one generator per line in cycle notation.
    Blocks headed ``subgroup <name>:`` list generators of named subgroups.
    Blank lines and ``#`` comments are skipped.
    """
    degree: int | None = None
    group_gens: list[Permutation] = []
    sub_order: list[str] = []
    sub_gens: dict[str, list[Permutation]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise ParseError(f"line {lineno}: expected 'degree d', got {line!r}")
            degree = int(m.group(1))
            if degree < 1:
                raise ParseError(f"line {lineno}: degree must be positive")
            continue
        m = re.fullmatch(r"subgroup\s+([\w.-]+)\s*:", line)
        if m:
            current = m.group(1)
            if current in sub_gens:
                raise ParseError(f"line {lineno}: duplicate subgroup {current!r}")
            sub_order.append(current)
            sub_gens[current] = []
            continue
        try:
            perm = Permutation.parse(line, degree)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if current is None:
            group_gens.append(perm)
        else:
            sub_gens[current].append(perm)
    if degree is None:
        raise ParseError("missing 'degree d' header line")
    G = FiniteGroup(degree, group_gens)
    handles: dict[str, SubgroupHandle] = {}
    for name in sub_order:
        try:
            handles[name] = G.subgroup(sub_gens[name])
        except NotSubgroup as exc:
            raise ParseError(f"subgroup {name!r}: {exc}") from exc
    return G, handles


def format_group_file(
    degree: int,
    generators: list[Permutation],
    subgroups: dict[str, list[Permutation]],
) -> str:
    lines = [f"degree {degree}"]
    lines += [str(g) for g in generators]
    for name, gens in subgroups.items():
        lines.append(f"subgroup {name}:")
        lines += [str(g) for g in gens]
    return "\n".join(lines) + "\n"
