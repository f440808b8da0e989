"""Explicit G-modules: one invertible matrix per group generator, over the
rationals or a prime field F_ell with ell coprime to |G|.

The text format is:

    field Q          (or: field F5)
    dim 3
    # one d x d matrix per group generator, row-major, d rows of d entries
    4 2 4
    0 0 2
    0 3 0
    ...

Entries are rationals (``3`` or ``-1/2``) for Q and residues for F_ell.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import EllDividesOrder, FieldMismatch, ParseError
from .groups import FiniteGroup, SubgroupHandle
from .linalg import (
    mat_mul_frac,
    mat_mul_mod,
    mat_vec_frac,
    mat_vec_mod,
    rank_frac,
    rank_mod,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class GModule:
    """A representation of a FiniteGroup given by generator matrices.

    field is "Q" or "F<ell>".  Matrices for all |G| elements are built once
    along the group's generator words and the homomorphism property is
    spot-checked on every generator pair and on |G| seeded random pairs.
    """

    def __init__(self, group: FiniteGroup, field: str, matrices,
                 allow_modular: bool = False, dim: int | None = None):
        self.group = group
        if field == "Q":
            self.ell = None
        elif field.startswith("F"):
            ell = int(field[1:])
            if not _is_prime(ell):
                raise ParseError(f"field F{ell}: {ell} is not prime")
            if group.order % ell == 0 and not allow_modular:
                raise EllDividesOrder(
                    f"ell = {ell} divides |G| = {group.order}; "
                    "the coprime theory does not apply (pass allow_modular "
                    "to hold Brauer-character data anyway)"
                )
            self.ell = ell
        else:
            raise ParseError(f"unknown field tag {field!r}")
        self.field = field
        gens = group.generator_indices()
        if len(matrices) != len(gens):
            raise ParseError(
                f"expected {len(gens)} generator matrices, got {len(matrices)}"
            )
        if matrices:
            d = len(matrices[0])
            if dim is not None and dim != d:
                raise ParseError(f"declared dim {dim} != matrix size {d}")
        elif dim is not None:  # a group with no generators (the trivial group)
            d = dim
        else:
            raise ParseError("a generator-free module needs an explicit dim")
        if d < 1:
            raise ParseError("module dimension must be positive")
        for m in matrices:
            if len(m) != d or any(len(row) != d for row in m):
                raise ParseError("generator matrices must be square, same size")
        self.dim = d
        self.gen_matrices = [self._clean(m) for m in matrices]
        for m in self.gen_matrices:
            if self._rank(m) != d:
                raise ParseError("generator matrix is singular")
        # matrix for every element, following the BFS words of the group
        mats: list[list[list]] = [self._identity()]
        for i in range(1, group.order):
            parent, gen_no = group._parent[i]
            mats.append(self._mul(mats[parent], self.gen_matrices[gen_no]))
        self.element_matrices = mats
        self.modular = self.ell is not None and group.order % self.ell == 0
        self._spot_check()

    # -- field-dispatching helpers -------------------------------------------
    def _clean(self, m):
        if self.ell is None:
            return [[Fraction(x) for x in row] for row in m]
        return [[int(x) % self.ell for x in row] for row in m]

    def _identity(self):
        one = Fraction(1) if self.ell is None else 1
        zero = Fraction(0) if self.ell is None else 0
        return [
            [one if i == j else zero for j in range(self.dim)]
            for i in range(self.dim)
        ]

    def _mul(self, a, b):
        if self.ell is None:
            return mat_mul_frac(a, b)
        return mat_mul_mod(a, b, self.ell)

    def _rank(self, rows):
        if self.ell is None:
            return rank_frac([list(r) for r in rows])
        return rank_mod([list(r) for r in rows], self.ell)

    def rank(self, rows):
        return self._rank(rows)

    def _spot_check(self):
        G = self.group
        gens = G.generator_indices()
        pairs = [(a, b) for a in gens for b in gens]
        rng = random.Random(1729 + G.order)
        pairs += [
            (rng.randrange(G.order), rng.randrange(G.order))
            for _ in range(G.order)
        ]
        for a, b in pairs:
            left = self._mul(self.element_matrices[a], self.element_matrices[b])
            if left != self.element_matrices[G.mul(a, b)]:
                raise ParseError(
                    "matrices do not define a homomorphism "
                    f"(failed at element pair {a}, {b})"
                )

    # -- public API ------------------------------------------------------------
    def matrix_of(self, g_idx: int):
        return self.element_matrices[g_idx]

    def act(self, g_idx: int, vec):
        if self.ell is None:
            return tuple(mat_vec_frac(self.element_matrices[g_idx], list(vec)))
        return tuple(mat_vec_mod(self.element_matrices[g_idx], list(vec), self.ell))

    def trace_of(self, g_idx: int):
        m = self.element_matrices[g_idx]
        total = sum(m[i][i] for i in range(self.dim))
        return total if self.ell is None else total % self.ell

    def restrict(self, handle: SubgroupHandle) -> "GModule":
        """The same matrices read as a module over the subgroup's own group."""
        if handle.parent is not self.group:
            raise FieldMismatch("subgroup belongs to a different group")
        own = handle.as_group()
        mats = [
            self.element_matrices[handle.to_parent_index(own.index[g.images])]
            for g in own.generators
        ]
        return GModule(own, self.field, mats, allow_modular=True)

    def direct_sum(self, other: "GModule") -> "GModule":
        if other.group is not self.group or other.field != self.field:
            raise FieldMismatch("direct sum needs the same group and field")
        zero = Fraction(0) if self.ell is None else 0
        mats = []
        for ga, gb in zip(self.gen_matrices, other.gen_matrices):
            d = self.dim + other.dim
            m = [[zero] * d for _ in range(d)]
            for i in range(self.dim):
                for j in range(self.dim):
                    m[i][j] = ga[i][j]
            for i in range(other.dim):
                for j in range(other.dim):
                    m[self.dim + i][self.dim + j] = gb[i][j]
            mats.append(m)
        return GModule(self.group, self.field, mats, allow_modular=True)

    def __repr__(self):
        return f"GModule(dim={self.dim}, field={self.field}, |G|={self.group.order})"


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def trivial_module(G: FiniteGroup, field: str, dim: int = 1) -> GModule:
    mats = []
    one = 1 if field != "Q" else Fraction(1)
    zero = 0 if field != "Q" else Fraction(0)
    eye = [[one if i == j else zero for j in range(dim)] for i in range(dim)]
    for _ in G.generator_indices():
        mats.append([row[:] for row in eye])
    return GModule(G, field, mats, dim=dim)


def regular_module(G: FiniteGroup, field: str) -> GModule:
    """The left regular representation: g sends e_x to e_{gx}."""
    one = 1 if field != "Q" else Fraction(1)
    zero = 0 if field != "Q" else Fraction(0)
    mats = []
    for g in G.generator_indices():
        m = [[zero] * G.order for _ in range(G.order)]
        for x in range(G.order):
            m[G.mul(g, x)][x] = one
        mats.append(m)
    return GModule(G, field, mats, dim=G.order)


def permutation_module(G: FiniteGroup, handle: SubgroupHandle, field: str) -> GModule:
    """The coset permutation module on G/H (the induced trivial module)."""
    cs = G.cosets(handle)
    one = 1 if field != "Q" else Fraction(1)
    zero = 0 if field != "Q" else Fraction(0)
    mats = []
    for g in G.generator_indices():
        sigma = cs.act(g)
        m = [[zero] * cs.n for _ in range(cs.n)]
        for i in range(cs.n):
            m[sigma[i]][i] = one
        mats.append(m)
    return GModule(G, field, mats, dim=cs.n)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def parse_gmodule(text: str, G: FiniteGroup) -> GModule:
    field = None
    dim = None
    numbers: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "field":
            if len(parts) != 2 or field is not None:
                raise ParseError(f"line {lineno}: malformed field declaration")
            field = parts[1]
        elif parts[0] == "dim":
            if len(parts) != 2 or dim is not None:
                raise ParseError(f"line {lineno}: malformed dim declaration")
            try:
                dim = int(parts[1])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad dimension") from exc
            if dim < 1:
                raise ParseError(f"line {lineno}: dimension must be positive")
        else:
            numbers.extend(parts)
    if field is None or dim is None:
        raise ParseError("module file needs 'field' and 'dim' headers")
    n_gens = len(G.generator_indices())
    need = n_gens * dim * dim
    if len(numbers) != need:
        raise ParseError(
            f"expected {need} matrix entries ({n_gens} matrices of size "
            f"{dim}x{dim}), found {len(numbers)}"
        )

    def entry(tok: str):
        try:
            if field == "Q":
                return Fraction(tok)
            return int(tok)
        except ValueError as exc:
            raise ParseError(f"bad matrix entry {tok!r}") from exc

    vals = [entry(t) for t in numbers]
    mats = []
    at = 0
    for _ in range(n_gens):
        m = [vals[at + r * dim : at + (r + 1) * dim] for r in range(dim)]
        mats.append(m)
        at += dim * dim
    return GModule(G, field, mats, dim=dim)


def format_gmodule(module: GModule) -> str:
    lines = [f"field {module.field}", f"dim {module.dim}"]
    for k, m in enumerate(module.gen_matrices):
        lines.append(f"# generator {k}")
        for row in m:
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"
