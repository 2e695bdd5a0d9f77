"""Finite groups materialized as explicit multiplication tables.

Every group used by this package is small (order <= MAX_GROUP_ORDER), so
we store the full Cayley table as an int32 array.  Element ids are plain
integers 0..order-1 with the identity always at id 0.  A construction tag
records how each group was assembled; later stages (subgroup naming,
representation assembly) rely on these tags instead of re-deriving
structure from the table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ValidationError

# Hard cap on materialized group order; direct products refuse to exceed it.
MAX_GROUP_ORDER = 400


# ---------------------------------------------------------------------------
# construction tags

@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order 2n.

    Element encoding: ids 0..n-1 are the rotations r^a, ids n..2n-1 are
    the reflections r^a * s (s a fixed reflection, s^2 = e, s r s = r^-1).
    """

    n: int


@dataclass(frozen=True)
class Sign:
    """Multiplicative group {+1, -1}; id 0 is +1."""


@dataclass(frozen=True)
class Permutation:
    degree: int


@dataclass(frozen=True)
class Product:
    """Direct product; id of (a, b) is a * right.order + b."""

    left: "FiniteGroup"
    right: "FiniteGroup"


StructureTag = Trivial | Cyclic | Dihedral | Sign | Permutation | Product


# ---------------------------------------------------------------------------
# core group type

@dataclass(eq=False)
class FiniteGroup:
    name: str
    table: np.ndarray
    labels: tuple[str, ...]
    structure: StructureTag
    inverse: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.table = np.ascontiguousarray(self.table, dtype=np.int32)
        n = self.order
        if self.table.shape != (n, n):
            raise ValidationError(f"{self.name}: table shape {self.table.shape} "
                                  f"does not match {n} labels")
        if n > MAX_GROUP_ORDER:
            raise ValidationError(f"{self.name}: order {n} exceeds cap "
                                  f"{MAX_GROUP_ORDER}")
        inv = np.full(n, -1, dtype=np.int32)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        self.inverse = inv

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.table[x, g])
            k += 1
        return k

    def element_orders(self) -> np.ndarray:
        return np.array([self.element_order(g) for g in range(self.order)],
                        dtype=np.int32)

    def conjugate(self, h: int, g: int) -> int:
        """h g h^-1."""
        return int(self.table[self.table[h, g], self.inverse[h]])

    def conjugates_of(self, g: int) -> np.ndarray:
        """All h g h^-1 as h runs over the group (with repetitions)."""
        return self.table[self.table[:, g], self.inverse]

    def conjugation_perm(self, h: int) -> np.ndarray:
        """The permutation g -> h g h^-1 as an id array."""
        return self.table[self.table[h, :], self.inverse[h]]

    def subgroup_generated(self, gens: Sequence[int]) -> np.ndarray:
        """Sorted ids of the subgroup generated by gens."""
        cur = np.unique(np.array([0, *gens], dtype=np.int32))
        while True:
            nxt = np.unique(self.table[np.ix_(cur, cur)])
            if nxt.size == cur.size:
                return nxt
            cur = nxt

    def element_conjugacy_classes(self) -> list[np.ndarray]:
        """Conjugacy classes of elements, each sorted, ordered by least member."""
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for g in range(self.order):
            if seen[g]:
                continue
            orbit = np.unique(self.conjugates_of(g))
            seen[orbit] = True
            classes.append(orbit)
        return classes

    def validate(self) -> None:
        """Full axiom check: Latin square, identity, inverses, associativity."""
        n = self.order
        t = self.table
        if t.min() < 0 or t.max() >= n:
            raise ValidationError(f"{self.name}: table entries out of range")
        ident = np.arange(n, dtype=np.int32)
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            raise ValidationError(f"{self.name}: id 0 is not an identity")
        if not np.all(np.sort(t, axis=1) == ident[None, :]):
            raise ValidationError(f"{self.name}: a row is not a permutation")
        if not np.all(np.sort(t, axis=0) == ident[:, None]):
            raise ValidationError(f"{self.name}: a column is not a permutation")
        if np.any(self.inverse < 0):
            raise ValidationError(f"{self.name}: some element has no inverse")
        if not np.array_equal(t[ident, self.inverse], np.zeros(n, dtype=np.int32)):
            raise ValidationError(f"{self.name}: inverse table inconsistent")
        for a in range(n):
            left = t[t[a, :], :]          # (a b) c
            right = t[a, t]               # a (b c)
            if not np.array_equal(left, right):
                raise ValidationError(f"{self.name}: associativity fails at a={a}")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


# ---------------------------------------------------------------------------
# permutation actions

@dataclass(eq=False)
class PermutationAction:
    """A homomorphism from a group into permutations of {0..degree-1}.

    images[g][i] is the image of point i under element g.  Matrices act on
    vectors by (M(g) x)_i = x_{g^-1(i)}, so M(g) e_j = e_{g(j)} and
    M(g h) = M(g) M(h).
    """

    group: FiniteGroup
    degree: int
    images: np.ndarray

    def __post_init__(self) -> None:
        self.images = np.ascontiguousarray(self.images, dtype=np.int32)
        if self.images.shape != (self.group.order, self.degree):
            raise ValidationError("permutation action shape mismatch")

    def matrix(self, g: int) -> np.ndarray:
        m = np.zeros((self.degree, self.degree))
        m[self.images[g], np.arange(self.degree)] = 1.0
        return m

    def matrices(self) -> np.ndarray:
        out = np.zeros((self.group.order, self.degree, self.degree))
        ar = np.arange(self.degree)
        for g in range(self.group.order):
            out[g, self.images[g], ar] = 1.0
        return out

    def validate(self) -> None:
        n, k = self.group.order, self.degree
        pts = np.arange(k, dtype=np.int32)
        if not np.array_equal(self.images[0], pts):
            raise ValidationError("action: identity does not act trivially")
        for g in range(n):
            if not np.array_equal(np.sort(self.images[g]), pts):
                raise ValidationError(f"action: element {g} is not a permutation")
        for g in range(n):
            # composed[h] = images[g][images[h]] must equal images[g*h]
            composed = self.images[g][self.images]
            if not np.array_equal(composed, self.images[self.group.table[g]]):
                raise ValidationError(f"action: homomorphism fails at g={g}")


# ---------------------------------------------------------------------------
# constructors

def make_trivial() -> FiniteGroup:
    return FiniteGroup("Z1", np.zeros((1, 1), dtype=np.int32), ("e",), Trivial())


def make_cyclic(n: int, name: str | None = None) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group needs n >= 1")
    a = np.arange(n, dtype=np.int32)
    table = (a[:, None] + a[None, :]) % n
    labels = tuple("e" if i == 0 else "t" if i == 1 else f"t^{i}" for i in range(n))
    return FiniteGroup(name or f"Z{n}", table, labels, Cyclic(n))


def make_sign_group() -> FiniteGroup:
    table = np.array([[0, 1], [1, 0]], dtype=np.int32)
    return FiniteGroup("Z2s", table, ("+1", "-1"), Sign())


def _dihedral_table(n: int) -> np.ndarray:
    # id a in 0..n-1 is r^a, id n+a is r^a s with s r s = r^-1
    table = np.zeros((2 * n, 2 * n), dtype=np.int32)
    a = np.arange(n)
    add = (a[:, None] + a[None, :]) % n
    sub = (a[:, None] - a[None, :]) % n
    table[:n, :n] = add                    # r^a r^b = r^(a+b)
    table[:n, n:] = add + n                # r^a (r^b s) = r^(a+b) s
    table[n:, :n] = sub + n                # (r^a s) r^b = r^(a-b) s
    table[n:, n:] = sub                    # (r^a s)(r^b s) = r^(a-b)
    return table


def make_dihedral(n: int, name: str | None = None) -> FiniteGroup:
    """Dihedral group of order 2n (n >= 1; D1 is the order-2 reflection group)."""
    if n < 1:
        raise ValidationError("dihedral group needs n >= 1")
    rot = tuple("e" if i == 0 else "r" if i == 1 else f"r^{i}" for i in range(n))
    ref = tuple("s" if i == 0 else f"r^{i}*s" if i > 1 else "r*s" for i in range(n))
    return FiniteGroup(name or f"D{n}", _dihedral_table(n), rot + ref, Dihedral(n))


def dihedral_rotation_action(group: FiniteGroup) -> PermutationAction:
    """Standard action of D_n on n points: r is i -> i+1, s is i -> -i (mod n)."""
    if not isinstance(group.structure, Dihedral):
        raise ValidationError("dihedral_rotation_action needs a dihedral group")
    n = group.structure.n
    pts = np.arange(n, dtype=np.int32)
    images = np.zeros((2 * n, n), dtype=np.int32)
    for a in range(n):
        images[a] = (pts + a) % n          # r^a
        images[n + a] = (a - pts) % n      # r^a s
    return PermutationAction(group, n, images)


def _cycle_label(perm: Sequence[int]) -> str:
    k = len(perm)
    seen = [False] * k
    parts = []
    for i in range(k):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "e"


def make_permutation_group(degree: int,
                           generators: Sequence[Sequence[int]],
                           name: str = "perm") -> tuple[FiniteGroup, PermutationAction]:
    """Closure of the given permutations of {0..degree-1}.

    Generators are image lists: gen[i] is where point i goes.  Returns the
    abstract group together with its defining action.
    """
    if degree < 1:
        raise ValidationError("permutation degree must be >= 1")
    gens = []
    pts = tuple(range(degree))
    for g in generators:
        t = tuple(int(x) for x in g)
        if sorted(t) != list(pts):
            raise ValidationError(f"not a permutation of 0..{degree - 1}: {g}")
        gens.append(t)
    ident = pts
    elems: dict[tuple[int, ...], int] = {ident: 0}
    order_list = [ident]
    queue = [ident]
    while queue:
        cur = queue.pop(0)
        for g in gens:
            # right multiplication keeps discovery order deterministic
            nxt = tuple(cur[g[i]] for i in range(degree))
            if nxt not in elems:
                if len(elems) >= MAX_GROUP_ORDER:
                    raise ValidationError("permutation group exceeds order cap "
                                          f"{MAX_GROUP_ORDER}")
                elems[nxt] = len(order_list)
                order_list.append(nxt)
                queue.append(nxt)
    n = len(order_list)
    table = np.zeros((n, n), dtype=np.int32)
    for i, p in enumerate(order_list):
        for j, q in enumerate(order_list):
            table[i, j] = elems[tuple(p[q[k]] for k in range(degree))]
    labels = tuple(_cycle_label(p) for p in order_list)
    group = FiniteGroup(name, table, labels, Permutation(degree))
    action = PermutationAction(group, degree, np.array(order_list, dtype=np.int32))
    return group, action


def direct_product(left: FiniteGroup, right: FiniteGroup,
                   name: str | None = None) -> FiniteGroup:
    """Direct product with id(a, b) = a * right.order + b."""
    na, nb = left.order, right.order
    if na * nb > MAX_GROUP_ORDER:
        raise ValidationError(f"product order {na * nb} exceeds cap "
                              f"{MAX_GROUP_ORDER}")
    table = (left.table[:, None, :, None].astype(np.int64) * nb
             + right.table[None, :, None, :]).reshape(na * nb, na * nb)
    labels = tuple(f"({la},{lb})" for la in left.labels for lb in right.labels)
    return FiniteGroup(name or f"{left.name}x{right.name}",
                       table.astype(np.int32), labels, Product(left, right))


def product_components(group: FiniteGroup, g: int) -> tuple[int, int]:
    if not isinstance(group.structure, Product):
        raise ValidationError("product_components needs a product group")
    nb = group.structure.right.order
    return g // nb, g % nb


def product_embed_left(group: FiniteGroup, a: int) -> int:
    if not isinstance(group.structure, Product):
        raise ValidationError("product_embed_left needs a product group")
    return a * group.structure.right.order


def product_embed_right(group: FiniteGroup, b: int) -> int:
    if not isinstance(group.structure, Product):
        raise ValidationError("product_embed_right needs a product group")
    return b
