"""Burnside ring of a finite group over its subgroup-class lattice.

Elements are integer combinations of subgroup conjugacy classes; the class
with index i stands for the transitive G-set G/H_i.  Products of basis
elements are computed through fixed-point counts (marks): the mark of L on
G/H is n(L,H) |W(H)|, marks are ring homomorphisms, and solving top-down
for the product coefficients gives

    m_L = (mark_L(G/H) mark_L(G/K) - sum_{M > L} m_M n(L,M) |W(M)|) / |W(L)|

which is always an exact integer division.  multiply_oracle recomputes a
basis product by literally decomposing G/H x G/K into orbits; tests hold
the two routes equal.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ValidationError
from .lattice import SubgroupPoset


class BurnsideElement:
    """Integer combination of subgroup classes with ring operations.

    Coefficients are python ints, so products of many factors never
    overflow.  Instances are immutable in practice: operations return new
    elements.
    """

    __slots__ = ("poset", "coeffs")

    def __init__(self, poset: SubgroupPoset, coeffs: dict[int, int]):
        self.poset = poset
        self.coeffs = {i: int(c) for i, c in coeffs.items() if c != 0}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, poset: SubgroupPoset) -> "BurnsideElement":
        return cls(poset, {})

    @classmethod
    def unit(cls, poset: SubgroupPoset) -> "BurnsideElement":
        return cls(poset, {poset.top_index: 1})

    @classmethod
    def basis(cls, poset: SubgroupPoset, index: int) -> "BurnsideElement":
        if not 0 <= index < len(poset):
            raise ValidationError(f"no subgroup class with index {index}")
        return cls(poset, {index: 1})

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "BurnsideElement") -> None:
        if self.poset is not other.poset:
            raise ValidationError("elements live over different lattices")

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return BurnsideElement(self.poset, out)

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.poset, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.poset,
                                   {i: c * other for i, c in self.coeffs.items()})
        self._check(other)
        out: dict[int, int] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                for l, m in _basis_product(self.poset, i, j).items():
                    out[l] = out.get(l, 0) + a * b * m
        return BurnsideElement(self.poset, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BurnsideElement":
        if n < 0:
            raise ValidationError("negative powers are not defined")
        result = BurnsideElement.unit(self.poset)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, BurnsideElement)
                and self.poset is other.poset
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.poset), tuple(sorted(self.coeffs.items()))))

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, index: int) -> int:
        return self.coeffs.get(index, 0)

    def coefficient_by_name(self, name: str) -> int:
        return self.coefficient(self.poset.index_by_name(name))

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def to_pairs(self) -> list[tuple[str, int]]:
        """(name, coefficient) pairs, largest class first."""
        return [(self.poset.classes[i].name, self.coeffs[i])
                for i in sorted(self.coeffs, reverse=True)]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for name, c in self.to_pairs():
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}({name})"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BurnsideElement({self})"


@lru_cache(maxsize=None)
def _basis_product_cached(poset: SubgroupPoset, i: int, j: int) -> tuple[tuple[int, int], ...]:
    n_table = poset.n_table
    weyl = np.array([c.weyl_order for c in poset.classes], dtype=np.int64)
    c = len(poset)
    target = n_table[:, i] * weyl[i] * n_table[:, j] * weyl[j]   # marks of the product
    coeffs: dict[int, int] = {}
    for l in range(c - 1, -1, -1):
        acc = int(target[l])
        for m, cm in coeffs.items():
            if n_table[l, m]:
                acc -= cm * int(n_table[l, m]) * int(weyl[m])
        if acc == 0:
            continue
        q, r = divmod(acc, int(weyl[l]))
        if r != 0:
            raise ValidationError("Burnside recurrence produced a non-integer "
                                  f"coefficient at class {l}")
        coeffs[l] = q
    return tuple(sorted(coeffs.items()))


def _basis_product(poset: SubgroupPoset, i: int, j: int) -> dict[int, int]:
    if i > j:
        i, j = j, i
    return dict(_basis_product_cached(poset, i, j))


def multiply_oracle(poset: SubgroupPoset, i: int, j: int) -> BurnsideElement:
    """Basis product [G/H_i][G/H_j] by explicit orbit decomposition.

    Independent of the mark recurrence: builds both coset actions, walks
    the orbits of the product action and classifies each stabilizer.
    """
    act_h, reps_h = _coset_action(poset, i)
    act_k, reps_k = _coset_action(poset, j)
    n = poset.group.order
    nh, nk = act_h.shape[1], act_k.shape[1]
    seen = np.zeros((nh, nk), dtype=bool)
    coeffs: dict[int, int] = {}
    for a in range(nh):
        for b in range(nk):
            if seen[a, b]:
                continue
            stab_mask = (act_h[:, a] == a) & (act_k[:, b] == b)
            stab = np.nonzero(stab_mask)[0].astype(np.int32)
            cls = poset.index_of_subgroup(stab)
            coeffs[cls] = coeffs.get(cls, 0) + 1
            seen[act_h[:, a], act_k[:, b]] = True
    return BurnsideElement(poset, coeffs)


def _coset_action(poset: SubgroupPoset, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Left action of G on G/H_i: (action[g, c] = coset index of g * rep_c)."""
    g = poset.group
    h_ids = poset.classes[i].ids
    coset_id = np.full(g.order, -1, dtype=np.int32)
    reps = []
    for x in range(g.order):
        if coset_id[x] >= 0:
            continue
        members = g.table[x, h_ids]
        coset_id[members] = len(reps)
        reps.append(x)
    reps = np.array(reps, dtype=np.int32)
    action = coset_id[g.table[:, reps]]
    return action, reps
