"""Subgroup lattice of a finite group, organized by conjugacy class.

Enumeration uses closure-extension: starting from the trivial subgroup,
every class representative is extended by every element of prime-power
order.  Each element decomposes into commuting prime-power components, so
every subgroup is generated by its prime-power elements and the sweep is
complete.  Whole conjugacy orbits are registered at once, so extensions
only ever run on class representatives.

Classes are sorted canonically by (order, element-order multiset, name)
with the sorted id tuple of the representative as a final deterministic
tie break.  Name collisions between distinct classes get #2, #3 suffixes
in this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import naming
from .errors import ValidationError
from .groups import FiniteGroup


def _is_prime_power(k: int) -> bool:
    if k < 2:
        return False
    for p in range(2, k + 1):
        if p * p > k:
            return True          # k itself is prime
        if k % p == 0:
            while k % p == 0:
                k //= p
            return k == 1
    return False


def _closure(table: np.ndarray, seed: np.ndarray) -> np.ndarray:
    cur = np.unique(seed)
    while True:
        nxt = np.unique(table[np.ix_(cur, cur)])
        if nxt.size == cur.size:
            return nxt.astype(np.int32)
        cur = nxt


@dataclass(eq=False)
class SubgroupClass:
    index: int
    ids: np.ndarray               # sorted element ids of the representative
    mask: np.ndarray              # boolean membership of the representative
    orbit_masks: np.ndarray       # (n_conjugates, group order) boolean
    order: int
    n_conjugates: int
    weyl_order: int
    element_order_multiset: tuple[int, ...]
    name: str

    def __repr__(self) -> str:
        return f"SubgroupClass({self.index}: {self.name}, order={self.order})"


class SubgroupPoset:
    """Conjugacy classes of subgroups with containment data.

    n_table[i, j] counts conjugates of class-j subgroups that contain the
    class-i representative; leq is its positivity, covers its transitive
    reduction.
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.classes: list[SubgroupClass] = []
        self._build()

    # -- construction -----------------------------------------------------

    def _build(self) -> None:
        g = self.group
        n = g.order
        table = g.table
        conj = np.empty((n, n), dtype=np.int32)
        for h in range(n):
            conj[h] = g.conjugation_perm(h)

        el_orders = g.element_orders()
        ppow = [x for x in range(1, n) if _is_prime_power(int(el_orders[x]))]

        key_to_raw: dict[bytes, int] = {}
        raw_classes: list[tuple[np.ndarray, np.ndarray]] = []   # (rep ids, orbit rows)
        worklist: list[np.ndarray] = []

        def register(ids: np.ndarray) -> None:
            key = ids.tobytes()
            if key in key_to_raw:
                return
            rows = np.sort(conj[:, ids], axis=1)
            orbit = np.unique(rows, axis=0).astype(np.int32)
            idx = len(raw_classes)
            for row in orbit:
                key_to_raw[row.tobytes()] = idx
            rep = orbit[0]
            raw_classes.append((rep, orbit))
            worklist.append(rep)

        register(np.array([0], dtype=np.int32))
        while worklist:
            sub = worklist.pop()
            inside = np.zeros(n, dtype=bool)
            inside[sub] = True
            for x in ppow:
                if inside[x]:
                    continue
                register(_closure(table, np.append(sub, np.int32(x))))

        # canonical ordering
        def sort_key(item):
            rep, _ = item
            multiset = tuple(sorted(int(el_orders[i]) for i in rep))
            base = naming.class_base_name(g, rep)
            return (rep.size, multiset, base, tuple(rep))

        ordered = sorted(raw_classes, key=sort_key)
        base_names = [naming.class_base_name(g, rep) for rep, _ in ordered]
        counts: dict[str, int] = {}
        final_names = []
        for b in base_names:
            counts[b] = counts.get(b, 0) + 1
            final_names.append(b if counts[b] == 1 else f"{b}#{counts[b]}")

        self._key_to_class: dict[bytes, int] = {}
        for idx, ((rep, orbit), name) in enumerate(zip(ordered, final_names)):
            masks = np.zeros((orbit.shape[0], n), dtype=bool)
            for r, row in enumerate(orbit):
                masks[r, row] = True
            mask = np.zeros(n, dtype=bool)
            mask[rep] = True
            k = orbit.shape[0]
            size = rep.size
            if (n // k) % size != 0:
                raise ValidationError("normalizer order not divisible by subgroup order")
            cls = SubgroupClass(
                index=idx,
                ids=rep,
                mask=mask,
                orbit_masks=masks,
                order=size,
                n_conjugates=k,
                weyl_order=(n // k) // size,
                element_order_multiset=tuple(sorted(int(el_orders[i]) for i in rep)),
                name=name,
            )
            self.classes.append(cls)
            for row in orbit:
                self._key_to_class[row.tobytes()] = idx

        self._compute_tables()

    def _compute_tables(self) -> None:
        c = len(self.classes)
        self.n_table = np.zeros((c, c), dtype=np.int64)
        for i, small in enumerate(self.classes):
            for j, large in enumerate(self.classes):
                if large.order % small.order != 0:
                    continue
                contains = self.classes[j].orbit_masks[:, small.ids].all(axis=1)
                self.n_table[i, j] = int(contains.sum())
        self.leq = self.n_table > 0
        strict = self.leq & ~np.eye(c, dtype=bool)
        self.covers = strict & ~(strict @ strict)

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.classes]

    @property
    def top_index(self) -> int:
        return len(self.classes) - 1

    @property
    def trivial_index(self) -> int:
        return 0

    def index_of_subgroup(self, ids) -> int:
        arr = np.unique(np.asarray(list(ids), dtype=np.int32))
        key = arr.tobytes()
        if key not in self._key_to_class:
            raise ValidationError("not a subgroup of this lattice's group")
        return self._key_to_class[key]

    def index_by_name(self, name: str) -> int:
        for c in self.classes:
            if c.name == name:
                return c.index
        raise ValidationError(f"no subgroup class named {name!r}")

    def n_count(self, i: int, j: int) -> int:
        return int(self.n_table[i, j])

    def weyl_order(self, i: int) -> int:
        return self.classes[i].weyl_order

    def maximal_elements(self, indices) -> list[int]:
        """Members of `indices` not strictly below another member."""
        idx = sorted(set(int(i) for i in indices))
        out = []
        for i in idx:
            if not any(j != i and self.leq[i, j] for j in idx):
                out.append(i)
        return out

    def all_subgroups(self) -> list[np.ndarray]:
        subs = []
        for c in self.classes:
            for r in range(c.orbit_masks.shape[0]):
                subs.append(np.nonzero(c.orbit_masks[r])[0].astype(np.int32))
        subs.sort(key=lambda a: (a.size, tuple(a)))
        return subs

    def to_dict(self) -> dict:
        return {
            "group": self.group.name,
            "group_order": self.group.order,
            "num_classes": len(self.classes),
            "classes": [
                {
                    "index": c.index,
                    "name": c.name,
                    "order": c.order,
                    "n_conjugates": c.n_conjugates,
                    "weyl_order": c.weyl_order,
                    "element_order_multiset": list(c.element_order_multiset),
                    "representative": [int(x) for x in c.ids],
                }
                for c in self.classes
            ],
        }


@lru_cache(maxsize=None)
def subgroup_poset(group: FiniteGroup) -> SubgroupPoset:
    return SubgroupPoset(group)


def enumerate_subgroups(group: FiniteGroup) -> list[np.ndarray]:
    """Every subgroup of the group as a sorted id array."""
    return subgroup_poset(group).all_subgroups()
