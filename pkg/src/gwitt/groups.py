"""Finite groups as Cayley tables, their subgroups, and the subconjugacy poset."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GroupOrderError, GwittError

DEFAULT_MAX_ORDER = 64


class Group:
    """A finite group on element indices 0..order-1.

    Element 0 is always the identity; `mul_table[a][b]` is the product a*b.
    Construction validates associativity, identity and inverses, so every
    Group in circulation is genuinely a group.
    """

    __slots__ = ("order", "mul_table", "inv_table", "labels", "name", "perm_rep", "_hash")

    def __init__(self, mul_table, labels=None, name=None, perm_rep=None):
        table = tuple(tuple(row) for row in mul_table)
        n = len(table)
        if n == 0:
            raise GwittError("a group has at least the identity element")
        for row in table:
            if len(row) != n or any(not (0 <= v < n) for v in row):
                raise GwittError("Cayley table is not square over 0..order-1")
        for a in range(n):
            if table[0][a] != a or table[a][0] != a:
                raise GwittError("element 0 is not a two-sided identity")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == 0:
                    inv[a] = b
            if inv[a] is None or table[inv[a]][a] != 0:
                raise GwittError(f"element {a} has no two-sided inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise GwittError(f"associativity fails at ({a},{b},{c})")
        self.order = n
        self.mul_table = table
        self.inv_table = tuple(inv)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise GwittError("label count does not match order")
        self.name = name or f"G{n}"
        self.perm_rep = tuple(tuple(p) for p in perm_rep) if perm_rep is not None else None
        self._hash = None

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inverse(self, a: int) -> int:
        return self.inv_table[a]

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def conj(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return self.mul(self.mul(g, a), self.inv_table[g])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return self.mul_table == other.mul_table

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.mul_table)
        return self._hash

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "mul": [v for row in self.mul_table for v in row],
            "labels": list(self.labels),
        }

    @staticmethod
    def from_json(data: dict) -> "Group":
        n = data["order"]
        flat = data["mul"]
        if len(flat) != n * n:
            raise GwittError("row-major mul table has wrong length")
        table = [flat[i * n:(i + 1) * n] for i in range(n)]
        return Group(table, labels=data.get("labels"))


def _perm_label(perm: tuple[int, ...]) -> str:
    n = len(perm)
    seen = [False] * n
    cycles = []
    for i in range(n):
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
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "e"


def group_from_generators(generators, n_points: int | None = None,
                          max_order: int = DEFAULT_MAX_ORDER, name=None) -> Group:
    """Close a list of permutations under composition and build the Cayley table.

    Element order is the identity followed by the remaining permutations in
    lexicographic order, so the result depends only on the generated set.
    """
    gens = [tuple(g) for g in generators]
    if n_points is None:
        n_points = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != n_points or sorted(g) != list(range(n_points)):
            raise GwittError(f"{g} is not a permutation of 0..{n_points - 1}")
    identity = tuple(range(n_points))
    closure = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(n_points))
                if q not in closure:
                    if len(closure) >= max_order:
                        raise GroupOrderError(f"generated order exceeds cap {max_order}")
                    closure.add(q)
                    new.append(q)
        frontier = new
    perms = [identity] + sorted(closure - {identity})
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(a[b[i]] for i in range(n_points))] for b in perms]
        for a in perms
    ]
    labels = [_perm_label(p) for p in perms]
    return Group(table, labels=labels, name=name, perm_rep=perms)


def cyclic(n: int) -> Group:
    if n < 1:
        raise GwittError("cyclic group order must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["e"] + [f"r^{k}" if k > 1 else "r" for k in range(1, n)]
    return Group(table, labels=labels, name=f"C{n}")


def dihedral(n: int) -> Group:
    """Dihedral group of order 2n; elements are pairs r^a s^b in (a, b) order."""
    if n < 1:
        raise GwittError("dihedral parameter must be positive")
    elems = [(a, b) for b in (0, 1) for a in range(n)]
    index = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        a1, b1 = x
        a2, b2 = y
        return ((a1 + (a2 if b1 == 0 else -a2)) % n, b1 ^ b2)

    table = [[index[mul(x, y)] for y in elems] for x in elems]

    def label(e):
        a, b = e
        rot = "e" if a == 0 else ("r" if a == 1 else f"r^{a}")
        if b == 0:
            return rot
        return "s" if a == 0 else f"{rot}*s"

    return Group(table, labels=[label(e) for e in elems], name=f"D{n}")


def symmetric(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if n < 1:
        raise GwittError("symmetric group needs at least one point")
    if n == 1:
        return group_from_generators([], n_points=1, name="S1")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return group_from_generators(gens, n_points=n, max_order=max_order, name=f"S{n}")


def direct_product(g1: Group, g2: Group, name: str | None = None) -> Group:
    elems = [(a, b) for a in range(g1.order) for b in range(g2.order)]
    index = {e: i for i, e in enumerate(elems)}
    table = [
        [index[(g1.mul(a1, a2), g2.mul(b1, b2))] for (a2, b2) in elems]
        for (a1, b1) in elems
    ]
    labels = [f"({g1.labels[a]},{g2.labels[b]})" for (a, b) in elems]
    return Group(table, labels=labels, name=name or f"{g1.name}x{g2.name}")


def klein_four() -> Group:
    g = direct_product(cyclic(2), cyclic(2), name="V4")
    return g


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted element indices inside a parent group."""

    group: Group
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        eset = set(elems)
        if 0 not in eset:
            raise GwittError("subgroup must contain the identity")
        for a in elems:
            if self.group.inv_table[a] not in eset:
                raise GwittError("subgroup not closed under inverse")
            for b in elems:
                if self.group.mul_table[a][b] not in eset:
                    raise GwittError("subgroup not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, other: "Subgroup") -> bool:
        return set(other.elements) <= set(self.elements)

    def conjugate(self, g: int) -> "Subgroup":
        grp = self.group
        return Subgroup(grp, tuple(grp.conj(g, a) for a in self.elements))

    def as_group(self) -> tuple[Group, tuple[int, ...]]:
        """This subgroup as a Group of its own, plus the element embedding."""
        emb = self.elements
        index = {g: i for i, g in enumerate(emb)}
        table = [[index[self.group.mul_table[a][b]] for b in emb] for a in emb]
        labels = [self.group.labels[g] for g in emb]
        sub = Group(table, labels=labels, name=f"{self.group.name}|{','.join(map(str, emb))}")
        return sub, emb

    def __repr__(self):
        return f"Subgroup{self.elements}"


def subgroup_generated(group: Group, gens) -> Subgroup:
    closure = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                for b in (group.mul_table[a][g], group.mul_table[g][a]):
                    if b not in closure:
                        closure.add(b)
                        new.append(b)
        frontier = new
    return Subgroup(group, tuple(sorted(closure)))


def trivial_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, (0,))


def full_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


_SUBGROUPS_CACHE: dict[Group, tuple[Subgroup, ...]] = {}


def all_subgroups(group: Group) -> tuple[Subgroup, ...]:
    """Every subgroup exactly once, sorted by (order, element tuple).

    Cyclic-extension closure: all cyclic subgroups first, then joins until a
    fixpoint.  Intended for the desk scale |G| <= 64.
    """
    cached = _SUBGROUPS_CACHE.get(group)
    if cached is not None:
        return cached
    cyclics = set()
    for a in group.elements():
        cyclics.add(subgroup_generated(group, [a]).elements)
    known = set(cyclics)
    frontier = set(cyclics)
    while frontier:
        new = set()
        for h in frontier:
            for c in cyclics:
                if set(c) <= set(h):
                    continue
                join = subgroup_generated(group, set(h) | set(c)).elements
                if join not in known:
                    known.add(join)
                    new.add(join)
        frontier = new
    subs = tuple(
        Subgroup(group, elems)
        for elems in sorted(known, key=lambda e: (len(e), e))
    )
    _SUBGROUPS_CACHE[group] = subs
    return subs


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups with its canonical representative."""

    rep: Subgroup
    members: tuple[Subgroup, ...]
    label: str

    @property
    def order(self) -> int:
        return self.rep.order


class SubconjugacyPoset:
    """Conjugacy classes of subgroups ordered by subconjugacy.

    Classes are sorted by subgroup order, ties broken by the representative's
    element tuple; the first class is [e] and the last is [G].
    """

    def __init__(self, group: Group):
        self.group = group
        subs = all_subgroups(group)
        remaining = {s.elements: s for s in subs}
        classes = []
        while remaining:
            key = min(remaining, key=lambda e: (len(e), e))
            rep = remaining[key]
            member_keys = {rep.conjugate(g).elements for g in group.elements()}
            members = tuple(
                remaining.pop(k) for k in sorted(member_keys) if k in remaining
            )
            classes.append((rep, members))
        classes.sort(key=lambda rm: (rm[0].order, rm[0].elements))
        counters: dict[int, int] = {}
        built = []
        for rep, members in classes:
            idx = counters.get(rep.order, 0)
            counters[rep.order] = idx + 1
            letter = ""
            k = idx
            while True:
                letter = chr(ord("a") + k % 26) + letter
                k = k // 26 - 1
                if k < 0:
                    break
            built.append(SubgroupClass(rep, members, f"{rep.order}{letter}"))
        self.classes: tuple[SubgroupClass, ...] = tuple(built)
        self._index: dict[tuple[int, ...], int] = {}
        for i, cls in enumerate(self.classes):
            for member in cls.members:
                self._index[member.elements] = i
        n = len(self.classes)
        leq = [[False] * n for _ in range(n)]
        for i, ci in enumerate(self.classes):
            hi = set(ci.rep.elements)
            for j, cj in enumerate(self.classes):
                leq[i][j] = any(hi <= set(m.elements) for m in cj.members)
        self.leq_table: tuple[tuple[bool, ...], ...] = tuple(tuple(row) for row in leq)

    def __len__(self) -> int:
        return len(self.classes)

    def class_index(self, sub: Subgroup) -> int:
        try:
            return self._index[sub.elements]
        except KeyError:
            raise GwittError(f"{sub} is not a subgroup of {self.group.name}") from None

    def leq(self, i: int, j: int) -> bool:
        """[H_i] <= [H_j]: H_i is contained in some conjugate of H_j."""
        return self.leq_table[i][j]

    def label(self, i: int) -> str:
        return self.classes[i].label

    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.classes)

    def index(self, j: int, i: int) -> int:
        """The index (K_j : H_i) of a conjugate of H_i inside K_j."""
        if not self.leq(i, j):
            raise GwittError(
                f"class {self.label(i)} is not subconjugate to {self.label(j)}"
            )
        return self.classes[j].order // self.classes[i].order


_POSET_CACHE: dict[Group, SubconjugacyPoset] = {}


def subconjugacy_poset(group: Group) -> SubconjugacyPoset:
    poset = _POSET_CACHE.get(group)
    if poset is None:
        poset = SubconjugacyPoset(group)
        _POSET_CACHE[group] = poset
    return poset


def subgroup_index(k: Subgroup, h: Subgroup) -> int:
    """(K:H), the index of H in a conjugate of K containing it."""
    if k.group != h.group:
        raise GwittError("subgroups of different groups")
    group = k.group
    hset = set(h.elements)
    if not any(hset <= set(k.conjugate(g).elements) for g in group.elements()):
        raise GwittError("H is not subconjugate to K")
    return k.order // h.order


def brute_force_subgroups(group: Group) -> list[tuple[int, ...]]:
    """All closed subsets, by raw subset enumeration; test oracle for tiny groups."""
    if group.order > 12:
        raise GwittError("brute-force subgroup enumeration is capped at order 12")
    out = []
    rest = [a for a in group.elements() if a != 0]
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            elems = (0,) + combo
            eset = set(elems)
            if all(
                group.mul_table[a][b] in eset and group.inv_table[a] in eset
                for a in elems for b in elems
            ):
                out.append(elems)
    return sorted(out, key=lambda e: (len(e), e))
