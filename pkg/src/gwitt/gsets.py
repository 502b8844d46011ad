"""Finite G-sets, equivariant maps, pullbacks, dependent products and
exponential diagrams."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EquivarianceError, GwittError, SearchBudgetError
from .groups import Group, Subgroup, SubconjugacyPoset, subconjugacy_poset


class GSet:
    """A finite left G-set: points 0..size-1 with an action table.

    `act_table[g][x]` is g•x.  The empty G-set (size 0) is valid and is the
    initial object.
    """

    __slots__ = ("group", "size", "act_table", "_hash", "_orbit_cache")

    def __init__(self, group: Group, act_table, validate: bool = True):
        self.group = group
        table = tuple(tuple(row) for row in act_table)
        if len(table) != group.order:
            raise GwittError("action table needs one row per group element")
        self.size = len(table[0]) if table else 0
        for row in table:
            if len(row) != self.size:
                raise GwittError("ragged action table")
        self.act_table = table
        if validate:
            n = self.size
            for x in range(n):
                if table[0][x] != x:
                    raise EquivarianceError("identity must act trivially")
            for g in group.elements():
                for h in group.elements():
                    gh = group.mul(g, h)
                    for x in range(n):
                        if table[g][table[h][x]] != table[gh][x]:
                            raise EquivarianceError(
                                f"action not compatible with multiplication at ({g},{h},{x})"
                            )
        self._hash = None
        self._orbit_cache = None

    def act(self, g: int, x: int) -> int:
        return self.act_table[g][x]

    def points(self) -> range:
        return range(self.size)

    def stabilizer(self, x: int) -> Subgroup:
        elems = tuple(g for g in self.group.elements() if self.act_table[g][x] == x)
        return Subgroup(self.group, elems)

    def orbits(self) -> tuple[tuple[tuple[int, ...], dict[int, int]], ...]:
        """Orbits as (sorted points, transporter); transporter[u] maps rep to u.

        The representative of each orbit is its minimal point, carried by the
        identity.
        """
        if self._orbit_cache is not None:
            return self._orbit_cache
        seen = [False] * self.size
        out = []
        for x in self.points():
            if seen[x]:
                continue
            transporter = {x: 0}
            frontier = [x]
            seen[x] = True
            while frontier:
                new = []
                for u in frontier:
                    for g in self.group.elements():
                        v = self.act_table[g][u]
                        if v not in transporter:
                            transporter[v] = self.group.mul(g, transporter[u])
                            seen[v] = True
                            new.append(v)
                frontier = new
            out.append((tuple(sorted(transporter)), transporter))
        self._orbit_cache = tuple(out)
        return self._orbit_cache

    def __eq__(self, other):
        if not isinstance(other, GSet):
            return NotImplemented
        return self.group == other.group and self.act_table == other.act_table

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group, self.act_table))
        return self._hash

    def __repr__(self):
        return f"GSet({self.group.name}, size={self.size})"

    def to_json(self) -> dict:
        return {
            "group_ref": self.group.to_json(),
            "size": self.size,
            "act": [list(row) for row in self.act_table],
        }

    @staticmethod
    def from_json(data: dict) -> "GSet":
        group = Group.from_json(data["group_ref"])
        x = GSet(group, data["act"])
        if x.size != data["size"]:
            raise GwittError("declared size does not match the action table")
        return x


class GMap:
    """An equivariant map between two G-sets over the same group."""

    __slots__ = ("source", "target", "images", "_hash")

    def __init__(self, source: GSet, target: GSet, images, validate: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if source.group != target.group:
            raise GwittError("source and target live over different groups")
        if len(self.images) != source.size:
            raise GwittError("one image per source point required")
        if any(not (0 <= v < target.size) for v in self.images):
            raise GwittError("image out of range")
        if validate:
            for g in source.group.elements():
                for x in source.points():
                    if self.images[source.act_table[g][x]] != target.act_table[g][self.images[x]]:
                        raise EquivarianceError(f"map not equivariant at (g={g}, x={x})")
        self._hash = None

    def __call__(self, x: int) -> int:
        return self.images[x]

    def fiber(self, y: int) -> tuple[int, ...]:
        return tuple(x for x in self.source.points() if self.images[x] == y)

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.images)) == self.source.size

    def __eq__(self, other):
        if not isinstance(other, GMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.images))
        return self._hash

    def __repr__(self):
        return f"GMap({self.source.size}->{self.target.size}, {self.images})"


def identity_map(x: GSet) -> GMap:
    return GMap(x, x, tuple(x.points()), validate=False)


def compose_maps(g: GMap, f: GMap) -> GMap:
    """g after f."""
    if f.target != g.source:
        raise GwittError("maps not composable")
    return GMap(f.source, g.target, tuple(g.images[v] for v in f.images), validate=False)


# -- constructions ----------------------------------------------------------


def empty_gset(group: Group) -> GSet:
    return GSet(group, [[] for _ in group.elements()], validate=False)


def trivial_gset(group: Group, n: int) -> GSet:
    return GSet(group, [list(range(n)) for _ in group.elements()], validate=False)


def point_gset(group: Group) -> GSet:
    return trivial_gset(group, 1)


def coset_space(group: Group, sub: Subgroup) -> GSet:
    """The transitive G-set G/H; cosets are ordered by their least element."""
    if sub.group != group:
        raise GwittError("subgroup belongs to a different group")
    coset_of = {}
    cosets = []
    for g in group.elements():
        if g in coset_of:
            continue
        coset = tuple(sorted(group.mul(g, h) for h in sub.elements))
        idx = len(cosets)
        cosets.append(coset)
        for member in coset:
            coset_of[member] = idx
    table = [
        [coset_of[group.mul(g, cosets[i][0])] for i in range(len(cosets))]
        for g in group.elements()
    ]
    return GSet(group, table, validate=False)


def regular_gset(group: Group) -> GSet:
    return coset_space(group, Subgroup(group, (0,)))


def natural_gset(group: Group) -> GSet:
    """The defining action of a permutation-built group on its points."""
    if group.perm_rep is None:
        raise GwittError("group carries no permutation representation")
    return GSet(group, [list(p) for p in group.perm_rep], validate=False)


def disjoint_union(parts: list[GSet]) -> tuple[GSet, list[GMap]]:
    if not parts:
        raise GwittError("disjoint union of no parts needs an ambient group")
    group = parts[0].group
    for p in parts:
        if p.group != group:
            raise GwittError("disjoint union across different groups")
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.size
    table = []
    for g in group.elements():
        row = []
        for p, off in zip(parts, offsets):
            row.extend(off + v for v in p.act_table[g])
        table.append(row)
    whole = GSet(group, table, validate=False)
    injections = [
        GMap(p, whole, tuple(off + x for x in p.points()), validate=False)
        for p, off in zip(parts, offsets)
    ]
    return whole, injections


def product(x: GSet, y: GSet) -> tuple[GSet, GMap, GMap]:
    if x.group != y.group:
        raise GwittError("product across different groups")
    group = x.group
    table = []
    for g in group.elements():
        row = []
        for i in x.points():
            gi = x.act_table[g][i]
            for j in y.points():
                row.append(gi * y.size + y.act_table[g][j])
        table.append(row)
    prod = GSet(group, table, validate=False)
    pr1 = GMap(prod, x, tuple(i // y.size for i in prod.points()), validate=False)
    pr2 = GMap(prod, y, tuple(i % y.size for i in prod.points()), validate=False)
    return prod, pr1, pr2


def induced_gset(group: Group, sub: Subgroup, fiber: GSet) -> tuple[GSet, GMap]:
    """Induce an H-set up to G along H <= G; returns it with its map to G/H."""
    sub_group, embedding = sub.as_group()
    if fiber.group != sub_group:
        raise GwittError("fiber must be a set over the subgroup")
    base = coset_space(group, sub)
    # the coset through g is g•(coset of H itself), which has index 0
    reps = []
    coset_of = {}
    for i in base.points():
        members = sorted(g for g in group.elements() if base.act_table[g][0] == i)
        reps.append(members[0])
        for m in members:
            coset_of[m] = i
    local = {g: k for k, g in enumerate(embedding)}
    n = base.size * fiber.size
    table = []
    for g in group.elements():
        row = [0] * n
        for i in base.points():
            t = group.mul(g, reps[i])
            i2 = coset_of[t]
            s = group.mul(group.inverse(reps[i2]), t)
            k = local[s]
            for j in fiber.points():
                row[i * fiber.size + j] = i2 * fiber.size + fiber.act_table[k][j]
        table.append(row)
    total = GSet(group, table, validate=False)
    proj = GMap(total, base, tuple(i // fiber.size for i in total.points()), validate=False)
    return total, proj


# -- counting and decomposition ---------------------------------------------


def fixed_points(x: GSet, h: Subgroup) -> int:
    if h.group != x.group:
        raise GwittError("subgroup of a different group")
    count = 0
    for pt in x.points():
        if all(x.act_table[g][pt] == pt for g in h.elements):
            count += 1
    return count


def marks_vector(x: GSet, poset: SubconjugacyPoset | None = None) -> tuple[int, ...]:
    if poset is None:
        poset = subconjugacy_poset(x.group)
    return tuple(fixed_points(x, cls.rep) for cls in poset.classes)


def orbit_decompose(x: GSet, poset: SubconjugacyPoset | None = None) -> tuple[int, ...]:
    """Sorted multiset of poset class indices, one per orbit (stabilizer class)."""
    if poset is None:
        poset = subconjugacy_poset(x.group)
    classes = []
    for points, _ in x.orbits():
        classes.append(poset.class_index(x.stabilizer(points[0])))
    return tuple(sorted(classes))


def reassemble(group: Group, class_indices, poset: SubconjugacyPoset | None = None) -> GSet:
    """Disjoint union of the coset spaces named by a class multiset."""
    if poset is None:
        poset = subconjugacy_poset(group)
    parts = [coset_space(group, poset.classes[i].rep) for i in class_indices]
    if not parts:
        return empty_gset(group)
    return disjoint_union(parts)[0]


# -- map enumeration and isomorphism search ----------------------------------


def _orbit_data(x: GSet):
    """(rep, stabilizer elements frozenset, transporter) per orbit."""
    out = []
    for points, transporter in x.orbits():
        rep = points[0]
        stab = frozenset(
            g for g in x.group.elements() if x.act_table[g][rep] == rep
        )
        out.append((rep, stab, transporter))
    return out


def equivariant_maps(a: GSet, x: GSet):
    """Yield every equivariant map a -> x, deterministically ordered."""
    orbits = _orbit_data(a)
    candidate_lists = []
    for rep, stab, _ in orbits:
        cands = [p for p in x.points()
                 if all(x.act_table[g][p] == p for g in stab)]
        if not cands:
            return
        candidate_lists.append(cands)
    for combo in itertools.product(*candidate_lists):
        images = [0] * a.size
        for (rep, _, transporter), target in zip(orbits, combo):
            for u, g in transporter.items():
                images[u] = x.act_table[g][target]
        yield GMap(a, x, tuple(images), validate=False)


def count_maps_over(b: GMap, t: GMap) -> int:
    """Number of equivariant maps m with t∘m = b (maps over the common target)."""
    if b.target != t.target:
        raise GwittError("maps must share a target")
    total = 1
    for rep, stab, _ in _orbit_data(b.source):
        want = b.images[rep]
        count = sum(
            1 for p in t.source.points()
            if t.images[p] == want
            and all(t.source.act_table[g][p] == p for g in stab)
        )
        if count == 0:
            return 0
        total *= count
    return total


def isos_over(f: GMap, g: GMap, budget: int | None = None):
    """Yield equivariant bijections h: source(f) -> source(g) with g∘h = f."""
    if f.target != g.target:
        raise GwittError("maps must share a target")
    a, b = f.source, g.source
    if a.size != b.size:
        return
    for y in f.target.points():
        if len(f.fiber(y)) != len(g.fiber(y)):
            return
    a_orbits = _orbit_data(a)
    b_orbits = _orbit_data(b)
    orbit_of_b = {}
    for idx, (rep, _, transporter) in enumerate(b_orbits):
        for u in transporter:
            orbit_of_b[u] = idx
    candidates = []
    for rep, stab, _ in a_orbits:
        cands = [
            p for p in b.points()
            if g.images[p] == f.images[rep]
            and frozenset(
                hh for hh in b.group.elements() if b.act_table[hh][p] == p
            ) == stab
        ]
        if not cands:
            return
        candidates.append(cands)
    nodes = 0
    used = [False] * len(b_orbits)
    assignment: list[int] = []

    def backtrack(k: int):
        nonlocal nodes
        if k == len(a_orbits):
            images = [0] * a.size
            for (rep, _, transporter), target in zip(a_orbits, assignment):
                for u, gg in transporter.items():
                    images[u] = b.act_table[gg][target]
            yield GMap(a, b, tuple(images), validate=False)
            return
        for p in candidates[k]:
            nodes += 1
            if budget is not None and nodes > budget:
                raise SearchBudgetError(f"isomorphism search exceeded {budget} nodes")
            ob = orbit_of_b[p]
            if used[ob]:
                continue
            used[ob] = True
            assignment.append(p)
            yield from backtrack(k + 1)
            assignment.pop()
            used[ob] = False

    yield from backtrack(0)


def iso_over(f: GMap, g: GMap, budget: int | None = None) -> GMap | None:
    """The first isomorphism over the base, or None when none exists."""
    for h in isos_over(f, g, budget=budget):
        return h
    return None


def gset_iso(x: GSet, y: GSet) -> GMap | None:
    """An equivariant bijection x -> y (isomorphism over the point), or None."""
    pt = point_gset(x.group)
    fx = GMap(x, pt, (0,) * x.size, validate=False)
    fy = GMap(y, pt, (0,) * y.size, validate=False)
    return iso_over(fx, fy)


# -- pullback, dependent product, exponential diagram ------------------------


@dataclass(frozen=True)
class Pullback:
    """X ×_Y A for f: A -> Y, g: X -> Y; points are (x, a) pairs with g(x)=f(a)."""

    gset: GSet
    to_x: GMap
    to_a: GMap
    points: tuple[tuple[int, int], ...]

    def pair(self, m_x: GMap, m_a: GMap) -> GMap:
        """The induced map into the pullback, witnessing the universal property."""
        if m_x.source != m_a.source:
            raise GwittError("pairing needs a common source")
        index = {pt: i for i, pt in enumerate(self.points)}
        images = []
        for w in m_x.source.points():
            key = (m_x.images[w], m_a.images[w])
            if key not in index:
                raise GwittError("maps do not commute with the cospan")
            images.append(index[key])
        return GMap(m_x.source, self.gset, tuple(images), validate=False)


def pullback(f: GMap, g: GMap) -> Pullback:
    if f.target != g.target:
        raise GwittError("pullback needs a common target")
    x, a = g.source, f.source
    pts = [(i, j) for i in x.points() for j in a.points()
           if g.images[i] == f.images[j]]
    index = {pt: k for k, pt in enumerate(pts)}
    group = x.group
    table = []
    for gg in group.elements():
        table.append([
            index[(x.act_table[gg][i], a.act_table[gg][j])] for (i, j) in pts
        ])
    pb = GSet(group, table, validate=False)
    to_x = GMap(pb, x, tuple(i for (i, _) in pts), validate=False)
    to_a = GMap(pb, a, tuple(j for (_, j) in pts), validate=False)
    return Pullback(pb, to_x, to_a, tuple(pts))


@dataclass(frozen=True)
class DependentProduct:
    """Π_f A -> Y for p: A -> X, f: X -> Y; points over y are sections of p
    on the fiber f^-1(y), stored as tuples aligned with the sorted fiber."""

    gset: GSet
    to_y: GMap
    sections: tuple[tuple[int, tuple[int, ...]], ...]
    fiber_points: dict[int, tuple[int, ...]]

    def evaluate(self, section_index: int, x: int) -> int:
        y, sec = self.sections[section_index]
        xs = self.fiber_points[y]
        return sec[xs.index(x)]


def dependent_product(p: GMap, f: GMap) -> DependentProduct:
    if p.target != f.source:
        raise GwittError("dependent product needs p: A -> X and f: X -> Y")
    a, x, y = p.source, p.target, f.target
    group = x.group
    fiber_points = {yy: f.fiber(yy) for yy in y.points()}
    p_fibers = {xx: p.fiber(xx) for xx in x.points()}
    sections: list[tuple[int, tuple[int, ...]]] = []
    for yy in y.points():
        xs = fiber_points[yy]
        for combo in itertools.product(*(p_fibers[xx] for xx in xs)):
            sections.append((yy, tuple(combo)))
    sections.sort()
    index = {s: i for i, s in enumerate(sections)}
    table = []
    for g in group.elements():
        ginv = group.inverse(g)
        row = []
        for yy, sec in sections:
            y2 = y.act_table[g][yy]
            xs = fiber_points[yy]
            pos = {xx: k for k, xx in enumerate(xs)}
            new_sec = tuple(
                a.act_table[g][sec[pos[x.act_table[ginv][x2]]]]
                for x2 in fiber_points[y2]
            )
            row.append(index[(y2, new_sec)])
        table.append(row)
    pi = GSet(group, table, validate=False)
    to_y = GMap(pi, y, tuple(yy for yy, _ in sections), validate=False)
    return DependentProduct(pi, to_y, tuple(sections), fiber_points)


@dataclass(frozen=True)
class ExponentialDiagram:
    """The six-object diagram built from p: A -> X and f: X -> Y.

    w = X ×_Y Π_f A; e evaluates a section at a point; f_prime projects to
    Π_f A; pi_p is the structure map of the dependent product.  The square
    (p∘e, f, f_prime, pi_p) is a pullback and the whole rectangle commutes.
    """

    x: GSet
    a: GSet
    w: GSet
    y: GSet
    pi: GSet
    p: GMap
    f: GMap
    e: GMap
    f_prime: GMap
    pi_p: GMap
    dp: DependentProduct


def exponential_diagram(p: GMap, f: GMap) -> ExponentialDiagram:
    dp = dependent_product(p, f)
    pb = pullback(dp.to_y, f)  # W = X ×_Y Π, points (x, section)
    w = pb.gset
    e_images = []
    for (xx, si) in pb.points:
        e_images.append(dp.evaluate(si, xx))
    e = GMap(w, p.source, tuple(e_images), validate=False)
    return ExponentialDiagram(
        x=p.target, a=p.source, w=w, y=f.target, pi=dp.gset,
        p=p, f=f, e=e, f_prime=pb.to_a, pi_p=dp.to_y, dp=dp,
    )
