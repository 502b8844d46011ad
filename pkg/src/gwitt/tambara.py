"""Generic Tambara-functor instances and a relation checker driven by the
generator presentation: functoriality of restriction/transfer/norm, their
ring-map properties, both base-change squares, and the exponential-diagram
relation."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import EquivarianceError, GwittError
from .groups import Group, subconjugacy_poset
from .gsets import (
    GMap,
    GSet,
    compose_maps,
    coset_space,
    dependent_product,
    disjoint_union,
    empty_gset,
    equivariant_maps,
    exponential_diagram,
    identity_map,
    iso_over,
    pullback,
)


class TambaraInstance:
    """A ring per finite G-set with restriction, transfer and norm maps.

    Subclasses provide exact levelwise ring operations and the three
    structure maps; the checker only uses this surface.
    """

    name = "abstract"

    def __init__(self, group: Group):
        self.group = group

    def zero(self, x: GSet):
        raise NotImplementedError

    def one(self, x: GSet):
        raise NotImplementedError

    def add(self, x: GSet, u, v):
        raise NotImplementedError

    def mul(self, x: GSet, u, v):
        raise NotImplementedError

    def eq(self, x: GSet, u, v) -> bool:
        raise NotImplementedError

    def restrict(self, f: GMap, v):
        """Contravariant: value at target(f) to value at source(f)."""
        raise NotImplementedError

    def transfer(self, f: GMap, v):
        raise NotImplementedError

    def norm(self, f: GMap, v):
        raise NotImplementedError

    def sample_values(self, x: GSet, rng: random.Random, count: int) -> list:
        raise NotImplementedError

    def describe(self, v) -> str:
        return repr(v)


class InvariantRingInstance(TambaraInstance):
    """Levels are equivariant functions X -> Map(S, Z) for a fixed base
    G-set S, with h(g•x)(s) = h(x)(g^-1•s); the pointwise ring structure.

    A value at level X is a |X| x |S| integer matrix, rows indexed by X.
    """

    name = "invariant"

    def __init__(self, group: Group, base: GSet):
        super().__init__(group)
        if base.group != group:
            raise GwittError("base G-set lives over a different group")
        self.base = base

    def check_value(self, x: GSet, v):
        if len(v) != x.size:
            raise EquivarianceError("value has wrong number of rows")
        for row in v:
            if len(row) != self.base.size:
                raise EquivarianceError("value row has wrong width")
        ginv = self.group.inverse
        for g in self.group.elements():
            for i in x.points():
                for j in self.base.points():
                    if v[x.act_table[g][i]][j] != v[i][self.base.act_table[ginv(g)][j]]:
                        raise EquivarianceError("value is not equivariant")

    def zero(self, x: GSet):
        return tuple((0,) * self.base.size for _ in x.points())

    def one(self, x: GSet):
        return tuple((1,) * self.base.size for _ in x.points())

    def add(self, x: GSet, u, v):
        return tuple(
            tuple(a + b for a, b in zip(ru, rv)) for ru, rv in zip(u, v)
        )

    def mul(self, x: GSet, u, v):
        return tuple(
            tuple(a * b for a, b in zip(ru, rv)) for ru, rv in zip(u, v)
        )

    def eq(self, x: GSet, u, v) -> bool:
        return u == v

    def restrict(self, f: GMap, v):
        return tuple(v[f.images[i]] for i in f.source.points())

    def transfer(self, f: GMap, v):
        out = []
        for y in f.target.points():
            row = [0] * self.base.size
            for xpt in f.fiber(y):
                row = [a + b for a, b in zip(row, v[xpt])]
            out.append(tuple(row))
        return tuple(out)

    def norm(self, f: GMap, v):
        out = []
        for y in f.target.points():
            row = [1] * self.base.size
            for xpt in f.fiber(y):
                row = [a * b for a, b in zip(row, v[xpt])]
            out.append(tuple(row))
        return tuple(out)

    def level_rank(self, x: GSet) -> int:
        """Free rank of the level at X: one generator per (orbit of X,
        stabilizer-orbit of the base)."""
        total = 0
        for points, _ in x.orbits():
            stab = x.stabilizer(points[0])
            seen = set()
            for j in self.base.points():
                if j in seen:
                    continue
                orbit = {j}
                frontier = [j]
                while frontier:
                    nxt = []
                    for u in frontier:
                        for g in stab.elements:
                            w = self.base.act_table[g][u]
                            if w not in orbit:
                                orbit.add(w)
                                nxt.append(w)
                    frontier = nxt
                seen |= orbit
                total += 1
        return total

    def sample_values(self, x: GSet, rng: random.Random, count: int) -> list:
        out = []
        ginv = self.group.inverse
        for _ in range(count):
            rows = [[0] * self.base.size for _ in x.points()]
            for points, transporter in x.orbits():
                rep = points[0]
                stab = x.stabilizer(rep)
                rep_row = [None] * self.base.size
                for j in self.base.points():
                    if rep_row[j] is not None:
                        continue
                    val = rng.randint(-3, 3)
                    # constant on stabilizer orbits of the base
                    frontier = [j]
                    rep_row[j] = val
                    while frontier:
                        nxt = []
                        for u in frontier:
                            for g in stab.elements:
                                w = self.base.act_table[g][u]
                                if rep_row[w] is None:
                                    rep_row[w] = val
                                    nxt.append(w)
                        frontier = nxt
                for u, g in transporter.items():
                    for j in self.base.points():
                        rows[u][j] = rep_row[self.base.act_table[ginv(g)][j]]
            value = tuple(tuple(r) for r in rows)
            self.check_value(x, value)
            out.append(value)
        return out

    def describe(self, v) -> str:
        return str([list(r) for r in v])


def invariant_restriction(f: GMap, v):
    return tuple(v[f.images[i]] for i in f.source.points())


def invariant_transfer(f: GMap, v, width: int | None = None):
    if width is None:
        if not v:
            raise GwittError("width needed for a value over the empty set")
        width = len(v[0])
    out = []
    for y in f.target.points():
        row = [0] * width
        for xpt in f.fiber(y):
            row = [a + b for a, b in zip(row, v[xpt])]
        out.append(tuple(row))
    return tuple(out)


def invariant_norm(f: GMap, v, width: int | None = None):
    if width is None:
        if not v:
            raise GwittError("width needed for a value over the empty set")
        width = len(v[0])
    out = []
    for y in f.target.points():
        row = [1] * width
        for xpt in f.fiber(y):
            row = [a * b for a, b in zip(row, v[xpt])]
        out.append(tuple(row))
    return tuple(out)


class BurnsideOverInstance(TambaraInstance):
    """Effective Burnside levels: a value at X is a finite G-set over X,
    compared up to isomorphism over X.  Transfer composes, norm is the
    dependent product, restriction pulls back; no group completion, so the
    structure maps are the honest categorical constructions."""

    name = "burnside"

    def __init__(self, group: Group):
        super().__init__(group)

    def zero(self, x: GSet):
        e = empty_gset(self.group)
        return (e, GMap(e, x, (), validate=False))

    def one(self, x: GSet):
        return (x, identity_map(x))

    def add(self, x: GSet, u, v):
        (a1, p1), (a2, p2) = u, v
        total, (i1, i2) = disjoint_union([a1, a2])
        images = [0] * total.size
        for i in a1.points():
            images[i1.images[i]] = p1.images[i]
        for i in a2.points():
            images[i2.images[i]] = p2.images[i]
        return (total, GMap(total, x, tuple(images), validate=False))

    def mul(self, x: GSet, u, v):
        (a1, p1), (a2, p2) = u, v
        pb = pullback(p2, p1)  # A1 ×_X A2
        return (pb.gset, compose_maps(p1, pb.to_x))

    def eq(self, x: GSet, u, v) -> bool:
        return iso_over(u[1], v[1]) is not None

    def restrict(self, f: GMap, v):
        a, p = v
        pb = pullback(p, f)
        return (pb.gset, pb.to_x)

    def transfer(self, f: GMap, v):
        a, p = v
        return (a, compose_maps(f, p))

    def norm(self, f: GMap, v):
        a, p = v
        dp = dependent_product(p, f)
        return (dp.gset, dp.to_y)

    def sample_values(self, x: GSet, rng: random.Random, count: int) -> list:
        poset = subconjugacy_poset(self.group)
        spaces = [coset_space(self.group, c.rep) for c in poset.classes]
        out = []
        for _ in range(count):
            parts = []
            for _ in range(rng.randrange(3)):
                parts.append(spaces[rng.randrange(len(spaces))])
            if parts:
                a = disjoint_union(parts)[0] if len(parts) > 1 else parts[0]
            else:
                a = empty_gset(self.group)
            maps = list(itertools.islice(equivariant_maps(a, x), 8))
            if a.size and not maps:
                value = self.zero(x)
            elif not a.size:
                value = self.zero(x)
            else:
                value = (a, maps[rng.randrange(len(maps))])
            out.append(value)
        return out

    def describe(self, v) -> str:
        a, p = v
        return f"({a.size} points over {p.target.size}: {p.images})"


class MutatedInstance(TambaraInstance):
    """A deliberately wrong wrapper: the norm map is replaced by the
    transfer.  Used to prove the checker detects violations."""

    def __init__(self, inner: TambaraInstance):
        super().__init__(inner.group)
        self.inner = inner
        self.name = f"{inner.name}-mutated"

    def zero(self, x):
        return self.inner.zero(x)

    def one(self, x):
        return self.inner.one(x)

    def add(self, x, u, v):
        return self.inner.add(x, u, v)

    def mul(self, x, u, v):
        return self.inner.mul(x, u, v)

    def eq(self, x, u, v):
        return self.inner.eq(x, u, v)

    def restrict(self, f, v):
        return self.inner.restrict(f, v)

    def transfer(self, f, v):
        return self.inner.transfer(f, v)

    def norm(self, f, v):
        return self.inner.transfer(f, v)

    def sample_values(self, x, rng, count):
        return self.inner.sample_values(x, rng, count)

    def describe(self, v):
        return self.inner.describe(v)


# -- checker -------------------------------------------------------------------


@dataclass
class RelationCheck:
    relation: str
    status: str
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"relation": self.relation, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class TambaraReport:
    instance: str
    group_name: str
    budget: int
    seed: int
    checks: list = field(default_factory=list)
    instances_checked: int = 0

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "instance": self.instance,
            "group": self.group_name,
            "budget": self.budget,
            "seed": self.seed,
            "instances_checked": self.instances_checked,
            "ok": self.ok,
            "checks": [c.to_json() for c in sorted(
                self.checks, key=lambda c: (c.relation, str(c.witness))
            )],
        }


RELATION_NAMES = (
    "restriction-functorial",
    "transfer-functorial",
    "norm-functorial",
    "restriction-ring-homomorphism",
    "transfer-additive",
    "norm-multiplicative",
    "transfer-base-change",
    "norm-base-change",
    "exponential-distributivity",
)


def small_gsets(group: Group, budget: int) -> list[GSet]:
    """Isomorphism-class representatives of the G-sets with at most `budget`
    points: all orbit multisets, the empty set included."""
    poset = subconjugacy_poset(group)
    spaces = [coset_space(group, c.rep) for c in poset.classes]
    sizes = [s.size for s in spaces]
    results: list[GSet] = []

    def extend(start: int, left: int, chosen: list[int]):
        if chosen:
            parts = [spaces[i] for i in chosen]
            results.append(disjoint_union(parts)[0] if len(parts) > 1 else parts[0])
        else:
            results.append(empty_gset(group))
        for i in range(start, len(spaces)):
            if sizes[i] <= left:
                chosen.append(i)
                extend(i, left - sizes[i], chosen)
                chosen.pop()

    extend(0, budget, [])
    results.sort(key=lambda s: (s.size, s.act_table))
    return results


def _automorphisms(x: GSet) -> list[GMap]:
    from .gsets import isos_over, point_gset
    pt = point_gset(x.group)
    to_pt = GMap(x, pt, (0,) * x.size, validate=False)
    return list(isos_over(to_pt, to_pt))


def _canonical_reps(x: GSet, y: GSet, auts_x: list[GMap],
                    auts_y: list[GMap]) -> list[GMap]:
    """One representative per isomorphism class of arrows x -> y.

    Two maps related by automorphisms of x and y produce isomorphic relation
    diagrams, so testing one of them tests them all.
    """
    reps: dict[tuple, GMap] = {}
    for f in equivariant_maps(x, y):
        best = None
        for alpha in auts_x:
            pre = tuple(f.images[alpha.images[i]] for i in x.points())
            for beta in auts_y:
                relabeled = tuple(beta.images[v] for v in pre)
                if best is None or relabeled < best:
                    best = relabeled
        if best not in reps:
            reps[best] = f
    return [reps[k] for k in sorted(reps)]


def check_tambara_axioms(instance: TambaraInstance, budget: int = 4,
                         seed: int = 0, value_samples: int = 2,
                         relations: tuple[str, ...] | None = None) -> TambaraReport:
    """Enumerate the relation diagrams over G-sets of at most `budget`
    points, one representative per diagram isomorphism class, and test each
    on seeded sample values.

    Each relation name appears once; the report carries a concrete witness
    for every violation.
    """
    wanted = set(relations if relations is not None else RELATION_NAMES)
    unknown = wanted - set(RELATION_NAMES)
    if unknown:
        raise GwittError(f"unknown relations: {sorted(unknown)}")
    report = TambaraReport(instance.name, instance.group.name, budget, seed)
    objects = small_gsets(instance.group, budget)
    auts = [_automorphisms(x) for x in objects]
    maps: dict[tuple[int, int], list[GMap]] = {}
    for i, x in enumerate(objects):
        for j, y in enumerate(objects):
            maps[(i, j)] = _canonical_reps(x, y, auts[i], auts[j])

    failures: dict[str, dict] = {}

    def rng_for(relation: str, signature: str) -> random.Random:
        return random.Random(f"{seed}:{relation}:{signature}")

    def record(relation: str, diagram: str, value_desc: str, lhs, rhs, level: GSet):
        report.instances_checked += 1
        if relation in failures:
            return
        if not instance.eq(level, lhs, rhs):
            failures[relation] = {
                "diagram": diagram,
                "value": value_desc,
                "lhs": instance.describe(lhs),
                "rhs": instance.describe(rhs),
            }

    def sig(f: GMap) -> str:
        return f"{f.source.size}->{f.target.size}:{f.images}"

    # functoriality and the three ring-map properties, over all single maps
    for (i, j), fs in maps.items():
        x, y = objects[i], objects[j]
        for f in fs:
            if "restriction-ring-homomorphism" in wanted:
                rng = rng_for("Rhom", sig(f))
                vals = instance.sample_values(y, rng, value_samples)
                for u in vals:
                    for v in vals:
                        record(
                            "restriction-ring-homomorphism", f"R along {sig(f)}",
                            f"{instance.describe(u)}, {instance.describe(v)}",
                            instance.restrict(f, instance.add(y, u, v)),
                            instance.add(x, instance.restrict(f, u), instance.restrict(f, v)),
                            x,
                        )
                        record(
                            "restriction-ring-homomorphism", f"R along {sig(f)} (mul)",
                            f"{instance.describe(u)}, {instance.describe(v)}",
                            instance.restrict(f, instance.mul(y, u, v)),
                            instance.mul(x, instance.restrict(f, u), instance.restrict(f, v)),
                            x,
                        )
                record("restriction-ring-homomorphism", f"R along {sig(f)} (one)", "1",
                       instance.restrict(f, instance.one(y)), instance.one(x), x)
            if "transfer-additive" in wanted:
                rng = rng_for("Tadd", sig(f))
                vals = instance.sample_values(x, rng, value_samples)
                for u in vals:
                    for v in vals:
                        record(
                            "transfer-additive", f"T along {sig(f)}",
                            f"{instance.describe(u)}, {instance.describe(v)}",
                            instance.transfer(f, instance.add(x, u, v)),
                            instance.add(y, instance.transfer(f, u), instance.transfer(f, v)),
                            y,
                        )
                record("transfer-additive", f"T along {sig(f)} (zero)", "0",
                       instance.transfer(f, instance.zero(x)), instance.zero(y), y)
            if "norm-multiplicative" in wanted:
                rng = rng_for("Nmul", sig(f))
                vals = instance.sample_values(x, rng, value_samples)
                for u in vals:
                    for v in vals:
                        record(
                            "norm-multiplicative", f"N along {sig(f)}",
                            f"{instance.describe(u)}, {instance.describe(v)}",
                            instance.norm(f, instance.mul(x, u, v)),
                            instance.mul(y, instance.norm(f, u), instance.norm(f, v)),
                            y,
                        )
                record("norm-multiplicative", f"N along {sig(f)} (one)", "1",
                       instance.norm(f, instance.one(x)), instance.one(y), y)

    # functoriality over composable pairs
    for (i, j), fs in maps.items():
        x, y = objects[i], objects[j]
        for (j2, k), hs in maps.items():
            if j2 != j:
                continue
            z = objects[k]
            for f in fs:
                for h in hs:
                    hf = compose_maps(h, f)
                    signature = f"{sig(f)};{sig(h)}"
                    if "restriction-functorial" in wanted:
                        rng = rng_for("Rfun", signature)
                        for v in instance.sample_values(z, rng, value_samples):
                            record(
                                "restriction-functorial", signature,
                                instance.describe(v),
                                instance.restrict(f, instance.restrict(h, v)),
                                instance.restrict(hf, v),
                                x,
                            )
                    if "transfer-functorial" in wanted:
                        rng = rng_for("Tfun", signature)
                        for v in instance.sample_values(x, rng, value_samples):
                            record(
                                "transfer-functorial", signature,
                                instance.describe(v),
                                instance.transfer(h, instance.transfer(f, v)),
                                instance.transfer(hf, v),
                                z,
                            )
                    if "norm-functorial" in wanted:
                        rng = rng_for("Nfun", signature)
                        for v in instance.sample_values(x, rng, value_samples):
                            record(
                                "norm-functorial", signature,
                                instance.describe(v),
                                instance.norm(h, instance.norm(f, v)),
                                instance.norm(hf, v),
                                z,
                            )

    # base change along every pullback square built from f: X->Y, g: Y'->Y
    if wanted & {"transfer-base-change", "norm-base-change"}:
        for (i, j), fs in maps.items():
            x, y = objects[i], objects[j]
            for (jp, j2), gs in maps.items():
                if j2 != j:
                    continue
                yp = objects[jp]
                for f in fs:
                    for g in gs:
                        pb = pullback(f, g)  # Y' ×_Y X
                        xp = pb.gset
                        g_prime = pb.to_a  # X' -> X
                        f_prime = pb.to_x  # X' -> Y'
                        signature = f"f={sig(f)} g={sig(g)}"
                        rng = rng_for("base", signature)
                        for v in instance.sample_values(x, rng, value_samples):
                            if "transfer-base-change" in wanted:
                                record(
                                    "transfer-base-change", signature,
                                    instance.describe(v),
                                    instance.restrict(g, instance.transfer(f, v)),
                                    instance.transfer(f_prime, instance.restrict(g_prime, v)),
                                    yp,
                                )
                            if "norm-base-change" in wanted:
                                record(
                                    "norm-base-change", signature,
                                    instance.describe(v),
                                    instance.restrict(g, instance.norm(f, v)),
                                    instance.norm(f_prime, instance.restrict(g_prime, v)),
                                    yp,
                                )

    # the exponential-diagram relation T_q N_{f'} R_e = N_f T_p
    if "exponential-distributivity" in wanted:
        for (i, j), ps in maps.items():
            a, x = objects[i], objects[j]
            for (j2, k), fs in maps.items():
                if j2 != j:
                    continue
                y = objects[k]
                for p in ps:
                    for f in fs:
                        ed = exponential_diagram(p, f)
                        signature = f"p={sig(p)} f={sig(f)}"
                        rng = rng_for("exp", signature)
                        for v in instance.sample_values(a, rng, value_samples):
                            lhs = instance.transfer(
                                ed.pi_p,
                                instance.norm(ed.f_prime, instance.restrict(ed.e, v)),
                            )
                            rhs = instance.norm(f, instance.transfer(p, v))
                            record("exponential-distributivity", signature,
                                   instance.describe(v), lhs, rhs, y)

    for relation in sorted(wanted):
        if relation in failures:
            report.checks.append(RelationCheck(relation, "fail", failures[relation]))
        else:
            report.checks.append(RelationCheck(relation, "pass"))
    report.checks.sort(key=lambda c: c.relation)
    return report
