"""Bispans of finite G-sets: generators, equivalence, composition via the
exponential diagram, and fiber polynomials."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GwittError
from .gsets import (
    GMap,
    GSet,
    compose_maps,
    disjoint_union,
    empty_gset,
    exponential_diagram,
    identity_map,
    iso_over,
    isos_over,
    product,
    pullback,
)
from .intpoly import Poly

DEFAULT_SEARCH_BUDGET = 10 ** 6


class Bispan:
    """A diagram X <- A -> B -> Y of G-sets; a morphism X => Y.

    Bispans are compared up to levelwise isomorphism fixing X and Y; the raw
    representative is not normalized.
    """

    __slots__ = ("x", "a", "b", "y", "p", "q", "r")

    def __init__(self, p: GMap, q: GMap, r: GMap):
        if p.source != q.source:
            raise GwittError("p and q need the same source A")
        if q.target != r.source:
            raise GwittError("q must land in the source of r")
        self.x = p.target
        self.a = p.source
        self.b = q.target
        self.y = r.target
        self.p = p
        self.q = q
        self.r = r

    @property
    def source(self) -> GSet:
        return self.x

    @property
    def target(self) -> GSet:
        return self.y

    def __repr__(self):
        return (f"Bispan({self.x.size} <- {self.a.size} -> "
                f"{self.b.size} -> {self.y.size})")


def identity_bispan(x: GSet) -> Bispan:
    i = identity_map(x)
    return Bispan(i, i, i)


def gen_R(f: GMap) -> Bispan:
    """[Y <-f X = X = X], the restriction generator, a morphism Y => X."""
    i = identity_map(f.source)
    return Bispan(f, i, i)


def gen_T(f: GMap) -> Bispan:
    """[X = X = X -f> Y], the transfer generator, a morphism X => Y."""
    i = identity_map(f.source)
    return Bispan(i, i, f)


def gen_N(f: GMap) -> Bispan:
    """[X = X -f> Y = Y], the norm generator, a morphism X => Y."""
    i = identity_map(f.source)
    return Bispan(i, f, identity_map(f.target))


def zero_bispan(w: GSet) -> Bispan:
    """The morphism W => ∅ through empty middle stages."""
    e = empty_gset(w.group)
    to_w = GMap(e, w, (), validate=False)
    ee = identity_map(e)
    return Bispan(to_w, ee, ee)


def compose(psi: Bispan, phi: Bispan) -> Bispan:
    """psi ∘ phi, by the three pullbacks and one exponential diagram."""
    if phi.y != psi.x:
        raise GwittError("bispans are not composable")
    # B' = B ×_Y C over phi.r and psi.p
    pb1 = pullback(psi.p, phi.r)
    bp = pb1.gset
    bp_to_b = pb1.to_x
    bp_to_c = pb1.to_a
    # exponential diagram of (B' -> C) along psi.q : C -> D
    ed = exponential_diagram(bp_to_c, psi.q)
    # A' = A ×_B B'
    pb2 = pullback(bp_to_b, phi.q)
    ap = pb2.gset
    ap_to_a = pb2.to_x
    ap_to_bp = pb2.to_a
    # A'' = A' ×_{B'} C~  along the evaluation e : C~ -> B'
    pb3 = pullback(ed.e, ap_to_bp)
    app = pb3.gset
    app_to_ap = pb3.to_x
    app_to_w = pb3.to_a
    new_p = compose_maps(phi.p, compose_maps(ap_to_a, app_to_ap))
    new_q = compose_maps(ed.f_prime, app_to_w)
    new_r = compose_maps(psi.r, ed.pi_p)
    return Bispan(new_p, new_q, new_r)


def pair(u: Bispan, v: Bispan) -> Bispan:
    """[W <- A1⊔A2 -> B1⊔B2 -> X1⊔X2]; the pairing into the product in the
    bispan category (whose products are disjoint unions)."""
    if u.x != v.x:
        raise GwittError("pairing needs a common source")
    a, (ia1, ia2) = disjoint_union([u.a, v.a])
    b, (ib1, ib2) = disjoint_union([u.b, v.b])
    y, (iy1, iy2) = disjoint_union([u.y, v.y])
    p = GMap(a, u.x,
             tuple(u.p.images) + tuple(v.p.images), validate=False)
    q = GMap(a, b,
             tuple(ib1.images[u.q.images[i]] for i in u.a.points())
             + tuple(ib2.images[v.q.images[i]] for i in v.a.points()),
             validate=False)
    r = GMap(b, y,
             tuple(iy1.images[u.r.images[i]] for i in u.b.points())
             + tuple(iy2.images[v.r.images[i]] for i in v.b.points()),
             validate=False)
    return Bispan(p, q, r)


def bispan_equivalent(u: Bispan, v: Bispan,
                      budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Decide equivalence: isomorphisms A -> A', B -> B' making the ladder
    commute over the shared X and Y."""
    if u.x != v.x or u.y != v.y:
        raise GwittError("bispans do not share end objects")
    if u.a.size != v.a.size or u.b.size != v.b.size:
        return False
    # search beta: B -> B' over Y, then alpha: A -> A' over X and beta∘q
    xb, _, _ = product(u.x, v.b)

    def into_product(pmap: GMap, qmap: GMap) -> GMap:
        images = tuple(
            pmap.images[i] * v.b.size + qmap.images[i]
            for i in pmap.source.points()
        )
        return GMap(pmap.source, xb, images, validate=False)

    m2 = into_product(v.p, v.q)
    for beta in isos_over(u.r, v.r, budget=budget):
        m1 = into_product(u.p, compose_maps(beta, u.q))
        if iso_over(m1, m2, budget=budget) is not None:
            return True
    return False


@dataclass(frozen=True)
class FiberPolynomial:
    """The sum-of-products shape of a bispan over one point of Y."""

    base_point: int
    poly: Poly


def point_var(i: int) -> str:
    return f"x{i}"


def fiber_polynomial(phi: Bispan, y: int) -> FiberPolynomial:
    """Σ_{b ∈ r^-1(y)} Π_{a ∈ q^-1(b)} x_{p(a)}, an element of N[points of X]."""
    if not (0 <= y < phi.y.size):
        raise GwittError("base point out of range")
    total = Poly()
    for b in phi.r.fiber(y):
        mono = Poly.const(1)
        for a in phi.q.fiber(b):
            mono = mono * Poly.var(point_var(phi.p.images[a]))
        total = total + mono
    return FiberPolynomial(y, total)


def fiber_polynomials(phi: Bispan) -> tuple[FiberPolynomial, ...]:
    return tuple(fiber_polynomial(phi, y) for y in phi.y.points())


def is_simple(phi: Bispan) -> bool:
    """True iff every fiber polynomial is a sum of distinct square-free
    monomials."""
    return all(fp.poly.is_simple() for fp in fiber_polynomials(phi))


def substitute_fibers(psi_poly: Poly, phi: Bispan) -> Poly:
    """Replace each variable x_y of a polynomial over points of psi's source
    by the fiber polynomial of phi at y."""
    mapping = {
        point_var(y): fiber_polynomial(phi, y).poly
        for y in phi.y.points()
    }
    return psi_poly.substitute(mapping)


def canonical_factorization(phi: Bispan) -> tuple[GMap, GMap, GMap]:
    """(p, q, r) with T_r ∘ N_q ∘ R_p equivalent to phi."""
    return phi.p, phi.q, phi.r


def recompose(p: GMap, q: GMap, r: GMap) -> Bispan:
    return compose(gen_T(r), compose(gen_N(q), gen_R(p)))


def bispan_to_json(phi: Bispan) -> dict:
    return {
        "x": phi.x.to_json(),
        "a": phi.a.to_json(),
        "b": phi.b.to_json(),
        "y": phi.y.to_json(),
        "p": list(phi.p.images),
        "q": list(phi.q.images),
        "r": list(phi.r.images),
    }
