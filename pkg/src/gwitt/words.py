"""Words in the free {+,*}-algebra on named variables plus the two unit
symbols, their support polynomials, evaluation on finite labeled sets, and
the preferred coherence bijections between evaluations of equal simple
support."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SupportError
from .intpoly import Poly


class Word:
    """An expression tree with leaves in the variables or {zero, one} and
    binary nodes labeled + or *."""

    __slots__ = ("kind", "name", "left", "right", "_hash")

    def __init__(self, kind: str, name: str | None = None,
                 left: "Word | None" = None, right: "Word | None" = None):
        if kind not in ("zero", "one", "var", "add", "mul"):
            raise ValueError(f"bad word kind {kind!r}")
        self.kind = kind
        self.name = name
        self.left = left
        self.right = right
        self._hash = None

    @staticmethod
    def zero() -> "Word":
        return Word("zero")

    @staticmethod
    def one() -> "Word":
        return Word("one")

    @staticmethod
    def var(name: str) -> "Word":
        return Word("var", name=name)

    def __add__(self, other: "Word") -> "Word":
        return Word("add", left=self, right=other)

    def __mul__(self, other: "Word") -> "Word":
        return Word("mul", left=self, right=other)

    def leaves(self) -> int:
        if self.kind in ("zero", "one", "var"):
            return 1
        return self.left.leaves() + self.right.leaves()

    def depth(self) -> int:
        if self.kind in ("zero", "one", "var"):
            return 1
        return 1 + max(self.left.depth(), self.right.depth())

    def variables(self) -> tuple[str, ...]:
        out: set[str] = set()

        def walk(w: Word):
            if w.kind == "var":
                out.add(w.name)
            elif w.kind in ("add", "mul"):
                walk(w.left)
                walk(w.right)

        walk(self)
        return tuple(sorted(out))

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if self.kind != other.kind or self.name != other.name:
            return False
        if self.kind in ("zero", "one", "var"):
            return True
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        if self._hash is None:
            if self.kind in ("zero", "one", "var"):
                self._hash = hash((self.kind, self.name))
            else:
                self._hash = hash((self.kind, self.left, self.right))
        return self._hash

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "one":
            return "1"
        if self.kind == "var":
            return self.name
        op = " + " if self.kind == "add" else " * "
        return f"({self.left}{op}{self.right})"

    def __repr__(self):
        return f"Word({self})"


def supp(w: Word) -> Poly:
    """The support homomorphism into Z[X]: zero -> 0, one -> 1, additive and
    multiplicative on nodes."""
    if w.kind == "zero":
        return Poly()
    if w.kind == "one":
        return Poly.const(1)
    if w.kind == "var":
        return Poly.var(w.name)
    if w.kind == "add":
        return supp(w.left) + supp(w.right)
    return supp(w.left) * supp(w.right)


@dataclass(frozen=True)
class SetAssignment:
    """A finite labeled set per variable; labels are distinct within a set."""

    sets: tuple[tuple[str, tuple[str, ...]], ...]

    @staticmethod
    def of(mapping: dict[str, int] | dict[str, tuple[str, ...]]) -> "SetAssignment":
        items = []
        for name in sorted(mapping):
            value = mapping[name]
            if isinstance(value, int):
                labels = tuple(f"{name}.{k}" for k in range(value))
            else:
                labels = tuple(value)
            if len(set(labels)) != len(labels):
                raise ValueError(f"labels for {name} are not distinct")
            items.append((name, labels))
        return SetAssignment(tuple(items))

    def labels(self, name: str) -> tuple[str, ...]:
        for n, ls in self.sets:
            if n == name:
                return ls
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.sets)

    def restrict_inject(self, other: "SetAssignment") -> bool:
        """True when every labeled set here is a prefix-wise subset of other's."""
        return all(set(self.labels(n)) <= set(other.labels(n)) for n in self.names())


def eval_word(w: Word, a: SetAssignment) -> tuple:
    """The evaluation in finite sets; elements carry full provenance.

    zero -> (), one -> a single unit element, + -> tagged union,
    * -> cartesian pairs.
    """
    if w.kind == "zero":
        return ()
    if w.kind == "one":
        return (("u",),)
    if w.kind == "var":
        return tuple(("v", w.name, label) for label in a.labels(w.name))
    if w.kind == "add":
        left = eval_word(w.left, a)
        right = eval_word(w.right, a)
        return tuple(("+", 0, e) for e in left) + tuple(("+", 1, e) for e in right)
    left = eval_word(w.left, a)
    right = eval_word(w.right, a)
    return tuple(("*", e1, e2) for e1 in left for e2 in right)


def _normal_form(w: Word, elem) -> tuple[tuple[str, ...], tuple[tuple[str, str], ...]]:
    """(monomial variables, sorted (variable, chosen label) pairs) for one
    element of eval_word(w, a); defined whenever the support is square-free
    along this element's branch."""
    if w.kind == "one":
        return (), ()
    if w.kind == "var":
        _, name, label = elem
        return (name,), ((name, label),)
    if w.kind == "add":
        _, side, inner = elem
        return _normal_form(w.left if side == 0 else w.right, inner)
    if w.kind == "mul":
        _, e1, e2 = elem
        m1, c1 = _normal_form(w.left, e1)
        m2, c2 = _normal_form(w.right, e2)
        if set(m1) & set(m2):
            raise SupportError("monomial is not square-free along this element")
        merged = tuple(sorted(m1 + m2))
        return merged, tuple(sorted(c1 + c2))
    raise SupportError("zero has no elements")


def coherence_iso(w: Word, w2: Word, a: SetAssignment) -> dict:
    """The preferred bijection eval(w, a) -> eval(w2, a).

    Requires supp(w) == supp(w2) and that the common support is simple; each
    element is normalized to its (monomial, choice-of-labels) pair and the two
    normalizations are matched.
    """
    s1, s2 = supp(w), supp(w2)
    if s1 != s2:
        raise SupportError("words have different supports")
    if not s1.is_simple():
        raise SupportError("common support is not simple")
    left = eval_word(w, a)
    right = eval_word(w2, a)
    nf_left = {e: _normal_form(w, e) for e in left}
    nf_right = {_normal_form(w2, e): e for e in right}
    if len(nf_right) != len(right):
        raise SupportError("normalization is not injective; support not simple")
    out = {}
    for e, key in nf_left.items():
        if key not in nf_right:
            raise SupportError("evaluations do not match termwise")
        out[e] = nf_right[key]
    if len(set(out.values())) != len(out) or len(out) != len(right):
        raise SupportError("normalization failed to produce a bijection")
    return out


def normal_form_index(w: Word, a: SetAssignment) -> dict:
    """element -> (monomial, choices); raises unless it is a bijection onto
    the index family determined by supp(w)."""
    s = supp(w)
    if not s.is_simple():
        raise SupportError("support is not simple")
    elems = eval_word(w, a)
    nf = {e: _normal_form(w, e) for e in elems}
    expected = set()
    for mono, _coeff in s.terms.items():
        names = tuple(n for n, _ in mono)
        for combo in itertools.product(*(a.labels(n) for n in names)):
            expected.add((names, tuple(sorted(zip(names, combo)))))
    got = set(nf.values())
    if got != expected or len(got) != len(elems):
        raise SupportError("normal forms are not a bijection onto the index family")
    return nf
