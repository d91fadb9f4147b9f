"""Small finite groups given by explicit multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable, Mapping, Sequence


class UnsupportedGroup(ValueError):
    pass


class NotAnAction(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple
    table: Mapping[tuple, Hashable]
    identity: Hashable
    generators: tuple = ()
    # per element, the exponent vector in Z/n1 x ... for abelian cyclic products
    degrees: Mapping[Hashable, tuple] | None = None
    moduli: tuple = ()

    def __post_init__(self):
        els = set(self.elements)
        if len(els) != len(self.elements):
            raise UnsupportedGroup("duplicate group elements")
        for a in self.elements:
            for b in self.elements:
                if self.table.get((a, b)) not in els:
                    raise UnsupportedGroup(f"multiplication table incomplete at ({a}, {b})")
        for a in self.elements:
            if self.mul(self.identity, a) != a or self.mul(a, self.identity) != a:
                raise UnsupportedGroup(f"{self.identity} is not an identity")
        for a, b, c in product(self.elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise UnsupportedGroup(f"table is not associative at ({a}, {b}, {c})")
        for a in self.elements:
            self.inverse(a)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a, b):
        return self.table[(a, b)]

    def inverse(self, a):
        for b in self.elements:
            if self.table[(a, b)] == self.identity:
                return b
        raise UnsupportedGroup(f"{a} has no inverse")

    def power(self, a, n: int):
        out = self.identity
        base = a if n >= 0 else self.inverse(a)
        for _ in range(abs(n)):
            out = self.mul(out, base)
        return out

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements)


def _monomial_name(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "".join(parts) or "1"


def cyclic_product(orders: Sequence[int], names: Sequence[str] | None = None) -> FiniteGroup:
    """C_{n1} x ... x C_{nr} with elements named like ``a^2b``."""
    orders = tuple(int(n) for n in orders)
    if not orders or any(n < 1 for n in orders):
        raise UnsupportedGroup("cyclic orders must be positive")
    if names is None:
        names = ("g",) if len(orders) == 1 else tuple("abcdefgh"[: len(orders)])
    if len(names) != len(orders):
        raise UnsupportedGroup("one generator name per cyclic factor")
    vecs = list(product(*(range(n) for n in orders)))
    label = {v: _monomial_name(names, v) for v in vecs}
    table = {}
    for v in vecs:
        for w in vecs:
            table[(label[v], label[w])] = label[tuple((x + y) % n for x, y, n in zip(v, w, orders))]
    gens = tuple(label[tuple((1 if i == k else 0) % n for i, n in enumerate(orders))] for k in range(len(orders)))
    name = "×".join(f"C{n}" for n in orders)
    return FiniteGroup(name, tuple(label[v] for v in vecs), table, label[vecs[0]], gens,
                       {label[v]: v for v in vecs}, orders)


def cyclic(n: int, name: str = "g") -> FiniteGroup:
    return cyclic_product((n,), (name,))


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: elements r^i s^j with s r s = r⁻¹."""
    if n < 2:
        raise UnsupportedGroup("dihedral groups need n ≥ 2")
    pairs = [(i, j) for j in range(2) for i in range(n)]
    label = {p: (_monomial_name(("r",), (p[0],)) if p[0] else "") + ("s" if p[1] else "") or "1" for p in pairs}
    table = {}
    for (i, a) in pairs:
        for (j, b) in pairs:
            k = (i + (-j if a else j)) % n
            table[(label[(i, a)], label[(j, b)])] = label[(k, (a + b) % 2)]
    return FiniteGroup(f"D{2 * n}", tuple(label[p] for p in pairs), table, "1", ("r", "s"))


def symmetric3() -> FiniteGroup:
    g = dihedral(3)
    return FiniteGroup("S3", g.elements, g.table, g.identity, g.generators)


@dataclass(frozen=True)
class Action:
    """G acting on H by automorphisms: ``phi[g][h]``."""

    acting: FiniteGroup
    acted: FiniteGroup
    phi: Mapping[Hashable, Mapping[Hashable, Hashable]]

    def __post_init__(self):
        G, H = self.acting, self.acted
        for g in G.elements:
            if g not in self.phi or set(self.phi[g]) != set(H.elements):
                raise NotAnAction(f"φ({g}) is not defined on all of {H.name}")
            if sorted(map(str, self.phi[g].values())) != sorted(map(str, H.elements)):
                raise NotAnAction(f"φ({g}) is not a bijection")
            for h1 in H.elements:
                for h2 in H.elements:
                    if self.phi[g][H.mul(h1, h2)] != H.mul(self.phi[g][h1], self.phi[g][h2]):
                        raise NotAnAction(f"φ({g}) is not a homomorphism")
        for h in H.elements:
            if self.phi[G.identity][h] != h:
                raise NotAnAction("the identity must act trivially")
        for g1 in G.elements:
            for g2 in G.elements:
                for h in H.elements:
                    if self.phi[G.mul(g1, g2)][h] != self.phi[g1][self.phi[g2][h]]:
                        raise NotAnAction(f"φ({g1}{g2}) ≠ φ({g1})φ({g2})")

    def __call__(self, g, h):
        return self.phi[g][h]

    @classmethod
    def from_function(cls, G: FiniteGroup, H: FiniteGroup, f: Callable) -> Action:
        return cls(G, H, {g: {h: f(g, h) for h in H.elements} for g in G.elements})


def inversion_action(G: FiniteGroup, H: FiniteGroup) -> Action:
    """The generator of a group of order 2 acts on an abelian H by inversion."""
    if G.order != 2 or not H.is_abelian():
        raise NotAnAction("inversion action needs |G| = 2 and H abelian")
    return Action.from_function(G, H, lambda g, h: h if g == G.identity else H.inverse(h))


def trivial_action(G: FiniteGroup, H: FiniteGroup) -> Action:
    return Action.from_function(G, H, lambda g, h: h)


def semidirect_product(action: Action) -> FiniteGroup:
    """H ⋊ G with (h, g)(h', g') = (h φ_g(h'), g g'); elements are pairs."""
    G, H = action.acting, action.acted
    els = tuple((h, g) for h in H.elements for g in G.elements)
    table = {}
    for (h1, g1) in els:
        for (h2, g2) in els:
            table[((h1, g1), (h2, g2))] = (H.mul(h1, action(g1, h2)), G.mul(g1, g2))
    return FiniteGroup(f"{H.name}⋊{G.name}", els, table, (H.identity, G.identity))
