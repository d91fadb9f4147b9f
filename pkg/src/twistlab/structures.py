"""Algebra, coalgebra, bialgebra and Frobenius structures with diagram checks.

Every check compares two composite maps with :func:`maps_equal` and records
the outcome as a :class:`Check`.  A :class:`Report` bundles the checks of one
verification together with a short description of the claim being tested.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .scalar import FieldSpec
from .tensor import (
    Comparison,
    LinearMap,
    ShapeMismatch,
    Singular,
    Space,
    Witness,
    compose,
    ground,
    identity,
    invert,
    left_unitor,
    left_unitor_inv,
    maps_equal,
    max_dim,
    permutation,
    right_unitor,
    right_unitor_inv,
    tensor_map,
    tensor_space,
)


class StructureError(Exception):
    pass


class DegeneratePairing(StructureError):
    pass


class NonAssociativePairing(StructureError):
    pass


class CompositeDisagreement(StructureError):
    """The left and right pairing-to-coalgebra composites differ."""


# -- data ---------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraData:
    space: Space
    mul: LinearMap
    unit: LinearMap

    def __post_init__(self):
        A, k = self.space, ground(self.space.field)
        if self.mul.domain != tensor_space(A, A) or self.mul.codomain != A:
            raise ShapeMismatch("multiplication must map A⊗A to A")
        if self.unit.domain != k or self.unit.codomain != A:
            raise ShapeMismatch("unit must map k to A")

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    def product(self, a, b):
        """Multiply two basis labels (or vectors) of the algebra."""
        from .tensor import Vector, tensor_vectors
        va = a if isinstance(a, Vector) else Vector.basis(self.space, a)
        vb = b if isinstance(b, Vector) else Vector.basis(self.space, b)
        return self.mul.apply(tensor_vectors(va, vb))

    def one(self):
        return self.unit.apply("1")


@dataclass(frozen=True)
class CoalgebraData:
    space: Space
    comul: LinearMap
    counit: LinearMap

    def __post_init__(self):
        C, k = self.space, ground(self.space.field)
        if self.comul.domain != C or self.comul.codomain != tensor_space(C, C):
            raise ShapeMismatch("comultiplication must map C to C⊗C")
        if self.counit.domain != C or self.counit.codomain != k:
            raise ShapeMismatch("counit must map C to k")

    @property
    def field(self) -> FieldSpec:
        return self.space.field


@dataclass(frozen=True)
class FrobeniusData:
    algebra: AlgebraData
    coalgebra: CoalgebraData

    def __post_init__(self):
        if self.algebra.space != self.coalgebra.space:
            raise ShapeMismatch("algebra and coalgebra must share a space")

    @property
    def space(self) -> Space:
        return self.algebra.space


@dataclass(frozen=True)
class NakayamaAuto:
    """Θ with β(x⊗y) = β(y⊗Θx) for all x, y."""

    theta: LinearMap
    convention: str = "beta(x,y) = beta(y,theta(x))"


# -- reports ------------------------------------------------------------------

DIAGRAM, CLAIM, INPUT, PROPERTY = "diagram", "claim", "input", "property"


@dataclass
class Check:
    """One verified statement.

    ``kind`` is ``diagram`` for a commutative diagram, ``claim`` for a
    logical relation between other checks (an implication the library asserts), ``input`` for
    a precondition and ``property`` for informational findings that are not
    expected to hold in general.
    """

    name: str
    ok: bool
    witness: Witness | None = None
    kind: str = DIAGRAM
    detail: str = ""

    @classmethod
    def from_comparison(cls, name: str, cmp: Comparison, detail: str = "") -> Check:
        if not cmp.equal and not detail:
            detail = f"{cmp.differing} basis vector(s) differ"
        return cls(name, cmp.equal, cmp.witness, DIAGRAM, detail)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"


@dataclass
class Report:
    title: str
    checks: list[Check] = dc_field(default_factory=list)
    citation: str = ""
    notes: list[str] = dc_field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks: Iterable[Check], prefix: str = "") -> None:
        for c in checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness, c.kind, c.detail))

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    @property
    def ok(self) -> bool:
        """True when every diagram and input check passes."""
        return all(c.ok for c in self.checks if c.kind in (DIAGRAM, INPUT))

    @property
    def claims_hold(self) -> bool:
        return all(c.ok for c in self.checks if c.kind == CLAIM)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok and c.kind in (DIAGRAM, INPUT)]

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        lines = [f"{self.title}: {'pass' if self.ok else 'fail'}"]
        for c in self.checks:
            line = f"  [{c.status}] {c.name}"
            if c.detail:
                line += f" ({c.detail})"
            lines.append(line)
            if c.witness is not None:
                lines.append(f"      witness {c.witness}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def claim(name: str, ok: bool, detail: str = "") -> Check:
    return Check(name, ok, None, CLAIM, detail)


def implies(p: bool, q: bool) -> bool:
    return (not p) or q


# -- algebra / coalgebra checks ------------------------------------------------

def check_algebra(a: AlgebraData) -> Report:
    A = a.space
    I = identity(A)
    m, u = a.mul, a.unit
    r = Report("algebra", citation="unit and associativity axioms of an algebra")
    # ∇(η⊗1) = λ on k⊗A, ∇(1⊗η) = ρ on A⊗k
    r.add(Check.from_comparison("left unit", maps_equal(compose(m, tensor_map(u, I)), left_unitor(A))))
    r.add(Check.from_comparison("right unit", maps_equal(compose(m, tensor_map(I, u)), right_unitor(A))))
    r.add(Check.from_comparison(
        "associativity",
        maps_equal(compose(m, tensor_map(m, I)), compose(m, tensor_map(I, m)))))
    return r


def check_coalgebra(c: CoalgebraData) -> Report:
    C = c.space
    I = identity(C)
    d, e = c.comul, c.counit
    r = Report("coalgebra", citation="counit and coassociativity axioms of a coalgebra")
    r.add(Check.from_comparison("left counit", maps_equal(compose(tensor_map(e, I), d), left_unitor_inv(C))))
    r.add(Check.from_comparison("right counit", maps_equal(compose(tensor_map(I, e), d), right_unitor_inv(C))))
    r.add(Check.from_comparison(
        "coassociativity",
        maps_equal(compose(tensor_map(d, I), d), compose(tensor_map(I, d), d))))
    return r


def sigma23(A: Space) -> LinearMap:
    return permutation([A, A, A, A], (0, 2, 1, 3))


def check_bialgebra(a: AlgebraData, c: CoalgebraData) -> Report:
    if a.space != c.space:
        raise ShapeMismatch("bialgebra needs a shared space")
    A = a.space
    k = ground(A.field)
    kk = tensor_space(k, k)
    lam_k = left_unitor(k)         # k⊗k → k
    lam_k_inv = left_unitor_inv(k)  # k → k⊗k
    m, u, d, e = a.mul, a.unit, c.comul, c.counit
    r = Report("bialgebra", citation="bialgebra compatibility of multiplication and comultiplication")
    r.add(Check.from_comparison(
        "counit multiplicative", maps_equal(compose(e, m), compose(lam_k, tensor_map(e, e)))))
    r.add(Check.from_comparison(
        "comultiplication unital", maps_equal(compose(d, u), compose(tensor_map(u, u), lam_k_inv))))
    r.add(Check.from_comparison("counit of unit", maps_equal(compose(e, u), identity(k))))
    r.add(Check.from_comparison(
        "multiplication-comultiplication", maps_equal(compose(d, m), product_of_coproducts(m, d))))
    assert kk.dim == 1
    return r


def product_of_coproducts(m: LinearMap, d: LinearMap) -> LinearMap:
    """(∇⊗∇)∘σ₂₃∘(Δ⊗Δ) on A⊗A, i.e. a⊗b ↦ Σ a₁b₁⊗a₂b₂.

    Evaluated column by column so that A⊗A⊗A⊗A is never materialized; when
    that space is small enough the permutation route is computed too and
    must agree.
    """
    A = m.codomain
    n = A.dim
    AA = d.codomain
    cols = []
    for i in range(n):
        for j in range(n):
            acc: dict[int, object] = {}
            for p, c in d.columns[i].items():
                a1, a2 = divmod(p, n)
                for q, e in d.columns[j].items():
                    b1, b2 = divmod(q, n)
                    left, right = m.columns[a1 * n + b1], m.columns[a2 * n + b2]
                    ce = c * e
                    for x, u in left.items():
                        for y, v in right.items():
                            k = x * n + y
                            acc[k] = acc[k] + ce * u * v if k in acc else ce * u * v
            cols.append(acc)
    out = LinearMap(m.domain, AA, cols, "(∇⊗∇)σ₂₃(Δ⊗Δ)")
    if n ** 4 <= max_dim():
        other = compose(tensor_map(m, m), sigma23(A), tensor_map(d, d))
        if not maps_equal(out, other):
            raise AssertionError("column-wise and permutation routes disagree")
    return out


def check_frobenius(f: FrobeniusData) -> Report:
    A = f.space
    I = identity(A)
    m, d = f.algebra.mul, f.coalgebra.comul
    r = Report("frobenius", citation="comultiplication is a bimodule map over the multiplication")
    dm = compose(d, m)
    r.add(Check.from_comparison(
        "left frobenius square", maps_equal(dm, compose(tensor_map(I, m), tensor_map(d, I)))))
    r.add(Check.from_comparison(
        "right frobenius square", maps_equal(dm, compose(tensor_map(m, I), tensor_map(I, d)))))
    return r


def is_frobenius(f: FrobeniusData) -> bool:
    return check_algebra(f.algebra).ok and check_coalgebra(f.coalgebra).ok and check_frobenius(f).ok


# -- pairings -------------------------------------------------------------------

def pairing_from_frobenius(f: FrobeniusData) -> LinearMap:
    return compose(f.coalgebra.counit, f.algebra.mul).renamed("β")


def copairing_from_frobenius(f: FrobeniusData) -> LinearMap:
    return compose(f.coalgebra.comul, f.algebra.unit).renamed("α")


def _pairing_space(beta: LinearMap) -> Space:
    dom = beta.domain
    parts = dom.factors
    if len(parts) % 2:
        raise ShapeMismatch("pairing domain must be V⊗V")
    half = len(parts) // 2
    V = tensor_space(*parts[:half])
    if tensor_space(*parts[half:]) != V or beta.codomain != ground(dom.field):
        raise ShapeMismatch("pairing must map V⊗V to k")
    return V


def gram_matrix(beta: LinearMap) -> list[list]:
    """G[i][j] = β(e_i⊗e_j)."""
    V = _pairing_space(beta)
    n = V.dim
    zero = V.field.zero
    G = [[zero] * n for _ in range(n)]
    for idx, col in enumerate(beta.columns):
        if col:
            G[idx // n][idx % n] = col.get(0, zero)
    return G


def _square(V: Space, rows) -> LinearMap:
    return LinearMap.from_matrix(V, V, rows)


@dataclass
class NondegeneracyResult:
    ok: bool
    copairing: LinearMap | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def check_nondegenerate(beta: LinearMap) -> NondegeneracyResult:
    """Invert the Gram matrix; if possible return the snake partner α.

    With G[i][j] = β(e_i⊗e_j) the partner is α(1) = Σ C[i][j] e_i⊗e_j where
    C = G⁻¹, and both snake composites are verified to be the identity.
    """
    V = _pairing_space(beta)
    G = _square(V, gram_matrix(beta))
    try:
        Ginv = invert(G)
    except Singular:
        return NondegeneracyResult(False, None, "Gram matrix is singular")
    C = Ginv.matrix()
    n = V.dim
    VV = tensor_space(V, V)
    k = ground(V.field)
    col = {}
    for i in range(n):
        for j in range(n):
            if C[i][j]:
                col[i * n + j] = C[i][j]
    alpha = LinearMap(k, VV, [col], "α")
    ok, detail = _snakes_hold(beta, alpha, V)
    if not ok:
        raise AssertionError(f"inverse Gram matrix fails the snake identity: {detail}")
    return NondegeneracyResult(True, alpha)


def _snakes_hold(beta: LinearMap, alpha: LinearMap, V: Space) -> tuple[bool, str]:
    I = identity(V)
    # V → k⊗V → V⊗V⊗V → V⊗k → V
    left = compose(right_unitor(V), tensor_map(I, beta), tensor_map(alpha, I), left_unitor_inv(V))
    right = compose(left_unitor(V), tensor_map(beta, I), tensor_map(I, alpha), right_unitor_inv(V))
    c1, c2 = maps_equal(left, I), maps_equal(right, I)
    if c1 and c2:
        return True, ""
    w = c1.witness or c2.witness
    return False, str(w)


def check_snake(beta: LinearMap, alpha: LinearMap) -> Report:
    V = _pairing_space(beta)
    I = identity(V)
    r = Report("snake identities", citation="non-degenerate pairing and its copairing")
    left = compose(right_unitor(V), tensor_map(I, beta), tensor_map(alpha, I), left_unitor_inv(V))
    right = compose(left_unitor(V), tensor_map(beta, I), tensor_map(I, alpha), right_unitor_inv(V))
    r.add(Check.from_comparison("snake (copairing on the left)", maps_equal(left, I)))
    r.add(Check.from_comparison("snake (copairing on the right)", maps_equal(right, I)))
    return r


def check_associative_pairing(beta: LinearMap, a: AlgebraData) -> Check:
    I = identity(a.space)
    cmp = maps_equal(compose(beta, tensor_map(I, a.mul)), compose(beta, tensor_map(a.mul, I)))
    return Check.from_comparison("associative pairing", cmp)


def frobenius_from_pairing(a: AlgebraData, beta: LinearMap) -> FrobeniusData:
    """Rebuild (Δ, ε) from an associative non-degenerate pairing.

    Both the left and the right composite are computed for Δ and for ε and
    must coincide.
    """
    if not check_associative_pairing(beta, a).ok:
        raise NonAssociativePairing("pairing is not associative")
    nd = check_nondegenerate(beta)
    if not nd.ok:
        raise DegeneratePairing(nd.detail)
    alpha = nd.copairing
    A = a.space
    I = identity(A)
    m, u = a.mul, a.unit
    delta_r = compose(tensor_map(m, I), tensor_map(I, alpha), right_unitor_inv(A))
    delta_l = compose(tensor_map(I, m), tensor_map(alpha, I), left_unitor_inv(A))
    eps_r = compose(beta, tensor_map(I, u), right_unitor_inv(A))
    eps_l = compose(beta, tensor_map(u, I), left_unitor_inv(A))
    for name, x, y in (("comultiplication", delta_r, delta_l), ("counit", eps_r, eps_l)):
        cmp = maps_equal(x, y)
        if not cmp:
            raise CompositeDisagreement(f"left and right {name} composites differ {cmp.witness}")
    f = FrobeniusData(a, CoalgebraData(A, delta_r.renamed("Δ"), eps_r.renamed("ε")))
    if not check_frobenius(f).ok:
        raise AssertionError("reconstructed structure is not Frobenius")
    return f


def check_symmetric(beta: LinearMap) -> Check:
    V = _pairing_space(beta)
    cmp = maps_equal(compose(beta, permutation([V, V], (1, 0))), beta)
    return Check.from_comparison("symmetric pairing", cmp)


def check_special(f: FrobeniusData) -> Check:
    cmp = maps_equal(compose(f.algebra.mul, f.coalgebra.comul), identity(f.space))
    return Check.from_comparison("special", cmp)


def check_separable(a: AlgebraData, gamma: LinearMap) -> Report:
    A = a.space
    I = identity(A)
    m = a.mul
    if gamma.domain != A or gamma.codomain != tensor_space(A, A):
        raise ShapeMismatch("separability section must map A to A⊗A")
    r = Report("separable", citation="multiplication has a bimodule right inverse")
    r.add(Check.from_comparison("section of multiplication", maps_equal(compose(m, gamma), I)))
    # Γ is a bimodule map: Γ(a b c) = a Γ(b) c on A⊗A⊗A
    lhs = compose(gamma, m, tensor_map(I, m))
    rhs = compose(tensor_map(m, m), tensor_map(I, gamma, I))
    r.add(Check.from_comparison("bimodule section", maps_equal(lhs, rhs)))
    return r


def nakayama_from_pairing(a: AlgebraData, beta: LinearMap) -> NakayamaAuto:
    """Θ with β(x⊗y) = β(y⊗Θx), solved from the Gram matrix as Θ = G⁻¹Gᵀ."""
    V = a.space
    if _pairing_space(beta) != V:
        raise ShapeMismatch("pairing is not on the algebra's space")
    G = _square(V, gram_matrix(beta))
    try:
        Ginv = invert(G)
    except Singular:
        raise DegeneratePairing("Gram matrix is singular") from None
    Gt = _square(V, [list(r) for r in zip(*G.matrix())])
    theta = compose(Ginv, Gt).renamed("Θ")
    check = maps_equal(compose(beta, permutation([V, V], (1, 0))), compose(beta, tensor_map(identity(V), theta)))
    if not check:
        raise AssertionError(f"Nakayama automorphism fails its defining identity {check.witness}")
    return NakayamaAuto(theta)


def scale_coalgebra(c: CoalgebraData, comul_factor, counit_factor) -> CoalgebraData:
    """Rescale (Δ, ε) to (sΔ, tε); counital iff s·t = 1."""
    return CoalgebraData(c.space, c.comul.scale(comul_factor), c.counit.scale(counit_factor))


def check_all(checks: Sequence[Check]) -> bool:
    return all(c.ok for c in checks)
