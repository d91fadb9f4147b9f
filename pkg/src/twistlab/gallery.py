"""Named examples: group algebras, truncated polynomials, quantum planes and
complete intersections, Jordan/Weyl/U_q probes, skew group algebras, and the
symmetric twisted product of two copies of kC2.

Each constructor returns exact structure maps.  ``DEMOS`` maps demo names to
descriptors whose ``run`` produces reports with expected verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb, gcd
from typing import Callable, Hashable, Mapping, Sequence

from . import groups as grp
from .scalar import FieldSpec, Scalar, ScalarLike
from .structures import (
    PROPERTY,
    AlgebraData,
    Check,
    CoalgebraData,
    FrobeniusData,
    Report,
    check_algebra,
    check_bialgebra,
    check_coalgebra,
    check_frobenius,
    check_separable,
    check_special,
    check_symmetric,
    claim,
    frobenius_from_pairing,
    nakayama_from_pairing,
    pairing_from_frobenius,
)
from .tensor import (
    DiagramPath,
    Grading,
    LinearMap,
    PartialLinearMap,
    Space,
    Vector,
    Witness,
    compose,
    ground,
    identity,
    maps_equal,
    tensor_map,
    tensor_space,
    tensor_vectors,
)
from .twist import (
    TwistingMap,
    _columns_to_map,
    _extend_columns,
    bicharacter_twist,
    build_twisted_algebra,
    check_bialgebra_obstruction,
    check_coalgebra_compat,
    check_frobenius_inheritance,
    check_nakayama_candidates,
    check_pointwise_counterexample,
    check_separability_transfer,
    check_special_transfer,
    check_twisting,
    graded_group_twist,
    hexagon_paths,
    inherited_frobenius,
    trivial_twist,
    twisted_copairing,
    twisted_pairing,
)


class UnsupportedParameters(ValueError):
    pass


class InvalidQMatrix(ValueError):
    pass


# -- group algebras -------------------------------------------------------------

@dataclass(frozen=True)
class GroupAlgebra:
    group: grp.FiniteGroup
    algebra: AlgebraData
    grouplike: CoalgebraData
    frobenius_coalgebra: CoalgebraData

    @property
    def space(self) -> Space:
        return self.algebra.space

    @property
    def frobenius(self) -> FrobeniusData:
        return FrobeniusData(self.algebra, self.frobenius_coalgebra)

    @property
    def bialgebra(self) -> tuple[AlgebraData, CoalgebraData]:
        return self.algebra, self.grouplike

    def separability_section(self) -> LinearMap:
        """Γ(a) = |G|⁻¹ Σ_r ar⊗r⁻¹ (needs |G| invertible in k)."""
        inv = self.space.field(self.group.order).inverse()
        return self.frobenius_coalgebra.comul.scale(inv).renamed("Γ")

    def special_frobenius(self) -> FrobeniusData:
        """(Δ/|G|, |G|ε): the rescaling that makes ∇Δ = id."""
        n = self.space.field(self.group.order)
        c = self.frobenius_coalgebra
        return FrobeniusData(self.algebra, CoalgebraData(c.space, c.comul.scale(n.inverse()), c.counit.scale(n)))


def group_algebra(group: grp.FiniteGroup | Sequence[int] | int, field: FieldSpec, name: str = "") -> GroupAlgebra:
    """kG with grouplike Δ(g) = g⊗g, ε ≡ 1, and Frobenius Δ(g) = Σ_r gr⊗r⁻¹, ε(g) = δ_{g,1}."""
    if isinstance(group, int):
        group = grp.cyclic(group)
    elif not isinstance(group, grp.FiniteGroup):
        group = grp.cyclic_product(group)
    G = group
    grading = None
    if G.degrees is not None:
        grading = Grading({g: G.degrees[g] for g in G.elements}, G.moduli)
    space = Space(field, G.elements, grading, name or f"k{G.name}")
    k = ground(field)
    one = field.one
    mul = LinearMap.from_images(tensor_space(space, space), space,
                                lambda lab: {G.mul(lab[0], lab[1]): one}, "∇")
    unit = LinearMap.from_images(k, space, {"1": {G.identity: one}}, "η")
    SS = tensor_space(space, space)
    grouplike = CoalgebraData(
        space,
        LinearMap.from_images(space, SS, lambda g: {(g, g): one}, "Δ"),
        LinearMap.from_images(space, k, lambda g: {"1": one}, "ε"))
    frob = CoalgebraData(
        space,
        LinearMap.from_images(space, SS, lambda g: {(G.mul(g, r), G.inverse(r)): one for r in G.elements}, "Δ"),
        LinearMap.from_images(space, k, lambda g: {"1": one} if g == G.identity else {}, "ε"))
    return GroupAlgebra(G, AlgebraData(space, mul, unit), grouplike, frob)


# -- truncated polynomials -------------------------------------------------------

def _power(var: str, i: int) -> str:
    return "1" if i == 0 else var if i == 1 else f"{var}^{i}"


@dataclass(frozen=True)
class TruncatedPolynomial:
    n: int
    var: str
    algebra: AlgebraData
    frobenius_coalgebra: CoalgebraData
    binomial_coalgebra: CoalgebraData

    @property
    def space(self) -> Space:
        return self.algebra.space

    @property
    def frobenius(self) -> FrobeniusData:
        return FrobeniusData(self.algebra, self.frobenius_coalgebra)

    @property
    def generators(self) -> tuple[str]:
        return (self.var,)

    @property
    def comul_degree(self) -> int:
        return self.n - 1

    def label(self, i: int) -> str:
        return _power(self.var, i)


def truncated_polynomial(n: int, field: FieldSpec, var: str = "x") -> TruncatedPolynomial:
    """k[x]/(xⁿ), Z-graded, with ε(xⁱ) = δ_{i,n−1} and Δ(p) = Σ_j x^j p⊗x^{n−1−j}.

    Also carries the binomial coalgebra Δ(xᵐ) = Σ C(m,i) xⁱ⊗x^{m−i}, ε(xᵐ) = δ_{m,0},
    which is the restriction of the polynomial bialgebra structure.
    """
    if n < 1:
        raise UnsupportedParameters("truncation degree must be at least 1")
    labels = [_power(var, i) for i in range(n)]
    grading = Grading({lab: (i,) for i, lab in enumerate(labels)}, (0,))
    space = Space(field, labels, grading, f"k[{var}]/({var}^{n})")
    k = ground(field)
    SS = tensor_space(space, space)
    one = field.one
    idx = {lab: i for i, lab in enumerate(labels)}
    mul = LinearMap.from_images(
        SS, space, lambda lab: {labels[idx[lab[0]] + idx[lab[1]]]: one} if idx[lab[0]] + idx[lab[1]] < n else {}, "∇")
    unit = LinearMap.from_images(k, space, {"1": {labels[0]: one}}, "η")

    def frob_delta(lab):
        i = idx[lab]
        return {(labels[j + i], labels[n - 1 - j]): one for j in range(n) if j + i < n}

    frob = CoalgebraData(
        space, LinearMap.from_images(space, SS, frob_delta, "Δ"),
        LinearMap.from_images(space, k, {labels[n - 1]: {"1": one}}, "ε"))
    binom = CoalgebraData(
        space,
        LinearMap.from_images(space, SS, lambda lab: {(labels[i], labels[idx[lab] - i]): comb(idx[lab], i)
                                                      for i in range(idx[lab] + 1)}, "Δ"),
        LinearMap.from_images(space, k, {labels[0]: {"1": one}}, "ε"))
    return TruncatedPolynomial(n, var, AlgebraData(space, mul, unit), frob, binom)


# -- quantum plane ----------------------------------------------------------------

@dataclass
class QuantumPlane:
    x: TruncatedPolynomial
    y: TruncatedPolynomial
    twist: TwistingMap
    q: Scalar


def quantum_plane(q: ScalarLike, field: FieldSpec, n: int = 3) -> QuantumPlane:
    """k[x]/(xⁿ) ⊗ k[y]/(yⁿ) with τ(y⊗x) = q x⊗y."""
    x = truncated_polynomial(n, field, "x")
    y = truncated_polynomial(n, field, "y")
    q = field(q)
    return QuantumPlane(x, y, bicharacter_twist(x.algebra, y.algebra, [[q]]), q)


# -- quantum complete intersections ----------------------------------------------

def q_matrix(n: int, entries: Mapping[tuple[int, int], ScalarLike] | ScalarLike, field: FieldSpec) -> list[list[Scalar]]:
    """Complete a q-matrix from entries q_{ji} with j > i (1-based), or one scalar for all of them."""
    if not isinstance(entries, Mapping):
        v = field(entries)
        entries = {(j, i): v for j in range(1, n + 1) for i in range(1, j)}
    q = [[field.one] * n for _ in range(n)]
    for (j, i), v in entries.items():
        v = field(v)
        if not v:
            raise InvalidQMatrix(f"q_{j}{i} must be nonzero")
        q[j - 1][i - 1] = v
        q[i - 1][j - 1] = v.inverse()
    return q


def validate_q(q: Sequence[Sequence[Scalar]]) -> None:
    n = len(q)
    for i in range(n):
        if len(q[i]) != n:
            raise InvalidQMatrix("q must be square")
        if q[i][i] != 1:
            raise InvalidQMatrix(f"q_{i + 1}{i + 1} must be 1")
        for j in range(n):
            if q[i][j] * q[j][i] != 1:
                raise InvalidQMatrix(f"q_{i + 1}{j + 1} q_{j + 1}{i + 1} must be 1")


@dataclass
class QuantumCompleteIntersection:
    """Λⁿ_{q,m}: x_i x_j = q_ij x_j x_i, x_i^{m_i} = 0.

    ``levels[k]`` is the twist building Λ^{k+2} from Λ^{k+1} and k[x_{k+2}]; the
    final algebra is ``algebra``.  ``frobenius`` is set when every level
    inherits a Frobenius structure.
    """

    n: int
    m: tuple[int, ...]
    q: list[list[Scalar]]
    factors: list[TruncatedPolynomial]
    levels: list[TwistingMap]
    algebra: AlgebraData
    frobenius: FrobeniusData | None
    hexagon_ok: list[bool]
    partial_frobenius: list[FrobeniusData | None] = dc_field(default_factory=list)

    @property
    def space(self) -> Space:
        return self.algebra.space

    def monomial(self, exps: Sequence[int]):
        labels = tuple(f.label(a) for f, a in zip(self.factors, exps))
        return labels[0] if self.n == 1 else labels

    def predicted_frobenius(self) -> bool:
        """Order of every q_ij divides gcd(m_i − 1, m_j − 1)."""
        return all(self.q[i][j] ** gcd(self.m[i] - 1, self.m[j] - 1) == 1
                   for i in range(self.n) for j in range(self.n))


def quantum_complete_intersection(n: int, m: Sequence[int], q, field: FieldSpec) -> QuantumCompleteIntersection:
    """Nested construction Λ^k = Λ^{k−1} ⊗^t k[x_k]/(x_k^{m_k}) with t on Z^{k−1}×Z.

    The bicharacter at level k has values q_{k,i} for i < k, so that
    τ(x_k^s ⊗ x_i^r) = q_{ki}^{rs} x_i^r⊗x_k^s.
    """
    m = tuple(int(x) for x in m)
    if n < 1 or len(m) != n or any(x < 2 for x in m):
        raise InvalidQMatrix("need n ≥ 1 and m_i ≥ 2 for each of the n variables")
    if not isinstance(q, list) or (q and not isinstance(q[0], (list, tuple))):
        q = q_matrix(n, q, field)
    q = [[field(v) for v in row] for row in q]
    if len(q) != n:
        raise InvalidQMatrix(f"q must be {n}x{n}")
    validate_q(q)
    factors = [truncated_polynomial(m[i], field, f"x{i + 1}") for i in range(n)]
    alg = factors[0].algebra
    frob: FrobeniusData | None = factors[0].frobenius
    levels, hex_ok, partial = [], [], [frob]
    for kk in range(1, n):
        values = [[q[kk][i]] for i in range(kk)]
        t = bicharacter_twist(alg, factors[kk].algebra, values)
        levels.append(t)
        if frob is not None:
            compat = check_coalgebra_compat(t, frob.coalgebra, factors[kk].frobenius_coalgebra)
            ok = compat["comultiplications hexagon"].ok
            hex_ok.append(ok)
            tw = build_twisted_algebra(t, (frob.coalgebra, factors[kk].frobenius_coalgebra) if ok else None)
            frob = tw.frobenius if ok else None
        else:
            hex_ok.append(False)
            tw = build_twisted_algebra(t)
        partial.append(frob)
        alg = tw.algebra
    return QuantumCompleteIntersection(n, m, q, factors, levels, alg, frob, hex_ok, partial)


def qci_iterated_multiplication(qci: QuantumCompleteIntersection) -> LinearMap:
    """(∇_1⊗…⊗∇_n)∘R where R sorts (x_1..x_n)⊗(x_1..x_n) into pairs by adjacent pairwise twists."""
    n = qci.n
    facs = qci.factors
    spaces = [f.space for f in facs]
    # current arrangement: list of (variable index, copy) ; start L1..Ln R1..Rn
    order = [(i, 0) for i in range(n)] + [(i, 1) for i in range(n)]
    target = [(i, c) for i in range(n) for c in (0, 1)]
    stages: list[LinearMap] = []
    twists: dict[tuple[int, int], LinearMap] = {}
    while order != target:
        for p in range(len(order) - 1):
            (i, ci), (j, cj) = order[p], order[p + 1]
            if (i, ci) > (j, cj) and ci == 0 and cj == 1:
                # x_i^r from the left copy meets x_j^s from the right copy, i > j
                if (i, j) not in twists:
                    t = bicharacter_twist(facs[j].algebra, facs[i].algebra, [[qci.q[i][j]]])
                    twists[(i, j)] = t.tau
                before = [identity(spaces[v]) for v, _ in order[:p]]
                after = [identity(spaces[v]) for v, _ in order[p + 2:]]
                stages.append(tensor_map(*before, twists[(i, j)], *after))
                order[p], order[p + 1] = order[p + 1], order[p]
                break
        else:
            raise AssertionError("reordering did not converge")
    mul = tensor_map(*(f.algebra.mul for f in facs))
    if not stages:
        return mul
    return compose(mul, *reversed(stages))


def qci_pairing_formula(qci: QuantumCompleteIntersection, a: Sequence[int], b: Sequence[int]) -> Scalar:
    """∏_{i<j} q_{ji}^{a_i b_j} ∏_l δ_{a_l + b_l, m_l − 1}."""
    f = qci.algebra.field
    if any(x + y != mm - 1 for x, y, mm in zip(a, b, qci.m)):
        return f.zero
    out = f.one
    for j in range(qci.n):
        for i in range(j):
            out = out * qci.q[j][i] ** (a[i] * b[j])
    return out


def qci_pairing_reordering(qci: QuantumCompleteIntersection, a: Sequence[int], b: Sequence[int]) -> Scalar:
    """∏_{i<j} q_{ji}^{a_j b_i} ∏_l δ: the scalar from moving each x_i^{b_i} left past x_j^{a_j}."""
    f = qci.algebra.field
    if any(x + y != mm - 1 for x, y, mm in zip(a, b, qci.m)):
        return f.zero
    out = f.one
    for j in range(qci.n):
        for i in range(j):
            out = out * qci.q[j][i] ** (a[j] * b[i])
    return out


def qci_exponents(qci: QuantumCompleteIntersection, label) -> tuple[int, ...]:
    labels = label if qci.n > 1 else (label,)
    out = []
    for f, lab in zip(qci.factors, labels):
        out.append(next(i for i in range(f.n) if f.label(i) == lab))
    return tuple(out)


# -- Jordan, Weyl and U_q probes ------------------------------------------------------

@dataclass
class PointwiseExample:
    which: str
    seed: PartialLinearMap
    tau: PartialLinearMap
    paths: tuple[DiagramPath, DiagramPath]
    probe: Vector

    def run(self):
        return check_pointwise_counterexample(self.paths, self.probe)


def _window(field: FieldSpec, var: str, D: int) -> Space:
    labels = [_power(var, i) for i in range(D)]
    return Space(field, labels, Grading({lab: (i,) for i, lab in enumerate(labels)}, (0,)), f"k[{var}]≤{D - 1}")


def _binomial_delta(space: Space, var: str) -> LinearMap:
    SS = tensor_space(space, space)
    return LinearMap.from_images(
        space, SS, lambda lab: {(_power(var, i), _power(var, space.index(lab) - i)): comb(space.index(lab), i)
                                for i in range(space.index(lab) + 1)}, "Δ")


def _plane_seed(which: str, field: FieldSpec):
    if which == "jordan":
        return {("y", "x"): {("x", "y"): 1, ("x^2", "1"): 1}}
    if which == "weyl":
        return {("y", "x"): {("x", "y"): 1, ("1", "1"): -1}}
    if which == "trivial":
        return {("y", "x"): {("x", "y"): 1}}
    raise UnsupportedParameters(f"unknown plane seed {which!r}")


def plane_twist_columns(which: str, field: FieldSpec, N: int):
    """All τ columns on k[x]/(x^N) ⊗ k[y]/(y^N) computed by the generator recursion (unchecked)."""
    x = truncated_polynomial(N, field, "x")
    y = truncated_polynomial(N, field, "y")
    cols = _extend_columns(x.algebra, y.algebra, _plane_seed(which, field), ("x",), ("y",))
    return x, y, cols


def jordan_weyl_uq_pointwise(which: str, field: FieldSpec | None = None, D: int = 4) -> PointwiseExample:
    """Seed, hexagon paths and probe for the Jordan/Weyl planes and the U_q Borel example.

    For the planes, τ is computed on a large truncation k[x]/(x^N), N = 2D,
    where degrees below N are unaffected by the truncation, and then
    restricted to the window of degree < D: a column is kept only if its
    whole image stays in the window.  Everything else is undefined.
    """
    if which == "uq-borel":
        return _uq_borel(field or FieldSpec.cyclotomic(3))
    if which not in ("jordan", "weyl", "trivial"):
        raise UnsupportedParameters(f"unknown pointwise example {which!r}")
    field = field or FieldSpec.rational()
    if D < 3:
        raise UnsupportedParameters("the probe needs truncation degree D ≥ 3")
    N = 2 * D
    x, y, cols = plane_twist_columns(which, field, N)
    Wx, Wy = _window(field, "x", D), _window(field, "y", D)
    window_cols = {}
    for (ib, ia), col in cols.items():
        if ib >= D or ia >= D:
            continue
        if all(ja < D and jb < D for (ja, jb) in col):
            window_cols[(ib, ia)] = col
    tau = _columns_to_map(Wx, Wy, window_cols, partial=True)
    seed_cols = {k: v for k, v in window_cols.items() if k in ((1, 1),)}
    seed = _columns_to_map(Wx, Wy, seed_cols, partial=True)
    paths = hexagon_paths(tau, Wx, Wy, _binomial_delta(Wx, "x"), _binomial_delta(Wy, "y"))
    probe = Vector.basis(tensor_space(Wy, Wx), ("y", "x"))
    return PointwiseExample(which, seed, tau, paths, probe)


def _uq_borel(field: FieldSpec) -> PointwiseExample:
    if field.kind != "cyclotomic" or field.param % 3:
        raise UnsupportedParameters("the U_q Borel probe uses q = ζ₃ in a cyclotomic field Q(ζ_{3k})")
    q = field.root_of_unity(3)
    A = Space(field, ("1", "F"), name="k[F]≤1")
    B = Space(field, ("1", "E", "K", "K^-1"), name="U(b)")
    one = field.one
    qi = q.inverse()
    c = (q - qi).inverse()
    images = {
        ("1", "1"): {("1", "1"): one},
        ("1", "F"): {("F", "1"): one},
        ("E", "1"): {("1", "E"): one},
        ("K", "1"): {("1", "K"): one},
        ("K^-1", "1"): {("1", "K^-1"): one},
        ("K", "F"): {("F", "K"): qi * qi},
        ("K^-1", "F"): {("F", "K^-1"): q * q},
        ("E", "F"): {("F", "E"): one, ("1", "K"): -c, ("1", "K^-1"): c},
    }
    tau = PartialLinearMap.from_images(tensor_space(B, A), tensor_space(A, B), images, "τ")
    seed = PartialLinearMap.from_images(
        tensor_space(B, A), tensor_space(A, B), {k: images[k] for k in (("K", "F"), ("E", "F"))}, "τ")
    dA = LinearMap.from_images(A, tensor_space(A, A), {"1": {("1", "1"): 1}, "F": {("1", "F"): 1, ("F", "1"): 1}}, "Δ")
    dB = PartialLinearMap.from_images(
        B, tensor_space(B, B),
        {"1": {("1", "1"): 1}, "E": {("1", "E"): 1, ("E", "K"): 1}, "K": {("K", "K"): 1},
         "K^-1": {("K^-1", "K^-1"): 1}}, "Δ")
    paths = hexagon_paths(tau, A, B, dA, dB)
    probe = Vector.basis(tensor_space(B, A), ("E", "F"))
    return PointwiseExample("uq-borel", seed, tau, paths, probe)


# -- skew group algebras ------------------------------------------------------------

@dataclass
class SkewGroupExample:
    action: grp.Action
    kH: GroupAlgebra
    kG: GroupAlgebra
    twist: TwistingMap
    semidirect: GroupAlgebra


def skew_group_twist(action: grp.Action, field: FieldSpec) -> SkewGroupExample:
    """A = kH, B = kG and τ(g⊗h) = φ_g(h)⊗g, so that kH⊗_τ kG ≅ k(H⋊G)."""
    G, H = action.acting, action.acted
    kH = group_algebra(H, field, f"k{H.name}")
    kG = group_algebra(G, field, f"k{G.name}")
    one = field.one
    dom = tensor_space(kG.space, kH.space)
    cod = tensor_space(kH.space, kG.space)
    tau = LinearMap.from_images(dom, cod, lambda lab: {(action(lab[0], lab[1]), lab[0]): one}, "τ")
    t = TwistingMap(kH.algebra, kG.algebra, tau, None, "skew")
    check_twisting(t)
    sd = group_algebra(grp.semidirect_product(action), field)
    return SkewGroupExample(action, kH, kG, t, sd)


def semidirect_matches(ex: SkewGroupExample) -> dict[str, bool]:
    """Compare the twisted product and inherited Frobenius structure with k(H⋊G) on identical labels."""
    f = inherited_frobenius(ex.twist, ex.kH.frobenius, ex.kG.frobenius)
    sd = ex.semidirect
    space = f.space
    relabel = lambda m: m.with_spaces(
        tensor_space(space, space) if m.domain.dim == space.dim ** 2 else space,
        tensor_space(space, space) if m.codomain.dim == space.dim ** 2 else (space if m.codomain.dim == space.dim else ground(space.field)))
    # the semidirect group algebra has atomic pair labels in the same row-major order
    assert tuple(sd.space.basis) == tuple(space.basis)
    return {
        "multiplication": maps_equal(relabel(sd.algebra.mul), f.algebra.mul).equal,
        "comultiplication": maps_equal(relabel(sd.frobenius_coalgebra.comul), f.coalgebra.comul).equal,
        "counit": maps_equal(relabel(sd.frobenius_coalgebra.counit), f.coalgebra.counit).equal,
    }


# -- symmetric twisted product of kC2 with itself -------------------------------------

@dataclass
class C2C2Symmetric:
    kC2: GroupAlgebra
    twist: TwistingMap
    frobenius: FrobeniusData
    pairing: LinearMap


C2C2_TABLE = {("1", "1", "1", "1"): 1, ("1", "g", "1", "g"): 1, ("g", "1", "g", "1"): 1, ("g", "g", "g", "g"): -1}


def c2_c2_symmetric(field: FieldSpec | None = None) -> C2C2Symmetric:
    """kC2 ⊗^t kC2 with t(g⊗g) = −1 and the Frobenius coalgebras Δ(g) = Σ_r gr⊗r⁻¹."""
    field = field or FieldSpec.rational()
    a = group_algebra(2, field, "kC2")
    t = bicharacter_twist(a.algebra, a.algebra, [[-1]])
    f = inherited_frobenius(t, a.frobenius, a.frobenius)
    return C2C2Symmetric(a, t, f, twisted_pairing(t, a.frobenius, a.frobenius))


# -- demos ------------------------------------------------------------------------------

@dataclass
class Expectation:
    report: Report
    expect: str | None  # "pass", "fail" or None
    citation: str = ""


@dataclass
class ExampleDescriptor:
    name: str
    summary: str
    parameters: dict
    run: Callable[..., list[Expectation]]
    expected: list[tuple[str, str, str]] = dc_field(default_factory=list)


def _field_for_order(order: int) -> FieldSpec:
    return FieldSpec.rational() if order <= 2 else FieldSpec.cyclotomic(order)


def _pointwise_report(which: str, field: FieldSpec | None, D: int) -> Report:
    ex = jordan_weyl_uq_pointwise(which, field, D)
    v = ex.run()
    probe = "⊗".join(ex.probe.terms()[0][0])
    r = Report(f"{which} hexagon at {probe}",
               citation="comultiplication hexagon fails pointwise for the Jordan, Weyl and U_q twists")
    r.add(Check(f"hexagon paths agree at {probe}", not v.differ,
                Witness(ex.probe.terms()[0][0], v.lhs, v.rhs, ex.probe.space) if v.differ else None,
                detail=f"hexagon paths differ at {probe}" if v.differ else ""))
    return r


def _demo_pointwise(which):
    def run(field: str | None = None, D: int = 4):
        fs = FieldSpec.parse(field) if field else None
        out = [Expectation(_pointwise_report(which, fs, D), "fail",
                           "twisting map not compatible with the comultiplications")]
        if which in ("jordan", "weyl"):
            out.append(Expectation(_pointwise_report("trivial", fs, D), "pass", "trivial seed is compatible"))
        return out
    return run


def _demo_bialgebra(field: str = "Q"):
    fs = FieldSpec.parse(field)
    a = group_algebra(2, fs, "kC2")
    out = []
    for t, expect in ((bicharacter_twist(a.algebra, a.algebra, [[-1]]), "fail"),
                      (trivial_twist(a.algebra, a.algebra), "pass")):
        rep = check_bialgebra_obstruction(t, a.grouplike, a.grouplike)
        rep.title += f" ({t.name})"
        out.append(Expectation(rep, expect, "twisted bialgebra iff twist is trivial"))
    return out


def _demo_quantum_plane(q_order: int = 2, field: str | None = None, n: int = 3):
    fs = FieldSpec.parse(field) if field else _field_for_order(q_order)
    qp = quantum_plane(fs.root_of_unity(q_order), fs, n)
    compat = check_coalgebra_compat(qp.twist, qp.x.binomial_coalgebra, qp.y.binomial_coalgebra)
    tw = build_twisted_algebra(qp.twist, (qp.x.binomial_coalgebra, qp.y.binomial_coalgebra))
    bi = check_bialgebra(tw.algebra, tw.coalgebra)
    hexagon = Report("quantum plane comultiplication hexagon", [compat["comultiplications hexagon"]],
                     "quantum plane twist is compatible with the comultiplications")
    return [Expectation(hexagon, "pass", hexagon.citation),
            Expectation(Report("quantum plane bialgebra", bi.checks, "quantum plane is not a bialgebra"),
                        "fail" if q_order > 1 else None, "quantum plane is not a bialgebra")]


def _demo_qci(n: int = 2, m: str | Sequence[int] = "3,3", q_order: int = 2, field: str | None = None):
    if isinstance(m, str):
        m = [int(x) for x in m.split(",")]
    fs = FieldSpec.parse(field) if field else _field_for_order(q_order)
    qci = quantum_complete_intersection(n, m, fs.root_of_unity(q_order), fs)
    predicted = qci.predicted_frobenius()
    out = []
    # inheritance at the last level, from the (possibly absent) Frobenius structure below it
    base = qci.partial_frobenius[-2] if n > 1 else None
    if n > 1 and base is not None:
        t = qci.levels[-1]
        rep = check_frobenius_inheritance(t, base, qci.factors[-1].frobenius)
        out.append(Expectation(rep, "pass" if predicted else "fail",
                               "quantum complete intersection is Frobenius iff q order divides gcd(m_i-1, m_j-1)"))
        if rep.ok:
            beta = twisted_pairing(t, base, qci.factors[-1].frobenius)
            sym = Report("quantum complete intersection symmetric", [check_symmetric(beta)],
                         "Frobenius quantum complete intersections are symmetric")
            theta = nakayama_from_pairing(qci.algebra, beta).theta
            sym.add(Check.from_comparison("nakayama is identity", maps_equal(theta, identity(qci.space))))
            out.append(Expectation(sym, "pass", sym.citation))
    elif n > 1:
        hx = Report("lower level hexagon", [claim("lower level inherits Frobenius", False)])
        out.append(Expectation(hx, "fail" if not predicted else "pass",
                               "quantum complete intersection is Frobenius iff q order divides gcd(m_i-1, m_j-1)"))
    return out


def _demo_c2_c2_symmetric(field: str = "Q"):
    ex = c2_c2_symmetric(FieldSpec.parse(field))
    a = ex.kC2
    inh = check_frobenius_inheritance(ex.twist, a.frobenius, a.frobenius)
    sym = Report("symmetric", [check_symmetric(ex.pairing)], "symmetric twisted product of two copies of kC2")
    table = Report("pairing table", citation="explicit pairing values of the symmetric twisted product of kC2")
    space = ex.frobenius.space
    f = space.field
    mism = []
    for lab in tensor_space(space, space).basis:
        expected = f(C2C2_TABLE.get(lab, 0))
        got = ex.pairing.apply(lab).coefficient("1")
        if got != expected:
            mism.append(lab)
    table.add(Check("pairing matches table", not mism, detail=f"mismatch at {mism[:2]}" if mism else ""))
    nak = check_nakayama_candidates(ex.twist, a.frobenius, a.frobenius)
    return [Expectation(inh, "pass", inh.citation), Expectation(sym, "pass", sym.citation),
            Expectation(table, "pass", table.citation), Expectation(nak, "pass", nak.citation)]


def _demo_skew_group(field: str = "Q"):
    fs = FieldSpec.parse(field)
    c2, c3 = grp.cyclic(2, "s"), grp.cyclic(3, "r")
    ex = skew_group_twist(grp.inversion_action(c2, c3), fs)
    grouplike = check_coalgebra_compat(ex.twist, ex.kH.grouplike, ex.kG.grouplike)
    frob = check_coalgebra_compat(ex.twist, ex.kH.frobenius_coalgebra, ex.kG.frobenius_coalgebra)
    match = semidirect_matches(ex)
    sd = Report("semidirect product", citation="skew group algebra is the group algebra of the semidirect product")
    for k, v in match.items():
        sd.add(Check(f"{k} equals semidirect {k}", v))
    return [Expectation(Report("grouplike hexagon", [grouplike["comultiplications hexagon"]]), "fail",
                        "grouplike comultiplications are not compatible with the skew twist"),
            Expectation(Report("frobenius hexagon", [frob["comultiplications hexagon"]]), "pass",
                        "Frobenius comultiplications are compatible with the skew twist"),
            Expectation(sd, "pass", sd.citation)]


def _demo_separability(field: str = "Q"):
    fs = FieldSpec.parse(field)
    a = group_algebra(2, fs, "kC2")
    t = bicharacter_twist(a.algebra, a.algebra, [[-1]])
    gamma = a.separability_section()
    sep = check_separability_transfer(t, gamma, gamma)
    sp = a.special_frobenius()
    spec = check_special_transfer(t, sp, sp)
    return [Expectation(sep, "pass", sep.citation), Expectation(spec, "pass", spec.citation)]


def _demo_roundtrip(field: str = "Q"):
    fs = FieldSpec.parse(field)
    out = []
    for name, f in (("kC2", group_algebra(2, fs).frobenius), ("kC3", group_algebra(3, fs).frobenius),
                    ("k[x]/(x^2)", truncated_polynomial(2, fs).frobenius),
                    ("k[x]/(x^3)", truncated_polynomial(3, fs).frobenius)):
        rebuilt = frobenius_from_pairing(f.algebra, pairing_from_frobenius(f))
        r = Report(f"pairing roundtrip {name}", citation="Frobenius structure from an associative non-degenerate pairing")
        r.add(Check.from_comparison("comultiplication recovered", maps_equal(rebuilt.coalgebra.comul, f.coalgebra.comul)))
        r.add(Check.from_comparison("counit recovered", maps_equal(rebuilt.coalgebra.counit, f.coalgebra.counit)))
        out.append(Expectation(r, "pass", r.citation))
    return out


DEMOS: dict[str, ExampleDescriptor] = {
    d.name: d for d in (
        ExampleDescriptor("bialgebra-obstruction", "kC2 ⊗^t kC2 with grouplike coalgebras: bialgebra iff trivial",
                          {"field": "Q"}, _demo_bialgebra,
                          [("bialgebra (t(g,g) = -1)", "fail", "twisted bialgebra iff twist is trivial"),
                           ("bialgebra (trivial)", "pass", "twisted bialgebra iff twist is trivial")]),
        ExampleDescriptor("quantum-plane", "k[x]/(x^n) ⊗^q k[y]/(y^n): hexagon passes, bialgebra fails",
                          {"q_order": 2, "field": None, "n": 3}, _demo_quantum_plane,
                          [("hexagon", "pass", "quantum plane twist is compatible"),
                           ("bialgebra", "fail", "quantum plane is not a bialgebra")]),
        ExampleDescriptor("jordan", "Jordan plane: hexagon paths differ at y⊗x", {"field": None, "D": 4},
                          _demo_pointwise("jordan"),
                          [("hexagon at y⊗x", "fail", "Jordan twist not compatible with comultiplications")]),
        ExampleDescriptor("weyl", "Weyl algebra: hexagon paths differ at y⊗x", {"field": None, "D": 4},
                          _demo_pointwise("weyl"),
                          [("hexagon at y⊗x", "fail", "Weyl twist not compatible with comultiplications")]),
        ExampleDescriptor("uq-borel", "U_q(sl2) from k[F] and the Borel part: hexagon paths differ at E⊗F",
                          {"field": "Q(zeta_3)"}, lambda field="Q(zeta_3)", D=4: [
                              Expectation(_pointwise_report("uq-borel", FieldSpec.parse(field), D), "fail",
                                          "U_q twist not compatible with comultiplications")],
                          [("hexagon at E⊗F", "fail", "U_q twist not compatible with comultiplications")]),
        ExampleDescriptor("qci", "quantum complete intersection: Frobenius and symmetric iff q order divides gcd(m_i-1)",
                          {"n": 2, "m": "3,3", "q_order": 2, "field": None}, _demo_qci,
                          [("frobenius inheritance", "pass iff order | gcd(m_i-1, m_j-1)", "quantum complete intersections are Frobenius"),
                           ("symmetric", "pass", "Frobenius quantum complete intersections are symmetric")]),
        ExampleDescriptor("c2-c2-symmetric", "symmetric kC2 ⊗^t kC2 with t(g,g) = -1", {"field": "Q"},
                          _demo_c2_c2_symmetric,
                          [("frobenius inheritance", "pass", "twisted product of Frobenius algebras"),
                           ("symmetric", "pass", "symmetric twisted product of kC2"),
                           ("pairing table", "pass", "explicit pairing values")]),
        ExampleDescriptor("skew-group", "C2 acting on C3 by inversion", {"field": "Q"}, _demo_skew_group,
                          [("grouplike hexagon", "fail", "grouplike comultiplications incompatible"),
                           ("frobenius hexagon", "pass", "Frobenius comultiplications compatible"),
                           ("semidirect product", "pass", "matches the semidirect group algebra")]),
        ExampleDescriptor("separability", "separable and special transfer for kC2 ⊗^t kC2", {"field": "Q"},
                          _demo_separability,
                          [("separability transfer", "pass", "twisted product of separable algebras"),
                           ("special transfer", "pass", "twisted product of special Frobenius algebras")]),
        ExampleDescriptor("roundtrip", "pairing ↔ Frobenius roundtrip on kC2, kC3, k[x]/(x^2), k[x]/(x^3)",
                          {"field": "Q"}, _demo_roundtrip,
                          [("roundtrip", "pass", "Frobenius structure from a pairing")]),
    )
}
