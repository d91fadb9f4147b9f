"""Labeled vector spaces, exact sparse linear maps and diagram evaluation.

Conventions used throughout the package:

* Tensor products are strict and flat: ``tensor_space(tensor_space(A, B), C)``
  equals ``tensor_space(A, tensor_space(B, C))``.  A composite space remembers
  its atomic factors in ``parts`` and its basis labels are tuples with one
  entry per atomic factor.
* Basis order is row-major: the first factor varies slowest.
* The ground field is an explicit one-dimensional space with label ``"1"``.
  Unitors between ``k (x) V`` and ``V`` are genuine maps, never implicit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .scalar import FieldMismatch, FieldSpec, Scalar, ScalarLike


class TensorError(Exception):
    pass


class ShapeMismatch(TensorError):
    pass


class Singular(TensorError):
    pass


class UndefinedColumn(TensorError):
    def __init__(self, label, space=None):
        self.label = label
        where = f" of {space.name}" if space is not None and space.name else ""
        super().__init__(f"column {format_label(label)}{where} is undefined")


class DimensionLimitExceeded(TensorError):
    pass


DEFAULT_MAX_DIM = 4096


def max_dim() -> int:
    raw = os.environ.get("TWISTLAB_MAX_DIM")
    return int(raw) if raw else DEFAULT_MAX_DIM


Grade = tuple


def format_label(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(format_label(x) for x in label) + ")"
    return str(label)


@dataclass(frozen=True, eq=False)
class Grading:
    """A grading by Z^r modulo ``moduli`` (0 means a free Z coordinate)."""

    degrees: Mapping[Hashable, Grade]
    moduli: tuple[int, ...]

    def normalize(self, grade: Sequence[int]) -> Grade:
        return tuple(g % m if m else g for g, m in zip(grade, self.moduli))

    def __getitem__(self, label) -> Grade:
        return self.degrees[label]

    def _key(self):
        return (self.moduli, tuple(sorted(((repr(k), v) for k, v in self.degrees.items()))))

    def __eq__(self, other):
        return isinstance(other, Grading) and self.moduli == other.moduli and dict(self.degrees) == dict(other.degrees)

    def __hash__(self):
        return hash(self.moduli)


class Space:
    """A finite-dimensional vector space with an ordered, labeled basis.

    ``name`` is cosmetic and ignored by equality.  ``parts`` is set for
    tensor products and lists the atomic factors.
    """

    __slots__ = ("field", "basis", "grading", "name", "parts", "_index", "_hash")

    def __init__(self, field: FieldSpec, basis: Iterable[Hashable], grading: Grading | None = None,
                 name: str = "", parts: tuple[Space, ...] | None = None):
        basis = tuple(basis)
        if not basis:
            raise ShapeMismatch("a space needs at least one basis vector")
        index = {lab: i for i, lab in enumerate(basis)}
        if len(index) != len(basis):
            raise ShapeMismatch(f"duplicate basis labels in {name or 'space'}")
        if grading is not None:
            missing = [lab for lab in basis if lab not in grading.degrees]
            if missing:
                raise ShapeMismatch(f"grading misses labels {missing[:3]}")
        self.field = field
        self.basis = basis
        self.grading = grading
        self.name = name
        self.parts = parts
        self._index = index
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def factors(self) -> tuple[Space, ...]:
        return self.parts if self.parts is not None else (self,)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{format_label(label)} is not a basis label of {self.name or 'this space'}") from None

    def __contains__(self, label) -> bool:
        return label in self._index

    def degree(self, label) -> Grade:
        if self.grading is None:
            raise TensorError(f"{self.name or 'space'} is not graded")
        return self.grading[label]

    def _key(self):
        parts = None if self.parts is None else tuple(p._key() for p in self.parts)
        return (self.field, self.basis, self.grading, parts)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Space):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.basis, self.parts is not None and len(self.parts)))
        return self._hash

    def __repr__(self):
        return f"Space({self.name or '?'}, dim={self.dim}, {self.field})"

    def renamed(self, name: str) -> Space:
        return Space(self.field, self.basis, self.grading, name, self.parts)

    def vector(self, terms: Mapping[Hashable, ScalarLike] | Hashable) -> Vector:
        """Build a vector from ``{label: coeff}`` or a single basis label."""
        if isinstance(terms, Mapping):
            return Vector.from_terms(self, terms)
        return Vector.basis(self, terms)


def ground(field: FieldSpec) -> Space:
    return Space(field, ("1",), name="k")


def is_ground(space: Space) -> bool:
    return space.parts is None and space.basis == ("1",)


def tensor_space(*spaces: Space) -> Space:
    """Flat tensor product with row-major basis order."""
    if not spaces:
        raise ShapeMismatch("tensor_space needs at least one factor")
    if len(spaces) == 1:
        return spaces[0]
    field = spaces[0].field
    for s in spaces[1:]:
        if s.field != field:
            raise FieldMismatch(f"cannot tensor spaces over {field} and {s.field}")
    dim = 1
    for s in spaces:
        dim *= s.dim
    if dim > max_dim():
        raise DimensionLimitExceeded(
            f"tensor product of dimension {dim} exceeds TWISTLAB_MAX_DIM={max_dim()}")
    parts: list[Space] = []
    for s in spaces:
        parts.extend(s.factors)
    labels: list[tuple] = [()]
    for s in spaces:
        atomic = s.parts is None
        labels = [prefix + ((lab,) if atomic else lab) for prefix in labels for lab in s.basis]
    grading = None
    if all(p.grading is not None for p in parts):
        moduli = tuple(m for p in parts for m in p.grading.moduli)
        degrees = {}
        for lab in labels:
            deg: tuple = ()
            for p, atom in zip(parts, lab):
                deg += tuple(p.grading[atom])
            degrees[lab] = deg
        grading = Grading(degrees, moduli)
    name = "⊗".join(s.name or "?" for s in spaces)
    return Space(field, labels, grading, name, tuple(parts))


def split_label(space: Space, blocks: Sequence[Space], label) -> list:
    """Split a label of ``tensor_space(*blocks)`` into one label per block."""
    if len(blocks) == 1:
        return [label]
    out, pos = [], 0
    for b in blocks:
        n = len(b.factors)
        chunk = label[pos:pos + n]
        out.append(chunk[0] if b.parts is None else tuple(chunk))
        pos += n
    return out


def join_labels(blocks: Sequence[Space], labels: Sequence) -> Hashable:
    if len(blocks) == 1:
        return labels[0]
    flat: tuple = ()
    for b, lab in zip(blocks, labels):
        flat += (lab,) if b.parts is None else tuple(lab)
    return flat


# -- vectors -----------------------------------------------------------------

class Vector:
    """A sparse vector: ``coeffs`` maps basis index to a nonzero Scalar."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: Space, coeffs: Mapping[int, Scalar] | None = None):
        self.space = space
        self.coeffs = {i: c for i, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, space: Space, label) -> Vector:
        return cls(space, {space.index(label): space.field.one})

    @classmethod
    def from_terms(cls, space: Space, terms: Mapping[Hashable, ScalarLike]) -> Vector:
        acc: dict[int, Scalar] = {}
        for lab, c in terms.items():
            i = space.index(lab)
            acc[i] = acc.get(i, space.field.zero) + space.field(c)
        return cls(space, acc)

    def __add__(self, other: Vector) -> Vector:
        if other.space != self.space:
            raise ShapeMismatch("adding vectors of different spaces")
        acc = dict(self.coeffs)
        for i, c in other.coeffs.items():
            acc[i] = acc[i] + c if i in acc else c
        return Vector(self.space, acc)

    def __neg__(self) -> Vector:
        return Vector(self.space, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: Vector) -> Vector:
        return self + (-other)

    def scale(self, s: ScalarLike) -> Vector:
        s = self.space.field(s)
        return Vector(self.space, {i: s * c for i, c in self.coeffs.items()})

    def __rmul__(self, s: ScalarLike) -> Vector:
        return self.scale(s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.space == other.space and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted((i, c) for i, c in self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def terms(self) -> list[tuple[Hashable, Scalar]]:
        return [(self.space.basis[i], self.coeffs[i]) for i in sorted(self.coeffs)]

    def coefficient(self, label) -> Scalar:
        return self.coeffs.get(self.space.index(label), self.space.field.zero)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for lab, c in self.terms():
            lab_s = _pretty_label(self.space, lab)
            cs = str(c)
            if c == 1:
                parts.append(lab_s)
            elif c == -1:
                parts.append("-" + lab_s)
            elif " " in cs or "+" in cs[1:]:
                parts.append(f"({cs})*{lab_s}")
            else:
                parts.append(f"{cs}*{lab_s}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Vector({self})"


def _pretty_label(space: Space, label) -> str:
    if space.parts is not None:
        return "⊗".join(format_label(x) for x in label)
    return format_label(label)


def pretty_label(space: Space, label) -> str:
    return _pretty_label(space, label)


def tensor_vectors(*vs: Vector) -> Vector:
    space = tensor_space(*(v.space for v in vs))
    acc: dict[Hashable, Scalar] = {}
    items: list[tuple[list, Scalar]] = [([], space.field.one)]
    for v in vs:
        items = [(labs + [lab], c * d) for labs, c in items for lab, d in v.terms()]
    blocks = [v.space for v in vs]
    for labs, c in items:
        acc[join_labels(blocks, labs)] = c
    return Vector.from_terms(space, acc)


# -- linear maps -------------------------------------------------------------

Column = dict  # row index -> nonzero Scalar


class LinearMap:
    """An exact linear map stored column by column.

    ``columns[j]`` is a dict ``{row: Scalar}`` giving the image of the j-th
    domain basis vector.  For :class:`PartialLinearMap` a column may be None.
    """

    __slots__ = ("domain", "codomain", "columns", "name")

    def __init__(self, domain: Space, codomain: Space, columns: Sequence[Column | None], name: str = ""):
        if domain.field != codomain.field:
            raise FieldMismatch(f"map between spaces over {domain.field} and {codomain.field}")
        if len(columns) != domain.dim:
            raise ShapeMismatch(f"{len(columns)} columns for a domain of dimension {domain.dim}")
        cols = []
        for col in columns:
            if col is None:
                if not isinstance(self, PartialLinearMap):
                    raise ShapeMismatch("undefined column in a total map")
                cols.append(None)
                continue
            clean = {}
            for i, c in col.items():
                if c:
                    if c.field != domain.field:
                        raise FieldMismatch(f"entry {c} is not in {domain.field}")
                    if not 0 <= i < codomain.dim:
                        raise ShapeMismatch(f"row {i} outside codomain of dimension {codomain.dim}")
                    clean[i] = c
            cols.append(clean)
        self.domain = domain
        self.codomain = codomain
        self.columns = tuple(cols)
        self.name = name

    @property
    def field(self) -> FieldSpec:
        return self.domain.field

    @property
    def is_partial(self) -> bool:
        return False

    # construction helpers
    @classmethod
    def from_images(cls, domain: Space, codomain: Space,
                    images: Mapping[Hashable, Mapping[Hashable, ScalarLike] | Vector] | Callable,
                    name: str = "") -> LinearMap:
        """Build from ``{domain label: {codomain label: coeff}}`` or a callable
        label -> such a mapping.  Missing domain labels map to zero."""
        cols = []
        for lab in domain.basis:
            img = images(lab) if callable(images) else images.get(lab, {})
            cols.append(_column_from_image(codomain, img))
        return cls(domain, codomain, cols, name)

    @classmethod
    def from_matrix(cls, domain: Space, codomain: Space, rows: Sequence[Sequence[ScalarLike]],
                    name: str = "") -> LinearMap:
        if len(rows) != codomain.dim or any(len(r) != domain.dim for r in rows):
            raise ShapeMismatch("matrix shape does not match the spaces")
        f = domain.field
        cols = [{i: f(rows[i][j]) for i in range(codomain.dim)} for j in range(domain.dim)]
        return cls(domain, codomain, cols, name)

    def matrix(self) -> list[list[Scalar]]:
        z = self.field.zero
        rows = [[z] * self.domain.dim for _ in range(self.codomain.dim)]
        for j, col in enumerate(self.columns):
            for i, c in (col or {}).items():
                rows[i][j] = c
        return rows

    def entry(self, row_label, col_label) -> Scalar:
        col = self.columns[self.domain.index(col_label)]
        if col is None:
            raise UndefinedColumn(col_label, self.domain)
        return col.get(self.codomain.index(row_label), self.field.zero)

    def column(self, label) -> Vector:
        col = self.columns[self.domain.index(label)]
        if col is None:
            raise UndefinedColumn(label, self.domain)
        return Vector(self.codomain, col)

    def apply(self, v: Vector | Hashable) -> Vector:
        if not isinstance(v, Vector):
            v = Vector.basis(self.domain, v)
        if v.space != self.domain:
            raise ShapeMismatch(f"vector in {v.space.name or '?'} fed to map from {self.domain.name or '?'}")
        acc: dict[int, Scalar] = {}
        for j, c in v.coeffs.items():
            col = self.columns[j]
            if col is None:
                raise UndefinedColumn(self.domain.basis[j], self.domain)
            for i, d in col.items():
                p = c * d
                acc[i] = acc[i] + p if i in acc else p
        return Vector(self.codomain, acc)

    __call__ = apply

    def __matmul__(self, other: LinearMap) -> LinearMap:
        return compose(self, other)

    def __add__(self, other: LinearMap) -> LinearMap:
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ShapeMismatch("adding maps of different shapes")
        cols = []
        for a, b in zip(self.columns, other.columns):
            if a is None or b is None:
                cols.append(None)
                continue
            acc = dict(a)
            for i, c in b.items():
                acc[i] = acc[i] + c if i in acc else c
            cols.append(acc)
        cls = PartialLinearMap if (self.is_partial or other.is_partial) else LinearMap
        return cls(self.domain, self.codomain, cols)

    def scale(self, s: ScalarLike) -> LinearMap:
        s = self.field(s)
        cols = [None if col is None else {i: s * c for i, c in col.items()} for col in self.columns]
        return type(self)(self.domain, self.codomain, cols, self.name)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.columns == other.columns)

    def __hash__(self):
        return hash((self.domain, self.codomain))

    def __repr__(self):
        kind = type(self).__name__
        return f"{kind}({self.name or '?'}: {self.domain.name or '?'} -> {self.codomain.name or '?'})"

    def renamed(self, name: str) -> LinearMap:
        return type(self)(self.domain, self.codomain, self.columns, name)

    def with_spaces(self, domain: Space, codomain: Space) -> LinearMap:
        """Reinterpret the same matrix between spaces of equal dimension."""
        if domain.dim != self.domain.dim or codomain.dim != self.codomain.dim:
            raise ShapeMismatch("with_spaces needs spaces of identical dimensions")
        return type(self)(domain, codomain, self.columns, self.name)

    def triplets(self) -> list[tuple[Hashable, Hashable, Scalar]]:
        """Sparse (column label, row label, value) triplets."""
        out = []
        for j, col in enumerate(self.columns):
            for i in sorted(col or {}):
                out.append((self.domain.basis[j], self.codomain.basis[i], col[i]))
        return out


class PartialLinearMap(LinearMap):
    """A linear map whose columns may be undefined (None)."""

    __slots__ = ()

    @property
    def is_partial(self) -> bool:
        return True

    def defined(self, label) -> bool:
        return self.columns[self.domain.index(label)] is not None

    @classmethod
    def from_images(cls, domain, codomain, images, name=""):
        cols = []
        for lab in domain.basis:
            if callable(images):
                img = images(lab)
            else:
                img = images.get(lab) if lab in images else None
            cols.append(None if img is None else _column_from_image(codomain, img))
        return cls(domain, codomain, cols, name)


def _column_from_image(codomain: Space, img) -> Column:
    if isinstance(img, Vector):
        if img.space != codomain:
            raise ShapeMismatch("image vector lives in the wrong space")
        return dict(img.coeffs)
    f = codomain.field
    col: Column = {}
    for lab, c in img.items():
        i = codomain.index(lab)
        col[i] = col.get(i, f.zero) + f(c)
    return col


def identity(v: Space) -> LinearMap:
    one = v.field.one
    return LinearMap(v, v, [{i: one} for i in range(v.dim)], "id")


def zero_map(domain: Space, codomain: Space) -> LinearMap:
    return LinearMap(domain, codomain, [{} for _ in range(domain.dim)], "0")


def compose(*maps: LinearMap) -> LinearMap:
    """``compose(f, g, h) = f∘g∘h``.  Partial maps yield partial results."""
    if not maps:
        raise ShapeMismatch("compose needs at least one map")
    result = maps[-1]
    for f in reversed(maps[:-1]):
        result = _compose2(f, result)
    return result


def _compose2(f: LinearMap, g: LinearMap) -> LinearMap:
    if f.domain != g.codomain:
        raise ShapeMismatch(
            f"cannot compose {f.name or 'map'} (from {f.domain.name or '?'}, dim {f.domain.dim}) "
            f"after {g.name or 'map'} (into {g.codomain.name or '?'}, dim {g.codomain.dim})")
    partial = f.is_partial or g.is_partial
    cols = []
    fcols = f.columns
    for col in g.columns:
        if col is None:
            cols.append(None)
            continue
        acc: Column = {}
        bad = False
        for k, c in col.items():
            fc = fcols[k]
            if fc is None:
                bad = True
                break
            for i, d in fc.items():
                p = c * d
                acc[i] = acc[i] + p if i in acc else p
        cols.append(None if bad else acc)
    cls = PartialLinearMap if partial else LinearMap
    return cls(g.domain, f.codomain, cols)


def tensor_map(*maps: LinearMap) -> LinearMap:
    """Kronecker product consistent with :func:`tensor_space` ordering."""
    if not maps:
        raise ShapeMismatch("tensor_map needs at least one map")
    if len(maps) == 1:
        return maps[0]
    result = maps[0]
    for g in maps[1:]:
        result = _tensor2(result, g)
    return result


def _tensor2(f: LinearMap, g: LinearMap) -> LinearMap:
    if f.field != g.field:
        raise FieldMismatch(f"cannot tensor maps over {f.field} and {g.field}")
    dom = tensor_space(f.domain, g.domain)
    cod = tensor_space(f.codomain, g.codomain)
    gd = g.codomain.dim
    cols = []
    for fc in f.columns:
        for gc in g.columns:
            if fc is None or gc is None:
                cols.append(None)
                continue
            col = {}
            for i, a in fc.items():
                base = i * gd
                for k, b in gc.items():
                    col[base + k] = a * b
            cols.append(col)
    cls = PartialLinearMap if (f.is_partial or g.is_partial) else LinearMap
    name = "⊗".join(m.name or "?" for m in (f, g))
    return cls(dom, cod, cols, name)


def permutation(factors: Sequence[Space], perm: Sequence[int]) -> LinearMap:
    """Reorder tensor factors: output position k carries input factor ``perm[k]``.

    Factors may themselves be composite, in which case they move as blocks.
    Composition rule: ``permutation(Q-codomain factors, p) @ permutation(fs, q)``
    equals ``permutation(fs, r)`` with ``r[k] = q[p[k]]``.
    """
    factors = list(factors)
    perm = list(perm)
    if sorted(perm) != list(range(len(factors))):
        raise ShapeMismatch(f"{perm} is not a permutation of {len(factors)} positions")
    dom = tensor_space(*factors)
    out_blocks = [factors[p] for p in perm]
    cod = tensor_space(*out_blocks)
    one = dom.field.one
    cols = []
    for lab in dom.basis:
        pieces = split_label(dom, factors, lab)
        out = join_labels(out_blocks, [pieces[p] for p in perm])
        cols.append({cod.index(out): one})
    return LinearMap(dom, cod, cols, f"σ{tuple(perm)}")


def swap(v: Space, w: Space) -> LinearMap:
    """The flip V⊗W → W⊗V."""
    return permutation([v, w], (1, 0))


def transposition(factors: Sequence[Space], i: int, j: int) -> LinearMap:
    """σ_ij with zero-based positions."""
    perm = list(range(len(factors)))
    perm[i], perm[j] = perm[j], perm[i]
    return permutation(factors, perm)


def left_unitor(v: Space) -> LinearMap:
    """k⊗V → V."""
    k = ground(v.field)
    return identity(v).with_spaces(tensor_space(k, v), v).renamed("λ")


def right_unitor(v: Space) -> LinearMap:
    """V⊗k → V."""
    k = ground(v.field)
    return identity(v).with_spaces(tensor_space(v, k), v).renamed("ρ")


def left_unitor_inv(v: Space) -> LinearMap:
    k = ground(v.field)
    return identity(v).with_spaces(v, tensor_space(k, v)).renamed("λ⁻¹")


def right_unitor_inv(v: Space) -> LinearMap:
    k = ground(v.field)
    return identity(v).with_spaces(v, tensor_space(v, k)).renamed("ρ⁻¹")


def invert(f: LinearMap) -> LinearMap:
    """Exact inverse by Gauss-Jordan elimination, verified before returning."""
    if f.is_partial:
        raise ShapeMismatch("cannot invert a partial map")
    n = f.domain.dim
    if f.codomain.dim != n:
        raise Singular(f"{f.name or 'map'} is not square ({f.codomain.dim}x{n})")
    field = f.field
    zero, one = field.zero, field.one
    # rows of the augmented matrix as sparse dicts: [A | I]
    rows: list[dict[int, Scalar]] = [dict() for _ in range(n)]
    for j, col in enumerate(f.columns):
        for i, c in col.items():
            rows[i][j] = c
    for i in range(n):
        rows[i][n + i] = one
    for c in range(n):
        pivot = next((r for r in range(c, n) if rows[r].get(c)), None)
        if pivot is None:
            raise Singular(f"{f.name or 'map'} is not invertible (no pivot in column "
                           f"{format_label(f.domain.basis[c])})")
        rows[c], rows[pivot] = rows[pivot], rows[c]
        prow = rows[c]
        inv = prow[c].inverse()
        if inv != one:
            prow = {k: v * inv for k, v in prow.items()}
            rows[c] = prow
        for r in range(n):
            if r == c:
                continue
            factor = rows[r].get(c)
            if not factor:
                continue
            row = rows[r]
            for k, v in prow.items():
                nv = row.get(k, zero) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    cols: list[Column] = [dict() for _ in range(n)]
    for i in range(n):
        for k, v in rows[i].items():
            if k >= n:
                cols[k - n][i] = v
    inv_map = LinearMap(f.codomain, f.domain, cols, f"{f.name}⁻¹" if f.name else "")
    if compose(f, inv_map) != identity(f.codomain) or compose(inv_map, f) != identity(f.domain):
        raise AssertionError("Gauss-Jordan produced an incorrect inverse")
    return inv_map


# -- equality with witnesses --------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A domain basis label on which two maps differ, with both images."""

    label: Hashable
    lhs: Vector
    rhs: Vector
    space: Space | None = None

    def __str__(self) -> str:
        lab = pretty_label(self.space, self.label) if self.space is not None else format_label(self.label)
        return f"at {lab}: {self.lhs} vs {self.rhs}"


@dataclass(frozen=True)
class Comparison:
    equal: bool
    witness: Witness | None = None
    differing: int = 0

    def __bool__(self) -> bool:
        return self.equal


def maps_equal(f: LinearMap, g: LinearMap) -> Comparison:
    """Entrywise equality; on failure the first differing column is the witness.

    ``differing`` counts how many domain basis vectors have different images.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ShapeMismatch(
            f"comparing maps of different shapes: {f.domain.dim}->{f.codomain.dim} "
            f"vs {g.domain.dim}->{g.codomain.dim}")
    first = None
    count = 0
    for j, (a, b) in enumerate(zip(f.columns, g.columns)):
        if a != b:
            count += 1
            if first is None:
                lab = f.domain.basis[j]
                if a is None or b is None:
                    raise UndefinedColumn(lab, f.domain)
                first = Witness(lab, Vector(f.codomain, a), Vector(g.codomain, b), f.domain)
    return Comparison(first is None, first, count)


# -- diagram paths ------------------------------------------------------------

@dataclass
class DiagramPath:
    """Stages applied left to right: ``stages[0]`` acts first."""

    stages: list[LinearMap] = dc_field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        for a, b in zip(self.stages, self.stages[1:]):
            if a.codomain != b.domain:
                raise ShapeMismatch(
                    f"path stages do not chain: {a.name or '?'} lands in {a.codomain.name or '?'}, "
                    f"{b.name or '?'} starts at {b.domain.name or '?'}")

    @property
    def domain(self) -> Space:
        return self.stages[0].domain

    @property
    def codomain(self) -> Space:
        return self.stages[-1].codomain


def evaluate_path(path: DiagramPath | Sequence[LinearMap], v: Vector) -> Vector:
    stages = path.stages if isinstance(path, DiagramPath) else list(path)
    for stage in stages:
        v = stage.apply(v)
    return v


def compose_path(path: DiagramPath) -> LinearMap:
    return compose(*reversed(path.stages))
