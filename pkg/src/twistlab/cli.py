"""Command line front end: run scenario files and gallery demos.

    twistlab verify scenario.json [--format text|json] [--parallel]
    twistlab demo NAME [--param value ...] [--format text|json]
    twistlab list-demos

Exit codes: 0 when every expectation is met, 1 when an expectation is not
met (or a check without expectation fails), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from . import gallery
from . import groups as grp
from .scalar import FieldError, FieldSpec, Scalar
from .structures import (
    AlgebraData,
    Check,
    CoalgebraData,
    FrobeniusData,
    Report,
    StructureError,
    check_algebra,
    check_bialgebra,
    check_coalgebra,
    check_frobenius,
    check_special,
    check_symmetric,
    frobenius_from_pairing,
    nakayama_from_pairing,
    pairing_from_frobenius,
)
from .tensor import (
    DimensionLimitExceeded,
    Grading,
    LinearMap,
    Space,
    TensorError,
    Vector,
    Witness,
    ground,
    identity,
    maps_equal,
    tensor_space,
)
from .twist import (
    TwistError,
    TwistingMap,
    bicharacter_twist,
    build_twisted_algebra,
    check_bialgebra_obstruction,
    check_coalgebra_compat,
    check_frobenius_inheritance,
    check_iterated_multiplication,
    check_nakayama_candidates,
    check_separability_transfer,
    check_special_transfer,
    check_twisting,
    explicit_twist,
    extend_twist_from_generators,
    graded_group_twist,
    inherited_frobenius,
    iterated_twist,
    trivial_twist,
    twisted_pairing,
)

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Any problem with the scenario itself; maps to exit code 2."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line, self.column = line, column


class UnknownPreset(InputError):
    pass


class NameResolution(InputError):
    pass


class UnknownDemo(InputError):
    pass


# -- scenario loading ------------------------------------------------------------------

def _label(raw):
    """JSON labels: strings stay strings, lists become tuples."""
    if isinstance(raw, list):
        return tuple(_label(x) for x in raw)
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return str(raw)
    return raw


def _label_json(label):
    if isinstance(label, tuple):
        return [_label_json(x) for x in label]
    return str(label)


@dataclass
class Entry:
    """A named algebra with whatever coalgebras and sections its preset provides."""

    algebra: AlgebraData
    coalgebras: dict[str, CoalgebraData] = dc_field(default_factory=dict)
    generators: tuple = ()
    section: LinearMap | None = None


@dataclass
class Scenario:
    field: FieldSpec
    algebras: dict[str, Entry]
    coalgebras: dict[str, tuple[str, CoalgebraData]]
    twists: dict[str, TwistingMap]
    checks: list[dict]


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    return obj[key]


def _scalar(field: FieldSpec, raw) -> Scalar:
    if isinstance(raw, bool) or raw is None:
        raise InputError(f"not a scalar: {raw!r}")
    if isinstance(raw, float):
        raw = Fraction(raw).limit_denominator()
    try:
        return field(raw if not isinstance(raw, str) else field.parse_scalar(raw))
    except FieldError as e:
        raise InputError(f"bad scalar {raw!r}: {e}") from e


def _triplets(field: FieldSpec, domain: Space, codomain: Space, rows, where: str) -> LinearMap:
    images: dict = {}
    for item in rows:
        if not isinstance(item, list) or len(item) != 3:
            raise InputError(f"{where}: triplets are [row label, column label, scalar]")
        r, c, v = _label(item[0]), _label(item[1]), _scalar(field, item[2])
        if c not in domain:
            raise NameResolution(f"{where}: column label {item[1]!r} is not a basis label")
        if r not in codomain:
            raise NameResolution(f"{where}: row label {item[0]!r} is not a basis label")
        col = images.setdefault(c, {})
        col[r] = col.get(r, field.zero) + v
    return LinearMap.from_images(domain, codomain, images)


def _group(spec: dict) -> grp.FiniteGroup:
    if "cyclic" in spec:
        orders = spec["cyclic"]
        return grp.cyclic_product(orders if isinstance(orders, list) else [orders])
    if "dihedral" in spec:
        return grp.dihedral(int(spec["dihedral"]))
    if spec.get("group") == "S3":
        return grp.symmetric3()
    raise UnknownPreset("group algebras need 'cyclic', 'dihedral' or group 'S3'")


def _build_algebra(field: FieldSpec, name: str, spec: dict) -> Entry:
    preset = spec.get("preset", "explicit")
    if preset == "group":
        ga = gallery.group_algebra(_group(spec), field, name)
        gens = ga.group.generators
        section = None
        if field.characteristic == 0 or ga.group.order % field.characteristic:
            section = ga.separability_section()
        return Entry(ga.algebra, {"grouplike": ga.grouplike, "frobenius": ga.frobenius_coalgebra,
                                  "special-frobenius": ga.special_frobenius().coalgebra}, gens, section)
    if preset == "truncated":
        tp = gallery.truncated_polynomial(int(_need(spec, "n", name)), field, spec.get("var", "x"))
        return Entry(tp.algebra, {"frobenius": tp.frobenius_coalgebra, "binomial": tp.binomial_coalgebra},
                     tp.generators)
    if preset == "qci":
        m = spec.get("m", [3, 3])
        n = int(spec.get("n", len(m)))
        q = field.root_of_unity(int(spec["q_order"])) if "q_order" in spec else _scalar(field, spec.get("q", -1))
        qci = gallery.quantum_complete_intersection(n, m, q, field)
        coal = {"frobenius": qci.frobenius.coalgebra} if qci.frobenius is not None else {}
        return Entry(qci.algebra, coal)
    if preset == "explicit":
        basis = [_label(b) for b in _need(spec, "basis", name)]
        grading = None
        if "grading" in spec:
            g = spec["grading"]
            grading = Grading({_label(k): tuple(v) for k, v in g["degrees"].items()}, tuple(g.get("moduli", [0])))
        space = Space(field, basis, grading, name)
        SS = tensor_space(space, space)
        mul = _triplets(field, SS, space, _need(spec, "mul", name), f"{name}.mul")
        unit_label = _label(_need(spec, "unit", name))
        if unit_label not in space:
            raise NameResolution(f"{name}.unit: {unit_label!r} is not a basis label")
        unit = LinearMap.from_images(ground(field), space, {"1": {unit_label: field.one}})
        return Entry(AlgebraData(space, mul, unit), {}, tuple(_label(g) for g in spec.get("generators", ())))
    raise UnknownPreset(f"unknown algebra preset {preset!r}")


def _build_coalgebra(field: FieldSpec, name: str, spec: dict, algebras: dict[str, Entry]) -> tuple[str, CoalgebraData]:
    of = _need(spec, "of", name)
    if of not in algebras:
        raise NameResolution(f"{name}: unknown algebra {of!r}")
    entry = algebras[of]
    preset = spec.get("preset", "explicit")
    if preset != "explicit":
        if preset not in entry.coalgebras:
            raise UnknownPreset(f"{name}: algebra {of!r} has no {preset!r} coalgebra")
        return of, entry.coalgebras[preset]
    space = entry.algebra.space
    comul = _triplets(field, space, tensor_space(space, space), _need(spec, "comul", name), f"{name}.comul")
    counit_raw = _need(spec, "counit", name)
    images = {}
    for lab, v in counit_raw.items():
        if _label(lab) not in space:
            raise NameResolution(f"{name}.counit: {lab!r} is not a basis label")
        images[_label(lab)] = {"1": _scalar(field, v)}
    counit = LinearMap.from_images(space, ground(field), images)
    return of, CoalgebraData(space, comul, counit)


def _build_twist(field: FieldSpec, name: str, spec: dict, algebras: dict[str, Entry]) -> TwistingMap:
    ea, eb = (_resolve(algebras, _need(spec, key, name), name) for key in ("A", "B"))
    a, b = ea.algebra, eb.algebra
    preset = spec.get("preset", "explicit")
    if preset == "trivial":
        return trivial_twist(a, b)
    if preset == "bicharacter":
        if "q_order" in spec:
            values = [[field.root_of_unity(int(spec["q_order"]))]]
        else:
            values = [[_scalar(field, v) for v in row] for row in _need(spec, "values", name)]
        return bicharacter_twist(a, b, values)
    if preset == "lambda-table":
        table = {}
        for item in _need(spec, "table", name):
            h, g, v = item
            table[(_label(h), _label(g))] = _scalar(field, v)
        # τ(h⊗g) = λ g⊗h with A = kG the first named algebra
        return graded_group_twist(a, b, table)
    if preset == "seed-extension":
        seed = {}
        for item in _need(spec, "seed", name):
            src, dst, v = item
            col = seed.setdefault(_label(src), {})
            col[_label(dst)] = _scalar(field, v)
        gens_a = tuple(_label(x) for x in spec.get("generators_a", ea.generators))
        gens_b = tuple(_label(x) for x in spec.get("generators_b", eb.generators))
        return extend_twist_from_generators(a, b, seed, gens_a, gens_b)
    if preset == "explicit":
        BA = tensor_space(b.space, a.space)
        AB = tensor_space(a.space, b.space)
        return explicit_twist(a, b, _triplets(field, BA, AB, _need(spec, "tau", name), f"{name}.tau"), name)
    raise UnknownPreset(f"unknown twist preset {preset!r}")


def _resolve(table: dict, key, where: str):
    if not isinstance(key, str) or key not in table:
        raise NameResolution(f"{where}: unknown name {key!r}")
    return table[key]


def _named(items, where: str):
    """Accept either a list of objects with a 'name' key or a mapping."""
    if isinstance(items, dict):
        return list(items.items())
    out = []
    for obj in items:
        if not isinstance(obj, dict):
            raise InputError(f"{where}: entries must be objects")
        out.append((_need(obj, "name", where), obj))
    return out


def load_scenario(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from e
    if not isinstance(doc, dict):
        raise ParseError("scenario must be a JSON object", 1, 1)
    try:
        field = FieldSpec.parse(str(doc.get("field", "Q")))
    except FieldError as e:
        raise ParseError(f"bad field {doc.get('field')!r}: {e}",
                         *_locate(text, json.dumps(doc.get("field"), ensure_ascii=False))) from e
    algebras = {n: _build_algebra(field, n, s) for n, s in _named(doc.get("algebras", []), "algebras")}
    coalgebras = {n: _build_coalgebra(field, n, s, algebras) for n, s in _named(doc.get("coalgebras", []), "coalgebras")}
    twists = {n: _build_twist(field, n, s, algebras) for n, s in _named(doc.get("twists", []), "twists")}
    checks = doc.get("checks", [])
    if not isinstance(checks, list):
        raise InputError("checks must be a list")
    for c in checks:
        op = _need(c, "op", "check")
        if op not in OPERATIONS:
            raise UnknownPreset(f"unknown check operation {op!r}")
        if c.get("expect") not in (None, "pass", "fail", "error"):
            raise InputError(f"expect must be pass, fail or error, not {c.get('expect')!r}")
    sc = Scenario(field, algebras, coalgebras, twists, checks)
    for c in checks:
        OPERATIONS[c["op"]].resolve(sc, c.get("args", []))
    return sc


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


# -- operations ---------------------------------------------------------------------------

@dataclass
class Operation:
    kinds: tuple[str, ...]  # "algebra", "coalgebra", "twist", "int"
    run: Callable[..., Report]
    citation: str

    def resolve(self, sc: Scenario, args: list) -> list:
        if len(args) != len(self.kinds):
            raise InputError(f"expected {len(self.kinds)} argument(s) ({', '.join(self.kinds)}), got {len(args)}")
        out = []
        for kind, a in zip(self.kinds, args):
            if kind == "algebra":
                out.append(_resolve(sc.algebras, a, "check"))
            elif kind == "coalgebra":
                of, coal = _resolve(sc.coalgebras, a, "check")
                out.append((sc.algebras[of], coal))
            elif kind == "twist":
                out.append(_resolve(sc.twists, a, "check"))
            elif kind == "int":
                if not isinstance(a, int) or a < 1:
                    raise InputError(f"expected a positive integer, got {a!r}")
                out.append(a)
        return out


def _frob(t: TwistingMap, ca, cb) -> tuple[FrobeniusData, FrobeniusData]:
    return FrobeniusData(t.alg_a, ca[1]), FrobeniusData(t.alg_b, cb[1])


def _wrap(title: str, citation: str, *checks: Check) -> Report:
    return Report(title, list(checks), citation)


def _op_roundtrip(entry: Entry, c) -> Report:
    f = FrobeniusData(entry.algebra, c[1])
    rebuilt = frobenius_from_pairing(f.algebra, pairing_from_frobenius(f))
    return _wrap("pairing roundtrip", "Frobenius structure from an associative non-degenerate pairing",
                 Check.from_comparison("comultiplication recovered", maps_equal(rebuilt.coalgebra.comul, f.coalgebra.comul)),
                 Check.from_comparison("counit recovered", maps_equal(rebuilt.coalgebra.counit, f.coalgebra.counit)))


def _op_twisted_frobenius(t, ca, cb) -> Report:
    fa, fb = _frob(t, ca, cb)
    r = check_frobenius_inheritance(t, fa, fb)
    if r.ok:
        f = inherited_frobenius(t, fa, fb)
        r.extend(check_frobenius(f).checks, "inherited ")
    return r


def _op_twisted_symmetric(t, ca, cb) -> Report:
    fa, fb = _frob(t, ca, cb)
    beta = twisted_pairing(t, fa, fb)
    f = inherited_frobenius(t, fa, fb)
    theta = nakayama_from_pairing(f.algebra, beta).theta
    return _wrap("twisted symmetric", "symmetric twisted product of Frobenius algebras", check_symmetric(beta),
                 Check.from_comparison("nakayama is identity", maps_equal(theta, identity(f.space))))


def _op_separability(t, ea: Entry, eb: Entry) -> Report:
    if ea.section is None or eb.section is None:
        raise TwistError("separability transfer needs group algebras of invertible order")
    return check_separability_transfer(t, ea.section, eb.section)


def _op_iterated(t, i, j) -> Report:
    iterated_twist(t, i, j, verify=False)
    return check_iterated_multiplication(t, i, j)


OPERATIONS: dict[str, Operation] = {
    "algebra": Operation(("algebra",), lambda e: check_algebra(e.algebra), "algebra axioms"),
    "coalgebra": Operation(("coalgebra",), lambda c: check_coalgebra(c[1]), "coalgebra axioms"),
    "bialgebra": Operation(("coalgebra",), lambda c: check_bialgebra(c[0].algebra, c[1]), "bialgebra axioms"),
    "frobenius": Operation(("coalgebra",), lambda c: check_frobenius(FrobeniusData(c[0].algebra, c[1])),
                           "Frobenius bimodule squares"),
    "special": Operation(("coalgebra",), lambda c: _wrap("special", "special Frobenius structure",
                                                         check_special(FrobeniusData(c[0].algebra, c[1]))),
                         "special Frobenius structure"),
    "roundtrip": Operation(("algebra", "coalgebra"), _op_roundtrip, "Frobenius structure from an associative non-degenerate pairing"),
    "twisting": Operation(("twist",), check_twisting, "twisting map axioms and their split-square form"),
    "coalgebra-compat": Operation(("twist", "coalgebra", "coalgebra"),
                                  lambda t, a, b: check_coalgebra_compat(t, a[1], b[1]),
                                  "induced coalgebra iff counit squares and hexagon"),
    "bialgebra-obstruction": Operation(("twist", "coalgebra", "coalgebra"),
                                       lambda t, a, b: check_bialgebra_obstruction(t, a[1], b[1]),
                                       "twisted product of bialgebras is a bialgebra iff the twist is trivial"),
    "twisted-bialgebra": Operation(("twist", "coalgebra", "coalgebra"), lambda t, a, b: _twisted_bialgebra(t, a, b),
                                   "bialgebra compatibility of the twisted product"),
    "frobenius-inheritance": Operation(("twist", "coalgebra", "coalgebra"),
                                       lambda t, a, b: check_frobenius_inheritance(t, *_frob(t, a, b)),
                                       "twisted product of Frobenius algebras is Frobenius when the hexagon commutes"),
    "twisted-frobenius": Operation(("twist", "coalgebra", "coalgebra"), _op_twisted_frobenius,
                                   "twisted product of Frobenius algebras is Frobenius when the hexagon commutes"),
    "twisted-symmetric": Operation(("twist", "coalgebra", "coalgebra"), _op_twisted_symmetric,
                                   "symmetric twisted product of Frobenius algebras"),
    "special-transfer": Operation(("twist", "coalgebra", "coalgebra"),
                                  lambda t, a, b: check_special_transfer(t, *_frob(t, a, b)),
                                  "twisted product of special Frobenius algebras is special"),
    "nakayama-candidates": Operation(("twist", "coalgebra", "coalgebra"),
                                     lambda t, a, b: check_nakayama_candidates(t, *_frob(t, a, b)),
                                     "candidate Nakayama automorphisms of a twisted product"),
    "separability-transfer": Operation(("twist", "algebra", "algebra"), _op_separability,
                                       "twisted product is separable with the induced section iff the section squares commute"),
    "iterated": Operation(("twist", "int", "int"), _op_iterated, "iterated twists respect multiplication"),
}


def _twisted_bialgebra(t, a, b):
    tw = build_twisted_algebra(t, (a[1], b[1]))
    rep = check_bialgebra(tw.algebra, tw.coalgebra)
    rep.title = "twisted bialgebra"
    return rep


# -- running -------------------------------------------------------------------------------

@dataclass
class Result:
    op: str
    args: list
    status: str  # pass, fail or error
    expect: str | None
    report: Report | None
    citation: str
    error: str = ""
    elapsed: float = 0.0

    @property
    def met(self) -> bool:
        if self.expect is None:
            return self.status == "pass" and (self.report is None or self.report.claims_hold)
        if self.report is not None and not self.report.claims_hold:
            return False
        return self.status == self.expect


def _run_check(sc: Scenario, spec: dict) -> Result:
    op = OPERATIONS[spec["op"]]
    args = spec.get("args", [])
    resolved = op.resolve(sc, args)
    start = time.perf_counter()
    try:
        rep = op.run(*resolved)
        status = "pass" if rep.ok else "fail"
        err = ""
    except (TwistError, StructureError, TensorError, FieldError) as e:
        if isinstance(e, DimensionLimitExceeded):
            raise
        rep, status, err = None, "error", f"{type(e).__name__}: {e}"
    citation = (rep.citation if rep is not None and rep.citation else op.citation)
    return Result(spec["op"], args, status, spec.get("expect"), rep, citation, err,
                  time.perf_counter() - start)


def run_scenario(sc: Scenario, parallel: bool = False) -> list[Result]:
    if parallel and len(sc.checks) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(lambda c: _run_check(sc, c), sc.checks))
    return [_run_check(sc, c) for c in sc.checks]


def exit_code(results: Sequence[Result]) -> int:
    return EXIT_OK if all(r.met for r in results) else EXIT_FAIL


# -- report emission ----------------------------------------------------------------------------

def _vector_json(v: Vector) -> list:
    return [[_label_json(lab), str(c)] for lab, c in v.terms()]


def _witness_json(w: Witness | None):
    if w is None:
        return None
    return {"label": _label_json(w.label), "lhs": _vector_json(w.lhs), "rhs": _vector_json(w.rhs)}


def _report_json(rep: Report) -> dict:
    return {
        "title": rep.title,
        "ok": rep.ok,
        "claims_hold": rep.claims_hold,
        "citation": rep.citation,
        "notes": list(rep.notes),
        "checks": [{"name": c.name, "kind": c.kind, "status": c.status, "detail": c.detail,
                    "witness": _witness_json(c.witness)} for c in rep.checks],
    }


def _first_witness(rep: Report | None):
    if rep is None:
        return None
    for c in rep.checks:
        if not c.ok and c.witness is not None and c.kind != "property":
            return _witness_json(c.witness)
    return None


def results_document(results: Sequence[Result], source: str = "", timings: bool = False) -> dict:
    items = []
    for r in results:
        item = {
            "check": r.op,
            "arguments": [_label_json(_label(a)) for a in r.args],
            "status": r.status,
            "expected": r.expect,
            "met": r.met,
            "citation": r.citation,
            "witness": _first_witness(r.report),
            "report": _report_json(r.report) if r.report is not None else None,
        }
        if r.error:
            item["error"] = r.error
        if timings:
            item["elapsed"] = round(r.elapsed, 6)
        items.append(item)
    return {"schema": SCHEMA, "source": source, "results": items, "exit_code": exit_code(results)}


def emit_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def emit_text(results: Sequence[Result], timings: bool = False) -> str:
    if not results:
        return "no checks\n"
    rows = []
    for r in results:
        args = ", ".join(str(a) for a in r.args)
        rows.append((r.status.upper(), r.expect or "-", "met" if r.met else "UNMET", f"{r.op}({args})", r.citation))
    header = ("STATUS", "EXPECT", "", "CHECK")
    widths = [max(len(row[i]) for row in rows + [header]) for i in range(4)]
    lines = ["  ".join(f"{cell:<{w}}" for cell, w in zip(header, widths)) + "  CITATION"]
    for r, row in zip(results, rows):
        line = "  ".join(f"{cell:<{w}}" for cell, w in zip(row[:4], widths)) + f"  {row[4]}"
        if timings:
            line += f"  [{r.elapsed:.3f}s]"
        lines.append(line.rstrip())
        if r.error:
            lines.append(f"    error: {r.error}")
        if r.report is not None:
            for c in r.report.checks:
                if not c.ok and c.kind != "property":
                    lines.append(f"    [fail] {c.name}" + (f" ({c.detail})" if c.detail else ""))
                    if c.witness is not None:
                        lines.append(f"        witness {c.witness}")
    passed = sum(r.met for r in results)
    lines.append(f"{passed}/{len(results)} expectations met")
    return "\n".join(lines) + "\n"


# -- demos ---------------------------------------------------------------------------------------

def demo_results(name: str, params: dict) -> list[Result]:
    if name not in gallery.DEMOS:
        raise UnknownDemo(f"unknown demo {name!r}; see list-demos")
    d = gallery.DEMOS[name]
    unknown = set(params) - set(d.parameters)
    if unknown:
        raise InputError(f"demo {name!r} has no parameter(s) {', '.join(sorted(unknown))}")
    out = []
    try:
        exps = d.run(**params)
    except (gallery.UnsupportedParameters, gallery.InvalidQMatrix, FieldError) as e:
        raise InputError(str(e)) from e
    for e in exps:
        status = "pass" if e.report.ok else "fail"
        out.append(Result(e.report.title, [], status, e.expect, e.report,
                          e.citation or e.report.citation))
    return out


def _parse_demo_params(name: str, extra: list[str]) -> dict:
    if name not in gallery.DEMOS:
        raise UnknownDemo(f"unknown demo {name!r}; see list-demos")
    defaults = gallery.DEMOS[name].parameters
    out = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise InputError(f"unexpected argument {tok!r}")
        key, _, val = tok[2:].partition("=")
        if not val:
            val = next(it, None)
            if val is None:
                raise InputError(f"missing value for {tok}")
        key = key.replace("-", "_")
        if key not in defaults:
            raise InputError(f"demo {name!r} has no parameter --{key.replace('_', '-')}")
        if isinstance(defaults[key], int) or key in ("n", "D", "q_order"):
            try:
                out[key] = int(val)
            except ValueError as e:
                raise InputError(f"--{key} expects an integer") from e
        else:
            out[key] = val
    return out


def _demo_text(results: Sequence[Result]) -> str:
    lines = []
    for r in results:
        lines.append(str(r.report))
        lines.append(f"  expected: {r.expect or '-'}  -> {'met' if r.met else 'UNMET'}  ({r.citation})")
    passed = sum(r.met for r in results)
    lines.append(f"{passed}/{len(results)} expectations met")
    return "\n".join(lines) + "\n"


# -- entry point ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistlab", description="verify twisted tensor products exactly")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the checks of a scenario file")
    v.add_argument("scenario")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--parallel", action="store_true", help="run checks concurrently")
    v.add_argument("--timings", action="store_true", help="include elapsed times")
    d = sub.add_parser("demo", help="run a gallery example")
    d.add_argument("name")
    d.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_parser("list-demos", help="list gallery examples")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    out = sys.stdout
    try:
        if args.command == "list-demos":
            if extra:
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
            for name, d in gallery.DEMOS.items():
                params = " ".join(f"--{k.replace('_', '-')} {'auto' if v is None else v}" for k, v in d.parameters.items())
                out.write(f"{name:24s} {d.summary}\n{'':24s} {params}\n")
            return EXIT_OK
        if args.command == "verify":
            if extra:
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
            try:
                with open(args.scenario, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise InputError(f"cannot read {args.scenario}: {e.strerror}") from e
            sc = load_scenario(text)
            results = run_scenario(sc, args.parallel)
            if args.format == "json":
                out.write(emit_json(results_document(results, args.scenario, args.timings)))
            else:
                out.write(emit_text(results, args.timings))
            return exit_code(results)
        params = _parse_demo_params(args.name, extra)
        results = demo_results(args.name, params)
        if args.format == "json":
            out.write(emit_json(results_document(results, f"demo:{args.name}")))
        else:
            out.write(_demo_text(results))
        return exit_code(results)
    except (InputError, DimensionLimitExceeded, FieldError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except TwistError as e:
        # construction-time failures (inconsistent seeds, bad tables) are input problems
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
