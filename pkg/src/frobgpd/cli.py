"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a check fails or a
conversion is refused, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import formats
from .algebra import AXIOMS, as_frobenius, as_hstar, axiom_witness, find_unit, frobenius_as_hstar
from .correspond import frob_to_groupoid, groupoid_to_frob, hstar_to_semigroupoid, semigroupoid_to_hstar
from .dot import to_dot
from .enumeration import ENUMERATORS
from .errors import FrobError, InvariantViolation, ParseError, PreconditionError
from .structures import (Groupoid, Semigroupoid, is_locally_cancellative, is_regular, promote_to_groupoid,
                         validate_groupoid, validate_semigroupoid)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


@dataclass
class Report:
    """Checks decide the exit code; properties are informational."""

    kind: str
    checks: list = field(default_factory=list)
    properties: list = field(default_factory=list)

    def check(self, id: str, passed: bool, witness=None) -> None:
        self.checks.append(_entry(id, passed, witness))

    def note(self, id: str, passed: bool, witness=None) -> None:
        self.properties.append(_entry(id, passed, witness))

    @property
    def passed(self) -> bool:
        return all(e["passed"] for e in self.checks)

    def as_dict(self, path: str) -> dict:
        return {"file": path, "kind": self.kind, "passed": self.passed,
                "checks": self.checks, "properties": self.properties}

    def as_text(self, path: str) -> str:
        out = [f"{path}: {self.kind}"]
        for title, entries in (("checks", self.checks), ("properties", self.properties)):
            if entries:
                out.append(f"{title}:")
            for e in entries:
                line = f"  {'PASS' if e['passed'] else 'FAIL'}  {e['id']}"
                if "witness" in e:
                    line += f"  witness: {json.dumps(e['witness'], sort_keys=True)}"
                out.append(line)
        out.append(f"result: {'pass' if self.passed else 'fail'}")
        return "\n".join(out) + "\n"


def _entry(id: str, passed: bool, witness=None) -> dict:
    e = {"id": id, "passed": bool(passed)}
    if witness is not None:
        e["witness"] = _jsonable(witness)
    return e


def _emit(report: Report, path: str, fmt: str, out) -> int:
    if fmt == "json":
        out.write(json.dumps(report.as_dict(path), indent=2, sort_keys=True) + "\n")
    else:
        out.write(report.as_text(path))
    return EXIT_OK if report.passed else EXIT_FAIL


# -- check ---------------------------------------------------------------------

def _axioms(report: Report, c, names) -> None:
    for name in names:
        w = axiom_witness(c, name)
        report.check(name, w is None, w)


def check_document(doc: formats.Document) -> Report:
    report = Report(doc.kind)
    if doc.kind in formats.ALGEBRA_KINDS:
        c = formats.candidate(doc)
        _axioms(report, c, {"relation": AXIOMS, "frobenius": ("M", "A", "F", "U"), "hstar": ("M", "A", "H")}[doc.kind])
        if doc.kind == "frobenius" and doc.unit is not None:
            computed = find_unit(c)
            ok = computed is not None and computed == frozenset(doc.unit)
            report.check("unit-declared", ok,
                         None if ok else {"declared": doc.unit, "computed": computed})
        return report
    if doc.kind == "semigroupoid":
        s = formats.semigroupoid(doc)
        for r in validate_semigroupoid(s).entries:
            report.check(r.id, r.passed, r.witness)
        if report.passed:
            regular, table = is_regular(s)
            report.note("regular", regular, None if regular else [f for f, st in table.items() if not st][0])
            lc, w = is_locally_cancellative(s)
            report.note("locally-cancellative", lc, w)
            if regular and lc:
                report.note("has-identities", promote_to_groupoid(s) is not None)
        return report
    if doc.kind == "groupoid":
        s = formats.semigroupoid(doc)
        if doc.inv is None:
            inv, missing = formats.derive_inverses(s, doc.ident)
            report.check("inverses-derivable", missing is None, missing)
            if missing is not None:
                return report
        else:
            inv = dict(doc.inv)
        for r in validate_groupoid(Groupoid(s, dict(doc.ident), inv)).entries:
            report.check(r.id, r.passed, r.witness)
        return report
    return _check_relmorphism(doc, report)


def _check_relmorphism(doc: formats.Document, report: Report) -> Report:
    from .morphisms import (R_witness, check_I, check_I_prime, check_mul_preserving, check_R, classify,
                            i_prime_readings)

    for key, sub in (("source", doc.source_doc), ("target", doc.target_doc)):
        try:
            formats.algebra(sub)
            report.check(f"{key}-valid", True)
        except PreconditionError as exc:
            report.check(f"{key}-valid", False, exc.witness if exc.witness is not None else str(exc))
    if not report.passed:
        return report
    m = formats.relmorphism(doc)
    ok = check_R(m)
    report.check("R", ok, None if ok else R_witness(m))
    if m.kind == "frobenius":
        report.check("I", check_I(m))
    else:
        report.check("I'", check_I_prime(m))
        universal, existential = i_prime_readings(m)
        report.note("I'-universal-reading", universal)
        report.note("I'-existential-reading", existential)
    classes = classify(m)
    report.note("multiplication-preserving", check_mul_preserving(m))
    for cls in ("rel", "algebra", "func"):
        report.note(f"class-{cls}", cls in classes)
    return report


# -- convert and quotient ------------------------------------------------------------

def convert(doc: formats.Document, to: str):
    """Apply the correspondence; raises :class:`PreconditionError` when a hypothesis fails."""
    kind = doc.kind
    if kind == "relmorphism":
        raise PreconditionError("relmorphism files cannot be converted")
    if kind == "frobenius" and to == "groupoid":
        return frob_to_groupoid(formats.algebra(doc))
    if kind in formats.ALGEBRA_KINDS:
        c = formats.candidate(doc)
        if to == "frobenius":
            return as_frobenius(c, unit_hint=doc.unit)
        h = frobenius_as_hstar(formats.algebra(doc)) if kind == "frobenius" else as_hstar(c)
        if to == "hstar":
            return h
        s = hstar_to_semigroupoid(h)
        return s if to == "semigroupoid" else _promote(s)
    if kind == "groupoid":
        g = formats.groupoid(doc)
        if to == "frobenius":
            return groupoid_to_frob(g)
        if to == "hstar":
            return semigroupoid_to_hstar(g.base)
        return g if to == "groupoid" else g.base
    s = formats.semigroupoid(doc)
    if to == "semigroupoid":
        return s
    if to == "groupoid":
        return _promote(s)
    h = semigroupoid_to_hstar(s)
    return h if to == "hstar" else as_frobenius(h.base)


def _promote(s: Semigroupoid) -> Groupoid:
    g = promote_to_groupoid(s)
    if g is None:
        from .structures import local_identities

        missing = sorted(set(s.objects) - set(local_identities(s)))
        raise PreconditionError("semigroupoid has no identity at some object", missing[0])
    return g


def quotient(doc: formats.Document):
    from .quotient import F_functor, corollary_quotient

    if doc.kind in ("hstar", "frobenius"):
        return corollary_quotient(as_hstar(formats.candidate(doc)))
    if doc.kind == "semigroupoid":
        return F_functor(formats.semigroupoid(doc))
    if doc.kind == "groupoid":
        return F_functor(formats.groupoid(doc))
    raise PreconditionError(f"no quotient is defined for {doc.kind} files")


# -- adjunctions -------------------------------------------------------------------

def verify_adjunction(doc: formats.Document) -> Report:
    from . import quotient as q
    from .morphisms import counit_is_iso, hstar_triangles, hstar_unit, semigroupoid_triangles, unit_is_iso

    report = Report(doc.kind)
    if doc.kind in ("hstar", "frobenius", "relation"):
        h = as_hstar(formats.candidate(doc))
        hstar_unit(h)
        report.check("unit-subrelation", True)
        for side, ok in hstar_triangles(h).items():
            report.check(f"triangle-{side}", ok)
        report.note("unit-iso", unit_is_iso(h))
        report.note("counit-iso", counit_is_iso(hstar_to_semigroupoid(h)))
        return report
    if doc.kind == "relmorphism":
        raise PreconditionError("relmorphism files carry no adjunction")
    s = formats.groupoid(doc) if doc.kind == "groupoid" else formats.semigroupoid(doc)
    base = s.base if isinstance(s, Groupoid) else s
    semigroupoid_to_hstar(base)
    for side, ok in semigroupoid_triangles(base).items():
        report.check(f"triangle-{side}", ok)
    report.note("counit-iso", counit_is_iso(base))
    data = q.unit_and_counit(s)
    for side, ok in data["triangles"].items():
        report.check(f"quotient-triangle-{side}", ok)
    report.note("quotient-unit-iso", len(data["unit"].target.morphisms) == len(base.morphisms))
    if "counit" in data:
        report.check("quotient-counit-functor", True)
    return report


def check_morphism(doc: formats.Document, cls: str) -> Report:
    from .morphisms import R_witness, classify

    if doc.kind != "relmorphism":
        raise PreconditionError(f"expected a relmorphism file, got {doc.kind}")
    report = Report(doc.kind)
    m = formats.relmorphism(doc)
    classes = classify(m)
    report.check(f"class-{cls}", cls in classes, None if "rel" in classes else R_witness(m))
    for other in ("rel", "algebra", "func"):
        if other != cls:
            report.note(f"class-{other}", other in classes)
    return report


def dot_structure(doc: formats.Document):
    if doc.kind == "frobenius":
        return frob_to_groupoid(formats.algebra(doc))
    if doc.kind == "hstar":
        return hstar_to_semigroupoid(formats.algebra(doc))
    if doc.kind == "groupoid":
        return formats.groupoid(doc)
    if doc.kind == "semigroupoid":
        return formats.semigroupoid(doc)
    raise PreconditionError(f"no graph is drawn for {doc.kind} files")


# -- argument handling ----------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frobgpd", description="Finite Frobenius algebras, groupoids and semigroupoids.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run every axiom check for the file's kind")
    c.add_argument("file")
    c.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("convert", help="convert between the presentations")
    c.add_argument("file")
    c.add_argument("--to", required=True, choices=("frobenius", "groupoid", "hstar", "semigroupoid"))
    c.add_argument("-o", "--output")

    c = sub.add_parser("quotient", help="quotient by the idempotent congruence")
    c.add_argument("file")
    c.add_argument("-o", "--output")

    c = sub.add_parser("enumerate", help="exhaustive census")
    c.add_argument("--kind", required=True, choices=sorted(ENUMERATORS) + ["regular"])
    c.add_argument("--size", required=True, type=int)
    c.add_argument("--count-only", action="store_true")
    c.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("verify-adjunction", help="unit, counit and triangle report")
    c.add_argument("file")
    c.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("check-morphism", help="classify a relmorphism file")
    c.add_argument("file")
    c.add_argument("--class", dest="cls", required=True, choices=("rel", "algebra", "func"))
    c.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("dot", help="DOT digraph of the structure")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    return p


def _write(text: str, path: str | None, out) -> None:
    if path is None:
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _enumerate(args, out) -> int:
    from .enumeration import enumerate_regular

    if args.jobs < 1:
        raise PreconditionError("--jobs must be positive", args.jobs)
    fn = enumerate_regular if args.kind == "regular" else ENUMERATORS[args.kind]
    report = fn(args.size, jobs=args.jobs)
    if args.count_only:
        out.write(f"{report.count}\n")
    else:
        kind = "semigroupoid" if args.kind in ("lrsgpd", "regular") else None
        out.write("\n".join(formats.serialize(s, kind) for s in report.found))
    return EXIT_OK


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.command == "enumerate":
        try:
            return _enumerate(args, out)
        except PreconditionError as exc:
            err.write(f"error: {exc}\n")
            return EXIT_USAGE

    try:
        doc = formats.load(args.file)
    except OSError as exc:
        err.write(f"error: cannot read {args.file}: {exc.strerror}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"{args.file}: {exc}\n")
        return EXIT_USAGE

    try:
        if args.command == "check":
            return _emit(check_document(doc), args.file, args.format, out)
        if args.command == "verify-adjunction":
            return _emit(verify_adjunction(doc), args.file, args.format, out)
        if args.command == "check-morphism":
            return _emit(check_morphism(doc, args.cls), args.file, args.format, out)
        if args.command == "convert":
            result = convert(doc, args.to)
            _write(formats.serialize(result, args.to if args.to in ("frobenius", "hstar") else None),
                   args.output, out)
            return EXIT_OK
        if args.command == "quotient":
            _write(formats.serialize(quotient(doc)), args.output, out)
            return EXIT_OK
        if args.command == "dot":
            _write(to_dot(dot_structure(doc)), args.output, out)
            return EXIT_OK
    except InvariantViolation as exc:
        err.write(f"internal invariant violated: {exc}\n")
        return EXIT_FAIL
    except PreconditionError as exc:
        err.write(f"refused: {exc}\n")
        return EXIT_FAIL
    except FrobError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FAIL
    return EXIT_USAGE


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
