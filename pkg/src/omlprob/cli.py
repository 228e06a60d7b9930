"""Command-line front door: validate, convert, indep, condexp, gen.

Exit codes: 0 on success, 1 when a validation check fails, 2 on I/O or
schema problems.  Reports are printed as text or as versioned JSON
(``--format json``); rationals print as "p/q" unless ``--decimal`` is given,
and a non-terminating decimal is an error unless ``--approx`` allows a float
approximation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import files
from .catalog import KINDS, build_catalog, random_conditional_state, random_smap, raw_structure
from .errors import (
    C1Violation,
    C2Violation,
    C3Violation,
    LatticeInputError,
    NotAdditive,
    NotALattice,
    NotAnOrtholattice,
    NotAPoset,
    NotNormalized,
    NotOrthomodular,
    OmlError,
    ParseError,
    S1Violation,
    S2Violation,
    S3Violation,
    SchemaError,
)
from .lattice import OrthomodularLattice
from .observables import conditional_expectation, expectation
from .rationals import format_rational
from .smap import (
    SMap,
    conditional_to_smap,
    is_independent_product,
    scan_asymmetric_pairs,
    smap_to_conditional,
)
from .states import ConditionalState

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


@dataclass
class Report:
    status: str = "ok"
    checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def check(self, name: str, passed, witness=None) -> None:
        self.checks.append({"name": name, "passed": passed, "witness": witness})
        if passed is False:
            self.status = "error"

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "status": self.status,
            "checks": self.checks,
            "values": self.values,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)
        lines = [f"status: {self.status}"]
        for c in self.checks:
            mark = {True: "PASS", False: "FAIL", None: "SKIP"}[c["passed"]]
            suffix = f"  ({c['witness']})" if c["witness"] else ""
            lines.append(f"{mark} {c['name']}{suffix}")
        for k, v in self.values.items():
            lines.append(f"{k} = {v}")
        return "\n".join(lines)


def _witness_text(exc: OmlError) -> str:
    return str(exc)


def _staged_checks(report: Report, prefix: str, stages, loader):
    """Run a loader whose exceptions map onto an ordered list of checks.

    ``stages`` is a list of (check name, exception types).  The stage whose
    exception fires is marked failed; earlier ones pass, later ones are
    skipped.  Returns the loaded object or None.
    """
    try:
        obj = loader()
    except OmlError as exc:
        failed = next(
            (i for i, (_, kinds) in enumerate(stages) if isinstance(exc, kinds)), None
        )
        if failed is None:
            raise
        for i, (name, _) in enumerate(stages):
            if i < failed:
                report.check(f"{prefix}:{name}", True)
            elif i == failed:
                report.check(f"{prefix}:{name}", False, _witness_text(exc))
            else:
                report.check(f"{prefix}:{name}", None)
        return None
    for name, _ in stages:
        report.check(f"{prefix}:{name}", True)
    return obj


_LATTICE_STAGES = [
    ("poset", NotAPoset),
    ("lattice", NotALattice),
    ("ortholattice", NotAnOrtholattice),
    ("orthomodular", NotOrthomodular),
]
_STATE_STAGES = [("normalized", NotNormalized), ("additive", NotAdditive)]
_CS_STAGES = [("C1", C1Violation), ("C2", C2Violation), ("C3", C3Violation)]
_SMAP_STAGES = [("s1", S1Violation), ("s2", S2Violation), ("s3", S3Violation)]

_STAGES_BY_TYPE = {
    "lattice": _LATTICE_STAGES,
    "state": _STATE_STAGES,
    "conditional_state": _CS_STAGES,
    "smap": _SMAP_STAGES,
    "observable": [("partition", OmlError)],
}


def _load_context_lattice(args) -> OrthomodularLattice | None:
    if getattr(args, "lattice", None):
        return files.load_lattice(files.load_document(args.lattice))
    return None


def cmd_validate(args, fmt_value) -> tuple[Report, int]:
    report = Report()
    L = _load_context_lattice(args)
    for path in args.paths:
        doc = files.load_document(path)
        kind = files.document_type(doc)
        name = os.path.basename(path)
        _staged_checks(
            report, name, _STAGES_BY_TYPE[kind], lambda: files.load_typed(doc, L)
        )
    return report, EXIT_OK if report.status == "ok" else EXIT_INVALID


def cmd_convert(args, fmt_value) -> tuple[Report, int]:
    report = Report()
    L = _load_context_lattice(args)
    doc = files.load_document(args.path)
    kind = files.document_type(doc)
    ref = doc.get("lattice") if isinstance(doc.get("lattice"), str) else None
    if kind == "smap":
        p = files.load_smap(doc, L)
        f = smap_to_conditional(p)
        out = files.conditional_state_document(f, ref)
        report.check("convert:smap->conditional_state", True)
    elif kind == "conditional_state":
        f = files.load_conditional_state(doc, L)
        p = conditional_to_smap(f)
        out = files.smap_document(p, ref)
        report.check("convert:conditional_state->smap", True)
    else:
        raise SchemaError(f"cannot convert a {kind!r} document")
    files.write_document(args.output, out)
    report.values["output"] = args.output
    return report, EXIT_OK


def _load_smap_like(doc, L) -> SMap:
    kind = files.document_type(doc)
    if kind == "smap":
        return files.load_smap(doc, L)
    if kind == "conditional_state":
        return conditional_to_smap(files.load_conditional_state(doc, L))
    raise SchemaError(f"expected an s-map (or conditional state) file, got {kind!r}")


def cmd_indep(args, fmt_value) -> tuple[Report, int]:
    report = Report()
    L = _load_context_lattice(args)
    doc = files.load_document(args.path)
    p = _load_smap_like(doc, L)
    L = p.lattice
    if args.scan:
        pairs = scan_asymmetric_pairs(p)
        report.values["asymmetric_pairs"] = [
            [L.label(a), L.label(b)] for a, b in pairs
        ]
    else:
        blab, alab = args.pair
        b, a = L.id_of(blab), L.id_of(alab)
        report.values["independent"] = is_independent_product(p, b, a)
        report.values["independent_reversed"] = is_independent_product(p, a, b)
        report.values[f"p({blab},{alab})"] = fmt_value(p(b, a))
        report.values[f"p({alab},{alab})*p({blab},{blab})"] = fmt_value(p(a, a) * p(b, b))
    return report, EXIT_OK


def cmd_condexp(args, fmt_value) -> tuple[Report, int]:
    report = Report()
    L = _load_context_lattice(args)
    fdoc = files.load_document(args.f)
    f = files.load_conditional_state(fdoc, L)
    L = f.lattice
    x = files.load_observable(files.load_document(args.observable), L)
    B = L.boolean_subalgebra(L.id_of(args.atom))
    z = conditional_expectation(f, x, B)
    report.values["z"] = [
        [fmt_value(v), L.label(z.assignment[v])] for v in z.spectrum
    ]
    for b in sorted(B.members):
        if b == L.zero or b not in f.conditions:
            continue
        lhs, rhs = expectation(f, x, b), expectation(f, z, b)
        report.check(
            f"condexp:f(x,{L.label(b)})=f(z,{L.label(b)})",
            lhs == rhs,
            f"{fmt_value(lhs)} vs {fmt_value(rhs)}",
        )
    return report, EXIT_OK if report.status == "ok" else EXIT_INVALID


def cmd_gen(args, fmt_value) -> tuple[Report, int]:
    report = Report()
    emit = [item.strip() for item in args.emit.split(",") if item.strip()]
    os.makedirs(args.outdir, exist_ok=True)
    stem = args.kind if args.kind in ("o6", "chain2") else f"{args.kind}{args.n}"
    lattice_name = f"{stem}_lattice.json"

    def _path(suffix):
        return os.path.join(args.outdir, f"{stem}_{suffix}.json")

    raw = raw_structure(args.kind, args.n)
    raw["type"] = "lattice"
    need_lattice = args.kind == "o6" or "lattice" in emit
    if need_lattice:
        files.write_document(os.path.join(args.outdir, lattice_name), raw)
        report.values["lattice"] = os.path.join(args.outdir, lattice_name)
    if args.kind == "o6":
        if set(emit) - {"lattice"}:
            raise SchemaError("o6 fails validation; only its lattice can be emitted")
        return report, EXIT_OK

    L = build_catalog(args.kind, args.n)
    if "conditional_state" in emit or "smap" in emit:
        f = random_conditional_state(L, args.seed)
        if "conditional_state" in emit:
            files.write_document(
                _path("conditional_state"),
                files.conditional_state_document(f, lattice_name),
            )
            report.values["conditional_state"] = _path("conditional_state")
        if "smap" in emit:
            p = conditional_to_smap(f)
            files.write_document(_path("smap"), files.smap_document(p, lattice_name))
            report.values["smap"] = _path("smap")
    return report, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omlprob",
        description="Finite quantum-logic event structures: validate files, "
        "convert between s-maps and conditional states, query independence "
        "and solve conditional expectations.",
    )
    # Output flags are accepted both before and after the subcommand; the
    # SUPPRESS default keeps the subparser from clobbering a value given
    # up front.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "json"),
        default=argparse.SUPPRESS,
        help="report format (default: text)",
    )
    common.add_argument(
        "--decimal",
        action="store_true",
        default=argparse.SUPPRESS,
        help="print rationals as decimals",
    )
    common.add_argument(
        "--approx",
        action="store_true",
        default=argparse.SUPPRESS,
        help="allow approximate decimals for non-terminating rationals",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--decimal", action="store_true")
    parser.add_argument("--approx", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check files against their axioms", parents=[common])
    sp.add_argument("paths", nargs="+")
    sp.add_argument("--lattice", help="lattice file for table documents")
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("convert", help="s-map <-> conditional state", parents=[common])
    sp.add_argument("path")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--lattice")
    sp.set_defaults(fn=cmd_convert)

    sp = sub.add_parser("indep", help="product-form independence queries", parents=[common])
    sp.add_argument("path", help="s-map (or conditional state) file")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--scan", action="store_true", help="list asymmetric pairs")
    group.add_argument(
        "--pair", nargs=2, metavar=("B", "A"), help="test whether B is independent of A"
    )
    sp.add_argument("--lattice")
    sp.set_defaults(fn=cmd_indep)

    sp = sub.add_parser("condexp", help="conditional expectation onto {0,d,d',1}", parents=[common])
    sp.add_argument("--f", required=True, help="conditional state file")
    sp.add_argument("--observable", required=True, help="observable file")
    sp.add_argument("--atom", required=True, help="generator d of the subalgebra")
    sp.add_argument("--lattice")
    sp.set_defaults(fn=cmd_condexp)

    sp = sub.add_parser("gen", help="emit catalog lattices and random tables", parents=[common])
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument(
        "--emit", default="lattice", help="comma list: lattice,smap,conditional_state"
    )
    sp.add_argument("-o", "--outdir", default=".")
    sp.set_defaults(fn=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    def fmt_value(q):
        return format_rational(q, decimal=args.decimal, approx=args.approx)

    try:
        report, code = args.fn(args, fmt_value)
    except (ParseError, SchemaError, LatticeInputError, OSError) as exc:
        print(
            Report(status="error", values={"error": str(exc)}).render(args.format),
            file=sys.stderr,
        )
        return EXIT_IO
    except OmlError as exc:
        report = Report(status="error")
        report.check(type(exc).__name__, False, str(exc))
        print(report.render(args.format))
        return EXIT_INVALID
    print(report.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
