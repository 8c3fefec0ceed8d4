"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 ``similar`` found the
matrices not similar, 4 ``audit`` found an entry matching neither printed
form, 5 ``classify`` found the operator not CNOT-like.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import catalog
from .dynamics import HamiltonianParams, StateVector, apply_operator, hamiltonian_unitary
from .errors import CatalogLookupError, NmrCnotError, NotCnotLike, ParseError
from .linalg import EIGEN_TOL, EXACT_TOL, Operator4, format_complex
from .similarity import check_similarity
from .synthesis import (
    AxisConstraint,
    classify_cnot_like,
    enumerate_family,
    phase_classes,
    rejection_reasons,
    select_realizable,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_SIMILAR = 3
EXIT_AUDIT_FAILED = 4
EXIT_NOT_CNOT = 5


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    stdout: str
    stderr: str = ""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def print_help(self, file=None):
        raise _HelpRequested(self.format_help())


class _HelpRequested(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _small(x: float) -> str:
    return "0" if x < 1e-15 else f"{x:.1e}"


def load_operator(ref: str) -> Operator4:
    """Resolve a catalog id or a path to a matrix JSON file."""
    try:
        return catalog.lookup(ref).declared_matrix
    except CatalogLookupError:
        pass
    path = Path(ref)
    if not path.is_file():
        raise CatalogLookupError(f"{ref!r} is neither a catalog id nor a matrix file")
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{ref}: invalid JSON ({exc.msg})") from None
    return Operator4.from_json(obj)


def load_state(text: str) -> StateVector:
    """Parse a state given inline as JSON or as a path to a JSON file."""
    stripped = text.strip()
    if not stripped.startswith("["):
        path = Path(text)
        if not path.is_file():
            raise ParseError(f"{text!r} is neither inline state JSON nor a file")
        stripped = path.read_text()
    try:
        obj = json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid state JSON ({exc.msg})") from None
    return StateVector.from_json(obj)


def _matrix_table(m: Operator4) -> str:
    cells = [[format_complex(z) for z in row] for row in m.matrix]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


# -- subcommands --------------------------------------------------------------


def _cmd_audit(args) -> CommandResult:
    records = catalog.audit_catalog(args.tol)
    code = EXIT_OK if all(r.any_match for r in records) else EXIT_AUDIT_FAILED
    if args.json:
        return CommandResult(code, _dump([r.to_json() for r in records]))
    return CommandResult(code, catalog.format_audit_table(records) + "\n")


def _catalog_name(m: Operator4, tol: float) -> str | None:
    for e in catalog.builtin_catalog():
        if e.declared_matrix.isclose(m, tol):
            return e.id
    return None


def _cmd_enumerate(args) -> CommandResult:
    family = enumerate_family()
    if args.json:
        out = {
            "family": [
                {**t.to_json(), "catalog_id": _catalog_name(m, args.tol), "matrix": m.to_json()}
                for t, m in family
            ]
        }
        if args.phase_classes:
            out["phase_classes"] = [[t.label() for t in cls] for cls in phase_classes(family, args.tol)]
        return CommandResult(EXIT_OK, _dump(out))

    lines = [f"{'template':<12} {'catalog':<7} sequence (operator order)"]
    for t, m in family:
        name = _catalog_name(m, args.tol) or "-"
        lines.append(f"{t.label():<12} {name:<7} {t.sequence().to_text()}")
    lines.append(f"\n{len(family)} distinct matrices")
    if args.phase_classes:
        classes = phase_classes(family, args.tol)
        lines.append(f"{len(classes)} global-phase classes")
        for k, cls in enumerate(classes, 1):
            lines.append(f"  class {k}: {', '.join(t.label() for t in cls)}")
    return CommandResult(EXIT_OK, "\n".join(lines) + "\n")


def _cmd_similar(args) -> CommandResult:
    a, b = load_operator(args.a), load_operator(args.b)
    report = check_similarity(a, b, args.tol, check_inverses=not args.skip_inverses)
    code = EXIT_OK if report.similar else EXIT_NOT_SIMILAR
    if args.json:
        return CommandResult(code, _dump({"a": args.a, "b": args.b, **report.to_json()}))
    lines = [f"A = {args.a}, B = {args.b}, tol = {args.tol:g}", f" #  {'property':<20} pass  residual"]
    for p in report.properties:
        flag = "skip" if p.passed is None else ("yes" if p.passed else "NO")
        res = "-" if p.residual is None else _small(p.residual)
        lines.append(f" {p.property}  {p.name:<20} {flag:<5} {res}")
    lines.append(f"trace A = {format_complex(a.trace())}, trace B = {format_complex(b.trace())}")
    note = report[3].note
    if note and report[3].passed is not None:
        lines.append(f"property 3 is {note}")
    lines.append(f"verdict: {report.verdict}")
    return CommandResult(code, "\n".join(lines) + "\n")


def _cmd_classify(args) -> CommandResult:
    m = load_operator(args.operator)
    try:
        cls = classify_cnot_like(m, args.tol)
    except NotCnotLike as exc:
        if args.json:
            return CommandResult(EXIT_NOT_CNOT, _dump({"operator": args.operator, "cnot_like": False, "reason": str(exc)}))
        return CommandResult(EXIT_NOT_CNOT, f"{args.operator}: not CNOT-like ({exc})\n")
    if args.json:
        return CommandResult(EXIT_OK, _dump({"operator": args.operator, "cnot_like": True, **cls.to_json()}))
    phases = ", ".join(format_complex(z) for z in cls.basis_phases)
    text = (
        f"{args.operator}: control spin {cls.control_spin} ({cls.control_polarity}), "
        f"target spin {cls.target_spin}\nrow phases: ({phases})\n"
    )
    return CommandResult(EXIT_OK, text)


def _cmd_apply(args) -> CommandResult:
    m = load_operator(args.operator)
    psi = load_state(args.state)
    out = apply_operator(m, psi)
    if args.json:
        return CommandResult(EXIT_OK, _dump(out.to_json()))
    labels = ("|uu>", "|ud>", "|du>", "|dd>")
    lines = [f"{lab}  {format_complex(z, 12)}" for lab, z in zip(labels, out)]
    return CommandResult(EXIT_OK, "\n".join(lines) + "\n")


def _cmd_evolve(args) -> CommandResult:
    params = HamiltonianParams(args.omega1, args.omega2, args.omega12)
    u = hamiltonian_unitary(params, args.t)
    if args.state is not None:
        out = apply_operator(u, load_state(args.state))
        if args.json:
            return CommandResult(EXIT_OK, _dump({"unitary": u.to_json(), "state": out.to_json()}))
        return CommandResult(EXIT_OK, _matrix_table(u) + "\nstate: " + ", ".join(format_complex(z, 12) for z in out) + "\n")
    if args.json:
        return CommandResult(EXIT_OK, _dump(u.to_json()))
    return CommandResult(EXIT_OK, _matrix_table(u) + "\n")


def _axes(text: str) -> frozenset[str]:
    text = text.strip().lower()
    if text in ("", "none", "-"):
        return frozenset()
    axes = frozenset(a.strip() for a in text.split(","))
    if not axes <= {"x", "y", "z"}:
        raise argparse.ArgumentTypeError(f"axes must be drawn from x,y,z; got {text!r}")
    return axes


def _yes_no(text: str) -> bool:
    t = text.strip().lower()
    if t in ("yes", "y", "true", "1"):
        return True
    if t in ("no", "n", "false", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected yes or no, got {text!r}")


def _cmd_select(args) -> CommandResult:
    constraint = AxisConstraint(args.spin1, args.spin2, args.coupling)
    chosen = select_realizable(constraint)
    if args.json:
        return CommandResult(
            EXIT_OK,
            _dump(
                {
                    "constraint": {
                        "spin1": sorted(constraint.spin1),
                        "spin2": sorted(constraint.spin2),
                        "coupling": constraint.coupling_available,
                    },
                    "templates": [
                        {**t.to_json(), "catalog_id": _catalog_name(t.unitary(), EXACT_TOL)} for t in chosen
                    ],
                }
            ),
        )
    if not chosen:
        reasons = sorted({r for rs in rejection_reasons(constraint).values() for r in rs})
        return CommandResult(EXIT_OK, "no realizable template\nreasons: " + "; ".join(reasons) + "\n")
    lines = [f"{len(chosen)} realizable template(s)"]
    for t in chosen:
        name = _catalog_name(t.unitary(), EXACT_TOL) or "-"
        lines.append(f"{t.label():<12} {name:<7} {t.sequence().to_text()}")
    return CommandResult(EXIT_OK, "\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nmrcnot", description="Compile, audit and compare NMR CNOT pulse sequences.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, tol):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--tol", type=float, default=tol, help=f"comparison tolerance (default {tol:g})")

    p = sub.add_parser("audit", help="evaluate both printed forms of every catalog entry")
    common(p, EXACT_TOL)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("enumerate", help="list the 16 CNOT-family sequences")
    common(p, EXACT_TOL)
    p.add_argument("--phase-classes", action="store_true", help="also group by global phase")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("similar", help="check the six similarity properties for two matrices")
    p.add_argument("a", help="catalog id or matrix JSON file")
    p.add_argument("b", help="catalog id or matrix JSON file")
    p.add_argument("--skip-inverses", action="store_true", help="do not evaluate property 3")
    common(p, EIGEN_TOL)
    p.set_defaults(func=_cmd_similar)

    p = sub.add_parser("classify", help="identify control and target of a CNOT-like matrix")
    p.add_argument("operator", help="catalog id or matrix JSON file")
    common(p, EIGEN_TOL)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("apply", help="apply an operator to a two-spin state")
    p.add_argument("operator", help="catalog id or matrix JSON file")
    p.add_argument("state", help="state as JSON [[re,im] x4] or a path to such a file")
    common(p, EXACT_TOL)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("evolve", help="free evolution under the two-spin Hamiltonian")
    p.add_argument("--omega1", type=float, default=0.0)
    p.add_argument("--omega2", type=float, default=0.0)
    p.add_argument("--omega12", type=float, default=0.0)
    p.add_argument("--t", type=float, required=True, help="evolution time in seconds")
    p.add_argument("--state", default=None, help="optional state to evolve")
    common(p, EXACT_TOL)
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("select", help="family sequences an apparatus with limited axes can run")
    p.add_argument("--spin1", type=_axes, default=frozenset("xyz"), help='axes on spin 1, e.g. "x,z" or "none"')
    p.add_argument("--spin2", type=_axes, default=frozenset("xyz"), help="axes on spin 2")
    p.add_argument("--coupling", type=_yes_no, default=True, help="coupling evolution available (yes/no)")
    common(p, EXACT_TOL)
    p.set_defaults(func=_cmd_select)

    return parser


def run_command(argv) -> CommandResult:
    """Run one CLI invocation and capture its output."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("missing command; choose from audit, enumerate, similar, classify, apply, evolve, select")
        return args.func(args)
    except _HelpRequested as exc:
        return CommandResult(EXIT_OK, str(exc))
    except (UsageError, NmrCnotError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        return CommandResult(EXIT_USAGE, "", f"nmrcnot: error: {msg}\n")


def main(argv=None) -> int:
    result = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.exit_code
