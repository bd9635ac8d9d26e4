"""Command-line interface.

Subcommands: classes (list class labels and sizes), pconst / sconst / xi
(structure-constant tables), verify (exhaustive identity sweeps and the
family audit).  Exit codes: 0 success or expected outcome, 1 identity or
audit failure, 2 usage or configuration error, 3 element budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .center_algebra import class_size, s_constant
from .correspondence import (
    FamilySpec,
    parse_family,
    xi_closed_form,
    xi_count_oracle,
)
from .errors import (
    BudgetExceeded,
    GroupTableError,
    InvalidLabel,
    LevelMismatch,
    ParseError,
    UnknownBuiltin,
    WrongBaseGroup,
)
from .finite_group import FiniteGroup, load_group_file
from .partial_algebra import (
    OmegaLabel,
    enumerate_omega_class,
    p_constant,
)
from .suites import SUITE_NAMES, run_suites
from .wreath import ClassLabel, labels_with_alpha_up_to

VERIFY_CHOICES = ("main-lemma", "invert", "phi", "tower", "audit", "all")


def _family_from_args(args: argparse.Namespace) -> FamilySpec:
    group: FiniteGroup | None = None
    if getattr(args, "group_file", None):
        group = load_group_file(args.group_file)
    return parse_family(args.family, group)


def _emit(args: argparse.Namespace, content: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(content)
    else:
        sys.stdout.write(content)


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append(
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        )
    return "\n".join(lines) + "\n"


def _csv(headers: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _json_doc(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def cmd_classes(args: argparse.Namespace) -> int:
    spec = _family_from_args(args)
    F = spec.base
    N = args.level
    budget = args.budget_elements
    full = (1 << N) - 1
    omega_rows = []
    for l in range(N + 1):
        for c in labels_with_alpha_up_to(l, F):
            w = OmegaLabel(l, c)
            size = len(enumerate_omega_class(w, full, F, N, budget))
            omega_rows.append((w, size))
    center_rows = [
        (c, class_size(c, N, F, budget)) for c in labels_with_alpha_up_to(N, F)
    ]
    if args.format == "json":
        payload = {
            "schema": 1,
            "command": "classes",
            "family": spec.name,
            "level": N,
            "omega": [
                {"omega": w.display(F), "l": w.l, "c": w.c.display(F), "size": s}
                for w, s in omega_rows
            ],
            "center": [
                {"c": c.display(F), "l": N, "size": s} for c, s in center_rows
            ],
        }
        _emit(args, _json_doc(payload))
        return 0
    rows = [["omega", w.display(F), str(w.l), str(s)] for w, s in omega_rows]
    rows += [["center", c.display(F), str(N), str(s)] for c, s in center_rows]
    headers = ["kind", "label", "l", "size"]
    if args.format == "csv":
        _emit(args, _csv(headers, rows))
    else:
        head = f"classes  family={spec.name}  level={N}\n"
        _emit(args, head + _table(headers, rows))
    return 0


def cmd_pconst(args: argparse.Namespace) -> int:
    spec = _family_from_args(args)
    F = spec.base
    N = args.level
    budget = args.budget_elements
    w1 = OmegaLabel.parse(args.omega1, F)
    w2 = OmegaLabel.parse(args.omega2, F)
    rows: list[tuple[OmegaLabel, int]] = []
    if args.omega:
        w = OmegaLabel.parse(args.omega, F)
        rows.append((w, p_constant(w1, w2, w, F, budget)))
    else:
        for l in range(max(w1.l, w2.l), min(N, w1.l + w2.l) + 1):
            for c in labels_with_alpha_up_to(l, F):
                v = p_constant(w1, w2, OmegaLabel(l, c), F, budget)
                if v:
                    rows.append((OmegaLabel(l, c), v))
    headers = ["omega1", "omega2", "omega", "P"]
    cells = [
        [w1.display(F), w2.display(F), w.display(F), str(v)] for w, v in rows
    ]
    if args.format == "json":
        payload = {
            "schema": 1,
            "command": "pconst",
            "family": spec.name,
            "level": N,
            "rows": [
                {
                    "omega1": w1.display(F),
                    "omega2": w2.display(F),
                    "omega": w.display(F),
                    "P": v,
                }
                for w, v in rows
            ],
        }
        _emit(args, _json_doc(payload))
    elif args.format == "csv":
        _emit(args, _csv(headers, cells))
    else:
        head = f"pconst  family={spec.name}  level={N}\n"
        _emit(args, head + _table(headers, cells))
    return 0


def cmd_sconst(args: argparse.Namespace) -> int:
    spec = _family_from_args(args)
    F = spec.base
    l = args.l
    budget = args.budget_elements
    c1 = ClassLabel.parse(args.c1, F)
    c2 = ClassLabel.parse(args.c2, F)
    rows: list[tuple[ClassLabel, int]] = []
    if args.c:
        c = ClassLabel.parse(args.c, F)
        rows.append((c, s_constant(c1, c2, c, l, F, budget)))
    else:
        for c in labels_with_alpha_up_to(l, F):
            v = s_constant(c1, c2, c, l, F, budget)
            if v:
                rows.append((c, v))
    headers = ["c1", "c2", "c", "l", "S"]
    cells = [
        [c1.display(F), c2.display(F), c.display(F), str(l), str(v)]
        for c, v in rows
    ]
    if args.format == "json":
        payload = {
            "schema": 1,
            "command": "sconst",
            "family": spec.name,
            "l": l,
            "rows": [
                {
                    "c1": c1.display(F),
                    "c2": c2.display(F),
                    "c": c.display(F),
                    "l": l,
                    "S": v,
                }
                for c, v in rows
            ],
        }
        _emit(args, _json_doc(payload))
    elif args.format == "csv":
        _emit(args, _csv(headers, cells))
    else:
        head = f"sconst  family={spec.name}  l={l}\n"
        _emit(args, head + _table(headers, cells))
    return 0


def cmd_xi(args: argparse.Namespace) -> int:
    spec = _family_from_args(args)
    F = spec.base
    c = ClassLabel.parse(args.cls, F)
    value = xi_closed_form(args.lprime, c, args.l)
    row: dict = {
        "lprime": args.lprime,
        "c": c.display(F),
        "l": args.l,
        "xi": value,
    }
    if args.oracle:
        oracle = xi_count_oracle(
            args.lprime, c, args.l, F, args.budget_elements
        )
        row["oracle"] = oracle
        row["agree"] = oracle == value
    headers = list(row.keys())
    cells = [[str(row[h]) for h in headers]]
    if args.format == "json":
        payload = {"schema": 1, "command": "xi", "family": spec.name, "rows": [row]}
        _emit(args, _json_doc(payload))
    elif args.format == "csv":
        _emit(args, _csv(headers, cells))
    else:
        _emit(args, _table(headers, cells))
    if args.oracle and not row["agree"]:
        return 1
    return 0


def _render_verify_text(result: dict) -> str:
    lines = [f"verify  family={result['family']}  level={result['level']}"]
    for s in result["suites"]:
        if s["suite"] == "audit":
            def mark(flag: bool) -> str:
                return "ok" if flag else "VIOLATION"

            verdict = "PASS" if s["passed"] else "FAIL"
            expected = "FAIL" if s["expected_violation"] else "PASS"
            lines.append(
                f"audit: unit={mark(s['unit_ok'])} closure={mark(s['closure_ok'])} "
                f"fusion={mark(s['fusion_ok'])} -> {verdict} (expected {expected})"
            )
            if s["witness"]:
                lines.append(f"  witness: {s['witness']}")
            for note in s["notes"]:
                lines.append(f"  note: {note}")
        elif s["suite"] == "preflight":
            lines.append(
                f"preflight: seed={s['seed']} level={s['level']} "
                f"checks={s['checks']} {'ok' if s['ok'] else 'FAILED'}"
            )
        else:
            lines.append(
                f"{s['suite']}: checks={s['checks']} failures={s['failures']} "
                f"{'ok' if s['ok'] else 'FAILED'}"
            )
            if s["failures"]:
                shown = 0
                for r in s["records"]:
                    if not r["ok"]:
                        fields = " ".join(
                            f"{k}={r[k]}" for k in r if k != "ok"
                        )
                        lines.append(f"  FAIL {fields}")
                        shown += 1
                        if shown == 5:
                            break
                if s["failures"] > 5:
                    lines.append(f"  ... and {s['failures'] - 5} more")
    if result["skipped"]:
        lines.append(
            "skipped (family admits no class machinery): "
            + ", ".join(result["skipped"])
        )
    lines.append("RESULT: " + ("OK" if result["ok"] else "FAILED"))
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace) -> int:
    spec = _family_from_args(args)
    if spec.kind == "d_type" and args.suite not in ("audit", "all"):
        raise ParseError(
            "family dtype has no class machinery to verify; "
            "only the audit suite (or all) applies"
        )
    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    result = run_suites(
        names,
        spec,
        args.level,
        jobs=args.jobs,
        seed=args.seed,
        budget=args.budget_elements,
    )
    if args.format == "json":
        _emit(args, _json_doc(result))
    else:
        _emit(args, _render_verify_text(result))
    return 0 if result["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="classalg",
        description=(
            "Exact structure constants and identity checks for algebras of "
            "conjugacy classes of partial symmetries."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--family",
        default="sym",
        help="sym | wreath:<builtin> | wreath (with --group-file) | dtype",
    )
    common.add_argument(
        "--group-file", help="JSON file with keys order, mult, names (optional)"
    )
    common.add_argument(
        "--budget-elements",
        type=int,
        default=None,
        help="largest group enumeration allowed (default 10^7 elements)",
    )
    common.add_argument("--out", help="write output to this file instead of stdout")

    def add_format(p: argparse.ArgumentParser, choices=("table", "json", "csv")):
        p.add_argument("--format", choices=choices, default="table")

    p_classes = sub.add_parser(
        "classes", parents=[common], help="list class labels and sizes at a level"
    )
    p_classes.add_argument("--level", type=int, required=True)
    add_format(p_classes)
    p_classes.set_defaults(func=cmd_classes)

    p_pconst = sub.add_parser(
        "pconst", parents=[common],
        help="structure constants of partial-element class sums",
    )
    p_pconst.add_argument("--level", type=int, required=True)
    p_pconst.add_argument("--omega1", required=True, help="label like '2:[2]'")
    p_pconst.add_argument("--omega2", required=True)
    p_pconst.add_argument("--omega", help="single target label (default: expand)")
    add_format(p_pconst)
    p_pconst.set_defaults(func=cmd_pconst)

    p_sconst = sub.add_parser(
        "sconst", parents=[common], help="structure constants of center class sums"
    )
    p_sconst.add_argument("--l", type=int, required=True)
    p_sconst.add_argument("--c1", required=True, help="class label like '[2]'")
    p_sconst.add_argument("--c2", required=True)
    p_sconst.add_argument("--c", help="single target class (default: expand)")
    add_format(p_sconst)
    p_sconst.set_defaults(func=cmd_sconst)

    p_xi = sub.add_parser(
        "xi", parents=[common], help="window-count coefficients xi(l', c; l)"
    )
    p_xi.add_argument("--lprime", type=int, required=True)
    p_xi.add_argument("--class", dest="cls", required=True)
    p_xi.add_argument("--l", type=int, required=True)
    p_xi.add_argument(
        "--oracle", action="store_true",
        help="also count by subset enumeration and compare",
    )
    add_format(p_xi)
    p_xi.set_defaults(func=cmd_xi)

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run exhaustive identity sweeps"
    )
    p_verify.add_argument("suite", choices=VERIFY_CHOICES)
    p_verify.add_argument("--level", type=int, required=True)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--seed", type=int, default=0)
    add_format(p_verify, choices=("table", "json"))
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        ParseError,
        UnknownBuiltin,
        GroupTableError,
        WrongBaseGroup,
        LevelMismatch,
        InvalidLabel,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
