"""Command-line interface.

Exit codes: 0 success, 1 unreadable or malformed input (including fixtures),
2 well-formed input rejected on mathematical grounds or a failed check.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .building import FixtureError, load_fixture, reduction_type
from .errors import DomainError
from .hermitian import FieldParams, embedding_choices
from .lparam import TameParameter, validate
from .packets import PacketDescriptor, PacketMember, enumerate_members
from .tori import elemental_decomposition
from .weyl_signed import conjugacy_classes, parse, to_text

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10 only
    import tomli as tomllib

SCHEMA_VERSION = 1
MAX_WEYL_RANK = 8
EXIT_OK, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class InputError(ValueError):
    pass


def parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InputError(f"{where}: expected a rational string like '1/5', got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL_RE.match(text)
    if not match:
        raise InputError(f"{where}: malformed rational {text!r}")
    num, den = int(match.group(1)), int(match.group(2) or 1)
    if den == 0:
        raise InputError(f"{where}: zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _require_int(data: dict, key: str) -> int:
    if key not in data:
        raise InputError(f"field '{key}': missing")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"field '{key}': expected an integer, got {value!r}")
    return value


def parameter_from_mapping(data: dict) -> tuple[TameParameter, int, dict]:
    """Build (parameter, q, echo) from parsed TOML fields."""
    known = {"n", "q", "omega", "y", "u1"}
    extra = sorted(set(data) - known)
    if extra:
        raise InputError(f"unknown field(s): {', '.join(extra)}")
    n = _require_int(data, "n")
    q = _require_int(data, "q")
    if n < 2:
        raise InputError("field 'n': must be at least 2")
    omega_text = data.get("omega")
    if not isinstance(omega_text, str):
        raise InputError("field 'omega': expected cycle notation as a string")
    try:
        omega = parse(omega_text, n // 2)
    except ValueError as exc:
        raise InputError(f"field 'omega': {exc}") from None
    ys = data.get("y")
    if not isinstance(ys, list):
        raise InputError("field 'y': expected a list of rational strings")
    y = tuple(parse_rational(v, f"field 'y[{i}]'") for i, v in enumerate(ys))
    u1 = data.get("u1", 0)
    if isinstance(u1, bool) or u1 not in (0, 1):
        raise InputError("field 'u1': expected 0 or 1")
    try:
        P = TameParameter(n, omega, y, u1)
    except (ValueError, TypeError) as exc:
        raise InputError(f"parameter: {exc}") from None
    try:
        FieldParams(q)
    except ValueError as exc:
        raise InputError(f"field 'q': {exc}") from None
    echo = {"n": n, "q": q, "omega": omega_text, "y": list(ys)}
    if "u1" in data:
        echo["u1"] = u1
    return P, q, echo


def read_parameter_file(path: str | Path) -> tuple[TameParameter, int, dict]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8 text") from None
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: {exc}") from None
    return parameter_from_mapping(data)


def format_parameter_file(P: TameParameter, q: int) -> str:
    ys = ", ".join(f'"{format_rational(v)}"' for v in P.y)
    lines = [f"n = {P.n}", f"q = {q}", f'omega = "{to_text(P.omega)}"', f"y = [{ys}]"]
    if P.n % 2:
        lines.append(f"u1 = {P.u1}")
    return "\n".join(lines) + "\n"


def _member_json(mem: PacketMember) -> dict:
    red = mem.reduction
    out = {
        "parity": list(mem.choice.parity),
        "u1_class": mem.choice.u1_class,
        "inner_form": mem.inner_form,
        "inner_form_bit": mem.inner_form_bit,
        "space": mem.space,
        "vertex": {"b": list(mem.vertex.b), "gaps": list(mem.vertex.gaps)},
        "reduction": {
            "label": red.label,
            "l": red.l,
            "m_red": red.m_red,
            "orth_split": red.orth_split,
            "stab_component_order": red.stab_component_order,
        },
        "tbar": list(mem.tbar),
        "dl_degree": mem.dl_degree,
        "central_bit": mem.central_bit,
        "constituents": [{"z_value": c.z_value, "selected": c.selected} for c in mem.constituents],
        "label": None if mem.label is None else list(mem.label),
    }
    return out


def packet_json(desc: PacketDescriptor, echo: dict) -> dict:
    cd = desc.character
    return {
        "schema_version": SCHEMA_VERSION,
        "parameter": echo,
        "decomposition": [
            {"s": f.s, "r": f.r, "cycle": list(f.cycle)} for f in desc.decomposition.factors
        ],
        "j": desc.j,
        "size": desc.size,
        "a_phi": list(desc.a_phi),
        "labels_warning": desc.labels_warning,
        "character": None
        if cd is None
        else {"exponents": list(cd.exponents), "moduli": list(cd.moduli), "u1_bit": cd.u1_bit},
        "general_position": desc.general_position,
        "members": [_member_json(m) for m in desc.members],
    }


def packet_report(desc: PacketDescriptor) -> str:
    P = desc.parameter
    lines = [
        f"n = {P.n}, q = {desc.q}, omega = {to_text(P.omega)}, y = ({', '.join(format_rational(v) for v in P.y)})",
        "factors: " + ", ".join(f"s={f.s}" + (f" on {list(f.cycle)}" if f.cycle else "") for f in desc.decomposition.factors),
        f"packet size {desc.size} = 2^{desc.j}; A_phi divisors {list(desc.a_phi)}",
    ]
    if desc.character is not None:
        lines.append(
            f"character exponents {list(desc.character.exponents)} mod {list(desc.character.moduli)}; "
            f"general position: {'yes' if desc.general_position else 'no'}"
        )
    if desc.labels_warning:
        lines.append("warning: |Irr(A_phi)| differs from the member count; labels omitted")
    lines.append("")
    header = f"{'bits':<12}{'inner form':<18}{'space':<16}{'reduction':<16}{'b':<14}{'deg':>10}  central"
    lines.append(header)
    for mem in desc.members:
        bits = "".join(str(b) for b in mem.choice.bits())
        central = "-" if mem.central_bit is None else str(mem.central_bit)
        lines.append(
            f"{bits:<12}{mem.inner_form:<18}{mem.space:<16}{mem.reduction.label:<16}"
            f"{str(list(mem.vertex.b)):<14}{mem.dl_degree:>10}  {central}"
        )
    return "\n".join(lines) + "\n"


def _emit(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_validate(args: argparse.Namespace) -> int:
    P, q, echo = read_parameter_file(args.file)
    rep = validate(P, q)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "parameter": echo,
            "tame": rep.tame,
            "discrete": rep.discrete,
            "regular": rep.regular,
            "in_alcove": rep.in_alcove,
            "frobenius_compatible": rep.frobenius_compatible,
            "diagnostics": list(rep.diagnostics),
        }
    )
    return EXIT_OK if rep.ok else EXIT_DOMAIN


def cmd_packet(args: argparse.Namespace) -> int:
    P, q, echo = read_parameter_file(args.file)
    desc = enumerate_members(P, q)
    if args.report:
        sys.stdout.write(packet_report(desc))
    else:
        _emit(packet_json(desc, echo))
    return EXIT_OK


def cmd_weyl(args: argparse.Namespace) -> int:
    m = args.m
    if m < 1 or m > MAX_WEYL_RANK:
        raise DomainError(f"rank must be between 1 and {MAX_WEYL_RANK}, got {m}")
    classes = conjugacy_classes(m)
    if args.elliptic:
        classes = [c for c in classes if c.elliptic]
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "m": m,
            "group_order": sum(c.size for c in conjugacy_classes(m)),
            "count": len(classes),
            "classes": [
                {
                    "mu": list(c.cycle_type.mu),
                    "nu": list(c.cycle_type.nu),
                    "size": c.size,
                    "elliptic": c.elliptic,
                    "representative": to_text(c.representative),
                }
                for c in classes
            ],
        }
    )
    return EXIT_OK


def run_check(fixtures: str | Path | None, n_min: int, n_max: int) -> dict:
    """Compare every embedding pattern for n in range against the tables."""
    table = load_fixture(fixtures)
    rows = []
    totals = {"pass": 0, "fail": 0, "flagged": 0, "flagged_in_table": 0}
    for n in range(max(n_min, 2), n_max + 1):
        counts = {"pass": 0, "fail": 0, "flagged": 0, "flagged_in_table": 0}
        failures = []
        for cls in conjugacy_classes(n // 2):
            if not cls.elliptic:
                continue
            dec = elemental_decomposition(n, cls.representative)
            for choice in embedding_choices(dec):
                red = reduction_type(dec, choice, n)
                key = (n, True if n % 2 else red.orth_split)
                if key not in table:
                    raise FixtureError(f"fixture has no table for n={n}")
                present = red.key in {t.key for t in table[key]}
                if red.m_red == 2:
                    status = "flagged"
                    counts["flagged_in_table"] += present
                else:
                    status = "pass" if present else "fail"
                counts[status] += 1
                if status == "fail":
                    failures.append({"nu": list(cls.cycle_type.nu), "bits": list(choice.bits()), "reduction": red.label})
        for k in totals:
            totals[k] += counts[k]
        rows.append({"n": n, **counts, "failures": failures})
    return {"schema_version": SCHEMA_VERSION, "range": [n_min, n_max], "totals": totals, "rows": rows}


def cmd_check(args: argparse.Namespace) -> int:
    summary = run_check(args.fixtures, args.n_min, args.n_max)
    if args.json:
        _emit(summary)
    else:
        for row in summary["rows"]:
            print(
                f"n={row['n']}: pass {row['pass']}, fail {row['fail']}, "
                f"flagged {row['flagged']} ({row['flagged_in_table']} in table)"
            )
            for f in row["failures"]:
                print(f"  FAIL nu={f['nu']} bits={f['bits']} -> {f['reduction']}")
        t = summary["totals"]
        print(
            f"total: pass {t['pass']}, fail {t['fail']}, "
            f"flagged {t['flagged']} ({t['flagged_in_table']} in table)"
        )
    return EXIT_DOMAIN if summary["totals"]["fail"] else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors count as input errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="upackets", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a parameter file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("packet", help="enumerate the packet of a parameter file")
    p.add_argument("file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--report", action="store_true", help="human-readable table")
    p.set_defaults(func=cmd_packet)

    p = sub.add_parser("weyl", help="conjugacy classes of the signed permutation group")
    p.add_argument("m", type=int)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--classes", action="store_true", help="all classes (default)")
    which.add_argument("--elliptic", action="store_true", help="only classes without positive cycles")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("check", help="compare computed reductions with the tabulated ones")
    p.add_argument("--fixtures", default=None, help="directory or file with the reduction table")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FixtureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
