"""Command-line surface: check, spectrum, walk, enumerate, classes, export.

Every command is pure input to stdout (or --out file).  Exit codes: 0 on
success, 1 on domain outcomes the user asked to treat as fatal (non-integral
spectra, cross-validation mismatches, --fail-on-no-pst), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

from .groups import (
    AbelianGroup,
    ConnectionSet,
    element_order,
    list_power_classes,
    parse_connection_set,
    parse_element,
    parse_group,
    power_class_key,
)
from .jsonio import dumps
from .pst import CrossValidationError, Verdict, characterize_pst, enumerate_pst_sets
from .spectra import NonIntegralSpectrumError, integral_spectrum
from .walk import (
    AmbiguousTransferError,
    adjacency_matrix,
    detect_pst_numeric,
    transition_amplitude,
)

_PI_LITERAL = re.compile(r"(\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+))?", re.IGNORECASE)


def parse_time_literal(text: str) -> tuple[str, float]:
    """Parse 'pi/2', '3pi/4', '2*pi' or a plain float; returns (label, value).

    Rational multiples of pi stay symbolic in the label and are converted to a
    float only here, at the last moment.
    """
    stripped = text.strip().lower()
    match = _PI_LITERAL.fullmatch(stripped)
    if match:
        numerator = int(match.group(1)) if match.group(1) else 1
        denominator = int(match.group(2)) if match.group(2) else 1
        if numerator < 1 or denominator < 1:
            raise ValueError(f"bad time literal {text!r}")
        label = ("pi" if numerator == 1 else f"{numerator}pi") + (
            "" if denominator == 1 else f"/{denominator}"
        )
        return label, numerator * math.pi / denominator
    try:
        value = float(stripped)
    except ValueError:
        raise ValueError(
            f"bad time literal {text!r}; use a float or a pi fraction like pi/2"
        ) from None
    return f"{value:.17g}", value


def _load_connection_set(group: AbelianGroup, text: str) -> ConnectionSet:
    """Inline set literal, or @file pointing at a JSON array of coordinate tuples."""
    if text.startswith("@"):
        payload = json.loads(Path(text[1:]).read_text(encoding="utf-8"))
        if isinstance(payload, dict):
            payload = payload.get("set", payload.get("elements"))
        if not isinstance(payload, list):
            raise ValueError(
                "connection-set file must hold a JSON array of coordinate tuples "
                '(or an object with a "set" key)'
            )
        elements = [
            group.element(entry if isinstance(entry, list) else [entry]) for entry in payload
        ]
        return ConnectionSet.from_elements(group, elements)
    return parse_connection_set(group, text)


def _coords_list(connection_set: ConnectionSet) -> list[list[int]]:
    return [list(g.coords) for g in connection_set]


def _emit(document, args) -> None:
    text = document if isinstance(document, str) else dumps(document) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_check(args) -> int:
    group = parse_group(args.group)
    cset = _load_connection_set(group, args.connection_set)
    report = characterize_pst(group, cset)
    document = {
        "group": str(group),
        "connection_set": _coords_list(cset),
        "loops_allowed": cset.loops_allowed,
        "report": report.to_json_dict(),
    }
    cross_agrees = None
    if args.cross_validate:
        detection = detect_pst_numeric(group, cset, math.pi / 2, args.tol)
        fired = detection is not None
        if report.verdict is not Verdict.OUT_OF_SCOPE:
            cross_agrees = fired == (report.verdict is Verdict.PST)
            if fired and cross_agrees and report.pair is not None:
                cross_agrees = detection.target == report.pair[1]
        document["cross_validation"] = {
            "time": "pi/2",
            "fired": fired,
            "target": list(detection.target.coords) if fired else None,
            "phase": [detection.phase.real, detection.phase.imag] if fired else None,
            "agrees": cross_agrees,
        }
    _emit(document, args)
    if cross_agrees is False:
        return 1
    if args.fail_on_no_pst and report.verdict is not Verdict.PST:
        return 1
    return 0


def _cmd_spectrum(args) -> int:
    group = parse_group(args.group)
    cset = _load_connection_set(group, args.connection_set)
    spectrum = integral_spectrum(group, cset, tol=args.tol)
    document = {
        "group": str(group),
        "connection_set": _coords_list(cset),
        "spectrum": spectrum.to_json_dict(),
    }
    _emit(document, args)
    return 0


def _cmd_walk(args) -> int:
    group = parse_group(args.group)
    cset = _load_connection_set(group, args.connection_set)
    label, value = parse_time_literal(args.time)
    source = group.identity if args.source is None else parse_element(group, args.source)
    target = parse_element(group, args.target)
    amplitude = transition_amplitude(group, cset, source, target, value)
    document = {
        "group": str(group),
        "connection_set": _coords_list(cset),
        "time": label,
        "time_value": value,
        "source": list(source.coords),
        "target": list(target.coords),
        "amplitude": {
            "re": amplitude.real,
            "im": amplitude.imag,
            "modulus": abs(amplitude),
        },
    }
    _emit(document, args)
    return 0


def _cmd_enumerate(args) -> int:
    group = parse_group(args.group)
    cross = args.cross_validate
    if cross is None:
        cross = group.order <= 128
    sets = enumerate_pst_sets(group, cross, detect_tol=args.tol)
    entries = [
        {
            "connection_set": _coords_list(cset),
            "report": characterize_pst(group, cset).to_json_dict(),
        }
        for cset in sets
    ]
    document = {
        "group": str(group),
        "cross_validate": cross,
        "count": len(entries),
        "sets": entries,
    }
    _emit(document, args)
    return 0


def _cmd_classes(args) -> int:
    group = parse_group(args.group)
    classes = list_power_classes(group)
    document = {
        "group": str(group),
        "count": len(classes),
        "classes": [
            {
                "key": list(power_class_key(cls)),
                "member_order": element_order(group, next(iter(cls))),
                "size": len(cls),
                "elements": sorted([list(g.coords) for g in cls]),
            }
            for cls in classes
        ],
    }
    _emit(document, args)
    return 0


def _edges(group: AbelianGroup, cset: ConnectionSet) -> list[tuple[int, int]]:
    adjacency = adjacency_matrix(group, cset)
    order = group.order
    return [(g, h) for g in range(order) for h in range(g + 1, order) if adjacency[g, h]]


def _cmd_export(args) -> int:
    group = parse_group(args.group)
    cset = _load_connection_set(group, args.connection_set)
    if args.format == "adjacency":
        adjacency = adjacency_matrix(group, cset)
        rows = [" ".join(str(int(x)) for x in row) for row in adjacency]
        _emit("\n".join(rows) + "\n", args)
        return 0
    vertices = list(group.elements())
    edges = _edges(group, cset)
    if args.format == "dot":
        lines = ["graph cayley {"]
        lines.extend(f'  "{vertices[g]}" -- "{vertices[h]}";' for g, h in edges)
        lines.append("}")
        _emit("\n".join(lines) + "\n", args)
        return 0
    document = {
        "group": str(group),
        "set": _coords_list(cset),
        "edges": [[list(vertices[g].coords), list(vertices[h].coords)] for g, h in edges],
    }
    _emit(document, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleypst",
        description=(
            "Perfect state transfer on Cayley graphs of finite abelian groups: "
            "exact structural checks, character spectra, and quantum-walk numerics."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def group_arg(p):
        p.add_argument("-g", "--group", required=True, help="group, e.g. Z4xZ3xZ3")

    def set_arg(p):
        p.add_argument(
            "-c",
            "--connection-set",
            required=True,
            help="set literal like '{(1,0),(3,0)}' or @file.json",
        )

    def out_arg(p):
        p.add_argument("--out", help="write output to this path instead of stdout")

    check = sub.add_parser("check", help="decide perfect state transfer")
    group_arg(check)
    set_arg(check)
    check.add_argument(
        "--cross-validate",
        action="store_true",
        help="also run the numeric row scan at pi/2 and report agreement",
    )
    check.add_argument("--tol", type=float, default=1e-9, help="numeric detection tolerance")
    check.add_argument(
        "--fail-on-no-pst",
        action="store_true",
        help="exit 1 unless the verdict is PST",
    )
    out_arg(check)
    check.set_defaults(handler=_cmd_check)

    spectrum = sub.add_parser("spectrum", help="exact integer spectrum via characters")
    group_arg(spectrum)
    set_arg(spectrum)
    spectrum.add_argument("--tol", type=float, default=1e-7, help="integrality tolerance")
    out_arg(spectrum)
    spectrum.set_defaults(handler=_cmd_spectrum)

    walk = sub.add_parser("walk", help="one transition amplitude at a given time")
    group_arg(walk)
    set_arg(walk)
    walk.add_argument("-t", "--time", required=True, help="walk time: float or pi fraction like pi/2")
    walk.add_argument("--source", default=None, help="source vertex (default: identity)")
    walk.add_argument("--target", required=True, help="target vertex, e.g. (2,0,0)")
    out_arg(walk)
    walk.set_defaults(handler=_cmd_walk)

    enum = sub.add_parser("enumerate", help="census of all transfer-positive class unions")
    group_arg(enum)
    enum.add_argument(
        "--cross-validate",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="check every candidate against the numeric scan (default: on for order <= 128)",
    )
    enum.add_argument("--tol", type=float, default=1e-9, help="numeric detection tolerance")
    out_arg(enum)
    enum.set_defaults(handler=_cmd_enumerate)

    classes = sub.add_parser("classes", help="list the power classes of a group")
    group_arg(classes)
    out_arg(classes)
    classes.set_defaults(handler=_cmd_classes)

    export = sub.add_parser("export", help="export the Cayley graph")
    group_arg(export)
    set_arg(export)
    export.add_argument(
        "--format",
        choices=("adjacency", "dot", "json"),
        default="json",
        help="output format (default: json)",
    )
    out_arg(export)
    export.set_defaults(handler=_cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except NonIntegralSpectrumError as exc:
        print(f"error: non-integral spectrum: {exc}", file=sys.stderr)
        return 1
    except (AmbiguousTransferError, CrossValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
