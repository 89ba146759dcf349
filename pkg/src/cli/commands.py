"""
Command-line front end: exact computations, table emitters and the Main Theorem grid run.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from ..arith.bernoulli import (
    bernoulli_rational,
    bkchi_over_2k_valuation,
    generalized_bernoulli,
    valuation_table,
)
from ..arith.char import (
    character_text,
    characters,
    parity,
    parse_character,
    primitive_character,
)
from ..arith.formal import mult_by_a_series
from ..config import Settings, load_settings
from ..models.schemas import DirichletCharacter
from ..modular.congruence import max_congruence_search
from ..modular.eisenstein import basis_enumeration, eisenstein_normalized, level_one_basis
from ..theory.cohomology import h1_stabilized
from ..theory.reptheory import predict_max_congruence
from ..verify.grid_runner import MainTheoremVerifier, cells_for, default_grid
from .formatting import (
    describe_ideal,
    ideal_payload,
    series_payload,
    to_csv,
    to_json,
    to_mapping_text,
    to_table,
)

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Flags that parse but do not combine into a runnable command."""


def _character(text: str) -> DirichletCharacter:
    return parse_character(text)


def _int_list(text: str) -> List[int]:
    return [int(chunk) for chunk in text.split(",") if chunk.strip()]


def _emit(
    settings: Settings,
    payload: Dict[str, Any],
    headers: Optional[Sequence[str]] = None,
    rows: Optional[Sequence[Sequence[Any]]] = None,
) -> None:
    """JSON prints the payload; text and csv print the table when one is given."""
    fmt = settings.output_format
    if fmt == "json":
        print(to_json(payload))
    elif headers is not None and rows is not None:
        print(to_csv(headers, rows) if fmt == "csv" else to_table(headers, rows))
    elif fmt == "csv":
        print(to_csv(list(payload), [list(payload.values())]))
    else:
        print(to_mapping_text(payload))


# subcommands


def cmd_chars(args: argparse.Namespace, settings: Settings) -> int:
    found = characters(args.modulus)
    if args.primitive:
        found = [chi for chi in found if chi.is_primitive]
    rows = [
        (character_text(chi), chi.image_order, chi.conductor, parity(chi), chi.is_primitive)
        for chi in found
    ]
    headers = ["character", "order", "conductor", "parity", "primitive"]
    payload = {"modulus": args.modulus, "characters": [dict(zip(headers, r)) for r in rows]}
    _emit(settings, payload, headers, rows)
    return 0


def cmd_bernoulli(args: argparse.Namespace, settings: Settings) -> int:
    if args.moduli is not None:
        if args.p is None or args.weights is None:
            raise UsageError("Table mode needs --p, --moduli and --weights")
        table = valuation_table(args.p, args.moduli, args.weights)
        headers = ["p", "N", "order", "k", "character", "valuation"]
        rows = [(r.p, r.N, r.order, r.k, r.character, r.valuation) for r in table]
        payload = {"rows": [r.model_dump() for r in table]}
        _emit(settings, payload, headers, rows)
        return 0

    if args.k is None:
        raise UsageError("--k is required outside table mode")
    if args.char is None or args.char.modulus == 1:
        value = bernoulli_rational(args.k)
        payload: Dict[str, Any] = {"k": args.k, "value": str(value)}
        if args.p is not None and value:
            payload["valuation"] = bkchi_over_2k_valuation(
                args.k, parse_character("trivial"), args.p
            )
    else:
        chi = primitive_character(args.char)
        payload = {
            "k": args.k,
            "character": character_text(chi),
            "value": str(generalized_bernoulli(args.k, chi).value),
        }
        if args.p is not None:
            payload["valuation"] = bkchi_over_2k_valuation(args.k, chi, args.p)
    _emit(settings, payload)
    return 0


def cmd_eisenstein(args: argparse.Namespace, settings: Settings) -> int:
    Q = args.q_precision or settings.precision_for(args.weight)
    chi = args.char
    if not args.basis:
        series = eisenstein_normalized(args.weight, chi, Q)
        if settings.output_format == "json":
            print(to_json(series_payload(series)))
        else:
            print(series)
        return 0

    level = args.level or chi.conductor
    if level == 1:
        elements = level_one_basis(args.weight, Q)
    else:
        elements = basis_enumeration(args.weight, level, chi, Q)
    if settings.output_format == "json":
        payload = {
            "level": level,
            "basis": [{"label": e.label, **series_payload(e.series)} for e in elements],
        }
        print(to_json(payload))
    else:
        for element in elements:
            print(f"{element.label}: {element.series}")
    return 0


def cmd_congruence(args: argparse.Namespace, settings: Settings) -> int:
    Q = args.q_precision or settings.precision_for(args.weight)
    chi = args.char
    level = args.level or chi.conductor
    if level == 1:
        basis = level_one_basis(args.weight, Q)
    else:
        basis = basis_enumeration(args.weight, level, chi, Q)
    result = max_congruence_search(basis, args.p, M=settings.p_precision)
    payload = {
        **ideal_payload(result.ideal),
        "valuations": list(result.valuations),
        "stabilization_index": result.stabilization_index,
        "confirmed": result.confirmed,
        "trivial_to_precision": result.trivial_to_precision,
        "witness": result.witness,
    }
    if settings.output_format == "json":
        print(to_json(payload))
    else:
        payload.pop("witness")
        _emit(settings, payload)
    if not result.confirmed:
        print(
            f"⚠️  Stabilization index {result.stabilization_index} exceeds Q/2; "
            f"raise --q-precision",
            file=sys.stderr,
        )
    return 0


def cmd_predict(args: argparse.Namespace, settings: Settings) -> int:
    prediction = predict_max_congruence(args.weight, args.char, args.p, settings.p_precision)
    payload = {
        "case": prediction.case_tag,
        **ideal_payload(prediction.ideal),
        "valuations": list(prediction.valuations),
    }
    _emit(settings, payload)
    return 0


def cmd_cohomology(args: argparse.Namespace, settings: Settings) -> int:
    m_max = args.levels or settings.cohomology_m_max
    result = h1_stabilized(args.weight, args.char, args.p, m_max)
    headers = ["level", "invariant_factors", "order"]
    rows = [
        (lv.level, " ".join(str(f) for f in lv.invariant_factors), lv.order)
        for lv in result.levels
    ]
    if settings.output_format == "json":
        payload = {
            "levels": [lv.model_dump() for lv in result.levels],
            "stabilization_level": result.stabilization_level,
            "agrees_with_prediction": result.agrees_with_prediction,
            **ideal_payload(result.ideal),
        }
        print(to_json(payload))
        return 0
    _emit(settings, {}, headers, rows)
    if settings.output_format == "text":
        level = result.stabilization_level
        print(f"H^1 = A/{describe_ideal(result.ideal)} (stable from level {level})")
    return 0


def cmd_formal(args: argparse.Namespace, settings: Settings) -> int:
    series = mult_by_a_series(args.a, args.deg, args.p, args.prec)
    headers = ["j", "coefficient"]
    rows = [(j, c) for j, c in enumerate(series.coefficients, start=1)]
    payload = {
        "a": args.a,
        "p": args.p,
        "modulus": series.modulus,
        "coefficients": list(series.coefficients),
    }
    _emit(settings, payload, headers, rows)
    return 0


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    if args.default_grid:
        cells = default_grid()
        name = args.name or "default_grid"
    else:
        if args.p is None or args.level is None or args.weights is None:
            raise UsageError("Give --p, --level and --weights, or --default-grid")
        cells = cells_for(args.p, args.level, args.char_order, args.weights)
        name = args.name or f"p{args.p}_N{args.level}_order{args.char_order}"
    if not cells:
        raise ValueError("No parity-admissible cells to verify")

    print(f"🧪 Verifying {len(cells)} cells", file=sys.stderr)
    verifier = MainTheoremVerifier(settings, show_progress=settings.output_format != "json")
    report = verifier.run(cells, name)
    if args.save:
        verifier.save(report)

    headers = ["p", "N", "k", "character", "case", "predicted", "status"]
    rows = [
        (
            c.p,
            c.N,
            c.k,
            c.character,
            c.case_tag,
            describe_ideal(c.predicted) if c.predicted is not None else None,
            c.status,
        )
        for c in report.cells
    ]
    # timestamp and duration left out so stdout is reproducible
    payload = report.model_dump(mode="json", exclude={"timestamp", "duration_seconds"})
    _emit(settings, payload, headers, rows)
    return 1 if report.failed else 0


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eiscong", description="Congruences of Eisenstein series and their prediction"
    )
    parser.add_argument(
        "--config", help="Config file (default: $EISCONG_CONFIG or congruence.yaml)"
    )
    parser.add_argument("--format", choices=["json", "text", "csv"], help="Output format")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chars", help="List Dirichlet characters of a modulus")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--primitive", action="store_true", help="Primitive characters only")
    p.set_defaults(handler=cmd_chars)

    p = sub.add_parser("bernoulli", help="Bernoulli numbers and valuation tables")
    p.add_argument("--k", type=int)
    p.add_argument("--char", type=_character, help="'trivial' or N:n:[e1,...]")
    p.add_argument("--p", type=int, help="Also report the valuation of B_{k,chi}/2k")
    p.add_argument("--moduli", type=_int_list, help="Table mode: comma-separated moduli")
    p.add_argument("--weights", type=_int_list, help="Table mode: comma-separated weights")
    p.set_defaults(handler=cmd_bernoulli)

    p = sub.add_parser("eisenstein", help="Normalized Eisenstein series or a basis")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--char", type=_character, required=True)
    p.add_argument("--level", type=int)
    p.add_argument("--q-precision", type=int)
    p.add_argument("--basis", action="store_true", help="Print the whole basis of E_k(N, chi)")
    p.set_defaults(handler=cmd_eisenstein)

    p = sub.add_parser("congruence", help="Maximal congruence found in the q-expansions")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--level", type=int)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--char", type=_character, required=True)
    p.add_argument("--q-precision", type=int)
    p.set_defaults(handler=cmd_congruence)

    p = sub.add_parser("predict", help="Seven-case prediction of the maximal congruence")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--char", type=_character, required=True)
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("cohomology", help="Stabilized H^1 through finite levels")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--char", type=_character, required=True)
    p.add_argument("--levels", type=int, help="Highest finite level m_max")
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("formal", help="Multiplicative formal group")
    formal_sub = p.add_subparsers(dest="formal_command", required=True)
    f = formal_sub.add_parser("mult-by", help="Truncated [a](t) = (1+t)^a - 1")
    f.add_argument("--a", type=int, required=True)
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--prec", type=int, default=12, help="Coefficients mod p^prec")
    f.add_argument("--deg", type=int, default=10, help="Truncation degree")
    f.set_defaults(handler=cmd_formal)

    p = sub.add_parser("verify-main-theorem", help="Compare all four ideals over a grid")
    p.add_argument("--p", type=int)
    p.add_argument("--level", type=int)
    p.add_argument("--char-order", type=int, default=1)
    p.add_argument("--weights", type=_int_list)
    p.add_argument("--default-grid", action="store_true", help="Built-in grid over all cases")
    p.add_argument("--workers", type=int, help="Process pool size (1 runs in-process)")
    p.add_argument("--name", help="Report name")
    p.add_argument("--save", action="store_true", help="Write report.json under reports_dir")
    p.set_defaults(handler=cmd_verify)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and dispatch to a subcommand.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        0 on success, 1 on errors or FAIL cells, 2 on usage errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        settings = load_settings(args.config).with_overrides(
            output_format=args.format, workers=getattr(args, "workers", None)
        )
    except ValidationError as e:
        parser.print_usage(sys.stderr)
        print(f"❌ Error: {e}", file=sys.stderr)
        return 2
    try:
        return args.handler(args, settings)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"❌ Error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.debug("Subcommand %s failed", args.command, exc_info=True)
        print(f"❌ Error: {e}", file=sys.stderr)
        return 1
