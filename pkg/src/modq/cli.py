"""Command-line front end: ``modq <subcommand> [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import groebner
from .errors import BudgetExceeded, ModqError
from .geometry import (DEFAULT_POINT_CAP, AffineVarietyPresentation, count_points, fit_motive_class,
                       mckay_report, singular_locus)
from .invariants import (diagonal_binomials, diagonal_relations, format_binomial, hilbert_basis_diagonal,
                         hilbert_series_check, invariant_dims, minimal_generators, presentation)
from .poly import parse_poly
from .rep import build_representation, structure_predicates
from .structure import (classify_cm, cm_defect, gorenstein_verdict, jordan4_probe, regular_sequence_probe)

SCHEMA = "modq/1"
CONFIG_KEYS = {"degree_bound", "point_cap", "max_pairs", "window"}


class UsageError(ValueError):
    pass


def load_config(path):
    """Read ``key = value`` lines; '#' starts a comment. Values are integers."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{n}: expected one of {sorted(CONFIG_KEYS)} as key=value")
            try:
                out[key] = int(value)
            except ValueError:
                raise UsageError(f"{path}:{n}: {key} must be an integer") from None
    return out


def _setting(args, name, default=None):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return args.config.get(name, default)


def _rep(args):
    if not args.summands:
        raise UsageError("--summands is required")
    return build_representation(args.p, args.char, args.summands)


def _degree_bound(args):
    return _setting(args, "degree_bound")


def _variety(args):
    """Presentation from --input (a presentation dump) or computed from the representation."""
    if args.input:
        with open(args.input) as fh:
            data = json.load(fh)
        return AffineVarietyPresentation.from_json(data), None
    rep = _rep(args)
    pres = presentation(rep, _degree_bound(args))
    return AffineVarietyPresentation.from_presentation(pres), rep


# ---------- subcommands ----------

def cmd_invariants(args):
    rep = _rep(args)
    gens = minimal_generators(rep, _degree_bound(args))
    out = {"representation": rep.to_json(), "predicates": structure_predicates(rep).to_json()}
    out.update(gens.to_json())
    out["dims"] = invariant_dims(rep, gens.degree_bound)
    return out


def cmd_presentation(args):
    rep = _rep(args)
    pres = presentation(rep, _degree_bound(args))
    out = {"representation": rep.to_json()}
    out.update(pres.to_json())
    if args.hilbert:
        out["hilbert"] = hilbert_series_check(pres, rep, _degree_bound(args)).to_json()
    return out


def cmd_classify(args):
    res = classify_cm(args.p, args.char, args.faithful, args.dim)
    return res.to_json()


def cmd_gorenstein(args):
    rep = _rep(args)
    pres = None if args.no_presentation else presentation(rep, _degree_bound(args))
    v = gorenstein_verdict(rep, pres, _degree_bound(args))
    out = {"representation": rep.to_json(), "cm_defect": cm_defect(rep),
           "predicates": structure_predicates(rep).to_json()}
    out.update(v.to_json())
    if pres is not None:
        out["presentation_class"] = pres.presentation_class
    return out


def cmd_hilbert_basis(args):
    hb = hilbert_basis_diagonal(args.p, args.i, args.j)
    diagonal_relations(hb)  # asserts that every relation vanishes on the monomials
    out = hb.to_json()
    out["degrees"] = hb.degrees
    out["relations"] = [format_binomial(a, b) for a, b in diagonal_binomials(hb)]
    return out


def cmd_singular_locus(args):
    var, _ = _variety(args)
    loc = singular_locus(var, args.q, args.codim, _setting(args, "point_cap", DEFAULT_POINT_CAP))
    field = None
    if args.q is not None:
        from .field import field_of_size
        field = field_of_size(args.q)
    out = {"variety": var.to_json()}
    out.update(loc.to_json(field))
    return out


def cmd_count_points(args):
    var, _ = _variety(args)
    cap = _setting(args, "point_cap", DEFAULT_POINT_CAP)
    counts = {}
    try:
        for q in args.q:
            counts[q] = count_points(var, q, cap)
    except BudgetExceeded as exc:
        exc.partial = {"counts": {str(q): n for q, n in counts.items()}}
        raise
    out = {"variety": var.to_json(), "counts": {str(q): n for q, n in counts.items()}}
    if args.fit:
        out["class"] = fit_motive_class(counts).to_json()
    return out


def cmd_mckay(args):
    return mckay_report(args.p, tuple(args.q), args.k).to_json()


def cmd_probe(args):
    window = _setting(args, "window")
    if not args.summands:
        report = jordan4_probe(args.p, args.sign, window)
        names = ["x1", "x2", "x3", "x4"]
        return {"case": f"V4{args.sign}", "p": args.p, "report": report.to_json(names)}
    if not args.elements:
        raise UsageError("--elements is required together with --summands")
    rep = _rep(args)
    elements = [parse_poly(s, rep.ring) for s in args.elements.split(";") if s.strip()]
    report = regular_sequence_probe(elements, rep, window)
    return {"representation": rep.to_json(), "elements": [str(e) for e in elements],
            "report": report.to_json(list(rep.ring.names))}


# ---------- rendering ----------

def render_table(data, indent=0):
    """Plain-text view of a report: one ``key: value`` line per scalar, nested blocks indented."""
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and value and not _flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(render_table(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)) and item and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(render_table(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(data)}")
    return lines


def _flat(value):
    if isinstance(value, dict):
        return False
    return all(not isinstance(v, (dict, list)) for v in value)


def _scalar(value):
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{}"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit(report, as_json, stream):
    if as_json:
        stream.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        stream.write("\n".join(render_table(report)) + "\n")


# ---------- argument parsing ----------

def _rep_options(sp, summands_required=True):
    sp.add_argument("-p", type=int, required=True, help="odd prime or 2; the group is C_2p")
    sp.add_argument("-c", "--char", type=int, default=None,
                    help="field characteristic (default: p)")
    sp.add_argument("-s", "--summands", required=summands_required,
                    help='summand list, e.g. "V3", "V2+,V2-,V1-", "W1"')
    sp.add_argument("-D", "--degree-bound", dest="degree_bound", type=int, default=None,
                    help="search degree bound (default 2|G|)")


def _variety_options(sp):
    sp.add_argument("-p", type=int, default=None)
    sp.add_argument("-c", "--char", type=int, default=None)
    sp.add_argument("-s", "--summands", default=None)
    sp.add_argument("-D", "--degree-bound", dest="degree_bound", type=int, default=None)
    sp.add_argument("--input", default=None, help="presentation JSON written by 'modq presentation --json'")
    sp.add_argument("--point-cap", dest="point_cap", type=int, default=None,
                    help="maximal q^dim to enumerate")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    common.add_argument("--config", default=None, help="key=value file with default limits")
    common.add_argument("--max-pairs", dest="max_pairs", type=int, default=None,
                        help="S-pair budget for Groebner computations")

    parser = argparse.ArgumentParser(prog="modq", description="Modular invariant rings of C_2p.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("invariants", parents=[common], help="minimal generators of the invariant ring")
    _rep_options(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("presentation", parents=[common], help="generators and relations")
    _rep_options(sp)
    sp.add_argument("--hilbert", action="store_true", help="add the Hilbert series consistency check")
    sp.set_defaults(func=cmd_presentation)

    sp = sub.add_parser("classify", parents=[common], help="Cohen-Macaulay classification")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-c", "--char", type=int, default=None)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--faithful", dest="faithful", action="store_true", default=None)
    group.add_argument("--non-faithful", dest="faithful", action="store_false")
    sp.add_argument("--dim", type=int, default=None, help="restrict to this dimension")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("gorenstein", parents=[common], help="Gorenstein verdict")
    _rep_options(sp)
    sp.add_argument("--no-presentation", action="store_true",
                    help="skip the presentation (rules that need it are not tried)")
    sp.set_defaults(func=cmd_gorenstein)

    sp = sub.add_parser("hilbert-basis", parents=[common], help="diagonal C_p action with weights (i, j)")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-j", type=int, required=True)
    sp.set_defaults(func=cmd_hilbert_basis)

    sp = sub.add_parser("singular-locus", parents=[common], help="Jacobian ideal and its F_q points")
    _variety_options(sp)
    sp.add_argument("-q", type=int, default=None, help="field size for the point list")
    sp.add_argument("--codim", type=int, default=None)
    sp.set_defaults(func=cmd_singular_locus)

    sp = sub.add_parser("count-points", parents=[common], help="F_q point counts")
    _variety_options(sp)
    sp.add_argument("-q", type=int, nargs="+", required=True)
    sp.add_argument("--fit", action="store_true", help="fit a polynomial class in L")
    sp.set_defaults(func=cmd_count_points)

    sp = sub.add_parser("mckay", parents=[common], help="Euler characteristic check for W_k quotients")
    sp.add_argument("-p", type=int, default=3)
    sp.add_argument("-k", type=int, default=1)
    sp.add_argument("-q", type=int, nargs="+", default=[2, 4, 8, 16])
    sp.set_defaults(func=cmd_mckay)

    sp = sub.add_parser("probe", parents=[common], help="regular-sequence probe")
    sp.add_argument("-p", type=int, default=5)
    sp.add_argument("-c", "--char", type=int, default=None)
    sp.add_argument("--sign", choices=["+", "-"], default="+", help="V4+ or the tilde V4- variant")
    sp.add_argument("-s", "--summands", default=None)
    sp.add_argument("--elements", default=None, help="';'-separated invariants to test")
    sp.add_argument("--window", type=int, default=None, help="largest witness degree searched")
    sp.set_defaults(func=cmd_probe)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    old_pairs = groebner.DEFAULT_MAX_PAIRS
    try:
        args.config = load_config(args.config) if args.config else {}
        if getattr(args, "p", None) is not None and getattr(args, "char", "absent") is None:
            args.char = args.p
        pairs = _setting(args, "max_pairs")
        if pairs is not None:
            groebner.set_max_pairs(pairs)
        report = args.func(args)
    except BudgetExceeded as exc:
        stderr.write(f"modq: budget exceeded: {exc}\n")
        emit({"schema": SCHEMA, "command": args.command, "error": "budget-exceeded",
              "message": str(exc), "partial": exc.partial}, True, stdout)
        return 3
    except (ModqError, ValueError, OSError) as exc:
        stderr.write(f"modq {args.command}: {type(exc).__name__}: {exc}\n")
        return 2
    finally:
        groebner.set_max_pairs(old_pairs)
    report = {"schema": SCHEMA, "command": args.command, **report}
    emit(report, args.json, stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
