"""Command line front end.

Exit status: 0 on success, 2 for usage or malformed input, 3 when the input
violates a mathematical precondition (e.g. a degenerate Gram matrix).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import hassett, lattice as lat, periods
from .linalg import pivot_signature

EXIT_USAGE = 2
EXIT_MATH = 3
FORMATS = ("text", "markdown", "json")
CHECK = "✓"


class UsageError(Exception):
    pass


# -- rendering -------------------------------------------------------------


def render_table(t: hassett.ConditionTable, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(t.to_json(), sort_keys=True)
    labels = [hassett.ROW_LABELS[r] for r in hassett.ROWS]
    if fmt == "markdown":
        lines = ["| d | " + " | ".join(str(d) for d in t.columns) + " |"]
        lines.append("|---" * (len(t.columns) + 1) + "|")
        for row, label in zip(hassett.ROWS, labels):
            cells = [CHECK if ok else " " for ok in t.rows[row]]
            lines.append(f"| {label} | " + " | ".join(cells) + " |")
        return "\n".join(lines)
    width = max([len(str(d)) for d in t.columns] + [1])
    lead = max(len(x) for x in labels + ["d"])
    lines = ["d".ljust(lead) + "".join(" " + str(d).rjust(width) for d in t.columns)]
    for row, label in zip(hassett.ROWS, labels):
        cells = [(CHECK if ok else "").rjust(width) for ok in t.rows[row]]
        lines.append(label.ljust(lead) + "".join(" " + c for c in cells))
    return "\n".join(line.rstrip() for line in lines)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def render_report(r: periods.DivisorReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(r.to_json(), sort_keys=True)
    sph = str(r.sph)
    if r.sph.witness is not None:
        sph += f", witness {list(r.sph.witness)}"
    fields = [
        ("d", str(r.d)),
        ("v", str(list(r.v))),
        ("(v)^2", str(r.v_sq)),
        ("saturation index", str(r.sat_index)),
        ("disc(Gamma_d)", str(r.disc_gamma)),
        ("K3 (∗∗)", _yes(r.k3)),
        ("twisted K3 (∗∗′)", _yes(r.k3prime)),
        ("spherical", sph),
        ("d = k^2 d0", ", ".join(f"{k}^2*{d0}" for k, d0 in r.factorizations) or "-"),
        ("Brauer orders", ", ".join(map(str, r.brauer_orders)) or "-"),
    ]
    if fmt == "markdown":
        return "\n".join(["| field | value |", "|---|---|"] + [f"| {k} | {v} |" for k, v in fields])
    w = max(len(k) for k, _ in fields)
    return "\n".join(f"{k.ljust(w)}  {v}" for k, v in fields)


def _fqf_json(f: lat.FiniteQuadraticForm) -> dict:
    return {
        "invariant_factors": list(f.invariant_factors),
        "q": [[str(x) for x in row] for row in f.q_values],
        "even": f.even,
    }


def _emit(obj: dict, text: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True)
    if fmt == "markdown":
        return "\n".join(f"- {line}" for line in text.splitlines())
    return text


# -- commands --------------------------------------------------------------


def cmd_table(args) -> str:
    if args.d_from > args.d_to:
        raise UsageError(f"empty range: --from {args.d_from} > --to {args.d_to}")
    return render_table(hassett.table(args.d_from, args.d_to), args.format)


def cmd_divisor(args) -> str:
    d = args.d
    if not hassett.cond_star(d):
        raise UsageError(f"(∗) fails for d={d}: need d = 0, 2 (mod 6) and d > 6")
    return render_report(periods.divisor_report(d, args.k_bound), args.format)


def _read_input(spec: str):
    if spec == "-":
        raw = sys.stdin.read()
    elif spec.lstrip().startswith("{"):
        raw = spec
    else:
        try:
            with open(spec, encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def _load(obj, kind):
    try:
        return kind.from_json(obj)
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"malformed {kind.__name__} JSON: {exc}") from exc
    except ValueError as exc:
        # asymmetric / ragged data is an input problem, not a math one
        raise UsageError(str(exc)) from exc


def _basis_text(s: lat.Sublattice) -> str:
    rows = "\n".join("  " + " ".join(str(x) for x in r) for r in s.basis)
    gram = "\n".join("  " + " ".join(str(x) for x in r) for r in s.gram)
    return f"rank {s.rank}\nbasis:\n{rows}\ngram:\n{gram}"


def cmd_lattice(args) -> str:
    obj = _read_input(args.input)
    fmt = args.format
    if args.what == "disc-group":
        a = _load(obj, lat.Lattice)
        f = lat.disc_group_form(a)
        text = str(f) if a.is_even else f"{f} (odd lattice: q mod 1)"
        return _emit(_fqf_json(f), text, fmt)
    if args.what == "signature":
        a = _load(obj, lat.Lattice)
        p, n, z = pivot_signature(a.gram)
        text = f"({p},{n})" if z == 0 else f"({p},{n},{z})"
        return _emit({"signature": [p, n, z]}, text, fmt)
    s = _load(obj, lat.Sublattice)
    if args.what == "complement":
        if s.ambient.det == 0:
            raise lat.DegenerateLatticeError("ambient lattice is degenerate")
        c = lat.orthogonal_complement(s)
        return _emit(c.to_json(), _basis_text(c), fmt)
    sat = lat.saturate(s)
    idx = lat.saturation_index(s)
    payload = dict(sat.to_json(), index=idx)
    return _emit(payload, f"index {idx}\n" + _basis_text(sat), fmt)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubic-k3", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="condition table (∗), (∗∗), (∗∗′)")
    t.add_argument("--from", dest="d_from", type=int, default=8)
    t.add_argument("--to", dest="d_to", type=int, default=48)
    t.add_argument("--format", choices=FORMATS, default="text")
    t.set_defaults(func=cmd_table)

    d = sub.add_parser("divisor", help="lattice report for one discriminant d")
    d.add_argument("--d", type=int, required=True)
    d.add_argument("--k-bound", type=int, default=periods.DEFAULT_K_BOUND)
    d.add_argument("--format", choices=FORMATS, default="text")
    d.set_defaults(func=cmd_divisor)

    la_ = sub.add_parser("lattice", help="computations on a JSON lattice")
    la_.add_argument("what", choices=("disc-group", "signature", "complement", "saturate"))
    la_.add_argument("--input", required=True, help="JSON file, '-' for stdin, or inline JSON")
    la_.add_argument("--format", choices=FORMATS, default="text")
    la_.set_defaults(func=cmd_lattice)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (lat.LatticeError, periods.InadmissibleError) as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return EXIT_MATH
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
