"""
Command-line driver.

    m0nkappa dims --n-max 6
    m0nkappa phi-matrix --n 6 --d 2 --format csv
    m0nkappa character --n 4 --d 1 --perm 2,1,3,4
    m0nkappa verify --n-max 7 --threads 4

Exit status is 2 for invalid input, 1 when a verification check fails and
0 otherwise.  Label columns use the text encodings of `setcomb`; CSV output
quotes them since block separators contain commas.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import nullcontext

from m0nkappa import faults, verify
from m0nkappa.chowq import build_quotient, relation_generators
from m0nkappa.errors import InputError
from m0nkappa.exactlin import SparseMatrix, encode_label, rank
from m0nkappa.kappa import pairing_matrix, phi_matrix
from m0nkappa.setcomb import Permutation, character_fixed_points, enumerate_kappa_index
from m0nkappa.strata import TreeType, classify, enumerate_trees, stratum_class

N_LIMIT = 8
THREADS_ENV = "M0NKAPPA_THREADS"


class Table:
    """Rows for table/csv output plus the object emitted for json."""

    def __init__(self, header: list[str], rows: list[list], data):
        self.header = header
        self.rows = rows
        self.data = data


def _quotient_cell(n: int, d: int) -> None:
    if n < 4 or not 1 <= d <= n - 3:
        raise InputError(f"need n >= 4 and 1 <= d <= n-3, got n={n}, d={d}")
    if n > N_LIMIT:
        raise InputError(f"n is limited to {N_LIMIT}")


def _n_max(n_max: int) -> None:
    if not 4 <= n_max <= N_LIMIT:
        raise InputError(f"--n-max must be between 4 and {N_LIMIT}, got {n_max}")


def cmd_dims(args) -> Table:
    _n_max(args.n_max)
    rows, data = [], []
    for n in range(4, args.n_max + 1):
        for d in range(1, n - 2):
            q = build_quotient(n, d)
            k = len(enumerate_kappa_index(n, d))
            rows.append([n, d, q.dimension, k, len(q.partitions), q.rank_relations])
            data.append(dict(q.to_json(), num_K=k))
    return Table(["n", "d", "dim_Q", "num_K", "num_partitions", "rank_relations"], rows, data)


def _matrix_table(m: SparseMatrix, extra: dict) -> Table:
    header = ["row"] + [encode_label(t) for t in m.universe]
    rows = [[encode_label(p)] + [str(r[t]) for t in m.universe] for p, r in zip(m.row_labels, m.rows)]
    return Table(header, rows, dict(extra, rank=rank(m), matrix=m.to_json()))


def cmd_pairing_matrix(args) -> Table:
    _quotient_cell(args.n, args.d)
    return _matrix_table(pairing_matrix(args.n, args.d), {"n": args.n, "d": args.d})


def cmd_phi_matrix(args) -> Table:
    _quotient_cell(args.n, args.d)
    return _matrix_table(phi_matrix(args.n, args.d), {"n": args.n, "d": args.d})


def cmd_relations(args) -> Table:
    n, d = args.n, args.d
    if n > N_LIMIT:
        raise InputError(f"n is limited to {N_LIMIT}")
    gens = relation_generators(n, d)
    q = build_quotient(n, d)
    rows = [[i, encode_label(p), str(c)] for i, g in enumerate(gens) for p, c in g.sum.sorted_items()]
    data = {
        "n": n,
        "d": d,
        "num_generators": len(gens),
        "rank": q.rank_relations,
        "generators": [[{"label": encode_label(p), "coeff": str(c)} for p, c in g.sum.sorted_items()] for g in gens],
    }
    return Table(["generator", "partition", "coeff"], rows, data)


def cmd_character(args) -> Table:
    _quotient_cell(args.n, args.d)
    g = Permutation.decode(args.perm)
    if g.n != args.n:
        raise InputError(f"--perm has degree {g.n}, expected {args.n}")
    value = character_fixed_points(args.n, args.d, g)
    data = {"n": args.n, "d": args.d, "perm": g.encode(), "cycle_type": list(g.cycle_type()), "character": value}
    return Table(["n", "d", "perm", "character"], [[args.n, args.d, g.encode(), value]], data)


def cmd_strata(args) -> Table:
    n = args.n
    if not 3 <= n <= N_LIMIT:
        raise InputError(f"strata needs 3 <= n <= {N_LIMIT}, got {n}")
    dims = range(0, n - 2) if args.d is None else [args.d]
    trees = enumerate_trees(n)
    rows, data = [], []
    for d in dims:
        if not 0 <= d <= n - 3:
            raise InputError(f"tree dimension must be in 0..{n - 3}, got {d}")
        of_dim = [t for t in trees if t.dimension == d]
        kinds = [classify(t) for t in of_dim]
        classes = {stratum_class(t).partition for t, k in zip(of_dim, kinds) if k is TreeType.TYPE_I}
        row = {
            "n": n,
            "d": d,
            "trees": len(of_dim),
            "point": kinds.count(TreeType.POINT),
            "type_i": kinds.count(TreeType.TYPE_I),
            "type_ii": kinds.count(TreeType.TYPE_II),
            "type_i_classes": len(classes),
        }
        rows.append(list(row.values()))
        data.append(row)
    return Table(["n", "d", "trees", "point", "type_i", "type_ii", "type_i_classes"], rows, data)


def _threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(THREADS_ENV)
    if env is None:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be an integer, got {env!r}") from None


def run_verify(args, out, err) -> int:
    _n_max(args.n_max)
    fault = faults.Fault(args.inject_fault) if args.inject_fault else None
    reports = verify.run_suite(args.n_max, args.only, _threads(args.threads), fault)
    summary = verify.summarize(reports)
    fmt = args.format or "json"
    if fmt == "json":
        for r in reports:
            out.write(r.dumps() + "\n")
        _write_table(err, ["check", "cells", "pass", "fail", "vacuous"], [list(s.values()) for s in summary])
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["check", "params", "status", "vacuous"])
        for r in reports:
            w.writerow([r.check, json.dumps(r.params, sort_keys=True), r.status, r.vacuous])
    else:
        _write_table(out, ["check", "cells", "pass", "fail", "vacuous"], [list(s.values()) for s in summary])
    return 0 if verify.all_passed(reports) else 1


def _write_table(out, header: list[str], rows: list[list]) -> None:
    cells = [header] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def emit(table: Table, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(table.data, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(table.header)
        w.writerows(table.rows)
    else:
        _write_table(out, table.header, table.rows)


COMMANDS = {
    "dims": cmd_dims,
    "pairing-matrix": cmd_pairing_matrix,
    "phi-matrix": cmd_phi_matrix,
    "relations": cmd_relations,
    "character": cmd_character,
    "strata": cmd_strata,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="m0nkappa", description="Set-partition quotients and their kappa-side duals.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default=None)
    common.add_argument("--out", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", parents=[common], help="dim Q_{d,n} and |K^d_n| for every cell")
    p.add_argument("--n-max", type=int, required=True)
    for name, what in (("pairing-matrix", "partition/subset pairing"), ("phi-matrix", "phi on the quotient basis")):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
    p = sub.add_parser("relations", parents=[common], help="four-term relation generators and their rank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p = sub.add_parser("character", parents=[common], help="character of S_n on Q_{d,n} at a permutation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--perm", required=True, help='images of 1..n, e.g. "2,1,3,4"')
    p = sub.add_parser("strata", parents=[common], help="stable tree counts by type")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--n-max", type=int, default=verify.DEFAULT_N_MAX)
    p.add_argument("--only", action="append", choices=list(verify.CHECKS), help="repeatable")
    p.add_argument("--threads", type=int, default=None, help=f"worker threads (default ${THREADS_ENV} or 1)")
    p.add_argument("--inject-fault", choices=faults.KINDS, default=None)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        buf = io.StringIO()
        if args.command == "verify":
            code = run_verify(args, buf, stderr)
        else:
            emit(COMMANDS[args.command](args), args.format or "table", buf)
            code = 0
    except InputError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    ctx = open(args.out, "w", encoding="utf-8", newline="") if args.out else nullcontext(stdout)
    with ctx as f:
        f.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())
