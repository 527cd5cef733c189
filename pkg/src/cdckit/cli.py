"""Command-line surface: bound evaluation, the full bound table, desk-scale
builds, file verification, rank distributions, and diagram-code audits.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
All integers print in plain decimal; files are plain text and diffable.
"""

from __future__ import annotations

import argparse
import sys

from .cdc import Cdc, IdVec, ferrers_of, multilevel
from .errors import CdcError, ParseError, TooLarge
from .ferrers import FdrmCode, FerrersDiagram, optimal_fdrmc
from .linalg import MatGF, Subspace, rref
from .rankmetric import LinearMatrixCode, rank_distribution
from .theorems import (BoundResult, consistency_report, example_bound,
                       load_registry, table11_bound, th41_bound, th44_bound)
from .verify import audit_fdrmc, check_cdc

BUILD_CAP = 10 ** 6


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def write_cdc(code: Cdc, path: str):
    """One header line, then one k x n digit block per codeword, sorted."""
    members = sorted(code.members, key=lambda U: U.gen.data)
    lines = [f"cdc v1 q={code.q} n={code.n} k={code.k} d={code.d} "
             f"count={len(members)}"]
    for U in members:
        lines.append("")
        for row in U.gen.data:
            lines.append("".join(str(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _header_fields(line, expected, lineno):
    parts = line.split()
    if len(parts) < 2 or parts[0] != expected or parts[1] != "v1":
        raise ParseError(f"expected '{expected} v1' header", line=lineno)
    fields = {}
    for p in parts[2:]:
        if "=" not in p:
            raise ParseError(f"bad header field {p!r}", line=lineno)
        key, val = p.split("=", 1)
        fields[key] = val
    return fields


def read_cdc(path: str) -> Cdc:
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise ParseError("empty file", line=1)
    fields = _header_fields(raw[0], "cdc", 1)
    try:
        q, n, k, d, count = (int(fields[x]) for x in ("q", "n", "k", "d", "count"))
    except KeyError as e:
        raise ParseError(f"missing header field {e}", line=1)
    members = []
    block, block_start = [], None
    for lineno, line in enumerate(raw[1:], 2):
        if line.strip():
            if not block:
                block_start = lineno
            block.append((lineno, line.strip()))
            if len(block) == k:
                members.append(_parse_block(block, q, n, k, block_start))
                block = []
        elif block:
            raise ParseError(f"block has {len(block)} of {k} rows", line=lineno)
    if block:
        raise ParseError(f"truncated block of {len(block)} rows",
                         line=block[0][0])
    if len(members) != count:
        raise ParseError(f"header promises {count} codewords, found {len(members)}",
                         line=1)
    return Cdc(q=q, n=n, k=k, d=d, members=tuple(members), provenance="file")


def _parse_block(block, q, n, k, block_start):
    rows = []
    for lineno, line in block:
        if len(line) != n or any(not c.isdigit() for c in line):
            raise ParseError(f"expected {n} digits", line=lineno)
        row = [int(c) for c in line]
        if any(x >= q for x in row):
            raise ParseError(f"entry out of range for q={q}", line=lineno)
        rows.append(row)
    M = MatGF(q, rows)
    R, _ = rref(M)
    if R != M:
        raise ParseError("generator block is not in reduced echelon form",
                         line=block_start)
    return Subspace.from_matrix(M)


def write_fdrmc(code: FdrmCode, path: str):
    dia = code.diagram
    orient = "inverse" if dia.inverted else "forward"
    lines = [f"fdrmc v1 q={code.q} m={dia.m} n={dia.n} delta={code.delta} "
             f"dim={code.dim} diagram={','.join(str(c) for c in dia.cols)} "
             f"orient={orient}"]
    for B in code.code.basis:
        lines.append("")
        for row in B.data:
            lines.append("".join(str(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_fdrmc(path: str) -> FdrmCode:
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise ParseError("empty file", line=1)
    fields = _header_fields(raw[0], "fdrmc", 1)
    try:
        q = int(fields["q"])
        m, n = int(fields["m"]), int(fields["n"])
        delta, dim = int(fields["delta"]), int(fields["dim"])
        cols = tuple(int(c) for c in fields["diagram"].split(",") if c)
        inverted = fields.get("orient", "forward") == "inverse"
    except (KeyError, ValueError) as e:
        raise ParseError(f"bad header: {e}", line=1)
    dia = FerrersDiagram(cols, inverted=inverted)
    basis = []
    block, start = [], None
    for lineno, line in enumerate(raw[1:], 2):
        if line.strip():
            if not block:
                start = lineno
            s = line.strip()
            if len(s) != n or any(not c.isdigit() for c in s):
                raise ParseError(f"expected {n} digits", line=lineno)
            block.append([int(c) for c in s])
            if len(block) == m:
                basis.append(MatGF(q, block))
                block = []
        elif block:
            raise ParseError(f"block has {len(block)} of {m} rows", line=lineno)
    if block:
        raise ParseError("truncated matrix block", line=start)
    if len(basis) != dim:
        raise ParseError(f"header promises dim={dim}, found {len(basis)} matrices",
                         line=1)
    inner = LinearMatrixCode(q, dia.m, dia.n, tuple(basis), delta)
    from .ferrers import singleton_bound
    return FdrmCode(diagram=dia, code=inner, delta=delta,
                    optimal=dim == singleton_bound(dia, delta))


def parse_diagram(text: str) -> FerrersDiagram:
    """Diagram literal, e.g. 'F=[1,2,4]' (ascending column counts)."""
    s = text.strip()
    if s.startswith("F="):
        s = s[2:]
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"expected F=[c1,c2,...], got {text!r}")
    cols = tuple(int(c) for c in s[1:-1].split(",") if c.strip())
    return FerrersDiagram(cols)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _print_bound(res: BoundResult):
    print(f"A_{res.q}({res.n},{res.d},{res.k}) >= {res.value}   [{res.source}]")
    if res.polynomial:
        print(f"  polynomial: {res.polynomial_str()}")
    if res.old_bound is not None:
        print(f"  previous bound: {res.old_bound}  (difference {res.difference})")
    for note in res.notes:
        print(f"  note: {note}")


def cmd_bound(args) -> int:
    q, n, d, k = args.q, args.n, args.d, args.k
    registry = load_registry(args.registry)
    source = args.source

    def compute(src):
        if src == "table11":
            return table11_bound(q, n, d, k, registry=registry)
        if src in ("th41", "th44"):
            if d % 2:
                raise CdcError("construction sources need an even distance")
            fn = th41_bound if src == "th41" else th44_bound
            return fn(q, n, d // 2, k)
        if src.startswith("example:"):
            return example_bound(src.split(":", 1)[1], q)
        raise CdcError(f"unknown source {src!r}")

    if source == "auto":
        for src in ("table11", "th44", "th41"):
            try:
                res = compute(src)
                break
            except CdcError:
                continue
        else:
            print("no applicable source", file=sys.stderr)
            return 2
    else:
        res = compute(source)
    _print_bound(res)
    rows, _ = registry
    key = (q, n, d, k)
    if res.source != "table11" and key in rows and rows[key][0] != res.value:
        print(f"  MISMATCH: registry lists {rows[key][0]} "
              f"(difference {rows[key][0] - res.value})")
    return 0


def cmd_table11(args) -> int:
    registry = load_registry(args.registry)
    rows, order = registry
    consistency = {}
    if args.consistency:
        for row in consistency_report(registry):
            consistency[(row["q"], row["n"], row["d"], row["k"])] = row
    bad = 0
    if args.format == "csv":
        cols = "q,n,d,k,new,old,diff,status"
        if args.consistency:
            cols += ",recomputed,consistent"
        print(cols)
    for key in order:
        q, n, d, k = key
        res = table11_bound(q, n, d, k, registry=registry)
        new, old = rows[key]
        ok = res.value == new and (old is None or res.value > old)
        if not ok:
            bad += 1
        status = "ok" if ok else "MISMATCH"
        extra = ""
        if args.consistency:
            c = consistency[key]
            extra_val = c["recomputed"]
            consistent = "yes" if c["match"] else "no"
        if args.format == "csv":
            line = (f"{q},{n},{d},{k},{res.value},{old},"
                    f"{res.value - old},{status}")
            if args.consistency:
                line += f",{extra_val},{consistent}"
            print(line)
        else:
            line = (f"A_{q}({n},{d},{k})  new {res.value}  old {old}  "
                    f"diff {res.value - old}  {status}")
            if args.consistency and not consistency[key]["match"]:
                line += (f"  [reconstruction gives {extra_val}, "
                         f"off by {new - extra_val}]")
            print(line)
    if args.consistency:
        n_off = sum(1 for c in consistency.values() if not c["match"])
        print(f"# consistency: {len(order) - n_off}/{len(order)} rows match "
              f"their reconstruction")
    if bad:
        print(f"# {bad} rows FAILED transcription validation", file=sys.stderr)
        return 1
    return 0


def cmd_build(args) -> int:
    q = args.q
    if args.multilevel:
        vectors = [IdVec.from_string(s)
                   for s in args.multilevel.split(",") if s.strip()]
        entries = []
        total = 0
        for v in vectors:
            layout = ferrers_of(v)
            code = optimal_fdrmc(layout.diagram, args.delta, q)
            entries.append((v, code))
            total += code.size
        if total > BUILD_CAP:
            if args.force_count_only:
                print(f"count-only: {total} codewords")
                return 0
            raise TooLarge(f"{total} codewords exceed build cap {BUILD_CAP}; "
                           f"pass --force-count-only for the size")
        code = multilevel(entries, args.delta)
        write_cdc(code, args.out)
        print(f"wrote {code.size} codewords to {args.out} "
              f"(n={code.n}, k={code.k}, d={code.d})")
        return 0
    if args.fdrmc:
        dia = parse_diagram(args.fdrmc)
        code = optimal_fdrmc(dia, args.delta, q)
        write_fdrmc(code, args.out)
        print(f"wrote [{dia}, {code.dim}, {code.delta}]_{q} code to {args.out}")
        return 0
    print("nothing to build: pass --multilevel or --fdrmc", file=sys.stderr)
    return 2


def cmd_check(args) -> int:
    code = read_cdc(args.infile)
    report = check_cdc(code, mode=args.mode, seed=args.seed)
    print(report.summary())
    if args.kv:
        for line in report.kv_lines():
            print(line)
    return 0 if report.passed else 1


def cmd_rankdist(args) -> int:
    q, m, n, delta = args.q, args.m, args.n, args.delta
    total = 0
    for r in range(0, min(m, n) + 1):
        a = rank_distribution(q, m, n, delta, r)
        total += a
        print(f"rank {r}: {a}")
    expected = q ** (max(m, n) * (min(m, n) - delta + 1))
    ok = total == expected
    print(f"total {total} (code size {expected}: "
          f"{'identity OK' if ok else 'IDENTITY FAILS'})")
    return 0 if ok else 1


def cmd_audit(args) -> int:
    code = read_fdrmc(args.infile)
    report = audit_fdrmc(code)
    print(report.summary())
    for key, val in report.details.items():
        print(f"  {key}: {val}")
    return 0 if report.passed else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="cdckit",
        description="constant-dimension subspace codes: bounds, builds, checks")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="evaluate one lower bound")
    b.add_argument("-q", type=int, required=True)
    b.add_argument("-n", type=int, required=True)
    b.add_argument("-d", type=int, required=True)
    b.add_argument("-k", type=int, required=True)
    b.add_argument("--source", default="auto",
                   help="auto|table11|th41|th44|example:<name>")
    b.add_argument("--registry", default=None, help="alternate registry file")
    b.set_defaults(fn=cmd_bound)

    t = sub.add_parser("table11", help="emit and validate the bound table")
    t.add_argument("--format", choices=("text", "csv"), default="text")
    t.add_argument("--consistency", action="store_true",
                   help="also re-derive each row from the constructions")
    t.add_argument("--registry", default=None)
    t.set_defaults(fn=cmd_table11)

    bu = sub.add_parser("build", help="materialize a desk-scale code to a file")
    bu.add_argument("--multilevel", default=None,
                    help="comma-separated identifying vectors, e.g. 1100,0011")
    bu.add_argument("--fdrmc", default=None,
                    help="diagram literal, e.g. F=[1,2,4]")
    bu.add_argument("-q", type=int, required=True)
    bu.add_argument("--delta", type=int, required=True)
    bu.add_argument("--out", required=True)
    bu.add_argument("--force-count-only", action="store_true")
    bu.set_defaults(fn=cmd_build)

    c = sub.add_parser("check", help="re-verify a code file")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--mode", choices=("exhaustive", "sampled"),
                   default="exhaustive")
    c.add_argument("--seed", type=int, default=2024)
    c.add_argument("--kv", action="store_true",
                   help="also print machine-readable key=value lines")
    c.set_defaults(fn=cmd_check)

    r = sub.add_parser("rankdist", help="rank distribution and size identity")
    r.add_argument("-q", type=int, required=True)
    r.add_argument("-m", type=int, required=True)
    r.add_argument("-n", type=int, required=True)
    r.add_argument("--delta", type=int, required=True)
    r.set_defaults(fn=cmd_rankdist)

    a = sub.add_parser("audit", help="audit a diagram-code file")
    a.add_argument("--in", dest="infile", required=True)
    a.set_defaults(fn=cmd_audit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except CdcError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
