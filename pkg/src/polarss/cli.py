"""Command-line front end: ``polarss <subcommand> ...``.

Exit status is 0 on success, 1 on domain errors (unqualified coalition,
digest mismatch, bad files) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import access, construction, gf2, sharing, transmission
from .channel import ChannelModel
from .errors import PolarSSError


def _coalition_arg(text: str) -> tuple[int, ...]:
    out = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        if part[0] in "Pp":
            part = part[1:]
        try:
            out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad coalition member {part!r}") from None
    return tuple(out)


def _seed_arg(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _channel_arg(text: str) -> ChannelModel:
    try:
        return ChannelModel.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _labels(members) -> str:
    return ",".join(f"P{i}" for i in members)


def cmd_construct(args, out, err) -> int:
    spec = construction.build_code(args.channel, args.n, args.k, args.p)
    text = construction.format_code(spec)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        out.write(text)
    return 0


def cmd_inspect(args, out, err) -> int:
    spec = construction.load_code(args.code)
    G_U = construction.generator_submatrix(spec)
    H_U = construction.dual_submatrix(spec)
    ok = construction.is_orthogonal(G_U, H_U)
    lines = [
        f"channel = {spec.channel}",
        f"N = {spec.N}",
        f"k = {spec.k}",
        "A = " + ",".join(map(str, spec.A)),
        "frozen = " + ",".join(map(str, spec.frozen)),
        f"p = {spec.p}",
        "reliability = " + ",".join(f"{r:.6f}" for r in spec.reliability),
        f"digest = {construction.code_digest(spec)}",
        "G_U =",
        gf2.format_matrix(G_U),
        "G_U row weights = " + ",".join(str(int(w)) for w in G_U.sum(axis=1)),
        "H_U =",
        gf2.format_matrix(H_U) if H_U.size else "(empty)",
        "orthogonality = " + ("ok" if ok else "FAILED"),
    ]
    out.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_weights(args, out, err) -> int:
    N = 1 << args.n
    weights = [construction.column_weight(j, N) for j in range(1, N + 1)]
    if args.table:
        out.write("column,j-1,bits,complement,weight\n")
        for j, w in enumerate(weights, start=1):
            bits = format(j - 1, f"0{args.n}b") if args.n else ""
            comp = "".join("1" if b == "0" else "0" for b in bits)
            out.write(f"{j},{j - 1},{bits},{comp},{w}\n")
    else:
        out.write(",".join(map(str, weights)) + "\n")
    return 0


def cmd_access(args, out, err) -> int:
    spec = construction.load_code(args.code)
    p = spec.p if args.p is None else args.p
    if args.rows:
        sets = access.row_coalitions(spec, args.mode, p)
    else:
        sets = access.minimal_access_sets(spec, args.mode, p).minimal_sets
    out.write(f"mode={args.mode} p={p} count={len(sets)}\n")
    for s in sets:
        out.write((_labels(s) or "(public values only)") + "\n")
    return 0


def cmd_deal(args, out, err) -> int:
    spec = construction.load_code(args.code)
    if args.seed is None:
        err.write("note: dealing with system entropy\n")
        rng = None
    else:
        err.write("warning: --seed makes dealing reproducible and insecure; use for tests only\n")
        rng = np.random.default_rng(args.seed)
    if access.is_qualified(spec, [], "effective"):
        err.write("warning: for this code the public values alone determine the secret; "
                  "keep public.shares as confidential as the secret\n")
    dealings = sharing.deal_string(spec, args.secret, rng)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)

    def write(name, positions):
        text = "".join(sharing.format_dealing(d, positions) for d in dealings)
        (outdir / name).write_text(text, encoding="utf-8", newline="\n")

    write("dealing.shares", None)
    write("public.shares", spec.frozen)
    for i in spec.members:
        write(f"P{i}.shares", [i])
    out.write(f"wrote {len(spec.members)} member files, public.shares and dealing.shares to {outdir}\n")
    return 0


def cmd_reconstruct(args, out, err) -> int:
    spec = construction.load_code(args.code)
    blocks = [sharing.load_shares(f) for f in args.shares]
    merged = sharing.merge_blocks(spec, blocks)
    out.write(sharing.reconstruct_string(spec, merged, args.mode) + "\n")
    return 0


def cmd_simulate(args, out, err) -> int:
    spec = construction.load_code(args.code)
    report = transmission.simulate(spec, args.coalition or [], args.trials, args.seed,
                                   args.mode, args.workers)
    out.write(report.to_csv())
    return 0


def cmd_audit(args, out, err) -> int:
    spec = construction.load_code(args.code)
    report = sharing.security_audit(spec, args.coalition, args.mode)
    out.write(f"mode={args.mode} positions={_labels(report.positions)} "
              f"balanced={str(report.balanced).lower()} determined={str(report.determined).lower()}\n")
    out.write("assignment,count_s0,count_s1\n")
    for key, (c0, c1) in report.table().items():
        out.write(f"{''.join(map(str, key))},{c0},{c1}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarss", description="Polar-code secret sharing toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a polar code and write a code file")
    p.add_argument("--channel", type=_channel_arg, required=True, help="bec:<e>, bsc:<d> or awgn:<s>")
    p.add_argument("--n", type=int, required=True, help="log2 of the block length")
    p.add_argument("--k", type=int, required=True, help="code dimension")
    p.add_argument("--p", type=int, help="secret position (default: most reliable index of A)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("inspect", help="print code parameters, G_U, H_U and the orthogonality check")
    p.add_argument("code")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("weights", help="column weights of G_N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", action="store_true", help="print the binary expansions as well")
    p.set_defaults(func=cmd_weights)

    def add_mode(p):
        p.add_argument("--mode", choices=access.MODES, default="full")

    p = sub.add_parser("access", help="list minimal access sets")
    p.add_argument("code")
    add_mode(p)
    p.add_argument("--p", type=int, help="override the secret position")
    p.add_argument("--rows", action="store_true", help="list the coalitions of individual H_U rows instead")
    p.set_defaults(func=cmd_access)

    p = sub.add_parser("deal", help="share a secret bit string")
    p.add_argument("code")
    p.add_argument("--secret", required=True, help="secret bits, e.g. 1 or 1011")
    p.add_argument("--seed", type=_seed_arg, help="fixed seed (insecure, tests only)")
    p.add_argument("--out-dir", default=".", help="directory for the shares files")
    p.set_defaults(func=cmd_deal)

    p = sub.add_parser("reconstruct", help="recover the secret from shares files")
    p.add_argument("code")
    p.add_argument("shares", nargs="+", help="shares files (member files, public.shares, ...)")
    add_mode(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("simulate", help="Monte-Carlo share delivery over the code's channel (CSV)")
    p.add_argument("code")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=_seed_arg, default=0)
    p.add_argument("--coalition", type=_coalition_arg, action="append", help="e.g. P4,P6 (repeatable)")
    p.add_argument("--workers", type=int, default=1)
    add_mode(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("audit", help="brute-force posterior counts of the secret for a coalition")
    p.add_argument("code")
    p.add_argument("--coalition", type=_coalition_arg, default=(), help="e.g. P4,P6 (empty for none)")
    add_mode(p)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except (PolarSSError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
