"""``optlrc`` command line: shard files, repair and decode them, analyze codes.

Exit codes: 0 success, 1 analyzed code is not locality-optimal, 2 bad
parameters or input (including search budgets), 3 not enough shards,
4 integrity failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import bulk
from .analysis import decodability_report
from .codec import decode_matrix, decode_pivots, local_repair_matrix, plan_local_repair
from .construction import build_generator, dump_matrix, load_matrix, make_params, to_systematic
from .errors import (
    CapExceeded,
    ChecksumMismatch,
    LRCError,
    ManifestError,
    ParamError,
    RankDeficient,
    ShapeError,
    TooLarge,
    TooManyLocalErasures,
)
from .matroid import analyze_matroid
from .storage import (
    Manifest,
    bytes_to_symbols,
    crc32,
    decode_symbols,
    encode_symbols,
    read_manifest,
    shard_name,
    symbols_to_bytes,
    write_manifest,
)

log = logging.getLogger("optlrc")

EXIT_OK, EXIT_NOT_OPTIMAL, EXIT_PARAM, EXIT_SHARDS, EXIT_INTEGRITY = 0, 1, 2, 3, 4


def _parse_modulus(text):
    if text is None:
        return None
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise ParamError(f"modulus must be comma-separated integers, got {text!r}") from exc


def build_code(n, k, r, delta=2, field="gf2:8", modulus=None):
    params = make_params(n, k, r, delta, field)
    return build_generator(params, modulus=_parse_modulus(modulus) if isinstance(modulus, str) else modulus)


# -- file operations ---------------------------------------------------------


def encode_file(src, outdir, n, k, r, delta=2, field="gf2:8", modulus=None) -> Manifest:
    gm = build_code(n, k, r, delta, field, modulus)
    base = gm.params.base
    e = gm.field.degree
    data = Path(src).read_bytes()
    symbols = bytes_to_symbols(data, base)
    width = k * e
    stripes = -(-symbols.size // width)
    X = np.zeros(stripes * width, dtype=np.int64)
    X[: symbols.size] = symbols
    Y = bulk.matmul(base, X.reshape(stripes, width), bulk.expand(gm.G))
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = Manifest.for_code(gm, len(data), stripes, crc32(data))
    for i, name in enumerate(manifest.shards):
        (outdir / name).write_bytes(encode_symbols(Y[:, i * e : (i + 1) * e], base))
    write_manifest(outdir, manifest)
    log.info("encoded %d bytes into %d stripes over %s, extension degree %d", len(data), stripes, base, e)
    return manifest


def _present(directory, manifest, gm):
    """Shard indices whose files exist with the expected size (no payload is read)."""
    size = manifest.shard_bytes(gm)
    out = []
    for i, name in enumerate(manifest.shards):
        path = Path(directory) / name
        if path.is_file() and path.stat().st_size == size:
            out.append(i)
        elif path.exists():
            log.warning("ignoring %s: expected %d bytes, found %d", path, size, path.stat().st_size)
    return out


def _read_shard(directory, manifest, gm, i, reads=None):
    path = Path(directory) / manifest.shards[i]
    if reads is not None:
        reads.append(i)
    log.info("read %s", path.name)
    return decode_symbols(path.read_bytes(), gm.params.base).reshape(manifest.stripe_count, gm.field.degree)


def _gather(directory, manifest, gm, indices, reads=None):
    if not indices:
        return np.zeros((manifest.stripe_count, 0), dtype=np.int64)
    return np.hstack([_read_shard(directory, manifest, gm, i, reads) for i in indices])


def _message_array(directory, manifest, gm, present):
    pivots = decode_pivots(gm, present)
    if pivots is None:
        erased = sorted(set(range(gm.n)).difference(present))
        raise RankDeficient(f"surviving shards {present} do not span the message space; missing {erased}", erased)
    Y = _gather(directory, manifest, gm, pivots)
    return bulk.matmul(gm.params.base, Y, bulk.expand(decode_matrix(gm, pivots)))


def decode_dir(directory, dest) -> bytes:
    directory = Path(directory)
    manifest = read_manifest(directory)
    gm = manifest.code()
    present = _present(directory, manifest, gm)
    X = _message_array(directory, manifest, gm, present)
    data = symbols_to_bytes(X, gm.params.base, manifest.original_length)
    if len(data) != manifest.original_length or crc32(data) != manifest.checksum:
        raise ChecksumMismatch(f"decoded data fails the manifest checksum {manifest.checksum}")
    Path(dest).write_bytes(data)
    return data


def repair_dir(directory, targets, allow_global=False, reads=None) -> list[int]:
    """Rebuild the shard files in ``targets``; returns the indices written.

    Every target group is repaired from r of its own shards. A group that lost
    more than delta - 1 shards raises TooManyLocalErasures unless
    ``allow_global`` is set, in which case the message is decoded from all
    survivors and the lost shards are re-encoded.
    """
    directory = Path(directory)
    manifest = read_manifest(directory)
    gm = manifest.code()
    p = gm.params
    base = p.base
    e = gm.field.degree
    targets = sorted(set(targets))
    for t in targets:
        if not 0 <= t < p.n:
            raise ParamError(f"shard index {t} out of range (0..{p.n - 1})")
    present = [i for i in _present(directory, manifest, gm) if i not in targets]
    rebuilt = {}
    fallback = []
    for g in sorted({p.group_of(t) for t in targets}):
        erased = [t for t in targets if p.group_of(t) == g]
        try:
            survivors, erased = plan_local_repair(gm, g, present, erased)
        except TooManyLocalErasures:
            if not allow_global:
                raise
            fallback.extend(erased)
            continue
        T = local_repair_matrix(gm, g, survivors, erased)
        Y = bulk.matmul(base, _gather(directory, manifest, gm, survivors, reads), bulk.expand(T))
        for c, t in enumerate(erased):
            rebuilt[t] = Y[:, c * e : (c + 1) * e]
    if fallback:
        log.info("groups lost more than %d shards; decoding globally", p.delta - 1)
        X = _message_array(directory, manifest, gm, present)
        if reads is not None:
            reads.extend(decode_pivots(gm, present))
        G_lost = gm.G.select_columns(fallback)
        Y = bulk.matmul(base, X, bulk.expand(G_lost))
        for c, t in enumerate(fallback):
            rebuilt[t] = Y[:, c * e : (c + 1) * e]
    for t, block in sorted(rebuilt.items()):
        (directory / manifest.shards[t]).write_bytes(encode_symbols(block, base))
        log.info("wrote %s", manifest.shards[t])
    return sorted(rebuilt)


# -- analysis ----------------------------------------------------------------


def analyze(args) -> tuple[dict, bool]:
    if args.matrix:
        G = load_matrix(Path(args.matrix).read_text(encoding="utf-8"))
        exact = False
        if args.r is None:
            raise ParamError("--r is required with --matrix")
    else:
        _require(args, "n", "k", "r")
        G = build_code(args.n, args.k, args.r, args.delta, args.field, args.modulus).G
        exact = True
    mat = analyze_matroid(G, args.r, args.delta)
    dec = decodability_report(G, args.r, args.delta, trials=args.trials, seed=args.seed, exact=exact)
    return {"matroid": mat.to_dict(), "decodability": dec.to_dict()}, mat.verdict.optimal


def _format_fraction(d):
    if d is None:
        return "n/a"
    return f"{d['numerator']}/{d['denominator']}"


def _print_report(report, out):
    m = report["matroid"]
    d = report["decodability"]
    v = m["optimal_lrc"]
    print(f"n={m['n']} k={m['k']}", file=out)
    print(f"nontrivial circuits: {m['nontrivial_circuits']}", file=out)
    print(f"mu={m['mu']} d_formula={m['d_formula']} d_oracle={m['d_oracle']}", file=out)
    if v["optimal"]:
        print(f"verdict: optimal ({v['reason']}); circuits partition columns: {v['circuits_partition_columns']}", file=out)
    else:
        print(f"verdict: not locality-optimal ({v['reason']}; witness {v['witness']})", file=out)
    print(f"P_dec exact={_format_fraction(d['p_exact'])} brute={_format_fraction(d['p_brute'])}", file=out)
    if d["p_lower_bound"]:
        lb = d["p_lower_bound"]
        print(f"P_dec lower bounds: {_format_fraction(lb['tight'])} >= {_format_fraction(lb['closed_form'])}", file=out)
    if d["p_monte_carlo"]:
        mc = d["p_monte_carlo"]
        print(f"P_dec monte carlo: {mc['estimate']:.6f} ({mc['trials']} trials, seed {mc['seed']})", file=out)


# -- argument parsing --------------------------------------------------------


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ParamError(f"missing required option(s): {' '.join(missing)}")


def _add_code_flags(p, required=True):
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--k", type=int, required=required)
    p.add_argument("--r", type=int, required=required)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--field", default="gf2:8", help="prime:<p> or gf2:<s> (default gf2:8)")
    p.add_argument("--modulus", help="extension modulus c0,c1,...,1 (skips the irreducible search)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="optlrc", description="Optimal locally repairable codes.")
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress and shard reads to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="split a file into n shards plus a manifest")
    p.add_argument("input")
    p.add_argument("outdir")
    _add_code_flags(p)

    p = sub.add_parser("decode", help="reconstruct the file from surviving shards")
    p.add_argument("dir")
    p.add_argument("output")

    p = sub.add_parser("repair", help="rebuild lost shards from their repair group")
    p.add_argument("dir")
    p.add_argument("index", type=int, nargs="+", help="0-based shard index")
    p.add_argument("--allow-global", action="store_true", help="decode globally when a group lost too many shards")

    p = sub.add_parser("analyze", help="matroid and decodability report")
    _add_code_flags(p, required=False)
    p.add_argument("--matrix", help="generator matrix dump instead of --n/--k")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("generator", help="write the generator matrix as a text dump")
    _add_code_flags(p)
    p.add_argument("--systematic", action="store_true")
    p.add_argument("--output", "-o", help="file to write (default stdout)")

    for sp in sub.choices.values():
        sp.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS)
    return parser


def _run(args, out) -> int:
    if args.command == "encode":
        m = encode_file(args.input, args.outdir, args.n, args.k, args.r, args.delta, args.field, args.modulus)
        print(f"wrote {len(m.shards)} shards and manifest to {args.outdir}", file=out)
        return EXIT_OK
    if args.command == "decode":
        data = decode_dir(args.dir, args.output)
        print(f"decoded {len(data)} bytes to {args.output}", file=out)
        return EXIT_OK
    if args.command == "repair":
        done = repair_dir(args.dir, args.index, allow_global=args.allow_global)
        print("rebuilt " + ", ".join(shard_name(i) for i in done), file=out)
        return EXIT_OK
    if args.command == "analyze":
        report, optimal = analyze(args)
        if args.json:
            print(json.dumps(report, indent=2), file=out)
        else:
            _print_report(report, out)
        return EXIT_OK if optimal else EXIT_NOT_OPTIMAL
    if args.command == "generator":
        gm = build_code(args.n, args.k, args.r, args.delta, args.field, args.modulus)
        if args.systematic:
            gm, _ = to_systematic(gm)
        text = dump_matrix(gm.G)
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            out.write(text)
        return EXIT_OK
    raise AssertionError(args.command)


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return _run(args, out)
    except (RankDeficient, TooManyLocalErasures) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHARDS
    except (ChecksumMismatch, ManifestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (ParamError, ShapeError, CapExceeded, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except LRCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
