"""Command-line workbench: check, search, tile, subst, flips, symmetry, serve.

Exit codes: 0 success, 1 negative result (e.g. a failed tilability
check), 2 usage error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from .cyclo import ExactnessError, ring
from .docio import parse_substitution, serialize_substitution
from .errors import InternalError, UntilableError
from .ksk import PairingError, ksk_check
from .search import (
    MultisetSpec,
    PermIterator,
    parallel_sweep,
    sequence_status,
)
from .seqboundary import build_boundary, is_good_curve, is_standard
from .service import EditSession, SessionServer
from .subst import inflation_factor, make_substitution, substitute_patch
from .svgout import render_svg
from .symmetry import corner_report
from .tiler import Patch, PlacedTile, construct_tiling
from .cyclo import zero

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _parse_seq(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise SystemExit(EXIT_USAGE)


def _parse_chunks(text: str) -> MultisetSpec:
    items = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "x" not in part:
            raise SystemExit(EXIT_USAGE)
        chunk_text, mult_text = part.rsplit("x", 1)
        chunk = tuple(int(v) for v in chunk_text.split(","))
        items.append((chunk, int(mult_text)))
    if not items:
        raise SystemExit(EXIT_USAGE)
    return MultisetSpec(items=tuple(items))


def _build_substitution(n: int, seq: tuple[int, ...]):
    spec = ring(n)
    images = {
        label: construct_tiling(build_boundary(spec, seq, label))
        for label in range(2, n, 2)
    }
    return make_substitution(spec, seq, images)


def _load_sub(args):
    if getattr(args, "doc", None):
        with open(args.doc, encoding="utf-8") as handle:
            return parse_substitution(handle.read()).substitution
    if args.n is None or args.seq is None:
        print("need a document path or --n/--seq", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return _build_substitution(args.n, _parse_seq(args.seq))


def cmd_check(args) -> int:
    spec = ring(args.n)
    seq = _parse_seq(args.seq)
    if not is_standard(seq, spec.n):
        print(f"sequence {list(seq)} is not standard for n={spec.n}")
        return EXIT_NEGATIVE
    print(f"inflation factor {inflation_factor(spec, seq):.6f}")
    all_ok = True
    for label in range(2, spec.n, 2):
        b = build_boundary(spec, seq, label)
        good = is_good_curve(b)
        passed = good and ksk_check(b)
        all_ok = all_ok and passed
        verdict = "pass" if passed else ("ksk-fail" if good else "bad-curve")
        print(f"label {label}: {verdict}")
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def cmd_search(args) -> int:
    spec = ring(args.n)
    if args.chunks:
        multiset = _parse_chunks(args.chunks)
        chunked = True
    elif args.seq:
        terms = _parse_seq(args.seq)
        items: dict[int, int] = {}
        for k in terms:
            items[k] = items.get(k, 0) + 1
        multiset = MultisetSpec(items=tuple(sorted(items.items())))
        chunked = False
    else:
        print("search needs --seq or --chunks", file=sys.stderr)
        return EXIT_USAGE

    if args.workers > 1:
        passing, counts = parallel_sweep(
            spec, multiset, chunked=chunked, depth=args.depth, workers=args.workers
        )
        sink = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
        for seq in passing:
            print(",".join(str(k) for k in seq), file=sink)
        if args.out:
            sink.close()
        print(f"done: {counts}", file=sys.stderr)
        return EXIT_OK

    if args.resume and args.checkpoint:
        with open(args.checkpoint, encoding="utf-8") as handle:
            iterator = PermIterator.from_state(handle.read().strip())
        out_mode = "a"
    else:
        iterator = PermIterator(multiset.expand())
        out_mode = "w"
    out = open(args.out, out_mode, encoding="utf-8") if args.out else sys.stdout
    counts: dict[str, int] = {}
    found = 0
    processed = 0

    def checkpoint() -> None:
        if args.checkpoint:
            with open(args.checkpoint, "w", encoding="utf-8") as handle:
                handle.write(iterator.state + "\n")

    try:
        for perm in iterator:
            seq = (
                tuple(x for chunk in perm for x in chunk) if chunked else tuple(perm)
            )
            status = sequence_status(spec, seq)
            counts[status] = counts.get(status, 0) + 1
            if status == "pass":
                print(",".join(str(k) for k in seq), file=out, flush=True)
                found += 1
                if args.limit and found >= args.limit:
                    break
            processed += 1
            if processed % 1000 == 0:
                checkpoint()
    finally:
        checkpoint()
        if args.out:
            out.close()
    print(f"done: {counts}", file=sys.stderr)
    return EXIT_OK


def cmd_tile(args) -> int:
    try:
        sub = _build_substitution(args.n, _parse_seq(args.seq))
    except UntilableError as exc:
        print(f"untilable: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    text = serialize_substitution(sub)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_subst(args) -> int:
    sub = _load_sub(args)
    label = args.label or 2
    patch = Patch.of(sub.spec, [PlacedTile(sub.spec, label, 0, zero(sub.spec))])
    for _ in range(args.depth):
        patch = substitute_patch(sub, patch)
    svg = render_svg(patch, pseudolines=args.pseudolines, arrows=args.arrows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(svg)
    else:
        sys.stdout.write(svg)
    print(f"{len(patch)} tiles", file=sys.stderr)
    return EXIT_OK


def cmd_flips(args) -> int:
    sub = _load_sub(args)
    session = EditSession(sub, path=args.out)
    if args.script:
        with open(args.script, encoding="utf-8") as handle:
            for raw in handle:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                label_text, site_id = line.split()
                session.flip(int(label_text), site_id, session.revision)
        if args.out:
            session.save(args.out)
        else:
            sys.stdout.write(serialize_substitution(session.sub))
        return EXIT_OK
    for label in session.sub.labels():
        payload = session.patch_payload(label)
        for site in payload["sites"]:
            cx, cy = site["center"]
            print(f"{label} {site['id']} center=({cx},{cy})")
    return EXIT_OK


def cmd_symmetry(args) -> int:
    sub = _load_sub(args)
    report = corner_report(sub, depth=args.depth)
    print(report.to_text())
    return EXIT_OK


def cmd_serve(args) -> int:
    sub = _load_sub(args)
    session = EditSession(sub, path=args.doc or args.out)
    server = SessionServer(session, port=args.port)
    print(f"session service on http://127.0.0.1:{server.port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rhombwork",
        description="workbench for rhombic substitution tilings with n-fold symmetry",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="tilability of every boundary of a sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seq", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="sweep permutations through the tilability filter")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seq", help="multiset of terms, comma-separated")
    p.add_argument("--chunks", help="chunk multiset, e.g. '0x5;-1,1x5;2,-2x4'")
    p.add_argument("--out")
    p.add_argument("--checkpoint")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--limit", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--depth", type=int, default=1, help="prefix partition depth")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tile", help="construct a tiling for every label and save it")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seq", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("subst", help="iterate the substitution and render SVG")
    p.add_argument("doc", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--seq")
    p.add_argument("--label", type=int)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--pseudolines", action="store_true")
    p.add_argument("--arrows", action="store_true")
    p.set_defaults(func=cmd_subst)

    p = sub.add_parser("flips", help="list flip sites or apply a flip script")
    p.add_argument("doc", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--seq")
    p.add_argument("--script", help="file of 'label site-id' lines")
    p.add_argument("--out")
    p.set_defaults(func=cmd_flips)

    p = sub.add_parser("symmetry", help="stars and corner flags of a substitution")
    p.add_argument("doc", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--seq")
    p.add_argument("--depth", type=int, default=1)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("serve", help="run the editor session service")
    p.add_argument("doc", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--seq")
    p.add_argument("--out")
    p.add_argument("--port", type=int, default=8765)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InternalError, PairingError, ExactnessError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except UntilableError as exc:
        print(f"negative: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
