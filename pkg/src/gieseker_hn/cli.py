"""Command line entry point.

Exit codes: 0 success, 1 a declared expectation failed, 2 the scene is
invalid, 3 an internal invariant was breached.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .k3_example import k3_scene
from .report import RENDERERS, run_checks
from .scene import SceneError, build_scene, load_scene

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_SCENE = 2
EXIT_INTERNAL = 3


def _even_positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0 or value % 2:
        raise argparse.ArgumentTypeError(f"H^2 must be even and positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gieseker-hn",
        description="Exact characteristic-class and stability checks on polarized surfaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the checks declared in a scene file")
    verify.add_argument("scene", help="path to a scene JSON file")
    verify.add_argument("--emit", choices=sorted(RENDERERS), default="report")

    k3 = sub.add_parser("paper-k3", help="run the built-in K3 scene")
    k3.add_argument("--h2", type=_even_positive, default=2,
                    help="self-intersection of the polarization (even, default 2)")
    k3.add_argument("--emit", choices=sorted(RENDERERS), default="report")
    k3.add_argument("--dump-scene", action="store_true",
                    help="print the scene document instead of running it")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which already means "bad scene input"
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            scene = load_scene(args.scene)
        else:
            doc = k3_scene(args.h2)
            if args.dump_scene:
                import json
                sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
                return EXIT_OK
            scene = build_scene(doc)
    except SceneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCENE
    try:
        report = run_checks(scene)
        sys.stdout.write(RENDERERS[args.emit](report))
    except Exception as exc:  # noqa: BLE001
        print(f"internal invariant breach: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_EXPECTATION if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
