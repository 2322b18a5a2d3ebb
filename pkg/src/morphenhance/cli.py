"""Command-line entry point.

Subcommands::

    morph       erode / dilate / open / close / open-rec / close-rec
    background  write tau, background and exact gains for a detector
    enhance     Weber contrast enhancement (gray or per-channel RGB)
    bench       CSV timings of naive vs separable erosion/dilation
    stats       image statistics
    equalize    histogram-equalization baseline

Exit codes: 0 success, 1 I/O or codec failure, 2 invalid arguments.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import morphology as morph
from .background import background_block, background_obr, tau_erosion_dilation
from .codec import CodecError, read_image, write_image
from .enhancement import BlockMethod, ErosionDilationMethod, ReconstructionMethod, enhance
from .image import as_gray, clamp_round, is_rgb, rgb_to_gray
from .metrics import comparison, format_stats, histogram_equalize, image_stats, stats_dict

log = logging.getLogger("morphenhance")

MORPH_OPS = {
    "erode": morph.erode,
    "dilate": morph.dilate,
    "open": morph.open,
    "close": morph.close,
    "open-rec": morph.opening_by_reconstruction,
    "close-rec": morph.closing_by_reconstruction,
}
BENCH_OPS = ("erode", "dilate")
# structuring-element scale for intermediate panels when the method has none
DEFAULT_PANEL_MU = 2


class UsageError(Exception):
    pass


def _gray_input(img: np.ndarray) -> np.ndarray:
    return rgb_to_gray(img) if is_rgb(img) else as_gray(img)


def run_morph(img: np.ndarray, op: str, mu: int, impl: str = "separable") -> np.ndarray:
    return MORPH_OPS[op](_gray_input(img), mu, impl)


def make_method(args) -> object:
    if args.method == "block":
        if args.block_w is None or args.block_h is None:
            raise UsageError("--method block requires --block-w and --block-h")
        return BlockMethod(args.block_w, args.block_h)
    if args.mu is None:
        raise UsageError(f"--method {args.method} requires --mu")
    if args.method == "ed":
        return ErosionDilationMethod(args.mu)
    return ReconstructionMethod(args.mu)


def compute_background(f: np.ndarray, method, impl: str = "separable"):
    if isinstance(method, BlockMethod):
        return background_block(f, method.block_w, method.block_h)
    if isinstance(method, ErosionDilationMethod):
        return tau_erosion_dilation(f, method.mu, impl)
    return background_obr(f, method.mu, impl)


def format_gain(gain: np.ndarray) -> str:
    return "".join(" ".join(f"{v:.6f}" for v in row) + "\n" for row in gain)


def write_background(bg, prefix: str) -> list[Path]:
    prefix = str(prefix)
    paths = [Path(prefix + "_tau.pgm"), Path(prefix + "_bg.pgm"), Path(prefix + "_gain.txt")]
    write_image(clamp_round(bg.tau), paths[0], "P5")
    write_image(bg.background, paths[1], "P5")
    paths[2].write_text(format_gain(bg.gain))
    return paths


def dump_intermediates(f: np.ndarray, method, bg, enhanced, stem: Path, impl: str) -> None:
    """Write the full panel set for one pipeline next to ``stem``."""
    mu = getattr(method, "mu", DEFAULT_PANEL_MU)
    panels = {
        "gray": f,
        "eroded": morph.erode(f, mu, impl),
        "dilated": morph.dilate(f, mu, impl),
        "opened": morph.open(f, mu, impl),
        "closed": morph.close(f, mu, impl),
        "tau": clamp_round(bg.tau),
        "background": bg.background,
    }
    if enhanced is not None:
        panels["enhanced"] = enhanced
    for name, img in panels.items():
        write_image(img, stem.with_name(f"{stem.name}_{name}.pgm"), "P5")


def _out_stem(path) -> Path:
    path = Path(path)
    return path.with_suffix("") if path.suffix else path


def cmd_morph(args) -> int:
    img = read_image(args.input)
    start = time.perf_counter()
    out = run_morph(img, args.op, args.mu, args.impl)
    elapsed = (time.perf_counter() - start) * 1000
    write_image(out, args.output)
    h, w = out.shape
    log.info("op=%s mu=%d impl=%s size=%dx%d elapsed_ms=%.3f", args.op, args.mu, args.impl, w, h, elapsed)
    return 0


def cmd_background(args) -> int:
    method = make_method(args)
    f = _gray_input(read_image(args.input))
    bg = compute_background(f, method, args.impl)
    for path in write_background(bg, args.out_prefix):
        log.info("wrote %s", path)
    if args.dump_intermediates:
        dump_intermediates(f, method, bg, None, Path(args.out_prefix), args.impl)
    return 0


def cmd_enhance(args) -> int:
    method = make_method(args)
    img = read_image(args.input)
    out, values = enhance(img, method, args.impl)
    write_image(out, args.output)
    stats = comparison(image_stats(img), image_stats(out, values))
    print(format_stats(stats, as_json=args.json))
    if args.dump_intermediates:
        f = _gray_input(img)
        bg = compute_background(f, method, args.impl)
        gray_out, _ = enhance(f, method, args.impl)
        dump_intermediates(f, method, bg, gray_out, _out_stem(args.output), args.impl)
    return 0


def cmd_bench(args) -> int:
    rng = np.random.default_rng(args.seed)
    print("op,impl,size,mu,rep,millis")
    for size in args.size:
        img = rng.integers(0, 256, (size, size), dtype=np.uint8)
        for mu in args.mu_list:
            for impl in args.impl:
                for op in BENCH_OPS:
                    fn = MORPH_OPS[op]
                    for rep in range(args.reps):
                        start = time.perf_counter()
                        fn(img, mu, impl)
                        millis = (time.perf_counter() - start) * 1000
                        print(f"{op},{impl},{size},{mu},{rep},{millis:.3f}")
    return 0


def cmd_stats(args) -> int:
    stats = stats_dict(image_stats(read_image(args.input)), with_histogram=args.json)
    print(format_stats(stats, as_json=args.json))
    return 0


def cmd_equalize(args) -> int:
    write_image(histogram_equalize(_gray_input(read_image(args.input))), args.output)
    return 0


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _positive_list(text: str) -> list[int]:
    values = _int_list(text)
    if min(values) < 1:
        raise argparse.ArgumentTypeError("sizes must be >= 1")
    return values


def _mu_list(text: str) -> list[int]:
    values = _int_list(text)
    if min(values) < 0:
        raise argparse.ArgumentTypeError("mu values must be >= 0")
    return values


def _impl_list(text: str) -> list[str]:
    values = [v.strip() for v in text.split(",") if v.strip()]
    bad = [v for v in values if v not in morph.IMPLS]
    if bad or not values:
        raise argparse.ArgumentTypeError(f"impl must be drawn from {morph.IMPLS}, got {text!r}")
    return values


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_method_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", required=True, choices=("block", "ed", "obr"))
    p.add_argument("--block-w", type=_positive)
    p.add_argument("--block-h", type=_positive)
    p.add_argument("--mu", type=_non_negative)
    p.add_argument("--impl", choices=morph.IMPLS, default="separable")
    p.add_argument("--dump-intermediates", action="store_true",
                   help="also write gray/eroded/dilated/opened/closed/tau/background panels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morphenhance", description=__doc__.split("\n")[0])
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress stderr logs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("morph", help="apply one morphological operator")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--op", required=True, choices=tuple(MORPH_OPS))
    p.add_argument("--mu", required=True, type=_non_negative)
    p.add_argument("--impl", choices=morph.IMPLS, default="separable")
    p.set_defaults(func=cmd_morph)

    p = sub.add_parser("background", help="detect background criterion and parameter")
    p.add_argument("input")
    p.add_argument("out_prefix")
    _add_method_args(p)
    p.set_defaults(func=cmd_background)

    p = sub.add_parser("enhance", help="Weber contrast enhancement")
    p.add_argument("input")
    p.add_argument("output")
    _add_method_args(p)
    p.add_argument("--json", action="store_true", help="print stats as a JSON object")
    p.set_defaults(func=cmd_enhance)

    p = sub.add_parser("bench", help="time naive vs separable kernels (CSV on stdout)")
    p.add_argument("--size", type=_positive_list, required=True)
    p.add_argument("--mu-list", type=_mu_list, required=True)
    p.add_argument("--impl", type=_impl_list, default=list(morph.IMPLS))
    p.add_argument("--reps", type=_positive, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="print image statistics")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("equalize", help="histogram-equalization baseline")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_equalize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (CodecError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
