"""Command-line interface.

Subcommands: synth, estimate-noise, filter, distort, recon, features,
assess, report. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import TexnoiseError
from ..filtering import FilterConfig, adaptive_filter, distort, residual
from ..noise import NoiseFamily, identify
from ..raster import Raster, RoiSpec, extract_roi, read_pgm, write_pgm
from ..recon import RECON_FILTERS, ScanGeometry, fbp, forward_project, write_sinogram_text
from ..texture import METHODS, GrayQuant, all_features
from .config import RunConfig, load_config
from .run import run_assessment
from .synth import TEXTURE_KINDS, SyntheticSpec, generate_synthetic

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage problems; this CLI reserves 2 for data
    errors, so usage failures (including the offending token) exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _roi_arg(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected X,Y,SIDE, got {text!r}")
    try:
        x, y, side = (int(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers X,Y,SIDE, got {text!r}") from exc
    return x, y, side


def _range_arg(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return float(parts[0]), float(parts[1])


def build_parser() -> _Parser:
    parser = _Parser(prog="texnoise",
                     description="Assess texture measures' susceptibility to "
                                 "acquisition noise in CT-like images.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("synth", help="generate a synthetic corpus + manifest")
    p.add_argument("--config", help="run configuration file")
    p.add_argument("--out", required=True, help="corpus output directory")
    p.add_argument("--cases", type=int, default=56, help="number of cases (default 56)")
    p.add_argument("--noise-family", choices=[f.value for f in NoiseFamily],
                   default="gaussian", help="injected noise family")
    p.add_argument("--texture", choices=TEXTURE_KINDS, default="blend",
                   help="tumour texture generator")
    p.add_argument("--image-size", type=int, default=128, help="square image side")
    p.add_argument("--roi-side", type=int, default=32, help="ROI side in pixels")
    p.add_argument("--mu-range", type=_range_arg, default=(7.2, 25.1),
                   help="noise mean range LO,HI")
    p.add_argument("--sigma2-range", type=_range_arg, default=(7.5, 86.8),
                   help="noise variance range LO,HI")
    p.add_argument("--seed", type=int, default=None, help="overrides config seed")

    p = sub.add_parser("estimate-noise", help="identify the noise family in a region")
    p.add_argument("image", help="PGM image")
    p.add_argument("--config", help="run configuration file")
    p.add_argument("--roi", type=_roi_arg, required=True,
                   help="background region as X,Y,SIDE")
    p.add_argument("--bins", type=int, default=None,
                   help="histogram bins (default from config, 64)")

    p = sub.add_parser("filter", help="adaptive noise filtering")
    p.add_argument("image", help="input PGM image")
    p.add_argument("output", help="filtered PGM image")
    p.add_argument("--config", help="run configuration file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--noise-variance", type=float, help="known noise variance")
    group.add_argument("--noise-roi", type=_roi_arg,
                       help="estimate the variance from this X,Y,SIDE region")
    p.add_argument("--window", type=int, default=None, help="odd window side (default 5)")
    p.add_argument("--no-clamp", action="store_true",
                   help="do not cap the shrink ratio at 1")
    p.add_argument("--residual", help="also write the removed noise (PGM around mid-gray)")

    p = sub.add_parser("distort", help="add an extracted noise field back onto an image")
    p.add_argument("image", help="original PGM image")
    p.add_argument("clean", help="filtered PGM image (noise = original - clean)")
    p.add_argument("output", help="distorted PGM image")
    p.add_argument("--config", help="run configuration file")

    p = sub.add_parser("recon", help="CT round trip: project then reconstruct")
    p.add_argument("image", help="input PGM image")
    p.add_argument("output", help="reconstructed PGM image")
    p.add_argument("--config", help="run configuration file")
    p.add_argument("--recon-angles", type=int, default=None,
                   help="projection count over 180 degrees (default 360)")
    p.add_argument("--recon-filter", choices=RECON_FILTERS, default=None,
                   help="reconstruction filter (default ramp)")
    p.add_argument("--sinogram", help="also write the sinogram as a float text grid")

    p = sub.add_parser("features", help="print texture features for one ROI")
    p.add_argument("image", help="PGM image")
    p.add_argument("--config", help="run configuration file")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--roi", type=_roi_arg, required=True, help="region as X,Y,SIDE")

    p = sub.add_parser("assess", help="run the full susceptibility assessment")
    p.add_argument("--config", help="run configuration file")
    p.add_argument("--manifest", help="dataset manifest (overrides config)")
    p.add_argument("--out", help="output directory (overrides config)")
    p.add_argument("--seed", type=int, default=None, help="overrides config seed")
    p.add_argument("--workers", type=int, default=None, help="worker processes")
    p.add_argument("--recon", choices=("none", "fbp"), default=None,
                   help="skip or run the reconstruction stage")
    p.add_argument("--recon-angles", type=int, default=None)
    p.add_argument("--recon-filter", choices=RECON_FILTERS, default=None)

    p = sub.add_parser("report", help="render figures from an assess output dir")
    p.add_argument("output_dir", help="directory holding the assess CSVs")
    p.add_argument("--config", help="run configuration file")
    return parser


def _config_from(args) -> RunConfig:
    if getattr(args, "config", None):
        return load_config(args.config)
    return RunConfig()


def _cmd_synth(args) -> int:
    cfg = _config_from(args)
    seed = args.seed if args.seed is not None else cfg.seed
    spec = SyntheticSpec(
        n_cases=args.cases,
        texture_kind=args.texture,
        noise_family=NoiseFamily(args.noise_family),
        mu_range=args.mu_range,
        sigma2_range=args.sigma2_range,
        seed=seed,
        image_size=args.image_size,
        roi_side=args.roi_side,
    )
    manifest = generate_synthetic(spec, args.out)
    print(manifest)
    return 0


def _cmd_estimate_noise(args) -> int:
    cfg = _config_from(args)
    bins = args.bins if args.bins is not None else cfg.noise_bins
    img = read_pgm(args.image)
    x, y, side = args.roi
    roi = RoiSpec(x, y, side)
    est = identify(extract_roi(img, roi), bins=bins, roi=roi)
    sys.stdout.write(est.to_text())
    return 0


def _cmd_filter(args) -> int:
    cfg = _config_from(args)
    img = read_pgm(args.image)
    if args.noise_variance is not None:
        variance = args.noise_variance
    else:
        x, y, side = args.noise_roi
        variance = identify(extract_roi(img, RoiSpec(x, y, side))).sigma2
    window = args.window if args.window is not None else cfg.filter_window
    fcfg = FilterConfig(window=window, noise_variance=variance,
                        clamp_ratio=not args.no_clamp)
    clean = adaptive_filter(img, fcfg)
    write_pgm(clean, args.output)
    if args.residual:
        eta = residual(img, clean)
        mid = float(1 << (img.depth - 1))
        write_pgm(Raster(eta.data + mid, depth=img.depth), args.residual)
    return 0


def _cmd_distort(args) -> int:
    img = read_pgm(args.image)
    clean = read_pgm(args.clean)
    eta = residual(img, clean)
    write_pgm(distort(img, eta), args.output)
    return 0


def _cmd_recon(args) -> int:
    cfg = _config_from(args)
    angles = args.recon_angles if args.recon_angles is not None else cfg.recon_angles
    filter_name = args.recon_filter if args.recon_filter is not None else cfg.recon_filter
    img = read_pgm(args.image)
    geom = ScanGeometry(n_angles=angles, detector_spacing=cfg.detector_spacing)
    sino = forward_project(img, geom)
    for warning in sino.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if args.sinogram:
        write_sinogram_text(sino, args.sinogram)
    rec = fbp(sino, filter_name=filter_name)
    h, w = img.data.shape
    r0 = (sino.image_size - h) // 2
    c0 = (sino.image_size - w) // 2
    write_pgm(Raster(rec.data[r0:r0 + h, c0:c0 + w], depth=img.depth), args.output)
    return 0


def _cmd_features(args) -> int:
    cfg = _config_from(args)
    img = read_pgm(args.image)
    x, y, side = args.roi
    roi = extract_roi(img, RoiSpec(x, y, side))
    fv = all_features(roi, cm_levels=cfg.cm_levels, rlm_levels=cfg.rlm_levels,
                      wavelet=cfg.wavelet, fd_window=cfg.fd_window)[args.method]
    case_id = Path(args.image).stem
    for name, value in zip(fv.names, fv.values):
        print(f"{case_id},original,{fv.method},{name},{value!r}")
    return 0


def _cmd_assess(args) -> int:
    cfg = _config_from(args)
    if args.manifest is not None:
        cfg.manifest = args.manifest
    if args.out is not None:
        cfg.output_dir = args.out
    if args.seed is not None:
        cfg.seed = args.seed
    if args.workers is not None:
        cfg.workers = args.workers
    if args.recon is not None:
        cfg.recon_mode = args.recon
    if args.recon_angles is not None:
        cfg.recon_angles = args.recon_angles
    if args.recon_filter is not None:
        cfg.recon_filter = args.recon_filter
    report = run_assessment(cfg)
    print(f"reports written to {cfg.output_dir}")
    print("ranking (original vs clean):  " + " < ".join(report.ranking_clean))
    print("ranking (original vs noisy):  " + " < ".join(report.ranking_noisy))
    return 0


def _cmd_report(args) -> int:
    from .report import render_report

    for path in render_report(args.output_dir):
        print(path)
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "estimate-noise": _cmd_estimate_noise,
    "filter": _cmd_filter,
    "distort": _cmd_distort,
    "recon": _cmd_recon,
    "features": _cmd_features,
    "assess": _cmd_assess,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_help(sys.stderr)
        return USAGE_EXIT
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse raises SystemExit(0) for --help
        return int(exc.code or 0)
    if args.command is None:
        parser.print_help(sys.stderr)
        return USAGE_EXIT
    try:
        return _COMMANDS[args.command](args)
    except (TexnoiseError, OSError) as exc:
        print(f"texnoise {args.command}: error: {exc}", file=sys.stderr)
        return DATA_EXIT


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
