"""Command-line front end: every computation as a subcommand, serialized to
deterministic CSV/JSON with a reproducibility manifest per output file.

Complex flags use the polar form "mag:phase" (radians, canonical in
manifests); the cartesian form "re,im" is also accepted.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .distinguish import (
    DistinguishabilityCriterion,
    TABLE_ALPHA_MIN,
    TABLE_N,
    calibrate_criterion,
    calibration_residuals,
    min_alpha,
    nu_estimate,
)
from .io import RunManifest, fmt, write_data_csv, write_data_json, write_manifest
from .overlap import (
    DEVIATION_KINDS,
    asymptotic_overlap,
    cat2_phase_shifted_fringe,
    cosine_double_sum,
    deviation_scan,
    diagonal_approx_overlap,
    exact_overlap,
    surface_scan,
)
from .phasespace import COVERAGE_MARGIN, GridSpec, husimi_q, wigner
from .states import CatState, Displacement, Normalization, components
from .verify import SUITES, run_suites

_SERIES_COLUMNS = [
    "delta_re",
    "delta_im",
    "delta_abs",
    "exact_re",
    "exact_im",
    "exact_sq",
    "diagonal",
    "bessel",
    "deviation",
]
_FIELD_COLUMNS = ["x", "p", "value"]


def _parse_complex(text: str, flag: str) -> complex:
    try:
        if ":" in text:
            mag, _, phase = text.partition(":")
            return float(mag) * cmath.exp(1j * float(phase))
        if "," in text:
            re, _, im = text.partition(",")
            return complex(float(re), float(im))
        return complex(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{flag} expects 'mag:phase' (radians) or 're,im', got {text!r}"
        )


def _canonical_complex(z: complex) -> str:
    return f"{abs(z):.17g}:{cmath.phase(z):.17g}"


def _parse_interval(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{flag} expects 'lo:hi', got {text!r}")
    return float(parts[0]), float(parts[1])


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError(
            f"--grid expects 'x0:x1:p0:p1:nx:np', got {text!r}"
        )
    x0, x1, p0, p1 = (float(v) for v in parts[:4])
    nx, npts = int(parts[4]), int(parts[5])
    try:
        return GridSpec(x_range=(x0, x1), p_range=(p0, p1), nx=nx, np=npts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _series_rows(series):
    for rec in series.records:
        yield (
            rec.delta.real,
            rec.delta.imag,
            abs(rec.delta),
            rec.exact.real,
            rec.exact.imag,
            rec.exact_sq,
            rec.diagonal,
            rec.bessel,
            rec.deviation,
        )


def _field_rows(field):
    xs = field.spec.x_coords()
    ps = field.spec.p_coords()
    for i, x in enumerate(xs):
        for j, p in enumerate(ps):
            yield (float(x), float(p), float(field.values[i, j]))


def _emit(args, manifest: RunManifest, kind: str, columns, rows) -> None:
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        write_data_csv(out, columns, rows)
    else:
        write_data_json(out, manifest, kind, columns, rows)
    write_manifest(out, manifest)


def _cat_from_args(args) -> CatState:
    normalization = Normalization(args.normalization)
    return CatState(n=args.n, alpha=args.alpha, normalization=normalization)


def _add_common_output_flags(sub, default_format="csv"):
    sub.add_argument("--out", required=True, help="output data file")
    sub.add_argument(
        "--format", choices=("csv", "json"), default=default_format,
        help="output format (default %(default)s)",
    )
    sub.add_argument(
        "--jobs", type=int, default=None,
        help="parallel worker cap; evaluation is vectorized in-process and "
        "output order is deterministic regardless (default: all cores)",
    )


def _add_normalization_flag(sub):
    sub.add_argument(
        "--normalization", choices=("exact", "unit"), default="exact",
        help="'exact' includes cross terms in the state norm; 'unit' keeps "
        "the bare 1/sqrt(n) prefactor (default %(default)s)",
    )


def _validate_jobs(parser, args):
    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        parser.error("--jobs must be >= 1")


def cmd_overlap_scan(parser, args) -> int:
    _validate_jobs(parser, args)
    if args.samples < 2:
        parser.error("--samples must be >= 2")
    if args.delta_max <= 0:
        parser.error("--delta-max must be > 0")
    cat = _cat_from_args(args)
    series = deviation_scan(
        cat, args.direction, args.delta_max, args.samples, args.deviation_kind
    )
    manifest = RunManifest(
        command="overlap-scan",
        parameters={
            "n": args.n,
            "alpha": _canonical_complex(args.alpha),
            "direction": fmt(args.direction),
            "delta_max": fmt(args.delta_max),
            "samples": args.samples,
            "deviation_kind": args.deviation_kind,
            "normalization": args.normalization,
            "format": args.format,
        },
        tool_version=__version__,
        normalization_mode=args.normalization,
        warnings=series.warnings,
    )
    _emit(args, manifest, "series", _SERIES_COLUMNS, _series_rows(series))
    return 0


def cmd_surface(parser, args) -> int:
    _validate_jobs(parser, args)
    if args.resolution < 2:
        parser.error("--resolution must be >= 2")
    if args.re_range[1] <= args.re_range[0] or args.im_range[1] <= args.im_range[0]:
        parser.error("ranges must be increasing 'lo:hi' intervals")
    cat = _cat_from_args(args)
    series = surface_scan(
        cat, args.re_range, args.im_range, args.resolution, args.deviation_kind
    )
    manifest = RunManifest(
        command="surface",
        parameters={
            "n": args.n,
            "alpha": _canonical_complex(args.alpha),
            "re_range": f"{fmt(args.re_range[0])}:{fmt(args.re_range[1])}",
            "im_range": f"{fmt(args.im_range[0])}:{fmt(args.im_range[1])}",
            "resolution": args.resolution,
            "deviation_kind": args.deviation_kind,
            "normalization": args.normalization,
            "format": args.format,
        },
        tool_version=__version__,
        normalization_mode=args.normalization,
        warnings=series.warnings,
    )
    _emit(args, manifest, "series", _SERIES_COLUMNS, _series_rows(series))
    return 0


def _resolve_field_cat(parser, args) -> tuple[CatState, dict]:
    extra: dict = {}
    if args.critical:
        record = min_alpha(args.n, DistinguishabilityCriterion.chord(args.tau))
        alpha = complex(record.alpha_min)
        extra = {
            "critical": True,
            "tau": fmt(args.tau),
            "frontier_alpha": fmt(record.alpha_min),
            "ring_radius": fmt(record.ring_radius),
        }
    elif args.alpha is not None:
        alpha = args.alpha
    else:
        parser.error("either --alpha or --critical is required")
    normalization = Normalization(args.normalization)
    return CatState(n=args.n, alpha=alpha, normalization=normalization), extra


def _field_command(parser, args, kind: str) -> int:
    _validate_jobs(parser, args)
    cat, extra = _resolve_field_cat(parser, args)
    spec = args.grid if args.grid is not None else GridSpec.covering(components(cat))
    warnings = []
    if not spec.covers(components(cat)):
        warnings.append(
            f"grid margin below {COVERAGE_MARGIN:g} phase-space units around the "
            "components; norm estimate may be unreliable"
        )
    field = husimi_q(cat, spec) if kind == "qfunc" else wigner(cat, spec)
    params = {
        "n": args.n,
        "alpha": _canonical_complex(cat.alpha),
        "grid": (
            f"{fmt(spec.x_range[0])}:{fmt(spec.x_range[1])}:"
            f"{fmt(spec.p_range[0])}:{fmt(spec.p_range[1])}:{spec.nx}:{spec.np}"
        ),
        "normalization": args.normalization,
        "format": args.format,
        "norm_estimate": fmt(field.norm_estimate),
    }
    params.update(extra)
    manifest = RunManifest(
        command=kind,
        parameters=params,
        tool_version=__version__,
        normalization_mode=args.normalization,
        warnings=tuple(warnings),
    )
    _emit(args, manifest, "field", _FIELD_COLUMNS, _field_rows(field))
    return 0


def cmd_table1(parser, args) -> int:
    _validate_jobs(parser, args)
    n_list = args.n_list
    if args.calibrate:
        criterion = calibrate_criterion(zip(TABLE_N, TABLE_ALPHA_MIN))
        residuals = calibration_residuals(
            zip(TABLE_N, TABLE_ALPHA_MIN), criterion
        )
    else:
        criterion = DistinguishabilityCriterion.chord(args.tau)
        residuals = None
    records = [min_alpha(n, criterion) for n in n_list]
    ratios = [r.ratio for r in records]
    rows = [
        (r.n, r.alpha_min, f"{r.alpha_min:.1f}", r.chord, r.ratio) for r in records
    ]
    params = {
        "n_list": ",".join(str(n) for n in n_list),
        "tau": fmt(criterion.chord_threshold),
        "calibrated": bool(args.calibrate),
        "nu_mean": fmt(nu_estimate(n_list, criterion)),
        "nu_max": fmt(max(ratios)),
        "format": args.format,
    }
    if residuals is not None:
        params["calibration_max_abs_residual"] = fmt(max(abs(r) for r in residuals))
    manifest = RunManifest(
        command="table1",
        parameters=params,
        tool_version=__version__,
        normalization_mode="exact",
        warnings=(),
    )
    _emit(
        args,
        manifest,
        "table",
        ["n", "alpha_min", "alpha_min_1dp", "chord", "ratio"],
        rows,
    )
    return 0


def cmd_vcz(parser, args) -> int:
    _validate_jobs(parser, args)
    if args.samples < 2:
        parser.error("--samples must be >= 2")
    if args.separation_max <= 0:
        parser.error("--separation-max must be > 0")
    if args.from_cat:
        if args.n is None or args.alpha is None:
            parser.error("--from-cat requires --n and --alpha")
        cat = CatState(n=args.n, alpha=args.alpha)
        ring_radius = cat.alpha_mag
        wavelength = math.pi
        screen_distance = 1.0
    else:
        if args.ring_radius is None or args.wavelength is None or args.screen_distance is None:
            parser.error(
                "--ring-radius, --wavelength and --screen-distance are required "
                "unless --from-cat is given"
            )
        if min(args.ring_radius, args.wavelength, args.screen_distance) <= 0:
            parser.error("physical parameters must be > 0")
        cat = None
        ring_radius = args.ring_radius
        wavelength = args.wavelength
        screen_distance = args.screen_distance
    from .overlap import vcz_mutual_coherence

    separations = np.linspace(0.0, args.separation_max, args.samples)
    columns = ["separation", "coherence", "overlap_limit"]
    if cat is not None:
        columns.append("exact_abs")
    rows = []
    perp = cmath.exp(1j * (cat.alpha_angle + math.pi / 2)) if cat is not None else None
    for d in separations:
        coherence = vcz_mutual_coherence(ring_radius, float(d), wavelength, screen_distance)
        # same J0 through the quantum mapping |alpha| = r0, |delta| = pi d/(lambda R)
        limit = asymptotic_overlap(
            ring_radius, float(d) * math.pi / (wavelength * screen_distance)
        ) if cat is None else asymptotic_overlap(cat.alpha_mag, float(d))
        row = [float(d), coherence, limit]
        if cat is not None:
            row.append(abs(exact_overlap(cat, float(d) * perp)))
        rows.append(tuple(row))
    params = {
        "ring_radius": fmt(float(ring_radius)),
        "wavelength": fmt(float(wavelength)),
        "screen_distance": fmt(float(screen_distance)),
        "separation_max": fmt(args.separation_max),
        "samples": args.samples,
        "from_cat": bool(args.from_cat),
        "format": args.format,
    }
    if cat is not None:
        params["n"] = cat.n
        params["alpha"] = _canonical_complex(cat.alpha)
        params["direction"] = fmt(cat.alpha_angle + math.pi / 2)
    manifest = RunManifest(
        command="vcz",
        parameters=params,
        tool_version=__version__,
        normalization_mode="exact",
        warnings=(),
    )
    _emit(args, manifest, "comparison", columns, rows)
    return 0


def cmd_fringe_shift(parser, args) -> int:
    _validate_jobs(parser, args)
    if args.samples < 2:
        parser.error("--samples must be >= 2")
    if args.alpha_mag <= 0:
        parser.error("--alpha must be > 0")
    cat = CatState(
        n=2, alpha=complex(args.alpha_mag), component_phases=(0.0, args.phi)
    )
    mags = np.linspace(0.0, args.delta_max, args.samples)
    rows = []
    for m in mags:
        disp = Displacement.from_polar(float(m), args.direction, reference_angle=0.0)
        formula = cat2_phase_shifted_fringe(args.alpha_mag, args.phi, disp)
        exact_sq = abs(exact_overlap(cat, disp)) ** 2
        rows.append((float(m), formula, exact_sq, formula - exact_sq))
    manifest = RunManifest(
        command="fringe-shift",
        parameters={
            "alpha": fmt(args.alpha_mag),
            "phi": fmt(args.phi),
            "direction": fmt(args.direction),
            "delta_max": fmt(args.delta_max),
            "samples": args.samples,
            "format": args.format,
        },
        tool_version=__version__,
        normalization_mode="exact",
        warnings=(
            "the closed-form shifted fringe is not reproduced by the exact "
            "overlap of the phased state; both columns are emitted for "
            "comparison",
        ),
    )
    _emit(
        args,
        manifest,
        "comparison",
        ["delta_abs", "shifted_fringe", "exact_sq", "difference"],
        rows,
    )
    return 0


def cmd_cosine_sum(parser, args) -> int:
    cat = CatState(n=args.n, alpha=args.alpha)
    value = cosine_double_sum(cat, args.delta, envelope=not args.no_envelope)
    diagonal = diagonal_approx_overlap(cat, args.delta, envelope=not args.no_envelope)
    payload = {
        "n": args.n,
        "alpha": _canonical_complex(args.alpha),
        "delta": _canonical_complex(args.delta),
        "envelope": not args.no_envelope,
        "cosine_double_sum": fmt(value),
        "diagonal": fmt(diagonal),
        "note": (
            "the all-pairs cosine form is unnormalized and equals n at zero "
            "displacement; 'diagonal' is the properly normalized reduction"
        ),
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_verify(parser, args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    results, ok = run_suites(names, seed=args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.suite:<11} {r.name:<{width}}  {r.detail}")
    print(f"{'OK' if ok else 'FAILED'}: {sum(r.passed for r in results)}/{len(results)} checks passed (seed={args.seed})")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catoverlap",
        description=(
            "Overlap functions between circular coherent-state superpositions "
            "and their displaced copies, phase-space fields, and the "
            "distinguishability frontier."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser(
        "overlap-scan", help="overlap along a displacement ray, with references"
    )
    scan.add_argument("--n", type=int, required=True)
    scan.add_argument(
        "--alpha", type=lambda s: _parse_complex(s, "--alpha"), required=True
    )
    scan.add_argument("--direction", type=float, default=0.0,
                      help="theta_delta in radians (default %(default)s)")
    scan.add_argument("--delta-max", type=float, required=True)
    scan.add_argument("--samples", type=int, required=True)
    scan.add_argument("--deviation-kind", choices=DEVIATION_KINDS, default="re")
    _add_normalization_flag(scan)
    _add_common_output_flags(scan)

    surf = sub.add_parser("surface", help="overlap over a complex-delta grid")
    surf.add_argument("--n", type=int, required=True)
    surf.add_argument(
        "--alpha", type=lambda s: _parse_complex(s, "--alpha"), required=True
    )
    surf.add_argument(
        "--re-range", type=lambda s: _parse_interval(s, "--re-range"), required=True
    )
    surf.add_argument(
        "--im-range", type=lambda s: _parse_interval(s, "--im-range"), required=True
    )
    surf.add_argument("--resolution", type=int, default=121)
    surf.add_argument("--deviation-kind", choices=DEVIATION_KINDS, default="re")
    _add_normalization_flag(surf)
    _add_common_output_flags(surf)

    for name, help_text in (
        ("qfunc", "Husimi-Q field on a phase-space grid"),
        ("wigner", "Wigner field on a phase-space grid"),
    ):
        fld = sub.add_parser(name, help=help_text)
        fld.add_argument("--n", type=int, required=True)
        fld.add_argument("--alpha", type=lambda s: _parse_complex(s, "--alpha"))
        if name == "qfunc":
            fld.add_argument(
                "--critical", action="store_true",
                help="use the frontier alpha for n (just-touching components)",
            )
            fld.add_argument("--tau", type=float, default=3.1,
                             help="chord threshold for --critical (default %(default)s)")
        fld.add_argument(
            "--grid", type=_parse_grid, default=None,
            help="'x0:x1:p0:p1:nx:np'; default covers the components +/- 5 units "
            "at 512x512",
        )
        _add_normalization_flag(fld)
        _add_common_output_flags(fld)

    tbl = sub.add_parser("table1", help="minimum-alpha frontier table and ratio summary")
    tbl.add_argument(
        "--n-list", type=lambda s: [int(v) for v in s.split(",")],
        default=list(TABLE_N),
        help="comma-separated n values (default: the built-in 13-row list)",
    )
    tbl.add_argument("--tau", type=float, default=3.1)
    tbl.add_argument(
        "--calibrate", action="store_true",
        help="fit tau to the built-in reference pairs instead of using --tau",
    )
    _add_common_output_flags(tbl)

    vcz = sub.add_parser(
        "vcz", help="ring-source coherence vs the large-n overlap limit"
    )
    vcz.add_argument("--ring-radius", type=float)
    vcz.add_argument("--wavelength", type=float)
    vcz.add_argument("--screen-distance", type=float)
    vcz.add_argument("--separation-max", type=float, required=True)
    vcz.add_argument("--samples", type=int, required=True)
    vcz.add_argument(
        "--from-cat", action="store_true",
        help="derive the ring source from a cat state (--n, --alpha; "
        "wavelength pi, screen distance 1) and append the exact overlap",
    )
    vcz.add_argument("--n", type=int)
    vcz.add_argument("--alpha", type=lambda s: _parse_complex(s, "--alpha"))
    _add_common_output_flags(vcz)

    fs = sub.add_parser(
        "fringe-shift",
        help="closed-form shifted fringe vs the exact overlap of the phased pair",
    )
    fs.add_argument("--alpha", dest="alpha_mag", type=float, required=True,
                    help="|alpha| of the antipodal pair")
    fs.add_argument("--phi", type=float, required=True,
                    help="relative coefficient phase (radians)")
    fs.add_argument("--direction", type=float, default=math.pi / 2)
    fs.add_argument("--delta-max", type=float, default=0.3)
    fs.add_argument("--samples", type=int, default=61)
    _add_common_output_flags(fs)

    cs = sub.add_parser(
        "cosine-sum",
        help="debug: unnormalized all-pairs cosine form next to the diagonal "
        "reduction (prints JSON to stdout)",
    )
    cs.add_argument("--n", type=int, required=True)
    cs.add_argument(
        "--alpha", type=lambda s: _parse_complex(s, "--alpha"), required=True
    )
    cs.add_argument(
        "--delta", type=lambda s: _parse_complex(s, "--delta"), required=True
    )
    cs.add_argument("--no-envelope", action="store_true")

    ver = sub.add_parser("verify", help="cross-module invariant suites")
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ver.add_argument("--seed", type=int, default=0)

    return parser


_HANDLERS = {
    "overlap-scan": cmd_overlap_scan,
    "surface": cmd_surface,
    "qfunc": lambda parser, args: _field_command(parser, args, "qfunc"),
    "wigner": lambda parser, args: _field_command(parser, args, "wigner"),
    "table1": cmd_table1,
    "vcz": cmd_vcz,
    "fringe-shift": cmd_fringe_shift,
    "cosine-sum": cmd_cosine_sum,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("wigner",):
        # field commands share a handler; wigner has no --critical
        args.critical = getattr(args, "critical", False)
        args.tau = getattr(args, "tau", 3.1)
    try:
        return _HANDLERS[args.command](parser, args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
