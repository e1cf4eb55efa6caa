"Analyse a pair of subspaces of C^n: principal angles, Jordan frames, spectra and numerical ranges."

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from jordanlens.config import configure_logging, load_settings
from jordanlens.equivalence import build_swap_unitary, decide_equivalent
from jordanlens.exceptions import JordanLensError
from jordanlens.exchange import emit_svg, format_matrix, parse_matrix_file, render_svg, write_matrix_file, write_region_csv
from jordanlens.models import OperatorKind, Subspace
from jordanlens.numrange import numerical_radius, product_range, sum_range
from jordanlens.principal import jordan_frames, principal_angles
from jordanlens.schemas import (
    SCHEMA_VERSION,
    AngleResponse,
    Command,
    DecompositionResponse,
    DiskResponse,
    OutputFormat,
    ProductRangeResponse,
    RunConfig,
)
from jordanlens.spectra import analytic_eigenpairs, build_operator, spectrum_deviation
from jordanlens.subspace import five_part_decompose, orthonormalize, projector_pair, synthesize_pair
from jordanlens.verification import InvariantSuite

__all__ = ["main", "run", "build_parser", "parse_matrix_file", "emit_svg"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _num(x: float) -> str:
    return f"{x:.12g}"


def _cnum(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return _num(z.real)
    return f"{_num(z.real)}{z.imag:+.12g}i"


def _angle(theta: Optional[float], degrees: bool) -> str:
    if theta is None:
        return "undefined"
    return _num(np.rad2deg(theta) if degrees else theta)


def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", help="Matrix files whose columns span the subspaces")
    common.add_argument("--tol", type=float, default=None, help="Classification tolerance (default $JORDANLENS_TOL or 1e-8)")
    common.add_argument("--samples", type=int, default=None, help="Ellipse samples and oracle directions")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("-o", "--output", default=None, help="File to write (prefix for random-pair)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)
    common.add_argument("--degrees", action="store_true", help="Print angles in degrees")
    common.add_argument("--workers", type=int, default=None, help="Threads for the support oracle")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(prog="jordanlens", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub = commands.add_parser(command.value, parents=[common])
        if command == Command.SPECTRUM:
            sub.add_argument("--kind", choices=[k.value for k in OperatorKind], default=OperatorKind.PQ.value)
        if command == Command.VERIFY:
            sub.add_argument("--corpus", type=int, default=None, help="Verify N seeded random pairs instead of a file pair")
        if command == Command.RANDOM_PAIR:
            sub.add_argument("--angles", type=_float_list, default=[])
            for block in "abcd":
                sub.add_argument(f"--{block}", type=int, default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    settings = load_settings(tol=args.tol, samples=args.samples, workers=args.workers, log_level=args.log_level)
    configure_logging(settings.log_level)
    values = {
        "command": args.command,
        "inputs": args.inputs,
        "tol": settings.tol,
        "samples": settings.samples,
        "seed": args.seed,
        "output": args.output,
        "format": args.format,
        "degrees": args.degrees,
        "workers": settings.workers,
    }
    for name in ("kind", "corpus", "angles", "a", "b", "c", "d"):
        if hasattr(args, name):
            values[name] = getattr(args, name)
    return RunConfig(**values)


class Runner:
    """Dispatches one validated RunConfig; every handler returns an exit status"""

    def __init__(self, config: RunConfig, stdout=None):
        self.config = config
        self.stdout = stdout or sys.stdout

    def emit(self, text: str) -> None:
        if self.config.output:
            Path(self.config.output).write_text(text, encoding="utf-8")
            logger.info("wrote %s", self.config.output)
        else:
            self.stdout.write(text if text.endswith("\n") else text + "\n")

    def emit_json(self, payload: dict) -> None:
        self.emit(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2))

    @property
    def as_json(self) -> bool:
        return self.config.format == OutputFormat.JSON

    def load_pairs(self) -> List[Subspace]:
        return [orthonormalize(parse_matrix_file(path), self.config.tol) for path in self.config.inputs]

    def angles(self) -> int:
        M, N = self.load_pairs()
        dec = principal_angles(M, N, self.config.tol)
        if self.as_json:
            response = AngleResponse(
                angles=dec.angles.tolist(), dixmier_angle=dec.dixmier_angle, friedrichs_angle=dec.friedrichs_angle,
                n_zero=dec.n_zero, n_interior=dec.n_interior, n_right=dec.n_right,
            )
            self.emit(response.model_dump_json(indent=2))
            return EXIT_OK
        degrees = self.config.degrees
        lines = [f"theta_{k} = {_angle(theta, degrees)}" for k, theta in enumerate(dec.angles, start=1)]
        lines += [
            f"dixmier = {_angle(dec.dixmier_angle, degrees)}",
            f"friedrichs = {_angle(dec.friedrichs_angle, degrees)}",
            f"zero = {dec.n_zero}  interior = {dec.n_interior}  right = {dec.n_right}",
        ]
        self.emit("\n".join(lines))
        return EXIT_OK

    def decompose(self) -> int:
        M, N = self.load_pairs()
        five = five_part_decompose(M, N, self.config.tol)
        a, b, c, d, r = five.counts
        if self.as_json:
            response = DecompositionResponse(a=a, b=b, c=c, d=d, r=r, generic=five.is_generic,
                                             generalized_generic=five.is_generalized_generic)
            self.emit(response.model_dump_json(indent=2))
            return EXIT_OK
        n = M.ambient_dim
        self.emit("\n".join([
            f"dim(M∩N) = a = {a}",
            f"dim(M⊥∩N⊥) = b = {b}",
            f"dim(M∩N⊥) = c = {c}",
            f"dim(M⊥∩N) = d = {d}",
            f"dim R = 2r = {2 * r}",
            f"n = {n} = {a} + {b} + {c} + {d} + {2 * r}",
            f"generic = {five.is_generic}",
            f"generalized generic = {five.is_generalized_generic}",
        ]))
        return EXIT_OK

    def frames(self) -> int:
        M, N = self.load_pairs()
        frames = jordan_frames(principal_angles(M, N, self.config.tol), M, N)
        if self.as_json:
            self.emit_json({"frames": [
                {"theta": frame.theta, **{
                    name: [[z.real, z.imag] for z in getattr(frame, name)] for name in "uvst"
                }} for frame in frames
            ]})
            return EXIT_OK
        lines = []
        for k, frame in enumerate(frames, start=1):
            lines.append(f"frame {k}: theta = {_angle(frame.theta, self.config.degrees)}")
            for name in "uvst":
                lines.append(f"  {name} = [{' '.join(_cnum(z) for z in getattr(frame, name))}]")
        self.emit("\n".join(lines) if lines else "no interior angles")
        return EXIT_OK

    def equiv(self) -> int:
        M1, N1, M2, N2 = self.load_pairs()
        report = decide_equivalent((M1, N1), (M2, N2), self.config.tol)
        if self.as_json:
            self.emit_json(report.model_dump(mode="json"))
        else:
            lines = [f"{check.name}: {check.first} vs {check.second} {'ok' if check.passed else 'DIFFER'}"
                     for check in report.dim_checks]
            lines.append(f"angle deviation = {_num(report.angle_deviation)}")
            lines.append(f"equivalent = {report.equivalent}")
            self.emit("\n".join(lines))
        return EXIT_OK if report.equivalent else EXIT_FAILED

    def swap_unitary(self) -> int:
        M, N = self.load_pairs()
        unitary = build_swap_unitary(M, N, self.config.tol)
        if self.as_json:
            self.emit_json({"unitary": [[[z.real, z.imag] for z in row] for row in unitary]})
        else:
            self.emit(format_matrix(unitary))
        return EXIT_OK

    def spectrum(self) -> int:
        M, N = self.load_pairs()
        kind = self.config.kind
        five = five_part_decompose(M, N, self.config.tol)
        frames = jordan_frames(principal_angles(M, N, self.config.tol), M, N)
        operator = build_operator(kind, projector_pair(M, N))
        pairs = analytic_eigenpairs(kind, frames, five)
        deviation = spectrum_deviation(pairs, operator)
        if self.as_json:
            self.emit_json({
                "kind": kind.value,
                "eigenpairs": [{"value": [pair.value.real, pair.value.imag], "residual": pair.residual(operator)}
                               for pair in pairs],
                "spectrum_deviation": deviation,
            })
            return EXIT_OK
        lines = [f"kind = {kind.value}"]
        lines += [f"lambda_{k} = {_cnum(pair.value)}  residual = {pair.residual(operator):.3g}"
                  for k, pair in enumerate(pairs, start=1)]
        lines.append(f"spectrum deviation = {deviation:.3g}")
        self.emit("\n".join(lines))
        return EXIT_OK

    def numrange_sum(self) -> int:
        M, N = self.load_pairs()
        interval = sum_range(M, N, self.config.tol)
        if self.as_json:
            self.emit_json({**interval.model_dump(), "numerical_radius": interval.radius})
        else:
            self.emit(f"W(P+Q) = [{_num(interval.lo)}, {_num(interval.hi)}]\nw(P+Q) = {_num(interval.radius)}")
        return EXIT_OK

    def numrange_product(self) -> int:
        M, N = self.load_pairs()
        region = product_range(M, N, self.config.samples, self.config.tol)
        fmt = self.config.format
        if fmt == OutputFormat.CSV:
            if self.config.output:
                write_region_csv(region, self.config.output)
            else:
                self.stdout.write(write_region_csv(region))
        elif fmt == OutputFormat.SVG:
            if self.config.output:
                emit_svg(region, region.disks, self.config.output)
            else:
                self.stdout.write(render_svg(region, region.disks) + "\n")
        elif fmt == OutputFormat.JSON:
            response = ProductRangeResponse(
                vertices=[[z.real, z.imag] for z in region.vertices],
                disks=[DiskResponse(center_re=disk.center.real, center_im=disk.center.imag,
                                    semi_major=disk.semi_major, semi_minor=disk.semi_minor) for disk in region.disks],
                numerical_radius=numerical_radius(region),
            )
            self.emit(response.model_dump_json(indent=2))
        else:
            re_lo, re_hi, im_lo, im_hi = region.bounds
            lines = [f"disk {k}: center = {_num(disk.center.real)}  semi-axes = {_num(disk.semi_major)}, {_num(disk.semi_minor)}"
                     for k, disk in enumerate(region.disks, start=1)]
            lines += [f"segment [{_cnum(lo)}, {_cnum(hi)}]" for lo, hi in region.segments]
            lines += [f"point {_cnum(z)}" for z in region.points]
            lines += [
                f"vertices = {len(region.vertices)}",
                f"re in [{_num(re_lo)}, {_num(re_hi)}]  im in [{_num(im_lo)}, {_num(im_hi)}]",
                f"w(PQ) = {_num(numerical_radius(region))}",
            ]
            self.emit("\n".join(lines))
        return EXIT_OK

    def verify(self) -> int:
        suite = InvariantSuite(tol=self.config.tol, samples=self.config.samples, workers=self.config.workers)
        if self.config.corpus is not None:
            report = suite.run_corpus(self.config.corpus, seed=self.config.seed or 0)
        else:
            report = suite.run(*self.load_pairs())
        if self.as_json:
            self.emit(report.model_dump_json(indent=2))
        else:
            lines = [
                f"{'PASS' if check.passed else 'FAIL'} {check.name}: {check.value:.3g} (threshold {check.threshold:.3g})"
                + (f" [{check.detail}]" if check.detail and not check.passed else "")
                for check in report.checks
            ]
            lines.append(f"{report.pairs_checked} pair(s), {len(report.checks)} checks, {len(report.failures)} failed")
            self.emit("\n".join(lines))
        return EXIT_OK if report.passed else EXIT_FAILED

    def random_pair(self) -> int:
        config = self.config
        M, N = synthesize_pair(config.angles, config.a, config.b, config.c, config.d, seed=config.seed or 0)
        prefix = config.output or "pair"
        written = [write_matrix_file(S.basis, f"{prefix}_{name}.mat") for name, S in (("M", M), ("N", N))]
        self.stdout.write("\n".join(str(path) for path in written) + "\n")
        return EXIT_OK

    def dispatch(self) -> int:
        handler = getattr(self, self.config.command.value.replace("-", "_"))
        logger.info("running %s on %d input(s)", self.config.command.value, len(self.config.inputs))
        return handler()


def run(config: RunConfig, stdout=None) -> int:
    return Runner(config, stdout).dispatch()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = config_from_args(args)
        return run(config)
    except (JordanLensError, ValidationError, ValueError, OSError) as e:
        print(f"jordanlens: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
