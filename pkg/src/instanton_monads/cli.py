"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import cohomology, moduli, monad
from .sampling import make_rng
from .serialization import (
    FormatError,
    dump_json,
    grass_point_from_json,
    load_json,
    matrices_from_json,
    matrix_from_json,
    monad_from_json,
    monad_to_json,
    rational_to_str,
    subspace_from_json,
    subspace_to_json,
)

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

COMMANDS = (
    "gen-u",
    "membership",
    "build-monad",
    "verify",
    "simplicity",
    "cohomology",
    "dim",
    "invariants",
    "stabilizer",
    "kernel-sections",
)


@dataclass
class RunConfig:
    command: str
    n: int = 1
    k: int = 1
    seed: int = 0
    trials: int = 16
    format: str = "text"
    input: str | None = None
    output: str | None = None
    g: str | None = None
    other: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise FormatError(f"unknown command {self.command!r}")
        if self.n < 1 or self.k < 1:
            raise FormatError("--n and --k must be at least 1")
        if self.trials < 1:
            raise FormatError("--trials must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise FormatError("--seed must be a 64-bit unsigned integer")
        if self.format not in ("json", "text"):
            raise FormatError("--format must be json or text")


def _need_input(cfg: RunConfig):
    if not cfg.input:
        raise FormatError(f"{cfg.command} needs --in")
    if not Path(cfg.input).is_file():
        raise FormatError(f"no such file: {cfg.input}")
    return load_json(cfg.input)


def _emit(cfg: RunConfig, payload: dict, text: str) -> str:
    return dump_json(payload) if cfg.format == "json" else text


def _cmd_gen_u(cfg):
    U = moduli.random_member_subspace(cfg.n, cfg.k, make_rng(cfg.seed), trials=cfg.trials)
    return EXIT_OK, dump_json(subspace_to_json(U))


def _cmd_membership(cfg):
    U = subspace_from_json(_need_input(cfg))
    verdict = moduli.membership(U, trials=cfg.trials, seed=cfg.seed)
    payload = {"member": verdict.is_member}
    if verdict.is_member:
        payload.update(mode=verdict.mode, trials=verdict.trials)
    else:
        if verdict.witness is not None:
            payload["witness"] = [rational_to_str(v) for v in verdict.witness.values]
        if verdict.certificate is not None:
            payload["certificate"] = [rational_to_str(c) for c in verdict.certificate.coeffs]
    code = EXIT_OK if verdict.is_member else EXIT_FAILED
    return code, _emit(cfg, payload, verdict.describe())


def _cmd_build_monad(cfg):
    U = subspace_from_json(_need_input(cfg))
    g = None
    if cfg.g:
        g = matrix_from_json(load_json(cfg.g))
    try:
        M = monad.build_monad(U, g)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return EXIT_OK, dump_json(monad_to_json(M))


def _cmd_verify(cfg):
    M = monad_from_json(_need_input(cfg))
    report = monad.verify_monad(M, samples=cfg.trials, seed=cfg.seed)
    text = "\n".join(
        [f"composition_zero={str(report.composition_zero).lower()}",
         f"p_surjective_sampled={str(report.p_surjective_sampled).lower()}",
         f"i_injective_sampled={str(report.i_injective_sampled).lower()}",
         f"samples={report.samples}"]
        + report.failures
    )
    return (EXIT_OK if report.ok else EXIT_FAILED), _emit(cfg, report.as_dict(), text)


def _cmd_simplicity(cfg):
    M = monad_from_json(_need_input(cfg))
    other = monad_from_json(load_json(cfg.other)) if cfg.other else M
    try:
        dim = monad.hom_space_dim(M, other)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return (EXIT_OK if dim == 1 else EXIT_FAILED), _emit(cfg, {"hom_dim": dim}, str(dim))


def _cmd_cohomology(cfg):
    table = cohomology.natural_cohomology_table(cfg.n, cfg.k)
    payload = {"n": cfg.n, "k": cfg.k, "table": table.to_json()}
    return EXIT_OK, _emit(cfg, payload, table.format_text())


def _cmd_dim(cfg):
    d = moduli.moduli_dimension(cfg.n, cfg.k)
    payload = {"dimension": d.total, "fiber": d.fiber, "base": d.base}
    text = f"{d.total}\nfiber {d.fiber} (Grassmannian) + base {d.base} (coordinate identifications)"
    return EXIT_OK, _emit(cfg, payload, text)


def _cmd_invariants(cfg):
    mats = matrices_from_json(_need_input(cfg))
    if len(mats) not in (2, 4):
        raise FormatError("invariants needs 2 or 4 matrices")
    try:
        inv = moduli.trace_invariants_pair(*mats) if len(mats) == 2 else moduli.x1_invariants(mats)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    values = [rational_to_str(x) for x in inv]
    return EXIT_OK, _emit(cfg, {"invariants": values}, " ".join(str(x) for x in inv))


def _cmd_stabilizer(cfg):
    P = grass_point_from_json(_need_input(cfg))
    dim = moduli.stabilizer_dim(P)
    return EXIT_OK, _emit(cfg, {"stabilizer_dim": dim}, str(dim))


def _cmd_kernel_sections(cfg):
    M = monad_from_json(_need_input(cfg))
    dim, _ = monad.kernel_sections(M)
    expected = 2 * M.n + M.k + 1
    payload = {"dimension": dim, "expected": expected}
    return (EXIT_OK if dim == expected else EXIT_FAILED), _emit(cfg, payload, str(dim))


_DISPATCH = {
    "gen-u": _cmd_gen_u,
    "membership": _cmd_membership,
    "build-monad": _cmd_build_monad,
    "verify": _cmd_verify,
    "simplicity": _cmd_simplicity,
    "cohomology": _cmd_cohomology,
    "dim": _cmd_dim,
    "invariants": _cmd_invariants,
    "stabilizer": _cmd_stabilizer,
    "kernel-sections": _cmd_kernel_sections,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns the exit code and the report text."""
    log.debug("running %s", cfg.command)
    try:
        cfg.validate()
        code, report = _DISPATCH[cfg.command](cfg)
    except (FormatError, OSError) as exc:
        return EXIT_INPUT, f"error: {exc}"
    if cfg.output:
        Path(cfg.output).write_text(report + "\n")
    return code, report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=16)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--in", dest="input")
    common.add_argument("--out", dest="output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="instanton-monads",
        description="Special instanton monads on P^(2n+1) with exact rational arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "build-monad":
            p.add_argument("--g", help="JSON file with an invertible (2n+2)x(2n+2) matrix")
        if name == "simplicity":
            p.add_argument("--other", help="second monad; defaults to the --in monad")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        k=args.k,
        seed=args.seed,
        trials=args.trials,
        format=args.format,
        input=args.input,
        output=args.output,
        g=getattr(args, "g", None),
        other=getattr(args, "other", None),
    )
    code, report = run(cfg)
    stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    if not cfg.output or code == EXIT_INPUT:
        print(report, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
