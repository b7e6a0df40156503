"""Command-line interface.

Commands read a JSON surface configuration (see :mod:`qfsurface.config`)
and emit JSON, CSV, or SVG on stdout unless --output is given.  Exit codes:
0 success / checks passed, 1 a verification failed its tolerance, 2 bad
input.  Property-test subcommands seed their RNG from the QFS_SEED
environment variable (default 0).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .cocycles import darboux_residual, symplectic_gram
from .config import SchemaError, config_to_json, parse_config
from .limitset import cloud_to_csv, cloud_to_svg, limit_set
from .moebius import NotLoxodromic
from .schwarzian import (
    cocycle_check,
    exp_sample,
    moebius_sample,
    polynomial_sample,
    schwarzian_at,
)
from .surface import BranchFailure, DegenerateFN, UnknownGenerator, holonomy

__all__ = ["main"]


def _complex_json(z):
    return [float(z.real), float(z.imag)]


def _load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return parse_config(text)


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_holonomy(args):
    config = _load_config(args.config)
    graph = config.graph()
    rep = holonomy(graph, config.fn(graph))
    generators = {}
    for gen_id, name in enumerate(rep.presentation.generator_names, start=1):
        matrix = rep.images[gen_id].astype(complex)
        generators[name] = [[_complex_json(matrix[i, j]) for j in range(2)]
                            for i in range(2)]
    payload = {
        "genus": graph.genus,
        "generators": generators,
        "relator_residual": rep.relator_residual(),
        "marking": {
            label: rep.presentation.word_to_string(word)
            for label, word in sorted(rep.presentation.marking.items())
        },
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def _cmd_lengths(args):
    config = _load_config(args.config)
    graph = config.graph()
    rep = holonomy(graph, config.fn(graph))
    from .surface import complex_length_of_curve

    lengths = {}
    if args.word:
        word = rep.presentation.word_from_string(args.word)
        lengths[args.word] = _complex_json(complex_length_of_curve(rep, word))
    else:
        labels = [args.curve] if args.curve else graph.curve_labels
        for label in labels:
            if label not in rep.presentation.marking:
                raise SchemaError(f"no decomposition curve {label!r}")
            word = rep.curve_word(label)
            lengths[label] = _complex_json(complex_length_of_curve(rep, word))
    payload = {"lengths": lengths, "relator_residual": rep.relator_residual()}
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def _gram_payload(config):
    graph = config.graph()
    gram = symplectic_gram(graph, config.fn(graph), h=config.options["fd_step"])
    residual = darboux_residual(gram)
    n = gram.size // 2
    labels = [f"l:{c}" for c in graph.curve_labels] + \
             [f"tau:{c}" for c in graph.curve_labels]
    matrix = [[_complex_json(gram.matrix[i, j]) for j in range(2 * n)]
              for i in range(2 * n)]
    return gram, {
        "basis": labels,
        "matrix": matrix,
        "darboux_residual": residual,
        "raw_asymmetry": gram.raw_asymmetry,
        "fd_step": gram.fd_step,
    }


def _cmd_gram(args):
    config = _load_config(args.config)
    _gram, payload = _gram_payload(config)
    _emit(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def _cmd_darboux_check(args):
    config = _load_config(args.config)
    _gram, payload = _gram_payload(config)
    residual = payload["darboux_residual"]
    tol = config.options["tol"]
    passed = residual <= tol
    status = "PASS" if passed else "FAIL"
    sys.stdout.write(
        f"{status} darboux residual {residual:.3e} (tolerance {tol:.1e}, "
        f"fd_step {config.options['fd_step']:.1e})\n"
    )
    return 0 if passed else 1


def _cmd_twist(args):
    config = _load_config(args.config)
    try:
        re_part, im_part = (float(x) for x in args.t.split(","))
    except ValueError:
        raise SchemaError(f"--t expects 're,im', got {args.t!r}") from None
    moved = config.with_twist(args.curve, complex(re_part, im_part))
    _emit(config_to_json(moved), args.output)
    return 0


def _cmd_limitset(args):
    config = _load_config(args.config)
    graph = config.graph()
    rep = holonomy(graph, config.fn(graph))
    depth = args.depth if args.depth else config.options["word_length"]
    cloud = limit_set(rep, depth)
    if args.format == "csv":
        _emit(cloud_to_csv(cloud), args.output)
    else:
        _emit(cloud_to_svg(cloud), args.output)
    return 0


def _cmd_schwarzian_selftest(args):
    seed = int(os.environ.get("QFS_SEED", "0"))
    rng = np.random.RandomState(seed)
    failures = []

    worst_kernel = 0.0
    for _ in range(50):
        while True:
            a, b, c, d = rng.randn(4) + 1j * rng.randn(4)
            if abs(a * d - b * c) > 0.1:
                break
        sample = moebius_sample(a, b, c, d)
        z0 = rng.randn() + 1j * rng.randn()
        if abs(c * z0 + d) < 0.2:
            continue
        worst_kernel = max(worst_kernel, abs(schwarzian_at(sample, z0)))
    if worst_kernel > 1e-8:
        failures.append(f"moebius kernel {worst_kernel:.3e} > 1e-8")

    family = [
        polynomial_sample([0.2, 1.0, 0.1, 0.03]),
        polynomial_sample([0.0, 1.0, 0.0, 0.05]),
        exp_sample(0.7),
        exp_sample(1.0),
    ]
    worst_cocycle = 0.0
    count = 0
    while count < 50:
        f = family[rng.randint(len(family))]
        g = family[rng.randint(len(family))]
        z0 = 0.5 * (rng.randn() + 1j * rng.randn())
        try:
            residual = cocycle_check(f, g, z0)
        except Exception:
            continue
        worst_cocycle = max(worst_cocycle, residual)
        count += 1
    if worst_cocycle > 1e-6:
        failures.append(f"composition cocycle {worst_cocycle:.3e} > 1e-6")

    sys.stdout.write(
        f"moebius kernel: worst |Sf| = {worst_kernel:.3e} over 50 trials\n"
        f"composition cocycle: worst residual = {worst_cocycle:.3e} over 50 pairs\n"
    )
    if failures:
        for failure in failures:
            sys.stdout.write(f"FAIL {failure}\n")
        return 1
    sys.stdout.write("PASS\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qfs",
        description="Surface-group holonomy from complex Fenchel-Nielsen "
                    "coordinates, with symplectic verification tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("holonomy", help="generator matrices and relator residual")
    p.add_argument("config")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_holonomy)

    p = sub.add_parser("lengths", help="complex lengths of curves or words")
    p.add_argument("config")
    p.add_argument("--curve")
    p.add_argument("--word")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_lengths)

    p = sub.add_parser("gram", help="symplectic Gram matrix over the FN frame")
    p.add_argument("config")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_gram)

    p = sub.add_parser("darboux-check", help="compare the Gram matrix to the canonical form")
    p.add_argument("config")
    p.set_defaults(func=_cmd_darboux_check)

    p = sub.add_parser("twist", help="emit the configuration twisted along a curve")
    p.add_argument("config")
    p.add_argument("--curve", required=True)
    p.add_argument("--t", required=True, help="complex twist increment 're,im'")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_twist)

    p = sub.add_parser("limitset", help="limit-set point cloud")
    p.add_argument("config")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_limitset)

    p = sub.add_parser("schwarzian-selftest", help="Schwarzian property suite")
    p.set_defaults(func=_cmd_schwarzian_selftest)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except (DegenerateFN, BranchFailure, NotLoxodromic, UnknownGenerator) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
