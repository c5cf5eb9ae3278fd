"""Command-line front end: parse ideal files, dispatch operations, emit JSON.

Exit codes: 0 success, 1 malformed input, 2 honest certification failures
(uncertified genericity, lex-segment cap, truncated enumeration).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .circuits import alpha_vector, circuits_truncated, initial_circuits
from .fan import (
    FanConsistencyError,
    cone_of,
    enumerate_fan,
    generic_fan_compare,
    newton_fan_oracle,
    universal_basis,
)
from .generic import (
    RandomSpec,
    UncertifiedError,
    gcs_truncated,
    normalize_weight,
    stab_check,
)
from .groebner import (
    CapTooSmallError,
    MacaulayError,
    basis_json,
    default_lex_cap,
    hilbert_function,
    homogenize_ideal_w,
    initial_ideal_w,
    lex_segment,
    parse_ideal_file,
    specialize_t,
)
from .linalg import graded_basis
from .order import parse_order
from .ring import PrimeField, field_from_spec, make_weight, poly_str, PolyRing
from .groebner import IdealHandle

SEED_ENV = "CIRCUITFAN_SEED"

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_UNCERTIFIED = 2


def _weight_arg(text: str):
    return make_weight([x.strip() for x in text.split(",")])


def _load_ideal(path: str, field_override: str = None):
    with open(path) as fh:
        text = fh.read()
    ring, ideal = parse_ideal_file(text)
    if field_override:
        fld = field_from_spec(field_override)
        if fld != ring.field:
            ring2 = PolyRing(ring.names, fld)
            gens = [ring2.parse(poly_str(g)) for g in ideal.generators]
            return ring2, IdealHandle(ring2, gens)
    return ring, ideal


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    return int(env) if env else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="circuitfan",
        description="Exact circuits sets, weight initial ideals and Groebner-fan "
        "cells for homogeneous ideals.",
    )
    p.add_argument("--output", help="write the JSON document to a file")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, **kw):
        c = sub.add_parser(name, **kw)
        c.add_argument("input", help="ideal file")
        c.add_argument("--field", help="field override, e.g. gf:32003")
        c.add_argument("--seed", type=int, default=None)
        return c

    c = cmd("gb", help="reduced Groebner basis")
    c.add_argument("--order", default="drl")

    c = cmd("inw", help="weight initial ideal")
    c.add_argument("--weight", required=True)
    c.add_argument("--tie", default="drl")

    c = cmd("circuits", help="truncated circuits set")
    c.add_argument("--trunc", type=int, required=True)
    c.add_argument("--size-cap", type=int, default=None)

    c = cmd("gcs", help="certified truncated generic circuits set")
    c.add_argument("--trunc", type=int, required=True)
    c.add_argument("--retries", type=int, default=3)

    c = cmd("alpha", help="filtration rank vector of a graded piece")
    c.add_argument("--weight", required=True)
    c.add_argument("--degree", type=int, required=True)

    c = cmd("fan-cell", help="cone of the fan cell of a weight")
    c.add_argument("--weight", required=True)
    c.add_argument("--tie", default="drl")

    c = cmd("fan-enum", help="certified fan sampling on an integer box")
    c.add_argument("--box", type=int, default=4)
    c.add_argument("--step", type=int, default=1)
    c.add_argument("--tie", default="drl")
    c.add_argument("--oracle", action="store_true",
                   help="principal ideals only: use the Newton-polytope oracle")

    c = cmd("fan-compare", help="one-directional fan equality certificate")
    c.add_argument("--other", required=True, help="second ideal file")
    c.add_argument("--mode", choices=["generic", "deterministic"], default="generic")

    c = cmd("stab", help="Borel-subgroup invariance report")
    c.add_argument("--weight", required=True)
    c.add_argument("--gtrials", type=int, default=2)
    c.add_argument("--btrials", type=int, default=5)
    c.add_argument("--identity-g", action="store_true",
                   help="negative control: use the identity change")

    c = cmd("hf", help="Hilbert function")
    c.add_argument("--dmax", type=int, default=6)

    c = cmd("lexseg", help="lex-segment ideal and generator bound")
    c.add_argument("--cap", type=int, default=None)

    c = cmd("ugb", help="canonical universal basis on a sampled box")
    c.add_argument("--box", type=int, default=4)
    c.add_argument("--step", type=int, default=1)

    c = cmd("flatfam", help="weight homogenization and its specializations")
    c.add_argument("--weight", required=True)
    c.add_argument("--at", default=None, help="extra specialization value")

    return p


def _dispatch(args, ring, ideal, seed):
    spec = RandomSpec(seed)
    cmd = args.command
    if cmd == "gb":
        gb = ideal.groebner(parse_order(args.order))
        return EXIT_OK, {"basis": basis_json(gb)}
    if cmd == "inw":
        w = _weight_arg(args.weight)
        J = initial_ideal_w(ideal, w, tie=parse_order(args.tie))
        return EXIT_OK, {
            "weight": list(w),
            "initial_ideal": [poly_str(g) for g in J.groebner().elements],
        }
    if cmd == "circuits":
        cs = circuits_truncated(ideal, args.trunc, size_cap=args.size_cap)
        doc = {"trunc": args.trunc, "circuits": cs.to_json(ring)}
        if cs.truncated:
            doc["truncated_at_size_cap"] = args.size_cap
            return EXIT_UNCERTIFIED, doc
        return EXIT_OK, doc
    if cmd == "gcs":
        cs = gcs_truncated(ideal, args.trunc, spec, retries=args.retries)
        doc = {"trunc": args.trunc, "circuits": cs.to_json(ring)}
        if isinstance(ring.field, PrimeField):
            doc["genericity"] = "heuristic (finite field)"
        return EXIT_OK, doc
    if cmd == "alpha":
        w, perm, shift = normalize_weight(_weight_arg(args.weight), ring.n)
        W = graded_basis(ideal, args.degree)
        av = alpha_vector(W, w)
        return EXIT_OK, {
            "degree": args.degree,
            "weight": list(w),
            "permutation": list(perm),
            "shift": shift,
            "alpha": list(av.values),
        }
    if cmd == "fan-cell":
        w = _weight_arg(args.weight)
        cone = cone_of(ideal, w, tie=parse_order(args.tie))
        return EXIT_OK, {"weight": list(w), **cone.to_json()}
    if cmd == "fan-enum":
        tie = parse_order(args.tie)
        if args.oracle:
            if len(ideal.generators) != 1:
                raise ValueError("--oracle needs a principal ideal")
            sketch = newton_fan_oracle(ideal.generators[0], args.box, args.step)
        else:
            sketch = enumerate_fan(ideal, args.box, args.step, tie=tie)
        return EXIT_OK, {"fan": sketch.to_json()}
    if cmd == "fan-compare":
        _, other = _load_ideal(args.other, args.field)
        verdict = generic_fan_compare(ideal, other, spec, mode=args.mode)
        return EXIT_OK, verdict
    if cmd == "stab":
        w, perm, shift = normalize_weight(_weight_arg(args.weight), ring.n)
        report = stab_check(
            ideal,
            w,
            spec,
            g_trials=args.gtrials,
            b_trials=args.btrials,
            force_identity_g=args.identity_g,
        )
        report["permutation"] = list(perm)
        report["shift"] = shift
        return EXIT_OK, report
    if cmd == "hf":
        H = hilbert_function(ideal, args.dmax)
        return EXIT_OK, {
            "dmax": args.dmax,
            "ideal_dims": list(H.ideal_dims),
            "quotient_dims": list(H.quotient_dims()),
        }
    if cmd == "lexseg":
        cap = args.cap if args.cap is not None else default_lex_cap(ideal)
        H = hilbert_function(ideal, cap)
        L, D = lex_segment(H, ring, cap)
        return EXIT_OK, {
            "cap": cap,
            "lex_segment": [poly_str(g) for g in L.generators],
            "generator_bound": D,
        }
    if cmd == "ugb":
        sketch = enumerate_fan(ideal, args.box, args.step)
        basis = universal_basis(ideal, sketch)
        return EXIT_OK, {
            "box": args.box,
            "cells": len(sketch.cells),
            "universal_basis": [poly_str(g) for g in basis],
        }
    if cmd == "flatfam":
        w = _weight_arg(args.weight)
        H = homogenize_ideal_w(ideal, w)
        doc = {
            "weight": list(w),
            "homogenized": [poly_str(g) for g in H.generators],
            "at_1": [poly_str(g) for g in specialize_t(H, ring.field.one).generators],
            "at_0": [
                poly_str(g) for g in specialize_t(H, ring.field.zero).generators
            ],
        }
        if args.at is not None:
            a = ring.field.parse(args.at)
            doc["at_value"] = args.at
            doc["at"] = [poly_str(g) for g in specialize_t(H, a).generators]
        return EXIT_OK, doc
    raise ValueError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in sorted(vars(args).items()) if k != "output"}
    seed = _resolve_seed(args)
    config["seed"] = seed
    document = {"config": config}
    if not args.no_timestamp:
        document["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    try:
        ring, ideal = _load_ideal(args.input, args.field)
        code, payload = _dispatch(args, ring, ideal, seed)
        document.update(payload)
    except (UncertifiedError, CapTooSmallError, MacaulayError, FanConsistencyError) as e:
        code = EXIT_UNCERTIFIED
        document["error"] = {"kind": type(e).__name__, "reason": str(e)}
    except (ValueError, OSError) as e:
        code = EXIT_BAD_INPUT
        document["error"] = {"kind": type(e).__name__, "reason": str(e)}
    text = json.dumps(document, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
