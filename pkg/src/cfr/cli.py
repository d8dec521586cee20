"""Command-line driver: reproducible builds, multi-prime verification,
JSON artifacts.

Sub-commands::

    cfr surface build <s14|s26|s38> [--char N] [--seed N] [--out FILE]
    cfr congruence verify <surface.json> [--trials N] [--primes p1,p2]
    cfr cubic sample <surface.json> (--smooth|--nodal) [--out FILE]
    cfr normal h0 <surface.json> <cubic.json>
    cfr map analyze <surface.json>
    cfr admissible <d>

Exit codes: 0 success, 2 genericity-retry exhaustion, 3 certificate
failure or cross-prime disagreement, 4 I/O or parse error.  The default
prime policy draws two distinct random primes from the seed and demands
agreement; ``--char 0`` forces exact rational arithmetic."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field as dfield
from typing import List, Optional

from . import rng as rngmod
from .congruence import (random_nodal_cubic, random_smooth_cubic,
                         verify_congruence)
from .fields import GF, QQ, FieldDesc, random_distinct_primes
from .ideals import GenericityError
from .maps import map_degree, multidegree, rational_map
from .modcoh import h0_normal
from .surfaces import SurfaceInstance, build_surface, is_admissible

EXIT_OK = 0
EXIT_GENERICITY = 2
EXIT_CERTIFICATE = 3
EXIT_IO = 4

SURFACE_IDS = {"s14": 14, "s26": 26, "s38": 38,
               "14": 14, "26": 26, "38": 38}


@dataclass
class RunConfig:
    seed: int
    primes: List[int]                  # empty = characteristic 0
    coeffWindow: int = 100
    trials: int = 1
    outputPath: str = ""

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("primes must be distinct")
        for p in self.primes:
            if not (1 << 15) <= p < (1 << 31):
                raise ValueError("primes must lie in [2^15, 2^31)")

    @property
    def fields(self) -> List[FieldDesc]:
        return [GF(p) for p in self.primes] if self.primes else [QQ]


def default_seed() -> int:
    return int(os.environ.get("CFR_SEED", "0"))


def resolve_config(args, default_out: str) -> RunConfig:
    seed = args.seed if args.seed is not None else default_seed()
    char = getattr(args, "char", None)
    primes_arg = getattr(args, "primes", None)
    if char is not None and primes_arg:
        raise ValueError("--char and --primes are mutually exclusive")
    if char is not None:
        primes = [] if char == 0 else [char]
    elif primes_arg:
        primes = [int(tok) for tok in primes_arg.split(",") if tok]
    else:
        primes = random_distinct_primes(rngmod.stream(seed, "primes"), 2)
    return RunConfig(seed=seed, primes=primes,
                     trials=getattr(args, "trials", 1) or 1,
                     outputPath=getattr(args, "out", None) or default_out)


def _timestamp() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def _write_json(path: str, obj: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_surface_artifact(path: str):
    obj = _load_json(path)
    if obj.get("kind") != "surface":
        raise ValueError(f"{path} is not a surface artifact")
    instances = [SurfaceInstance.from_json(io) for io in obj["instances"]]
    return obj, instances


# -- sub-commands ---------------------------------------------------------

def cmd_surface_build(args) -> int:
    sid = SURFACE_IDS.get(args.id.lower())
    if sid is None:
        print(f"unknown surface id {args.id!r}; expected s14, s26 or s38",
              file=sys.stderr)
        return EXIT_IO
    config = resolve_config(args, "surface.json")
    instances = []
    for fld in config.fields:
        inst = build_surface(sid, fld, config.seed)
        instances.append(inst)
    dim_deg = instances[0].ideal.dim_degree()
    profile = instances[0].generator_profile
    if any(i.generator_profile != profile for i in instances[1:]):
        print("generator profiles disagree across primes", file=sys.stderr)
        return EXIT_CERTIFICATE
    artifact = {
        "kind": "surface",
        "surfaceId": sid,
        "seed": config.seed,
        "primes": config.primes,
        "dimDegree": list(dim_deg),
        "generatorProfile": {str(k): v for k, v in profile.items()},
        "instances": [i.to_json() for i in instances],
        "timestamp": _timestamp(),
    }
    _write_json(config.outputPath, artifact)
    chars = config.primes or [0]
    print(f"surface s{sid}: profile "
          f"{{{', '.join(f'{k}: {v}' for k, v in sorted(profile.items()))}}}"
          f", dim/degree {dim_deg}, characteristics {chars}"
          f" -> {config.outputPath}")
    return EXIT_OK


def cmd_congruence_verify(args) -> int:
    obj, instances = _load_surface_artifact(args.file)
    args.char = None
    if not getattr(args, "primes", None):
        # default: reuse the primes the surface was built over
        args.primes = ",".join(str(p) for p in obj["primes"]) or None
        if args.primes is None:
            args.char = 0
    config = resolve_config(args, "certificate.json")
    if config.primes != obj["primes"]:
        # rebuild the surface over the requested primes
        instances = [build_surface(obj["surfaceId"], fld, obj["seed"])
                     for fld in config.fields]
    all_certs = []
    for inst in instances:
        certs = verify_congruence(inst, trials=config.trials,
                                  seed=config.seed)
        all_certs.append([c.to_json() for c in certs])
    summaries = [
        [(c["secantLineCount"], c["linesInZ"], c["extraLineDegree"],
          tuple(c["conicDimDeg"]), c["intersectionLength"], c["passed"])
         for c in certs]
        for certs in all_certs]
    agreement = all(s == summaries[0] for s in summaries[1:])
    passed = agreement and all(c["passed"]
                               for certs in all_certs for c in certs)
    artifact = {
        "kind": "certificate",
        "surfaceId": obj["surfaceId"],
        "seed": config.seed,
        "trials": config.trials,
        "primes": config.primes,
        "certificates": all_certs,
        "agreement": agreement,
        "passed": passed,
        "timestamp": _timestamp(),
    }
    _write_json(config.outputPath, artifact)
    one = all_certs[0][0]
    print(f"congruence s{obj['surfaceId']}: secants {one['secantLineCount']}"
          f", lines in Z {one['linesInZ']}, extra line degree "
          f"{one['extraLineDegree']}, conic {tuple(one['conicDimDeg'])}, "
          f"intersection length {one['intersectionLength']}, "
          f"agreement {agreement}, passed {passed}"
          f" -> {config.outputPath}")
    return EXIT_OK if passed else EXIT_CERTIFICATE


def cmd_cubic_sample(args) -> int:
    obj, instances = _load_surface_artifact(args.file)
    args.char = None
    args.primes = ",".join(str(p) for p in obj["primes"]) or None
    if args.primes is None:
        args.char = 0
    config = resolve_config(args, "cubic.json")
    mode = "nodal" if args.nodal else "smooth"
    coeffs, nodes, polys = {}, {}, {}
    for inst in instances:
        char = inst.field.characteristic
        rng = rngmod.stream(config.seed,
                            f"cubic:{mode}:{obj['surfaceId']}:{char}")
        if mode == "smooth":
            F, cs = random_smooth_cubic(inst, rng)
        else:
            F, cs, q = random_nodal_cubic(inst, rng)
            nodes[str(char)] = [str(c) for c in q]
        coeffs[str(char)] = [str(c) for c in cs]
        polys[str(char)] = F.to_json()
    artifact = {
        "kind": "cubic",
        "mode": mode,
        "surfaceId": obj["surfaceId"],
        "seed": config.seed,
        "primes": config.primes,
        "coefficients": coeffs,
        "polynomials": polys,
        "timestamp": _timestamp(),
    }
    if nodes:
        artifact["node"] = nodes
    _write_json(config.outputPath, artifact)
    print(f"{mode} cubic through s{obj['surfaceId']}"
          f" -> {config.outputPath}")
    return EXIT_OK


def cmd_normal_h0(args) -> int:
    obj, instances = _load_surface_artifact(args.surface)
    cub = _load_json(args.cubic)
    if cub.get("kind") != "cubic":
        raise ValueError(f"{args.cubic} is not a cubic artifact")
    if cub["surfaceId"] != obj["surfaceId"]:
        raise ValueError("cubic artifact belongs to a different surface")
    values = {}
    for inst in instances:
        fld = inst.field
        char = fld.characteristic
        cs = cub["coefficients"].get(str(char))
        if cs is None:
            raise ValueError(f"cubic artifact has no data for "
                             f"characteristic {char}")
        gens = inst.ideal.gens
        F = inst.ideal.ring.zero()
        for c, g in zip(cs, gens):
            F = F + g.scale(fld.of_int(int(c)))
        values[char] = h0_normal(inst.ideal, F)
    agree = len(set(values.values())) == 1
    report = {
        "kind": "normalH0",
        "surfaceId": obj["surfaceId"],
        "mode": cub["mode"],
        "h0": next(iter(values.values())),
        "perCharacteristic": {str(k): v for k, v in values.items()},
        "agreement": agree,
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK if agree else EXIT_CERTIFICATE


def cmd_map_analyze(args) -> int:
    obj, instances = _load_surface_artifact(args.file)
    args.char = None
    args.primes = ",".join(str(p) for p in obj["primes"]) or None
    if args.primes is None:
        args.char = 0
    config = resolve_config(args, "map.json")
    reports = {}
    for inst in instances:
        char = inst.field.characteristic
        rng = rngmod.stream(config.seed, f"map:{obj['surfaceId']}:{char}")
        phi = rational_map(inst.ideal.ring, list(inst.ideal.gens))
        deg = map_degree(phi, rng)
        mdeg = multidegree(phi, rng)
        reports[str(char)] = {"degree": deg, "multidegree": mdeg}
    vals = list(reports.values())
    agree = all(v == vals[0] for v in vals[1:])
    report = {
        "kind": "mapAnalysis",
        "surfaceId": obj["surfaceId"],
        "degree": vals[0]["degree"],
        "multidegree": vals[0]["multidegree"],
        "perCharacteristic": reports,
        "agreement": agree,
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK if agree else EXIT_CERTIFICATE


def cmd_admissible(args) -> int:
    verdict = is_admissible(args.d)
    print(json.dumps({"d": args.d, "admissible": verdict}))
    return EXIT_OK


# -- argument parsing -----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfr",
        description="Exact construction and verification of congruences "
                    "of 5-secant conics on special surfaces in P^5.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trials=False):
        p.add_argument("--seed", type=int, default=None,
                       help="master seed (default: $CFR_SEED or 0)")
        p.add_argument("--primes", type=str, default=None,
                       help="comma-separated primes in [2^15, 2^31)")
        p.add_argument("--out", type=str, default=None,
                       help="output artifact path")
        if trials:
            p.add_argument("--trials", type=int, default=1)

    surface = sub.add_parser("surface").add_subparsers(dest="action",
                                                       required=True)
    p = surface.add_parser("build", help="construct a surface")
    p.add_argument("id", help="s14, s26 or s38")
    p.add_argument("--char", type=int, default=None,
                   help="characteristic (0 = rationals)")
    common(p)
    p.set_defaults(func=cmd_surface_build)

    cong = sub.add_parser("congruence").add_subparsers(dest="action",
                                                       required=True)
    p = cong.add_parser("verify", help="verify the conic congruence")
    p.add_argument("file", help="surface artifact")
    common(p, trials=True)
    p.set_defaults(func=cmd_congruence_verify)

    cubic = sub.add_parser("cubic").add_subparsers(dest="action",
                                                   required=True)
    p = cubic.add_parser("sample", help="sample a cubic through S")
    p.add_argument("file", help="surface artifact")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--smooth", action="store_true")
    grp.add_argument("--nodal", action="store_true")
    common(p)
    p.set_defaults(func=cmd_cubic_sample)

    normal = sub.add_parser("normal").add_subparsers(dest="action",
                                                     required=True)
    p = normal.add_parser("h0", help="sections of the normal sheaf")
    p.add_argument("surface", help="surface artifact")
    p.add_argument("cubic", help="cubic artifact")
    common(p)
    p.set_defaults(func=cmd_normal_h0)

    mp = sub.add_parser("map").add_subparsers(dest="action", required=True)
    p = mp.add_parser("analyze", help="degree and multidegree of the "
                                      "cubic map")
    p.add_argument("file", help="surface artifact")
    common(p)
    p.set_defaults(func=cmd_map_analyze)

    p = sub.add_parser("admissible", help="admissibility of a discriminant")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_admissible)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GenericityError as e:
        print(f"genericity failure: {e}", file=sys.stderr)
        return EXIT_GENERICITY
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
