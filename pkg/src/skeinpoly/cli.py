"""Command-line surface: compute, compose, and verify.

Every invocation prints one JSON report to stdout:

    {"schema": ..., "command": ..., "inputs": ..., "result": ..., "timing": ...}

with sorted keys and exact scalars only, so identical inputs produce
byte-identical reports (set SKEIN_TIMING=0 or pass --no-timing to null
out the one nondeterministic field).  Exit codes: 0 success, 1
verification failure, 2 parse error, 3 precondition violation.

Vectors cross the boundary in an envelope the kernel types do not
carry themselves:

    {"surface": {"components": [{"markings": n}, ...]},
     "ring": "laurent" | {"root_order": N},
     "terms": [[diagram, coefficient], ...]}

Inline JSON is accepted anywhere a file path is: arguments starting
with '{' or '[' are parsed directly.
"""

import argparse
import json
import os
import sys
import time

from . import verify as verify_mod
from .maps import add_marking, half_twist, qf_merge, split
from .frobenius import frobenius
from .polyalg import mul
from .polydiag import (
    BIGON,
    DiagramError,
    MONOGON,
    MarkedPolygon,
    SkeinVector,
    StatedDiagram,
    TRIANGLE,
    normalize,
)
from .reduced import (
    CharacterError,
    CharacterPoint,
    induced_matrix,
    injectivity_check,
    reduced_dim,
    reduced_presentation,
)
from .scalars import CycloRing, LAURENT, RingMismatch
from ._linalg import LinAlgError
from .torus import central_commutator, torus_frobenius

SCHEMA = "skeinpoly-report/1"

SURFACES = {"monogon": MONOGON, "bigon": BIGON, "triangle": TRIANGLE}


class ParseFailure(Exception):
    pass


class PreconditionFailure(Exception):
    pass


def _load_json(arg, what):
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseFailure("cannot read %s file %r: %s" % (what, arg, exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure("malformed JSON for %s: %s" % (what, exc))


def _surface_arg(arg):
    if arg in SURFACES:
        return SURFACES[arg]
    data = _load_json(arg, "surface")
    try:
        return MarkedPolygon.from_json(data)
    except (DiagramError, KeyError, TypeError, ValueError) as exc:
        raise ParseFailure("bad surface: %s" % exc)


def _ring_arg(spec):
    if spec in (None, "laurent"):
        return LAURENT
    if isinstance(spec, dict) and "root_order" in spec:
        spec = spec["root_order"]
    try:
        n = int(spec)
    except (TypeError, ValueError):
        raise ParseFailure("bad ring %r" % (spec,))
    if n < 1 or n % 2 == 0:
        raise PreconditionFailure("root order must be odd and positive")
    return CycloRing(n)


def _ring_json(ring):
    if ring is LAURENT or getattr(ring, "name", "") == "laurent":
        return "laurent"
    return {"root_order": ring.N}


def _vector_from_envelope(arg):
    data = _load_json(arg, "vector")
    if not isinstance(data, dict) or "terms" not in data:
        raise ParseFailure("vector envelope needs surface/ring/terms")
    try:
        surface = MarkedPolygon.from_json(data.get("surface", data))
        ring = _ring_arg(data.get("ring"))
        return SkeinVector.from_json(data["terms"], surface, ring)
    except (DiagramError, KeyError, TypeError, ValueError) as exc:
        raise ParseFailure("bad vector: %s" % exc)


def _vector_to_envelope(x):
    return {
        "surface": x.surface.to_json(),
        "ring": _ring_json(x.ring),
        "terms": x.to_json(),
    }


def _character_arg(arg):
    data = _load_json(arg, "character point")
    try:
        return CharacterPoint.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseFailure("bad character point: %s" % exc)


def _pq_arg(arg, what):
    parts = str(arg).split(",")
    if len(parts) != 2:
        raise ParseFailure("%s must be 'p,q'" % what)
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise ParseFailure("%s must be a pair of integers" % what)


# ---------------------------------------------------------------------------
# subcommand bodies: each returns (inputs, result, failed)


def _cmd_normalize(args):
    data = _load_json(args.diagram, "diagram")
    try:
        d = StatedDiagram.from_json(data)
    except DiagramError as exc:
        raise ParseFailure("bad diagram: %s" % exc)
    ring = _ring_arg(args.ring)
    got = normalize(d, ring=ring, strategy=args.strategy)
    inputs = {"diagram": data, "ring": _ring_json(ring), "strategy": args.strategy}
    return inputs, _vector_to_envelope(got), False


def _cmd_mul(args):
    x = _vector_from_envelope(args.left)
    y = _vector_from_envelope(args.right)
    if x.surface != y.surface:
        raise PreconditionFailure("factors live on different surfaces")
    if x.ring is not y.ring and getattr(x.ring, "N", None) != getattr(y.ring, "N", None):
        raise PreconditionFailure("factors live over different rings")
    got = mul(x, y, strategy=args.strategy)
    inputs = {
        "left": _vector_to_envelope(x),
        "right": _vector_to_envelope(y),
        "strategy": args.strategy,
    }
    return inputs, _vector_to_envelope(got), False


def _cmd_frobenius(args):
    x = _vector_from_envelope(args.input)
    ring = _ring_arg(args.N)
    got = frobenius(x, ring.N, ring)
    inputs = {"input": _vector_to_envelope(x), "N": ring.N}
    return inputs, _vector_to_envelope(got), False


def _cmd_split(args):
    x = _vector_from_envelope(args.input)
    got = split(x, args.component, args.gap1, args.gap2)
    inputs = {
        "input": _vector_to_envelope(x),
        "component": args.component,
        "gap1": args.gap1,
        "gap2": args.gap2,
    }
    return inputs, _vector_to_envelope(got), False


def _cmd_half_twist(args):
    x = _vector_from_envelope(args.input)
    got = half_twist(x, args.marking)
    inputs = {"input": _vector_to_envelope(x), "marking": args.marking}
    return inputs, _vector_to_envelope(got), False


def _cmd_qf_merge(args):
    x = _vector_from_envelope(args.input)
    got = qf_merge(x, args.mark1, args.mark2)
    inputs = {
        "input": _vector_to_envelope(x),
        "mark1": args.mark1,
        "mark2": args.mark2,
    }
    return inputs, _vector_to_envelope(got), False


def _cmd_reduce_dim(args):
    surface = _surface_arg(args.surface)
    ring = _ring_arg(args.N)
    rho = _character_arg(args.rho)
    if rho.surface != surface:
        raise PreconditionFailure("character point lives on a different surface")
    pres = reduced_presentation(surface, rho, ring.N)
    cert = pres.certificate
    inputs = {"surface": surface.to_json(), "N": ring.N, "rho": rho.to_json()}
    result = {
        "dim": reduced_dim(pres),
        "certificate": {
            "ok": cert["ok"],
            "stalled_at": cert.get("stalled_at"),
            "levels": cert.get("levels"),
        },
    }
    return inputs, result, False


def _cmd_induced_rank(args):
    params = _load_json(args.params, "map parameters")
    if not isinstance(params, dict):
        raise ParseFailure("map parameters must be a JSON object")
    if args.kind == "embedding" and "extra" in params:
        params["extra"] = tuple(params["extra"])
    surface = _surface_arg(args.surface)
    ring = _ring_arg(args.N)
    rho = _character_arg(args.rho)
    m = induced_matrix(args.kind, params, surface, rho, ring.N)
    info = injectivity_check(m)
    inputs = {
        "kind": args.kind,
        "params": {k: list(vv) if isinstance(vv, tuple) else vv for k, vv in params.items()},
        "surface": surface.to_json(),
        "N": ring.N,
        "rho": rho.to_json(),
    }
    result = {
        "source_dim": m["source_dim"],
        "target_dim": m["target_dim"],
        "rank": info["rank"],
        "injective": info["injective"],
    }
    return inputs, result, False


def _cmd_torus(args):
    ring = _ring_arg(args.N)
    threaded = _pq_arg(args.threaded, "--threaded")
    probe = _pq_arg(args.probe, "--probe")
    defect = central_commutator(threaded, probe, ring.N)
    image = torus_frobenius(threaded[0], threaded[1], ring.N)
    inputs = {"threaded": list(threaded), "probe": list(probe), "N": ring.N}
    result = {
        "frobenius_image": image.to_json(),
        "commutator": defect.to_json(),
        "transparent": defect.is_zero(),
    }
    return inputs, result, False


SUITE_PARAMS = {
    "confluence": ("count", "seed"),
    "graded-dims": ("kmax", "span_kmax"),
    "frobenius-central": ("orders",),
    "behaves-well": ("N",),
    "reduced-dims": ("triangle",),
    "key-lemma": ("seed",),
    "torus-transparency": ("orders", "bound"),
    "chebyshev": ("kmax", "mmax"),
}


def _cmd_verify(args):
    kwargs = {}
    allowed = SUITE_PARAMS.get(args.suite, ())
    if args.seed is not None and "seed" in allowed:
        kwargs["seed"] = args.seed
    if args.count is not None and "count" in allowed:
        kwargs["count"] = args.count
    if args.kmax is not None and "kmax" in allowed:
        kwargs["kmax"] = args.kmax
    elif args.suite == "graded-dims":
        kwargs["kmax"] = int(os.environ.get("SKEIN_DEGREE_BOUND", "6"))
    if args.mmax is not None and "mmax" in allowed:
        kwargs["mmax"] = args.mmax
    if args.orders is not None and "orders" in allowed:
        try:
            kwargs["orders"] = tuple(int(p) for p in args.orders.split(","))
        except ValueError:
            raise ParseFailure("--orders must be comma-separated integers")
    if args.skip_triangle and "triangle" in allowed:
        kwargs["triangle"] = False
    try:
        report = verify_mod.run_suite(args.suite, **kwargs)
    except ValueError as exc:
        raise ParseFailure(str(exc))
    return {"suite": args.suite, "parameters": report["parameters"]}, report, not report["pass"]


# ---------------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="skeinpoly",
        description="Exact stated-skein computations on marked polygons.",
    )
    parser.add_argument(
        "--no-timing",
        action="store_true",
        help="null out the timing field (byte-identical reports)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="expand a stated diagram in the basis")
    p.add_argument("--diagram", required=True, help="diagram JSON (file or inline)")
    p.add_argument("--ring", default="laurent", help="'laurent' or an odd root order")
    p.add_argument("--strategy", default="low", choices=("low", "high"))
    p.set_defaults(body=_cmd_normalize)

    p = sub.add_parser("mul", help="product of two vectors (left stacked above)")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--strategy", default="low", choices=("low", "high"))
    p.set_defaults(body=_cmd_mul)

    p = sub.add_parser("frobenius", help="cable a classical vector into order N")
    p.add_argument("--input", required=True)
    p.add_argument("--N", required=True)
    p.set_defaults(body=_cmd_frobenius)

    p = sub.add_parser("split", help="state-sum along a cut between two gaps")
    p.add_argument("--input", required=True)
    p.add_argument("--component", type=int, default=0)
    p.add_argument("--gap1", type=int, required=True)
    p.add_argument("--gap2", type=int, required=True)
    p.set_defaults(body=_cmd_split)

    p = sub.add_parser("half-twist", help="negative half twist at one marking")
    p.add_argument("--input", required=True)
    p.add_argument("--marking", type=int, required=True)
    p.set_defaults(body=_cmd_half_twist)

    p = sub.add_parser("qf-merge", help="glue two markings into one")
    p.add_argument("--input", required=True)
    p.add_argument("--mark1", type=int, required=True)
    p.add_argument("--mark2", type=int, required=True)
    p.set_defaults(body=_cmd_qf_merge)

    p = sub.add_parser("reduce-dim", help="dimension of the reduced module at a point")
    p.add_argument("--surface", required=True, help="monogon/bigon/triangle or JSON")
    p.add_argument("--N", required=True)
    p.add_argument("--rho", required=True, help="character point JSON (file or inline)")
    p.set_defaults(body=_cmd_reduce_dim)

    p = sub.add_parser("induced-rank", help="rank of a map between reduced modules")
    p.add_argument("--kind", required=True, choices=("split", "add_marking", "half_twist", "embedding"))
    p.add_argument("--params", required=True, help="map parameters JSON")
    p.add_argument("--surface", required=True, help="source surface")
    p.add_argument("--N", required=True)
    p.add_argument("--rho", required=True, help="target character point")
    p.set_defaults(body=_cmd_induced_rank)

    p = sub.add_parser("torus", help="transparency of a threaded curve on the torus")
    p.add_argument("--threaded", required=True, help="primitive class 'p,q'")
    p.add_argument("--probe", required=True, help="basis class 'p,q'")
    p.add_argument("--N", required=True)
    p.set_defaults(body=_cmd_torus)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(verify_mod.SUITES))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--mmax", type=int, default=None)
    p.add_argument("--orders", default=None, help="comma-separated odd orders")
    p.add_argument(
        "--skip-triangle",
        action="store_true",
        help="reduced-dims only: skip the triangle sweeps",
    )
    p.set_defaults(body=_cmd_verify)

    return parser


def _timing_enabled(args):
    if args.no_timing:
        return False
    return os.environ.get("SKEIN_TIMING", "1") != "0"


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        inputs, result, failed = args.body(args)
    except ParseFailure as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except PreconditionFailure as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return 3
    except (DiagramError, CharacterError, RingMismatch, LinAlgError) as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return 3
    elapsed = time.monotonic() - started
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "timing": {"seconds": round(elapsed, 6)} if _timing_enabled(args) else None,
    }
    print(json.dumps(report, sort_keys=True, indent=2))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
