"""Command-line interface: ``qstexture <subcommand> ...``.

stdout carries only the JSON (or CSV) payload; diagnostics go to stderr.

Exit codes: 0 success, 2 parse or validation failure, 3 unsupported
dimension, 4 target is the free state, 5 a canonical verification check
failed.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import fileio
from . import measures as M
from . import relations as R
from . import transforms as T
from .channels import apply_channel
from .errors import DimUnsupported, TargetIsFreeState, TextureError
from .linalg import hermitian_eig
from .states import bloch_decompose, child_seed, sample_state

EXIT_INVALID = 2
EXIT_DIM = 3
EXIT_FREE_TARGET = 4
EXIT_CHECK_FAILED = 5


class UsageError(Exception):
    pass


def _num(x):
    x = float(x)
    return x if math.isfinite(x) else "inf"


def _csv(rows) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_state(path):
    return fileio.state_from_json(fileio.load(path))


def _pure_vector(rho, psi, role):
    if psi is not None:
        return psi
    w, v = hermitian_eig(rho)
    if w[-1] < 1 - 1e-9:
        raise UsageError(f"{role} must be a pure state (largest eigenvalue {w[-1]:.6g})")
    return v[:, -1]


def cmd_measure(args) -> int:
    rho, _ = _read_state(args.state)
    mv = M.evaluate(args.measure, rho, args.alpha)
    if args.format == "csv":
        _emit(args, _csv([{"measure": mv.measure_id, "alpha": "" if mv.alpha is None else mv.alpha,
                           "value": _num(mv.value)}]))
    else:
        _emit(args, fileio.dumps(mv.to_dict()))
    return 0


def cmd_transform(args) -> int:
    rho, psi = _read_state(args.source)
    psi = _pure_vector(rho, psi, "source")
    sigma, phi = _read_state(args.target)
    if phi is not None:
        res = T.max_prob_pure_to_pure(psi, phi)
        target = "pure"
    else:
        res = T.max_prob_pure_to_mixed(psi, sigma)
        target = "mixed"
    out = {
        "target": target,
        "probability": _num(res.probability),
        "ratio": _num(res.ratio),
        "residual_q": None if res.residual_q is None else _num(res.residual_q),
        "achieved": bool(res.achieved),
        "success": list(res.success),
        "instrument": res.instrument.to_dict(),
    }
    _emit(args, fileio.dumps(out))
    return 0


def _report(args):
    if args.suite == "axioms":
        if not args.measure:
            raise UsageError("--suite axioms needs --measure")
        return R.axiom_suite(args.measure, args.alpha, args.samples, args.seed, args.dim,
                             args.channels, args.recipe or None, tolerance=args.tolerance)
    if args.suite == "l1":
        return R.l1_report(args.samples, args.seed, args.dim, tolerance=args.tolerance)
    if args.suite == "l2":
        return R.l2_report(args.samples, args.seed, args.dim, tolerance=args.tolerance)
    if args.suite == "skew":
        return R.skew_report(args.samples, args.seed, args.dim, tolerance=args.tolerance)
    if args.dim != 2:
        raise DimUnsupported(f"conversion checks are implemented for d=2 only, got d={args.dim}")
    return R.transforms_report(args.samples, args.seed, tolerance=args.tolerance)


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    if args.format == "csv":
        if args.suite in ("axioms", "transforms"):
            raise UsageError("--format csv is available for the l1, l2 and skew suites")
        _emit(args, _csv(R.sample_table(args.suite, args.samples, args.seed, args.dim)))
        return 0
    report = _report(args)
    _emit(args, "\n".join(report.json_lines()))
    if not report.ok:
        failed = [c.check_id for c in report.checks if c.status == "canonical" and not c.passed]
        print(f"canonical checks failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return 0


def cmd_sample(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    try:
        os.makedirs(args.out_dir, exist_ok=True)
        entries = []
        for i in range(args.count):
            s = child_seed(args.seed, i)
            rho = sample_state(args.dim, args.kind, args.rank, seed=s)
            name = f"state_{i:04d}.json"
            fileio.save(os.path.join(args.out_dir, name), fileio.state_to_json(rho))
            entries.append({"file": name, "seed": s})
        manifest = {"dim": args.dim, "kind": args.kind, "rank": args.rank, "count": args.count,
                    "seed": args.seed, "states": entries}
        fileio.save(os.path.join(args.out_dir, "manifest.json"), manifest)
    except OSError as exc:
        raise UsageError(f"cannot write samples: {exc}") from exc
    _emit(args, fileio.dumps(manifest))
    return 0


def cmd_bloch(args) -> int:
    rho, _ = _read_state(args.state)
    v = bloch_decompose(rho)
    if args.format == "csv":
        row = {}
        for name, arr in (("x", v.x), ("y", v.y), ("z", v.z)):
            for j, val in enumerate(arr):
                row[f"{name}{j}"] = float(val)
        _emit(args, _csv([row]))
    else:
        _emit(args, fileio.dumps(v.to_dict()))
    return 0


def cmd_channel_apply(args) -> int:
    ks = fileio.channel_from_json(fileio.load(args.channel))
    rho, _ = _read_state(args.state)
    if ks.dim != rho.shape[0]:
        raise UsageError(f"channel acts on d={ks.dim} but the state has d={rho.shape[0]}")
    out = apply_channel(ks, rho)
    if isinstance(out, tuple):
        out, p = out
        payload = {"completeness": ks.completeness, "probability": p,
                   "output": fileio.state_to_json(out)}
    else:
        payload = {"completeness": ks.completeness, "output": fileio.state_to_json(out)}
    _emit(args, fileio.dumps(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qstexture",
                                     description="Quantum-state texture measures and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--output", help="write the payload here instead of stdout")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("measure", help="evaluate a texture measure on a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--measure", required=True, choices=sorted(M.MEASURES))
    p.add_argument("--alpha", type=float)
    common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("transform", help="maximal free conversion probability (qubits)")
    p.add_argument("--source", required=True, help="pure source state file")
    p.add_argument("--target", required=True, help="pure or mixed target state file")
    common(p, fmt=False)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=("axioms", "l1", "l2", "skew", "transforms"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--measure", choices=sorted(M.MEASURES))
    p.add_argument("--alpha", type=float)
    p.add_argument("--channels", type=int, default=50)
    p.add_argument("--recipe", action="append", help="restrict axiom channels to this recipe")
    p.add_argument("--tolerance", type=float, help="override every check's tolerance")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="write seeded random state files and a manifest")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--kind", required=True, choices=("pure", "mixed"))
    p.add_argument("--rank", type=int)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-dir", default=".")
    common(p, fmt=False)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bloch", help="Bloch vector of a state file")
    p.add_argument("--state", required=True)
    common(p)
    p.set_defaults(func=cmd_bloch)

    p = sub.add_parser("channel-apply", help="apply a free channel file to a state file")
    p.add_argument("--channel", required=True)
    p.add_argument("--state", required=True)
    common(p, fmt=False)
    p.set_defaults(func=cmd_channel_apply)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DimUnsupported as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DIM
    except TargetIsFreeState as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FREE_TARGET
    except (TextureError, UsageError, ValueError, KeyError, OSError,
            json.JSONDecodeError, np.linalg.LinAlgError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
