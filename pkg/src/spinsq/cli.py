"""Command-line entry point: analyze, sweep, verify, oracle-check.

Exit codes: 0 success, 1 usage or input error, 2 numerical failure,
3 verification failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from spinsq.analysis import evaluate
from spinsq.dicke import SymmetricState, load_state_file, moments
from spinsq.errors import NumericalError, SpinsqError, VerificationError
from spinsq.families import FamilySpec, build
from spinsq.oracle import DEFAULT_MAX_N, TOLERANCE, deviations
from spinsq.sweep import fmt, run_sweep, to_csv, to_json_obj
from spinsq.theorem import DIAGNOSTIC, PIECEWISE, grid_points, verify_family

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3

FAMILIES = ("even-pair", "adjacent-pair", "general-pair", "single-dicke")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for numerical failure here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def parse_n_values(text):
    """'5', '2-10', '2..10' or '3,5,7' -> sorted list of ints."""
    out = set()
    try:
        for part in text.split(","):
            part = part.strip().replace("..", "-")
            if "-" in part:
                lo, hi = part.split("-")
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(part))
    except ValueError:
        raise UsageError(f"cannot parse N values {text!r}") from None
    if not out or min(out) < 2:
        raise UsageError(f"N values must be integers >= 2, got {text!r}")
    return sorted(out)


def _angle(args, value):
    return math.radians(value) if args.degrees else value


def _family_spec(args):
    if args.family is None:
        raise UsageError("--family or --state-file is required")
    if args.N is None:
        raise UsageError("--N is required")
    spec = FamilySpec(
        args.family, args.N, args.n, args.n_prime,
        _angle(args, args.theta), _angle(args, args.phi),
    )  # fmt: skip
    spec.validate()
    return spec


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def cmd_analyze(args):
    if args.state_file:
        state = load_state_file(args.state_file)
        header = {"source": args.state_file}
    else:
        spec = _family_spec(args)
        state = build(spec)
        header = {"family": spec.kind, "N": spec.N, "n": spec.n, "n_prime": spec.offset,
                  "theta": spec.theta, "phi": spec.phi}  # fmt: skip
    rep = evaluate(state)
    data = dict(header)
    data.update(rep.to_dict())
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", args.out)
    else:
        lines = []
        for key, val in data.items():
            if key in ("j1", "G", "xstate"):
                val = json.dumps(val)
            lines.append(f"{key}: {fmt(val)}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args):
    if args.theta_steps < 2:
        raise UsageError("--theta-steps must be at least 2")
    template = _family_spec(args)
    records, crossings = run_sweep(template, args.theta_steps, args.phi_steps)
    if args.format == "json":
        text = json.dumps(to_json_obj(records, crossings), indent=2) + "\n"
    else:
        text = to_csv(records, crossings)
    _emit(text, args.out)
    return EXIT_OK


def _verify_groups(args, N_values):
    """(family, n_prime, label, gating) tuples for the requested families."""
    wanted = [args.family] if args.family else ["even-pair", "general-pair", "adjacent-pair"]
    groups = []
    for fam in wanted:
        if fam == "general-pair":
            primes = [args.n_prime] if args.n_prime else [3, 4]
            groups += [(fam, p, f"general-pair n'={p}", True) for p in primes]
        elif fam == "adjacent-pair":
            # no parity: the biconditional is only observed here
            groups.append((fam, None, "adjacent-pair (no parity, observation)", False))
        else:
            groups.append((fam, None, fam, True))
    return groups


def _format_params(params):
    return " ".join(f"{k}={fmt(v)}" for k, v in params.items() if k != "path" and v is not None)


def cmd_verify(args):
    N_values = parse_n_values(args.N_range or (str(args.N) if args.N else "2-10"))
    failed = False
    for fam, n_prime, label, gating in _verify_groups(args, N_values):
        s = verify_family(fam, N_values, args.theta_steps, args.phi_steps, n_prime, label, theorem=gating)
        status = "ok" if s.ok else "VIOLATED"
        print(f"[{label}] points={s.points} agree={s.agree} boundary={s.boundary} "
              f"violations={len(s.violations)} {status}")  # fmt: skip
        for name in PIECEWISE + ("key_identity", "exclusive_positivity", "varsigma_czz", "gamma_reduction"):
            if name in s.worst:
                print(f"  max {name}: {s.worst[name]:.3e}")
        for name in DIAGNOSTIC:
            if name in s.worst:
                print(f"  {name} (product form, not gating): max {s.worst[name]:.3e}, "
                      f"{s.diagnostic_exceedances.get(name, 0)} points above tolerance")  # fmt: skip
        if s.violations and gating:
            failed = True
            for name, params, a, b in s.violations[: args.max_report]:
                print(f"  violation {name}: {_format_params(params)} values={fmt(a)},{fmt(b)}")
    return EXIT_VERIFY if failed else EXIT_OK


def random_states(N, count, rng):
    for _ in range(count):
        amps = rng.normal(size=N + 1) + 1j * rng.normal(size=N + 1)
        yield SymmetricState.from_amplitudes(amps)


def cmd_oracle_check(args):
    N_values = parse_n_values(args.N_range or (str(args.N) if args.N else "2-10"))
    if max(N_values) > args.oracle_max_n:
        raise UsageError(f"N = {max(N_values)} exceeds --oracle-max-n {args.oracle_max_n}")
    rng = np.random.default_rng(args.seed)
    worst, where, count = {}, {}, 0

    def check(label, state):
        nonlocal count
        count += 1
        for name, dev in deviations(state, moments(state), args.oracle_max_n).items():
            if dev > worst.get(name, -1.0):
                worst[name], where[name] = dev, label

    for N in N_values:
        for k, state in enumerate(random_states(N, args.samples, rng)):
            check(f"random N={N} #{k}", state)
    families = [args.family] if args.family else list(FAMILIES)
    for fam in families:
        primes = ([args.n_prime] if args.n_prime else [3, 4]) if fam == "general-pair" else [None]
        for n_prime in primes:
            for params, state in grid_points(fam, N_values, args.theta_steps, args.phi_steps, n_prime):
                check(_format_params(params), state)

    print(f"checked {count} states, tolerance {TOLERANCE:.0e}")
    bad = []
    for name in sorted(worst):
        flag = "" if worst[name] <= TOLERANCE else "  EXCEEDS"
        print(f"  {name}: {worst[name]:.3e} at {where[name]}{flag}")
        if worst[name] > TOLERANCE:
            bad.append(name)
    return EXIT_VERIFY if bad else EXIT_OK


def build_parser():
    parser = _Parser(prog="spinsq", description="Spin squeezing and pairwise concurrence of symmetric qubit ensembles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def state_flags(p, sweep=False):
        p.add_argument("--family", choices=FAMILIES)
        p.add_argument("--N", type=int)
        p.add_argument("--n", type=int, default=0)
        p.add_argument("--n-prime", type=int)
        if not sweep:
            p.add_argument("--theta", type=float, default=0.0)
        p.add_argument("--phi", type=float, default=0.0)
        p.add_argument("--degrees", action="store_true", help="angles are given in degrees")
        p.set_defaults(theta=0.0)

    def grid_flags(p, theta_steps, phi_steps):
        p.add_argument("--N-range", help="e.g. 2-10 or 3,5,7 (default 2-10)")
        p.add_argument("--theta-steps", type=int, default=theta_steps)
        p.add_argument("--phi-steps", type=int, default=phi_steps)

    p = sub.add_parser("analyze", help="all squeezing and concurrence quantities of one state")
    state_flags(p)
    p.add_argument("--state-file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="scan theta (and phi) of a family and locate threshold crossings")
    state_flags(p, sweep=True)
    p.add_argument("--theta-steps", type=int, default=256)
    p.add_argument("--phi-steps", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check xi_T^2 < 1 <=> C > 0 and the piecewise relations over grids")
    p.add_argument("--family", choices=("even-pair", "general-pair", "adjacent-pair"))
    p.add_argument("--N", type=int)
    p.add_argument("--n-prime", type=int)
    grid_flags(p, 128, 4)
    p.add_argument("--max-report", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle-check", help="compare against brute-force 2^N state vectors")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--N", type=int)
    p.add_argument("--n-prime", type=int)
    grid_flags(p, 32, 2)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-max-n", type=int, default=DEFAULT_MAX_N)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, SpinsqError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
