"""Command-line front end: ``perfectw <command> ...``.

Exit status: 0 on success, 1 on a domain error raised by the library,
2 on unreadable input or bad arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import circuit, entanglement, evolution, fock, lattice, synthesis
from .errors import PerfectWError
from .states import AlphaVector, PhotonAmplitudes


class InputError(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _input_state(args, dim: int, default_mode: int | None) -> PhotonAmplitudes:
    if getattr(args, "state", None):
        return PhotonAmplitudes.from_json(_load_json(args.state))
    mode = args.input_mode or default_mode
    if mode is None:
        raise PerfectWError("give --input-mode or --state")
    return PhotonAmplitudes.basis(dim, mode)


def _lattice(path: str):
    try:
        spec = lattice.spec_from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, PerfectWError):
            raise
        raise InputError(f"malformed lattice spec in {path}: {exc}") from exc
    default_mode = spec.dim if isinstance(spec, lattice.RingSpec) else None
    return spec, lattice.lattice_matrix(spec), default_mode


def cmd_evolve(args) -> None:
    _, m, default_mode = _lattice(args.lattice)
    state = _input_state(args, m.shape[0], default_mode)
    _emit(_dump(evolution.evolve(m, args.z, state).to_json()), args.out)


def cmd_trace(args) -> None:
    _, m, default_mode = _lattice(args.lattice)
    state = _input_state(args, m.shape[0], default_mode)
    grid = np.linspace(0.0, args.z_max, args.points)
    _emit(evolution.probability_trace(m, state, grid).to_csv(), args.out)


def cmd_synthesize(args) -> None:
    obj = _load_json(args.problem)
    if args.seed is not None:
        obj["seed"] = args.seed
    try:
        problem = synthesis.SynthesisProblem.from_json(obj)
    except KeyError as exc:
        raise InputError(f"problem JSON lacks field {exc}") from exc
    _emit(_dump(synthesis.search_chain_parameters(problem).to_json()), args.out)


def cmd_ring_geometry(args) -> None:
    geometry = lattice.ring_geometry(args.n_ring, allow_long_range=args.allow_long_range)
    _emit(_dump(geometry.to_json()), args.out)


def cmd_verify(args) -> None:
    state = PhotonAmplitudes.from_json(_load_json(args.state))
    if args.alphas:
        alphas = AlphaVector.from_json(_load_json(args.alphas))
        report = entanglement.single_photon_condition(state, alphas)
    else:
        report = entanglement.auto_detect(state)
    _emit(_dump(report.to_json()), args.out)


def cmd_circuit_design(args) -> None:
    alphas = AlphaVector.from_json(_load_json(args.alphas))
    spec = circuit.design_circuit(alphas, phi_n=args.phi_n)
    _emit(_dump(spec.to_json()), args.out)


def cmd_circuit_measure(args) -> None:
    spec = circuit.CircuitSpec.from_json(_load_json(args.spec))
    state = PhotonAmplitudes.from_json(_load_json(args.state))
    _emit(_dump(circuit.measure_expectations(spec, state, args.phi_n)), args.out)


def cmd_circuit_generate(args) -> None:
    spec = circuit.CircuitSpec.from_json(_load_json(args.spec))
    _emit(_dump(circuit.generate_from_circuit(spec, args.port).to_json()), args.out)


def cmd_oracle_suite(args) -> None:
    modes = tuple(int(m) for m in args.modes.split(","))
    rows = fock.product_state_suite(args.count, args.seed, modes, args.cutoff)
    _emit(fock.suite_to_csv(rows), args.out)
    bad = sum(r["violates_eq20"] for r in rows)
    print(f"{len(rows)} product states, {bad} violations", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="perfectw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", help="output file (default: stdout)")
        p.set_defaults(func=func)
        return p

    p = add("evolve", cmd_evolve, "propagate a photon through a lattice")
    p.add_argument("lattice")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--input-mode", type=int)
    p.add_argument("--state")

    p = add("trace", cmd_trace, "probabilities versus distance as CSV")
    p.add_argument("lattice")
    p.add_argument("--z-max", type=float, required=True)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--input-mode", type=int)
    p.add_argument("--state")

    p = add("synthesize", cmd_synthesize, "search chain couplings for a target profile")
    p.add_argument("problem")
    p.add_argument("--seed", type=int)

    p = add("ring-geometry", cmd_ring_geometry, "resonant ring radius and spacing")
    p.add_argument("n_ring", type=int)
    p.add_argument("--allow-long-range", action="store_true")

    p = add("verify", cmd_verify, "fidelity-gap entanglement test")
    p.add_argument("state")
    p.add_argument("--alphas")

    p = add("circuit-design", cmd_circuit_design, "coupler settings for an alpha vector")
    p.add_argument("alphas")
    p.add_argument("--phi-n", type=float, default=math.pi / 2)

    p = add("circuit-measure", cmd_circuit_measure, "detector difference and sum")
    p.add_argument("spec")
    p.add_argument("state")
    p.add_argument("--phi-n", type=float)

    p = add("circuit-generate", cmd_circuit_generate, "state produced by back-injection")
    p.add_argument("spec")
    p.add_argument("--port", choices=("b", "c"), required=True)

    p = add("oracle-suite", cmd_oracle_suite, "check the bound on seeded product states")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cutoff", type=int, default=2)
    p.add_argument("--modes", default="3,4,5")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, TypeError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return 2
    except PerfectWError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
