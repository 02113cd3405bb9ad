"""hamgen command line: molecule fixtures in the shared JSON format."""

from __future__ import annotations

import argparse
import sys

from .generate import GenerationError, generate, scan_bond_length, spec_for
from .scf import SCFError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamgen",
        description="Generate molecular qubit-Hamiltonian fixture files "
        "(STO-3G, parity mapping, two-qubit reduction)",
    )
    parser.add_argument("--molecule", required=True, choices=["h2", "lih", "h2o"])
    parser.add_argument("--bond-length", type=float, default=None, dest="bond_length",
                        help="diatomic bond length in angstrom (default: equilibrium)")
    parser.add_argument("--scan", default=None,
                        help="comma-separated bond lengths; writes one file per length "
                        "into the --out directory")
    parser.add_argument("--out", required=True,
                        help="output file path (or directory with --scan)")
    parser.add_argument("--chop", type=float, default=1e-10,
                        help="drop mapped terms with |coeff| below this")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.scan:
            lengths = [float(x) for x in args.scan.split(",") if x.strip()]
            paths = scan_bond_length(args.molecule, lengths, args.out)
            for p in paths:
                print(p)
        else:
            spec = spec_for(args.molecule, bond_length=args.bond_length)
            doc = generate(spec, out_path=args.out, chop=args.chop)
            print(
                f"{args.out}: {doc['n_qubits']} qubits, {len(doc['terms'])} terms, "
                f"E_HF={doc['metadata']['hf_energy']:.10f}, "
                f"E_0={doc['metadata']['exact_energy']:.10f}"
            )
    except (GenerationError, SCFError) as exc:
        print(f"error[EGEN]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[EIO]: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
