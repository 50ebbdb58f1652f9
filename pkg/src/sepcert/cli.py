"""``certify`` command-line front end.

Exit codes: 0 Separable, 1 EntangledNPT, 2 Inconclusive, 3 and above errors.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .errors import (
    DimensionMismatch,
    InputNotPSD,
    InvalidParameter,
    NonHermitianInput,
    ParseError,
    SepcertError,
)
from .families import gen_an_family, gen_pauli_family
from .matcore import DEFAULT_TOL
from .report import Report, parse_matrix_file, report_from_certificate
from .schmidt import hermitian_schmidt
from .separate import (
    CertVerdict,
    MultipartiteOperator,
    certify,
    separate_rank2_multipartite,
)
from .split import weak_irreducible_tree

EXIT_CODES = {
    CertVerdict.SEPARABLE: 0,
    CertVerdict.ENTANGLED_NPT: 1,
    CertVerdict.INCONCLUSIVE: 2,
}
EXIT_INPUT_NOT_PSD = 3
EXIT_BAD_INPUT = 4
EXIT_PARSE = 5
EXIT_INTERNAL = 6

BATCH_SUFFIXES = {".mat", ".txt", ".json"}


def build_parser():
    p = argparse.ArgumentParser(
        prog="certify",
        description="Certify separability of a positive semidefinite bipartite matrix.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", type=Path, help="matrix file (plain text or JSON)")
    src.add_argument("--pauli", nargs=3, type=float, metavar=("D2", "D3", "D4"))
    src.add_argument("--an", nargs=3, type=float, metavar=("N", "LAMBDA1", "LAMBDA2"))
    src.add_argument("--batch", type=Path, metavar="DIR", help="certify every matrix file in DIR")
    p.add_argument("--dims", nargs="+", type=int, help="factor dimensions (overrides the file header)")
    p.add_argument("--tol-psd", type=float)
    p.add_argument("--tol-rank", type=float)
    p.add_argument("--tol-degeneracy", type=float)
    p.add_argument("--emit-decomposition", action="store_true")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--schmidt", action="store_true", help="print the Hermitian Schmidt decomposition only")
    mode.add_argument("--split", action="store_true", help="print the weak irreducible decomposition only")
    p.add_argument("--output", "-o", type=Path, help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=None, help="worker threads for --batch")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _error_report(kind, message, cfg, **diag):
    return Report(verdict="error", reason=f"{kind}: {message}", diagnostics=diag,
                  tolerances=cfg.as_dict(), version=__version__)


def _schmidt_report(op, cfg):
    sd = hermitian_schmidt(op, cfg)
    terms = [(lam * g, d) for lam, g, d in sd.terms()]
    return Report(
        verdict="schmidt",
        diagnostics={"lambdas": sd.lambdas.tolist(), "tensor_rank": len(sd), "dims": [op.k, op.m]},
        decomposition=terms,
        tolerances=cfg.as_dict(),
        version=__version__,
    )


def _split_report(op, cfg):
    tree = weak_irreducible_tree(op, cfg)
    leaves = [(leaf.mat,) for leaf in tree.leaves]
    diag = {
        "type": tree.type_tag,
        "leaf_count": len(tree),
        "leaf_norms": [leaf.norm for leaf in tree.leaves],
        "leaf_tensor_ranks": [len(hermitian_schmidt(leaf, cfg)) for leaf in tree.leaves],
    }
    return Report(verdict="split", diagnostics=diag, decomposition=leaves,
                  tolerances=cfg.as_dict(), version=__version__)


def _multipartite_report(op, cfg, emit):
    try:
        terms = separate_rank2_multipartite(op, cfg)
    except InputNotPSD:
        raise
    except (ArithmeticError, SepcertError) as exc:
        return Report(verdict=CertVerdict.INCONCLUSIVE.value, reason=f"{type(exc).__name__}: {exc}",
                      diagnostics={"route": "multipartite_tensor_rank_2", "dims": list(op.dims)},
                      tolerances=cfg.as_dict(), version=__version__), 2
    rep = Report(
        verdict=CertVerdict.SEPARABLE.value,
        diagnostics={"route": "multipartite_tensor_rank_2", "dims": list(op.dims), "terms": len(terms)},
        decomposition=terms if emit else None,
        tolerances=cfg.as_dict(),
        version=__version__,
    )
    return rep, 0


def _load(args, cfg, path=None):
    """Operator and effective tolerances from the parsed arguments."""
    if path is not None or args.file is not None:
        parsed = parse_matrix_file(path or args.file, args.dims, cfg)
        if parsed.tolerances:
            cfg = cfg.replace(**{k: float(v) for k, v in parsed.tolerances.items()})
            cfg = cfg.replace(psd_tol=args.tol_psd, rank_tol=args.tol_rank, degeneracy_tol=args.tol_degeneracy)
        return parsed.operator, cfg
    if args.pauli is not None:
        return gen_pauli_family(*args.pauli), cfg
    n, l1, l2 = args.an
    if n != int(n):
        raise InvalidParameter(f"n must be an integer, got {n}")
    return gen_an_family(int(n), l1, l2), cfg


def run_one(args, cfg, path=None):
    """``(exit_code, Report)`` for one matrix."""
    try:
        op, cfg = _load(args, cfg, path)
        if isinstance(op, MultipartiteOperator):
            if args.schmidt or args.split:
                op = op.flatten()
            else:
                rep, code = _multipartite_report(op, cfg, args.emit_decomposition)
                return code, rep
        if args.schmidt:
            return 0, _schmidt_report(op, cfg)
        if args.split:
            return 0, _split_report(op, cfg)
        cert = certify(op, cfg)
        return EXIT_CODES[cert.verdict], report_from_certificate(cert, cfg, __version__, args.emit_decomposition)
    except InputNotPSD as exc:
        return EXIT_INPUT_NOT_PSD, _error_report("InputNotPSD", exc, cfg, min_eigenvalue=exc.min_eigenvalue)
    except NonHermitianInput as exc:
        return EXIT_BAD_INPUT, _error_report("NonHermitianInput", exc, cfg, hermiticity_residual=exc.residual)
    except (DimensionMismatch, InvalidParameter) as exc:
        return EXIT_BAD_INPUT, _error_report(type(exc).__name__, exc, cfg)
    except ParseError as exc:
        return EXIT_PARSE, _error_report("ParseError", exc, cfg)
    except SepcertError as exc:
        return EXIT_INTERNAL, _error_report(type(exc).__name__, exc, cfg)


def _render(rep, fmt):
    return rep.to_json(indent=2) if fmt == "structured" else rep.to_text()


def run_batch(args, cfg):
    files = sorted(p for p in args.batch.iterdir() if p.is_file() and p.suffix.lower() in BATCH_SUFFIXES)
    if not files:
        return EXIT_PARSE, [_error_report("ParseError", f"no matrix files in {args.batch}", cfg)], []
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda f: run_one(args, cfg, f), files))
    codes = [c for c, _ in results]
    return max(codes), [r for _, r in results], files


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = DEFAULT_TOL.replace(psd_tol=args.tol_psd, rank_tol=args.tol_rank, degeneracy_tol=args.tol_degeneracy)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    if args.batch is not None:
        code, reports, files = run_batch(args, cfg)
        if args.format == "structured":
            import json

            body = json.dumps(
                {"files": [str(f) for f in files], "reports": [r.to_dict() for r in reports]}, indent=2
            )
        else:
            blocks = [f"== {f}\n{r.to_text()}" for f, r in zip(files, reports)] or [reports[0].to_text()]
            body = "\n\n".join(blocks)
    else:
        code, rep = run_one(args, cfg)
        body = _render(rep, args.format)
        if code > 2:
            print(f"error: {rep.reason}", file=sys.stderr)

    if args.output is not None:
        args.output.write_text(body + "\n")
    else:
        print(body)
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
