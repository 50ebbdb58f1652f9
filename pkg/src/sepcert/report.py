"""Matrix file parsing and machine-readable certification reports.

Plain text grammar::

    k m [more dims ...]
    re,im re,im ...        # one row per line, prod(dims) entries each

Blank lines and ``#`` comments are ignored.  The structured format is a
JSON object ``{"dims": [...], "entries": [[[re, im], ...], ...],
"tolerances": {...}}`` with ``tolerances`` optional.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, ParseError
from .matcore import DEFAULT_TOL, BipartiteOperator, check_hermitian, hermiticity_residual
from .separate import MultipartiteOperator

TOOL = "sepcert"
FORMAT_VERSION = 1


@dataclass
class ParsedMatrix:
    operator: object
    hermiticity_residual: float
    tolerances: dict = field(default_factory=dict)


def _parse_entry(tok, where):
    parts = tok.split(",")
    if len(parts) != 2:
        raise ParseError(f"{where}: expected 're,im', got {tok!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ParseError(f"{where}: bad number in {tok!r}") from exc


def _parse_text(text):
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((no, line))
    if not lines:
        raise ParseError("empty matrix file")
    no, head = lines[0]
    try:
        dims = [int(t) for t in head.split()]
    except ValueError as exc:
        raise ParseError(f"line {no}: header must list integer dimensions") from exc
    rows = []
    for no, line in lines[1:]:
        rows.append([_parse_entry(t, f"line {no}") for t in line.split()])
    return dims, rows, {}


def _parse_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError("structured file needs an 'entries' field")
    try:
        rows = [[complex(float(re), float(im)) for re, im in row] for row in obj["entries"]]
    except (TypeError, ValueError) as exc:
        raise ParseError("entries must be nested lists of [re, im] pairs") from exc
    dims = obj.get("dims")
    tol = obj.get("tolerances") or {}
    if not isinstance(tol, dict):
        raise ParseError("tolerances must be an object")
    return dims, rows, tol


def _build(mat, dims, cfg):
    total = math.prod(dims)
    if mat.shape != (total, total):
        raise DimensionMismatch(f"{mat.shape[0]}x{mat.shape[1]} matrix does not match dims {tuple(dims)}")
    herm = check_hermitian(mat, cfg)
    if len(dims) == 2:
        return BipartiteOperator(herm, *dims)
    return MultipartiteOperator(herm, tuple(dims))


def parse_matrix_file(path, dims=None, cfg=DEFAULT_TOL):
    """Read a matrix file and return a validated :class:`ParsedMatrix`.

    ``dims`` overrides the dimensions stored in the file.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        file_dims, rows, tol = _parse_json(text)
    else:
        file_dims, rows, tol = _parse_text(text)
    dims = list(dims) if dims is not None else file_dims
    if not dims:
        raise ParseError("matrix dimensions are missing")
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise DimensionMismatch(f"invalid dimensions {dims}")
    if not rows or any(len(r) != len(rows) for r in rows):
        raise DimensionMismatch(f"matrix is not square ({len(rows)} rows)")
    mat = np.array(rows, dtype=complex)
    if tol:
        cfg = cfg.replace(**{k: float(v) for k, v in tol.items()})
    return ParsedMatrix(_build(mat, dims, cfg), hermiticity_residual(mat), tol)


def write_matrix_text(path, mat, dims):
    """Write ``mat`` in the plain text grammar (``repr`` precision, lossless)."""
    mat = np.asarray(mat, dtype=complex)
    out = [" ".join(str(int(d)) for d in dims)]
    for row in mat:
        out.append(" ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row))
    Path(path).write_text("\n".join(out) + "\n")


def encode_matrix(mat):
    mat = np.asarray(mat, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def decode_matrix(obj):
    return np.array([[complex(re, im) for re, im in row] for row in obj], dtype=complex)


def _plain(x):
    """JSON-ready copy of diagnostics (numpy scalars and arrays included)."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return _plain(np.stack([x.real, x.imag], axis=-1))
        return x.tolist()
    if isinstance(x, np.generic):
        return x.item()
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    return x


@dataclass
class Report:
    verdict: str
    diagnostics: dict = field(default_factory=dict)
    decomposition: list = None
    witness: np.ndarray = None
    negative_eigenvalue: float = None
    reason: str = None
    tolerances: dict = field(default_factory=dict)
    tool: str = TOOL
    version: str = None

    def to_dict(self):
        out = {
            "tool": self.tool,
            "version": self.version,
            "format_version": FORMAT_VERSION,
            "verdict": self.verdict,
            "reason": self.reason,
            "tolerances": dict(self.tolerances),
            "diagnostics": _plain(self.diagnostics),
        }
        if self.negative_eigenvalue is not None:
            out["negative_eigenvalue"] = float(self.negative_eigenvalue)
        if self.witness is not None:
            out["witness"] = [[float(z.real), float(z.imag)] for z in np.asarray(self.witness, dtype=complex)]
        if self.decomposition is not None:
            out["decomposition"] = [[encode_matrix(f) for f in term] for term in self.decomposition]
        return out

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, obj):
        witness = obj.get("witness")
        if witness is not None:
            witness = np.array([complex(re, im) for re, im in witness])
        dec = obj.get("decomposition")
        if dec is not None:
            dec = [tuple(decode_matrix(f) for f in term) for term in dec]
        return cls(
            verdict=obj["verdict"],
            diagnostics=obj.get("diagnostics", {}),
            decomposition=dec,
            witness=witness,
            negative_eigenvalue=obj.get("negative_eigenvalue"),
            reason=obj.get("reason"),
            tolerances=obj.get("tolerances", {}),
            tool=obj.get("tool", TOOL),
            version=obj.get("version"),
        )

    @classmethod
    def from_json(cls, text):
        try:
            return cls.from_dict(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"not a valid report: {exc}") from exc

    def to_text(self):
        lines = [f"verdict: {self.verdict}"]
        if self.reason:
            lines.append(f"reason: {self.reason}")
        diag = _plain(self.diagnostics)
        for key in sorted(diag):
            lines.append(f"{key}: {diag[key]}")
        if self.negative_eigenvalue is not None:
            lines.append(f"negative partial-transpose eigenvalue: {self.negative_eigenvalue:.12g}")
        if self.witness is not None:
            w = np.asarray(self.witness)
            lines.append("witness: " + " ".join(f"{z.real:.10g},{z.imag:.10g}" for z in w))
        if self.decomposition is not None:
            lines.append(f"decomposition: {len(self.decomposition)} terms")
            for i, term in enumerate(self.decomposition):
                for j, f in enumerate(term):
                    lines.append(f"  term {i} factor {j}:")
                    for row in np.asarray(f):
                        lines.append("    " + " ".join(f"{z.real:.10g},{z.imag:.10g}" for z in row))
        lines.append("tolerances: " + ", ".join(f"{k}={v:g}" for k, v in self.tolerances.items()))
        lines.append(f"tool: {self.tool} {self.version}")
        return "\n".join(lines)


def report_from_certificate(cert, cfg, version, emit_decomposition=False):
    dec = None
    if emit_decomposition and cert.decomposition is not None:
        dec = [tuple(p) for p in cert.decomposition.pairs]
    return Report(
        verdict=cert.verdict.value,
        diagnostics=_plain(cert.diagnostics),
        decomposition=dec,
        witness=cert.witness,
        negative_eigenvalue=cert.negative_eigenvalue,
        reason=cert.reason,
        tolerances=cfg.as_dict(),
        version=version,
    )
