"""Write matrix files and run the certify command on them."""

import json
import tempfile
from pathlib import Path

import numpy as np

from sepcert.cli import main
from sepcert.report import Report, write_matrix_text

tmp = Path(tempfile.mkdtemp())
reports = Path(tempfile.mkdtemp())
bell = np.outer([1, 0, 0, 1.0], [1, 0, 0, 1.0]) / 2
write_matrix_text(tmp / "bell.mat", bell, (2, 2))
write_matrix_text(tmp / "mixed.mat", np.eye(4) / 4, (2, 2))
print((tmp / "bell.mat").read_text())

code = main(["--file", str(tmp / "bell.mat"), "--dims", "2", "2"])
print("exit code", code)

out = reports / "pauli.json"
code = main(["--pauli", "0.2", "0.2", "0.2", "--emit-decomposition", "--format", "structured", "-o", str(out)])
rep = Report.from_json(out.read_text())
print("\npauli exit code", code, "verdict", rep.verdict, "terms", len(rep.decomposition))

code = main(["--batch", str(tmp), "--format", "structured", "-o", str(reports / "batch.json")])
print("batch exit code", code, [r["verdict"] for r in json.loads((reports / "batch.json").read_text())["reports"]])
