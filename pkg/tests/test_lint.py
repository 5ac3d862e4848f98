"""Source-level guard: the library performs no floating-point computation."""

import ast
from pathlib import Path

import zariski_no

SRC = Path(zariski_no.__file__).parent
BANNED_NAMES = {"float", "complex"}
BANNED_MODULES = {"math": {"sqrt", "pow", "exp", "log", "floor", "ceil", "fsum", "isclose"}}
BANNED_IMPORTS = {"numpy", "numba", "decimal", "cmath", "statistics", "random"}


def offences(path: Path):
    tree = ast.parse(path.read_text(), str(path))
    for node in ast.walk(tree):
        if isinstance(node, ast.Constant) and isinstance(node.value, (float, complex)):
            yield node.lineno, f"float literal {node.value!r}"
        elif isinstance(node, ast.Name) and node.id in BANNED_NAMES:
            yield node.lineno, f"use of {node.id}"
        elif isinstance(node, ast.Attribute) and isinstance(node.value, ast.Name):
            if node.attr in BANNED_MODULES.get(node.value.id, ()):
                yield node.lineno, f"{node.value.id}.{node.attr}"
        elif isinstance(node, ast.ImportFrom) and node.module:
            if node.module.split(".")[0] in BANNED_IMPORTS:
                yield node.lineno, f"import from {node.module}"
            for alias in node.names:
                if alias.name in BANNED_MODULES.get(node.module, ()):
                    yield node.lineno, f"{node.module}.{alias.name}"
        elif isinstance(node, ast.Import):
            for alias in node.names:
                if alias.name.split(".")[0] in BANNED_IMPORTS:
                    yield node.lineno, f"import {alias.name}"


def test_no_floating_point_in_core():
    found = [f"{p.name}:{line}: {msg}" for p in sorted(SRC.glob("*.py")) for line, msg in offences(p)]
    assert found == []


def test_lint_detects_floats(tmp_path):
    bad = tmp_path / "bad.py"
    bad.write_text("import math\nx = 0.5\ny = float(3)\nz = math.sqrt(2)\n")
    assert len(list(offences(bad))) == 3
