"""JSON formats for algebras, elements and linear maps.

Rationals are always strings "p" or "p/q"; floats are rejected.

    algebra:  {"dim": n, "basis": [...], "unit": [...], "mul": c[i][j][k]}
    element:  {"coords": [...]}            (optionally "algebra": ref)
    map:      {"matrix": [[...]], "domain": ref, "codomain": ref}

A ref is either a path relative to the file that contains it or an inline
algebra object.
"""

import json
from pathlib import Path

from .algebra import Algebra, Element, LinearMap, check_algebra_axioms, to_q


class InputError(ValueError):
    """Bad input file; the CLI turns this into exit code 3."""


def q_str(x):
    return str(to_q(x))


def _rational(v, where):
    if isinstance(v, float):
        raise InputError(f"{where}: floating point value {v!r}; write rationals as strings")
    try:
        return to_q(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _vector(v, n, where):
    if not isinstance(v, list) or len(v) != n:
        raise InputError(f"{where}: expected a list of {n} rationals")
    return [_rational(x, f"{where}[{i}]") for i, x in enumerate(v)]


def read_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from None


def algebra_to_json(A):
    c = A.structure_constants
    return {"dim": A.dim, "basis": list(A.labels), "unit": [q_str(u) for u in A.unit],
            "mul": [[[q_str(x) for x in ck] for ck in cj] for cj in c]}


def algebra_from_json(obj, where="algebra", validate=True):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    for key in ("dim", "unit", "mul"):
        if key not in obj:
            raise InputError(f"{where}: missing field {key!r}")
    n = obj["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"{where}: dim must be a positive integer")
    labels = obj.get("basis")
    if labels is None:
        labels = [f"e{i}" for i in range(n)]
    if not isinstance(labels, list) or len(labels) != n:
        raise InputError(f"{where}: basis must list {n} labels")
    unit = _vector(obj["unit"], n, f"{where}.unit")
    mul = obj["mul"]
    if not isinstance(mul, list) or len(mul) != n:
        raise InputError(f"{where}.mul: expected a {n}x{n}x{n} array")
    c = []
    for i, row in enumerate(mul):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{where}.mul[{i}]: expected {n} entries")
        c.append([_vector(v, n, f"{where}.mul[{i}][{j}]") for j, v in enumerate(row)])
    A = Algebra.from_structure_constants(c, unit, [str(x) for x in labels])
    if validate:
        report = check_algebra_axioms(A)
        if not report.ok:
            ax, ix = report.violations[0]
            raise InputError(f"{where}: structure constants violate {ax} at {list(ix)} "
                             f"({len(report.violations)} violations)")
    return A


def element_to_json(a):
    return {"coords": [q_str(x) for x in a.coords]}


def element_from_json(obj, algebra, where="element"):
    if not isinstance(obj, dict) or "coords" not in obj:
        raise InputError(f"{where}: expected an object with 'coords'")
    return Element(algebra, _vector(obj["coords"], algebra.dim, f"{where}.coords"))


def map_to_json(f, domain=None, codomain=None):
    return {"matrix": [[q_str(x) for x in row] for row in f.matrix],
            "domain": domain if domain is not None else algebra_to_json(f.domain),
            "codomain": codomain if codomain is not None else algebra_to_json(f.codomain)}


def _resolve_algebra(ref, base, where):
    if isinstance(ref, dict):
        return algebra_from_json(ref, where)
    if isinstance(ref, str):
        path = (base / ref) if base is not None else Path(ref)
        return load_algebra(path)
    raise InputError(f"{where}: expected a file reference or an inline algebra")


def map_from_json(obj, base=None, where="map"):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    for key in ("matrix", "domain", "codomain"):
        if key not in obj:
            raise InputError(f"{where}: missing field {key!r}")
    A = _resolve_algebra(obj["domain"], base, f"{where}.domain")
    B = _resolve_algebra(obj["codomain"], base, f"{where}.codomain")
    m = obj["matrix"]
    if not isinstance(m, list) or len(m) != B.dim:
        raise InputError(f"{where}.matrix: expected {B.dim} rows (codomain dimension)")
    rows = [_vector(r, A.dim, f"{where}.matrix[{i}]") for i, r in enumerate(m)]
    return LinearMap(A, B, rows)


def load_algebra(path):
    return algebra_from_json(read_json(path), str(path))


def load_map(path):
    path = Path(path)
    return map_from_json(read_json(path), path.parent, str(path))


def load_element(path, algebra):
    return element_from_json(read_json(path), algebra, str(path))


def dump(obj, path=None):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
