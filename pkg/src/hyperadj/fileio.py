"""JSON formats for divisors and adjoint problems.

Every exact value is stored as a string in the parser grammar, never as a
float.  A divisor file looks like::

    {
      "name": "phi1",
      "transcendentals": ["s"],
      "extensions": [{"gen": "alpha", "minpoly": "alpha^2 + s"}],
      "images": ["1", "-8/s*t^3", ...],
      "adjoint_order": 9
    }

``adjoint_order`` is optional.  A file may also hold a list of such objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .adjoint import AdjointProblem
from .divisor import FormalPrimeDivisor
from .errors import DivisionByZero, FormatError, ParseError, UnknownSymbol
from .fieldtower import FieldTower, TowerElem
from .parsing import parse_expr, parse_poly, parse_series
from .polyring import MultiPoly
from .puiseux import DEFAULT_PRECISION_CAP

__all__ = [
    "Problem",
    "tower_to_json",
    "tower_from_json",
    "divisor_to_json",
    "divisor_from_json",
    "dump_divisors",
    "load_divisors",
    "load_problem",
]

DIVISOR_KEYS = ("name", "transcendentals", "extensions", "images", "adjoint_order")
PROBLEM_KEYS = ("variables", "hypersurface", "m", "n", "divisors", "options")
OPTION_KEYS = ("order", "normalize_rows", "precision_cap")
ORDERS = ("degrevlex", "lex")


# -- towers -------------------------------------------------------------------

def _minpoly_coeffs(text: str, gen: str, tower: FieldTower) -> list[TowerElem]:
    """Ascending coefficients of a univariate polynomial in ``gen`` over ``tower``."""
    tree = parse_expr(text)

    def add(a, b):
        n = max(len(a), len(b))
        z = tower.zero
        return [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)]

    def mul(a, b):
        out = [tower.zero] * (len(a) + len(b) - 1) if a and b else []
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return out

    def ev(node):
        tag = node[0]
        if tag == "num":
            return [tower.from_rational(node[1])]
        if tag == "name":
            if node[1] == gen:
                return [tower.zero, tower.one]
            if node[1] in tower.symbols:
                return [tower.symbol(node[1])]
            raise UnknownSymbol(f"unknown symbol {node[1]!r} at position {node[2]}")
        if tag == "neg":
            return [-c for c in ev(node[1])]
        if tag == "add":
            return add(ev(node[1]), ev(node[2]))
        if tag == "sub":
            return add(ev(node[1]), [-c for c in ev(node[2])])
        if tag == "mul":
            return mul(ev(node[1]), ev(node[2]))
        if tag == "div":
            den = [c for c in ev(node[2])]
            while den and not den[-1]:
                den.pop()
            if len(den) > 1:
                raise ParseError(f"division by a polynomial in {gen}", text, node[3])
            if not den:
                raise DivisionByZero(f"division by zero at position {node[3]}")
            inv = den[0].inverse()
            return [c * inv for c in ev(node[1])]
        if tag == "pow":
            if node[2] < 0:
                raise ParseError("negative exponent in a minimal polynomial", text, node[3])
            out = [tower.one]
            base = ev(node[1])
            for _ in range(node[2]):
                out = mul(out, base)
            return out
        raise ParseError("O(...) is not allowed in a minimal polynomial", text, node[2])

    coeffs = ev(tree)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def tower_to_json(tower: FieldTower) -> dict:
    return {
        "transcendentals": list(tower.transcendentals),
        "extensions": [
            {"gen": g, "minpoly": tower.format_minpoly(k + 1)} for k, g in enumerate(tower.gens)
        ],
    }


def tower_from_json(transcendentals: Sequence[str], extensions: Sequence[dict]) -> FieldTower:
    if not isinstance(transcendentals, list) or not all(isinstance(s, str) for s in transcendentals):
        raise FormatError("transcendentals must be a list of names")
    if not isinstance(extensions, list):
        raise FormatError("extensions must be a list")
    K = FieldTower(transcendentals)
    for ext in extensions:
        if not isinstance(ext, dict) or set(ext) != {"gen", "minpoly"}:
            raise FormatError("each extension needs exactly the keys 'gen' and 'minpoly'")
        gen, text = ext["gen"], ext["minpoly"]
        if not isinstance(gen, str) or not isinstance(text, str):
            raise FormatError("extension fields must be strings")
        coeffs = _minpoly_coeffs(text, gen, K)
        if len(coeffs) < 2:
            raise FormatError(f"minimal polynomial of {gen} has degree below 1")
        lc = coeffs[-1].inverse()
        K = K.extend(gen, [c * lc for c in coeffs])
    return K


# -- divisors -------------------------------------------------------------------

def divisor_to_json(phi: FormalPrimeDivisor) -> dict:
    out: dict[str, Any] = {"name": phi.name}
    out.update(tower_to_json(phi.tower))
    out["images"] = [str(im) for im in phi.images]
    if phi.adjoint_order_hint is not None:
        out["adjoint_order"] = phi.adjoint_order_hint
    return out


def divisor_from_json(data: Any) -> FormalPrimeDivisor:
    if not isinstance(data, dict):
        raise FormatError("a divisor must be a JSON object")
    unknown = sorted(set(data) - set(DIVISOR_KEYS))
    if unknown:
        raise FormatError(f"unknown divisor keys: {', '.join(unknown)}")
    for key in ("name", "images"):
        if key not in data:
            raise FormatError(f"divisor is missing {key!r}")
    name = data["name"]
    if not isinstance(name, str):
        raise FormatError("divisor name must be a string")
    K = tower_from_json(data.get("transcendentals", []), data.get("extensions", []))
    images = data["images"]
    if not isinstance(images, list) or not all(isinstance(s, str) for s in images):
        raise FormatError(f"divisor {name}: images must be a list of strings")
    hint = data.get("adjoint_order")
    if hint is not None and (isinstance(hint, bool) or not isinstance(hint, int)):
        raise FormatError(f"divisor {name}: adjoint_order must be an integer")
    return FormalPrimeDivisor(name, K, [parse_series(s, K) for s in images], hint)


def dump_divisors(divisors: Sequence[FormalPrimeDivisor] | FormalPrimeDivisor) -> str:
    """Deterministic JSON text for one divisor or a list of them."""
    if isinstance(divisors, FormalPrimeDivisor):
        payload: Any = divisor_to_json(divisors)
    else:
        payload = [divisor_to_json(d) for d in divisors]
    return json.dumps(payload, indent=2) + "\n"


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _reject_float(text: str):
    raise FormatError(f"floating point value {text} is not allowed; write exact values as strings")


def _divisors_from(payload: Any) -> list[FormalPrimeDivisor]:
    items = payload if isinstance(payload, list) else [payload]
    return [divisor_from_json(d) for d in items]


def load_divisors(path: str | Path) -> list[FormalPrimeDivisor]:
    """Divisors from a file (object or list) or from every ``*.json`` in a directory."""
    path = Path(path)
    if path.is_dir():
        out = []
        for p in sorted(path.glob("*.json")):
            out.extend(_divisors_from(_read_json(p)))
        return out
    return _divisors_from(_read_json(path))


# -- problems -------------------------------------------------------------------

@dataclass
class Problem:
    variables: tuple[str, ...]
    F: MultiPoly
    m: int = 1
    n: int = 0
    divisors: list[FormalPrimeDivisor] = field(default_factory=list)
    order: str = "degrevlex"
    normalize_rows: bool = False
    precision_cap: int = DEFAULT_PRECISION_CAP

    def adjoint_problem(self) -> AdjointProblem:
        return AdjointProblem(self.F, self.m, self.n, self.divisors, self.order, self.normalize_rows)


def _int_field(data: dict, key: str, default: int) -> int:
    v = data.get(key, default)
    if isinstance(v, str):
        try:
            v = int(v)
        except ValueError:
            raise FormatError(f"{key} must be an integer, got {v!r}") from None
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{key} must be an integer")
    return v


def problem_from_json(data: Any, base: Path | None = None) -> Problem:
    if not isinstance(data, dict):
        raise FormatError("a problem must be a JSON object")
    unknown = sorted(set(data) - set(PROBLEM_KEYS))
    if unknown:
        raise FormatError(f"unknown problem keys: {', '.join(unknown)}")
    for key in ("variables", "hypersurface"):
        if key not in data:
            raise FormatError(f"problem is missing {key!r}")
    vs = data["variables"]
    if not isinstance(vs, list) or not vs or not all(isinstance(v, str) for v in vs):
        raise FormatError("variables must be a non-empty list of names")
    if len(set(vs)) != len(vs):
        raise FormatError("variables must be distinct")
    if not isinstance(data["hypersurface"], str):
        raise FormatError("hypersurface must be a polynomial string")
    F = parse_poly(data["hypersurface"], vs)
    opts = data.get("options", {})
    if not isinstance(opts, dict):
        raise FormatError("options must be an object")
    unknown = sorted(set(opts) - set(OPTION_KEYS))
    if unknown:
        raise FormatError(f"unknown option keys: {', '.join(unknown)}")
    order = opts.get("order", "degrevlex")
    if order not in ORDERS:
        raise FormatError(f"order must be one of {', '.join(ORDERS)}")
    normalize = opts.get("normalize_rows", False)
    if not isinstance(normalize, bool):
        raise FormatError("normalize_rows must be true or false")
    cap = _int_field(opts, "precision_cap", DEFAULT_PRECISION_CAP)
    divisors: list[FormalPrimeDivisor] = []
    raw_divs = data.get("divisors", [])
    if not isinstance(raw_divs, list):
        raise FormatError("divisors must be a list")
    for item in raw_divs:
        if isinstance(item, str):
            p = Path(item)
            if not p.is_absolute() and base is not None:
                p = base / p
            divisors.extend(load_divisors(p))
        else:
            divisors.append(divisor_from_json(item))
    return Problem(
        tuple(vs), F, _int_field(data, "m", 1), _int_field(data, "n", 0),
        divisors, order, normalize, cap,
    )


def load_problem(path: str | Path) -> Problem:
    path = Path(path)
    return problem_from_json(_read_json(path), path.parent)
