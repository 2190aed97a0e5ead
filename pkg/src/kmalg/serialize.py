"""JSON schemas (kmalg/1) and the deterministic text rendering of elements.

Exact scalars travel as "p/q" strings (never floats); a scalar is a
[re, im] pair of such strings. Loop elements reference algebras through a
small registry of named built-ins and carry their twist order.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .findim import FiniteAutomorphism, direct_sum, make_abelian, make_sl, make_su
from .involution import CoeffMap, InvolutionDescriptor
from .kmext import ExtendedElement
from .loop import TwistedLoopElement, untwisted
from .scalars import Scalar, ZERO

SCHEMA = "kmalg/1"


class SchemaError(ValueError):
    pass


class ParseFailure(ValueError):
    pass


# -- scalars ---------------------------------------------------------------

def scalar_to_json(s: Scalar):
    return [str(s.re), str(s.im)]


def scalar_from_json(obj) -> Scalar:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SchemaError(f"scalar must be a [re, im] pair, got {obj!r}")
    try:
        return Scalar(Fraction(obj[0]), Fraction(obj[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational in scalar: {obj!r}") from exc


# -- algebra registry --------------------------------------------------------

def _registry():
    su2 = make_su(2)
    a1 = su2.complexify()
    double = direct_sum(su2, su2, name="su(2)+su(2)").complexify()
    sl2c = make_sl(2, "C")
    ab1 = make_abelian(1, "R").complexify()
    entries = {}

    def twist2(alg, rows):
        from .findim import automorphism_from_order

        return automorphism_from_order(alg, rows)

    entries["su2c"] = (a1, {1: untwisted(a1), 2: twist2(a1, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])})
    entries["sl2c"] = (sl2c, {1: untwisted(sl2c), 2: twist2(sl2c, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])})
    entries["su2su2c"] = (double, {1: untwisted(double)})
    entries["abelian1c"] = (ab1, {1: untwisted(ab1)})
    return entries


_REGISTRY = None


def registry():
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _registry()
    return _REGISTRY


def lookup_algebra(name: str, twist_order: int):
    reg = registry()
    if name not in reg:
        raise SchemaError(f"unknown algebra {name!r}; known: {sorted(reg)}")
    algebra, twists = reg[name]
    if twist_order not in twists:
        raise SchemaError(f"algebra {name!r} has no canonical twist of order {twist_order}")
    return algebra, twists[twist_order]


def algebra_name(algebra) -> str:
    for name, (alg, _) in registry().items():
        if alg is algebra:
            return name
    raise SchemaError(f"algebra {algebra.name} is not in the registry")


# -- finite algebra elements ---------------------------------------------------

def finite_element_to_json(algebra, coords):
    return {
        "schema": SCHEMA,
        "algebra": algebra_name(algebra),
        "coords": [scalar_to_json(c) for c in coords],
    }


def finite_element_from_json(obj):
    _check_schema(obj)
    if "algebra" not in obj or "coords" not in obj:
        raise SchemaError("finite element needs 'algebra' and 'coords'")
    algebra, _ = lookup_algebra(obj["algebra"], 1)
    coords = tuple(scalar_from_json(c) for c in obj["coords"])
    if len(coords) != algebra.dim:
        raise SchemaError(f"expected {algebra.dim} coords, got {len(coords)}")
    return algebra, coords


# -- loop and extended elements ----------------------------------------------

def loop_to_json(f: TwistedLoopElement):
    return {
        "schema": SCHEMA,
        "algebra": algebra_name(f.algebra),
        "twist_order": f.twist.order,
        "terms": [
            {"k": k, "coords": [scalar_to_json(c) for c in f.terms[k]]} for k in sorted(f.terms)
        ],
    }


def loop_from_json(obj) -> TwistedLoopElement:
    _check_schema(obj)
    for key in ("algebra", "twist_order", "terms"):
        if key not in obj:
            raise SchemaError(f"loop element missing {key!r}")
    algebra, twist = lookup_algebra(obj["algebra"], obj["twist_order"])
    terms = {}
    for t in obj["terms"]:
        if "k" not in t or "coords" not in t:
            raise SchemaError("each term needs 'k' and 'coords'")
        coords = tuple(scalar_from_json(c) for c in t["coords"])
        if len(coords) != algebra.dim:
            raise SchemaError(
                f"term at k={t['k']} has {len(coords)} coords, algebra dim is {algebra.dim}"
            )
        terms[int(t["k"])] = coords
    return TwistedLoopElement(algebra, twist, terms)


def extended_to_json(x: ExtendedElement):
    return {
        "schema": SCHEMA,
        "loop": loop_to_json(x.loop),
        "c": scalar_to_json(x.c),
        "d": scalar_to_json(x.d),
    }


def extended_from_json(obj) -> ExtendedElement:
    _check_schema(obj)
    if "loop" not in obj:
        raise SchemaError("extended element missing 'loop'")
    return ExtendedElement(
        loop_from_json(obj["loop"]),
        scalar_from_json(obj.get("c", ["0", "0"])),
        scalar_from_json(obj.get("d", ["0", "0"])),
    )


def involution_from_json(obj, algebra) -> InvolutionDescriptor:
    _check_schema(obj)
    spec = obj.get("rho_plus")
    if not isinstance(spec, dict) or "matrix" not in spec:
        raise SchemaError("involution needs rho_plus.matrix")
    rows = [[scalar_from_json(x) for x in row] for row in spec["matrix"]]
    if len(rows) != algebra.dim or any(len(r) != algebra.dim for r in rows):
        raise SchemaError("rho_plus matrix has the wrong shape")
    conj = bool(obj.get("conjugate_linear", False))
    reflect = bool(obj.get("reflect_time", True))
    eps = int(obj.get("epsilon", -1))
    s = (-1 if reflect else 1) * (-1 if conj else 1)
    return InvolutionDescriptor(
        name=obj.get("name", "custom involution"),
        loop_map=CoeffMap(rows, index_sign=s, conjugate=conj),
        epsilon=eps,
        reflect_time=reflect,
        finite_part=FiniteAutomorphism(algebra, rows, conjugate_linear=conj, order=2),
    )


def _check_schema(obj):
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    if obj.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"unsupported schema {obj.get('schema')!r}")


def record_from_json(obj):
    """Custom OSAKA record: algebra + twist + form + involution + claims."""
    from .osaka import ExpectedKP, OsakaRecord, OsakaType

    _check_schema(obj)
    for key in ("name", "algebra", "twist_order", "form", "involution", "claimed_type"):
        if key not in obj:
            raise SchemaError(f"record missing {key!r}")
    algebra, twist = lookup_algebra(obj["algebra"], obj["twist_order"])
    form_spec = obj["form"]
    conj = None
    if form_spec.get("conj") is not None:
        cs = form_spec["conj"]
        conj = CoeffMap(
            [[scalar_from_json(x) for x in row] for row in cs["matrix"]],
            index_sign=int(cs.get("index_sign", -1)),
            conjugate=True,
            parity=int(cs.get("parity", 0)),
        )
    scale_text = form_spec.get("cd_scale", "1")
    if scale_text is None:
        cd_scale = None
    else:
        from .scalars import parse_scalar

        cd_scale = parse_scalar(scale_text)
    from .involution import RealFormDescriptor

    form = RealFormDescriptor(
        name=form_spec.get("name", obj["name"] + " form"),
        algebra=algebra, twist=twist, conj=conj, cd_scale=cd_scale,
    )
    inv = involution_from_json({"schema": SCHEMA, **obj["involution"]}, algebra)
    dims = {
        key: tuple(val) for key, val in obj.get(
            "expected_dims",
            {"zero": (0, 0), "even_pair": (0, 0), "odd_pair": (0, 0), "cd": (0, 2)},
        ).items()
    }
    return OsakaRecord(
        name=obj["name"], real_form=form, involution=inv,
        claimed_type=OsakaType(obj["claimed_type"]),
        expected_kp=ExpectedKP(inv.loop_map, dims),
        dual_name=obj.get("dual"),
    )


# -- text rendering ------------------------------------------------------------

def _scalar_factor(s: Scalar) -> str:
    """Scalar as a multiplicative prefix: '', '-', '3/2·', 'i·', '(1/2-3·i)·'."""
    if s == Scalar(1):
        return ""
    if s == Scalar(-1):
        return "-"
    text = str(s)
    if s.re and s.im:
        return f"({text})·"
    return f"{text}·"


def _render_matrix_sum(algebra, coords) -> str:
    m = algebra.matrix(coords)
    parts = []
    for r in range(len(m)):
        for c in range(len(m[r])):
            v = m[r][c]
            if not v:
                continue
            parts.append(f"{_scalar_factor(v)}E{r + 1}{c + 1}")
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def _exp_str(k: int, m: int) -> str:
    if m == 1 or k % 2 == 0:
        return str(k // m if m == 2 else k)
    return f"({k}/2)"


def render_element(x: ExtendedElement) -> str:
    """Deterministic text form, ordered by degree then c then d."""
    m = x.loop.twist.order
    parts = []
    for k in sorted(x.loop.terms):
        parts.append(f"({_render_matrix_sum(x.loop.algebra, x.loop.terms[k])})·z^{_exp_str(k, m)}")
    if x.c:
        parts.append(f"{_scalar_factor(x.c)}c")
    if x.d:
        parts.append(f"{_scalar_factor(x.d)}d")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


_TERM_RE = re.compile(r"^\((?P<body>.*)\)·z\^(?P<exp>\(?-?\d+(?:/2)?\)?)$")
_UNIT_RE = re.compile(r"^(?P<factor>.*?)E(?P<r>\d)(?P<c>\d)$")


def parse_element(text: str, algebra, twist) -> ExtendedElement:
    """Inverse of render_element for the given algebra and twist."""
    from .findim import mat_add, mat_scale, mat_zero, _unit
    from .loop import zero_loop

    text = text.strip()
    if text == "0":
        return ExtendedElement(zero_loop(algebra, twist))
    chunks = _split_top_level(text)
    terms = {}
    c_val = ZERO
    d_val = ZERO
    m = twist.order
    for sign, chunk in chunks:
        if chunk in ("c", "-c") or chunk.endswith("·c"):
            c_val = c_val + sign * _parse_factor(chunk[:-1])
            continue
        if chunk in ("d", "-d") or chunk.endswith("·d"):
            d_val = d_val + sign * _parse_factor(chunk[:-1])
            continue
        mt = _TERM_RE.match(chunk)
        if not mt:
            raise ParseFailure(f"cannot parse term {chunk!r}")
        exp = mt.group("exp").strip("()")
        if "/" in exp:
            k = int(exp.split("/")[0])
            if m != 2:
                raise ParseFailure("half-integer exponent on an untwisted element")
        else:
            k = int(exp) * (2 if m == 2 else 1)
        mat_val = mat_zero(algebra.matrix_size)
        for usign, unit in _split_top_level(mt.group("body")):
            um = _UNIT_RE.match(unit)
            if not um:
                raise ParseFailure(f"cannot parse matrix unit {unit!r}")
            coeff = usign * _parse_factor(um.group("factor"))
            r, c = int(um.group("r")) - 1, int(um.group("c")) - 1
            mat_val = mat_add(mat_val, mat_scale(coeff, _unit(algebra.matrix_size, r, c)))
        coords = algebra.coords(mat_val)
        coords = tuple(sign * x for x in coords)
        if k in terms:
            coords = tuple(a + b for a, b in zip(terms[k], coords))
        terms[k] = coords
    loop = TwistedLoopElement(algebra, twist, terms)
    return ExtendedElement(loop, c_val, d_val)


def _parse_factor(text: str) -> Scalar:
    from .scalars import parse_scalar

    text = text.strip()
    if text.endswith("·"):
        text = text[:-1]
    if text in ("", "+"):
        return Scalar(1)
    if text == "-":
        return Scalar(-1)
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return parse_scalar(text)


def _split_top_level(text: str):
    """Split 'a + b - c' at depth zero into (sign, chunk) pairs."""
    out = []
    depth = 0
    sign = Scalar(1)
    cur = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and i > 0 and text[i - 1] == " " and i + 1 < len(text) and text[i + 1] == " ":
            out.append((sign, "".join(cur).strip()))
            sign = Scalar(1) if ch == "+" else Scalar(-1)
            cur = []
            i += 2
            continue
        cur.append(ch)
        i += 1
    out.append((sign, "".join(cur).strip()))
    return [(s, c) for s, c in out if c]
