"""Line-oriented curve description files.

A file has up to three kinds of section, in this order::

    name M_{1,1}                 # free-form metadata (also: note <text>)
    coarse:
      gen O1                     # a generator of Pic(X)
      rel 2*O1 = 0               # a relation among generators
      class I_P = -O1            # a named class
    point: I_1728                # one block per stacky point; the label
      order 2                    #   names the ideal-sheaf class on Y
      ideal 0                    #   class of I_{pi(x)} in Pic(X)
    gerbe:
      band 2                     # invariants of the abelianized band, or 'trivial'
      kernel 2                   # explicit obstruction-kernel orders, or
      h2 2                       #   H^2 as cyclic orders (0 = Z) plus
      obstruction 1              #   the obstruction matrix (or 'zero')
      lift 2 -> I_1728 + I_0     # m * lambda = p^*(expr)

Expressions are integer combinations such as ``2*a - b + 3*c`` or ``0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import BadInteger, DuplicateLabel, SpecError, SpecSyntaxError, UnresolvedLabel

LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*(\*)?\s*)?([A-Za-z_][A-Za-z0-9_']*)?\s*")
_INT_RE = re.compile(r"[+-]?\d+\Z")


@dataclass(frozen=True)
class CoarseBlock:
    gens: tuple[str, ...] = ()
    relations: tuple[tuple[int, ...], ...] = ()
    classes: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def resolve(self, label):
        if label in self.gens:
            i = self.gens.index(label)
            return tuple(int(i == j) for j in range(len(self.gens)))
        for name, vec in self.classes:
            if name == label:
                return vec
        return None


@dataclass(frozen=True)
class PointBlock:
    label: str
    order: int
    ideal: tuple[int, ...]


@dataclass(frozen=True)
class GerbeBlock:
    band: tuple[int, ...] = ()
    kernel: tuple[int, ...] | None = None
    h2: tuple[int, ...] | None = None
    obstruction: tuple[tuple[int, ...], ...] | None = None
    lifts: tuple[tuple[int, tuple[int, ...]], ...] = ()


@dataclass(frozen=True)
class CurveSpec:
    name: str = ""
    notes: tuple[str, ...] = ()
    coarse: CoarseBlock = CoarseBlock()
    points: tuple[PointBlock, ...] = ()
    gerbe: GerbeBlock | None = None
    lines: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def stage_one_labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.points) + self.coarse.gens


def parse_int(text: str, line=None, block=None, what="integer") -> int:
    text = text.strip()
    if not _INT_RE.match(text):
        raise BadInteger(f"expected {what}, got {text!r}", line, block)
    return int(text)


def parse_int_list(text: str, line=None, block=None) -> tuple[int, ...]:
    if not text.strip():
        raise SpecSyntaxError("expected a comma-separated list of integers", line, block)
    return tuple(parse_int(x, line, block) for x in text.split(","))


def parse_matrix(text: str, line=None, block=None) -> list[list[int]]:
    """``"2,0;0,3"`` -> ``[[2, 0], [0, 3]]``."""
    text = text.strip()
    if not text:
        return []
    rows = [parse_int_list(r, line, block) for r in text.split(";")]
    if len({len(r) for r in rows}) > 1:
        raise SpecSyntaxError("matrix rows have different lengths", line, block)
    return [list(r) for r in rows]


def parse_expr(text: str, resolve, width: int, line=None, block=None) -> tuple[int, ...]:
    """Integer combination of labels, as a coefficient vector of length ``width``.

    ``resolve(label)`` returns the vector of a label or None.
    """
    text = text.strip()
    if not text:
        raise SpecSyntaxError("empty expression", line, block)
    out = [0] * width
    pos, first = 0, True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        sign, coef, star, label = m.groups()
        if m.end() == pos or (coef is None and label is None):
            raise SpecSyntaxError(f"cannot parse expression at {text[pos:]!r}", line, block)
        if sign is None and not first:
            raise SpecSyntaxError(f"missing '+' or '-' before {text[pos:m.end()].strip()!r}",
                                  line, block)
        if star and label is None:
            raise SpecSyntaxError("'*' must be followed by a label", line, block)
        k = (-1 if sign == "-" else 1) * (int(coef) if coef is not None else 1)
        if label is None:
            if k != 0:
                raise SpecSyntaxError("nonzero constant term in expression", line, block)
        else:
            vec = resolve(label)
            if vec is None:
                raise UnresolvedLabel(f"unknown label {label!r}", line, block)
            for i, x in enumerate(vec):
                out[i] += k * x
        pos, first = m.end(), False
    return tuple(out)


def _split_relation(text, line, block):
    if text.count("=") != 1:
        raise SpecSyntaxError("relation must have the form '<expr> = <expr>'", line, block)
    return text.split("=")


class _Parser:
    def __init__(self):
        self.name = ""
        self.notes = []
        self.gens, self.relations, self.classes = [], [], []
        self.points = []
        self.gerbe = None
        self.labels = {}
        self.lines = {}
        self.section = None
        self.seen = set()
        self.current = None

    def declare(self, label, line, block):
        if not LABEL_RE.match(label):
            raise SpecSyntaxError(f"invalid label {label!r}", line, block)
        if label in self.labels:
            raise DuplicateLabel(
                f"label {label!r} already declared on line {self.labels[label]}", line, block)
        self.labels[label] = line

    def coarse_resolve(self, label):
        return CoarseBlock(tuple(self.gens), (), tuple(self.classes)).resolve(label)

    def stage_one_resolve(self, label):
        r = len(self.points)
        for i, p in enumerate(self.points):
            if p["label"] == label:
                return tuple(int(i == j) for j in range(r)) + (0,) * len(self.gens)
        vec = self.coarse_resolve(label)
        return None if vec is None else (0,) * r + vec

    def header(self, word, arg, n):
        if word == "coarse":
            if arg:
                raise SpecSyntaxError("'coarse:' takes no argument", n)
            if "coarse" in self.seen or self.points or self.gerbe is not None:
                raise SpecSyntaxError("'coarse:' must appear once, before points and gerbe", n)
        elif word == "point":
            if self.gerbe is not None:
                raise SpecSyntaxError("'point:' blocks must come before 'gerbe:'", n)
            self.declare(arg, n, "point")
            self.points.append({"label": arg, "order": None, "ideal": None, "line": n})
        elif word == "gerbe":
            if arg:
                raise SpecSyntaxError("'gerbe:' takes no argument", n)
            if self.gerbe is not None:
                raise SpecSyntaxError("only one 'gerbe:' block is allowed", n)
            self.gerbe = {"line": n, "band": None, "kernel": None, "h2": None,
                          "obstruction": None, "lifts": []}
        self.finish_point()
        self.seen.add(word)
        self.section = word
        if word == "point":
            self.current = self.points[-1]

    def finish_point(self):
        p = self.current
        if p is None:
            return
        block = f"point {p['label']}"
        if p["order"] is None:
            raise SpecSyntaxError("point block is missing 'order'", p["line"], block)
        if p["ideal"] is None:
            raise SpecSyntaxError("point block is missing 'ideal'", p["line"], block)
        self.current = None

    def statement(self, word, rest, n):
        section = self.section
        if section is None:
            if word == "name":
                self.name = rest
            elif word == "note":
                self.notes.append(rest)
            else:
                raise SpecSyntaxError(f"statement {word!r} outside of a section", n)
            return
        if section == "coarse":
            self.coarse_statement(word, rest, n)
        elif section == "point":
            self.point_statement(word, rest, n)
        else:
            self.gerbe_statement(word, rest, n)

    def coarse_statement(self, word, rest, n):
        b = "coarse"
        if word == "gen":
            if self.relations or self.classes:
                raise SpecSyntaxError("'gen' must precede 'rel' and 'class'", n, b)
            self.declare(rest, n, b)
            self.gens.append(rest)
        elif word == "rel":
            lhs, rhs = _split_relation(rest, n, b)
            k = len(self.gens)
            lv = parse_expr(lhs, self.coarse_resolve, k, n, b)
            rv = parse_expr(rhs, self.coarse_resolve, k, n, b)
            self.relations.append(tuple(x - y for x, y in zip(lv, rv)))
        elif word == "class":
            lhs, rhs = _split_relation(rest, n, b)
            label = lhs.strip()
            vec = parse_expr(rhs, self.coarse_resolve, len(self.gens), n, b)
            self.declare(label, n, b)
            self.classes.append((label, vec))
        else:
            raise SpecSyntaxError(f"unknown statement {word!r} in coarse block", n, b)

    def point_statement(self, word, rest, n):
        p = self.current
        b = f"point {p['label']}"
        if word == "order":
            if p["order"] is not None:
                raise SpecSyntaxError("duplicate 'order'", n, b)
            order = parse_int(rest, n, b, "stabilizer order")
            if order < 1:
                raise BadInteger(f"stabilizer order must be >= 1, got {order}", n, b)
            p["order"] = order
        elif word == "ideal":
            if p["ideal"] is not None:
                raise SpecSyntaxError("duplicate 'ideal'", n, b)
            p["ideal"] = parse_expr(rest, self.coarse_resolve, len(self.gens), n, b)
        else:
            raise SpecSyntaxError(f"unknown statement {word!r} in point block", n, b)

    def gerbe_statement(self, word, rest, n):
        g, b = self.gerbe, "gerbe"
        if word in ("band", "kernel", "h2", "obstruction") and g[word] is not None:
            raise SpecSyntaxError(f"duplicate {word!r}", n, b)
        if word == "band":
            band = () if rest.strip() == "trivial" else parse_int_list(rest, n, b)
            if any(x < 2 for x in band):
                raise BadInteger("band invariants must be >= 2", n, b)
            g["band"] = (band, n)
        elif word == "kernel":
            ker = parse_int_list(rest, n, b)
            if any(x < 1 for x in ker):
                raise BadInteger("kernel orders must be >= 1", n, b)
            g["kernel"] = (ker, n)
        elif word == "h2":
            h2 = parse_int_list(rest, n, b)
            if any(x < 0 for x in h2):
                raise BadInteger("h2 orders must be >= 0", n, b)
            g["h2"] = (h2, n)
        elif word == "obstruction":
            g["obstruction"] = ("zero" if rest.strip() == "zero" else parse_matrix(rest, n, b), n)
        elif word == "lift":
            if "->" not in rest:
                raise SpecSyntaxError("lift must have the form '<m> -> <expr>'", n, b)
            m_text, expr = rest.split("->", 1)
            m = parse_int(m_text, n, b, "lift order")
            if m < 1:
                raise BadInteger("lift order must be >= 1", n, b)
            width = len(self.points) + len(self.gens)
            g["lifts"].append((m, parse_expr(expr, self.stage_one_resolve, width, n, b)))
        else:
            raise SpecSyntaxError(f"unknown statement {word!r} in gerbe block", n, b)

    def finish_gerbe(self) -> GerbeBlock | None:
        g = self.gerbe
        if g is None:
            return None
        b = "gerbe"
        if g["band"] is None:
            raise SpecSyntaxError("gerbe block is missing 'band'", g["line"], b)
        band = g["band"][0]
        kernel = h2 = obstruction = None
        if g["kernel"] is not None:
            if g["h2"] is not None or g["obstruction"] is not None:
                raise SpecSyntaxError("give either 'kernel' or 'h2' + 'obstruction', not both",
                                      g["kernel"][1], b)
            kernel = g["kernel"][0]
        else:
            if g["h2"] is None or g["obstruction"] is None:
                raise SpecSyntaxError("gerbe block needs 'kernel' or both 'h2' and 'obstruction'",
                                      g["line"], b)
            h2 = g["h2"][0]
            mat, n = g["obstruction"]
            if mat == "zero":
                mat = [[0] * len(h2) for _ in band]
            if len(mat) != len(band) or any(len(r) != len(h2) for r in mat):
                raise SpecSyntaxError(
                    f"obstruction matrix must be {len(band)}x{len(h2)} (band x h2)", n, b)
            obstruction = tuple(tuple(r) for r in mat)
        return GerbeBlock(band, kernel, h2, obstruction, tuple(g["lifts"]))


def parse(text: str) -> CurveSpec:
    """Parse a curve description; errors carry the offending line number."""
    p = _Parser()
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"(coarse|point|gerbe)\s*:\s*(.*)\Z", line)
        if m:
            p.header(m.group(1), m.group(2).strip(), n)
            continue
        word, *rest = line.split(None, 1)
        p.statement(word, rest[0].strip() if rest else "", n)
    p.finish_point()
    coarse = CoarseBlock(tuple(p.gens), tuple(p.relations), tuple(p.classes))
    points = tuple(PointBlock(d["label"], d["order"], d["ideal"]) for d in p.points)
    return CurveSpec(p.name, tuple(p.notes), coarse, points, p.finish_gerbe(),
                     lines={d["label"]: d["line"] for d in p.points})


def format_expr(vec, labels) -> str:
    out = []
    for c, label in zip(vec, labels):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        out.append((sign, f"{mag}{label}"))
    if not out:
        return "0"
    head = ("-" if out[0][0] == "-" else "") + out[0][1]
    return " ".join([head] + [f"{s} {t}" for s, t in out[1:]])


def format_spec(spec: CurveSpec) -> str:
    """Serialize back to the file format; ``parse(format_spec(s)) == s``."""
    lines = []
    if spec.name:
        lines.append(f"name {spec.name}")
    lines += [f"note {x}" for x in spec.notes]
    c = spec.coarse
    lines.append("coarse:")
    lines += [f"  gen {g}" for g in c.gens]
    lines += [f"  rel {format_expr(r, c.gens)} = 0" for r in c.relations]
    lines += [f"  class {name} = {format_expr(v, c.gens)}" for name, v in c.classes]
    for pt in spec.points:
        lines += [f"point: {pt.label}", f"  order {pt.order}",
                  f"  ideal {format_expr(pt.ideal, c.gens)}"]
    g = spec.gerbe
    if g is not None:
        lines.append("gerbe:")
        lines.append(f"  band {','.join(map(str, g.band)) or 'trivial'}")
        if g.kernel is not None:
            lines.append(f"  kernel {','.join(map(str, g.kernel))}")
        else:
            lines.append(f"  h2 {','.join(map(str, g.h2))}")
            lines.append(f"  obstruction {';'.join(','.join(map(str, r)) for r in g.obstruction)}")
        labels = spec.stage_one_labels()
        lines += [f"  lift {m} -> {format_expr(v, labels)}" for m, v in g.lifts]
    return "\n".join(lines) + "\n"


__all__ = [
    "CurveSpec", "CoarseBlock", "PointBlock", "GerbeBlock", "SpecError",
    "parse", "format_spec", "format_expr", "parse_matrix", "parse_expr",
]
