"""Text grammar for scalars, homogeneous polynomials, points and files.

Scalar expressions use integers, ``t``, ``r`` (the tower generator at a
declared level), ``+ - * / ^`` and parentheses.  Polynomial expressions
add the variables ``x y z``; homogeneity is validated on parse and a
violation is a parse error.  Files carry one generator per line with an
optional ``level m`` header fixing the meaning of ``r``; ``#`` starts a
comment.
"""

from .errors import ParseError
from .plane import HomPoly
from .tower import TowerScalar

_OPS = set("+-*/^():")


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            tokens.append(("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            tokens.append(("op", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("end", None, line, col))
    return tokens


class _Value:
    """Polynomial in x, y, z with scalar coefficients (not yet homogeneous)."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p):
        self.coeffs = {e: c for e, c in coeffs.items() if not c.is_zero}
        self.p = p

    @staticmethod
    def scalar(c):
        return _Value({(0, 0, 0): c}, c.p)

    @property
    def is_scalar(self):
        return set(self.coeffs) <= {(0, 0, 0)}

    def as_scalar(self):
        return self.coeffs.get((0, 0, 0), TowerScalar.zero(self.p))

    def add(self, other, sign=1):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            d = c if sign > 0 else -c
            out[e] = out[e] + d if e in out else d
        return _Value(out, self.p)

    def mul(self, other):
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return _Value(out, self.p)

    def neg(self):
        return _Value({e: -c for e, c in self.coeffs.items()}, self.p)


class _Parser:
    def __init__(self, text, level, p):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.level = level
        self.p = p

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val, line, col = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val!r}", line, col)

    def parse_expr(self):
        node = self.parse_term()
        while True:
            kind, val, _, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.parse_term()
                node = node.add(rhs, 1 if val == "+" else -1)
            else:
                return node

    def parse_term(self):
        node = self.parse_factor()
        while True:
            kind, val, line, col = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.parse_factor()
                if val == "*":
                    node = node.mul(rhs)
                else:
                    if not rhs.is_scalar:
                        raise ParseError("division by a non-scalar", line, col)
                    d = rhs.as_scalar()
                    if d.is_zero:
                        raise ParseError("division by zero", line, col)
                    inv = _Value.scalar(d.inverse())
                    node = node.mul(inv)
            else:
                return node

    def parse_factor(self):
        kind, val, line, col = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.parse_factor()
            return inner if val == "+" else inner.neg()
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        kind, val, line, col = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind2, exp, line2, col2 = self.take()
            if kind2 == "op" and exp == "(":
                raise ParseError("exponent must be an integer literal", line2, col2)
            if kind2 != "num":
                raise ParseError("exponent must be a nonnegative integer", line2, col2)
            out = _Value.scalar(TowerScalar.one(self.p))
            for _ in range(exp):
                out = out.mul(base)
            # right-associative towers like a^2^3 are not part of the grammar
            return out
        return base

    def parse_atom(self):
        kind, val, line, col = self.take()
        if kind == "num":
            return _Value.scalar(TowerScalar.from_int(val, self.p))
        if kind == "name":
            if val == "t":
                return _Value.scalar(TowerScalar.generator(0, self.p))
            if val == "r":
                return _Value.scalar(TowerScalar.generator(self.level, self.p))
            if val in ("x", "y", "z"):
                e = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[val]
                return _Value({e: TowerScalar.one(self.p)}, self.p)
            raise ParseError(f"unknown name {val!r}", line, col)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {val!r}", line, col)

    def finish(self):
        kind, val, line, col = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input at {val!r}", line, col)


def parse_scalar(text, level=1, p=3):
    """Scalar expression; ``r`` is the generator at the given level."""
    parser = _Parser(text, level, p)
    value = parser.parse_expr()
    parser.finish()
    if not value.is_scalar:
        raise ParseError("expected a scalar, found variables x/y/z")
    return value.as_scalar()


def parse_poly(text, level=1, p=3):
    """Homogeneous polynomial in x, y, z; inhomogeneity is a parse error."""
    parser = _Parser(text, level, p)
    value = parser.parse_expr()
    parser.finish()
    if not value.coeffs:
        raise ParseError("the zero polynomial has no defined degree")
    degrees = {sum(e) for e in value.coeffs}
    if len(degrees) != 1:
        raise ParseError(
            f"polynomial is not homogeneous (degrees {sorted(degrees)})"
        )
    return HomPoly(degrees.pop(), value.coeffs, p)


def parse_point(text, level=1, p=3):
    """Projective point written as (a:b:c) with scalar entries."""
    from .plane import ProjPoint

    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("point must be written as (a:b:c)")
    parts = _split_top(s[1:-1])
    if len(parts) != 3:
        raise ParseError("point needs exactly three coordinates")
    coords = [parse_scalar(part, level, p) for part in parts]
    if all(c.is_zero for c in coords):
        raise ParseError("(0:0:0) is not a projective point")
    return ProjPoint(*coords)


def _split_top(text):
    """Split on ':' at parenthesis depth zero."""
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == ":" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_generator_file(text, p=3):
    """(level, [HomPoly...]) from file text: optional 'level m' header,
    one generator per line, '#' comments."""
    level = 1
    polys = []
    seen_any = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "level":
            if seen_any:
                raise ParseError("'level' header must precede the generators")
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("header must be 'level m' with m an integer")
            level = int(parts[1])
            seen_any = True
            continue
        polys.append(parse_poly(line, level, p))
        seen_any = True
    return level, polys
