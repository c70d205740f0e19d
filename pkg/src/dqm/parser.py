"""Expression grammar for field elements and forms.

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := "-" unary | power
    power := atom ("^" ["-"] INT)?
    atom  := INT | "T" | "w" | "E" | "g" | "h" | "Delta"
           | NAME "[" INT "]" | "(" expr ")"

NAME is one of x, g, h, y, xi, eta.  Trees are nested tuples:
("num", n), ("T",), ("w",), ("gen", name), ("fam", name, k),
("neg", a), ("add"|"sub"|"mul"|"div", a, b), ("pow", a, n).
"""

import re

from dqm.algebra.kfield import ONE, KElem, format_poly

FAMILIES = ("x", "g", "h", "y", "xi", "eta")
GENS = ("E", "g", "h", "Delta")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message, pos, text=""):
        self.pos = pos
        self.text = text
        detail = f"{message} at position {pos}"
        if text:
            detail += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(detail)


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected '{op}'", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "int":
                self.error("expected an integer exponent", t)
            node = ("pow", node, sign * t[1])
        return node

    def atom(self):
        t = self.take()
        kind, val, _ = t
        if kind == "int":
            return ("num", val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "name":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "[":
                if val not in FAMILIES:
                    self.error(f"unknown family '{val}'", t)
                self.take()
                k = self.take()
                if k[0] != "int":
                    self.error("expected an integer index", k)
                self.expect("]")
                return ("fam", val, k[1])
            if val == "T":
                return ("T",)
            if val == "w":
                return ("w",)
            if val in GENS:
                return ("gen", val)
            self.error(f"unknown identifier '{val}'", t)
        self.error("unexpected token", t)


def parse(text):
    """Parse text into an expression tree."""
    return _Parser(text).parse()


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def print_tree(node):
    return _show(node)[0]


def _wrap(node, need):
    s, p = _show(node)
    return f"({s})" if p < need else s


def _show(node):
    tag = node[0]
    if tag == "num":
        return str(node[1]), 5
    if tag == "T":
        return "T", 5
    if tag == "w":
        return "w", 5
    if tag == "gen":
        return node[1], 5
    if tag == "fam":
        return f"{node[1]}[{node[2]}]", 5
    if tag == "neg":
        return "-" + _wrap(node[1], 3), 3
    if tag == "pow":
        return f"{_wrap(node[1], 5)}^{node[2]}", 4
    p = _PREC[tag]
    op = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[tag]
    return f"{_wrap(node[1], p)}{op}{_wrap(node[2], p + 1)}", p


# ---------------------------------------------------------------- evaluation

def evaluate_tree(node, leaf):
    """Fold a tree with Python operators; ``leaf`` maps leaf nodes to values."""
    tag = node[0]
    if tag in ("num", "T", "w", "gen", "fam"):
        return leaf(node)
    if tag == "neg":
        return -evaluate_tree(node[1], leaf)
    if tag == "pow":
        return evaluate_tree(node[1], leaf) ** node[2]
    a = evaluate_tree(node[1], leaf)
    b = evaluate_tree(node[2], leaf)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    return a / b


def parse_kelem(F, text):
    """Parse an element of F_q(T) such as ``(T^3-T)/(T^2+1)``."""
    tree = parse(text)

    def leaf(node):
        tag = node[0]
        if tag == "num":
            return KElem.from_int(F, node[1])
        if tag == "T":
            return KElem.theta(F)
        if tag == "w":
            if F.e == 1:
                raise ParseError("'w' needs an extension field", 0, text)
            return KElem.from_fq(F, F.gen())
        raise ParseError(f"'{print_tree(node)}' is not a field element", 0, text)

    try:
        return evaluate_tree(tree, leaf)
    except ZeroDivisionError as exc:
        raise ParseError("division by zero", 0, text) from exc


def parse_form(F, text):
    """Parse a form expression into a QMForm."""
    return _parse_form_checked(F, text).f


def _parse_form_checked(F, text):
    from dqm.forms.families import sequence
    from dqm.forms.qmform import QMForm

    tree = parse(text)

    def leaf(node):
        tag = node[0]
        if tag == "num":
            return QMForm.const(F, node[1])
        if tag == "T":
            return QMForm.const(F, KElem.theta(F))
        if tag == "w":
            if F.e == 1:
                raise ParseError("'w' needs an extension field", 0, text)
            return QMForm.const(F, KElem.from_fq(F, F.gen()))
        if tag == "gen":
            if node[1] == "Delta":
                return sequence(F, "Delta", 0)
            return QMForm.gen(F, node[1])
        return sequence(F, node[1], node[2])

    return evaluate_tree(tree, _FormLeaf(leaf, text))


class _FormLeaf:
    """Leaf callback that also maps operator misuse to ParseError."""

    def __init__(self, fn, text):
        self.fn, self.text = fn, text

    def __call__(self, node):
        try:
            return _Checked(self.fn(node), self.text)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), 0, self.text) from exc


class _Checked:
    """Wrapper giving forms division by constants and constant-only inverses."""

    __slots__ = ("f", "text")

    def __init__(self, f, text):
        self.f, self.text = f, text

    def _other(self, o):
        return o.f if isinstance(o, _Checked) else o

    def __add__(self, o):
        return _Checked(self.f + self._other(o), self.text)

    def __sub__(self, o):
        return _Checked(self.f - self._other(o), self.text)

    def __mul__(self, o):
        return _Checked(self.f * self._other(o), self.text)

    def __neg__(self):
        return _Checked(-self.f, self.text)

    def __truediv__(self, o):
        d = self._other(o)
        if not d.is_constant():
            raise ParseError("division by a non-constant form", 0, self.text)
        if d.is_zero():
            raise ParseError("division by zero", 0, self.text)
        return _Checked(self.f / d.coeff(0, 0, 0), self.text)

    def __pow__(self, n):
        if n < 0:
            if not self.f.is_constant() or self.f.is_zero():
                raise ParseError("negative power of a non-constant form", 0, self.text)
            c = self.f.coeff(0, 0, 0) ** n
            return _Checked(self.f.__class__.const(self.f.F, c), self.text)
        return _Checked(self.f ** n, self.text)


# ---------------------------------------------------------------- printing

def _count_terms(c):
    return sum(1 for x in c if x)


def format_monomial(i, j, k):
    parts = []
    for name, e in (("E", i), ("g", j), ("h", k)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_form(f):
    """Canonical text of a QMForm: terms in decreasing (i, j, k) order."""
    F = f.F
    if f.is_zero():
        return "0"
    out = []
    neg_one = bytes([F.neg(1)])
    for (i, j, k) in sorted(f.t, reverse=True):
        c = f.coeff(i, j, k)
        mono = format_monomial(i, j, k)
        if not mono:
            s = str(c)
            if c.d != ONE or _count_terms(c.n) == 1:
                term = s
            else:
                term = f"({s})"
        else:
            if c.n == ONE:
                head = ""
            elif c.n == neg_one:
                head = "-"
            elif _count_terms(c.n) == 1:
                head = format_poly(F, c.n) + "*"
            else:
                head = f"({format_poly(F, c.n)})*"
            term = head + mono
            if c.d != ONE:
                den = format_poly(F, c.d)
                term += f"/({den})" if _count_terms(c.d) > 1 else f"/{den}"
        if out and not term.startswith("-"):
            out.append("+")
        out.append(term)
    return "".join(out)
