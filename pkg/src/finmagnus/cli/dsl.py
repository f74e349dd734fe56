"""Group-expression language.

Grammar (whitespace is ignored between tokens)::

    expr  := term ("x" term)*
    term  := "Crown(" expr "," int ")"
           | "Quot(" expr "," int "," int ")"
           | "Perm[" [gen ("," gen)*] "]"
           | 'Cayley("' path '")'
           | atom
    gen   := cycle+
    cycle := "(" int ("," int)* ")"
    atom  := name ["(" int ("," int)* ")"]

Atom names are those accepted by ``constructors.build_atom``. The shorthand
``S3``, ``C12``, ``A4``, ``D8`` stands for ``S(3)`` and so on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from ..constructors import ATOM_ARITY, build_atom, crown_power
from ..core import Group, build_direct_product, build_from_permutations, load_cayley, perm_from_cycles
from ..errors import ArityError, ExprSyntaxError, ParameterError
from ..structure import all_normal_subgroups, quotient


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class Product:
    terms: tuple


@dataclass(frozen=True)
class Crown:
    base: object
    k: int


@dataclass(frozen=True)
class Quot:
    base: object
    order: int
    index: int


@dataclass(frozen=True)
class Perm:
    gens: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class Cayley:
    path: str


GroupExpr = Atom | Product | Crown | Quot | Perm | Cayley

_NAME = re.compile(r"C7:C3|[A-Za-z][A-Za-z0-9]*")
_INT = re.compile(r"[0-9]+")
_SHORT = re.compile(r"^(C|S|A|D)([0-9]+)$")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def offset(self, i: int | None = None) -> int:
        return len(self.text[: self.i if i is None else i].encode())

    def fail(self, expected) -> None:
        raise ExprSyntaxError(self.offset(), set(expected), self.text)

    def ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.i)

    def eat(self, s: str) -> None:
        if not self.peek(s):
            self.fail({repr(s)})
        self.i += len(s)

    def integer(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.i)
        if not m:
            self.fail({"integer"})
        self.i = m.end()
        return int(m.group())

    def expr(self):
        terms = [self.term()]
        while True:
            self.ws()
            # no name starts with a lowercase x, so here it can only be the operator
            if self.text.startswith("x", self.i):
                self.i += 1
                terms.append(self.term())
            else:
                break
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def term(self):
        self.ws()
        start = self.i
        m = _NAME.match(self.text, self.i)
        if not m:
            self.fail({"atom", "Crown(", "Quot(", "Perm[", "Cayley("})
        name = m.group()
        self.i = m.end()
        if name == "Crown":
            self.eat("(")
            base = self.expr()
            self.eat(",")
            k = self.integer()
            self.eat(")")
            return Crown(base, k)
        if name == "Quot":
            self.eat("(")
            base = self.expr()
            self.eat(",")
            order = self.integer()
            self.eat(",")
            index = self.integer()
            self.eat(")")
            return Quot(base, order, index)
        if name == "Perm":
            return self.perm()
        if name == "Cayley":
            self.eat("(")
            self.ws()
            if not self.text.startswith('"', self.i):
                self.fail({'"'})
            end = self.text.find('"', self.i + 1)
            if end < 0:
                self.i = len(self.text)
                self.fail({'"'})
            path = self.text[self.i + 1 : end]
            self.i = end + 1
            self.eat(")")
            return Cayley(path)
        short = _SHORT.match(name)
        if short and not self.peek("("):
            return Atom(short.group(1), (int(short.group(2)),))
        if name not in ATOM_ARITY:
            self.i = start
            self.fail({"atom"})
        args: list[int] = []
        if self.peek("("):
            self.eat("(")
            args.append(self.integer())
            while self.peek(","):
                self.eat(",")
                args.append(self.integer())
            self.eat(")")
        want = ATOM_ARITY[name]
        if len(args) != want:
            raise ArityError(name, str(want), len(args), self.offset(start))
        return Atom(name, tuple(args))

    def perm(self):
        self.eat("[")
        gens = []
        if self.peek("]"):
            self.eat("]")
            return Perm(())
        while True:
            cycles = [self.cycle()]
            while self.peek("("):
                cycles.append(self.cycle())
            gens.append(tuple(cycles))
            if self.peek(","):
                self.eat(",")
                continue
            self.eat("]")
            return Perm(tuple(gens))

    def cycle(self):
        self.eat("(")
        pts = [self.integer()]
        while self.peek(","):
            self.eat(",")
            pts.append(self.integer())
        self.eat(")")
        return tuple(pts)


def parse_expr(text: str) -> GroupExpr:
    p = _Parser(text)
    node = p.expr()
    p.ws()
    if p.i != len(text):
        p.fail({"'x'", "end of input"})
    return node


def format_expr(node: GroupExpr) -> str:
    """Canonical text; ``parse_expr(format_expr(e)) == e``."""
    if isinstance(node, Atom):
        if not node.args:
            return node.name
        return f"{node.name}({','.join(str(a) for a in node.args)})"
    if isinstance(node, Product):
        return " x ".join(format_expr(t) for t in node.terms)
    if isinstance(node, Crown):
        return f"Crown({format_expr(node.base)}, {node.k})"
    if isinstance(node, Quot):
        return f"Quot({format_expr(node.base)}, {node.order}, {node.index})"
    if isinstance(node, Perm):
        gens = ["".join("(" + ",".join(str(x) for x in c) + ")" for c in g) for g in node.gens]
        return "Perm[" + ", ".join(gens) + "]"
    if isinstance(node, Cayley):
        return f'Cayley("{node.path}")'
    raise TypeError(f"not a group expression: {node!r}")


_MEMO: dict[str, Group] = {}
MEMO_SIZE = 512


def _mentions_file(node: GroupExpr) -> bool:
    if isinstance(node, Cayley):
        return True
    if isinstance(node, Product):
        return any(_mentions_file(t) for t in node.terms)
    if isinstance(node, (Crown, Quot)):
        return _mentions_file(node.base)
    return False


def evaluate(node: GroupExpr, base_dir: str | Path | None = None) -> Group:
    """Build the group an expression denotes.

    Groups are immutable, so file-free expressions are memoized by canonical
    text; a ``Quot`` over a shared base then reuses its normal lattice.
    """
    if _mentions_file(node):
        return _evaluate(node, base_dir)
    key = format_expr(node)
    G = _MEMO.get(key)
    if G is None:
        G = _evaluate(node, base_dir)
        if len(_MEMO) >= MEMO_SIZE:
            _MEMO.pop(next(iter(_MEMO)))
        _MEMO[key] = G
    return G


def _evaluate(node: GroupExpr, base_dir: str | Path | None) -> Group:
    if isinstance(node, Atom):
        G = build_atom(node.name, list(node.args))
    elif isinstance(node, Product):
        G = build_direct_product([evaluate(t, base_dir) for t in node.terms])
    elif isinstance(node, Crown):
        G = crown_power(evaluate(node.base, base_dir), node.k)
    elif isinstance(node, Quot):
        B = evaluate(node.base, base_dir)
        cands = [N for N in all_normal_subgroups(B) if N.size == node.order]
        if node.index >= len(cands):
            raise ParameterError(
                f"{format_expr(node.base)} has {len(cands)} normal subgroup(s) of order {node.order}"
            )
        G, _ = quotient(B, cands[node.index])
    elif isinstance(node, Perm):
        pts = [x for g in node.gens for c in g for x in c]
        degree = max(pts) + 1 if pts else 0
        perms = []
        for g in node.gens:
            for c in g:
                if len(set(c)) != len(c):
                    raise ParameterError(f"cycle {c} repeats a point")
            perms.append(perm_from_cycles(degree, g))
        G = build_from_permutations(degree, perms)
    elif isinstance(node, Cayley):
        path = Path(node.path)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        G = load_cayley(path)
    else:
        raise TypeError(f"not a group expression: {node!r}")
    G.name = format_expr(node)
    return G


def build(text: str) -> Group:
    return evaluate(parse_expr(text))
