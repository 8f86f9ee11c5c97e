"""The functor expression language.

Grammar (whitespace insensitive, `o` left-associative):

    expr  := primary ("o" primary)*
    primary := "twist(" expr "," nat ")" | "dual(" expr ")"
             | "param(" expr "," space ")" | "box(" expr "," expr ")"
             | "tensor(" expr "," expr ")" | "sum(" expr "," expr ")"
             | atom | "(" expr ")"
    atom  := "I" | "gamma(" nat ")" | "sym(" nat ")" | "wedge(" nat ")"
           | "tensorpow(" nat ")" | "gamma[" weight "]" | "sym[" weight "]"
    space := "k(" nat ")" | "E_" nat
    weight := nat ("," nat)*

Evaluation is by constructor application: an expression evaluates on a list
of argument reps (one per variable, standard spaces at the top level), and
composition feeds the inner rep to the outer constructor.  Twist and dual
distribute to the arguments (twist(E, r) o G means E o Frobenius^r o G, and
dual(E) evaluated on A is dual(E(dual A))); both conventions agree with the
top-level meaning on standard spaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import polyrep


class ExprError(ValueError):
    def __init__(self, message, token_index=None, char_pos=None):
        self.token_index = token_index
        self.char_pos = char_pos
        loc = ""
        if token_index is not None:
            loc = " at token %d" % token_index
            if char_pos is not None:
                loc += " (char %d)" % char_pos
        super().__init__(message + loc)


@dataclass(frozen=True)
class Ident:
    pass


@dataclass(frozen=True)
class Gamma:
    d: int


@dataclass(frozen=True)
class Sym:
    d: int


@dataclass(frozen=True)
class Wedge:
    d: int


@dataclass(frozen=True)
class TensorPow:
    n: int


@dataclass(frozen=True)
class GammaMu:
    mu: tuple


@dataclass(frozen=True)
class SymMu:
    mu: tuple


@dataclass(frozen=True)
class Compose:
    outer: object
    inner: object


@dataclass(frozen=True)
class Twist:
    arg: object
    r: int


@dataclass(frozen=True)
class Dual:
    arg: object


@dataclass(frozen=True)
class KSpace:
    l: int


@dataclass(frozen=True)
class ESpace:
    r: int


@dataclass(frozen=True)
class Param:
    arg: object
    space: object


@dataclass(frozen=True)
class Box:
    left: object
    right: object


@dataclass(frozen=True)
class TensorE:
    left: object
    right: object


@dataclass(frozen=True)
class SumE:
    left: object
    right: object


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[(),\[\]])")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExprError(
                "unexpected character %r" % text[pos:].lstrip()[0],
                token_index=len(tokens),
                char_pos=pos,
            )
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self):
        if self.i >= len(self.tokens):
            raise ExprError("unexpected end of input", token_index=self.i)
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, what):
        tok, pos = self.next()
        if tok != what:
            raise ExprError(
                "expected %r, found %r" % (what, tok),
                token_index=self.i - 1,
                char_pos=pos,
            )

    def nat(self):
        tok, pos = self.next()
        if not tok.isdigit():
            raise ExprError(
                "expected a number, found %r" % tok,
                token_index=self.i - 1,
                char_pos=pos,
            )
        return int(tok)

    def weight(self):
        parts = [self.nat()]
        while self.peek() == ",":
            self.next()
            parts.append(self.nat())
        return tuple(parts)

    def space(self):
        tok, pos = self.next()
        if tok == "k":
            self.expect("(")
            l = self.nat()
            self.expect(")")
            return KSpace(l)
        m = re.fullmatch(r"E_(\d+)", tok)
        if m:
            return ESpace(int(m.group(1)))
        raise ExprError(
            "expected a parameter space (k(l) or E_r), found %r" % tok,
            token_index=self.i - 1,
            char_pos=pos,
        )

    def expr(self):
        node = self.primary()
        while self.peek() == "o":
            self.next()
            rhs = self.primary()
            node = Compose(node, rhs)
        return node

    def primary(self):
        tok, pos = self.next()
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok == "I":
            return Ident()
        if tok in ("gamma", "sym"):
            nxt = self.peek()
            if nxt == "[":
                self.next()
                mu = self.weight()
                self.expect("]")
                return GammaMu(mu) if tok == "gamma" else SymMu(mu)
            self.expect("(")
            d = self.nat()
            self.expect(")")
            return Gamma(d) if tok == "gamma" else Sym(d)
        if tok == "wedge":
            self.expect("(")
            d = self.nat()
            self.expect(")")
            return Wedge(d)
        if tok == "tensorpow":
            self.expect("(")
            n = self.nat()
            self.expect(")")
            return TensorPow(n)
        if tok == "twist":
            self.expect("(")
            e = self.expr()
            self.expect(",")
            r = self.nat()
            self.expect(")")
            return Twist(e, r)
        if tok == "dual":
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Dual(e)
        if tok == "param":
            self.expect("(")
            e = self.expr()
            self.expect(",")
            s = self.space()
            self.expect(")")
            return Param(e, s)
        if tok in ("box", "tensor", "sum"):
            self.expect("(")
            e1 = self.expr()
            self.expect(",")
            e2 = self.expr()
            self.expect(")")
            cls = {"box": Box, "tensor": TensorE, "sum": SumE}[tok]
            return cls(e1, e2)
        raise ExprError(
            "unexpected token %r" % tok, token_index=self.i - 1, char_pos=pos
        )


def parse(text):
    tokens = _tokenize(text)
    p = _Parser(tokens)
    node = p.expr()
    if p.i != len(tokens):
        tok, pos = tokens[p.i]
        raise ExprError(
            "trailing input %r" % tok, token_index=p.i, char_pos=pos
        )
    return node


def print_expr(e):
    if isinstance(e, Ident):
        return "I"
    if isinstance(e, Gamma):
        return "gamma(%d)" % e.d
    if isinstance(e, Sym):
        return "sym(%d)" % e.d
    if isinstance(e, Wedge):
        return "wedge(%d)" % e.d
    if isinstance(e, TensorPow):
        return "tensorpow(%d)" % e.n
    if isinstance(e, GammaMu):
        return "gamma[%s]" % ",".join(str(x) for x in e.mu)
    if isinstance(e, SymMu):
        return "sym[%s]" % ",".join(str(x) for x in e.mu)
    if isinstance(e, Compose):
        left = print_expr(e.outer)
        right = print_expr(e.inner)
        if isinstance(e.inner, Compose):
            right = "(%s)" % right
        return "%s o %s" % (left, right)
    if isinstance(e, Twist):
        return "twist(%s,%d)" % (print_expr(e.arg), e.r)
    if isinstance(e, Dual):
        return "dual(%s)" % print_expr(e.arg)
    if isinstance(e, Param):
        return "param(%s,%s)" % (print_expr(e.arg), print_space(e.space))
    if isinstance(e, Box):
        return "box(%s,%s)" % (print_expr(e.left), print_expr(e.right))
    if isinstance(e, TensorE):
        return "tensor(%s,%s)" % (print_expr(e.left), print_expr(e.right))
    if isinstance(e, SumE):
        return "sum(%s,%s)" % (print_expr(e.left), print_expr(e.right))
    raise TypeError("not an expression node: %r" % (e,))


def print_space(s):
    if isinstance(s, KSpace):
        return "k(%d)" % s.l
    if isinstance(s, ESpace):
        return "E_%d" % s.r
    raise TypeError("not a space node: %r" % (s,))


def nvars(e):
    if isinstance(e, (Ident, Gamma, Sym, Wedge, TensorPow, GammaMu, SymMu)):
        return 1
    if isinstance(e, Compose):
        if nvars(e.outer) != 1:
            raise ExprError("outer functor of a composition must take one variable")
        return nvars(e.inner)
    if isinstance(e, (Twist, Dual, Param)):
        return nvars(e.arg)
    if isinstance(e, Box):
        return nvars(e.left) + nvars(e.right)
    if isinstance(e, (TensorE, SumE)):
        n1, n2 = nvars(e.left), nvars(e.right)
        if n1 != n2:
            raise ExprError("tensor/sum operands must take the same variables")
        return n1
    raise TypeError("not an expression node: %r" % (e,))


def degrees(e, p):
    """Homogeneity degree in each variable."""
    if isinstance(e, Ident):
        return (1,)
    if isinstance(e, (Gamma, Sym, Wedge)):
        return (e.d,)
    if isinstance(e, TensorPow):
        return (e.n,)
    if isinstance(e, (GammaMu, SymMu)):
        return (sum(e.mu),)
    if isinstance(e, Compose):
        d_out = degrees(e.outer, p)[0]
        return tuple(d_out * d for d in degrees(e.inner, p))
    if isinstance(e, Twist):
        return tuple(p**e.r * d for d in degrees(e.arg, p))
    if isinstance(e, (Dual, Param)):
        return degrees(e.arg, p)
    if isinstance(e, Box):
        return degrees(e.left, p) + degrees(e.right, p)
    if isinstance(e, (TensorE, SumE)):
        d1, d2 = degrees(e.left, p), degrees(e.right, p)
        if isinstance(e, TensorE):
            return tuple(a + b for a, b in zip(d1, d2))
        if d1 != d2:
            raise ExprError("direct summands must have equal degrees")
        return d1
    raise TypeError("not an expression node: %r" % (e,))


def _space_of(s, p):
    if isinstance(s, KSpace):
        return polyrep.trivial_space(s.l)
    return polyrep.e_r_space(p, s.r)


def evaluate_on(e, args):
    """Evaluate on a list of PolyRep arguments, one per variable."""
    p = args[0].p
    if isinstance(e, Ident):
        return args[0]
    if isinstance(e, Gamma):
        return polyrep.divided_power(args[0], e.d)
    if isinstance(e, Sym):
        return polyrep.symmetric_power(args[0], e.d)
    if isinstance(e, Wedge):
        return polyrep.exterior_power(args[0], e.d)
    if isinstance(e, TensorPow):
        return polyrep.tensor_power(args[0], e.n)
    if isinstance(e, (GammaMu, SymMu)):
        power = (
            polyrep.divided_power
            if isinstance(e, GammaMu)
            else polyrep.symmetric_power
        )
        factors = [power(args[0], c) for c in e.mu if c > 0]
        if not factors:
            return polyrep._unit_rep(args[0])
        out = factors[0]
        for f in factors[1:]:
            out = polyrep.tensor(out, f)
        return out
    if isinstance(e, Compose):
        return evaluate_on(e.outer, [evaluate_on(e.inner, args)])
    if isinstance(e, Twist):
        return evaluate_on(
            e.arg, [polyrep.frobenius_twist(a, e.r) for a in args]
        )
    if isinstance(e, Dual):
        return polyrep.kuhn_dual(
            evaluate_on(e.arg, [polyrep.kuhn_dual(a) for a in args])
        )
    if isinstance(e, Param):
        U = _space_of(e.space, p)
        return evaluate_on(
            e.arg, [polyrep.multiplicity_tensor(U, a) for a in args]
        )
    if isinstance(e, Box):
        n1 = nvars(e.left)
        return polyrep.boxtimes(
            evaluate_on(e.left, args[:n1]), evaluate_on(e.right, args[n1:])
        )
    if isinstance(e, TensorE):
        return polyrep.tensor(evaluate_on(e.left, args), evaluate_on(e.right, args))
    if isinstance(e, SumE):
        return polyrep.direct_sum(
            evaluate_on(e.left, args), evaluate_on(e.right, args)
        )
    raise TypeError("not an expression node: %r" % (e,))


def evaluate(e, p, dims):
    """Evaluate at standard spaces k^{dims[i]}."""
    n = nvars(e)
    if isinstance(dims, int):
        dims = (dims,) * n
    if len(dims) != n:
        raise ExprError(
            "expression takes %d variables, got %d dimensions" % (n, len(dims))
        )
    rep = evaluate_on(e, [polyrep.standard(p, m) for m in dims])
    rep.expr = print_expr(e)
    return rep


def basis_contents(e, p, dims):
    """Independent dimension oracle: list the basis of the evaluation as
    content vectors (one weight row per variable), without any matrices.

    Implemented purely with itertools so it shares no code with the module
    constructors; used to cross-check constructed weight-space dimensions.
    """
    import itertools

    n = nvars(e)
    if isinstance(dims, int):
        dims = (dims,) * n

    def zero(ms):
        return tuple((0,) * m for m in ms)

    def add(w1, w2):
        return tuple(
            tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(w1, w2)
        )

    def rec(node, arg_contents, ms):
        # arg_contents: list (one per variable) of the content list of that
        # argument's basis; returns content list of the node's basis
        if isinstance(node, Ident):
            return list(arg_contents[0])
        if isinstance(node, (Gamma, Sym)):
            out = []
            for combo in itertools.combinations_with_replacement(
                range(len(arg_contents[0])), node.d
            ):
                w = zero(ms)
                for i in combo:
                    w = add(w, arg_contents[0][i])
                out.append(w)
            return out
        if isinstance(node, Wedge):
            out = []
            for combo in itertools.combinations(
                range(len(arg_contents[0])), node.d
            ):
                w = zero(ms)
                for i in combo:
                    w = add(w, arg_contents[0][i])
                out.append(w)
            return out
        if isinstance(node, TensorPow):
            out = []
            for word in itertools.product(
                range(len(arg_contents[0])), repeat=node.n
            ):
                w = zero(ms)
                for i in word:
                    w = add(w, arg_contents[0][i])
                out.append(w)
            return out
        if isinstance(node, (GammaMu, SymMu)):
            out = [zero(ms)]
            for c in node.mu:
                part = rec(Gamma(c), arg_contents, ms)
                out = [add(w1, w2) for w1 in out for w2 in part]
            return out
        if isinstance(node, Compose):
            inner = rec(node.inner, arg_contents, ms)
            # the outer functor sees the inner basis as its argument; track
            # each inner basis vector's contribution as an opaque letter
            outer = rec(
                node.outer, [[w for w in inner]], ms
            )
            return outer
        if isinstance(node, Twist):
            inner = rec(node.arg, arg_contents, ms)
            q = p**node.r
            return [
                tuple(tuple(q * x for x in row) for row in w) for w in inner
            ]
        if isinstance(node, Dual):
            return rec(node.arg, arg_contents, ms)
        if isinstance(node, Param):
            U = _space_of(node.space, p)
            fat = [
                [w for _ in range(U.dim) for w in ac] for ac in arg_contents
            ]
            return rec(node.arg, fat, ms)
        if isinstance(node, Box):
            n1 = nvars(node.left)
            left = rec(node.left, arg_contents[:n1], ms)
            right = rec(node.right, arg_contents[n1:], ms)
            return [add(w1, w2) for w1 in left for w2 in right]
        if isinstance(node, TensorE):
            left = rec(node.left, arg_contents, ms)
            right = rec(node.right, arg_contents, ms)
            return [add(w1, w2) for w1 in left for w2 in right]
        if isinstance(node, SumE):
            return rec(node.left, arg_contents, ms) + rec(
                node.right, arg_contents, ms
            )
        raise TypeError("not an expression node: %r" % (node,))

    # seed: variable i has basis e_0..e_{m_i-1} with single-entry contents
    seeds = []
    for i, m in enumerate(dims):
        cont = []
        for j in range(m):
            w = [list((0,) * mm) for mm in dims]
            w[i][j] = 1
            cont.append(tuple(tuple(r) for r in w))
        seeds.append(cont)
    return rec(e, seeds, dims)


def oracle_weight_dim(e, p, dims, target_weight):
    """Dimension of one weight space by direct counting."""
    contents = basis_contents(e, p, dims)
    return sum(1 for w in contents if w == target_weight)
