"""Signatures, formulas, substitution, and signature morphisms.

Formulas are immutable interned trees; structural equality is the equality
and interning makes it an identity check in the common case.  Variables are
indexed x0, x1, ... and morphism images follow the strict-variable
convention: the image of an n-ary connective is a formula whose variable
set is exactly {x0, ..., x(n-1)}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class SignatureError(ValueError):
    """A formula, symbol, or morphism does not fit the expected signature."""


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """A finite, arity-graded family of connective symbols.

    `symbols` maps each symbol name to its arity (>= 0).  Symbol names are
    unique across all arities by construction.
    """

    name: str
    symbols: tuple[tuple[str, int], ...]
    _arity: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        seen = {}
        for sym, ar in self.symbols:
            if sym in seen:
                raise SignatureError(f"duplicate symbol {sym!r} in signature {self.name!r}")
            if ar < 0:
                raise SignatureError(f"negative arity for {sym!r}")
            seen[sym] = ar
        object.__setattr__(self, "_arity", seen)

    @staticmethod
    def make(name: str, symbols: Mapping[str, int] | Iterable[tuple[str, int]]) -> "Signature":
        items = symbols.items() if isinstance(symbols, Mapping) else symbols
        return Signature(name, tuple(items))

    def arity(self, symbol: str) -> int:
        try:
            return self._arity[symbol]
        except KeyError:
            raise SignatureError(f"symbol {symbol!r} not in signature {self.name!r}") from None

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._arity

    def by_arity(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for sym, ar in self.symbols:
            out.setdefault(ar, []).append(sym)
        return out

    def validate(self, phi: "Formula") -> None:
        """Raise SignatureError unless every symbol of `phi` belongs here."""
        for node in iter_subformulas(phi):
            if isinstance(node, App):
                if node.symbol not in self._arity:
                    raise SignatureError(
                        f"symbol {node.symbol!r} not in signature {self.name!r}")
                if self._arity[node.symbol] != len(node.args):
                    raise SignatureError(
                        f"symbol {node.symbol!r} used with {len(node.args)} arguments, "
                        f"declared arity {self._arity[node.symbol]}")


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

class Formula:
    """Base class for formula nodes; use the `var` and `app` factories."""

    __slots__ = ()

    # populated by subclasses
    vars: frozenset
    depth: int


class Var(Formula):
    __slots__ = ("index", "vars", "depth", "_hash")

    def __init__(self, index: int):
        if index < 0:
            raise ValueError("variable index must be >= 0")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "vars", frozenset((index,)))
        object.__setattr__(self, "depth", 0)
        object.__setattr__(self, "_hash", hash(("v", index)))

    def __setattr__(self, *a):
        raise AttributeError("Var is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Var) and other.index == self.index

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"x{self.index}"


class App(Formula):
    __slots__ = ("symbol", "args", "vars", "depth", "_hash")

    def __init__(self, symbol: str, args: tuple):
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "args", args)
        vs = frozenset().union(*(a.vars for a in args)) if args else frozenset()
        object.__setattr__(self, "vars", vs)
        d = 1 + max((a.depth for a in args), default=-1) if args else 0
        object.__setattr__(self, "depth", d)
        object.__setattr__(self, "_hash", hash(("a", symbol, args)))

    def __setattr__(self, *a):
        raise AttributeError("App is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, App) and other._hash == self._hash
                and other.symbol == self.symbol and other.args == self.args)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.args:
            return f"{self.symbol}()"
        return f"{self.symbol}({', '.join(map(repr, self.args))})"


_VAR_CACHE: dict[int, Var] = {}
_APP_CACHE: dict[tuple, App] = {}


def var(index: int) -> Var:
    v = _VAR_CACHE.get(index)
    if v is None:
        v = _VAR_CACHE[index] = Var(index)
    return v


def app(symbol: str, *args: Formula) -> App:
    key = (symbol, args)
    a = _APP_CACHE.get(key)
    if a is None:
        a = _APP_CACHE[key] = App(symbol, args)
    return a


def iter_subformulas(phi: Formula) -> Iterator[Formula]:
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, App):
            stack.extend(node.args)


def vars_of(phi: Formula) -> frozenset[int]:
    """Exact set of variable indices occurring in `phi`."""
    return phi.vars


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

class Substitution:
    """Total map from variable indices to formulas, identity off a finite support."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: Mapping[int, Formula] | None = None):
        # drop identity bindings so that support is canonical
        m = {i: f for i, f in (mapping or {}).items()
             if not (isinstance(f, Var) and f.index == i)}
        self.mapping = m

    def __call__(self, index: int) -> Formula:
        return self.mapping.get(index) or var(index)

    def support(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.mapping == other.mapping

    def __repr__(self):
        items = ", ".join(f"x{i}|{f!r}" for i, f in sorted(self.mapping.items()))
        return f"{{{items}}}"

    def star(self, inner: "Substitution") -> "Substitution":
        """Composition: (self ⋆ inner)(x) = subst(inner(x), self)."""
        out = {i: subst(f, self) for i, f in inner.mapping.items()}
        for i, f in self.mapping.items():
            out.setdefault(i, f)
        return Substitution(out)


IDENTITY_SUBST = Substitution()


def subst(phi: Formula, sigma: Substitution | Mapping[int, Formula]) -> Formula:
    """Homomorphic extension of `sigma`: replace all variables simultaneously."""
    if not isinstance(sigma, Substitution):
        sigma = Substitution(sigma)
    if not sigma.mapping or not (phi.vars & sigma.support()):
        return phi
    memo: dict[int, Formula] = {}

    def go(node: Formula) -> Formula:
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            out = sigma(node.index)
        elif not (node.vars & sigma.support()):
            out = node
        else:
            out = app(node.symbol, *(go(a) for a in node.args))
        memo[key] = out
        return out

    return go(phi)


# ---------------------------------------------------------------------------
# Strict morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrictMorphism:
    """Arity-preserving symbol-to-symbol map between signatures."""

    source: Signature
    target: Signature
    mapping: tuple[tuple[str, str], ...]

    def __post_init__(self):
        m = dict(self.mapping)
        for sym, ar in self.source.symbols:
            if sym not in m:
                raise SignatureError(f"strict morphism misses source symbol {sym!r}")
            if self.target.arity(m[sym]) != ar:
                raise SignatureError(
                    f"strict morphism is not arity-preserving on {sym!r}")

    def apply(self, symbol: str) -> str:
        return dict(self.mapping)[symbol]


def strict_extend(f: StrictMorphism, phi: Formula) -> Formula:
    """Extend `f` to formulas: variables fixed, symbols renamed."""
    f.source.validate(phi)
    m = dict(f.mapping)

    def go(node):
        if isinstance(node, Var):
            return node
        return app(m[node.symbol], *(go(a) for a in node.args))

    return go(phi)


# ---------------------------------------------------------------------------
# Flexible morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlexibleMorphism:
    """Maps each n-ary source connective to a target formula in x0..x(n-1).

    Images use the variables x0..x(n-1) *exactly*, so that formula
    extensions preserve variable sets on the nose.
    """

    name: str
    source: Signature
    target: Signature
    mapping: tuple[tuple[str, Formula], ...]

    def __post_init__(self):
        m = dict(self.mapping)
        for sym, ar in self.source.symbols:
            if sym not in m:
                raise SignatureError(f"morphism {self.name!r} misses source symbol {sym!r}")
            image = m[sym]
            self.target.validate(image)
            expected = frozenset(range(ar))
            if image.vars != expected:
                raise SignatureError(
                    f"morphism {self.name!r}: image of {sym!r} uses variables "
                    f"{sorted(image.vars)}, expected exactly {sorted(expected)}")

    def image(self, symbol: str) -> Formula:
        for sym, f in self.mapping:
            if sym == symbol:
                return f
        raise SignatureError(f"symbol {symbol!r} not mapped by morphism {self.name!r}")


def flex_identity(sigma: Signature) -> FlexibleMorphism:
    """Identity morphism: c_n maps to c_n(x0, ..., x(n-1))."""
    mapping = tuple(
        (sym, app(sym, *(var(i) for i in range(ar)))) for sym, ar in sigma.symbols)
    return FlexibleMorphism(f"id_{sigma.name}", sigma, sigma, mapping)


def flex_extend(h: FlexibleMorphism, phi: Formula,
                memo: dict | None = None) -> Formula:
    """Extend `h` to formulas: variables fixed, connectives unfold to their images.

    `memo` may be shared across calls to reuse work on interned subtrees.
    """
    images = dict(h.mapping)
    if memo is None:
        memo = {}

    def go(node):
        hit = memo.get(id(node))
        if hit is not None:
            return hit
        if isinstance(node, Var):
            out = node
        else:
            try:
                image = images[node.symbol]
            except KeyError:
                raise SignatureError(
                    f"symbol {node.symbol!r} not mapped by morphism {h.name!r}") from None
            out = subst(image, {i: go(a) for i, a in enumerate(node.args)})
        memo[id(node)] = out
        return out

    return go(phi)


def flex_compose(h2: FlexibleMorphism, h1: FlexibleMorphism) -> FlexibleMorphism:
    """Kleisli composition: (h2 • h1)(c) = extension of h2 applied to h1(c)."""
    if h1.target.symbols != h2.source.symbols:
        raise SignatureError(
            f"cannot compose {h2.name!r} after {h1.name!r}: "
            f"{h1.target.name!r} != {h2.source.name!r}")
    mapping = tuple((sym, flex_extend(h2, img)) for sym, img in h1.mapping)
    return FlexibleMorphism(f"{h2.name}.{h1.name}", h1.source, h2.target, mapping)


# ---------------------------------------------------------------------------
# Equations and quasi-identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Equation:
    lhs: Formula
    rhs: Formula

    @property
    def vars(self) -> frozenset[int]:
        return self.lhs.vars | self.rhs.vars

    def __repr__(self):
        return f"{self.lhs!r} == {self.rhs!r}"


@dataclass(frozen=True)
class QuasiIdentity:
    """Finitely many premise equations entailing one conclusion equation."""

    premises: tuple[Equation, ...]
    conclusion: Equation
    label: str = ""

    @property
    def vars(self) -> frozenset[int]:
        out = self.conclusion.vars
        for eq in self.premises:
            out |= eq.vars
        return out

    def __repr__(self):
        if not self.premises:
            return f"|= {self.conclusion!r}"
        prem = " & ".join(map(repr, self.premises))
        return f"{prem} -> {self.conclusion!r}"


# ---------------------------------------------------------------------------
# Formula enumeration
# ---------------------------------------------------------------------------

def formulas_by_depth(sigma: Signature, variables: Sequence[int],
                      max_depth: int) -> list[list[Formula]]:
    """Formulas over the given variables, grouped by exact depth.

    Level 0 holds the variables (given order) followed by nullary symbols
    in declaration order; level d+1 applies each symbol to argument tuples
    of formulas of depth <= d, at least one of depth exactly d, in
    declaration-then-lexicographic order.
    """
    level0: list[Formula] = [var(i) for i in variables]
    level0 += [app(sym) for sym, ar in sigma.symbols if ar == 0]
    levels = [level0]
    cumulative = list(level0)
    for d in range(1, max_depth + 1):
        prev_cum = len(cumulative) - len(levels[-1])
        new: list[Formula] = []
        for sym, ar in sigma.symbols:
            if ar == 0:
                continue
            # argument tuples over `cumulative`, at least one from the top level
            idxs = range(len(cumulative))
            stack = [()]
            for _ in range(ar):
                stack = [t + (i,) for t in stack for i in idxs]
            for t in stack:
                if all(i < prev_cum for i in t):
                    continue
                new.append(app(sym, *(cumulative[i] for i in t)))
        levels.append(new)
        cumulative += new
    return levels


def formulas_up_to_depth(sigma: Signature, variables: Sequence[int],
                         max_depth: int) -> list[Formula]:
    out: list[Formula] = []
    for level in formulas_by_depth(sigma, variables, max_depth):
        out.extend(level)
    return out
