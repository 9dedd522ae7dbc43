"""Finite algebras over a signature: evaluation, congruences, filters.

Elements are canonical integers 0..k-1.  Operation tables are flat
row-major tuples with the first argument most significant.  Congruences
are stored as canonical representative maps (least member of each block).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, TYPE_CHECKING

from .syntax import (App, Equation, Formula, QuasiIdentity, Signature,
                     SignatureError, Var)

if TYPE_CHECKING:  # pragma: no cover
    from .consequence import LogicPresentation


class EvaluationError(ValueError):
    """A term could not be evaluated (unassigned variable, bad table)."""


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteAlgebra:
    """Finite structure: carrier {0..size-1} plus one table per symbol."""

    name: str
    signature: Signature
    size: int
    tables: tuple[tuple[str, tuple[int, ...]], ...]
    _ops: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("carrier must be nonempty")
        ops = dict(self.tables)
        for sym, ar in self.signature.symbols:
            if sym not in ops:
                raise SignatureError(f"algebra {self.name!r} misses table for {sym!r}")
            table = ops[sym]
            if len(table) != self.size ** ar:
                raise ValueError(
                    f"algebra {self.name!r}: table for {sym!r} has {len(table)} "
                    f"entries, expected {self.size ** ar}")
            if any(not 0 <= v < self.size for v in table):
                raise ValueError(f"algebra {self.name!r}: table entry out of range for {sym!r}")
        extra = set(ops) - {sym for sym, _ in self.signature.symbols}
        if extra:
            raise SignatureError(f"algebra {self.name!r}: unknown symbols {sorted(extra)}")
        object.__setattr__(self, "_ops", ops)

    @staticmethod
    def make(name: str, signature: Signature,
             size: int, tables: Mapping[str, Sequence[int]]) -> "FiniteAlgebra":
        return FiniteAlgebra(
            name, signature, size,
            tuple((sym, tuple(tab)) for sym, tab in tables.items()))

    def apply(self, symbol: str, args: Sequence[int]) -> int:
        table = self._ops[symbol]
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return table[idx]

    def table(self, symbol: str) -> tuple[int, ...]:
        return self._ops[symbol]

    def elements(self) -> range:
        return range(self.size)

    def rename(self, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(name, self.signature, self.size, self.tables)

    def same_tables(self, other: "FiniteAlgebra") -> bool:
        """Table-exact comparison, ignoring names."""
        return (self.signature.symbols == other.signature.symbols
                and self.size == other.size
                and all(self._ops[s] == other._ops[s] for s, _ in self.signature.symbols))


def evaluate(algebra: FiniteAlgebra, phi: Formula,
             env: Mapping[int, int]) -> int:
    """Interpret `phi` in `algebra` under the variable assignment `env`."""

    def go(node):
        if isinstance(node, Var):
            try:
                return env[node.index]
            except KeyError:
                raise EvaluationError(f"variable x{node.index} unassigned") from None
        try:
            table = algebra._ops[node.symbol]
        except KeyError:
            raise SignatureError(
                f"symbol {node.symbol!r} not interpreted in algebra {algebra.name!r}") from None
        idx = 0
        for a in node.args:
            idx = idx * algebra.size + go(a)
        return table[idx]

    return go(phi)


def truth_table(algebra: FiniteAlgebra, phi: Formula,
                variables: Sequence[int]) -> tuple[int, ...]:
    """Values of `phi` over all assignments of `variables`, row-major."""
    out = []
    for point in itertools.product(algebra.elements(), repeat=len(variables)):
        out.append(evaluate(algebra, phi, dict(zip(variables, point))))
    return tuple(out)


def holds(algebra: FiniteAlgebra, eq: Equation, env: Mapping[int, int]) -> bool:
    return evaluate(algebra, eq.lhs, env) == evaluate(algebra, eq.rhs, env)


def satisfies(algebra: FiniteAlgebra, qi: QuasiIdentity) -> bool:
    """Exact quasi-identity satisfaction over all assignments."""
    return find_violation(algebra, qi) is None


def find_violation(algebra: FiniteAlgebra, qi: QuasiIdentity) -> dict[int, int] | None:
    """Assignment where all premises hold but the conclusion fails, if any."""
    variables = sorted(qi.vars)
    for point in itertools.product(algebra.elements(), repeat=len(variables)):
        env = dict(zip(variables, point))
        if all(holds(algebra, eq, env) for eq in qi.premises) \
                and not holds(algebra, qi.conclusion, env):
            return env
    return None


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

def is_homomorphism(f: Sequence[int], source: FiniteAlgebra,
                    target: FiniteAlgebra) -> bool:
    for sym, ar in source.signature.symbols:
        for args in itertools.product(source.elements(), repeat=ar):
            if f[source.apply(sym, args)] != target.apply(sym, [f[a] for a in args]):
                return False
    return True


def homs(source: FiniteAlgebra, target: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All operation-preserving maps, in lexicographic order.

    Backtracks element by element; each partial map is checked against all
    table entries that are already fully assigned, so op-generated elements
    are forced early.
    """
    if source.signature.symbols != target.signature.symbols:
        raise SignatureError("homs: signatures differ")
    k = source.size
    entries = []
    for sym, ar in source.signature.symbols:
        for args in itertools.product(range(k), repeat=ar):
            entries.append((max(args + (source.apply(sym, args),), default=0),
                            sym, args, source.apply(sym, args)))
    out: list[tuple[int, ...]] = []
    f = [-1] * k

    def consistent(n: int) -> bool:
        # entries fully determined by f[0..n] must commute
        for top, sym, args, res in entries:
            if top > n:
                continue
            if target.apply(sym, [f[a] for a in args]) != f[res]:
                return False
        return True

    def place(n: int):
        if n == k:
            out.append(tuple(f))
            return
        for b in target.elements():
            f[n] = b
            if consistent(n):
                place(n + 1)
        f[n] = -1

    place(0)
    return out


# ---------------------------------------------------------------------------
# Congruences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    """Operation-compatible partition, canonicalized by least block member."""

    rep: tuple[int, ...]

    def __post_init__(self):
        for i, r in enumerate(self.rep):
            if not 0 <= r <= i or self.rep[r] != r:
                raise ValueError("representative map is not canonical")

    @staticmethod
    def diagonal(size: int) -> "Congruence":
        return Congruence(tuple(range(size)))

    @staticmethod
    def total(size: int) -> "Congruence":
        return Congruence((0,) * size)

    @staticmethod
    def from_blocks(size: int, blocks: Iterable[Iterable[int]]) -> "Congruence":
        rep = list(range(size))
        for block in blocks:
            members = sorted(block)
            for m in members:
                rep[m] = members[0]
        return Congruence(tuple(rep))

    @property
    def size(self) -> int:
        return len(self.rep)

    def relates(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def blocks(self) -> list[tuple[int, ...]]:
        by_rep: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            by_rep.setdefault(r, []).append(i)
        return [tuple(by_rep[r]) for r in sorted(by_rep)]

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.size) for b in range(self.size)
                if a < b and self.rep[a] == self.rep[b]]

    def contains(self, other: "Congruence") -> bool:
        return all(self.relates(a, b) for a, b in other.pairs())

    def num_blocks(self) -> int:
        return len(set(self.rep))


def is_congruence(algebra: FiniteAlgebra, theta: Congruence) -> bool:
    if theta.size != algebra.size:
        return False
    rep = theta.rep
    for sym, ar in algebra.signature.symbols:
        for args in itertools.product(algebra.elements(), repeat=ar):
            canon = [rep[a] for a in args]
            if rep[algebra.apply(sym, args)] != rep[algebra.apply(sym, canon)]:
                return False
    return True


def congruence_generated(algebra: FiniteAlgebra,
                         pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing `pairs`: union-find closed under operations."""
    k = algebra.size
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        parent[rb] = ra
        return True

    for a, b in pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        for sym, ar in algebra.signature.symbols:
            if ar == 0:
                continue
            groups: dict[tuple[int, ...], int] = {}
            for args in itertools.product(range(k), repeat=ar):
                key = tuple(find(a) for a in args)
                res = algebra.apply(sym, args)
                if key in groups:
                    if union(groups[key], res):
                        changed = True
                else:
                    groups[key] = res
    rep = [find(i) for i in range(k)]
    # canonicalize: representative is the least member of the block
    least: dict[int, int] = {}
    for i, r in enumerate(rep):
        least.setdefault(r, i)
    return Congruence(tuple(least[r] for r in rep))


def all_congruences(algebra: FiniteAlgebra, bound: int = 8) -> list[Congruence]:
    """Complete congruence list via principal congruences and join closure."""
    if algebra.size > bound:
        raise ValueError(
            f"carrier {algebra.size} exceeds congruence-enumeration bound {bound}")
    k = algebra.size
    found = {Congruence.diagonal(k)}
    principals = []
    for a in range(k):
        for b in range(a + 1, k):
            principals.append(congruence_generated(algebra, [(a, b)]))
    found.update(principals)
    frontier = list(found)
    while frontier:
        theta = frontier.pop()
        for p in principals:
            join = congruence_generated(algebra, theta.pairs() + p.pairs())
            if join not in found:
                found.add(join)
                frontier.append(join)
    return sorted(found, key=lambda t: (len(t.pairs()), t.rep))


def quotient(algebra: FiniteAlgebra,
             theta: Congruence) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Quotient algebra and projection map; blocks labeled by least member."""
    if not is_congruence(algebra, theta):
        raise ValueError("partition is not compatible with the operations")
    blocks = theta.blocks()
    index = {}
    for i, block in enumerate(blocks):
        for m in block:
            index[m] = i
    reps = [block[0] for block in blocks]
    m = len(blocks)
    tables = {}
    for sym, ar in algebra.signature.symbols:
        tab = []
        for args in itertools.product(range(m), repeat=ar):
            tab.append(index[algebra.apply(sym, [reps[a] for a in args])])
        tables[sym] = tuple(tab)
    proj = tuple(index[i] for i in range(algebra.size))
    return (FiniteAlgebra.make(f"{algebra.name}/~", algebra.signature, m, tables), proj)


def product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Direct product with pairs (x, y) coded as x*|B| + y."""
    if a.signature.symbols != b.signature.symbols:
        raise SignatureError("product: signatures differ")
    size = a.size * b.size
    tables = {}
    for sym, ar in a.signature.symbols:
        tab = []
        for args in itertools.product(range(size), repeat=ar):
            xs = [arg // b.size for arg in args]
            ys = [arg % b.size for arg in args]
            tab.append(a.apply(sym, xs) * b.size + b.apply(sym, ys))
        tables[sym] = tuple(tab)
    return FiniteAlgebra.make(f"{a.name}*{b.name}", a.signature, size, tables)


def subalgebra(algebra: FiniteAlgebra,
               seed: Iterable[int]) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Least subuniverse containing `seed`, with induced tables.

    Returns the subalgebra (carrier reindexed 0..m-1 in increasing element
    order) together with the tuple of original elements it consists of.
    """
    closed = set(seed)
    changed = True
    while changed:
        changed = False
        for sym, ar in algebra.signature.symbols:
            for args in itertools.product(sorted(closed), repeat=ar):
                res = algebra.apply(sym, args)
                if res not in closed:
                    closed.add(res)
                    changed = True
    if not closed:
        raise ValueError("empty subalgebra: seed is empty and there are no constants")
    elems = tuple(sorted(closed))
    index = {e: i for i, e in enumerate(elems)}
    tables = {}
    for sym, ar in algebra.signature.symbols:
        tab = []
        for args in itertools.product(elems, repeat=ar):
            tab.append(index[algebra.apply(sym, args)])
        tables[sym] = tuple(tab)
    sub = FiniteAlgebra.make(f"{algebra.name}|{''.join(map(str, elems))}",
                             algebra.signature, len(elems), tables)
    return (sub, elems)


# ---------------------------------------------------------------------------
# Filters and the Leibniz operator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Filter:
    """Subset of a carrier, candidate deductive filter."""

    members: frozenset[int]

    @staticmethod
    def of(members: Iterable[int]) -> "Filter":
        return Filter(frozenset(members))

    def __contains__(self, x: int) -> bool:
        return x in self.members


def is_l_filter(algebra: FiniteAlgebra, filt: Filter,
                logic: "LogicPresentation") -> bool:
    """Exact check that `filt` is closed under the presentation's axioms and rules.

    Sufficient for filterhood since derivability is generated by the
    presentation.
    """
    if any(not 0 <= x < algebra.size for x in filt.members):
        raise ValueError("filter members outside the carrier")
    members = filt.members
    for ax in logic.axioms:
        variables = sorted(ax.vars)
        for point in itertools.product(algebra.elements(), repeat=len(variables)):
            if evaluate(algebra, ax, dict(zip(variables, point))) not in members:
                return False
    for rule in logic.rules:
        variables = sorted(frozenset().union(
            rule.conclusion.vars, *(p.vars for p in rule.premises)))
        for point in itertools.product(algebra.elements(), repeat=len(variables)):
            env = dict(zip(variables, point))
            if all(evaluate(algebra, p, env) in members for p in rule.premises) \
                    and evaluate(algebra, rule.conclusion, env) not in members:
                return False
    return True


def compatible(theta: Congruence, filt: Filter) -> bool:
    """No block of `theta` straddles the filter boundary."""
    return all((b in filt) == (a in filt) for a, b in theta.pairs())


def leibniz(algebra: FiniteAlgebra, filt: Filter, bound: int = 8) -> Congruence:
    """Largest congruence compatible with `filt`.

    Computed as the maximal compatible member of the congruence lattice;
    verified to contain every other compatible congruence.
    """
    candidates = [t for t in all_congruences(algebra, bound) if compatible(t, filt)]
    best = max(candidates, key=lambda t: len(t.pairs()))
    for other in candidates:
        if not best.contains(other):
            raise AssertionError("compatible congruences have no maximum")
    return best


def leibniz_delta(algebra: FiniteAlgebra, filt: Filter,
                  delta: Sequence[Formula]) -> frozenset[tuple[int, int]]:
    """Relation {(a, b) : every member of delta evaluated at (a, b) is in F}."""
    out = set()
    for a in algebra.elements():
        for b in algebra.elements():
            if all(evaluate(algebra, d, {0: a, 1: b}) in filt for d in delta):
                out.add((a, b))
    return frozenset(out)


def congruence_pairs(theta: Congruence) -> frozenset[tuple[int, int]]:
    """All related ordered pairs, diagonal included (for relation comparison)."""
    out = set()
    for a in range(theta.size):
        for b in range(theta.size):
            if theta.relates(a, b):
                out.add((a, b))
    return frozenset(out)


# ---------------------------------------------------------------------------
# Axiom sets (desk-scale stand-in for a quasivariety)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomSet:
    """Finite set of quasi-identities over one signature."""

    name: str
    signature: Signature
    quasi_identities: tuple[QuasiIdentity, ...]

    def __iter__(self):
        return iter(self.quasi_identities)

    def __len__(self):
        return len(self.quasi_identities)
