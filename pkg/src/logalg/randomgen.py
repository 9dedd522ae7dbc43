"""Seeded random generators for signatures, morphisms, and algebras.

Used by the randomized law suites (tests and the `laws` CLI command).
All sampling goes through an explicit `random.Random` so results are
reproducible from a seed.
"""

from __future__ import annotations

import random
from typing import Sequence

from .finalg import FiniteAlgebra
from .syntax import (FlexibleMorphism, Formula, Signature, app, var)


def random_signature(rng: random.Random, name: str, max_symbols: int = 3,
                     max_binary: int = 2, ensure_binary: bool = True,
                     ensure_nullary: bool = False) -> Signature:
    """Small random signature with arities <= 2.

    At most `max_binary` binary symbols (keeps exhaustive formula
    enumeration tractable); optionally guarantees a binary or a nullary
    symbol so that morphism images can be built for any source arity.
    """
    n = rng.randint(1, max_symbols)
    arities = []
    binaries = 0
    for _ in range(n):
        ar = rng.choice((0, 1, 1, 2, 2))
        if ar == 2 and binaries >= max_binary:
            ar = rng.choice((0, 1))
        if ar == 2:
            binaries += 1
        arities.append(ar)
    if ensure_binary and 2 not in arities:
        arities[0] = 2
    if ensure_nullary and 0 not in arities:
        arities.append(0)
    symbols = tuple((f"{name}f{i}", ar) for i, ar in enumerate(arities))
    return Signature.make(name, symbols)


def random_formula(rng: random.Random, signature: Signature,
                   exact_vars: Sequence[int], max_depth: int = 3,
                   attempts: int = 200) -> Formula:
    """Formula over `signature` whose variable set is exactly `exact_vars`.

    Rejection sampling over random terms; raises if the signature cannot
    realize the variable set (for instance, no nullary symbol for a
    closed formula).
    """
    exact = frozenset(exact_vars)
    leaves: list[Formula] = [var(i) for i in exact_vars]
    leaves += [app(sym) for sym, ar in signature.symbols if ar == 0]
    if not leaves:
        raise ValueError("signature admits no leaves")

    def grow(depth: int) -> Formula:
        candidates = [(sym, ar) for sym, ar in signature.symbols
                      if ar > 0 and depth > 0]
        if not candidates or rng.random() < 0.3:
            return rng.choice(leaves)
        sym, ar = rng.choice(candidates)
        return app(sym, *(grow(depth - 1) for _ in range(ar)))

    for _ in range(attempts):
        f = grow(max_depth)
        if f.vars == exact:
            return f
    raise ValueError(
        f"could not realize variable set {sorted(exact)} over {signature.name}")


def random_morphism(rng: random.Random, name: str, source: Signature,
                    target: Signature, max_depth: int = 3) -> FlexibleMorphism:
    mapping = []
    for sym, ar in source.symbols:
        mapping.append((sym, random_formula(rng, target, range(ar), max_depth)))
    return FlexibleMorphism(name, source, target, tuple(mapping))


def random_algebra(rng: random.Random, name: str, signature: Signature,
                   size: int) -> FiniteAlgebra:
    tables = {}
    for sym, ar in signature.symbols:
        tables[sym] = tuple(rng.randrange(size) for _ in range(size ** ar))
    return FiniteAlgebra.make(name, signature, size, tables)
