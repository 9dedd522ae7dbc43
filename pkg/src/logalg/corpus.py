"""Canonical logics, pairs, morphisms, and algebras used by tests and the CLI.

Entries: classical and intuitionistic propositional calculus over the
signature {not, imp, and, or, iff, top}, their implication/negation and
disjunction/negation fragments with the standard equipollence morphisms,
the pure-implication fragment (a non-dense embedding source), the logic
of groups, and a shelf of finite algebras (Boolean algebras, Heyting
chains, a Lukasiewicz chain, small groups, and non-examples).

Presentation choices are recorded here rather than inherited: the
calculi get standard Hilbert axiomatizations with modus ponens; the
intuitionistic presentation additionally carries derived biconditional
rules (reflexivity, symmetry, transitivity, connective congruence,
theorem-marking) so that the bounded prover can reach the pair battery
without a complete matrix, which intuitionistic logic does not have.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebraize import AlgebraizableLogic, AlgebraizingPair
from .consequence import LogicPresentation, Matrix, Rule
from .finalg import FiniteAlgebra
from .syntax import Formula, FlexibleMorphism, Signature, app, var

p, q, r, s = var(0), var(1), var(2), var(3)


def _not(x):
    return app("not", x)


def _imp(x, y):
    return app("imp", x, y)


def _and(x, y):
    return app("and", x, y)


def _or(x, y):
    return app("or", x, y)


def _iff(x, y):
    return app("iff", x, y)


TOP = app("top")


def _mul(x, y):
    return app("mul", x, y)


def _inv(x):
    return app("inv", x)


E = app("e")


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

SIG_CPC = Signature.make("Prop", [("not", 1), ("imp", 2), ("and", 2),
                                  ("or", 2), ("iff", 2), ("top", 0)])
SIG_IMP_NEG = Signature.make("ImpNeg", [("not", 1), ("imp", 2)])
SIG_OR_NEG = Signature.make("OrNeg", [("not", 1), ("or", 2)])
SIG_IMP = Signature.make("Imp", [("imp", 2)])
SIG_GRP = Signature.make("Grp", [("mul", 2), ("inv", 1), ("e", 0)])


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

def boolean_algebra(name: str, bits: int, signature: Signature = SIG_CPC,
                    ) -> FiniteAlgebra:
    """Boolean algebra on bitmasks 0..2^bits-1, tables per the signature."""
    size = 1 << bits
    full = size - 1
    ops = {
        "not": lambda x: full ^ x,
        "and": lambda x, y: x & y,
        "or": lambda x, y: x | y,
        "imp": lambda x, y: (full ^ x) | y,
        "iff": lambda x, y: full ^ (x ^ y),
    }
    tables = {}
    for sym, ar in signature.symbols:
        if sym == "top":
            tables[sym] = (full,)
        elif ar == 1:
            tables[sym] = tuple(ops[sym](x) for x in range(size))
        else:
            tables[sym] = tuple(ops[sym](x, y)
                                for x in range(size) for y in range(size))
    return FiniteAlgebra.make(name, signature, size, tables)


def heyting_chain(name: str, size: int) -> FiniteAlgebra:
    """Heyting chain 0 < 1 < ... < size-1 in the propositional signature."""
    top = size - 1

    def imp(x, y):
        return top if x <= y else y

    tables = {
        "not": tuple(imp(x, 0) for x in range(size)),
        "imp": tuple(imp(x, y) for x in range(size) for y in range(size)),
        "and": tuple(min(x, y) for x in range(size) for y in range(size)),
        "or": tuple(max(x, y) for x in range(size) for y in range(size)),
        "iff": tuple(min(imp(x, y), imp(y, x))
                     for x in range(size) for y in range(size)),
        "top": (top,),
    }
    return FiniteAlgebra.make(name, SIG_CPC, size, tables)


def lukasiewicz_chain(name: str = "L3") -> FiniteAlgebra:
    """Three-element Lukasiewicz chain: a non-Boolean, non-Heyting 3-chain."""
    size, top = 3, 2

    def imp(x, y):
        return min(top, top - x + y)

    tables = {
        "not": tuple(top - x for x in range(size)),
        "imp": tuple(imp(x, y) for x in range(size) for y in range(size)),
        "and": tuple(min(x, y) for x in range(size) for y in range(size)),
        "or": tuple(max(x, y) for x in range(size) for y in range(size)),
        "iff": tuple(min(imp(x, y), imp(y, x))
                     for x in range(size) for y in range(size)),
        "top": (top,),
    }
    return FiniteAlgebra.make(name, SIG_CPC, size, tables)


def cyclic_group(name: str, n: int) -> FiniteAlgebra:
    tables = {
        "mul": tuple((a + b) % n for a in range(n) for b in range(n)),
        "inv": tuple((-a) % n for a in range(n)),
        "e": (0,),
    }
    return FiniteAlgebra.make(name, SIG_GRP, n, tables)


def klein_four(name: str = "K4") -> FiniteAlgebra:
    tables = {
        "mul": tuple(a ^ b for a in range(4) for b in range(4)),
        "inv": tuple(range(4)),
        "e": (0,),
    }
    return FiniteAlgebra.make(name, SIG_GRP, 4, tables)


def left_zero(name: str = "LZ2") -> FiniteAlgebra:
    """Left-zero 'group' non-example: x*y = x."""
    tables = {"mul": (0, 0, 1, 1), "inv": (0, 1), "e": (0,)}
    return FiniteAlgebra.make(name, SIG_GRP, 2, tables)


def fragment(algebra: FiniteAlgebra, name: str,
             signature: Signature) -> FiniteAlgebra:
    """Reduct of `algebra` to a sub-signature (tables copied verbatim)."""
    tables = {sym: algebra.table(sym) for sym, _ in signature.symbols}
    return FiniteAlgebra.make(name, signature, algebra.size, tables)


B2 = boolean_algebra("B2", 1)
B4 = boolean_algebra("B4", 2)
H3 = heyting_chain("H3", 3)
H4 = heyting_chain("H4", 4)
H5 = heyting_chain("H5", 5)
L3 = lukasiewicz_chain()
Z2 = cyclic_group("Z2", 2)
Z3 = cyclic_group("Z3", 3)
Z4 = cyclic_group("Z4", 4)
K4 = klein_four()
LZ2 = left_zero()
B2_IMP_NEG = fragment(B2, "B2imp", SIG_IMP_NEG)
B4_IMP_NEG = fragment(B4, "B4imp", SIG_IMP_NEG)
B2_OR_NEG = fragment(B2, "B2or", SIG_OR_NEG)
B4_OR_NEG = fragment(B4, "B4or", SIG_OR_NEG)
B2_IMP = fragment(B2, "B2imponly", SIG_IMP)
B4_IMP = fragment(B4, "B4imponly", SIG_IMP)


# ---------------------------------------------------------------------------
# Classical propositional calculus
# ---------------------------------------------------------------------------

_CPC_AXIOMS = (
    ("K", _imp(p, _imp(q, p))),
    ("S", _imp(_imp(p, _imp(q, r)), _imp(_imp(p, q), _imp(p, r)))),
    ("CP", _imp(_imp(_not(p), _not(q)), _imp(q, p))),
    ("AndE1", _imp(_and(p, q), p)),
    ("AndE2", _imp(_and(p, q), q)),
    ("AndI", _imp(p, _imp(q, _and(p, q)))),
    ("OrI1", _imp(p, _or(p, q))),
    ("OrI2", _imp(q, _or(p, q))),
    ("OrE", _imp(_imp(p, r), _imp(_imp(q, r), _imp(_or(p, q), r)))),
    ("IffE1", _imp(_iff(p, q), _imp(p, q))),
    ("IffE2", _imp(_iff(p, q), _imp(q, p))),
    ("IffI", _imp(_imp(p, q), _imp(_imp(q, p), _iff(p, q)))),
    ("Top", TOP),
)

MP = Rule((p, _imp(p, q)), q, "MP")

B2_MATRIX = Matrix("B2", B2, frozenset({1}))

CPC = LogicPresentation(
    "CPC", SIG_CPC,
    tuple(f for _, f in _CPC_AXIOMS),
    (MP,),
    tuple(lbl for lbl, _ in _CPC_AXIOMS),
    oracle=B2_MATRIX)

CPC_PAIR = AlgebraizingPair("CPC_pair", (_iff(p, q),), ((TOP, p),))


# ---------------------------------------------------------------------------
# Intuitionistic propositional calculus
# ---------------------------------------------------------------------------

_IPC_AXIOMS = (
    ("K", _imp(p, _imp(q, p))),
    ("S", _imp(_imp(p, _imp(q, r)), _imp(_imp(p, q), _imp(p, r)))),
    ("AndE1", _imp(_and(p, q), p)),
    ("AndE2", _imp(_and(p, q), q)),
    ("AndI", _imp(p, _imp(q, _and(p, q)))),
    ("OrI1", _imp(p, _or(p, q))),
    ("OrI2", _imp(q, _or(p, q))),
    ("OrE", _imp(_imp(p, r), _imp(_imp(q, r), _imp(_or(p, q), r)))),
    ("IffE1", _imp(_iff(p, q), _imp(p, q))),
    ("IffE2", _imp(_iff(p, q), _imp(q, p))),
    ("IffI", _imp(_imp(p, q), _imp(_imp(q, p), _iff(p, q)))),
    ("NegI", _imp(_imp(p, q), _imp(_imp(p, _not(q)), _not(p)))),
    ("NegE", _imp(_not(p), _imp(p, q))),
    ("Top", TOP),
    ("IffRefl", _iff(p, p)),
)

# Derived one-step rules (all admissible intuitionistically); they let the
# bounded prover reach the pair battery without a complete matrix.
_IPC_RULES = (
    MP,
    Rule((_iff(p, q),), _iff(q, p), "IffSym"),
    Rule((_iff(p, q), _iff(q, r)), _iff(p, r), "IffTrans"),
    Rule((_iff(p, q),), _iff(_not(p), _not(q)), "NotCong"),
    Rule((_iff(p, q), _iff(r, s)), _iff(_imp(p, r), _imp(q, s)), "ImpCong"),
    Rule((_iff(p, q), _iff(r, s)), _iff(_and(p, r), _and(q, s)), "AndCong"),
    Rule((_iff(p, q), _iff(r, s)), _iff(_or(p, r), _or(q, s)), "OrCong"),
    Rule((_iff(p, q), _iff(r, s)), _iff(_iff(p, r), _iff(q, s)), "IffCong"),
    Rule((p,), _iff(TOP, p), "TauIntro"),
    Rule((_iff(TOP, p),), p, "TauElim"),
)

H3_MATRIX = Matrix("H3", H3, frozenset({2}))
H4_MATRIX = Matrix("H4", H4, frozenset({3}))

IPC = LogicPresentation(
    "IPC", SIG_CPC,
    tuple(f for _, f in _IPC_AXIOMS),
    _IPC_RULES,
    tuple(lbl for lbl, _ in _IPC_AXIOMS),
    models=(H3_MATRIX, H4_MATRIX, B2_MATRIX))

IPC_PAIR = AlgebraizingPair("IPC_pair", (_iff(p, q),), ((TOP, p),))


# ---------------------------------------------------------------------------
# Classical fragments and the equipollence morphisms
# ---------------------------------------------------------------------------

B2_IMP_NEG_MATRIX = Matrix("B2imp", B2_IMP_NEG, frozenset({1}))
B2_OR_NEG_MATRIX = Matrix("B2or", B2_OR_NEG, frozenset({1}))
B2_IMP_MATRIX = Matrix("B2imponly", B2_IMP, frozenset({1}))

CPC_IMP_NEG = LogicPresentation(
    "CPC_imp_neg", SIG_IMP_NEG,
    (_imp(p, _imp(q, p)),
     _imp(_imp(p, _imp(q, r)), _imp(_imp(p, q), _imp(p, r))),
     _imp(_imp(_not(p), _not(q)), _imp(q, p))),
    (MP,),
    ("K", "S", "CP"),
    oracle=B2_IMP_NEG_MATRIX)

CPC_IMP_NEG_PAIR = AlgebraizingPair(
    "CPC_imp_neg_pair", (_imp(p, q), _imp(q, p)), ((_imp(p, p), p),))


def _arrow(x, y):
    # implication sugar in the {not, or} signature
    return _or(_not(x), y)


CPC_OR_NEG = LogicPresentation(
    "CPC_or_neg", SIG_OR_NEG,
    (_arrow(_or(p, p), p),
     _arrow(q, _or(p, q)),
     _arrow(_or(p, q), _or(q, p)),
     _arrow(_arrow(q, r), _arrow(_or(p, q), _or(p, r)))),
    (Rule((p, _arrow(p, q)), q, "MP"),),
    ("Taut", "Add", "Perm", "Sum"),
    oracle=B2_OR_NEG_MATRIX)

CPC_OR_NEG_PAIR = AlgebraizingPair(
    "CPC_or_neg_pair", (_arrow(p, q), _arrow(q, p)), ((_or(p, _not(p)), p),))

CPC_IMP = LogicPresentation(
    "CPC_imp", SIG_IMP,
    (_imp(p, _imp(q, p)),
     _imp(_imp(p, _imp(q, r)), _imp(_imp(p, q), _imp(p, r))),
     _imp(_imp(_imp(p, q), p), p)),
    (MP,),
    ("K", "S", "Peirce"),
    oracle=B2_IMP_MATRIX)

CPC_IMP_PAIR = AlgebraizingPair(
    "CPC_imp_pair", (_imp(p, q), _imp(q, p)), ((_imp(p, p), p),))

T_MORPHISM = FlexibleMorphism(
    "t", SIG_IMP_NEG, SIG_OR_NEG,
    (("not", _not(p)), ("imp", _or(_not(p), q))))

T_PRIME_MORPHISM = FlexibleMorphism(
    "t'", SIG_OR_NEG, SIG_IMP_NEG,
    (("not", _not(p)), ("or", _imp(_not(p), q))))

GODEL_MORPHISM = FlexibleMorphism(
    "godel", SIG_CPC, SIG_CPC,
    tuple((sym, app(sym, *(var(i) for i in range(ar))))
          for sym, ar in SIG_CPC.symbols))

IMP_INTO_CPC = FlexibleMorphism(
    "imp_into_cpc", SIG_IMP, SIG_CPC, (("imp", _imp(p, q)),))

# a deliberately broken translation: sends implication to conjunction
BAD_IMP_TO_AND = FlexibleMorphism(
    "bad_imp_to_and", SIG_IMP_NEG, SIG_CPC,
    (("not", _not(p)), ("imp", _and(p, q))))


# ---------------------------------------------------------------------------
# The logic of groups
# ---------------------------------------------------------------------------

Z2_MATRIX = Matrix("Z2", Z2, frozenset({0}))
Z3_MATRIX = Matrix("Z3", Z3, frozenset({0}))

GRP = LogicPresentation(
    "GRP", SIG_GRP,
    (_mul(_mul(_mul(p, q), r), _inv(_mul(p, _mul(q, r)))),
     _mul(_mul(p, E), _inv(p)),
     _mul(_mul(E, p), _inv(p)),
     _mul(p, _inv(p)),
     _mul(_inv(p), p)),
    (Rule((_mul(p, _inv(q)),), _mul(q, _inv(p)), "R1"),
     Rule((_mul(p, _inv(q)),), _mul(_inv(p), _inv(_inv(q))), "R2"),
     Rule((_mul(p, _inv(q)), _mul(q, _inv(r))), _mul(p, _inv(r)), "R3"),
     Rule((_mul(p, _inv(q)), _mul(r, _inv(s))),
          _mul(_mul(p, r), _inv(_mul(q, s))), "R4"),
     Rule((p,), _mul(p, _inv(E)), "R5"),
     Rule((_mul(p, _inv(E)),), p, "R6")),
    ("G1", "G2", "G3", "G4", "G5"),
    models=(Z2_MATRIX, Z3_MATRIX))

GRP_PAIR = AlgebraizingPair("GRP_pair", (_mul(p, _inv(q)),), ((p, E),))


# ---------------------------------------------------------------------------
# Bundled algebraizable logics
# ---------------------------------------------------------------------------

CPC_LOGIC = AlgebraizableLogic("CPC", CPC, CPC_PAIR, (B2, B4))
IPC_LOGIC = AlgebraizableLogic("IPC", IPC, IPC_PAIR, (B2, B4, H3, H4, H5))
GRP_LOGIC = AlgebraizableLogic("GRP", GRP, GRP_PAIR, (Z2, Z3, Z4, K4))
CPC_IMP_NEG_LOGIC = AlgebraizableLogic(
    "CPC_imp_neg", CPC_IMP_NEG, CPC_IMP_NEG_PAIR, (B2_IMP_NEG, B4_IMP_NEG))
CPC_OR_NEG_LOGIC = AlgebraizableLogic(
    "CPC_or_neg", CPC_OR_NEG, CPC_OR_NEG_PAIR, (B2_OR_NEG, B4_OR_NEG))
CPC_IMP_LOGIC = AlgebraizableLogic(
    "CPC_imp", CPC_IMP, CPC_IMP_PAIR, (B2_IMP, B4_IMP))


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str        # logic | pair | morphism | algebra | matrix
    payload: object


class UnknownEntryError(KeyError):
    pass


def _build_registry() -> dict[str, CorpusEntry]:
    entries: list[CorpusEntry] = []

    def add(name, kind, payload):
        entries.append(CorpusEntry(name, kind, payload))

    for logic in (CPC_LOGIC, IPC_LOGIC, GRP_LOGIC, CPC_IMP_NEG_LOGIC,
                  CPC_OR_NEG_LOGIC, CPC_IMP_LOGIC):
        add(logic.name, "logic", logic)
    for pair in (CPC_PAIR, IPC_PAIR, GRP_PAIR, CPC_IMP_NEG_PAIR,
                 CPC_OR_NEG_PAIR, CPC_IMP_PAIR):
        add(pair.name, "pair", pair)
    for morphism in (T_MORPHISM, T_PRIME_MORPHISM, GODEL_MORPHISM,
                     IMP_INTO_CPC, BAD_IMP_TO_AND):
        add(morphism.name, "morphism", morphism)
    for algebra in (B2, B4, H3, H4, H5, L3, Z2, Z3, Z4, K4, LZ2,
                    B2_IMP_NEG, B4_IMP_NEG, B2_OR_NEG, B4_OR_NEG,
                    B2_IMP, B4_IMP):
        add(algebra.name, "algebra", algebra)
    for matrix in (B2_MATRIX, B2_IMP_NEG_MATRIX, B2_OR_NEG_MATRIX,
                   B2_IMP_MATRIX, H3_MATRIX, H4_MATRIX, Z2_MATRIX, Z3_MATRIX):
        add(f"{matrix.name}_matrix", "matrix", matrix)

    registry: dict[str, CorpusEntry] = {}
    for entry in entries:
        if entry.name in registry:
            raise ValueError(f"duplicate corpus name {entry.name!r}")
        registry[entry.name] = entry
    registry["t_prime"] = registry["t'"]
    return registry


_REGISTRY = _build_registry()


def lookup(name: str) -> CorpusEntry:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownEntryError(
            f"unknown corpus entry {name!r}; available: "
            f"{', '.join(sorted(_REGISTRY))}") from None


def names(kind: str | None = None) -> list[str]:
    return sorted(n for n, e in _REGISTRY.items()
                  if kind is None or e.kind == kind)


def boolean_corpus(max_size: int = 4) -> list[FiniteAlgebra]:
    """Boolean corpus algebras (propositional signature) up to a size."""
    return [a for a in (B2, B4) if a.size <= max_size]
