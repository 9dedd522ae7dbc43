"""Finitely presented logics and a bounded two-sided derivability oracle.

`derive` answers Proved / Refuted / Unknown under an explicit budget:

* Proved comes with a replayable trace (forward proof search over
  substitution instances of the presentation) or with an exhaustive
  evaluation certificate when the logic carries a matrix that is trusted
  complete ("oracle").
* Refuted comes with a countermodel: a matrix validating the presentation
  together with an assignment sending the premises into the designated set
  but not the conclusion.

Soundness is unconditional; completeness is only what the budget buys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

from .finalg import FiniteAlgebra, evaluate, is_l_filter, Filter
from .syntax import (App, Equation, Formula, Signature, SignatureError,
                     Substitution, Var, app, subst, var)


# ---------------------------------------------------------------------------
# Presentations, matrices, budgets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    premises: tuple[Formula, ...]
    conclusion: Formula
    label: str = ""

    def __post_init__(self):
        if not self.premises:
            raise ValueError("rules need at least one premise; use an axiom instead")


@dataclass(frozen=True)
class Matrix:
    """Refutation device: algebra plus designated subset."""

    name: str
    algebra: FiniteAlgebra
    designated: frozenset[int]

    def __post_init__(self):
        if not self.designated:
            raise ValueError("designated set must be nonempty")
        if any(not 0 <= d < self.algebra.size for d in self.designated):
            raise ValueError("designated elements outside the carrier")


@dataclass(frozen=True)
class LogicPresentation:
    """Finite axioms and rules over a signature.

    `oracle` is an optional matrix trusted to be *complete* for the logic;
    `models` are matrices used for sound refutation only (they are
    re-validated against the presentation before use).
    """

    name: str
    signature: Signature
    axioms: tuple[Formula, ...]
    rules: tuple[Rule, ...]
    axiom_labels: tuple[str, ...] = ()
    oracle: Matrix | None = None
    models: tuple[Matrix, ...] = ()

    def __post_init__(self):
        for ax in self.axioms:
            self.signature.validate(ax)
        for rule in self.rules:
            self.signature.validate(rule.conclusion)
            for p in rule.premises:
                self.signature.validate(p)
        if self.axiom_labels and len(self.axiom_labels) != len(self.axioms):
            raise ValueError("axiom_labels length mismatch")

    def axiom_label(self, i: int) -> str:
        return self.axiom_labels[i] if self.axiom_labels else f"A{i}"

    def with_oracle(self, oracle: Matrix | None) -> "LogicPresentation":
        return LogicPresentation(self.name, self.signature, self.axioms,
                                 self.rules, self.axiom_labels, oracle, self.models)


@dataclass(frozen=True)
class Budget:
    """Explicit search bounds; all positive."""

    max_depth: int = 4
    max_vars: int = 4
    max_iters: int = 10
    max_carrier: int = 2
    seed: int | None = None

    def __post_init__(self):
        for name in ("max_depth", "max_vars", "max_iters", "max_carrier"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


DEFAULT_BUDGET = Budget()

# internal search caps, independent of the user budget
_MAX_BLIND_INSTANCES = 27       # blind instantiations per axiom
_MAX_DERIVED = 20000
_MAX_RULE_TICKS = 20000         # per rule, per iteration
_MAX_ENUMERATED_MATRICES = 4096
_MAX_ORACLE_CELLS = 1 << 20


# ---------------------------------------------------------------------------
# Verdicts and evidence
# ---------------------------------------------------------------------------

class Status(Enum):
    PROVED = "proved"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Step:
    formula: Formula
    kind: str                    # "premise" | "axiom" | "rule"
    label: str = ""
    refs: tuple[int, ...] = ()
    binding: tuple[tuple[int, Formula], ...] = ()


@dataclass(frozen=True)
class Trace:
    steps: tuple[Step, ...]

    def to_json(self):
        return [{"formula": repr(s.formula), "by": s.kind, "label": s.label,
                 "refs": list(s.refs),
                 "subst": {f"x{i}": repr(f) for i, f in s.binding}}
                for s in self.steps]


@dataclass(frozen=True)
class OracleCertificate:
    """Exhaustive semantic check in a matrix trusted complete for the logic."""

    matrix: Matrix
    gamma: tuple[Formula, ...]
    phi: Formula
    assignments_checked: int

    def to_json(self):
        return {"oracle": self.matrix.name,
                "gamma": [repr(g) for g in self.gamma],
                "phi": repr(self.phi),
                "assignments_checked": self.assignments_checked}


@dataclass(frozen=True)
class CounterModel:
    matrix: Matrix
    assignment: tuple[tuple[int, int], ...]

    def env(self) -> dict[int, int]:
        return dict(self.assignment)

    def to_json(self):
        return {"matrix": self.matrix.name,
                "carrier": self.matrix.algebra.size,
                "tables": {sym: list(tab) for sym, tab in self.matrix.algebra.tables},
                "designated": sorted(self.matrix.designated),
                "assignment": {f"x{i}": v for i, v in self.assignment}}


@dataclass(frozen=True)
class Report:
    """Named sub-verdicts backing an aggregated verdict."""

    items: tuple[tuple[str, "Verdict"], ...]

    def to_json(self):
        return [{"claim": claim, **v.to_json()} for claim, v in self.items]


@dataclass(frozen=True)
class Verdict:
    status: Status
    evidence: object = None
    reason: str = ""

    @staticmethod
    def proved(evidence) -> "Verdict":
        return Verdict(Status.PROVED, evidence)

    @staticmethod
    def refuted(evidence) -> "Verdict":
        return Verdict(Status.REFUTED, evidence)

    @staticmethod
    def unknown(reason: str) -> "Verdict":
        return Verdict(Status.UNKNOWN, None, reason)

    @property
    def is_proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def is_refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def to_json(self):
        out = {"status": self.status.value}
        if self.evidence is not None:
            if hasattr(self.evidence, "to_json"):
                out["evidence"] = self.evidence.to_json()
            elif isinstance(self.evidence, (dict, list, str, int, float, bool)):
                out["evidence"] = self.evidence
        if self.reason:
            out["reason"] = self.reason
        return out


def combine(items: Sequence[tuple[str, Verdict]]) -> Verdict:
    """All proved -> proved; any refuted -> refuted; otherwise unknown."""
    report = Report(tuple(items))
    if all(v.is_proved for _, v in items):
        return Verdict.proved(report)
    if any(v.is_refuted for _, v in items):
        return Verdict(Status.REFUTED, report)
    unknowns = [claim for claim, v in items if v.is_unknown]
    return Verdict(Status.UNKNOWN, report,
                   f"undecided obligations: {', '.join(unknowns)}")


# ---------------------------------------------------------------------------
# Matrix validation and enumeration
# ---------------------------------------------------------------------------

def validate_matrix(matrix: Matrix, logic: LogicPresentation) -> bool:
    """True iff all axiom instances are designated and rules preserve designation."""
    return is_l_filter(matrix.algebra, Filter(matrix.designated), logic)


def enumerate_matrices(signature: Signature, max_size: int,
                       cap: int = _MAX_ENUMERATED_MATRICES) -> Iterator[Matrix]:
    """All matrices up to the given carrier size, deterministic order.

    Stops silently at `cap` candidates per carrier size; the caller treats
    enumeration as a best-effort refutation source.
    """
    for k in range(1, max_size + 1):
        table_space = []
        for sym, ar in signature.symbols:
            table_space.append([tuple(t) for t in
                                itertools.product(range(k), repeat=k ** ar)])
        total = 1
        for space in table_space:
            total *= len(space)
        if total * (2 ** k - 1) > cap:
            return
        symbols = [sym for sym, _ in signature.symbols]
        for tabs in itertools.product(*table_space):
            algebra = FiniteAlgebra.make(f"enum{k}", signature, k,
                                         dict(zip(symbols, tabs)))
            for designated in _nonempty_subsets(k):
                yield Matrix(f"enum{k}", algebra, designated)


def _nonempty_subsets(k: int) -> Iterator[frozenset[int]]:
    for mask in range(1, 2 ** k):
        yield frozenset(i for i in range(k) if mask >> i & 1)


# ---------------------------------------------------------------------------
# Pattern matching (rule application)
# ---------------------------------------------------------------------------

def match(pattern: Formula, target: Formula,
          binding: dict[int, Formula]) -> dict[int, Formula] | None:
    """Extend `binding` so that pattern[binding] == target, or None."""
    if isinstance(pattern, Var):
        bound = binding.get(pattern.index)
        if bound is None:
            binding = dict(binding)
            binding[pattern.index] = target
            return binding
        return binding if bound == target else None
    if not isinstance(target, App) or target.symbol != pattern.symbol \
            or len(target.args) != len(pattern.args):
        return None
    for p, t in zip(pattern.args, target.args):
        binding = match(p, t, binding)
        if binding is None:
            return None
    return binding


# ---------------------------------------------------------------------------
# derive
# ---------------------------------------------------------------------------

def derive(logic: LogicPresentation, gamma: Iterable[Formula], phi: Formula,
           budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Bounded two-sided derivability check for gamma |- phi."""
    gamma = tuple(dict.fromkeys(gamma))  # dedup, keep order
    logic.signature.validate(phi)
    for g in gamma:
        logic.signature.validate(g)

    if phi in gamma:
        return Verdict.proved(Trace((Step(phi, "premise"),)))

    if logic.oracle is not None:
        verdict = _oracle_check(logic.oracle, gamma, phi)
        if verdict is not None:
            return verdict

    proved = _forward_search(logic, gamma, phi, budget)
    if proved is not None:
        return proved

    refuted = _refutation_search(logic, gamma, phi, budget)
    if refuted is not None:
        return refuted

    return Verdict.unknown(
        f"no derivation within budget (depth {budget.max_depth}, "
        f"iters {budget.max_iters}) and no countermodel up to carrier "
        f"{budget.max_carrier}")


def _oracle_check(oracle: Matrix, gamma: tuple[Formula, ...],
                  phi: Formula) -> Verdict | None:
    variables = sorted(frozenset().union(phi.vars, *(g.vars for g in gamma)))
    k = oracle.algebra.size
    if k ** len(variables) > _MAX_ORACLE_CELLS:
        return None
    checked = 0
    for point in itertools.product(range(k), repeat=len(variables)):
        env = dict(zip(variables, point))
        checked += 1
        if all(evaluate(oracle.algebra, g, env) in oracle.designated for g in gamma) \
                and evaluate(oracle.algebra, phi, env) not in oracle.designated:
            return Verdict.refuted(
                CounterModel(oracle, tuple(zip(variables, point))))
    return Verdict.proved(OracleCertificate(oracle, gamma, phi, checked))


def _instantiation_universe(logic: LogicPresentation, gamma, phi,
                            budget: Budget) -> list[Formula]:
    """Candidate substitution images: subterms of the query, nullary
    constants, and budget-many fresh variables, shallow terms first."""
    seen: dict[Formula, None] = {}

    def add(f):
        if f.depth <= budget.max_depth:
            seen.setdefault(f)

    stack = [phi, *gamma]
    while stack:
        node = stack.pop()
        add(node)
        if isinstance(node, App):
            stack.extend(node.args)
    for sym, ar in logic.signature.symbols:
        if ar == 0:
            add(app(sym))
    used = frozenset().union(phi.vars, *(g.vars for g in gamma))
    fresh_base = max(used, default=-1) + 1
    for i in range(budget.max_vars):
        add(var(fresh_base + i))
    return sorted(seen, key=lambda f: (f.depth, repr(f)))


def _forward_search(logic: LogicPresentation, gamma, phi,
                    budget: Budget) -> Verdict | None:
    universe = _instantiation_universe(logic, gamma, phi, budget)
    steps: list[Step] = []
    index_of: dict[Formula, int] = {}
    by_head: dict[object, list[int]] = {}
    by_head_arg0: dict[tuple, list[int]] = {}

    def push(f: Formula, kind: str, label: str = "", refs=(), binding=()) -> bool:
        if f in index_of:
            return False
        steps.append(Step(f, kind, label, tuple(refs), tuple(binding)))
        idx = len(steps) - 1
        index_of[f] = idx
        if isinstance(f, App):
            by_head.setdefault(f.symbol, []).append(idx)
            if f.args:
                by_head_arg0.setdefault((f.symbol, id(f.args[0])), []).append(idx)
        else:
            by_head.setdefault(None, []).append(idx)
        return True

    for g in gamma:
        push(g, "premise")

    # axiom instances: goal-directed matches plus a small blind prefix
    goal_targets = [phi] + [f for f in iter_strict_subformulas(phi)]
    for i, ax in enumerate(logic.axioms):
        variables = sorted(ax.vars)
        label = logic.axiom_label(i)
        if not variables:
            push(ax, "axiom", label)
            continue
        for target in goal_targets:
            binding = match(ax, target, {})
            if binding is not None and len(binding) == len(variables):
                push(target, "axiom", label, binding=sorted(binding.items()))
        prefix = _prefix_for(len(universe), len(variables))
        for point in itertools.product(universe[:prefix], repeat=len(variables)):
            binding = dict(zip(variables, point))
            instance = subst(ax, binding)
            if instance.depth <= budget.max_depth:
                push(instance, "axiom", label, binding=sorted(binding.items()))
    if phi in index_of:
        return Verdict.proved(_extract_trace(steps, index_of[phi]))

    frontier_start = 0
    for _ in range(budget.max_iters):
        iteration_start = len(steps)
        for rule in logic.rules:
            ticker = [_MAX_RULE_TICKS]
            for binding, refs in _match_rule(rule, steps, by_head, by_head_arg0,
                                             index_of, frontier_start,
                                             iteration_start, ticker):
                conclusion_vars = rule.conclusion.vars - frozenset(binding)
                if conclusion_vars:
                    # leftover variables range over a small universe prefix
                    prefix = _prefix_for(len(universe), len(conclusion_vars))
                    extra_points = itertools.product(
                        universe[:prefix], repeat=len(conclusion_vars))
                else:
                    extra_points = [()]
                names = sorted(conclusion_vars)
                for point in extra_points:
                    full = dict(binding)
                    full.update(zip(names, point))
                    instance = subst(rule.conclusion, full)
                    if instance.depth > budget.max_depth:
                        continue
                    if push(instance, "rule", rule.label, refs,
                            sorted(full.items())) and instance == phi:
                        return Verdict.proved(_extract_trace(steps, index_of[phi]))
                if len(steps) > _MAX_DERIVED:
                    return None
            if phi in index_of:
                return Verdict.proved(_extract_trace(steps, index_of[phi]))
        if len(steps) == iteration_start:
            break
        frontier_start = iteration_start
    return None


def iter_strict_subformulas(phi: Formula) -> Iterator[Formula]:
    if isinstance(phi, App):
        for a in phi.args:
            yield a
            yield from iter_strict_subformulas(a)


def _prefix_for(universe_size: int, n_vars: int) -> int:
    prefix = universe_size
    while prefix > 1 and prefix ** n_vars > _MAX_BLIND_INSTANCES:
        prefix -= 1
    return prefix


def _match_rule(rule: Rule, steps: list[Step], by_head: dict,
                by_head_arg0: dict, index_of: dict, frontier_start: int,
                n_steps: int, ticker: list[int],
                ) -> Iterator[tuple[dict[int, Formula], tuple[int, ...]]]:
    """Simultaneous matches of the rule premises against derived steps.

    Semi-naive: at least one matched premise must come from the frontier
    (steps added in the previous iteration), so re-running the rules does
    not revisit old joins.  `ticker` bounds the candidate scans so one
    unselective rule cannot monopolize the iteration.
    """

    def candidates(pattern: Formula, binding: dict, lo: int, hi: int):
        if isinstance(pattern, Var):
            bound = binding.get(pattern.index)
            if bound is not None:
                i = index_of.get(bound)
                return [i] if i is not None and lo <= i < hi else []
            return [i for idxs in by_head.values() for i in idxs if lo <= i < hi]
        # first-argument index when the leading argument is already forced
        if pattern.args:
            arg0 = pattern.args[0]
            forced = None
            if isinstance(arg0, Var):
                forced = binding.get(arg0.index)
            elif not arg0.vars:
                forced = arg0
            if forced is not None:
                return [i for i in by_head_arg0.get((pattern.symbol, id(forced)), ())
                        if lo <= i < hi]
        return [i for i in by_head.get(pattern.symbol, ()) if lo <= i < hi]

    def go(i: int, binding: dict[int, Formula], refs: tuple[int, ...],
           new_pos: int):
        if i == len(rule.premises):
            yield binding, refs
            return
        pattern = rule.premises[i]
        lo, hi = (frontier_start, n_steps) if i == new_pos else (0, n_steps)
        for idx in candidates(pattern, binding, lo, hi):
            ticker[0] -= 1
            if ticker[0] <= 0:
                return
            extended = match(pattern, steps[idx].formula, binding)
            if extended is not None:
                yield from go(i + 1, extended, refs + (idx,), new_pos)

    if frontier_start == 0:
        yield from go(0, {}, (), -1)
        return
    for new_pos in range(len(rule.premises)):
        for binding, refs in go(0, {}, (), new_pos):
            # canonical split: positions before new_pos stay old
            if any(r >= frontier_start for r in refs[:new_pos]):
                continue
            yield binding, refs


def _extract_trace(steps: list[Step], goal_idx: int) -> Trace:
    needed = set()
    stack = [goal_idx]
    while stack:
        i = stack.pop()
        if i in needed:
            continue
        needed.add(i)
        stack.extend(steps[i].refs)
    order = sorted(needed)
    renumber = {old: new for new, old in enumerate(order)}
    trimmed = [
        Step(steps[i].formula, steps[i].kind, steps[i].label,
             tuple(renumber[r] for r in steps[i].refs), steps[i].binding)
        for i in order]
    return Trace(tuple(trimmed))


def _refutation_search(logic: LogicPresentation, gamma, phi,
                       budget: Budget) -> Verdict | None:
    candidates = itertools.chain(
        logic.models,
        enumerate_matrices(logic.signature, budget.max_carrier))
    variables = sorted(frozenset().union(phi.vars, *(g.vars for g in gamma)))
    for matrix in candidates:
        if not validate_matrix(matrix, logic):
            continue
        k = matrix.algebra.size
        if k ** len(variables) > _MAX_ORACLE_CELLS:
            continue
        for point in itertools.product(range(k), repeat=len(variables)):
            env = dict(zip(variables, point))
            if all(evaluate(matrix.algebra, g, env) in matrix.designated
                   for g in gamma) \
                    and evaluate(matrix.algebra, phi, env) not in matrix.designated:
                return Verdict.refuted(
                    CounterModel(matrix, tuple(zip(variables, point))))
    return None


# ---------------------------------------------------------------------------
# Evidence replay
# ---------------------------------------------------------------------------

def verify_trace(logic: LogicPresentation, gamma: Iterable[Formula],
                 phi: Formula, trace: Trace) -> bool:
    """Re-check a proof trace step by step."""
    gamma = tuple(gamma)
    seen: list[Formula] = []
    for step in trace.steps:
        if step.kind == "premise":
            if step.formula not in gamma:
                return False
        elif step.kind == "axiom":
            binding = dict(step.binding)
            ok = False
            for i, ax in enumerate(logic.axioms):
                if logic.axiom_label(i) == step.label or not step.label:
                    if subst(ax, binding) == step.formula:
                        ok = True
                        break
            if not ok:
                return False
        elif step.kind == "rule":
            binding = dict(step.binding)
            ok = False
            for rule in logic.rules:
                if rule.label != step.label and step.label:
                    continue
                if len(rule.premises) != len(step.refs):
                    continue
                if subst(rule.conclusion, binding) != step.formula:
                    continue
                if all(r < len(seen)
                       and subst(p, binding) == seen[r]
                       for p, r in zip(rule.premises, step.refs)):
                    ok = True
                    break
            if not ok:
                return False
        else:
            return False
        seen.append(step.formula)
    return bool(seen) and seen[-1] == phi


def replay(verdict: Verdict, logic: LogicPresentation,
           gamma: Iterable[Formula], phi: Formula) -> bool:
    """Re-check the evidence carried by a Proved or Refuted verdict."""
    gamma = tuple(gamma)
    ev = verdict.evidence
    if verdict.is_proved:
        if isinstance(ev, Trace):
            return verify_trace(logic, gamma, phi, ev)
        if isinstance(ev, OracleCertificate):
            redo = _oracle_check(ev.matrix, gamma, phi)
            return redo is not None and redo.is_proved
        return False
    if verdict.is_refuted:
        if not isinstance(ev, CounterModel):
            return False
        matrix, env = ev.matrix, ev.env()
        if not validate_matrix(matrix, logic):
            return False
        return (all(evaluate(matrix.algebra, g, env) in matrix.designated
                    for g in gamma)
                and evaluate(matrix.algebra, phi, env) not in matrix.designated)
    return False


def instantiate_trace(trace: Trace, sigma: Substitution) -> Trace:
    """Apply a substitution through a proof trace (structurality).

    Step bindings cover all schema variables, so composing them with sigma
    pointwise yields a valid proof of the instantiated sequent.
    """
    out = []
    for step in trace.steps:
        binding = tuple(sorted(
            {i: subst(f, sigma) for i, f in step.binding}.items()))
        out.append(Step(subst(step.formula, sigma), step.kind, step.label,
                        step.refs, binding))
    return Trace(tuple(out))


# ---------------------------------------------------------------------------
# Derived checks
# ---------------------------------------------------------------------------

def interderivable(logic: LogicPresentation, phi: Formula, psi: Formula,
                   budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """phi and psi derive each other."""
    forward = derive(logic, (phi,), psi, budget)
    backward = derive(logic, (psi,), phi, budget)
    return combine(((f"{phi!r} |- {psi!r}", forward),
                    (f"{psi!r} |- {phi!r}", backward)))


def check_translation(h, source: LogicPresentation, target: LogicPresentation,
                      budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """h preserves consequence: every presentation obligation holds in the target.

    Sufficient because derivability is generated by the presentation and
    formula extension commutes with substitution.
    """
    from .syntax import flex_extend  # local to avoid polluting module surface
    if h.source.symbols != source.signature.symbols:
        raise SignatureError(
            f"morphism {h.name!r} does not start at logic {source.name!r}")
    if h.target.symbols != target.signature.symbols:
        raise SignatureError(
            f"morphism {h.name!r} does not end at logic {target.name!r}")
    items = []
    for i, ax in enumerate(source.axioms):
        verdict = derive(target, (), flex_extend(h, ax), budget)
        items.append((f"axiom {source.axiom_label(i)}", verdict))
    for rule in source.rules:
        image_premises = tuple(flex_extend(h, p) for p in rule.premises)
        verdict = derive(target, image_premises,
                         flex_extend(h, rule.conclusion), budget)
        items.append((f"rule {rule.label or repr(rule.conclusion)}", verdict))
    return combine(items)


def eq_consequence(algebras: Sequence[FiniteAlgebra], premises: Iterable[Equation],
                   conclusion: Equation) -> bool:
    """Exact equational consequence over a finite algebra family."""
    witness = eq_counterexample(algebras, premises, conclusion)
    return witness is None


def eq_counterexample(algebras: Sequence[FiniteAlgebra],
                      premises: Iterable[Equation],
                      conclusion: Equation) -> tuple[FiniteAlgebra, dict[int, int]] | None:
    premises = tuple(premises)
    variables = sorted(frozenset().union(
        conclusion.vars, *(p.vars for p in premises)))
    for algebra in algebras:
        for point in itertools.product(algebra.elements(), repeat=len(variables)):
            env = dict(zip(variables, point))
            if all(evaluate(algebra, p.lhs, env) == evaluate(algebra, p.rhs, env)
                   for p in premises):
                if evaluate(algebra, conclusion.lhs, env) \
                        != evaluate(algebra, conclusion.rhs, env):
                    return (algebra, env)
    return None


# ---------------------------------------------------------------------------
# Congruentiality
# ---------------------------------------------------------------------------

def is_congruential(logic: LogicPresentation,
                    budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Is interderivability a congruence for every connective?

    With a complete oracle the answer is Proved: interderivability then
    coincides with table equality in the oracle, which composes through
    every connective; the certificate re-verifies this on bounded formula
    pairs.  Without an oracle we search for a refutation: a pair of
    syntactically interderivable formulas and a connective context whose
    results a validated matrix separates.  Otherwise Unknown.
    """
    if logic.oracle is not None:
        checked = _congruence_spot_check(logic, budget)
        return Verdict.proved(Report(tuple(checked)))

    refutation = _congruentiality_refutation(logic, budget)
    if refutation is not None:
        return refutation
    return Verdict.unknown(
        "no complete oracle and no separating context found within budget")


def _congruence_spot_check(logic: LogicPresentation, budget: Budget):
    """Bounded re-verification that oracle equivalence is a congruence."""
    from .syntax import formulas_up_to_depth
    oracle = logic.oracle
    pool = formulas_up_to_depth(logic.signature, (0, 1), min(2, budget.max_depth))
    by_table: dict[tuple, list[Formula]] = {}
    for f in pool[:400]:
        key = tuple(evaluate(oracle.algebra, f, {0: a, 1: b})
                    for a in oracle.algebra.elements()
                    for b in oracle.algebra.elements())
        by_table.setdefault(key, []).append(f)
    items = []
    for sym, ar in logic.signature.symbols:
        agreed = 0
        for group in by_table.values():
            if len(group) < 2:
                continue
            f, g = group[0], group[1]
            for pos in range(ar):
                args_f = [var(2 + i) for i in range(ar)]
                args_g = list(args_f)
                args_f[pos] = f
                args_g[pos] = g
                lhs, rhs = app(sym, *args_f), app(sym, *args_g)
                variables = sorted(lhs.vars | rhs.vars)
                for point in itertools.product(oracle.algebra.elements(),
                                               repeat=len(variables)):
                    env = dict(zip(variables, point))
                    va = evaluate(oracle.algebra, lhs, env)
                    vb = evaluate(oracle.algebra, rhs, env)
                    if (va in oracle.designated) != (vb in oracle.designated):
                        items.append((f"connective {sym}", Verdict.refuted(
                            CounterModel(oracle, tuple(zip(variables, point))))))
                        break
                else:
                    agreed += 1
                    continue
                break
        items.append((f"connective {sym}",
                      Verdict.proved(OracleCertificate(
                          oracle, (), var(0), agreed))))
    return items


def _interderivable_pairs(logic: LogicPresentation,
                          budget: Budget) -> list[tuple[Formula, Formula, Verdict, Verdict]]:
    """Candidate (phi, psi) with derivations both ways, found syntactically."""
    pairs = []
    for rule in logic.rules:
        if len(rule.premises) != 1:
            continue
        p, c = rule.premises[0], rule.conclusion
        if p == c:
            continue
        forward = derive(logic, (p,), c, budget)
        backward = derive(logic, (c,), p, budget)
        if forward.is_proved and backward.is_proved:
            pairs.append((p, c, forward, backward))
        if len(pairs) >= 8:
            return pairs
    for i, ax1 in enumerate(logic.axioms):
        for ax2 in logic.axioms[i + 1:]:
            fresh = max(ax1.vars | ax2.vars, default=-1) + 1
            shifted = subst(ax2, {v: var(v + fresh) for v in ax2.vars})
            forward = derive(logic, (ax1,), shifted, budget)
            backward = derive(logic, (shifted,), ax1, budget)
            if forward.is_proved and backward.is_proved:
                pairs.append((ax1, shifted, forward, backward))
            if len(pairs) >= 12:
                return pairs
    return pairs


def _congruentiality_refutation(logic: LogicPresentation,
                                budget: Budget) -> Verdict | None:
    for phi, psi, fwd, bwd in _interderivable_pairs(logic, budget):
        fresh = max(phi.vars | psi.vars, default=-1) + 1
        for sym, ar in logic.signature.symbols:
            if ar == 0:
                continue
            for pos in range(ar):
                args_phi = [var(fresh + i) for i in range(ar)]
                args_psi = list(args_phi)
                args_phi[pos] = phi
                args_psi[pos] = psi
                lhs, rhs = app(sym, *args_phi), app(sym, *args_psi)
                for a, b in ((lhs, rhs), (rhs, lhs)):
                    verdict = derive(logic, (a,), b, budget)
                    if verdict.is_refuted:
                        detail = Report((
                            (f"{phi!r} |- {psi!r}", fwd),
                            (f"{psi!r} |- {phi!r}", bwd),
                            (f"context {a!r} |- {b!r}", verdict)))
                        return Verdict(Status.REFUTED, detail)
    return None
