"""3-CNF to control-set reduction gadget, with small-scale validation.

A 3-CNF instance with ``v`` variables and ``m`` clauses maps to a simple
graph on ``2(v + 1) + 5m`` nodes such that the majority game on it has a
sufficient control set of size ``v + 1`` exactly when the formula is
satisfiable.  Node classes:

- one ``clause`` node per clause (degree 4),
- per variable a ``var_true`` / ``var_false`` pair, linked to each other,
  to the clauses where the corresponding literal appears, and to one fresh
  ``var_leaf`` per occurrence,
- a single ``hub`` tied to every clause node and to ``m + 1`` ``hub_leaf``
  nodes.

:func:`verify_reduction` checks the equivalence on one instance using two
independent routes: brute-force assignment enumeration on the formula side
and cascade-backed exact search on the game side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .coordination import majority_game
from .errors import BudgetError, InputError, InternalCheckError
from .graph import WeightedGraph
from .scs import closure_mask, find_sufficient_within

SAT_VARS_LIMIT = 16
SEARCH_PLAN_LIMIT = 3_000_000


class CnfFormatError(InputError):
    """Malformed DIMACS text; the message carries the offending line number."""


@dataclass(frozen=True)
class Cnf3:
    """A 3-CNF formula: clauses of exactly three distinct signed variables.

    Variables are 1-based; a negative literal negates its variable.  The
    reduction targets control sets of size ``num_vars + 1``.
    """

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise InputError(f"need at least one variable, got {self.num_vars}")
        if not self.clauses:
            raise InputError("need at least one clause")
        clean = []
        for idx, clause in enumerate(self.clauses, 1):
            lits = tuple(clause)
            if len(lits) != 3:
                raise InputError(f"clause {idx} has {len(lits)} literals, expected 3")
            vs = [abs(l) for l in lits]
            if any(l == 0 for l in lits):
                raise InputError(f"clause {idx} contains literal 0")
            if any(v > self.num_vars for v in vs):
                raise InputError(f"clause {idx} uses a variable beyond {self.num_vars}")
            if len(set(vs)) != 3:
                raise InputError(f"clause {idx} repeats a variable")
            clean.append(lits)
        object.__setattr__(self, "clauses", tuple(clean))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def target_size(self) -> int:
        return self.num_vars + 1

    def satisfied_by(self, assignment: Sequence[int]) -> bool:
        if len(assignment) != self.num_vars:
            raise InputError(
                f"assignment has {len(assignment)} values, expected {self.num_vars}"
            )
        for clause in self.clauses:
            if not any(
                bool(assignment[abs(l) - 1]) == (l > 0) for l in clause
            ):
                return False
        return True


def parse_cnf(text: str) -> Cnf3:
    """Parse DIMACS CNF; every clause must hold exactly three distinct
    variables.  Errors carry 1-based line numbers."""
    num_vars = None
    declared_clauses = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    pending_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line == "%":
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise CnfFormatError(f"line {lineno}: duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfFormatError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise CnfFormatError(f"line {lineno}: counts must be integers") from None
            continue
        if num_vars is None:
            raise CnfFormatError(f"line {lineno}: clause before the problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfFormatError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if len(pending) != 3:
                    raise CnfFormatError(
                        f"line {lineno}: clause has {len(pending)} literals, expected 3"
                    )
                vs = [abs(l) for l in pending]
                if len(set(vs)) != 3:
                    raise CnfFormatError(f"line {lineno}: clause repeats a variable")
                if any(v > num_vars for v in vs):
                    raise CnfFormatError(
                        f"line {lineno}: variable beyond the declared {num_vars}"
                    )
                clauses.append(tuple(pending))
                pending = []
                pending_line = None
            else:
                if not pending:
                    pending_line = lineno
                pending.append(lit)
                if len(pending) > 3:
                    raise CnfFormatError(
                        f"line {lineno}: clause has more than 3 literals"
                    )
    if pending:
        raise CnfFormatError(f"line {pending_line}: clause not terminated by 0")
    if num_vars is None:
        raise CnfFormatError("missing 'p cnf' problem line")
    if declared_clauses != len(clauses):
        raise CnfFormatError(
            f"header declares {declared_clauses} clauses but file has {len(clauses)}"
        )
    return Cnf3(num_vars=num_vars, clauses=tuple(clauses))


NODE_CLASSES = ("clause", "var_true", "var_false", "hub", "var_leaf", "hub_leaf")


@dataclass(frozen=True, eq=False)
class GadgetGraph:
    """The reduction graph plus its node labeling.

    Node order is deterministic: clause block, var_true block, var_false
    block, hub, var_leaf block (in clause-literal order), hub_leaf block.
    """

    cnf: Cnf3
    graph: WeightedGraph
    names: tuple[str, ...]
    clause_nodes: tuple[int, ...]
    true_nodes: tuple[int, ...]
    false_nodes: tuple[int, ...]
    hub: int
    var_leaves: tuple[int, ...]
    hub_leaves: tuple[int, ...]
    leaf_owner: dict[int, int]

    def node_class(self, v: int) -> str:
        name = self.names[v]
        return name.rstrip("0123456789")

    def literal_node(self, lit: int) -> int:
        """Node encoding a literal: var_true for positive, var_false for
        negated."""
        var = abs(lit)
        if not 1 <= var <= self.cnf.num_vars:
            raise InputError(f"variable {var} out of range")
        return self.true_nodes[var - 1] if lit > 0 else self.false_nodes[var - 1]


def build_gadget(cnf: Cnf3) -> GadgetGraph:
    """Construct the reduction graph for a formula.

    Sizes are forced by construction: ``2(v+1) + 5m`` nodes and
    ``(v+1) + 8m`` edges for ``v`` variables and ``m`` clauses.
    """
    nv = cnf.num_vars
    m = cnf.num_clauses
    clause_nodes = tuple(range(m))
    true_nodes = tuple(range(m, m + nv))
    false_nodes = tuple(range(m + nv, m + 2 * nv))
    hub = m + 2 * nv
    var_leaves = tuple(range(hub + 1, hub + 1 + 3 * m))
    hub_leaves = tuple(range(hub + 1 + 3 * m, hub + 1 + 3 * m + m + 1))
    total = hub + 1 + 3 * m + m + 1

    names = (
        [f"clause{j + 1}" for j in range(m)]
        + [f"var_true{i + 1}" for i in range(nv)]
        + [f"var_false{i + 1}" for i in range(nv)]
        + ["hub"]
        + [f"var_leaf{k + 1}" for k in range(3 * m)]
        + [f"hub_leaf{k + 1}" for k in range(m + 1)]
    )

    edges: list[tuple[int, int]] = []
    leaf_owner: dict[int, int] = {}
    leaf_iter = iter(var_leaves)
    for j, clause in enumerate(cnf.clauses):
        for lit in clause:
            var = abs(lit)
            owner = true_nodes[var - 1] if lit > 0 else false_nodes[var - 1]
            edges.append((clause_nodes[j], owner))
            leaf = next(leaf_iter)
            edges.append((leaf, owner))
            leaf_owner[leaf] = owner
    for j in range(m):
        edges.append((hub, clause_nodes[j]))
    for leaf in hub_leaves:
        edges.append((hub, leaf))
        leaf_owner[leaf] = hub
    for i in range(nv):
        edges.append((true_nodes[i], false_nodes[i]))

    graph = WeightedGraph.from_edges(
        total,
        edges,
        provenance={"family": "cnf_gadget", "vars": nv, "clauses": m},
    )
    return GadgetGraph(
        cnf=cnf,
        graph=graph,
        names=tuple(names),
        clause_nodes=clause_nodes,
        true_nodes=true_nodes,
        false_nodes=false_nodes,
        hub=hub,
        var_leaves=var_leaves,
        hub_leaves=hub_leaves,
        leaf_owner=leaf_owner,
    )


def assignment_to_control_set(cnf: Cnf3, assignment: Sequence[int]) -> frozenset[int]:
    """Seed set encoding an assignment: the hub plus, per variable, the
    var_true node if assigned 1 else the var_false node.  Always of size
    ``num_vars + 1``."""
    if len(assignment) != cnf.num_vars:
        raise InputError(
            f"assignment has {len(assignment)} values, expected {cnf.num_vars}"
        )
    gadget = build_gadget(cnf)
    chosen = {gadget.hub}
    for i, value in enumerate(assignment):
        if value not in (0, 1, True, False):
            raise InputError(f"assignment values must be 0/1, got {value!r}")
        chosen.add(gadget.true_nodes[i] if value else gadget.false_nodes[i])
    return frozenset(chosen)


def control_set_to_assignment(cnf: Cnf3, control_set) -> tuple[int, ...]:
    """Read an assignment off a normalized control set (hub plus exactly one
    node per var_true/var_false pair)."""
    gadget = build_gadget(cnf)
    chosen = frozenset(control_set)
    if gadget.hub not in chosen:
        raise InputError("control set is not normalized: hub missing")
    out = []
    for i in range(cnf.num_vars):
        t = gadget.true_nodes[i] in chosen
        f = gadget.false_nodes[i] in chosen
        if t == f:
            raise InputError(
                f"control set is not normalized: variable {i + 1} needs exactly one "
                f"of its var_true/var_false nodes"
            )
        out.append(1 if t else 0)
    return tuple(out)


def _variable_groups(gadget: GadgetGraph) -> list[tuple[int, ...]]:
    """Disjoint node groups, one per variable plus one for the hub; any
    sufficient set of the target size holds exactly one node per group."""
    cnf = gadget.cnf
    leaves_of: dict[int, list[int]] = {}
    for leaf, owner in gadget.leaf_owner.items():
        leaves_of.setdefault(owner, []).append(leaf)
    groups = []
    for i in range(cnf.num_vars):
        t, f = gadget.true_nodes[i], gadget.false_nodes[i]
        groups.append(tuple([t, f] + sorted(leaves_of.get(t, [])) + sorted(leaves_of.get(f, []))))
    groups.append(tuple([gadget.hub] + sorted(leaves_of.get(gadget.hub, []))))
    return groups


def normalize_control_set(cnf: Cnf3, control_set) -> frozenset[int]:
    """Rewrite a sufficient control set of the target size into the
    canonical shape (hub plus one var node per variable) by swapping each
    chosen leaf for its sole neighbor.

    Every swap must preserve sufficiency; a failure means the reduction
    itself is broken and raises :class:`InternalCheckError`.
    """
    gadget = build_gadget(cnf)
    game = majority_game(gadget.graph)
    n = gadget.graph.n
    full = (1 << n) - 1
    current = set(control_set)
    for v in current:
        if not 0 <= v < n:
            raise InputError(f"node {v} out of range for the gadget ({n} nodes)")
    if len(current) != cnf.target_size:
        raise InputError(
            f"control set has size {len(current)}, expected {cnf.target_size}"
        )

    def mask_of(nodes) -> int:
        mask = 0
        for v in nodes:
            mask |= 1 << v
        return mask

    if closure_mask(game, mask_of(current)) != full:
        raise InputError("control set is not sufficient; nothing to normalize")

    for group in _variable_groups(gadget):
        inter = [v for v in group if v in current]
        if len(inter) != 1:
            raise InternalCheckError(
                f"normalization impossible: group {group} holds {len(inter)} "
                f"chosen nodes instead of 1"
            )
        chosen = inter[0]
        if chosen in gadget.leaf_owner:
            owner = gadget.leaf_owner[chosen]
            current.remove(chosen)
            current.add(owner)
            if closure_mask(game, mask_of(current)) != full:
                raise InternalCheckError(
                    f"normalization broke sufficiency when swapping leaf "
                    f"{gadget.names[chosen]} for {gadget.names[owner]}"
                )
    return frozenset(current)


@dataclass(frozen=True)
class ReductionReport:
    """Equivalence evidence for one formula: the two independently computed
    sides and the structural checks on the gadget."""

    satisfiable: bool
    satisfying_assignment: tuple[int, ...] | None
    control_within_target: bool
    sufficient_set: frozenset[int] | None
    target_size: int
    node_count: int
    edge_count: int
    sizes_ok: bool
    degrees_ok: bool
    roundtrip_ok: bool | None
    agree: bool


def _degree_profile_ok(gadget: GadgetGraph) -> bool:
    cnf = gadget.cnf
    g = gadget.graph
    pos = [0] * (cnf.num_vars + 1)
    neg = [0] * (cnf.num_vars + 1)
    for clause in cnf.clauses:
        for lit in clause:
            if lit > 0:
                pos[lit] += 1
            else:
                neg[-lit] += 1
    m = cnf.num_clauses
    for v in gadget.clause_nodes:
        if g.out_degrees[v] != 4:
            return False
    for leaf in gadget.var_leaves + gadget.hub_leaves:
        if g.out_degrees[leaf] != 1:
            return False
    if g.out_degrees[gadget.hub] != 2 * m + 1:
        return False
    for i in range(cnf.num_vars):
        if g.out_degrees[gadget.true_nodes[i]] != 2 * pos[i + 1] + 1:
            return False
        if g.out_degrees[gadget.false_nodes[i]] != 2 * neg[i + 1] + 1:
            return False
    return True


def verify_reduction(cnf: Cnf3, search_limit: int = SEARCH_PLAN_LIMIT) -> ReductionReport:
    """Check, on one instance, that satisfiability coincides with the
    existence of a control set of size ``num_vars + 1`` on the gadget.

    The formula side enumerates all assignments.  The game side first tries
    the assignment-encoded seed sets (cascade-verified, so no step trusts
    the construction) and only if none works falls back to the complete
    branch-and-bound search, whose planned work is guarded by
    ``search_limit``.
    """
    if cnf.num_vars > SAT_VARS_LIMIT:
        raise BudgetError(
            f"assignment enumeration limited to {SAT_VARS_LIMIT} variables, "
            f"got {cnf.num_vars}"
        )
    gadget = build_gadget(cnf)
    game = majority_game(gadget.graph)
    n = gadget.graph.n
    full = (1 << n) - 1
    s = cnf.target_size
    m = cnf.num_clauses

    node_count = n
    edge_count = len(gadget.graph.undirected_edges())
    sizes_ok = node_count == 2 * s + 5 * m and edge_count == s + 8 * m
    degrees_ok = _degree_profile_ok(gadget)

    satisfying = None
    for bits in range(1 << cnf.num_vars):
        assignment = tuple((bits >> i) & 1 for i in range(cnf.num_vars))
        if cnf.satisfied_by(assignment):
            satisfying = assignment
            break

    sufficient_set = None
    for bits in range(1 << cnf.num_vars):
        assignment = tuple((bits >> i) & 1 for i in range(cnf.num_vars))
        candidate = assignment_to_control_set(cnf, assignment)
        mask = 0
        for v in candidate:
            mask |= 1 << v
        if closure_mask(game, mask) == full:
            sufficient_set = candidate
            break
    if sufficient_set is None:
        planned = math.comb(n, s)
        if planned > search_limit:
            raise BudgetError(
                f"exhaustive control-set search would plan {planned} seed sets "
                f"(gadget has {n} nodes, target {s}), over the limit of {search_limit}"
            )
        sufficient_set = find_sufficient_within(game, s)

    control_within = sufficient_set is not None
    agree = (satisfying is not None) == control_within

    roundtrip_ok = None
    if satisfying is not None:
        mapped = assignment_to_control_set(cnf, satisfying)
        mask = 0
        for v in mapped:
            mask |= 1 << v
        if closure_mask(game, mask) == full:
            normalized = normalize_control_set(cnf, mapped)
            roundtrip_ok = control_set_to_assignment(cnf, normalized) == satisfying
        else:
            roundtrip_ok = False

    return ReductionReport(
        satisfiable=satisfying is not None,
        satisfying_assignment=satisfying,
        control_within_target=control_within,
        sufficient_set=sufficient_set,
        target_size=s,
        node_count=node_count,
        edge_count=edge_count,
        sizes_ok=sizes_ok,
        degrees_ok=degrees_ok,
        roundtrip_ok=roundtrip_ok,
        agree=agree,
    )


def format_labels(gadget: GadgetGraph) -> str:
    """Label map as text: one ``<node> <name>`` line per node."""
    return "\n".join(f"{v} {name}" for v, name in enumerate(gadget.names)) + "\n"
