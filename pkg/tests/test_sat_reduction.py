import random

import pytest

from controlsets import (
    BudgetError,
    Cnf3,
    InputError,
    assignment_to_control_set,
    build_gadget,
    control_set_to_assignment,
    is_sufficient,
    majority_game,
    normalize_control_set,
    optimal_oracle,
    parse_cnf,
    verify_reduction,
)
from controlsets.sat_reduction import CnfFormatError, format_labels
from conftest import random_cnf3

SINGLE_CLAUSE = Cnf3(3, ((1, -2, 3),))

# All eight sign patterns over three variables: unsatisfiable, and the
# smallest clause count an unsatisfiable 3-CNF can have.
UNSAT_8 = Cnf3(
    3,
    tuple(
        tuple((1 if (bits >> k) & 1 else -1) * (k + 1) for k in range(3))
        for bits in range(8)
    ),
)


class TestParseCnf:
    def test_basic(self):
        cnf = parse_cnf("c a comment\np cnf 3 1\n1 -2 3 0\n")
        assert cnf.num_vars == 3
        assert cnf.clauses == ((1, -2, 3),)
        assert cnf.target_size == 4

    def test_multiclause_and_split_lines(self):
        cnf = parse_cnf("p cnf 4 2\n1 2 3 0 -1\n-2 4 0\n")
        assert cnf.num_clauses == 2

    def test_repeated_variable_rejected(self):
        with pytest.raises(CnfFormatError, match="repeats"):
            parse_cnf("p cnf 3 1\n1 1 2 0\n")

    def test_arity_two_rejected(self):
        with pytest.raises(CnfFormatError, match="2 literals"):
            parse_cnf("p cnf 3 1\n1 2 0\n")

    def test_arity_four_rejected(self):
        with pytest.raises(CnfFormatError, match="more than 3"):
            parse_cnf("p cnf 4 1\n1 2 3 4 0\n")

    def test_clause_before_header(self):
        with pytest.raises(CnfFormatError, match="line 1"):
            parse_cnf("1 2 3 0\np cnf 3 1\n")

    def test_variable_beyond_declared(self):
        with pytest.raises(CnfFormatError, match="beyond"):
            parse_cnf("p cnf 2 1\n1 2 3 0\n")

    def test_count_mismatch(self):
        with pytest.raises(CnfFormatError, match="declares 2"):
            parse_cnf("p cnf 3 2\n1 2 3 0\n")

    def test_unterminated_clause(self):
        with pytest.raises(CnfFormatError, match="not terminated"):
            parse_cnf("p cnf 3 1\n1 2 3\n")

    def test_direct_constructor_validation(self):
        with pytest.raises(InputError, match="repeats"):
            Cnf3(3, ((1, 1, 2),))
        with pytest.raises(InputError, match="expected 3"):
            Cnf3(3, ((1, 2),))


class TestGadget:
    def test_single_clause_sizes(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        s, m = SINGLE_CLAUSE.target_size, 1
        assert gadget.graph.n == 2 * s + 5 * m == 13
        assert len(gadget.graph.undirected_edges()) == s + 8 * m == 12

    def test_clause_node_neighbors(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        w = gadget.clause_nodes[0]
        names = {gadget.names[j] for j, _ in gadget.graph.neighbors(w)}
        assert names == {"var_true1", "var_false2", "var_true3", "hub"}
        assert gadget.graph.out_degree(w) == 4

    def test_hub_degree(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        assert gadget.graph.out_degree(gadget.hub) == 2 * 1 + 1

    def test_deterministic_node_order(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        assert gadget.names[:5] == (
            "clause1",
            "var_true1",
            "var_true2",
            "var_true3",
            "var_false1",
        )
        assert gadget.names[7] == "hub"
        assert gadget.names[-1] == "hub_leaf2"

    def test_sizes_and_degrees_on_randoms(self):
        rng = random.Random(97)
        for _ in range(20):
            cnf = random_cnf3(rng)
            gadget = build_gadget(cnf)
            s, m = cnf.target_size, cnf.num_clauses
            assert gadget.graph.n == 2 * s + 5 * m
            assert len(gadget.graph.undirected_edges()) == s + 8 * m
            pos = [0] * (cnf.num_vars + 1)
            neg = [0] * (cnf.num_vars + 1)
            for clause in cnf.clauses:
                for lit in clause:
                    if lit > 0:
                        pos[lit] += 1
                    else:
                        neg[-lit] += 1
            for i in range(cnf.num_vars):
                assert gadget.graph.out_degree(gadget.true_nodes[i]) == 2 * pos[i + 1] + 1
                assert gadget.graph.out_degree(gadget.false_nodes[i]) == 2 * neg[i + 1] + 1
            for leaf in gadget.var_leaves + gadget.hub_leaves:
                assert gadget.graph.out_degree(leaf) == 1

    def test_label_text(self):
        text = format_labels(build_gadget(SINGLE_CLAUSE))
        assert text.splitlines()[0] == "0 clause1"


class TestAssignmentMap:
    def test_mapped_set_shape(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        chosen = assignment_to_control_set(SINGLE_CLAUSE, (1, 0, 1))
        names = {gadget.names[v] for v in chosen}
        assert names == {"hub", "var_true1", "var_false2", "var_true3"}
        assert len(chosen) == SINGLE_CLAUSE.target_size

    def test_satisfying_assignment_is_sufficient(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        game = majority_game(gadget.graph)
        chosen = assignment_to_control_set(SINGLE_CLAUSE, (1, 0, 1))
        assert is_sufficient(game, chosen)

    def test_falsifying_assignment_stalls_at_clause(self):
        from controlsets import cascade

        gadget = build_gadget(SINGLE_CLAUSE)
        game = majority_game(gadget.graph)
        chosen = assignment_to_control_set(SINGLE_CLAUSE, (0, 1, 0))
        res = cascade(game, chosen)
        assert not res.sufficient
        assert gadget.clause_nodes[0] not in res.final_set

    def test_length_checked(self):
        with pytest.raises(InputError, match="expected 3"):
            assignment_to_control_set(SINGLE_CLAUSE, (1, 0))


class TestNormalize:
    def test_already_normalized_is_unchanged(self):
        chosen = assignment_to_control_set(SINGLE_CLAUSE, (1, 0, 1))
        assert normalize_control_set(SINGLE_CLAUSE, chosen) == chosen

    def test_var_leaf_swapped_for_its_owner(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        game = majority_game(gadget.graph)
        chosen = assignment_to_control_set(SINGLE_CLAUSE, (1, 0, 1))
        leaf = next(l for l, o in gadget.leaf_owner.items() if o == gadget.true_nodes[0])
        swapped = (chosen - {gadget.true_nodes[0]}) | {leaf}
        assert is_sufficient(game, swapped)
        assert normalize_control_set(SINGLE_CLAUSE, swapped) == chosen

    def test_hub_leaf_swapped_for_hub(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        game = majority_game(gadget.graph)
        chosen = assignment_to_control_set(SINGLE_CLAUSE, (1, 0, 1))
        swapped = (chosen - {gadget.hub}) | {gadget.hub_leaves[0]}
        assert is_sufficient(game, swapped)
        assert normalize_control_set(SINGLE_CLAUSE, swapped) == chosen

    def test_insufficient_input_rejected(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        bad = frozenset(list(gadget.var_leaves[:3]) + [gadget.hub_leaves[0]])
        with pytest.raises(InputError, match="not sufficient"):
            normalize_control_set(SINGLE_CLAUSE, bad)

    def test_wrong_size_rejected(self):
        with pytest.raises(InputError, match="size"):
            normalize_control_set(SINGLE_CLAUSE, frozenset({0, 1}))

    def test_assignment_readback(self):
        chosen = assignment_to_control_set(SINGLE_CLAUSE, (0, 1, 1))
        assert control_set_to_assignment(SINGLE_CLAUSE, chosen) == (0, 1, 1)

    def test_readback_requires_normal_form(self):
        gadget = build_gadget(SINGLE_CLAUSE)
        chosen = assignment_to_control_set(SINGLE_CLAUSE, (1, 0, 1))
        broken = (chosen - {gadget.hub}) | {gadget.hub_leaves[0]}
        with pytest.raises(InputError, match="hub"):
            control_set_to_assignment(SINGLE_CLAUSE, broken)


class TestVerifyReduction:
    def test_single_clause(self):
        report = verify_reduction(SINGLE_CLAUSE)
        assert report.satisfiable
        assert report.control_within_target
        assert report.agree
        assert report.sizes_ok
        assert report.degrees_ok
        assert report.roundtrip_ok

    def test_unsatisfiable_instance(self):
        report = verify_reduction(UNSAT_8)
        assert not report.satisfiable
        assert not report.control_within_target
        assert report.agree
        assert report.sizes_ok and report.degrees_ok
        assert report.node_count == 2 * 4 + 5 * 8

    def test_random_instances_agree(self):
        rng = random.Random(101)
        for _ in range(15):
            report = verify_reduction(random_cnf3(rng))
            assert report.agree
            assert report.sizes_ok and report.degrees_ok

    def test_variable_budget(self):
        clauses = tuple((i + 1, i + 2, i + 3) for i in range(1, 16, 3))
        cnf = Cnf3(18, clauses)
        with pytest.raises(BudgetError):
            verify_reduction(cnf)

    def test_plain_oracle_agrees_on_tiny_gadget(self):
        # Independent route: full ascending-cardinality enumeration on the
        # 13-node gadget must land exactly on the target size.
        gadget = build_gadget(SINGLE_CLAUSE)
        game = majority_game(gadget.graph)
        res = optimal_oracle(game, budget=SINGLE_CLAUSE.target_size)
        assert res.found
        assert res.min_size == SINGLE_CLAUSE.target_size
