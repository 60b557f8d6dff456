import itertools
import json
import random

import pytest

from cayley_omega import lab, perms
from cayley_omega.lab import (
    CayleyCase,
    SuiteConfig,
    TermBudgetExceeded,
    TupleOfDiagrams,
    c_tau_m,
    class_generating_function,
    class_target,
    expand_partial_action,
    showthis_sides,
    verify_cayley,
    verify_laplace,
    verify_showthis,
    verify_vivanti,
)
from cayley_omega.matrices import MinorSpec, SymbolicMatrix, apply_omega_det, generic_minor_det
from cayley_omega.perms import PartitionedPermutation, PartitionScheme, Permutation
from cayley_omega.poly import Polynomial

x = Polynomial.var
DET2 = x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)
ERASURE_TUPLE = TupleOfDiagrams(
    tuple(Permutation(p) for p in [(3, 1, 2, 5, 4), (5, 1, 3, 2, 4), (1, 4, 2, 5, 3), (2, 3, 4, 1, 5)])
)
ERASURE_TAU = Permutation((3, 1, 2))


def det(n):
    full = tuple(range(1, n + 1))
    return generic_minor_det(full, full)


# -- Cayley / Vivanti --


def test_cayley_single_derivative():
    lhs, rhs = lab.cayley_sides(CayleyCase(2, 1, (1,), (1,)))
    assert lhs == rhs == x(2, 2)
    assert verify_cayley(CayleyCase(2, 1, (1,), (1,))).equal


def test_cayley_full_minor_square():
    lhs, rhs = lab.cayley_sides(CayleyCase(2, 2, (1, 2), (1, 2)))
    assert lhs == rhs == 6 * DET2


def test_cayley_s_zero():
    lhs, rhs = lab.cayley_sides(CayleyCase(2, 0, (1,), (1,)))
    assert lhs.is_zero() and rhs.is_zero()


def test_cayley_k_zero_is_trivial():
    lhs, rhs = lab.cayley_sides(CayleyCase(3, 2, (), ()))
    assert lhs == rhs == det(3) ** 2
    lhs, rhs = lab.cayley_sides(CayleyCase(2, 0, (), ()))
    assert lhs == rhs == Polynomial.const(1)


def test_cayley_off_diagonal_sign():
    # eps({1},[2]) * eps({2},[2]) = -1, the cominor is x21
    lhs, rhs = lab.cayley_sides(CayleyCase(2, 1, (1,), (2,)))
    assert lhs == rhs == -x(2, 1)


def test_cayley_case_validation():
    with pytest.raises(ValueError):
        CayleyCase(3, 1, (1, 2), (1,))
    with pytest.raises(ValueError):
        CayleyCase(3, -1, (1,), (1,))
    with pytest.raises(ValueError):
        CayleyCase(3, 1, (4,), (1,))


def test_vivanti_examples():
    assert lab.vivanti_sides(3, 3, 1) == (Polynomial.const(6), Polynomial.const(6))
    lhs, rhs = lab.vivanti_sides(3, 1, 1)
    assert lhs == rhs == x(2, 2) * x(3, 3) - x(2, 3) * x(3, 2)
    assert lab.vivanti_sides(2, 2, 2) == (6 * DET2, 6 * DET2)
    assert verify_vivanti(3, 2, 3).equal


def test_row_expansion_agrees_with_tau_sum():
    p = det(3) ** 2 + x(1, 1) ** 3 * x(2, 3) * x(3, 2)
    for rows in itertools.combinations(range(1, 4), 2):
        for cols in itertools.combinations(range(1, 4), 2):
            assert lab.omega_det_by_rows(rows, cols, p) == apply_omega_det(MinorSpec(rows, cols), p)


# -- diagram tuples --


def test_c_tau_m_examples():
    ident = Permutation.identity(3)
    assert c_tau_m(Permutation.identity(2), TupleOfDiagrams((ident, ident, ident))) == 9
    assert c_tau_m(Permutation((2, 1)), [ident, ident]) == 0
    assert c_tau_m(ERASURE_TAU, ERASURE_TUPLE) == 4


def test_erasures_give_four_partitioned_rows():
    """Choosing a supplying copy for each edge of tau reproduces the four drawn rows."""
    copies = [[c for c, p in enumerate(ERASURE_TUPLE.perms) if p(i) == t] for i, t in ERASURE_TAU.edges()]
    rows = set()
    for choice in itertools.product(*copies):
        parts = tuple(
            perms.PartialPermutation.from_pairs(e for e, c in zip(ERASURE_TAU.edges(), choice) if c == copy)
            for copy in range(4)
        )
        rows.add(str(PartitionedPermutation(parts, 3)))
    assert rows == {
        "[3|1]*[1|2]*[2|3]*[|]",
        "[3,2|1,3]*[1|2]*[|]*[|]",
        "[3,1|1,2]*[|]*[2|3]*[|]",
        "[3,1,2|1,2,3]*[|]*[|]*[|]",
    }


def test_expand_partial_action_examples():
    assert expand_partial_action(CayleyCase(1, 1, (1,), (1,))) == Polynomial.const(1)
    assert expand_partial_action(CayleyCase(2, 1, (1,), (1,))) == x(2, 2)
    assert expand_partial_action(CayleyCase(2, 2, (1, 2), (1, 2))) == 6 * DET2
    with pytest.raises(ValueError):
        expand_partial_action(CayleyCase(2, 1, (2,), (2,)))


@pytest.mark.parametrize("n,k,s", [(3, 2, 2), (3, 3, 2), (3, 1, 3)])
def test_expand_partial_action_matches_operator(n, k, s):
    lead = tuple(range(1, k + 1))
    case = CayleyCase(n, s, lead, lead)
    assert expand_partial_action(case) == apply_omega_det(case.spec, det(n) ** s)


# -- class generating functions and the reduction --


def test_class_gf_single_word():
    for s in (1, 2, 3):
        sc = PartitionScheme(((1, 2),) + ((),) * (s - 1))
        assert class_generating_function(sc, 3, s) == class_target(3, 2, s)


def test_class_gf_two_singletons():
    g = class_generating_function(PartitionScheme(((1,), (2,))), 2, 2)
    assert g == DET2


def test_class_gf_all_schemes_k2_n3():
    values = {class_generating_function(sc, 3, 2) for sc in perms.enumerate_schemes(2, 2)}
    full = det(3) * generic_minor_det((3,), (3,))
    assert values == {full}


def test_class_gf_dimension_mismatch():
    with pytest.raises(ValueError):
        class_generating_function(PartitionScheme(((1, 2, 3),)), 2, 1)
    with pytest.raises(ValueError):
        class_generating_function(PartitionScheme(((1,), (2,))), 3, 3)


def test_class_gfs_sum_to_operator_side():
    n, k, s = 3, 2, 3
    total = sum((class_generating_function(sc, n, s) for sc in perms.enumerate_schemes(k, s)), Polynomial())
    assert total == apply_omega_det(MinorSpec((1, 2), (1, 2)), det(n) ** s)


def test_showthis_examples():
    # sgn(sigma) and sgn(tau_1) are both -1 for the single word 2,1,3
    lhs, rhs = showthis_sides([(2, 1, 3)], 3)
    assert lhs == rhs == Polynomial.const(1)
    lhs, rhs = showthis_sides([(1, 2, 3)], 4)
    assert lhs == rhs == x(4, 4)
    assert verify_showthis([(2,), (1,)], 3).equal
    assert verify_showthis(PartitionScheme(((1, 3), (2,))), 4).equal
    with pytest.raises(ValueError):
        showthis_sides([(1,), ()], 3)


def _reduce(words):
    return words[:-2] + (perms.merge_words(words[-2], words[-1]),)


@pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (4, 3)])
def test_merge_reduces_one_level(n, k):
    """Merging the last two words peels one factor of det X off the class sum."""
    for sc in lab.nonempty_schemes(k):
        words = sc.words
        if len(words) < 2:
            continue
        reduced = _reduce(words)
        assert perms.word_sign(reduced[-1]) == perms.word_sign(words[-2]) * perms.word_sign(words[-1])
        lhs, _ = showthis_sides(words, n)
        lhs_reduced, _ = showthis_sides(reduced, n)
        assert lhs == det(n) * lhs_reduced


# -- Laplace --


def test_laplace_two_by_two_hand():
    a = [[3, 5], [7, 2]]
    report = verify_laplace(a, [1], [1], [1])
    assert report.equal
    lhs, rhs = lab.laplace_sides(a, [1], [1], [1])
    assert lhs == rhs == Polynomial.const((3 * 2 - 5 * 7) * 2)


def test_laplace_subset_equals_rows():
    rng = random.Random(5)
    for _ in range(50):
        size = rng.randint(1, 5)
        a = [[rng.randint(-9, 9) for _ in range(size)] for _ in range(size)]
        r = rng.randint(0, size)
        R = sorted(rng.sample(range(1, size + 1), r))
        C = sorted(rng.sample(range(1, size + 1), r))
        assert verify_laplace(a, R, C, R).equal


def test_laplace_symbolic_x4_rank2():
    x4 = SymbolicMatrix.generic(4)
    for R in [(1, 2), (2, 4)]:
        for C in [(1, 3), (3, 4)]:
            for i in range(3):
                for I in itertools.combinations(R, i):
                    assert verify_laplace(x4, R, C, I).equal


def test_laplace_shape_errors():
    with pytest.raises(ValueError):
        verify_laplace([[1, 2], [3, 4]], [1], [1, 2], [])
    with pytest.raises(ValueError):
        verify_laplace([[1, 2], [3, 4]], [1], [2], [2])
    with pytest.raises(ValueError):
        verify_laplace([[1, 2, 3], [3, 4, 5]], [1], [2], [])


def test_random_laplace_is_seeded():
    a = [r.to_dict() for r in lab.random_laplace_reports(4, 10, seed=7)]
    b = [r.to_dict() for r in lab.random_laplace_reports(4, 10, seed=7)]
    for d in a + b:
        d.pop("ms")
    assert a == b
    assert len(a) == 10


# -- reports and suite --


def test_report_witness_on_mismatch():
    rep = lab.compare("demo", DET2, DET2 + 2 * x(1, 1) * x(2, 2), 0.0)
    assert not rep.equal
    assert rep.witness == {"monomial": "x[1,1]*x[2,2]", "lhs": 1, "rhs": 3}
    doc = json.loads(json.dumps(rep.to_dict()))
    assert set(doc) == {"case", "lhs_terms", "rhs_terms", "equal", "witness", "ms"}


def test_suite_with_no_families_is_empty():
    assert lab.run_suite(SuiteConfig(families=())) == []


def test_suite_rejects_unknown_family():
    with pytest.raises(ValueError):
        SuiteConfig(families=("nope",))


def test_suite_small_all_equal_and_sorted():
    reports = lab.run_suite(SuiteConfig(max_n=2, max_s=2, laplace_sizes=(2, 3), laplace_trials=5, laplace_symbolic_max_n=3))
    assert reports and all(r.equal for r in reports)
    assert [r.case for r in reports] == sorted(r.case for r in reports)


def test_mutation_dropping_eps_j_is_caught():
    reports = lab.run_suite(SuiteConfig(max_n=2, max_s=1, families=("cayley",), drop_eps_j=True))
    failed = {r.case: r for r in reports if not r.equal}
    # eps({1},[2]) = -1 while eps({2},[2]) = +1
    assert "cayley n=2 s=1 I={1} J={2}" not in failed
    hit = failed["cayley n=2 s=1 I={2} J={1}"]
    assert hit.witness == {"monomial": "x[1,2]", "lhs": -1, "rhs": 1}


def test_term_budget(monkeypatch):
    monkeypatch.setenv("CAYLEY_TERM_BUDGET", "10")
    with pytest.raises(TermBudgetExceeded):
        verify_cayley(CayleyCase(3, 2, (1,), (1,)))
    with pytest.raises(TermBudgetExceeded):
        expand_partial_action(CayleyCase(3, 2, (1,), (1,)))
