import itertools
from fractions import Fraction

import pytest

from nbihom.algebra import (NAryBiHomAlgebra, bracket_eval, check_axioms, check_bihom_jacobi,
                            check_bihom_skew, check_commuting, is_ideal, is_subalgebra, permutation_sign,
                            restrict)
from nbihom.errors import AmbientMismatch, DimensionMismatch
from nbihom.linalg import Matrix, Subspace, span
from nbihom.spaces import ab_center, center, derived_subalgebra


def e(i, d=4):
    return tuple(int(k == i) for k in range(d))


def mutated(A, idx, k, delta=1):
    table = {key: list(v) for key, v in A.bracket.items()}
    value = table.setdefault(idx, [0] * A.dim)
    value[k] += delta
    return A.replace(bracket=table)


def brute_jacobi_failures(A):
    """Both sides of the twisted Jacobi identity through bracket_eval only."""
    n, d = A.arity, A.dim
    al, be = A.alpha, A.beta
    b2 = be @ be
    es = [e(i, d) for i in range(d)]
    bad = []
    for x in itertools.product(range(d), repeat=n - 1):
        for y in itertools.product(range(d), repeat=n):
            inner = bracket_eval(A, *[be.apply(es[i]) for i in y[:-1]], al.apply(es[y[-1]]))
            lhs = bracket_eval(A, *[b2.apply(es[i]) for i in x], inner)
            rhs = [Fraction(0)] * d
            for k in range(n):
                inner = bracket_eval(A, *[be.apply(es[i]) for i in x], al.apply(es[y[k]]))
                rest = [b2.apply(es[y[j]]) for j in range(n) if j != k]
                term = bracket_eval(A, *rest, inner)
                sign = (-1) ** (n - 1 - k)
                rhs = [a + sign * b for a, b in zip(rhs, term)]
            if tuple(lhs) != tuple(rhs):
                bad.append((x, y))
    return sorted(bad)


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


def test_constructor_validation():
    I = Matrix.identity(2)
    with pytest.raises(DimensionMismatch):
        NAryBiHomAlgebra(1, 2, {}, I, I)
    with pytest.raises(DimensionMismatch):
        NAryBiHomAlgebra(2, 2, {(0, 1): [1, 0, 0]}, I, I)
    with pytest.raises(DimensionMismatch):
        NAryBiHomAlgebra(2, 3, {}, I, I)
    with pytest.raises(DimensionMismatch):
        NAryBiHomAlgebra(2, 2, {(0, 2): [1, 0]}, I, I)


def test_bracket_multilinear_example(lie3, bihom3):
    # [e1+e2, e3, e4] = [e1,e3,e4] + [e2,e3,e4] = -e2 + e1
    assert bracket_eval(lie3, (1, 1, 0, 0), e(2), e(3)) == (1, -1, 0, 0)
    # twisted: [alpha(e1+e2), alpha e3, beta e4] = [-(e1+e2), -e4, e3] = -[e1+e2, e3, e4]
    assert bracket_eval(bihom3, (1, 1, 0, 0), e(2), e(3)) == (-1, 1, 0, 0)


def test_bracket_eval_arity_and_length(lie3):
    with pytest.raises(DimensionMismatch):
        bracket_eval(lie3, e(0), e(1))
    with pytest.raises(DimensionMismatch):
        bracket_eval(lie3, e(0), e(1), (1, 0))


def test_lie3_is_filippov(lie3):
    rep = check_axioms(lie3)
    assert rep.is_bihom_lie and rep.multiplicative and rep.regular


def test_twisted_example_axioms(bihom3):
    rep = check_axioms(bihom3)
    assert rep.commuting
    assert rep.skew_failures == []
    assert rep.jacobi_failures == []
    assert rep.multiplicative and rep.regular


def test_jacobi_matches_brute_force_on_mutations(bihom3, dim2_n3):
    for A, idx, k in [(dim2_n3, (0, 1), 0), (dim2_n3, (1, 1), 1), (bihom3, (0, 1, 2), 3)]:
        B = mutated(A, idx, k)
        assert check_bihom_jacobi(B) == brute_jacobi_failures(B)
        assert check_bihom_jacobi(B)


def test_skew_failure_witness_reproduces(bihom3):
    B = mutated(bihom3, (0, 1, 2), 3)
    failures = check_bihom_skew(B)
    assert failures
    idx, perm = failures[0]
    es = [e(i) for i in range(4)]
    def twisted(t):
        return bracket_eval(B, *[B.beta.apply(es[i]) for i in t[:-1]], B.alpha.apply(es[t[-1]]))
    lhs = twisted(idx)
    rhs = twisted(tuple(idx[p] for p in perm))
    sgn = permutation_sign(perm)
    assert lhs != tuple(sgn * x for x in rhs)


def test_noncommuting_twists_detected(lie3):
    a = Matrix.from_columns([[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    A = lie3.replace(alpha=a, beta=a.T)
    assert not check_commuting(A)
    assert not check_axioms(A).is_bihom_lie


def test_multiplicative_witness(dim2_n1):
    # alpha is singular for n = 1, but still a morphism
    rep = check_axioms(dim2_n1)
    assert rep.is_bihom_lie and rep.multiplicative and not rep.regular
    B = dim2_n1.replace(alpha=Matrix.from_columns([[1, 0], [1, 1]]))
    rep = check_axioms(B)
    assert not rep.multiplicative and rep.multiplicative_witness[0] == "alpha"


def test_example_alpha_powers():
    # alpha^s(e2) = (n^s - (n-1)^s)/(n^(s-1) m) e1 + ((n-1)/n)^s e2
    from nbihom.examples import example_bihom_dim2
    for m, n in [(2, 3), (Fraction(1, 2), 5), (3, -2)]:
        A = example_bihom_dim2(m, n)
        m, n = Fraction(m), Fraction(n)
        for s in range(5):
            col = (A.alpha ** s).column(1)
            assert col == ((n ** s - (n - 1) ** s) / (n ** (s - 1) * m), ((n - 1) / n) ** s)


def test_centers_of_twisted_example(bihom3, lie3):
    assert ab_center(bihom3).dim == 0
    assert center(bihom3).dim == 0
    assert center(lie3).dim == 0


def test_center_of_t_extension(text_lie3):
    # with a trivial center downstairs, the center of the extension is g t^n
    Z = center(text_lie3.extended)
    assert Z == span([e(i, 8) for i in range(4, 8)], 8)


def test_center_first_slot_only(dim2_n3):
    A = dim2_n3
    assert center(A, strict_all_slots=False) <= Subspace.full(2)
    assert center(A) <= center(A, strict_all_slots=False)


def test_derived_subalgebra(dim2_n3, lie3):
    assert derived_subalgebra(lie3) == Subspace.full(4)
    assert derived_subalgebra(dim2_n3) == span([(-3, 2)], 2)


def test_ideals(text_lie3):
    T = text_lie3.extended
    tn = span([e(i, 8) for i in range(4, 8)], 8)
    t = span([e(i, 8) for i in range(4)], 8)
    assert is_ideal(T, tn, strong=True)
    assert is_subalgebra(T, tn)
    assert not is_subalgebra(T, t)
    with pytest.raises(AmbientMismatch):
        is_ideal(T, Subspace.full(4))


def test_restrict_to_block(bihom3):
    from nbihom.constructions import direct_sum
    S = direct_sum(bihom3, bihom3)
    I = span([e(i, 8) for i in range(4)], 8)
    assert restrict(S, I) == bihom3


def test_equality_and_replace(lie3):
    assert lie3 == lie3.replace()
    assert lie3 != mutated(lie3, (0, 1, 2), 0)
