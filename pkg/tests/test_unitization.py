from fractions import Fraction

import pytest

from trunclat import (
    DescriptorError,
    FinitePointwise,
    MeetWithUnit,
    NegativeInput,
    NonUnitalZero,
    SampleGen,
    SparseSeq,
    UnitalSpan,
    UnitizedElement,
    abs_u,
    catalog,
    check_ideal,
    check_thm11_fixedset,
    fp,
    fp_const,
    in_fixed_set,
    is_positive,
    join_u,
    leq,
    leq_u,
    lexpair,
    line,
    meet_u,
    neg_u,
    orthogonal_complement_witness,
    pos_u,
    sparse,
    truncate_u,
    truncation,
    unitize,
    unitized_from_json,
    unitized_to_json,
)

from oracles import o_abs, o_join, o_leq, o_meet, o_positive

SPARSE = unitize(catalog()["sparse_seq"].trunc)
FPU = unitize(catalog()["finite_pointwise"].trunc)
LEXU = unitize(catalog()["lex_plane"].trunc)
LINEU = unitize(catalog()["identity_line"].trunc)
ALL_CTX = (SPARSE, FPU, LEXU, LINEU)


def ue(e, lam):
    return UnitizedElement(e, Fraction(lam))


# -- cone --------------------------------------------------------------------

def test_is_positive_examples():
    assert is_positive(SPARSE, ue(sparse({1: -1}), 2))
    assert not is_positive(SPARSE, ue(sparse({1: -3}), 2))
    assert is_positive(SPARSE, ue(sparse({1: 5}), 0))
    assert not is_positive(SPARSE, ue(sparse(), -1))


def test_leq_u_examples():
    assert leq_u(SPARSE, SPARSE.zero, SPARSE.one)
    assert leq_u(SPARSE, SPARSE.embed(sparse({1: Fraction(1, 2)})), SPARSE.one)
    assert not leq_u(SPARSE, SPARSE.embed(sparse({1: 2})), SPARSE.one)


def test_abs_u_examples():
    # formula: |x| - 2|lam| tr((1/lam) neg(x) v (-1/lam) pos(x)) + |lam|
    assert abs_u(SPARSE, ue(sparse({1: 2}), -1)) == SPARSE.one
    x = ue(sparse({1: 1}), 0)
    assert abs_u(SPARSE, x) == x
    assert abs_u(SPARSE, ue(sparse(), -3)) == SPARSE.scalar(3)


def test_abs_u_fixes_positive_elements():
    for ctx in ALL_CTX:
        gen = SampleGen(53, ctx.space)
        for _ in range(200):
            a = gen.positive_unitized(ctx)
            assert abs_u(ctx, a) == a


def test_join_meet_examples():
    assert join_u(SPARSE, SPARSE.zero, SPARSE.one) == SPARSE.one
    assert meet_u(SPARSE, SPARSE.embed(sparse({1: 2})), SPARSE.one) == SPARSE.embed(sparse({1: 1}))
    a = ue(sparse({2: -1}), 5)
    assert join_u(SPARSE, a, a) == a


def test_truncate_u_examples():
    assert truncate_u(SPARSE, SPARSE.one) == SPARSE.one
    assert truncate_u(SPARSE, SPARSE.embed(sparse({1: 2}))) == SPARSE.embed(sparse({1: 1}))
    assert truncate_u(SPARSE, SPARSE.scalar(3)) == SPARSE.one
    with pytest.raises(NegativeInput):
        truncate_u(SPARSE, SPARSE.scalar(-1))


# -- oracle equivalence (the independent pointwise route) ----------------------

def test_pointwise_oracle_agreement():
    gen = SampleGen(59, SPARSE.space)
    for _ in range(300):
        a, b = gen.unitized(), gen.unitized()
        assert is_positive(SPARSE, a) == o_positive(a)
        assert leq_u(SPARSE, a, b) == o_leq(a, b)
        assert abs_u(SPARSE, a) == o_abs(a)
        assert join_u(SPARSE, a, b) == o_join(a, b)
        assert meet_u(SPARSE, a, b) == o_meet(a, b)


def test_identity_line_unitization_is_lexicographic():
    # (e, lam) |-> (lam, e) is an order isomorphism onto the lex plane
    gen = SampleGen(61, LINEU.space)
    for _ in range(300):
        a, b = gen.unitized(), gen.unitized()
        flip_a = lexpair(a.lam, a.e.payload)
        flip_b = lexpair(b.lam, b.e.payload)
        assert leq_u(LINEU, a, b) == leq(flip_a, flip_b)
        m = meet_u(LINEU, a, b)
        assert lexpair(m.lam, m.e.payload) in (flip_a, flip_b)


# -- invariants ---------------------------------------------------------------

def test_cone_sanity_sampled():
    for ctx in ALL_CTX:
        gen = SampleGen(67, ctx.space)
        for _ in range(300):
            a = gen.unitized()
            if is_positive(ctx, a) and is_positive(ctx, -a):
                assert a == ctx.zero


def test_abs_u_bounds_and_least_upper_bound():
    for ctx in ALL_CTX:
        gen = SampleGen(71, ctx.space)
        for _ in range(200):
            a = gen.unitized()
            b = abs_u(ctx, a)
            assert is_positive(ctx, b)
            assert leq_u(ctx, a, b) and leq_u(ctx, -a, b)
            z = b + gen.positive_unitized(ctx)
            assert leq_u(ctx, b, z)
            candidate = gen.unitized()
            if leq_u(ctx, a, candidate) and leq_u(ctx, -a, candidate):
                assert leq_u(ctx, b, candidate)


def test_triangle_inequality_sampled():
    for ctx in ALL_CTX:
        gen = SampleGen(73, ctx.space)
        for _ in range(200):
            a, b = gen.unitized(), gen.unitized()
            assert leq_u(ctx, abs_u(ctx, a + b), abs_u(ctx, a) + abs_u(ctx, b))


def test_pos_neg_decomposition_unitized():
    for ctx in ALL_CTX:
        gen = SampleGen(79, ctx.space)
        for _ in range(150):
            a = gen.unitized()
            assert pos_u(ctx, a) - neg_u(ctx, a) == a
            assert pos_u(ctx, a) + neg_u(ctx, a) == abs_u(ctx, a)


# -- fixed set and ideal ------------------------------------------------------

def test_thm11_fixedset_examples_and_sampled():
    assert in_fixed_set(SPARSE.trunc, sparse({1: Fraction(1, 2)}))
    assert leq_u(SPARSE, SPARSE.embed(sparse({1: Fraction(1, 2)})), SPARSE.one)
    assert not in_fixed_set(SPARSE.trunc, sparse({1: 2}))
    assert not leq_u(SPARSE, SPARSE.embed(sparse({1: 2})), SPARSE.one)
    for ctx in ALL_CTX:
        gen = SampleGen(83, ctx.space)
        report = check_thm11_fixedset(ctx, [gen.element() for _ in range(500)])
        assert report.verdict == "pass"


def test_ideal_absorption_examples():
    a = sparse({1: 2})
    assert leq_u(SPARSE, abs_u(SPARSE, SPARSE.embed(sparse({1: 1}))), SPARSE.embed(abs(a)))
    # |b| has scalar part 1/2 "at infinity", so it cannot sit below (|a|, 0)
    b = ue(sparse({1: -1}), Fraction(1, 2))
    assert not leq_u(SPARSE, abs_u(SPARSE, b), SPARSE.embed(abs(a)))
    report = check_ideal(SPARSE, [(a, SPARSE.embed(sparse({1: 1}))), (a, b)])
    assert report.verdict == "pass"
    assert report.detail == "absorbed=1"


def test_ideal_absorption_sampled():
    for ctx in ALL_CTX:
        gen = SampleGen(89, ctx.space)
        pairs = []
        for i in range(400):
            a = gen.element()
            if i % 2 == 0:
                from trunclat import join as join_e, meet as meet_e, scale

                clamped = join_e(meet_e(gen.element(), abs(a)), scale(-1, abs(a)))
                pairs.append((a, ctx.embed(clamped)))
            else:
                pairs.append((a, gen.unitized()))
        assert check_ideal(ctx, pairs).verdict == "pass"


# -- orthogonal complement ----------------------------------------------------

def test_orthocomplement_unital_two_dims():
    space = FinitePointwise(2)
    ctx = unitize(truncation(space, MeetWithUnit(fp_const(2, 1))))
    result = orthogonal_complement_witness(ctx, [fp(1, 0), fp(0, 1), fp(3, 5)])
    assert isinstance(result, UnitalSpan)
    assert result.failure is None
    assert result.w == ue(fp(-1, -1), 1)
    # |w| ^ (x, 0) = 0 for x = (1,0), spelled out
    x = fp(1, 0)
    assert meet_u(ctx, abs_u(ctx, result.w), ctx.embed(x)) == ctx.zero


def test_orthocomplement_unital_lex_plane():
    result = orthogonal_complement_witness(
        LEXU, [lexpair(1, 0), lexpair(0, 1), lexpair(2, -3)]
    )
    assert isinstance(result, UnitalSpan)
    assert result.failure is None
    assert result.w == ue(lexpair(0, -1), 1)


def test_orthocomplement_nonunital_sparse():
    candidates = [SPARSE.scalar(1), ue(sparse({3: 2}), 0), ue(sparse({1: -1}), 2)]
    result = orthogonal_complement_witness(
        SPARSE, [sparse({1: 1}), sparse({2: 1})], candidates=candidates
    )
    assert isinstance(result, NonUnitalZero)
    assert result.unresolved == ()
    assert result.separated == 3
    # the pure-scalar candidate is met nontrivially by a base element
    scalar_row = result.table[0]
    assert scalar_row[0] == {"e": {}, "lambda": "1/1"}
    z = SPARSE.scalar(1)
    x = sparse({1: 1})
    assert meet_u(SPARSE, abs_u(SPARSE, z), SPARSE.embed(x)) == SPARSE.embed(sparse({1: 1}))


def test_orthocomplement_nonunital_identity_line():
    candidates = [LINEU.scalar(1), ue(line(2), 0), ue(line(-1), Fraction(1, 2))]
    result = orthogonal_complement_witness(LINEU, [line(1)], candidates=candidates)
    assert isinstance(result, NonUnitalZero)
    assert result.unresolved == ()


def test_broken_unit_is_caught_by_tau2():
    # a unit with a zero coordinate is not a weak unit: meet-with-it kills the
    # second axis, which the tau2 check reports as a refutation
    from trunclat import check_tau2

    space = FinitePointwise(2)
    t = truncation(space, MeetWithUnit(fp(1, 0)))
    report = check_tau2(t, [fp(0, 1)])
    assert report.verdict == "refuted"
    assert report.witness == {"a": ["0/1", "1/1"]}


# -- truncation laws on the unitization ---------------------------------------

def test_truncate_u_axioms_sampled():
    for ctx in ALL_CTX:
        gen = SampleGen(97, ctx.space)
        for _ in range(150):
            a = gen.positive_unitized(ctx)
            b = gen.positive_unitized(ctx)
            ta = truncate_u(ctx, a)
            tb = truncate_u(ctx, b)
            assert leq_u(ctx, meet_u(ctx, a, tb), ta)
            assert leq_u(ctx, ta, a)
            assert meet_u(ctx, a, tb) == meet_u(ctx, ta, b)
            if ta == ctx.zero:
                assert a == ctx.zero


def test_disjoint_positive_scalars_always_meet():
    for ctx in ALL_CTX:
        gen = SampleGen(101, ctx.space)
        for _ in range(150):
            a = gen.positive_unitized_scalar(ctx)
            b = gen.positive_unitized_scalar(ctx)
            m = meet_u(ctx, a, b)
            assert m != ctx.zero
            assert m.lam == min(a.lam, b.lam)


# -- wire format --------------------------------------------------------------

def test_unitized_json_roundtrip():
    for ctx in ALL_CTX:
        gen = SampleGen(103, ctx.space)
        for _ in range(50):
            a = gen.unitized()
            assert unitized_from_json(ctx.space, unitized_to_json(a)) == a


def test_unitized_json_examples():
    assert unitized_to_json(SPARSE.one) == {"e": {}, "lambda": "1/1"}
    with pytest.raises(DescriptorError):
        unitized_from_json(SparseSeq(), {"e": {}})
    with pytest.raises(DescriptorError):
        unitized_from_json(SparseSeq(), {"e": {}, "lambda": "0.5"})
