"""Tests for ordered rewriting: orientation, confluence, counting, extension."""

import pytest

from ncorep.errors import (
    CommutationUnverified,
    OrderMissingGenerator,
    ZeroLeadingCoefficient,
)
from ncorep.freealg import NCPoly, RelationSet, T
from ncorep.rewrite import (
    DET,
    DETBAR,
    TermOrder,
    combination_value,
    confluence_check,
    count_irreducible,
    extend_with_determinant,
    matrix_order,
    normal_form,
    orient,
)
from ncorep.scalars import Context


def ctx2():
    return Context(["q", "p"])


def gens():
    return T(1, 1), T(1, 2), T(2, 1), T(2, 2)


def two_parameter_relations(ctx):
    a, b, c, d = (NCPoly.gen(ctx, g) for g in gens())
    polys = [
        a * c - ctx.parse("p*q") * (c * a),
        a * b - ctx.parse("q/p") * (b * a),
        b * c - ctx.parse("p^2") * (c * b),
        c * d - ctx.parse("q/p") * (d * c),
        b * d - ctx.parse("p*q") * (d * b),
        a * d - d * a + ctx.parse("p*(q^-1 - q)") * (c * b),
    ]
    return RelationSet(ctx, gens(), polys)


def oriented(ctx):
    return orient(two_parameter_relations(ctx), matrix_order(ctx, 2))


def test_term_order_basics():
    ctx = ctx2()
    order = matrix_order(ctx, 2)
    a, b, c, d = gens()
    assert order.less((a,), (b,))
    assert order.less((d,), (a, a))
    assert order.less((a, b), (b, a))
    assert order.leading_word(NCPoly.gen(ctx, a) + NCPoly.gen(ctx, d)) == (d,)


def test_term_order_rejects_duplicates():
    a, b, _, _ = gens()
    with pytest.raises(ValueError):
        TermOrder((a, b, a))


def test_term_order_unknown_generator():
    ctx = ctx2()
    a, b, c, _ = gens()
    order = TermOrder((a, b))
    with pytest.raises(OrderMissingGenerator):
        order.word_key((a, c))


def test_orientation_rule_table():
    ctx = ctx2()
    rs = oriented(ctx)
    a, b, c, d = gens()
    assert len(rs) == 6
    assert rs.rules[(b, a)] == NCPoly.term(ctx, (a, b), ctx.parse("p/q"))
    assert rs.rules[(c, a)] == NCPoly.term(ctx, (a, c), ctx.parse("1/(p*q)"))
    assert rs.rules[(c, b)] == NCPoly.term(ctx, (b, c), ctx.parse("1/p^2"))
    assert rs.rules[(d, b)] == NCPoly.term(ctx, (b, d), ctx.parse("1/(p*q)"))
    assert rs.rules[(d, c)] == NCPoly.term(ctx, (c, d), ctx.parse("p/q"))
    # inter-reduction rewrote the c b factor in the mixed rule
    assert rs.rules[(d, a)] == NCPoly.term(ctx, (a, d)) + NCPoly.term(
        ctx, (b, c), ctx.parse("(1 - q^2)/(p*q)")
    )


def test_orientation_is_reduced():
    ctx = ctx2()
    rs = oriented(ctx)
    for lhs, rhs in rs.rule_list():
        for w in rhs.terms:
            assert rs.order.less(w, lhs)
            assert normal_form(NCPoly.term(ctx, w), rs) == NCPoly.term(ctx, w)


def test_orientation_collapses_duplicates():
    ctx = ctx2()
    a, b, _, _ = gens()
    rel = NCPoly.gen(ctx, b) * NCPoly.gen(ctx, a) - ctx.parse("q") * (
        NCPoly.gen(ctx, a) * NCPoly.gen(ctx, b)
    )
    rs = orient([rel, ctx.parse("p") * rel], matrix_order(ctx, 2))
    assert len(rs) == 1


def test_orientation_rejects_zero():
    ctx = ctx2()
    with pytest.raises(ZeroLeadingCoefficient):
        orient([NCPoly.zero(ctx)], matrix_order(ctx, 2))


def test_confluence_of_two_parameter_system():
    ctx = ctx2()
    rs = oriented(ctx)
    conf = confluence_check(rs, maxdeg=3)
    assert conf["confluent"] is True
    assert conf["ambiguities"] == []
    assert rs.confluent is True


def test_corrupted_coefficient_breaks_confluence():
    ctx = ctx2()
    a, b, c, d = (NCPoly.gen(ctx, g) for g in gens())
    polys = [
        a * c - ctx.parse("p*q") * (c * a),
        a * b - ctx.parse("q/p") * (b * a),
        b * c - ctx.parse("p") * (c * b),
        c * d - ctx.parse("q/p") * (d * c),
        b * d - ctx.parse("p*q") * (d * b),
        a * d - d * a + ctx.parse("p*(q^-1 - q)") * (c * b),
    ]
    rs = orient(RelationSet(ctx, gens(), polys), matrix_order(ctx, 2))
    conf = confluence_check(rs, maxdeg=3)
    assert conf["confluent"] is False
    ga, gb, gc, gd = gens()
    words = [w for w, _ in conf["ambiguities"]]
    assert words == [(gd, gb, ga), (gd, gc, ga)]
    for _, diff in conf["ambiguities"]:
        assert not diff.is_zero()


def test_irreducible_word_counts():
    ctx = ctx2()
    rs = oriented(ctx)
    assert [count_irreducible(rs, n) for n in range(5)] == [1, 4, 10, 20, 35]


def test_strategies_agree_on_confluent_system():
    ctx = ctx2()
    rs = oriented(ctx)
    a, b, c, d = (NCPoly.gen(ctx, g) for g in gens())
    samples = [d * c * b * a, d * a * d, (d * b) * (c * a), c * b * a + d * d]
    for x in samples:
        left = normal_form(x, rs, strategy="leftmost")
        right = normal_form(x, rs, strategy="rightmost")
        assert left == right


def test_normal_form_rejects_unknown_strategy():
    ctx = ctx2()
    rs = oriented(ctx)
    with pytest.raises(ValueError):
        normal_form(NCPoly.one(ctx), rs, strategy="sideways")


def test_reduction_witness_is_sound():
    ctx = ctx2()
    rs = oriented(ctx)
    a, b, c, d = (NCPoly.gen(ctx, g) for g in gens())
    for strategy in ("leftmost", "rightmost"):
        x = d * c * b * a + ctx.parse("q") * (d * a)
        nf, steps = normal_form(x, rs, strategy=strategy, witness=True)
        assert steps
        assert combination_value(rs, steps) == x - nf


def test_sources_span_the_input_relations():
    ctx = ctx2()
    rels = two_parameter_relations(ctx)
    rs = orient(rels, matrix_order(ctx, 2))
    basis = rels.basis()
    from ncorep.corep import poly_vector

    for lhs in rs.rules:
        assert basis.contains(poly_vector(rs.sources[lhs]))


def test_full_parameter_system_is_not_confluent():
    # four-parameter relations still orient to six rules with the expected
    # quadratic growth, but degree-3 overlaps do not all resolve
    from ncorep.qplane import build_context, derive_relations

    qp = build_context()
    rs = orient(derive_relations(qp), matrix_order(qp.ctx, 2))
    assert len(rs) == 6
    assert count_irreducible(rs, 2) == 10
    conf = confluence_check(rs, maxdeg=3)
    assert conf["confluent"] is False
    assert count_irreducible(rs, 3) == 30
    assert count_irreducible(rs, 4) == 85


def det_poly(ctx):
    a, b, c, d = (NCPoly.gen(ctx, g) for g in gens())
    return a * d - ctx.parse("q/p") * (b * c)


def det_commutations(ctx):
    a, b, c, d = gens()
    return [
        (a, ctx.one),
        (b, ctx.parse("1/p^2")),
        (c, ctx.parse("p^2")),
        (d, ctx.one),
    ]


def test_determinant_extension():
    ctx = ctx2()
    rs = oriented(ctx)
    ext = extend_with_determinant(rs, det_poly(ctx), det_commutations(ctx))
    assert len(ext) == len(rs) + 10
    a = gens()[0]
    assert normal_form(NCPoly.term(ctx, (DET, DETBAR)), ext) == NCPoly.one(ctx)
    assert normal_form(NCPoly.term(ctx, (DETBAR, DET)), ext) == NCPoly.one(ctx)
    assert normal_form(NCPoly.term(ctx, (DET, a)), ext) == NCPoly.term(ctx, (a, DET))
    b = gens()[1]
    assert normal_form(NCPoly.term(ctx, (b, DETBAR)), ext) == NCPoly.term(
        ctx, (DETBAR, b), ctx.parse("1/p^2")
    )
    assert ext.determinant["poly"] == det_poly(ctx)


def test_determinant_extension_checks_claims():
    ctx = ctx2()
    rs = oriented(ctx)
    a, b, c, d = gens()
    bad = [
        (a, ctx.one),
        (b, ctx.parse("1/p")),
        (c, ctx.parse("p^2")),
        (d, ctx.one),
    ]
    with pytest.raises(CommutationUnverified):
        extend_with_determinant(rs, det_poly(ctx), bad)


def test_extension_preserves_base_reduction():
    ctx = ctx2()
    rs = oriented(ctx)
    ext = extend_with_determinant(rs, det_poly(ctx), det_commutations(ctx))
    a, b, c, d = (NCPoly.gen(ctx, g) for g in gens())
    x = d * c * b * a
    assert normal_form(x, ext) == normal_form(x, rs)
