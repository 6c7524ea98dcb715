"""Tests for spectral families and both trace-commutation routes."""

import pytest

from ncorep.corep import ThetaMap, coideal_check, flip_theta
from ncorep.errors import InvalidTheta, MixedFamilies, NotInvertible
from ncorep.integrable import (
    SpectralFamily,
    check_trace_ansatz,
    first_integrability,
    second_integrability,
    spectral_relations,
    weight_commutation_holds,
    weighted_trace,
    weighted_trace_element,
)
from ncorep.freealg import NCPoly, T
from ncorep.qplane import build_context, limit_theta_expected
from ncorep.scalars import Context
from ncorep.tensors import Tensor, delta, from_matrix, identity4, tensor_from_entries


def statuses(rep):
    return {item["name"]: item["status"] for item in rep.items}


def standard_family():
    qp = build_context()
    return qp, SpectralFamily(qp.ctx, ("lam", "mu"), qp.B, qp.theta)


def test_first_route_standard():
    qp, fam = standard_family()
    rep = fam.first_report("lam", "mu")
    assert rep.verdict() == "pass"
    assert statuses(rep) == {
        "trace-ansatz": "pass",
        "contracted-relation": "pass",
        "commutator-in-relation-span": "pass",
    }


def test_second_route_standard():
    qp, fam = standard_family()
    rep = fam.second_report("lam", "mu")
    assert rep.verdict() == "pass"
    st = statuses(rep)
    assert st["factorized-weight-identity"] == "pass"
    assert st["weight-commutation"] == "pass"
    assert st["contracted-relation"] == "pass"
    assert st["route-collapse"] == "info"


def test_spectral_relation_rank_and_coideal():
    qp, fam = standard_family()
    data = fam.relations("lam", "mu")
    assert len(data["relations"].polys) == 16
    assert data["relations"].rank() == 16
    assert coideal_check(qp.B, data["M"], data["M_swapped"]) is True


def test_flip_routes():
    qp = build_context()
    flip = flip_theta(qp.ctx, 2)
    assert first_integrability(qp.B, flip, ("lam", "mu")).verdict() == "pass"
    rep = second_integrability(qp.B, flip, ("lam", "mu"))
    assert rep.verdict() == "pass"
    # the flip carries no recorded factorization, so the weight is reported
    assert statuses(rep)["weight-table"] == "info"


def test_identity_exchange_same_label_degenerates():
    qp = build_context()
    ident = identity4(qp.ctx, 2)
    data = spectral_relations(ident, qp.theta, (None, None))
    assert all(p.is_zero() for p in data["entries"].values())
    rep = first_integrability(ident, qp.theta, (None, None))
    assert rep.verdict() == "pass"


def test_weighted_trace_identity_for_factorized_and_flip():
    qp = build_context()
    assert weighted_trace(qp.theta) == delta(qp.ctx, 2)
    assert weighted_trace(flip_theta(qp.ctx, 2)) == delta(qp.ctx, 2)
    assert check_trace_ansatz(qp.theta) is True
    assert check_trace_ansatz(flip_theta(qp.ctx, 2)) is True


def test_weighted_trace_element_shape():
    ctx = Context(["q", "p", "r", "s"])
    w = Tensor(ctx, 2, 1, 1, {(1, 1): ctx.one, (2, 2): ctx.parse("p")})
    elt = weighted_trace_element(w, "lam")
    expect = NCPoly.gen(ctx, T(1, 1, "lam")) + ctx.parse("p") * NCPoly.gen(
        ctx, T(2, 2, "lam")
    )
    assert elt == expect


def test_trace_ansatz_rejects_invalid_theta():
    ctx = Context(["q", "p", "r", "s"])
    broken = tensor_from_entries(ctx, 2, 2, 2, [((1, 1, 1, 1), "1")])
    with pytest.raises(InvalidTheta):
        check_trace_ansatz(broken)


def test_weight_commutation_negative():
    qp = build_context()
    ctx = qp.ctx
    w_bad = Tensor(ctx, 2, 1, 1, {(1, 1): ctx.one, (2, 2): ctx.parse("2")})
    assert weight_commutation_holds(qp.B, w_bad) is False
    assert weight_commutation_holds(qp.B, delta(ctx, 2)) is True


def test_raw_theta_second_route():
    qp = build_context()
    raw = ThetaMap(limit_theta_expected(qp.ctx))
    rep = second_integrability(qp.B, raw, ("lam", "mu"))
    assert rep.verdict() == "pass"
    st = statuses(rep)
    assert st["weight-table"] == "info"
    assert st["route-collapse"] == "info"


def test_family_validates_labels():
    qp = build_context()
    with pytest.raises(ValueError):
        SpectralFamily(qp.ctx, ("lam", "lam"), qp.B, qp.theta)
    with pytest.raises(ValueError):
        SpectralFamily(qp.ctx, ("lam",), qp.B, qp.theta)
    fam = SpectralFamily(qp.ctx, ("lam", "mu"), qp.B, qp.theta)
    with pytest.raises(MixedFamilies):
        fam.exchange("lam", "nu")
    with pytest.raises(MixedFamilies):
        fam.theta("lam", "lam")


def test_family_per_pair_tables():
    qp = build_context()
    pairs = {("lam", "mu"): qp.theta, ("mu", "lam"): qp.theta}
    fam = SpectralFamily(qp.ctx, ("lam", "mu"), {("lam", "mu"): qp.B, ("mu", "lam"): qp.B}, pairs)
    assert fam.first_report("lam", "mu").verdict() == "pass"
    missing = {("lam", "mu"): qp.theta}
    with pytest.raises(MixedFamilies):
        SpectralFamily(qp.ctx, ("lam", "mu"), qp.B, missing)


def test_singular_exchange_rejected():
    qp = build_context()
    ctx = qp.ctx
    rows = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "0"]]
    singular = from_matrix(ctx, 2, rows)
    with pytest.raises(NotInvertible):
        first_integrability(singular, qp.theta, ("lam", "mu"))
    with pytest.raises(NotInvertible):
        second_integrability(singular, qp.theta, ("lam", "mu"))
