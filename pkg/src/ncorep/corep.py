"""Twisted coactions on quantum linear spaces and the matrix they generate.

A twisting tensor theta replaces the flip in the usual tensor-product
coaction: the coordinate that crosses a matrix generator picks up

    T_i^j  |->  theta_im^jn T_n^m.

Validity of theta is two entrywise identities over the function field
(a coassociativity-type quadratic one and a counit-type trace one); a
valid theta makes

    M_ij^kl = T_i^k theta_jn^lm T_m^n

a group-like matrix, and the span of (B M - M B) a coideal whose quotient
coacts on the underlying quadratic algebra.
"""

from .bialg import Presentation, tilde_images
from .errors import InvalidTheta, ShapeMismatch
from .freealg import (
    NCPoly,
    PairPoly,
    RelationSet,
    SpanBasis,
    T,
    apply_hom,
    e,
    poly_vector,
    word_key,
    xi,
)
from .tensors import Tensor, invert2


def _theta_tensor(theta):
    if isinstance(theta, GammaMap):
        theta = theta.theta
    if isinstance(theta, ThetaMap):
        return theta.tensor
    return theta


class ThetaMap:
    """A twisting tensor, optionally remembered together with a factorization."""

    def __init__(self, tensor: Tensor, rho=None, rhobar=None):
        if tensor.nlower != 2 or tensor.nupper != 2:
            raise ShapeMismatch("twisting tensor must have two lower and two upper legs")
        self.tensor = tensor
        self.rho = rho
        self.rhobar = rhobar
        self._validation = None
        if rho is not None:
            if rhobar is None:
                raise ValueError("factorized map needs both rho and its inverse")
            n = tensor.dim
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    for k in range(1, n + 1):
                        for l in range(1, n + 1):
                            if tensor.get(i, j, k, l) != rho.get(i, l) * rhobar.get(j, k):
                                raise InvalidTheta(
                                    "tensor entry (%d,%d,%d,%d) does not match the declared factorization"
                                    % (i, j, k, l)
                                )

    @property
    def dim(self):
        return self.tensor.dim

    def validate(self):
        if self._validation is None:
            self._validation = validate_theta(self.tensor)
        return self._validation


class GammaMap:
    """Coaction twist on coordinate-crossing; carried entirely by its theta."""

    def __init__(self, theta):
        self.theta = theta if isinstance(theta, ThetaMap) else ThetaMap(theta)

    @property
    def dim(self):
        return self.theta.dim


def factorized_theta(ctx, rho: Tensor) -> ThetaMap:
    """theta_ij^kl = rho_i^l rhobar_j^k from an invertible 2-index table."""
    rhobar = invert2(rho)
    n = rho.dim
    entries = {}
    for (i, l), a in rho.entries.items():
        for (j, k), b in rhobar.entries.items():
            c = a * b
            if not c.is_zero():
                entries[(i, j, k, l)] = c
    return ThetaMap(Tensor(ctx, n, 2, 2, entries), rho=rho, rhobar=rhobar)


def flip_theta(ctx, n) -> Tensor:
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            entries[(i, j, j, i)] = ctx.one
    return Tensor(ctx, n, 2, 2, entries)


def validate_theta(theta):
    """Check the two structural identities; violations come back as data.

    coassociativity:  sum_p theta_ij^pl theta_pk^rs - delta_j^s theta_ik^rl = 0
    counit:           sum_n theta_jn^kn - delta_j^k = 0
    """
    t = _theta_tensor(theta)
    ctx = t.ctx
    n = t.dim
    rng = range(1, n + 1)
    violations = []
    for i in rng:
     for j in rng:
      for k in rng:
       for r in rng:
        for s in rng:
         for l in rng:
            acc = ctx.zero
            for p in rng:
                acc = acc + t.get(i, j, p, l) * t.get(p, k, r, s)
            if j == s:
                acc = acc - t.get(i, k, r, l)
            if not acc.is_zero():
                violations.append(("coassociativity", (i, j, k, r, s, l), acc))
    for j in rng:
        for k in rng:
            acc = ctx.zero
            for nn in rng:
                acc = acc + t.get(j, nn, k, nn)
            if j == k:
                acc = acc - ctx.one
            if not acc.is_zero():
                violations.append(("counit", (j, k), acc))
    return {"valid": not violations, "violations": violations}


class MMatrix:
    """The n^2 x n^2 matrix of degree-2 words generated by a twisting tensor."""

    def __init__(self, ctx, dim, entries, labels=None):
        self.ctx = ctx
        self.dim = dim
        self.entries = entries  # (i,j,k,l) -> NCPoly
        self.labels = labels

    def get(self, i, j, k, l) -> NCPoly:
        return self.entries.get((i, j, k, l), NCPoly.zero(self.ctx))

    def family(self):
        n = self.dim
        labels = self.labels if self.labels is not None else (None, None)
        fam = []
        for lab in dict.fromkeys(labels):
            fam.extend(T(i, j, lab) for i in range(1, n + 1) for j in range(1, n + 1))
        return fam


def build_M(theta, labels=None, check=True) -> MMatrix:
    """M_ij^kl = T_i^k theta_jn^lm T_m^n, optionally with a spectral label pair."""
    t = _theta_tensor(theta)
    if check:
        res = theta.validate() if isinstance(theta, ThetaMap) else validate_theta(t)
        if not res["valid"]:
            raise InvalidTheta(
                "twisting tensor fails %d validity identities" % len(res["violations"])
            )
    ctx = t.ctx
    n = t.dim
    lab1, lab2 = labels if labels is not None else (None, None)
    entries = {}
    rng = range(1, n + 1)
    for i in rng:
     for j in rng:
      for k in rng:
       for l in rng:
        acc = NCPoly.zero(ctx)
        for m in rng:
            for nn in rng:
                c = t.get(j, nn, l, m)
                if not c.is_zero():
                    acc = acc + NCPoly.term(ctx, (T(i, k, lab1), T(m, nn, lab2)), c)
        if not acc.is_zero():
            entries[(i, j, k, l)] = acc
    return MMatrix(ctx, n, entries, labels)


def check_grouplike(M: MMatrix) -> bool:
    """Delta(M) = M (x) M entrywise together with counit(M) = identity."""
    pres = Presentation(M.ctx, M.dim)
    n = M.dim
    rng = range(1, n + 1)
    for i in rng:
     for j in rng:
      for k in rng:
       for l in rng:
        lhs = pres.coproduct(M.get(i, j, k, l))
        rhs = PairPoly.zero(M.ctx)
        for r in rng:
            for s in rng:
                rhs = rhs + PairPoly.tensor(M.get(i, j, r, s), M.get(r, s, k, l))
        if lhs != rhs:
            return False
        eps = pres.counit(M.get(i, j, k, l))
        want = M.ctx.one if (i == k and j == l) else M.ctx.zero
        if eps != want:
            return False
    return True


def generate_ideal(B: Tensor, M: MMatrix) -> RelationSet:
    """Entries of B M - M B as degree-2 relations (identity parts cancel)."""
    if B.dim != M.dim or B.nlower != 2 or B.nupper != 2:
        raise ShapeMismatch("braid tensor shape does not match the matrix")
    ctx = M.ctx
    n = M.dim
    rng = range(1, n + 1)
    polys = []
    for i in rng:
     for j in rng:
      for k in rng:
       for l in rng:
        acc = NCPoly.zero(ctx)
        for m in rng:
            for nn in rng:
                c1 = B.get(i, j, m, nn)
                if not c1.is_zero():
                    acc = acc + c1 * M.get(m, nn, k, l)
                c2 = B.get(m, nn, k, l)
                if not c2.is_zero():
                    acc = acc - c2 * M.get(i, j, m, nn)
        if not acc.is_zero():
            polys.append(acc)
    return RelationSet(ctx, M.family(), polys)


def coideal_check(B: Tensor, M: MMatrix, M_second: MMatrix = None) -> bool:
    """The relation matrix Rel = B M - M_second B satisfies

        Delta(Rel_ij^kl) = sum_rs Rel_ij^rs (x) M_rs^kl
                         + sum_rs M_second_ij^rs (x) Rel_rs^kl

    together with counit(Rel) = 0, so the span of Rel generates a coideal.
    M_second defaults to M; the spectral variant passes the label-swapped
    matrix, which then also rides in the left tensor slot.
    """
    if M_second is None:
        M_second = M
    ctx = M.ctx
    n = M.dim
    pres = Presentation(ctx, n)
    rng = range(1, n + 1)

    def rel(i, j, k, l):
        acc = NCPoly.zero(ctx)
        for a in rng:
            for b in rng:
                c1 = B.get(i, j, a, b)
                if not c1.is_zero():
                    acc = acc + c1 * M.get(a, b, k, l)
                c2 = B.get(a, b, k, l)
                if not c2.is_zero():
                    acc = acc - c2 * M_second.get(i, j, a, b)
        return acc

    for i in rng:
     for j in rng:
      for k in rng:
       for l in rng:
        r = rel(i, j, k, l)
        lhs = pres.coproduct(r)
        rhs = PairPoly.zero(ctx)
        for a in rng:
            for b in rng:
                rhs = rhs + PairPoly.tensor(rel(i, j, a, b), M.get(a, b, k, l))
                rhs = rhs + PairPoly.tensor(M_second.get(i, j, a, b), rel(a, b, k, l))
        if lhs != rhs:
            return False
        if not pres.counit(r).is_zero():
            return False
    return True


def coaction_word(gamma, indices, kind="e", label=None):
    """Coaction of a coordinate word: each crossing applies one more twist.

    Returns {output index tuple: NCPoly coefficient}; the j-th coordinate
    contributes a generator twisted j-1 times.
    """
    gm = gamma if isinstance(gamma, GammaMap) else GammaMap(gamma)
    res = gm.theta.validate()
    if not res["valid"]:
        raise InvalidTheta("coaction requires a valid twisting tensor")
    t = gm.theta.tensor
    ctx = t.ctx
    n = t.dim
    images = tilde_images(ctx, t, label)
    out = {(): NCPoly.one(ctx)}
    for pos, i in enumerate(indices):
        nxt = {}
        for k in range(1, n + 1):
            gen = NCPoly.gen(ctx, T(i, k, label))
            for _ in range(pos):
                gen = apply_hom(gen, images)
            for key, coef in out.items():
                c = coef * gen
                if c.is_zero():
                    continue
                kk = key + (k,)
                acc = nxt.get(kk)
                nxt[kk] = c if acc is None else acc + c
        out = {k: v for k, v in nxt.items() if not v.is_zero()}
    return out


class QuadraticSpace:
    """A quadratic coordinate algebra: n coordinates modulo degree-2 relations."""

    def __init__(self, ctx, dim, parity="bosonic", relations=None, braid=None, kind=None):
        if parity not in ("bosonic", "grassmann"):
            raise ValueError("parity must be bosonic or grassmann")
        self.ctx = ctx
        self.dim = dim
        self.parity = parity
        self.kind = kind or ("xi" if parity == "grassmann" else "e")
        mk = xi if self.kind == "xi" else e
        self.coord = mk
        rels = []
        if braid is not None:
            if braid.dim != dim:
                raise ShapeMismatch("braid dimension does not match the space")
            rng = range(1, dim + 1)
            for i in rng:
                for j in rng:
                    p = NCPoly.gen(ctx, mk(i)) * NCPoly.gen(ctx, mk(j))
                    for k in rng:
                        for l in rng:
                            c = braid.get(i, j, k, l)
                            if not c.is_zero():
                                p = p - NCPoly.term(ctx, (mk(k), mk(l)), c)
                    if not p.is_zero():
                        rels.append(p)
        if relations:
            rels.extend(relations)
        if parity == "grassmann":
            for i in range(1, dim + 1):
                rels.append(NCPoly.gen(ctx, mk(i)) * NCPoly.gen(ctx, mk(i)))
        for p in rels:
            for w in p.terms:
                if len(w) != 2:
                    raise ValueError("space relation %s is not quadratic" % p)
        self.relations = rels

    def relation_span(self) -> SpanBasis:
        sb = SpanBasis(self.ctx, colkey=word_key)
        for p in self.relations:
            sb.add(poly_vector(p))
        return sb

    def reduce_vector(self, vec):
        """Eliminate relation pivots from {coordinate word: NCPoly} exactly."""
        span = self.relation_span()
        vec = dict(vec)
        for pivot, row, _ in span.rows:
            f = vec.get(pivot)
            if f is None or f.is_zero():
                vec.pop(pivot, None)
                continue
            for col, c in row.items():
                acc = vec.get(col, NCPoly.zero(self.ctx)) - f * c
                if acc.is_zero():
                    vec.pop(col, None)
                else:
                    vec[col] = acc
        return {w: p for w, p in vec.items() if not p.is_zero()}


def homomorphism_check(space: QuadraticSpace, gamma, relations: RelationSet) -> bool:
    """Coacting on each space relation must land in the relation ideal.

    The coordinate part is reduced modulo the space's own relation span;
    every surviving matrix-coefficient must lie in the Scalar span of the
    given degree-2 relations.
    """
    gm = gamma if isinstance(gamma, GammaMap) else GammaMap(gamma)
    basis = relations.basis()
    for p in space.relations:
        vec = {}
        for w, c in p.terms.items():
            co = coaction_word(gm, tuple(g.index[0] for g in w), kind=space.kind)
            for outidx, coef in co.items():
                word = tuple(space.coord(i) for i in outidx)
                acc = vec.get(word, NCPoly.zero(space.ctx)) + coef * c
                if acc.is_zero():
                    vec.pop(word, None)
                else:
                    vec[word] = acc
        for residual in space.reduce_vector(vec).values():
            if not basis.contains(poly_vector(residual)):
                return False
    return True


def factorization_heuristic(theta):
    """Try to split theta_ij^kl as rho_i^l rhobar_j^k; returns (rho, rhobar) or None.

    Rank-1 test on the reshape by (i,l) x (j,k); the counit identity pins
    the normalization, so any successful split has rhobar = rho^{-1}.
    """
    t = _theta_tensor(theta)
    ctx = t.ctx
    n = t.dim
    rng = range(1, n + 1)
    pick = None
    for key in sorted(t.entries):
        if not t.entries[key].is_zero():
            pick = key
            break
    if pick is None:
        return None
    i0, j0, k0, l0 = pick
    base = t.get(i0, j0, k0, l0)
    u = {}
    v = {}
    for i in rng:
        for l in rng:
            c = t.get(i, j0, k0, l)
            if not c.is_zero():
                u[(i, l)] = c
    for j in rng:
        for k in rng:
            c = t.get(i0, j, k, l0)
            if not c.is_zero():
                v[(j, k)] = c / base
    for i in rng:
     for j in rng:
      for k in rng:
       for l in rng:
        lhs = t.get(i, j, k, l)
        rhs = u.get((i, l), ctx.zero) * v.get((j, k), ctx.zero)
        if lhs != rhs:
            return None
    rho = Tensor(ctx, n, 1, 1, u)
    rhobar = Tensor(ctx, n, 1, 1, v)
    # the split is a factorization only when the two tables are inverse
    for i in rng:
        for j in rng:
            acc = ctx.zero
            for k in rng:
                acc = acc + rho.get(i, k) * rhobar.get(k, j)
            if acc != (ctx.one if i == j else ctx.zero):
                return None
    return rho, rhobar
