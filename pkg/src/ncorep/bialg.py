"""Matrix-bialgebra structure and the convolution algebra of linear forms.

The coordinate bialgebra of n x n quantum matrices carries

    coproduct   T_i^j  |->  sum_k T_i^k (x) T_k^j
    counit      T_i^j  |->  delta_i^j

extended multiplicatively to words.  Scalar-valued forms on pairs of
elements are stored through their generator-pair table, a 4-index tensor

    base[(i, j, k, l)] = f(T_i^k (x) T_j^l),

and extended to longer words either by the bicharacter splitting laws

    f(xy (x) z) = sum f(x (x) z_(1)) f(y (x) z_(2))
    f(x (x) yz) = sum f(x_(1) (x) z) f(x_(2) (x) y)

(note the flip in the second slot) or as an explicit convolution of two
previously defined forms.  Convolution of forms restricted to the
generator-pair tables is plain tensor composition, which makes twisting
by an invertible form a finite computation.
"""

import threading

from .errors import (
    NonBicharacter,
    NotInvertible,
    PresentationMismatch,
    UnknownGenerator,
)
from .freealg import Generator, NCPoly, PairPoly, T, apply_hom
from .tensors import Tensor, compose, identity4, invert4


class Presentation:
    """The n x n matrix coordinate family with its coalgebra maps."""

    def __init__(self, ctx, dim):
        self.ctx = ctx
        self.dim = dim

    def __eq__(self, other):
        return (
            isinstance(other, Presentation)
            and self.ctx == other.ctx
            and self.dim == other.dim
        )

    def __hash__(self):
        return hash((self.ctx, self.dim))

    def family(self, label=None):
        n = self.dim
        return [T(i, j, label) for i in range(1, n + 1) for j in range(1, n + 1)]

    def _check_gen(self, g):
        if g.kind != "T" or len(g.index) != 2:
            raise UnknownGenerator("%s is not a matrix coordinate generator" % g)
        if not (1 <= g.index[0] <= self.dim and 1 <= g.index[1] <= self.dim):
            raise UnknownGenerator("%s outside the %d x %d family" % (g, self.dim, self.dim))

    def coproduct_word(self, word) -> PairPoly:
        out = PairPoly.unit(self.ctx)
        for g in word:
            self._check_gen(g)
            i, j = g.index
            s = PairPoly.zero(self.ctx)
            for k in range(1, self.dim + 1):
                s = s + PairPoly.tensor(
                    NCPoly.gen(self.ctx, T(i, k, g.label)),
                    NCPoly.gen(self.ctx, T(k, j, g.label)),
                )
            out = out * s
        return out

    def coproduct(self, x: NCPoly) -> PairPoly:
        out = PairPoly.zero(self.ctx)
        for w, c in x.terms.items():
            out = out + self.coproduct_word(w).scale(c)
        return out

    def counit_word(self, word):
        c = self.ctx.one
        for g in word:
            self._check_gen(g)
            if g.index[0] != g.index[1]:
                return self.ctx.zero
        return c

    def counit(self, x: NCPoly):
        acc = self.ctx.zero
        for w, c in x.terms.items():
            acc = acc + c * self.counit_word(w)
        return acc


class LinearForm:
    """Scalar form on pairs, determined by its generator-pair table.

    rule is one of "bicharacter" (split long words by the two laws),
    "composite" (convolution of the two forms in parts), or "counit"
    (the convolution unit, f = counit x counit).  Word-pair values are
    memoized; the cache is shared safely between threads.
    """

    def __init__(self, pres: Presentation, base: Tensor, rule="bicharacter", parts=None):
        if rule not in ("bicharacter", "composite", "counit"):
            raise ValueError("unknown extension rule %r" % rule)
        if rule == "composite" and (parts is None or len(parts) != 2):
            raise ValueError("composite form needs exactly two parts")
        self.pres = pres
        self.base = base
        self.rule = rule
        self.parts = parts
        self._memo = {}
        self._lock = threading.Lock()

    def on_generators(self, i, j, k, l):
        return self.base.get(i, j, k, l)

    def word_value(self, u, v):
        """f(u (x) v) for words u, v."""
        key = (u, v)
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None:
            return hit
        val = self._word_value(u, v)
        with self._lock:
            self._memo[key] = val
        return val

    def _word_value(self, u, v):
        pres = self.pres
        if not u:
            return pres.counit_word(v)
        if not v:
            return pres.counit_word(u)
        if self.rule == "counit":
            return pres.counit_word(u) * pres.counit_word(v)
        if self.rule == "composite":
            f, g = self.parts
            acc = pres.ctx.zero
            du = pres.coproduct_word(u)
            dv = pres.coproduct_word(v)
            for (u1, u2), cu in du.terms.items():
                for (v1, v2), cv in dv.terms.items():
                    acc = acc + cu * cv * f.word_value(u1, v1) * g.word_value(u2, v2)
            return acc
        # bicharacter splitting
        if len(u) == 1 and len(v) == 1:
            gu, gv = u[0], v[0]
            pres._check_gen(gu)
            pres._check_gen(gv)
            return self.base.get(gu.index[0], gv.index[0], gu.index[1], gv.index[1])
        if len(u) > 1:
            head, rest = (u[0],), u[1:]
            acc = pres.ctx.zero
            for (v1, v2), c in pres.coproduct_word(v).terms.items():
                acc = acc + c * self.word_value(head, v1) * self.word_value(rest, v2)
            return acc
        # len(u) == 1, len(v) > 1: f(x (x) yz) = sum f(x1 (x) z) f(x2 (x) y)
        head, rest = (v[0],), v[1:]
        acc = pres.ctx.zero
        for (u1, u2), c in pres.coproduct_word(u).terms.items():
            acc = acc + c * self.word_value(u1, rest) * self.word_value(u2, head)
        return acc


def form_from_tensor(pres, base, rule="bicharacter", parts=None) -> LinearForm:
    return LinearForm(pres, base, rule, parts)


def braid_form(pres, braid: Tensor) -> LinearForm:
    """The form whose generator-pair table is the R-matrix of a braid tensor."""
    from .tensors import swap_lower

    return LinearForm(pres, swap_lower(braid))


def epsilon_form(pres) -> LinearForm:
    return LinearForm(pres, identity4(pres.ctx, pres.dim), rule="counit")


def character_pair_form(pres, rho: Tensor) -> LinearForm:
    """The form  counit (x) rho  for a 2-index character table rho."""
    n = pres.dim
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for l in range(1, n + 1):
                c = rho.get(j, l)
                if not c.is_zero():
                    entries[(i, j, i, l)] = c
    return LinearForm(pres, Tensor(pres.ctx, n, 2, 2, entries))


def bichar_eval(f: LinearForm, x: NCPoly, y: NCPoly):
    """f(x (x) y) by the bicharacter splitting laws, bilinearly in x and y."""
    if f.rule != "bicharacter":
        raise NonBicharacter("form has extension rule %r" % f.rule)
    acc = f.pres.ctx.zero
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            acc = acc + cu * cv * f.word_value(u, v)
    return acc


def form_eval(f: LinearForm, x: NCPoly, y: NCPoly):
    """f(x (x) y) under whatever extension rule f declares."""
    acc = f.pres.ctx.zero
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            acc = acc + cu * cv * f.word_value(u, v)
    return acc


def convolve(f: LinearForm, g: LinearForm) -> LinearForm:
    """(f*g)(x (x) y) = sum f(x1 (x) y1) g(x2 (x) y2).

    On generator pairs this is composition of the two tables.
    """
    if f.pres != g.pres:
        raise PresentationMismatch("forms live on different presentations")
    return LinearForm(f.pres, compose(f.base, g.base), rule="composite", parts=(f, g))


def form_inverse(f: LinearForm) -> LinearForm:
    """Convolution inverse, materialized through the inverse table."""
    try:
        inv = invert4(f.base)
    except NotInvertible:
        raise NotInvertible("form has no convolution inverse on generator pairs")
    return LinearForm(f.pres, inv, rule=f.rule if f.rule == "bicharacter" else "bicharacter")


def cocycle_check(phi: LinearForm):
    """Test the 2-cocycle identity for phi on all generator triples.

    Compares  sum_{a,b} phi(T_i^a (x) T_j^b) phi(T_a^r T_b^s (x) T_k^t)
    with      sum_{b,c} phi(T_j^b (x) T_k^c) phi(T_i^r (x) T_b^s T_c^t);
    the two sides are the convolution products phi_12 * (phi o (m (x) id))
    and phi_23 * (phi o (id (x) m)) evaluated on T_i^r (x) T_j^s (x) T_k^t.
    """
    pres = phi.pres
    ctx = pres.ctx
    n = pres.dim
    invert4(phi.base)  # NotInvertible when phi cannot be convolution-inverted
    residuals = {}
    rng = range(1, n + 1)
    for i in rng:
     for j in rng:
      for k in rng:
       for r in rng:
        for s in rng:
         for t in rng:
            lhs = ctx.zero
            for a in rng:
                for b in rng:
                    c1 = phi.base.get(i, j, a, b)
                    if c1.is_zero():
                        continue
                    lhs = lhs + c1 * phi.word_value((T(a, r), T(b, s)), (T(k, t),))
            rhs = ctx.zero
            for b in rng:
                for c in rng:
                    c1 = phi.base.get(j, k, b, c)
                    if c1.is_zero():
                        continue
                    rhs = rhs + c1 * phi.word_value((T(i, r),), (T(b, s), T(c, t)))
            d = lhs - rhs
            if not d.is_zero():
                residuals[(i, j, k, r, s, t)] = d
    return {"holds": not residuals, "residuals": residuals}


def twist_R(R: LinearForm, phi: LinearForm) -> Tensor:
    """Generator-pair table of the twisted form  phibar_21 * R * phi."""
    if R.pres != phi.pres:
        raise PresentationMismatch("forms live on different presentations")
    n = R.pres.dim
    inv = invert4(phi.base)
    swapped = {}
    for (i, j, k, l), c in inv.entries.items():
        swapped[(j, i, l, k)] = c
    phibar21 = Tensor(R.pres.ctx, n, 2, 2, swapped)
    return compose(phibar21, compose(R.base, phi.base))


def tilde_images(ctx, theta: Tensor, label=None):
    """Generator images of the twisting endomorphism: T_i^j |-> theta_im^jn T_n^m."""
    n = theta.dim
    images = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = NCPoly.zero(ctx)
            for m in range(1, n + 1):
                for nn in range(1, n + 1):
                    c = theta.get(i, m, j, nn)
                    if not c.is_zero():
                        acc = acc + NCPoly.term(ctx, (T(nn, m, label),), c)
            images[T(i, j, label)] = acc
    return images


def tilde_apply(ctx, theta: Tensor, x: NCPoly, label=None) -> NCPoly:
    return apply_hom(x, tilde_images(ctx, theta, label))


def theta_product(theta: Tensor, x: NCPoly, y: NCPoly, check=True, label=None) -> NCPoly:
    """The deformed product: each left factor pushes one twist onto the right.

    On homogeneous x of degree d the value is x * twist^d(y); on words this
    makes the j-th factor of a left-nested product carry j-1 twists.
    """
    if check:
        from .corep import validate_theta  # deferred, corep builds on this module
        from .errors import InvalidTheta

        if not validate_theta(theta)["valid"]:
            raise InvalidTheta("deformed product needs a valid twisting tensor")
    ctx = x.ctx
    images = tilde_images(ctx, theta, label)
    out = NCPoly.zero(ctx)
    by_degree = {}
    for w, c in x.terms.items():
        by_degree.setdefault(len(w), []).append((w, c))
    for d, terms in by_degree.items():
        ty = y
        for _ in range(d):
            ty = apply_hom(ty, images)
        part = NCPoly.zero(ctx)
        for w, c in terms:
            part = part + NCPoly.term(ctx, w, c)
        out = out + part * ty
    return out


def twisted_product_relations(pres, R: LinearForm, theta: Tensor, check=True):
    """Relations forcing the opposite deformed product to agree with R-conjugation.

    For each generator pair the element

        m_theta(T_j^l (x) T_i^k)
          - sum_{a,b,c,d} R(T_i^a (x) T_j^c) m_theta(T_a^b (x) T_c^d) Rbar(T_b^k (x) T_d^l)

    is returned; their span is the defining ideal of the twisted algebra.
    """
    from .freealg import RelationSet

    ctx = pres.ctx
    n = pres.dim
    rbar = invert4(R.base)
    images = tilde_images(ctx, theta)
    if check:
        from .corep import validate_theta
        from .errors import InvalidTheta

        if not validate_theta(theta)["valid"]:
            raise InvalidTheta("deformed product needs a valid twisting tensor")

    def mtheta(g1, g2):
        return NCPoly.gen(ctx, g1) * apply_hom(NCPoly.gen(ctx, g2), images)

    rng = range(1, n + 1)
    polys = []
    for i in rng:
     for j in rng:
      for k in rng:
       for l in rng:
        acc = mtheta(T(j, l), T(i, k))
        for a in rng:
         for b in rng:
          for c in rng:
           for d in rng:
            r1 = R.base.get(i, j, a, c)
            if r1.is_zero():
                continue
            r2 = rbar.get(b, d, k, l)
            if r2.is_zero():
                continue
            acc = acc - r1 * r2 * mtheta(T(a, b), T(c, d))
        if not acc.is_zero():
            polys.append(acc)
    return RelationSet(ctx, pres.family(), polys)
