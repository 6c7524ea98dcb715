"""Ordered rewriting for quadratic algebra presentations.

Relations are oriented into rules lhs -> rhs where lhs is the order-maximal
word of the relation and every rhs word is strictly smaller, so repeated
replacement terminates.  Diamond-lemma overlap analysis decides confluence;
for a confluent system normal forms are unique and counting irreducible
words gives the graded dimension of the quotient algebra.

A multiplicative determinant can be adjoined afterwards as a pair of atomic
symbols (the element and its inverse) together with the commutation rules it
satisfies against the matrix generators.  The claimed commutations are
checked against the base system before anything is added.
"""

from .errors import (
    CommutationUnverified,
    OrderMissingGenerator,
    ZeroLeadingCoefficient,
)
from .freealg import Generator, NCPoly, RelationSet

DET = Generator("D", ())
DETBAR = Generator("Dbar", ())


class TermOrder:
    """Degree-first word order, ties broken left-to-right by a precedence list.

    The precedence list gives the generators from smallest to largest.  The
    induced order on words compares length first and then ranks letter by
    letter, which makes it compatible with concatenation on both sides.
    """

    def __init__(self, precedence):
        self.precedence = tuple(precedence)
        self._rank = {}
        for i, g in enumerate(self.precedence):
            if g in self._rank:
                raise ValueError("duplicate generator in precedence list: %s" % (g,))
            self._rank[g] = i

    def rank(self, g):
        r = self._rank.get(g)
        if r is None:
            raise OrderMissingGenerator("generator %s is not ordered" % (g,))
        return r

    def word_key(self, word):
        return (len(word), tuple(self.rank(g) for g in word))

    def less(self, u, v):
        return self.word_key(u) < self.word_key(v)

    def leading_word(self, poly):
        if poly.is_zero():
            return None
        return max(poly.terms, key=self.word_key)


def matrix_order(ctx, n, label=None):
    """Row-major order on an n x n matrix family, T[1,1] smallest."""
    prec = [Generator("T", (i, j), label) for i in range(1, n + 1) for j in range(1, n + 1)]
    return TermOrder(prec)


class RewriteSystem:
    """A set of oriented rules over a fixed term order.

    rules maps each left-hand word to the polynomial it rewrites to; sources
    keeps the monic relation lhs - rhs behind each rule so that reductions
    can be certified as ideal membership.  confluent is None until an
    overlap analysis has run.
    """

    def __init__(self, ctx, order, rules, sources=None):
        self.ctx = ctx
        self.order = order
        self.rules = dict(rules)
        self.sources = dict(sources) if sources else {
            lhs: NCPoly.term(ctx, lhs) - rhs for lhs, rhs in self.rules.items()
        }
        self.confluent = None
        self.determinant = None
        self._lengths = sorted({len(w) for w in self.rules}) or [2]

    def alphabet(self):
        return self.order.precedence

    def rule_list(self):
        return sorted(self.rules.items(), key=lambda kv: self.order.word_key(kv[0]))

    def __len__(self):
        return len(self.rules)


def _find_redex(rules, lengths, word, strategy):
    positions = range(len(word))
    if strategy == "rightmost":
        positions = reversed(positions)
    for i in positions:
        for ln in lengths:
            if i + ln > len(word):
                continue
            piece = word[i : i + ln]
            if piece in rules:
                return i, piece
    return None


def normal_form(poly, rs, strategy="leftmost", witness=False):
    """Reduce poly to an irreducible representative.

    With witness=True also returns the list of steps (coeff, left, lhs,
    right) whose combination sum coeff * left * source[lhs] * right equals
    poly minus the normal form.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError("unknown strategy %r" % (strategy,))
    ctx = poly.ctx
    out = NCPoly.zero(ctx)
    steps = []
    work = list(poly.terms.items())
    while work:
        word, coeff = work.pop()
        hit = _find_redex(rs.rules, rs._lengths, word, strategy)
        if hit is None:
            out = out + NCPoly.term(ctx, word, coeff)
            continue
        i, lhs = hit
        left, right = word[:i], word[i + len(lhs) :]
        if witness:
            steps.append((coeff, left, lhs, right))
        for w2, c2 in rs.rules[lhs].terms.items():
            work.append((left + w2 + right, coeff * c2))
    if witness:
        return out, steps
    return out


def combination_value(rs, steps):
    """Rebuild sum coeff * left * source * right from a reduction witness."""
    ctx = rs.ctx
    total = NCPoly.zero(ctx)
    for coeff, left, lhs, right in steps:
        mid = rs.sources[lhs]
        total = total + NCPoly.term(ctx, left, coeff) * mid * NCPoly.term(ctx, right)
    return total


def orient(relations, order):
    """Turn homogeneous relations into an inter-reduced rewrite system.

    Each relation is solved for its order-maximal word and scaled monic.
    Rules whose right side mentions a later left side are re-reduced, so no
    rule's rhs contains any lhs as a factor; duplicated relations collapse.
    Raises ZeroLeadingCoefficient on a zero relation.
    """
    if isinstance(relations, RelationSet):
        ctx = relations.ctx
        rels = list(relations.polys)
    else:
        rels = list(relations)
        if not rels:
            raise ValueError("nothing to orient")
        ctx = rels[0].ctx
    for r in rels:
        if r.is_zero():
            raise ZeroLeadingCoefficient("cannot orient the zero relation")
        if len(r.degrees()) != 1 or r.degree() < 2:
            raise ValueError("orientation needs homogeneous relations of degree >= 2")

    rs = RewriteSystem(ctx, order, {}, {})
    queue = sorted(rels, key=lambda p: order.word_key(order.leading_word(p)))
    while queue:
        p = normal_form(queue.pop(0), rs)
        if p.is_zero():
            continue
        lhs = order.leading_word(p)
        c = p.coeff(lhs)
        monic = p * c.inv()
        rhs = NCPoly.term(ctx, lhs) - monic
        rs.rules[lhs] = rhs
        rs.sources[lhs] = monic
        rs._lengths = sorted({len(w) for w in rs.rules})
        # earlier rules may now have reducible right sides
        stale = []
        for l2, r2 in list(rs.rules.items()):
            if l2 == lhs:
                continue
            hits = any(_find_redex({lhs: rhs}, [len(lhs)], w, "leftmost") for w in r2.terms)
            if hits or _find_redex({lhs: rhs}, [len(lhs)], l2, "leftmost"):
                stale.append(l2)
        for l2 in stale:
            rel2 = rs.sources.pop(l2)
            del rs.rules[l2]
            rs._lengths = sorted({len(w) for w in rs.rules}) or [2]
            queue.append(rel2)
    return rs


def confluence_check(rs, maxdeg=3):
    """Resolve every overlap of two rule left sides up to maxdeg.

    Returns {"confluent": bool, "ambiguities": [(word, difference), ...]}
    where the difference is the (nonzero) gap between the two one-step
    resolutions after full reduction.  The verdict is cached on rs.
    """
    ambiguities = []
    lhss = list(rs.rules)
    for u in lhss:
        for v in lhss:
            for k in range(1, min(len(u), len(v))):
                if u[len(u) - k :] != v[:k]:
                    continue
                word = u + v[k:]
                if len(word) > maxdeg:
                    continue
                via_u = rs.rules[u] * NCPoly.term(rs.ctx, v[k:])
                via_v = NCPoly.term(rs.ctx, u[: len(u) - k]) * rs.rules[v]
                diff = normal_form(via_u - via_v, rs)
                if not diff.is_zero():
                    ambiguities.append((word, diff))
    ambiguities.sort(key=lambda t: rs.order.word_key(t[0]))
    rs.confluent = not ambiguities
    return {"confluent": rs.confluent, "ambiguities": ambiguities}


def irreducible_words(rs, degree):
    """All degree-d words over the ordered alphabet avoiding every lhs."""
    alphabet = rs.alphabet()
    out = []

    def grow(word):
        if _find_redex(rs.rules, rs._lengths, word, "leftmost") is not None:
            return
        if len(word) == degree:
            out.append(word)
            return
        for g in alphabet:
            grow(word + (g,))

    grow(())
    return out


def count_irreducible(rs, degree):
    return len(irreducible_words(rs, degree))


def extend_with_determinant(rs, det_poly, commutations):
    """Adjoin a grouplike determinant symbol and its inverse to rs.

    commutations lists (generator, c) pairs claiming det * g = c * g * det.
    Each claim is first checked in the base system with det replaced by its
    polynomial; a failure raises CommutationUnverified.  The determinant
    symbol itself stays atomic: rules only move it across generators and
    cancel it against its inverse, while det_poly is recorded on the result
    for downstream cross-checks.
    """
    ctx = rs.ctx
    for g, c in commutations:
        gp = NCPoly.term(ctx, (g,))
        claim = det_poly * gp - gp * det_poly * c
        if not normal_form(claim, rs).is_zero():
            raise CommutationUnverified(
                "determinant does not commute with %s by factor %s" % (g, c)
            )

    order2 = TermOrder((DETBAR,) + tuple(rs.order.precedence) + (DET,))
    rules2 = dict(rs.rules)
    sources2 = dict(rs.sources)

    def put(lhs, rhs):
        rules2[lhs] = rhs
        sources2[lhs] = NCPoly.term(ctx, lhs) - rhs

    for g, c in commutations:
        put((DET, g), NCPoly.term(ctx, (g, DET), c))
        put((g, DETBAR), NCPoly.term(ctx, (DETBAR, g), c))
    put((DET, DETBAR), NCPoly.one(ctx))
    put((DETBAR, DET), NCPoly.one(ctx))

    out = RewriteSystem(ctx, order2, rules2, sources2)
    out.determinant = {
        "gen": DET,
        "inverse": DETBAR,
        "poly": det_poly,
        "commutations": list(commutations),
    }
    return out
