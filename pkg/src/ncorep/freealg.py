"""Free associative algebra over the scalar field.

Elements are finite Scalar-combinations of words in formal generators.
Nothing here knows about relations; quotients are handled elsewhere either
by rewriting (rewrite module) or by linear algebra on homogeneous slices
(SpanBasis below, used for ideal-membership questions in degree 2 and 3).

Generators carry a kind ("T", "e", "xi", "D", "Dbar", or any custom name),
an integer index tuple, and an optional spectral label, so T[1,2](lam) and
T[1,2](mu) are distinct free generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .errors import MissingImage, MixedFamilies
from .scalars import Context, Scalar

_KIND_RANK = {"T": 0, "e": 1, "xi": 2, "D": 3, "Dbar": 4}


@dataclass(frozen=True)
class Generator:
    kind: str
    index: tuple = ()
    label: str | None = None

    def sort_key(self):
        return (_KIND_RANK.get(self.kind, 5), self.kind, self.label or "", self.index)

    def __str__(self):
        s = self.kind
        if self.index:
            s += "[%s]" % ",".join(str(i) for i in self.index)
        if self.label is not None:
            s += "(%s)" % self.label
        return s

    __repr__ = __str__


def T(i, j, label=None):
    return Generator("T", (i, j), label)


def e(i):
    return Generator("e", (i,))


def xi(i):
    return Generator("xi", (i,))


def word_key(w):
    return (len(w), tuple(g.sort_key() for g in w))


def _column_key(c):
    # default SpanBasis column order: words, pairs of words, anything nested
    if isinstance(c, Generator):
        return c.sort_key()
    if isinstance(c, tuple):
        return (len(c),) + tuple(_column_key(x) for x in c)
    return c


class NCPoly:
    """Finite Scalar-linear combination of words (tuples of Generators)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms=None):
        self.ctx = ctx
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, {(): ctx.one})

    @classmethod
    def term(cls, ctx, word, coeff=1):
        word = tuple(word)
        return cls(ctx, {word: ctx.scalar(coeff)})

    @classmethod
    def gen(cls, ctx, g: Generator):
        return cls.term(ctx, (g,))

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Maximal word length, or -1 for the zero element."""
        return max((len(w) for w in self.terms), default=-1)

    def homogeneous_part(self, d):
        return NCPoly(self.ctx, {w: c for w, c in self.terms.items() if len(w) == d})

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def coeff(self, word):
        return self.terms.get(tuple(word), self.ctx.zero)

    def support_generators(self):
        out = set()
        for w in self.terms:
            out.update(w)
        return out

    # -- arithmetic ------------------------------------------------------

    def _coerce_scalar(self, other):
        if isinstance(other, Scalar) or isinstance(other, int):
            return self.ctx.scalar(other)
        return None

    def __add__(self, other):
        if isinstance(other, NCPoly):
            out = dict(self.terms)
            for w, c in other.terms.items():
                acc = out.get(w)
                out[w] = c if acc is None else acc + c
            return NCPoly(self.ctx, out)
        s = self._coerce_scalar(other)
        if s is None:
            return NotImplemented
        return self + NCPoly.term(self.ctx, (), s)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, NCPoly):
            return self + (-other)
        s = self._coerce_scalar(other)
        if s is None:
            return NotImplemented
        return self + NCPoly.term(self.ctx, (), -s)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    acc = out.get(w)
                    out[w] = c if acc is None else acc + c
            return NCPoly(self.ctx, out)
        s = self._coerce_scalar(other)
        if s is None:
            return NotImplemented
        return NCPoly(self.ctx, {w: c * s for w, c in self.terms.items()})

    def __rmul__(self, other):
        s = self._coerce_scalar(other)
        if s is None:
            return NotImplemented
        return self * s

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise TypeError("NCPoly powers must be nonnegative integers")
        out = NCPoly.one(self.ctx)
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, f):
        return NCPoly(self.ctx, {w: f(c) for w, c in self.terms.items()})

    def substitute(self, bindings):
        return self.map_coeffs(lambda c: c.substitute(bindings))

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            if other == 0:
                return self.is_zero()
            return self.terms == {(): self.ctx.scalar(other)}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset((w, c._key()) for w, c in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "(0)"
        bits = []
        for w in sorted(self.terms, key=word_key):
            c = self.terms[w]
            body = " ".join(str(g) for g in w)
            bits.append("(%s)%s" % (c, " " + body if body else ""))
        return " + ".join(bits)

    __repr__ = __str__


def apply_hom(x: NCPoly, images: dict) -> NCPoly:
    """Extend generator images to an algebra homomorphism (identity on scalars)."""
    out = NCPoly.zero(x.ctx)
    for w, c in x.terms.items():
        acc = NCPoly.term(x.ctx, (), c)
        for g in w:
            if g not in images:
                raise MissingImage("no image for generator %s" % g)
            acc = acc * images[g]
        out = out + acc
    return out


def apply_antihom(x: NCPoly, images: dict) -> NCPoly:
    """Extend generator images to an algebra anti-homomorphism (reverses words)."""
    out = NCPoly.zero(x.ctx)
    for w, c in x.terms.items():
        acc = NCPoly.term(x.ctx, (), c)
        for g in reversed(w):
            if g not in images:
                raise MissingImage("no image for generator %s" % g)
            acc = acc * images[g]
        out = out + acc
    return out


class PairPoly:
    """Element of (free algebra) tensor (free algebra): Scalar combos of word pairs."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def unit(cls, ctx):
        return cls(ctx, {((), ()): ctx.one})

    def scale(self, c):
        return PairPoly(self.ctx, {k: v * c for k, v in self.terms.items()})

    @classmethod
    def tensor(cls, x: NCPoly, y: NCPoly):
        out = {}
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                k = (w1, w2)
                c = c1 * c2
                acc = out.get(k)
                out[k] = c if acc is None else acc + c
        return cls(x.ctx, out)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k)
            out[k] = c if acc is None else acc + c
        return PairPoly(self.ctx, out)

    def __neg__(self):
        return PairPoly(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Componentwise (tensor-algebra) product: (a⊗b)(c⊗d) = ac⊗bd."""
        if isinstance(other, PairPoly):
            out = {}
            for (a1, b1), c1 in self.terms.items():
                for (a2, b2), c2 in other.terms.items():
                    k = (a1 + a2, b1 + b2)
                    c = c1 * c2
                    acc = out.get(k)
                    out[k] = c if acc is None else acc + c
            return PairPoly(self.ctx, out)
        s = self.ctx.scalar(other)
        return PairPoly(self.ctx, {k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PairPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, c._key()) for k, c in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "(0)"
        bits = []
        for w1, w2 in sorted(self.terms, key=lambda k: (word_key(k[0]), word_key(k[1]))):
            c = self.terms[(w1, w2)]
            left = " ".join(str(g) for g in w1) or "1"
            right = " ".join(str(g) for g in w2) or "1"
            bits.append("(%s) %s (x) %s" % (c, left, right))
        return " + ".join(bits)

    __repr__ = __str__


# -- exact linear algebra over the scalar field ---------------------------


class SpanBasis:
    """Row-echelon span of sparse vectors with exact Scalar entries.

    Vectors are dicts mapping hashable column keys to Scalars.  Pivoting is
    deterministic: the pivot of a reduced vector is its minimal column under
    the supplied ordering, and rows are kept normalized (pivot entry 1), so
    ranks and membership answers never depend on insertion accidents.
    """

    def __init__(self, ctx: Context, colkey=None):
        self.ctx = ctx
        self.colkey = colkey or _column_key
        self.rows = []  # (pivot, rowdict, combo) sorted by pivot key

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, vec, combo):
        vec = dict(vec)
        for pivot, row, rcombo in self.rows:
            f = vec.get(pivot)
            if f is None or f.is_zero():
                vec.pop(pivot, None)
                continue
            for col, c in row.items():
                acc = vec.get(col, self.ctx.zero) - f * c
                if acc.is_zero():
                    vec.pop(col, None)
                else:
                    vec[col] = acc
            if combo is not None:
                for tag, c in rcombo.items():
                    acc = combo.get(tag, self.ctx.zero) + f * c
                    if acc.is_zero():
                        combo.pop(tag, None)
                    else:
                        combo[tag] = acc
        return {c: v for c, v in vec.items() if not v.is_zero()}

    def add(self, vec, tag=None):
        """Insert a vector; returns True if it enlarged the span."""
        combo = {} if tag is not None else None
        res = self._reduce(vec, combo)
        if not res:
            return False
        pivot = min(res, key=self.colkey)
        pv = res[pivot]
        row = {c: v / pv for c, v in res.items()}
        if tag is not None:
            # res = vec - sum(combo);  normalized row = res / pv
            rcombo = {t: -c / pv for t, c in combo.items()}
            acc = rcombo.get(tag, self.ctx.zero) + self.ctx.one / pv
            if not acc.is_zero():
                rcombo[tag] = acc
        else:
            rcombo = {}
        self.rows.append((pivot, row, rcombo))
        self.rows.sort(key=lambda r: self.colkey(r[0]))
        return True

    def contains(self, vec):
        return not self._reduce(vec, None)

    def express(self, vec):
        """Write vec as a combination of the tagged input vectors, or None."""
        combo = {}
        res = self._reduce(vec, combo)
        if res:
            return None
        return combo


def poly_vector(x: NCPoly):
    return dict(x.terms)


class RelationSet:
    """A list of homogeneous degree-2 elements over a fixed generator family."""

    def __init__(self, ctx: Context, family, polys):
        self.ctx = ctx
        self.family = tuple(sorted(set(family), key=lambda g: g.sort_key()))
        fam = set(self.family)
        self.polys = []
        for p in polys:
            if p.is_zero():
                continue
            for w in p.terms:
                if len(w) != 2:
                    raise ValueError("relation %s is not homogeneous of degree 2" % p)
                if not set(w) <= fam:
                    raise MixedFamilies(
                        "relation %s uses generators outside the family" % p
                    )
            self.polys.append(p)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def basis(self) -> SpanBasis:
        sb = SpanBasis(self.ctx, colkey=word_key)
        for p in self.polys:
            sb.add(poly_vector(p))
        return sb

    def rank(self):
        return self.basis().rank


@dataclass
class SpanComparison:
    verdict: str  # "equal" | "a_in_b" | "b_in_a" | "incomparable"
    rank_a: int = 0
    rank_b: int = 0
    rank_union: int = 0
    witnesses: list = dfield(default_factory=list)


def row_space_compare(a: RelationSet, b: RelationSet) -> SpanComparison:
    """Compare the Scalar row spaces spanned by two degree-2 relation sets."""
    if a.family != b.family:
        raise MixedFamilies(
            "cannot compare relation sets over different families: %s vs %s"
            % (list(map(str, a.family)), list(map(str, b.family)))
        )
    ba = a.basis()
    bb = b.basis()
    a_in_b = []
    for p in a.polys:
        if not bb.contains(poly_vector(p)):
            a_in_b.append(p)
    b_in_a = []
    for p in b.polys:
        if not ba.contains(poly_vector(p)):
            b_in_a.append(p)
    union = a.basis()
    for p in b.polys:
        union.add(poly_vector(p))
    if not a_in_b and not b_in_a:
        verdict = "equal"
        witnesses = []
    elif not a_in_b:
        verdict = "a_in_b"
        witnesses = b_in_a
    elif not b_in_a:
        verdict = "b_in_a"
        witnesses = a_in_b
    else:
        verdict = "incomparable"
        witnesses = a_in_b + b_in_a
    return SpanComparison(verdict, ba.rank, bb.rank, union.rank, witnesses)
