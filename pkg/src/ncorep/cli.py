"""Command-line front end: algebra definition files in, verification reports out.

An input file is a flat sectioned text format.  [algebra] declares the
dimension, the parameter names and optional spectral labels; [B] and
[Bprime] list sparse 4-index exchange tensor entries; [theta] carries
either a character table (rho lines) or raw 4-index entries; [space]
describes an odd coordinate space by relation coefficients; [commands]
may name a default suite.  Entry lines look like

    1 2 2 1 = "q"

with every expression string quoted and read over the declared
parameters.  A # starts a comment.  Reports go to stdout as text and,
with --json PATH, to a file in a canonical form whose bytes depend only
on the input and flags.  Exit status: 0 when every check passed, 1 when
at least one failed, 2 for unusable input.
"""

import argparse
import math
import os
import re
import sys
from importlib import resources

from .bialg import (
    Presentation,
    braid_form,
    character_pair_form,
    cocycle_check,
    twist_R,
    twisted_product_relations,
)
from .corep import (
    QuadraticSpace,
    ThetaMap,
    build_M,
    check_grouplike,
    coideal_check,
    factorized_theta,
    generate_ideal,
    homomorphism_check,
)
from .errors import (
    CommutationUnverified,
    InputFormat,
    NCorepError,
    NotGroupCoefficient,
    NotInvertible,
    ZeroLeadingCoefficient,
)
from .freealg import NCPoly, T, e, row_space_compare, xi
from .integrable import SpectralFamily
from .qplane import (
    QPlaneContext,
    _pair_reduction_factor,
    derive_relations,
    determinant,
    relation_report,
    verify_D_commutations,
    verify_antipode,
    verify_gamma_action_table,
)
from .report import Report, passfail
from .rewrite import (
    TermOrder,
    confluence_check,
    count_irreducible,
    matrix_order,
    normal_form,
    orient,
)
from .scalars import Context
from .tensors import Tensor, invert2, swap_lower, ybe_residual

_SECTIONS = ("algebra", "B", "Bprime", "theta", "space", "commands")
_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_ORDER_TOKEN = re.compile(r"^T\[(\d+),(\d+)\]$")


class AlgebraFile:
    """Parsed and structurally validated algebra definition."""

    def __init__(self, path):
        self.path = str(path)
        self.dim = None
        self.params = None
        self.labels = ()
        self.ctx = None
        self.B = None
        self.Bprime = None
        self.rho = None
        self.theta_entries = None
        self.parity = "grassmann"
        self.space_relations = []
        self.has_space = False
        self.default = ()


def _strip_comment(raw, lineno):
    out = []
    quoted = False
    for ch in raw:
        if ch == '"':
            quoted = not quoted
        if ch == "#" and not quoted:
            break
        out.append(ch)
    if quoted:
        raise InputFormat("unterminated expression string", lineno)
    return "".join(out).strip()


def _quoted(value, lineno):
    if len(value) >= 2 and value[0] == '"' and value[-1] == '"' and '"' not in value[1:-1]:
        return value[1:-1]
    raise InputFormat("expected a quoted expression string", lineno)


def _indices(toks, count, dim, lineno):
    if len(toks) != count:
        raise InputFormat("expected %d indices before `=`" % count, lineno)
    out = []
    for t in toks:
        if not t.isdigit():
            raise InputFormat("index %r is not a positive integer" % t, lineno)
        v = int(t)
        if not 1 <= v <= dim:
            raise InputFormat("index %d outside dimension %d" % (v, dim), lineno)
        out.append(v)
    return tuple(out)


def _expr(ctx, value, lineno):
    s = _quoted(value, lineno)
    try:
        return ctx.parse(s)
    except NCorepError as err:
        raise InputFormat("bad expression %r: %s" % (s, err), lineno)


def _names(value, lineno, what):
    toks = value.split()
    if not toks:
        raise InputFormat("empty %s list" % what, lineno)
    for t in toks:
        if not _NAME.match(t):
            raise InputFormat("bad %s name %r" % (what, t), lineno)
    if len(set(toks)) != len(toks):
        raise InputFormat("duplicate %s name" % what, lineno)
    return toks


def parse_algebra_file(path):
    """Read one definition file; the first problem raises InputFormat with its line."""
    if hasattr(path, "read_text"):
        text = path.read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    af = AlgebraFile(path)
    rows = []
    section = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw, lineno)
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise InputFormat("malformed section header", lineno)
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise InputFormat("unknown section [%s]" % section, lineno)
            if section in seen:
                raise InputFormat("section [%s] appears twice" % section, lineno)
            seen.add(section)
            continue
        if section is None:
            raise InputFormat("content before the first section header", lineno)
        left, eq, right = line.partition("=")
        if not eq:
            raise InputFormat("expected `key = value`", lineno)
        rows.append((lineno, section, left.split(), right.strip()))

    for lineno, section, keys, value in rows:
        if section != "algebra":
            continue
        if len(keys) != 1:
            raise InputFormat("expected a single field name in [algebra]", lineno)
        key = keys[0]
        if key == "dim":
            if not value.isdigit() or int(value) < 1:
                raise InputFormat("dim must be a positive integer", lineno)
            if af.dim is not None:
                raise InputFormat("dim given twice", lineno)
            af.dim = int(value)
        elif key == "params":
            if af.params is not None:
                raise InputFormat("params given twice", lineno)
            af.params = _names(value, lineno, "parameter")
        elif key == "labels":
            labels = _names(value, lineno, "label")
            if len(labels) < 2:
                raise InputFormat("a spectral family needs at least two labels", lineno)
            af.labels = tuple(labels)
        else:
            raise InputFormat("unknown [algebra] field %r" % key, lineno)
    if af.dim is None:
        raise InputFormat("[algebra] must declare dim")
    if af.params is None:
        raise InputFormat("[algebra] must declare params")
    af.ctx = Context(af.params)

    tens = {"B": {}, "Bprime": {}}
    rho = {}
    thent = {}
    space_rows = {}
    for lineno, section, keys, value in rows:
        if section in ("B", "Bprime"):
            idx = _indices(keys, 4, af.dim, lineno)
            if idx in tens[section]:
                raise InputFormat("duplicate [%s] entry %s" % (section, (idx,)), lineno)
            tens[section][idx] = _expr(af.ctx, value, lineno)
        elif section == "theta":
            kind = keys[0] if keys else ""
            if kind == "rho":
                if thent:
                    raise InputFormat(
                        "[theta] mixes a character table with raw entries", lineno
                    )
                idx = _indices(keys[1:], 2, af.dim, lineno)
                if idx in rho:
                    raise InputFormat("duplicate rho entry", lineno)
                rho[idx] = _expr(af.ctx, value, lineno)
            elif kind == "entry":
                if rho:
                    raise InputFormat(
                        "[theta] mixes a character table with raw entries", lineno
                    )
                idx = _indices(keys[1:], 4, af.dim, lineno)
                if idx in thent:
                    raise InputFormat("duplicate theta entry", lineno)
                thent[idx] = _expr(af.ctx, value, lineno)
            else:
                raise InputFormat("[theta] lines start with `rho` or `entry`", lineno)
        elif section == "space":
            af.has_space = True
            if keys == ["parity"]:
                if value not in ("grassmann", "bosonic"):
                    raise InputFormat("parity is grassmann or bosonic", lineno)
                af.parity = value
            elif keys and keys[0] == "rel":
                # first token numbers the relation, the next two index coordinates
                if len(keys) != 4:
                    raise InputFormat("expected `rel k i j = \"expr\"`", lineno)
                if not keys[1].isdigit():
                    raise InputFormat("relation number %r is not an integer" % keys[1], lineno)
                k = int(keys[1])
                ij = _indices(keys[2:], 2, af.dim, lineno)
                slot = space_rows.setdefault(k, {})
                if ij in slot:
                    raise InputFormat("duplicate coefficient in relation %d" % k, lineno)
                slot[ij] = _expr(af.ctx, value, lineno)
            else:
                raise InputFormat("[space] lines are `parity = ...` or `rel k i j = ...`", lineno)
        elif section == "commands":
            if keys != ["default"]:
                raise InputFormat("the only [commands] field is `default`", lineno)
            names = value.split()
            for n in names:
                if n not in COMMANDS:
                    raise InputFormat("unknown command %r in default suite" % n, lineno)
            af.default = tuple(names)

    if not tens["B"]:
        raise InputFormat("missing or empty [B] section")
    if not rho and not thent:
        raise InputFormat("[theta] must give a character table or entries")
    af.B = Tensor(af.ctx, af.dim, 2, 2, _dropzeros(tens["B"]))
    if tens["Bprime"]:
        af.Bprime = Tensor(af.ctx, af.dim, 2, 2, _dropzeros(tens["Bprime"]))
    if rho:
        af.rho = Tensor(af.ctx, af.dim, 1, 1, _dropzeros(rho))
    else:
        af.theta_entries = Tensor(af.ctx, af.dim, 2, 2, _dropzeros(thent))
    mk = xi if af.parity == "grassmann" else e
    for k in sorted(space_rows):
        p = NCPoly.zero(af.ctx)
        for (i, j), c in sorted(space_rows[k].items()):
            p = p + NCPoly.term(af.ctx, (mk(i), mk(j)), c)
        af.space_relations.append(p)
    return af


def _dropzeros(entries):
    return {k: v for k, v in entries.items() if not v.is_zero()}


class Workspace:
    """One configuration with the requested substitutions already applied."""

    def __init__(self, af, bindings=()):
        self.af = af
        self.ctx = af.ctx
        self.dim = af.dim
        self.labels = af.labels
        self.order = None
        B = af.B
        Bp = af.Bprime
        rels = list(af.space_relations)
        if af.rho is not None:
            try:
                th = factorized_theta(af.ctx, af.rho)
            except NotInvertible:
                raise InputFormat("[theta] character table is not invertible")
        else:
            th = ThetaMap(af.theta_entries)
        # applied one at a time so that order-sensitive limits behave exactly
        # like the library's own sequential substitution
        for b in bindings:
            B = B.substitute([b])
            if Bp is not None:
                Bp = Bp.substitute([b])
            t2 = th.tensor.substitute([b])
            if th.rho is not None:
                rho2 = th.rho.substitute([b])
                th = ThetaMap(t2, rho=rho2, rhobar=invert2(rho2))
            else:
                th = ThetaMap(t2)
            rels = [r.substitute([b]) for r in rels]
        self.B = B
        self.Bprime = Bp
        self.theta = th
        self.space = None
        if af.has_space:
            self.space = QuadraticSpace(af.ctx, af.dim, parity=af.parity, relations=rels)

    def term_order(self):
        return self.order or matrix_order(self.ctx, self.dim)

    def qp(self):
        bos = QuadraticSpace(self.ctx, self.dim, braid=self.B)
        return QPlaneContext(self.ctx, self.B, self.Bprime, self.theta, bos, self.space)


def _need(cond, message):
    if not cond:
        raise InputFormat(message)


def _theta_gate(rep, th):
    res = th.validate()
    if res["valid"]:
        return True
    rep.add(
        "twist-valid",
        "structural identities of the twisting tensor",
        "fail",
        residuals=["%s at %s: %s" % v for v in res["violations"][:6]],
        artifacts={"violations": len(res["violations"])},
    )
    return False


def _nonzero(tensor):
    return sum(1 for v in tensor.entries.values() if not v.is_zero())


def _word(w):
    return " ".join(str(g) for g in w)


def _rule_strings(rs):
    return ["%s -> %s" % (_word(lhs), rhs) for lhs, rhs in rs.rule_list()]


def cmd_validate_theta(ws, ns):
    rep = Report("twist validity")
    res = ws.theta.validate()
    rep.add(
        "twist-valid",
        "structural identities of the twisting tensor",
        passfail(res["valid"]),
        residuals=["%s at %s: %s" % v for v in res["violations"][:6]],
        artifacts={"violations": len(res["violations"])},
    )
    grp = check_grouplike(build_M(ws.theta, check=False))
    rep.add(
        "matrix-grouplike",
        "coproduct splits the matrix entrywise and the counit gives the identity",
        passfail(grp),
    )
    rep.add(
        "validity-matches-grouplike",
        "the tensor identities and the matrix criterion agree",
        passfail(res["valid"] == grp),
    )
    return rep


def cmd_ybe(ws, ns):
    rep = Report("exchange braiding")
    r = ybe_residual(ws.B)
    rep.add(
        "braid-identity",
        "degree-3 exchange identity for [B]",
        passfail(r.is_zero()),
        artifacts={"nonzero": _nonzero(r)},
    )
    if ws.Bprime is not None:
        r2 = ybe_residual(ws.Bprime)
        rep.add(
            "alternative-tensor",
            "whether [Bprime] satisfies the same identity (reported, not gated)",
            "info",
            artifacts={"braiding": r2.is_zero(), "nonzero": _nonzero(r2)},
        )
    return rep


def cmd_relations(ws, ns):
    rep = Report("product relations")
    if not _theta_gate(rep, ws.theta):
        return rep
    M = build_M(ws.theta)
    ideal = generate_ideal(ws.B, M)
    rep.add(
        "coideal",
        "the relation ideal regenerates under the coproduct",
        passfail(coideal_check(ws.B, M)),
    )
    bos = QuadraticSpace(ws.ctx, ws.dim, braid=ws.B)
    rep.add(
        "comodule-algebra",
        "coacting on the coordinate relations stays inside the ideal",
        passfail(homomorphism_check(bos, ws.theta, ideal)),
    )
    rep.add(
        "rank",
        "independent quadratic relations",
        "info",
        artifacts={"rank": ideal.rank(), "entries": len(ideal)},
    )
    try:
        rs = orient(ideal, ws.term_order())
        rep.add(
            "oriented-rules",
            "reduced rewriting presentation of the ideal",
            "info",
            artifacts={"rules": _rule_strings(rs)},
        )
    except ZeroLeadingCoefficient:
        rep.add("oriented-rules", "no monic orientation in this generator order", "info")
    return rep


def cmd_compare_ideals(ws, ns):
    _need(ws.dim == 2, "compare-ideals needs a 2-dimensional algebra file")
    rep = Report("ideal comparison")
    if not _theta_gate(rep, ws.theta):
        return rep
    return relation_report(ws.qp())


def cmd_det(ws, ns):
    _need(ws.dim == 2, "det needs a 2-dimensional algebra file")
    _need(ws.space is not None, "det needs a [space] section")
    rep = Report("determinant coefficient")
    if not _theta_gate(rep, ws.theta):
        return rep
    qp = ws.qp()
    try:
        det = determinant(qp)
    except NotGroupCoefficient as err:
        rep.add(
            "group-coefficient",
            "coaction of the top form closes on the top word",
            "fail",
            residuals=[str(err)],
        )
        return rep
    rep.add(
        "group-coefficient",
        "coaction of the top form closes on the top word",
        "pass",
        artifacts={"determinant": det.poly},
    )
    f = _pair_reduction_factor(ws.space, 2, 1)
    ok = f is not None and det.poly == qp.M.get(1, 2, 1, 2) + f * qp.M.get(1, 2, 2, 1)
    rep.add(
        "matrix-form",
        "coefficient equals the exchange-weighted matrix pair",
        passfail(ok),
    )
    try:
        rs = orient(derive_relations(qp), ws.term_order())
        rep.add(
            "reduced-form",
            "normal form of the coefficient in the oriented system",
            "info",
            artifacts={"reduced": normal_form(det.poly, rs)},
        )
    except ZeroLeadingCoefficient:
        pass
    return rep


def cmd_normal_form(ws, ns):
    rep = Report("rewriting soundness")
    if not _theta_gate(rep, ws.theta):
        return rep
    ideal = generate_ideal(ws.B, build_M(ws.theta))
    rs = orient(ideal, ws.term_order())
    rep.add(
        "oriented-rules",
        "reduced rewriting presentation of the ideal",
        "info",
        artifacts={"rules": _rule_strings(rs)},
    )
    bad = []
    for p in ideal:
        nf = normal_form(p, rs)
        if not nf.is_zero():
            bad.append(str(nf))
    rep.add(
        "generators-reduce",
        "every defining relation reduces to zero",
        passfail(not bad),
        residuals=bad[:6],
    )
    return rep


def cmd_confluence(ws, ns):
    rep = Report("overlap resolution")
    if not _theta_gate(rep, ws.theta):
        return rep
    rs = orient(generate_ideal(ws.B, build_M(ws.theta)), ws.term_order())
    out = confluence_check(rs, maxdeg=ns.max_degree)
    rep.add(
        "confluent",
        "every overlap up to degree %d resolves" % ns.max_degree,
        passfail(out["confluent"]),
        residuals=["%s: %s" % (_word(w), p) for w, p in out["ambiguities"][:8]],
        artifacts={"rules": len(rs), "ambiguities": len(out["ambiguities"])},
    )
    return rep


def cmd_pbw_count(ws, ns):
    rep = Report("monomial growth")
    if not _theta_gate(rep, ws.theta):
        return rep
    rs = orient(generate_ideal(ws.B, build_M(ws.theta)), ws.term_order())
    counts = [count_irreducible(rs, d) for d in range(ns.max_degree + 1)]
    n2 = ws.dim * ws.dim
    expected = [math.comb(n2 + d - 1, d) for d in range(ns.max_degree + 1)]
    rep.add(
        "flat-growth",
        "irreducible monomial counts match the commutative series",
        passfail(counts == expected),
        artifacts={"counts": counts, "expected": expected},
    )
    return rep


def cmd_d_commutations(ws, ns):
    _need(ws.dim == 2, "d-commutations needs a 2-dimensional algebra file")
    _need(ws.space is not None, "d-commutations needs a [space] section")
    rep = Report("determinant commutations")
    if not _theta_gate(rep, ws.theta):
        return rep
    try:
        return verify_D_commutations(ws.qp())
    except NotGroupCoefficient as err:
        rep.add(
            "group-coefficient",
            "coaction of the top form closes on the top word",
            "fail",
            residuals=[str(err)],
        )
        return rep


def cmd_antipode(ws, ns):
    _need(ws.dim == 2, "antipode needs a 2-dimensional algebra file")
    _need(ws.space is not None, "antipode needs a [space] section")
    rep = Report("antipode identities")
    if not _theta_gate(rep, ws.theta):
        return rep
    try:
        return verify_antipode(ws.qp())
    except (CommutationUnverified, NotGroupCoefficient) as err:
        rep.add(
            "extended-system",
            "determinant adjunction must verify its commutation claims",
            "fail",
            residuals=[str(err)],
        )
        return rep


def cmd_gamma_table(ws, ns):
    _need(ws.dim == 2, "gamma-table needs a 2-dimensional algebra file")
    rep = Report("exchange action table")
    if not _theta_gate(rep, ws.theta):
        return rep
    return verify_gamma_action_table(ws.qp())


def cmd_cocycle(ws, ns):
    _need(ws.theta.rho is not None, "cocycle needs a character table in [theta]")
    pres = Presentation(ws.ctx, ws.dim)
    out = cocycle_check(character_pair_form(pres, ws.theta.rho))
    rep = Report("cocycle identity")
    rep.add(
        "cocycle-identity",
        "the induced pair form satisfies the twisting identity",
        passfail(out["holds"]),
        residuals=["%s: %s" % kv for kv in sorted(out["residuals"].items())][:8],
    )
    return rep


def cmd_twist_r(ws, ns):
    _need(ws.theta.rho is not None, "twist-r needs a character table in [theta]")
    rep = Report("twisted exchange")
    pres = Presentation(ws.ctx, ws.dim)
    phi = character_pair_form(pres, ws.theta.rho)
    out = cocycle_check(phi)
    rep.add(
        "cocycle-identity",
        "the induced pair form satisfies the twisting identity",
        passfail(out["holds"]),
        residuals=["%s: %s" % kv for kv in sorted(out["residuals"].items())][:8],
    )
    R = braid_form(pres, ws.B)
    tw = twist_R(R, phi)
    res = ybe_residual(swap_lower(tw))
    rep.add(
        "twisted-braiding",
        "the conjugated exchange tensor satisfies the degree-3 identity",
        passfail(res.is_zero()),
        artifacts={"nonzero": _nonzero(res)},
    )
    if not _theta_gate(rep, ws.theta):
        return rep
    rel = twisted_product_relations(pres, R, ws.theta.tensor)
    ideal = generate_ideal(ws.B, build_M(ws.theta))
    cmp = row_space_compare(rel, ideal)
    rep.add(
        "product-relations",
        "opposite-product relations span the commutation ideal",
        passfail(cmp.verdict == "equal"),
        artifacts={"verdict": cmp.verdict, "rank": cmp.rank_a},
    )
    return rep


def cmd_integrability(ws, ns):
    _need(len(ws.labels) >= 2, "integrability needs spectral labels in [algebra]")
    rep = Report("spectral integrability")
    if not _theta_gate(rep, ws.theta):
        return rep
    fam = SpectralFamily(ws.ctx, ws.labels, ws.B, ws.theta)
    lam, mu = ws.labels[0], ws.labels[1]
    _merge(rep, "first", fam.first_report(lam, mu))
    _merge(rep, "second", fam.second_report(lam, mu))
    return rep


def _merge(rep, prefix, sub):
    for it in sub.items:
        d = dict(it)
        d["name"] = "%s.%s" % (prefix, it["name"])
        rep.add(d)


SECTION_ORDER = (
    "validate-theta",
    "ybe",
    "relations",
    "compare-ideals",
    "det",
    "normal-form",
    "confluence",
    "pbw-count",
    "d-commutations",
    "antipode",
    "gamma-table",
    "cocycle",
    "twist-r",
    "integrability",
)


def _applicable(ws, name):
    if name in ("compare-ideals", "gamma-table"):
        return ws.dim == 2
    if name in ("det", "d-commutations", "antipode"):
        return ws.dim == 2 and ws.space is not None
    if name in ("cocycle", "twist-r"):
        return ws.theta.rho is not None
    if name == "integrability":
        return len(ws.labels) >= 2
    return True


def cmd_full_report(ws, ns):
    rep = Report("full verification suite")
    for name in SECTION_ORDER:
        if _applicable(ws, name):
            _merge(rep, name, COMMANDS[name](ws, ns))
    return rep


COMMANDS = {
    "validate-theta": cmd_validate_theta,
    "ybe": cmd_ybe,
    "relations": cmd_relations,
    "compare-ideals": cmd_compare_ideals,
    "det": cmd_det,
    "normal-form": cmd_normal_form,
    "confluence": cmd_confluence,
    "pbw-count": cmd_pbw_count,
    "d-commutations": cmd_d_commutations,
    "antipode": cmd_antipode,
    "gamma-table": cmd_gamma_table,
    "cocycle": cmd_cocycle,
    "twist-r": cmd_twist_r,
    "integrability": cmd_integrability,
    "full-report": cmd_full_report,
}


def _run_suite(ws, ns, names):
    if len(names) == 1:
        return COMMANDS[names[0]](ws, ns)
    rep = Report("default suite")
    for name in names:
        _merge(rep, name, COMMANDS[name](ws, ns))
    return rep


def _parse_substs(af, raw):
    out = []
    for item in raw:
        name, eq, expr = item.partition("=")
        name = name.strip()
        expr = expr.strip()
        if not eq or not name or not expr:
            raise InputFormat("--subst expects NAME=EXPR, got %r" % item)
        if name not in af.params:
            raise InputFormat("--subst names unknown parameter %r" % name)
        out.append((name, expr))
    return out


def _parse_order(text, af):
    gens = []
    for tok in text.split("<"):
        m = _ORDER_TOKEN.match(tok.strip())
        if not m:
            raise InputFormat("--order tokens look like T[i,j], got %r" % tok.strip())
        i, j = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= af.dim and 1 <= j <= af.dim):
            raise InputFormat("--order index outside dimension %d" % af.dim)
        gens.append(T(i, j))
    needed = set(T(i, j) for i in range(1, af.dim + 1) for j in range(1, af.dim + 1))
    if len(gens) != len(needed) or set(gens) != needed:
        raise InputFormat("--order must list every matrix generator exactly once")
    return TermOrder(tuple(gens))


def _resolve_input(name):
    if os.path.exists(name):
        return name
    base = name if name.endswith(".alg") else name + ".alg"
    try:
        trav = resources.files(__package__).joinpath("data").joinpath(base)
        if trav.is_file():
            return trav
    except (ModuleNotFoundError, FileNotFoundError):
        pass
    raise InputFormat("no input file or shipped example named %r" % name)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ncorep",
        description="verification suites for twisted matrix coactions",
    )
    ap.add_argument(
        "command",
        nargs="?",
        choices=sorted(COMMANDS),
        metavar="command",
        help="one of: %s; omit to run the file's default suite" % ", ".join(sorted(COMMANDS)),
    )
    ap.add_argument("--input", required=True, help="algebra file path or shipped example name")
    ap.add_argument("--json", help="also write the report as canonical JSON to this path")
    ap.add_argument(
        "--subst",
        action="append",
        default=[],
        metavar="NAME=EXPR",
        help="substitute a parameter before running; repeatable, applied in order",
    )
    ap.add_argument("--order", help="generator precedence, e.g. T[1,1]<T[1,2]<T[2,1]<T[2,2]")
    ap.add_argument("--max-degree", type=int, default=3, help="overlap and counting degree bound")
    return ap


def main(argv=None):
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 2
    try:
        if ns.max_degree < 0:
            raise InputFormat("--max-degree must be nonnegative")
        af = parse_algebra_file(_resolve_input(ns.input))
        ws = Workspace(af, _parse_substs(af, ns.subst))
        if ns.order:
            ws.order = _parse_order(ns.order, af)
        if ns.command is not None:
            rep = COMMANDS[ns.command](ws, ns)
        elif af.default:
            rep = _run_suite(ws, ns, af.default)
        else:
            raise InputFormat("no command given and %s declares no default suite" % af.path)
    except NCorepError as err:
        sys.stderr.write("ncorep: %s\n" % err)
        return 2
    sys.stdout.write(rep.to_text())
    if ns.json:
        with open(ns.json, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
    return 0 if rep.verdict() == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
