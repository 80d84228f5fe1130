"""Embedding of the cluster algebra into the deformed cohomology ring.

The map sends every initial variable to zeta_i * c_t(V_i) and the adjacent
variable of a gauge node k to a zeta-weighted combination of the two
truncated Chern quotients at k.  Kaehler variables are eliminated through

    Q[k]  ->  (-1)^(vminus_k - v_k) * prod_i zeta_i^(-b_ik),

with b the extended signed adjacency matrix, so every claimed identity
becomes a statement in the polynomial ring in the Chern roots, t and
Laurent zeta variables.  No image is ever inverted: identities about
fractions are cross-multiplied into polynomial form and decided by ideal
membership (zeta inverses are adjoined as explicit auxiliary variables).

Images of general cluster variables are carried as PsiImage fractions: a
polynomial numerator and a denominator recorded as a product of node
images (zeta_i * c_t(V_i))^mult, coming from the monomial denominator of
the cluster variable's Laurent normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .polycore import MultiPoly, VarTable, poly_to_text, product
from .quiver import (
    Quiver,
    _chain_order,
    build_table,
    exchange_matrices,
    validate,
)
from .presentation import (
    IdealPresentation,
    build_ideal,
    chern_poly,
    inflow_roots,
    node_chern_quotient,
    node_roots,
    outflow_roots,
    truncated_chern_quotient,
)
from .groebner import (
    Budget,
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    laurent_basis,
    laurent_contains,
    normal_form,
)
from .cluster import mutate_path, seed_from_quiver


def zeta_substitution(q: Quiver, table: VarTable) -> dict[str, MultiPoly]:
    """Kaehler-to-zeta elimination map, one signed monomial per gauge node."""
    _, btilde, rows = exchange_matrices(q)
    out = {}
    for col, n in enumerate(q.gauge_nodes):
        sign = -1 if (q.vminus(n.id) - n.dim) % 2 else 1
        exps = {
            f"zeta[{rows[i]}]": -btilde[i][col]
            for i in range(len(rows))
            if btilde[i][col]
        }
        out[f"Q[{n.id}]"] = MultiPoly.monomial(table, exps, sign)
    return out


# -- psi images --------------------------------------------------------------------


@dataclass(frozen=True)
class PsiImage:
    """Fraction num / prod_(i, m) (zeta_i * c_t(V_i))^m in the zeta ring."""

    quiver: Quiver
    table: VarTable
    equivariant: bool
    num: MultiPoly
    den: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if any(m < 0 for _, m in self.den):
            raise ValueError("denominator multiplicities must be nonnegative")

    def den_poly(self) -> MultiPoly:
        factors = []
        for nid, m in self.den:
            zc = MultiPoly.variable(self.table, f"zeta[{nid}]") * chern_poly(
                self.quiver, nid, self.table, equivariant=self.equivariant
            )
            factors.append(zc ** m)
        return product(self.table, factors)


def psi_initial(
    q: Quiver, i: str, table: VarTable, *, equivariant: bool = False
) -> PsiImage:
    num = MultiPoly.variable(table, f"zeta[{i}]") * chern_poly(
        q, i, table, equivariant=equivariant
    )
    return PsiImage(q, table, equivariant, num)


def _zeta_column_parts(
    q: Quiver, k: str, table: VarTable
) -> tuple[MultiPoly, MultiPoly]:
    """(prod_{b_ik>0} zeta_i^b_ik, prod_{b_ik<0} zeta_i^-b_ik) for node k."""
    _, btilde, rows = exchange_matrices(q)
    col = [n.id for n in q.gauge_nodes].index(k)
    pos = {f"zeta[{rows[i]}]": btilde[i][col] for i in range(len(rows)) if btilde[i][col] > 0}
    neg = {f"zeta[{rows[i]}]": -btilde[i][col] for i in range(len(rows)) if btilde[i][col] < 0}
    return MultiPoly.monomial(table, pos), MultiPoly.monomial(table, neg)


def psi_adjacent(
    q: Quiver, k: str, table: VarTable, *, equivariant: bool = False
) -> PsiImage:
    """Image of the adjacent variable of gauge node k.

    The zeta_k^-1 prefactor is cleared into the denominator, so the
    numerator is c_t(V_k) times the zeta-weighted quotient combination and
    the denominator is the single node image at k.
    """
    ct_k = chern_poly(q, k, table, equivariant=equivariant)
    dminus = truncated_chern_quotient(
        table, inflow_roots(q, k, table, equivariant), node_roots(q, table, k, equivariant)
    )
    dplus = truncated_chern_quotient(
        table, outflow_roots(q, k, table, equivariant), node_roots(q, table, k, equivariant)
    )
    pos, neg = _zeta_column_parts(q, k, table)
    num = ct_k * (pos * dminus + neg * dplus)
    return PsiImage(q, table, equivariant, num, ((k, 1),))


def psi_of_cluster_variable(
    q: Quiver,
    path: Sequence[int],
    k: int,
    table: VarTable,
    *,
    equivariant: bool = False,
) -> PsiImage:
    """Image of the cluster variable at position k after mutating along path.

    The Laurent normal form is split into a polynomial numerator and a
    monomial denominator; every variable slot is then replaced by its node
    image zeta_i * c_t(V_i).
    """
    seed, node_order = seed_from_quiver(q)
    s = mutate_path(seed, path)
    x = s.cluster[k - 1]

    slot_names = s.xnames + s.cnames
    idxs = {nm: x.table.index(nm) for nm in slot_names}
    den = []
    shift = {}
    for nm in slot_names:
        m = min((e[idxs[nm]] for e in x.terms), default=0)
        if m < 0:
            nid = node_order[slot_names.index(nm)]
            den.append((nid, -m))
            shift[nm] = -m
    cleared = x * MultiPoly.monomial(x.table, shift) if shift else x

    mix = table.extend(x.table.var(nm) for nm in slot_names)
    bindings = {}
    for pos, nm in enumerate(slot_names):
        nid = node_order[pos]
        bindings[nm] = MultiPoly.variable(mix, f"zeta[{nid}]") * chern_poly(
            q, nid, mix, equivariant=equivariant
        )
    num = cleared.convert(mix).substitute(bindings).convert(table)
    return PsiImage(q, table, equivariant, num, tuple(sorted(den)))


# -- exchange-relation verification -------------------------------------------------


def exchange_image_diff(
    q: Quiver, k: str, table: VarTable, *, equivariant: bool = False
) -> MultiPoly:
    """Unified exchange relation at gauge node k as a single difference:

        c_t(V_k) (delta^- + s Q_k delta^+) - prod_in c_t - s Q_k prod_out c_t

    with s = (-1)^(vminus_k - v_k); zero exactly when the relation holds.
    """
    if q.theta(k) <= 0:
        raise ValueError("unified exchange form implemented for theta > 0 only")
    sign = -1 if (q.vminus(k) - q.dim(k)) % 2 else 1
    qk = MultiPoly.variable(table, f"Q[{k}]")
    roots_k = node_roots(q, table, k, equivariant)
    dminus = truncated_chern_quotient(table, inflow_roots(q, k, table, equivariant), roots_k)
    dplus = truncated_chern_quotient(table, outflow_roots(q, k, table, equivariant), roots_k)
    ct_k = chern_poly(q, k, table, equivariant=equivariant)
    prod_in = product(
        table,
        (
            chern_poly(q, e.src, table, equivariant=equivariant) ** e.count
            for e in q.in_edges(k)
        ),
    )
    prod_out = product(
        table,
        (
            chern_poly(q, e.dst, table, equivariant=equivariant) ** e.count
            for e in q.out_edges(k)
        ),
    )
    return ct_k * (dminus + sign * qk * dplus) - prod_in - sign * qk * prod_out


def verify_exchange_image(
    q: Quiver,
    k: str,
    ideal: IdealPresentation,
    *,
    gb: GroebnerBasis | None = None,
    budget: Budget | None = None,
    classical_slice: bool = False,
) -> tuple[bool, str | None]:
    """Every t-coefficient of the unified exchange difference must reduce
    to zero modulo the ideal; Q -> 0 gives the classical Whitney slice."""
    table = build_table(
        q, equivariant=ideal.equivariant, with_t=True, with_q=True
    )
    gens = [g.convert(table) for g in ideal.generators]
    diff = exchange_image_diff(q, k, table, equivariant=ideal.equivariant)
    if classical_slice:
        zero_q = {
            f"Q[{n.id}]": MultiPoly.zero(table) for n in q.gauge_nodes
        }
        gens = [g.substitute(zero_q) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
        diff = diff.substitute(zero_q)
    if gb is None:
        gb = buchberger(gens, budget=budget)
    for power, coeff in diff.coefficients_in("t"):
        if not normal_form(coeff, gb, budget).is_zero():
            return False, "t^%d coefficient does not reduce: %s" % (
                power,
                poly_to_text(coeff),
            )
    return True, None


def transformation_link_check(
    q: Quiver, k: str, *, equivariant: bool = False
) -> bool:
    """Syntactic link between the cluster exchange relation and the ring
    relation: the image of x_k x'_k = prod + prod (multiplied through
    by the node image denominator) equals the positive zeta part of
    column k times the Kaehler-eliminated exchange difference."""
    table = build_table(
        q, equivariant=equivariant, with_t=True, with_q=True, with_zeta=True
    )
    _, btilde, rows = exchange_matrices(q)
    col = [n.id for n in q.gauge_nodes].index(k)

    adj = psi_adjacent(q, k, table, equivariant=equivariant)
    prod_pos = product(
        table,
        (
            psi_initial(q, rows[i], table, equivariant=equivariant).num ** btilde[i][col]
            for i in range(len(rows))
            if btilde[i][col] > 0
        ),
    )
    prod_neg = product(
        table,
        (
            psi_initial(q, rows[i], table, equivariant=equivariant).num ** -btilde[i][col]
            for i in range(len(rows))
            if btilde[i][col] < 0
        ),
    )
    cluster_image = adj.num - prod_pos - prod_neg

    diff = exchange_image_diff(q, k, table, equivariant=equivariant)
    pos, _ = _zeta_column_parts(q, k, table)
    linked = pos * diff.substitute(zeta_substitution(q, table))
    return cluster_image == linked


# -- type-A suite -------------------------------------------------------------------


@dataclass
class TypeAReport:
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.rows)

    def failures(self) -> list:
        return [r for r in self.rows if not r["ok"]]


def _substituted_ideal(
    q: Quiver,
    p_max: int,
    *,
    equivariant: bool,
    order: MonomialOrder | None,
    budget: Budget | None,
) -> tuple[GroebnerBasis, VarTable, tuple[str, ...]]:
    """Groebner data for the ideal after Kaehler-to-zeta elimination."""
    t_qz = build_table(
        q, equivariant=equivariant, with_t=True, with_q=True, with_zeta=True
    )
    t_z = build_table(q, equivariant=equivariant, with_t=True, with_zeta=True)
    sub = zeta_substitution(q, t_qz)
    gens = [
        g.substitute(sub).convert(t_z)
        for g in build_ideal(q, p_max, equivariant=equivariant, table=t_qz).generators
    ]
    znames = t_z.of_class("zeta")
    return laurent_basis(gens, znames, order, budget), t_z, znames


def verify_type_a(
    q: Quiver,
    *,
    equivariant: bool = False,
    p_max: int | None = None,
    budget: Budget | None = None,
) -> TypeAReport:
    """Closed-form images and quotient identities along a type-A chain.

    (a) For 0 <= k <= l <= n the cluster variable x[kl] (mutation path
    k+1,..,l read at position l) must map to
    zeta_k zeta_l^-1 delta_t(V_k, V_l) modulo the zeta-substituted ideal,
    cross-multiplied by the image denominator.
    (b) The two quotient identities behind that closed form are verified
    per t-coefficient against the Kaehler-side ideal, with V_(n+1) the
    zero bundle.
    """
    rep = validate(q)
    if not rep.type_a:
        raise ValueError("quiver is not a type-A chain for this suite: %s" % (rep.notes,))
    chain = _chain_order(q)
    dims = [q.dim(nid) for nid in chain]
    n = len(chain) - 1
    if p_max is None:
        p_max = max(q.dim(g.id) for g in q.gauge_nodes) + 2
    report = TypeAReport()

    # Kaehler-side ideal for the quotient identities.
    t_qt = build_table(q, equivariant=equivariant, with_t=True, with_q=True)
    gb_q = buchberger(
        [g for g in build_ideal(q, p_max, equivariant=equivariant, table=t_qt).generators],
        budget=budget,
    )

    def delta(a: int, b: int) -> MultiPoly:
        na = chain[a] if a <= n else None
        nb = chain[b] if b <= n else None
        return node_chern_quotient(q, na, nb, t_qt, equivariant=equivariant)

    def ct(a: int) -> MultiPoly:
        if a > n:
            return MultiPoly.const(t_qt, 1)
        return chern_poly(q, chain[a], t_qt, equivariant=equivariant)

    for k in range(1, n + 1):
        for l in range(k, n + 1):
            sgn = -1 if (dims[l - 1] - dims[l]) % 2 else 1
            ql = MultiPoly.variable(t_qt, f"Q[{chain[l]}]")
            id1 = ct(l) * delta(k - 1, l) - ct(k - 1) - sgn * ql * delta(k - 1, l - 1) * ct(l + 1)
            id2 = delta(k - 1, l) * delta(l, l + 1) - delta(k - 1, l + 1) - sgn * ql * delta(k - 1, l - 1)
            for tag, poly in (("quotient-product", id1), ("quotient-chain", id2)):
                witness = None
                for power, coeff in poly.coefficients_in("t"):
                    if not normal_form(coeff, gb_q, budget).is_zero():
                        witness = "t^%d: %s" % (power, poly_to_text(coeff))
                        break
                report.rows.append(
                    {"kind": tag, "k": k, "l": l, "ok": witness is None, "witness": witness}
                )

    # zeta-side closed forms.
    gb_z, t_z, znames = _substituted_ideal(
        q, p_max, equivariant=equivariant, order=None, budget=budget
    )

    def delta_z(a: int, b: int) -> MultiPoly:
        return node_chern_quotient(
            q, chain[a], chain[b], t_z, equivariant=equivariant
        )

    for k in range(0, n + 1):
        for l in range(k, n + 1):
            zk = MultiPoly.variable(t_z, f"zeta[{chain[k]}]")
            zl_inv = MultiPoly.variable(t_z, f"zeta[{chain[l]}]", -1)
            rhs = zk * zl_inv * delta_z(k, l)
            if k == l:
                diff = MultiPoly.const(t_z, 1) - rhs
                ok = diff.is_zero()
                report.rows.append(
                    {"kind": "image", "k": k, "l": l, "ok": ok,
                     "witness": None if ok else poly_to_text(diff)}
                )
                continue
            path = tuple(range(k + 1, l + 1))
            img = psi_of_cluster_variable(
                q, path, l, t_z, equivariant=equivariant
            )
            diff = img.num - rhs * img.den_poly()
            witness = None
            for power, coeff in diff.coefficients_in("t"):
                if not laurent_contains(gb_z, coeff, znames, budget):
                    witness = "t^%d: %s" % (power, poly_to_text(coeff))
                    break
            report.rows.append(
                {"kind": "image", "k": k, "l": l, "ok": witness is None, "witness": witness}
            )
    return report


# -- principal-coefficient monomial check -------------------------------------------


def psi_yhat_qfactor(q: Quiver, k: str) -> bool:
    """The zeta-monomial of the hatted coefficient image at gauge node k
    must equal the Kaehler-eliminated image of Q[k]^-1, with matching
    parity sign.

    The left side is assembled from the initial seed (tropical coefficient
    times the gauge column); the right side inverts the substitution
    monomial.  The two routes use different bookkeeping, so agreement
    checks the principal-coefficient wiring end to end.
    """
    table = build_table(q, equivariant=False, with_zeta=True)
    seed, node_order = seed_from_quiver(q)
    gauge = [n.id for n in q.gauge_nodes]
    col = gauge.index(k)

    yk = seed.coeffs[col]
    exps: dict[str, int] = {}
    for nm, e in zip(seed.cnames, yk.exps):
        if e:
            nid = node_order[(seed.xnames + seed.cnames).index(nm)]
            exps[f"zeta[{nid}]"] = exps.get(f"zeta[{nid}]", 0) + e
    for i in range(seed.n):
        e = seed.btilde[i][col]
        if e:
            exps[f"zeta[{node_order[i]}]"] = exps.get(f"zeta[{node_order[i]}]", 0) + e
    lhs = MultiPoly.monomial(table, exps)

    image = zeta_substitution(q, table)[f"Q[{k}]"]
    rhs = image.invert_monomial()
    sign = -1 if (q.vminus(k) - q.dim(k)) % 2 else 1
    return lhs == sign * rhs


def injectivity_witness(q: Quiver, table: VarTable | None = None) -> list[tuple[str, str, int]]:
    """Leading (zeta, t-power) data of the initial images.

    Each image is monic of degree dim in t with its own zeta variable, so
    the leading monomials zeta_i t^(v_i) involve pairwise distinct zeta
    variables and are algebraically independent; raises if the wiring ever
    breaks that."""
    if table is None:
        table = build_table(q, equivariant=False, with_t=True, with_zeta=True)
    out = []
    seen = set()
    for n in q.nodes:
        img = psi_initial(q, n.id, table, equivariant=False)
        lead = img.num.coeff_of({f"zeta[{n.id}]": 1, "t": n.dim})
        if lead != 1:
            raise ArithmeticError(
                "initial image at %s is not monic of degree %d in t" % (n.id, n.dim)
            )
        zname = f"zeta[{n.id}]"
        if zname in seen:
            raise ArithmeticError("duplicate zeta variable %s" % zname)
        seen.add(zname)
        out.append((n.id, zname, n.dim))
    return out
