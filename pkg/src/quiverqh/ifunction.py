"""Hypergeometric quasimap coefficients and their difference equation.

The degree-d coefficient of the abelianized small I-function is a product
over torus weights w with pairing a = <gauge part of w, d>:

    a > 0:   1 / prod_{l=1}^{a} (w + l h)
    a < 0:   prod_{l=0}^{-a-1} (w - l h)
    a = 0:   1

(the infinite products in the raw definition telescope to this finite
form; the degree-zero coefficient is 1).  Coefficients are kept factored
as multisets of linear forms, which both speeds up and sharpens the
difference-equation check: common factors cancel exactly and only the
residual products are expanded and compared.

The difference equation along a degree shift d' states

    prod_{<w,d'> > 0} prod_{m=0}^{<w,d'>-1} (w + <w,d> h - m h) * c_d
  = prod_{<w,d'> < 0} prod_{m=0}^{-<w,d'>-1} (w + <w,d-d'> h - m h) * c_{d-d'}

Both windows follow from telescoping the coefficient formula: the factors
a weight w contributes to c_d and to c_{d-d'} differ by the ladder of
linear forms w + l h for l strictly between <w,d-d'> and <w,d> inclusive
on the larger end, and the two product ranges above are exactly that
ladder written from the top.

Coefficients outside the effective cone are zero and recursions that step
outside the cone are skipped with a notice rather than checked.

The h -> 0 Kaehler-normalization sign: the ratio of root factors for a
shift by d collapses to prod_{roots a, <a,d> != 0} a^{<a,d>} (a constant
+-1), computed by exact division and cross-checked against the parity of
the pairing with the sum of positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .polycore import (
    DivisibilityError,
    MultiPoly,
    RationalFunction,
    VarTable,
    exact_divide,
    poly_to_text,
    product,
)
from .quiver import Quiver, WeightData, cocharacter, in_effective_cone
from .symfun import BlockStructure, positive_root_pairing


@dataclass(frozen=True)
class IfunCoeff:
    """Factored coefficient: products of linear forms, numerator and
    denominator kept as tuples of polynomials."""

    degree: tuple  # sorted ((node id, (entries...)), ...)
    num_factors: tuple
    den_factors: tuple

    def value(self) -> RationalFunction:
        table = (self.num_factors or self.den_factors)[0].table
        return RationalFunction(
            product(table, self.num_factors), product(table, self.den_factors)
        )


def _degree_key(d: Mapping[str, Sequence[int]]) -> tuple:
    return tuple(sorted((nid, tuple(vec)) for nid, vec in d.items()))


def ifun_coeff(w: WeightData, d: Mapping[str, Sequence[int]]) -> IfunCoeff:
    """Finite telescoped coefficient at degree d (must lie in the cone)."""
    q = w.quiver
    if not in_effective_cone(q, d):
        raise ValueError("degree outside the effective cone has zero coefficient")
    table = w.table
    h = MultiPoly.variable(table, "h")
    dmap = cocharacter(q, d)
    num: list = []
    den: list = []
    for wt in w.weights:
        a = wt.pair(dmap)
        if a > 0:
            for l in range(1, a + 1):
                den.append(wt.form + l * h)
        elif a < 0:
            for l in range(0, -a):
                num.append(wt.form - l * h)
    one = MultiPoly.const(table, 1)
    return IfunCoeff(_degree_key(d), tuple(num) or (one,), tuple(den) or (one,))


def _sub_degree(d: Mapping, dp: Mapping) -> dict:
    out = {nid: list(vec) for nid, vec in d.items()}
    for nid, vec in dp.items():
        cur = out.setdefault(nid, [0] * len(vec))
        for j, v in enumerate(vec):
            cur[j] -= v
    return out


def _canon_factor(p: MultiPoly):
    """(canonical text of the sign-normalized form, scalar) with
    p = scalar * normalized form; leading canonical coefficient 1."""
    lead, lc = p.leading()
    scaled = p * (Fraction(1, lc) if isinstance(lc, int) else 1 / lc)
    return poly_to_text(scaled), Fraction(lc)


@dataclass(frozen=True)
class QdeResult:
    ok: bool
    skipped: bool
    notice: str = ""
    witness: str = ""

    def __bool__(self) -> bool:
        return self.ok


def qde_check(
    w: WeightData,
    d: Mapping[str, Sequence[int]],
    dprime: Mapping[str, Sequence[int]],
) -> QdeResult:
    """Exact difference-equation check relating c_d and c_{d-d'}.

    Both sides are assembled as factor multisets; after cancellation the
    residues are expanded and compared as polynomials, so a pass is an
    exact identity and a failure returns the nonzero residual as witness.
    A step d-d' outside the effective cone is reported as skipped.
    """
    q = w.quiver
    if not in_effective_cone(q, d):
        return QdeResult(True, True, "d outside the effective cone")
    dm = _sub_degree(d, dprime)
    if not in_effective_cone(q, dm):
        return QdeResult(True, True, "d - d' leaves the effective cone")
    table = w.table
    h = MultiPoly.variable(table, "h")
    dmap = cocharacter(q, d)
    dmmap = cocharacter(q, dm)
    dpmap = cocharacter(q, dprime)

    lhs: list = []
    rhs: list = []
    for wt in w.weights:
        ap = wt.pair(dpmap)
        if ap > 0:
            ad = wt.pair(dmap)
            for m in range(ap):
                lhs.append(wt.form + (ad - m) * h)
        elif ap < 0:
            am = wt.pair(dmmap)
            for m in range(-ap):
                rhs.append(wt.form + (am - m) * h)
    cd = ifun_coeff(w, d)
    cdm = ifun_coeff(w, dm)
    # lhs_factors * cd = rhs_factors * cdm, cross-multiplied:
    left = list(lhs) + list(cd.num_factors) + list(cdm.den_factors)
    right = list(rhs) + list(cdm.num_factors) + list(cd.den_factors)

    counts: dict = {}
    scalar = Fraction(1)
    reps: dict = {}
    for p in left:
        if p.is_zero():
            key, s = "0", Fraction(0)
        else:
            key, s = _canon_factor(p)
        scalar *= s
        counts[key] = counts.get(key, 0) + 1
        reps.setdefault(key, p)
    rscalar = Fraction(1)
    for p in right:
        if p.is_zero():
            key, s = "0", Fraction(0)
        else:
            key, s = _canon_factor(p)
        rscalar *= s
        counts[key] = counts.get(key, 0) - 1
        reps.setdefault(key, p)

    residual = {k: n for k, n in counts.items() if n}
    if not residual:
        if scalar == rscalar:
            return QdeResult(True, False)
        return QdeResult(False, False, witness=f"scalar mismatch {scalar} vs {rscalar}")
    # expand whatever did not cancel and compare exactly
    lres = product(table, [reps[k] for k, n in residual.items() for _ in range(max(n, 0))])
    rres = product(table, [reps[k] for k, n in residual.items() for _ in range(max(-n, 0))])
    diff = scalar * lres - rscalar * rres
    if diff.is_zero():
        return QdeResult(True, False)
    return QdeResult(False, False, witness=poly_to_text(diff))


def qde_box_pairs(q: Quiver, box: int) -> list:
    """All (d, d') pairs with d-coordinates 0..box (sign-adjusted by theta)
    and d' running over coordinate generators, in deterministic order."""
    from itertools import product as iproduct

    slots = []
    for n in q.gauge_nodes:
        s = 1 if n.theta > 0 else -1
        for j in range(n.dim):
            slots.append((n.id, j, s))

    pairs = []
    for vec in iproduct(range(box + 1), repeat=len(slots)):
        d: dict = {}
        for (nid, j, s), v in zip(slots, vec):
            d.setdefault(nid, [0] * q.dim(nid))[j] = s * v
        for nid, j, s in slots:
            dp = {nid: [s if jj == j else 0 for jj in range(q.dim(nid))]}
            pairs.append((d, dp))
    return pairs


def qde_box_sweep(
    w: WeightData,
    box: int,
) -> list:
    """All (d, d') checks with coordinates 0..box (sign-adjusted by theta)
    and d' running over coordinate generators; returns report rows."""
    rows = []
    for d, dp in qde_box_pairs(w.quiver, box):
        res = qde_check(w, d, dp)
        rows.append({
            "d": {k: list(v) for k, v in d.items()},
            "dprime": {k: list(v) for k, v in dp.items()},
            "ok": res.ok,
            "skipped": res.skipped,
            "notice": res.notice,
            "witness": res.witness,
        })
    return rows


def root_shift_sign(
    table: VarTable,
    blocks: BlockStructure,
    d: Mapping[str, Sequence[int]],
) -> int:
    """Sign of the h -> 0 root-factor ratio for a shift by d.

    Computed as the exact quotient of the shifted-root products and
    cross-checked against parity of the positive-root pairing; the two
    disagreeing is an internal error.
    """
    num = MultiPoly.const(table, 1)
    den = MultiPoly.const(table, 1)
    for node, names in blocks.blocks:
        vec = d.get(node)
        if vec is None:
            continue
        for a in range(len(names)):
            for b in range(len(names)):
                if a == b:
                    continue
                root = MultiPoly.variable(table, names[a]) - MultiPoly.variable(table, names[b])
                pair = vec[a] - vec[b]
                if pair > 0:
                    num = num * root ** pair
                elif pair < 0:
                    den = den * root ** (-pair)
    ratio = exact_divide(num, den)
    if not ratio.is_constant():
        raise ArithmeticError("root ratio did not collapse to a constant")
    c = ratio.constant_coeff()
    if c not in (1, -1):
        raise ArithmeticError(f"root ratio is {c}, expected a sign")
    expected = -1 if positive_root_pairing(blocks, d) % 2 else 1
    if c != expected:
        raise ArithmeticError("finite ratio disagrees with positive-root parity")
    return int(c)
