"""Deterministic Buchberger engine and exact ideal membership.

Everything downstream that claims "congruent modulo the ideal" funnels
through this module: a reduced Groebner basis is computed once per ideal
and normal forms decide membership exactly.

Determinism: generators are processed in input order, S-pairs are selected
by minimal lcm total degree with lexicographic pair index as tie-break,
and the reduced basis is sorted by leading monomial.  Two runs on the same
input produce byte-identical bases.

Pair criteria: the product criterion (coprime leading monomials) and the
chain criterion (a third leading monomial divides the pair lcm and both
mixed pairs were already treated).

Laurent variables are handled by adjoining an explicit inverse variable
with the relation v * inv - 1 and clearing denominators, never by
fractional arithmetic inside the basis computation.

Membership in the ring of Weyl-symmetric polynomials is tested in the full
polynomial ring: for a symmetric polynomial p and symmetric generators,
p = sum a_i g_i implies p = sum avg_W(a_i) g_i with symmetric
coefficients, so full-ring membership is equivalent and nothing is lost.

Budgets cap the number of S-pair reductions and the basis size; exceeding
one raises BudgetError rather than returning a partial answer.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .polycore import (
    ContextError,
    MultiPoly,
    Variable,
    VarTable,
    _coeff,
    poly_to_text,
)


class BudgetError(RuntimeError):
    """Computation exceeded its configured budget."""


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 500_000
    max_basis: int = 5_000
    max_steps: int = 20_000_000

    def exceeded_pairs(self, n: int) -> bool:
        return n > self.max_pairs

    def exceeded_basis(self, n: int) -> bool:
        return n > self.max_basis


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order: kind 'grevlex' or 'lex' over an explicit variable
    order (default: the table's canonical order)."""

    kind: str = "grevlex"
    variables: tuple = ()  # names, first = largest; empty = table order

    def key_fn(self, table: VarTable) -> Callable:
        if self.variables:
            perm = tuple(table.index(n) for n in self.variables)
            if sorted(perm) != list(range(table.nvars)):
                raise ContextError("order must list every table variable exactly once")
        else:
            perm = tuple(range(table.nvars))
        identity = perm == tuple(range(table.nvars))
        if self.kind == "grevlex":
            if identity:
                def key(e: tuple) -> tuple:
                    out = [sum(e)]
                    out.extend(-x for x in reversed(e))
                    return tuple(out)
            else:
                def key(e: tuple) -> tuple:
                    pe = [e[i] for i in perm]
                    out = [sum(pe)]
                    out.extend(-x for x in reversed(pe))
                    return tuple(out)
            return key
        if self.kind == "lex":
            if identity:
                return lambda e: e
            return lambda e: tuple(e[i] for i in perm)
        raise ValueError(f"unknown order kind {self.kind!r}")

    def describe(self) -> str:
        vs = ",".join(self.variables) if self.variables else "<table>"
        return f"{self.kind}({vs})"


@dataclass(frozen=True)
class GroebnerBasis:
    table: VarTable
    order: MonomialOrder
    elements: tuple  # reduced, monic, sorted by increasing leading monomial
    fingerprint: str

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _neg(key: tuple) -> tuple:
    return tuple(-k for k in key)


def _as_term_list(p: MultiPoly) -> list:
    return list(p.terms.items())


def _reduce_full(
    terms: dict,
    basis: Sequence,
    key: Callable,
    steps: list,
    budget: Budget,
) -> dict:
    """Full normal form of a term dict against monic basis rows
    (lead_exp, tail term list).  Returns the irreducible remainder."""
    if not terms:
        return {}
    work = dict(terms)
    out: dict = {}
    keymap = {_neg(key(e)): e for e in work}
    heap = list(keymap)
    heapq.heapify(heap)
    while heap:
        nk = heapq.heappop(heap)
        e = keymap.pop(nk, None)
        if e is None:
            continue
        c = work.get(e)
        if not c:
            continue
        del work[e]
        reducer = None
        for lead, tail in basis:
            ok = True
            for a, b in zip(e, lead):
                if a < b:
                    ok = False
                    break
            if ok:
                reducer = (lead, tail)
                break
        if reducer is None:
            out[e] = c
            continue
        steps[0] += 1
        if steps[0] > budget.max_steps:
            raise BudgetError(
                f"reduction budget exceeded ({budget.max_steps} steps)"
            )
        lead, tail = reducer
        shift = tuple(map(int.__sub__, e, lead))
        any_shift = any(shift)
        for te, tc in tail:
            ne = tuple(map(int.__add__, te, shift)) if any_shift else te
            s = work.get(ne, 0) - c * tc
            if s:
                work[ne] = _coeff(s) if isinstance(s, Fraction) else s
                nk2 = _neg(key(ne))
                if nk2 not in keymap:
                    keymap[nk2] = ne
                    heapq.heappush(heap, nk2)
            else:
                work.pop(ne, None)
    return out


def _monic(terms: dict, key: Callable) -> tuple:
    """(lead_exp, tail list, full dict) after dividing by the lead coeff."""
    lead = max(terms, key=key)
    lc = terms[lead]
    if lc != 1:
        inv = Fraction(1, lc) if isinstance(lc, int) else 1 / lc
        terms = {e: _coeff(c * inv) for e, c in terms.items()}
    tail = [(e, c) for e, c in terms.items() if e != lead]
    return lead, tail, terms


def buchberger(
    generators: Iterable[MultiPoly],
    order: MonomialOrder | None = None,
    budget: Budget | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the given polynomial generators."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    table = gens[0].table
    for g in gens:
        if g.table is not table:
            raise ContextError("generators bound to different tables")
        for e in g.terms:
            if any(x < 0 for x in e):
                raise ValueError("Laurent generator: clear denominators first")
    order = order or MonomialOrder()
    budget = budget or Budget()
    key = order.key_fn(table)
    steps = [0]

    basis: list = []      # rows (lead_exp, tail, full terms dict)
    lead_keys: list = []

    def add_poly(terms: dict) -> None:
        lead, tail, full = _monic(terms, key)
        basis.append((lead, tail, full))
        lead_keys.append(key(lead))

    # seed with interreduced input, in input order
    for g in gens:
        rows = [(lead, tail) for lead, tail, _ in basis]
        r = _reduce_full(g.terms, rows, key, steps, budget)
        if r:
            add_poly(r)

    def lcm_exp(a: tuple, b: tuple) -> tuple:
        return tuple(x if x > y else y for x, y in zip(a, b))

    pairs: list = []
    pending: set = set()

    def push_pairs(j: int) -> None:
        lj = basis[j][0]
        for i in range(j):
            li = basis[i][0]
            l = lcm_exp(li, lj)
            heapq.heappush(pairs, (sum(l), i, j, l))
            pending.add((i, j))

    for j in range(len(basis)):
        push_pairs(j)

    processed = 0
    while pairs:
        _, i, j, l = heapq.heappop(pairs)
        pending.discard((i, j))
        li = basis[i][0]
        lj = basis[j][0]
        # stale lcm (basis may have grown but rows never change)
        processed += 1
        if budget.exceeded_pairs(processed):
            raise BudgetError(f"pair budget exceeded ({budget.max_pairs} pairs)")
        # product criterion
        if all(a + b == c for a, b, c in zip(li, lj, l)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            lk = basis[k][0]
            if all(x <= y for x, y in zip(lk, l)):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 not in pending and p2 not in pending:
                    skip = True
                    break
        if skip:
            continue
        # S-polynomial of monic rows
        si = tuple(map(int.__sub__, l, li))
        sj = tuple(map(int.__sub__, l, lj))
        s: dict = {}
        for e, c in basis[i][2].items():
            ne = tuple(map(int.__add__, e, si))
            s[ne] = s.get(ne, 0) + c
        for e, c in basis[j][2].items():
            ne = tuple(map(int.__add__, e, sj))
            v = s.get(ne, 0) - c
            if v:
                s[ne] = v
            else:
                s.pop(ne, None)
        s = {e: c for e, c in s.items() if c}
        if not s:
            continue
        rows = [(lead, tail) for lead, tail, _ in basis]
        r = _reduce_full(s, rows, key, steps, budget)
        if not r:
            continue
        add_poly(r)
        if budget.exceeded_basis(len(basis)):
            raise BudgetError(f"basis budget exceeded ({budget.max_basis} elements)")
        push_pairs(len(basis) - 1)

    # minimalize: drop rows whose lead is divisible by another surviving lead
    keep = []
    for idx, (lead, _, _) in enumerate(basis):
        redundant = False
        for jdx, (lead2, _, _) in enumerate(basis):
            if idx == jdx:
                continue
            if all(x <= y for x, y in zip(lead2, lead)):
                if any(x < y for x, y in zip(lead2, lead)) or jdx < idx:
                    redundant = True
                    break
        if not redundant:
            keep.append(idx)

    # inter-reduce tails
    final: list = []
    kept = [basis[i] for i in keep]
    for idx in range(len(kept)):
        lead, tail, full = kept[idx]
        others = [(l, t) for jdx, (l, t, _) in enumerate(kept) if jdx != idx]
        r = _reduce_full(dict(tail), others, key, steps, budget)
        terms = dict(r)
        terms[lead] = 1
        final.append(terms)

    final.sort(key=lambda terms: key(max(terms, key=key)))
    elements = tuple(MultiPoly(table, terms) for terms in final)
    fp = hashlib.sha256()
    fp.update(order.describe().encode())
    for p in elements:
        fp.update(poly_to_text(p).encode())
        fp.update(b"\n")
    return GroebnerBasis(table, order, elements, fp.hexdigest())


def normal_form(p: MultiPoly, gb: GroebnerBasis, budget: Budget | None = None) -> MultiPoly:
    """Unique remainder of p modulo the reduced basis."""
    if p.table is not gb.table:
        raise ContextError("polynomial and basis bound to different tables")
    budget = budget or Budget()
    key = gb.order.key_fn(gb.table)
    rows = []
    for g in gb.elements:
        lead = max(g.terms, key=key)
        rows.append((lead, [(e, c) for e, c in g.terms.items() if e != lead]))
    steps = [0]
    r = _reduce_full(p.terms, rows, key, steps, budget)
    return MultiPoly(p.table, r)


def ideal_contains(gb: GroebnerBasis, p: MultiPoly, budget: Budget | None = None) -> bool:
    return normal_form(p, gb, budget).is_zero()


# -- Laurent extensions ------------------------------------------------------------


def _inverse_var(name: str) -> Variable:
    return Variable.aux(f"inv.{name}")


def laurent_extension(
    table: VarTable,
    laurent_names: Sequence[str],
) -> tuple:
    """(extended table, inverse relations builder) for the listed variables.

    The extended table adds one aux inverse per listed variable; the
    returned relations are v * inv(v) - 1 in the extended table.
    """
    ext = table.extend(_inverse_var(n) for n in laurent_names)
    rels = []
    for n in laurent_names:
        v = MultiPoly.variable(ext, n)
        iv = MultiPoly.variable(ext, f"inv.{n}")
        rels.append(v * iv - 1)
    return ext, rels


def clear_laurent(p: MultiPoly, names: Sequence[str]) -> MultiPoly:
    """Multiply by the smallest monomial in the listed variables making
    every listed exponent nonnegative (a unit in the Laurent ring)."""
    idxs = [p.table.index(n) for n in names]
    if not p.terms:
        return p
    shift = [0] * p.table.nvars
    for i in idxs:
        m = min(e[i] for e in p.terms)
        if m < 0:
            shift[i] = -m
    if not any(shift):
        return p
    return p.shift(tuple(shift))


def laurent_basis(
    generators: Iterable[MultiPoly],
    laurent_names: Sequence[str],
    order: MonomialOrder | None = None,
    budget: Budget | None = None,
) -> GroebnerBasis:
    """Groebner basis of the ideal extended by inverses of the listed
    variables; membership against it decides Laurent-ring membership."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    table = gens[0].table
    ext, rels = laurent_extension(table, laurent_names)
    conv = [clear_laurent(g, laurent_names).convert(ext) for g in gens]
    return buchberger(conv + rels, order=order, budget=budget)


def laurent_contains(
    gb: GroebnerBasis,
    p: MultiPoly,
    laurent_names: Sequence[str],
    budget: Budget | None = None,
) -> bool:
    """Membership of p in the Laurent extension (gb from laurent_basis)."""
    cleared = clear_laurent(p, laurent_names).convert(gb.table)
    return ideal_contains(gb, cleared, budget)


@dataclass(frozen=True)
class LaurentComparison:
    equal: bool
    missing_from_first: tuple  # canonical texts of second's generators not in first
    missing_from_second: tuple


def ideal_equal_laurent(
    gens_a: Sequence[MultiPoly],
    gens_b: Sequence[MultiPoly],
    laurent_names: Sequence[str],
    order: MonomialOrder | None = None,
    budget: Budget | None = None,
) -> LaurentComparison:
    """Mutual containment of two ideals after inverting the listed
    variables; witnesses list the generators that fail membership."""
    gb_a = laurent_basis(gens_a, laurent_names, order, budget)
    gb_b = laurent_basis(gens_b, laurent_names, order, budget)
    miss_a = tuple(
        poly_to_text(g) for g in gens_b
        if not laurent_contains(gb_a, g, laurent_names, budget)
    )
    miss_b = tuple(
        poly_to_text(g) for g in gens_a
        if not laurent_contains(gb_b, g, laurent_names, budget)
    )
    return LaurentComparison(not miss_a and not miss_b, miss_a, miss_b)
