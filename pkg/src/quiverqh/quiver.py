"""Quiver data: nodes, dimensions, stability, exchange matrices, weights.

A quiver here is a finite directed multigraph with two node kinds.  Gauge
nodes carry a dimension and a nonzero stability weight; frozen nodes carry
only a dimension.  Self-loops and oriented 2-cycles are rejected.

The JSON wire format:

    {"nodes": [{"id": "0", "kind": "frozen", "dim": 4},
               {"id": "1", "kind": "gauge", "dim": 2, "theta": 1}],
     "edges": [{"src": "0", "dst": "1", "count": 1}]}

Matrix row/column order is by sorted node label (gauge labels first for the
extended matrix), using a length-then-lexicographic label sort so numeric
labels order numerically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .polycore import MultiPoly, Variable, VarTable, _label_key
from .symfun import BlockStructure


class QuiverFormatError(ValueError):
    """Malformed quiver description (structure, kinds, dims, stability)."""


@dataclass(frozen=True)
class Node:
    id: str
    kind: str  # "gauge" | "frozen"
    dim: int
    theta: int | None = None


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    count: int = 1


@dataclass(frozen=True)
class Quiver:
    nodes: tuple
    edges: tuple

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise QuiverFormatError("duplicate node ids")
        known = set(ids)
        for n in self.nodes:
            if n.kind not in ("gauge", "frozen"):
                raise QuiverFormatError(f"node {n.id!r}: unknown kind {n.kind!r}")
            if not isinstance(n.dim, int) or n.dim < 1:
                raise QuiverFormatError(f"node {n.id!r}: dim must be a positive integer")
            if n.kind == "gauge":
                if not isinstance(n.theta, int) or n.theta == 0:
                    raise QuiverFormatError(
                        f"gauge node {n.id!r}: theta must be a nonzero integer"
                    )
            elif n.theta is not None:
                raise QuiverFormatError(f"frozen node {n.id!r} must not carry theta")
        arrows = set()
        for e in self.edges:
            if e.src not in known or e.dst not in known:
                raise QuiverFormatError(f"edge {e.src!r}->{e.dst!r}: unknown endpoint")
            if e.src == e.dst:
                raise QuiverFormatError(f"self-loop at node {e.src!r}")
            if not isinstance(e.count, int) or e.count < 1:
                raise QuiverFormatError(f"edge {e.src!r}->{e.dst!r}: count must be >= 1")
            if (e.src, e.dst) in arrows:
                raise QuiverFormatError(
                    f"parallel edge entries {e.src!r}->{e.dst!r}; use count"
                )
            arrows.add((e.src, e.dst))
        for s, d in arrows:
            if (d, s) in arrows:
                raise QuiverFormatError(f"oriented 2-cycle between {s!r} and {d!r}")

    # -- ordered views ----------------------------------------------------

    @property
    def gauge_nodes(self) -> tuple:
        return tuple(sorted((n for n in self.nodes if n.kind == "gauge"),
                            key=lambda n: _label_key(n.id)))

    @property
    def frozen_nodes(self) -> tuple:
        return tuple(sorted((n for n in self.nodes if n.kind == "frozen"),
                            key=lambda n: _label_key(n.id)))

    def node(self, nid: str) -> Node:
        for n in self.nodes:
            if n.id == nid:
                return n
        raise KeyError(nid)

    def dim(self, nid: str) -> int:
        return self.node(nid).dim

    def theta(self, nid: str) -> int:
        th = self.node(nid).theta
        if th is None:
            raise QuiverFormatError(f"node {nid!r} is frozen, has no stability weight")
        return th

    def arrow_count(self, src: str, dst: str) -> int:
        return sum(e.count for e in self.edges if e.src == src and e.dst == dst)

    def in_edges(self, nid: str) -> tuple:
        return tuple(e for e in self.edges if e.dst == nid)

    def out_edges(self, nid: str) -> tuple:
        return tuple(e for e in self.edges if e.src == nid)

    def vminus(self, nid: str) -> int:
        """Total dimension flowing in: sum of source dims over in-edges."""
        return sum(e.count * self.dim(e.src) for e in self.in_edges(nid))

    def vplus(self, nid: str) -> int:
        """Total dimension flowing out: sum of target dims over out-edges."""
        return sum(e.count * self.dim(e.dst) for e in self.out_edges(nid))


# -- JSON ----------------------------------------------------------------------


def quiver_from_dict(data: Mapping) -> Quiver:
    if not isinstance(data, Mapping):
        raise QuiverFormatError("top level must be an object")
    try:
        raw_nodes = data["nodes"]
        raw_edges = data.get("edges", [])
    except (TypeError, KeyError) as exc:
        raise QuiverFormatError(f"missing field: {exc}") from None
    nodes = []
    for nd in raw_nodes:
        extra = set(nd) - {"id", "kind", "dim", "theta"}
        if extra:
            raise QuiverFormatError(f"node has unknown fields {sorted(extra)}")
        try:
            nodes.append(Node(str(nd["id"]), nd["kind"], nd["dim"], nd.get("theta")))
        except KeyError as exc:
            raise QuiverFormatError(f"node missing field {exc}") from None
    edges = []
    for ed in raw_edges:
        extra = set(ed) - {"src", "dst", "count"}
        if extra:
            raise QuiverFormatError(f"edge has unknown fields {sorted(extra)}")
        try:
            edges.append(Edge(str(ed["src"]), str(ed["dst"]), ed.get("count", 1)))
        except KeyError as exc:
            raise QuiverFormatError(f"edge missing field {exc}") from None
    return Quiver(tuple(nodes), tuple(edges))


def quiver_to_dict(q: Quiver) -> dict:
    nodes = []
    for n in q.nodes:
        nd = {"id": n.id, "kind": n.kind, "dim": n.dim}
        if n.theta is not None:
            nd["theta"] = n.theta
        nodes.append(nd)
    return {
        "nodes": nodes,
        "edges": [{"src": e.src, "dst": e.dst, "count": e.count} for e in q.edges],
    }


def load_quiver(path: str) -> Quiver:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise QuiverFormatError(f"invalid JSON at line {exc.lineno} col {exc.colno}: {exc.msg}")
    return quiver_from_dict(data)


# -- validation -----------------------------------------------------------------


@dataclass
class ValidationReport:
    structural_ok: bool
    acyclic: bool
    feasible: bool
    quiver_flag: bool
    type_a: bool
    notes: tuple

    def as_dict(self) -> dict:
        return {
            "structural_ok": self.structural_ok,
            "acyclic": self.acyclic,
            "feasible": self.feasible,
            "quiver_flag": self.quiver_flag,
            "type_a": self.type_a,
            "notes": list(self.notes),
        }


def _is_acyclic(q: Quiver) -> bool:
    marks: dict[str, int] = {}

    def visit(nid: str) -> bool:
        state = marks.get(nid, 0)
        if state == 1:
            return False
        if state == 2:
            return True
        marks[nid] = 1
        for e in q.out_edges(nid):
            if not visit(e.dst):
                return False
        marks[nid] = 2
        return True

    return all(visit(n.id) for n in q.nodes)


def _chain_order(q: Quiver) -> list | None:
    """Node ids in path order when the quiver is a single oriented chain."""
    succ: dict[str, list] = {n.id: [] for n in q.nodes}
    pred: dict[str, list] = {n.id: [] for n in q.nodes}
    for e in q.edges:
        if e.count != 1:
            return None
        succ[e.src].append(e.dst)
        pred[e.dst].append(e.src)
    heads = [nid for nid in succ if not pred[nid]]
    if len(heads) != 1:
        return None
    order = [heads[0]]
    while succ[order[-1]]:
        nxt = succ[order[-1]]
        if len(nxt) != 1 or len(pred[nxt[0]]) != 1:
            return None
        order.append(nxt[0])
    return order if len(order) == len(q.nodes) else None


def validate(q: Quiver) -> ValidationReport:
    """Structural and assumption checks; never raises on a well-formed quiver."""
    notes: list[str] = []
    acyclic = _is_acyclic(q)
    if not acyclic:
        notes.append("oriented cycle present")

    feasible = True
    for n in q.gauge_nodes:
        if n.theta > 0 and q.vminus(n.id) < n.dim:
            feasible = False
            notes.append(f"node {n.id}: positive stability needs inflow >= dim")
        if n.theta < 0 and q.vplus(n.id) < n.dim:
            feasible = False
            notes.append(f"node {n.id}: negative stability needs outflow >= dim")

    # flag-type assumptions: acyclic, a single frozen node that is the only
    # source, all stability weights positive, and strict inflow excess
    quiver_flag = acyclic and len(q.frozen_nodes) == 1
    if quiver_flag:
        frozen = q.frozen_nodes[0]
        sources = [n.id for n in q.nodes if not q.in_edges(n.id)]
        quiver_flag = sources == [frozen.id]
    if quiver_flag:
        quiver_flag = all(n.theta > 0 for n in q.gauge_nodes)
    if quiver_flag:
        for n in q.gauge_nodes:
            if q.vminus(n.id) - q.vplus(n.id) < 2:
                quiver_flag = False
                notes.append(f"node {n.id}: inflow excess below 2")
                break

    type_a = False
    order = _chain_order(q)
    if order is not None and len(q.frozen_nodes) == 1 and order[0] == q.frozen_nodes[0].id:
        dims = [q.dim(nid) for nid in order]
        n = len(order) - 1
        ok = all(q.theta(nid) > 0 for nid in order[1:])
        ok = ok and all(dims[k] > dims[k + 1] for k in range(n))
        for k in range(n):
            vk2 = dims[k + 2] if k + 2 <= n else 0
            vk1 = dims[k + 1]
            if not dims[0] - dims[k] < vk1 - vk2:
                ok = False
                notes.append(f"chain inequality fails at position {k}")
                break
        type_a = ok

    return ValidationReport(True, acyclic, feasible, quiver_flag, type_a, tuple(notes))


# -- exchange matrices -----------------------------------------------------------


def exchange_matrices(q: Quiver) -> tuple:
    """(B, Btilde, row labels): signed arrow-count matrices.

    B is the square matrix over gauge nodes, Btilde stacks frozen rows
    below it; entry (i, k) is arrows i->k minus arrows k->i.
    """
    gauge = [n.id for n in q.gauge_nodes]
    frozen = [n.id for n in q.frozen_nodes]
    rows = gauge + frozen
    btilde = [
        [q.arrow_count(i, k) - q.arrow_count(k, i) for k in gauge]
        for i in rows
    ]
    b = [row[:] for row in btilde[: len(gauge)]]
    return b, btilde, rows


# -- weight data -----------------------------------------------------------------


@dataclass(frozen=True)
class Weight:
    """One torus weight of the linear-map space: a linear form plus its
    gauge part as an exponent map over xi variables."""

    form: MultiPoly
    gauge_part: tuple  # tuple[(varname, coeff)] over xi variables

    def pair(self, d: Mapping[str, int]) -> int:
        """Pairing of the gauge part with a cocharacter {xi varname: int}."""
        return sum(c * d.get(name, 0) for name, c in self.gauge_part)


@dataclass(frozen=True)
class WeightData:
    quiver: Quiver
    table: VarTable
    equivariant: bool
    weights: tuple  # tuple[Weight]
    # per gauge node: multisets of Chern roots flowing in / out
    roots_in: Mapping
    roots_out: Mapping

    def xi_names(self, nid: str) -> tuple:
        return tuple(f"xi[{nid}][{j}]" for j in range(1, self.quiver.dim(nid) + 1))


def node_roots(q: Quiver, table: VarTable, nid: str, equivariant: bool) -> list:
    """Chern roots of one node as degree-one polynomials (zeros when a
    frozen node is treated non-equivariantly)."""
    n = q.node(nid)
    if n.kind == "gauge":
        return [MultiPoly.variable(table, f"xi[{nid}][{j}]") for j in range(1, n.dim + 1)]
    if equivariant:
        return [MultiPoly.variable(table, f"u[{nid}][{j}]") for j in range(1, n.dim + 1)]
    return [MultiPoly.zero(table) for _ in range(n.dim)]


def build_table(
    q: Quiver,
    *,
    equivariant: bool = True,
    with_t: bool = False,
    with_h: bool = False,
    with_q: bool = False,
    laurent_q: bool = False,
    with_qtilde: bool = False,
    with_zeta: bool = False,
    extra: Iterable[Variable] = (),
) -> VarTable:
    """Variable table for a quiver context; include only what is needed."""
    vs: list[Variable] = []
    for n in q.gauge_nodes:
        vs.extend(Variable.xi(n.id, j) for j in range(1, n.dim + 1))
        if with_q:
            vs.append(Variable.q(n.id, laurent=laurent_q))
        if with_qtilde:
            vs.extend(Variable.qt(n.id, j, laurent=laurent_q) for j in range(1, n.dim + 1))
    if equivariant:
        for n in q.frozen_nodes:
            vs.extend(Variable.u(n.id, j) for j in range(1, n.dim + 1))
    if with_t:
        vs.append(Variable.t())
    if with_h:
        vs.append(Variable.h())
    if with_zeta:
        vs.extend(Variable.zeta(n.id) for n in q.nodes)
    vs.extend(extra)
    return VarTable(vs)


def weights(q: Quiver, table: VarTable | None = None, *, equivariant: bool = True) -> WeightData:
    """Torus weights of the arrow-map space, one per edge and index pair.

    Each weight is target root minus source root; frozen roots become u
    variables (or zero non-equivariantly).  The gauge part records xi
    coefficients for cocharacter pairings.
    """
    if table is None:
        table = build_table(q, equivariant=equivariant)
    ws: list[Weight] = []
    roots_in: dict[str, list] = {n.id: [] for n in q.gauge_nodes}
    roots_out: dict[str, list] = {n.id: [] for n in q.gauge_nodes}
    for e in q.edges:
        src_roots = node_roots(q, table, e.src, equivariant)
        dst_roots = node_roots(q, table, e.dst, equivariant)
        for _ in range(e.count):
            if e.dst in roots_in:
                roots_in[e.dst].extend(src_roots)
            if e.src in roots_out:
                roots_out[e.src].extend(dst_roots)
            for a, ra in enumerate(src_roots, start=1):
                for b, rb in enumerate(dst_roots, start=1):
                    form = rb - ra
                    gauge_part = []
                    if q.node(e.dst).kind == "gauge":
                        gauge_part.append((f"xi[{e.dst}][{b}]", 1))
                    if q.node(e.src).kind == "gauge":
                        gauge_part.append((f"xi[{e.src}][{a}]", -1))
                    ws.append(Weight(form, tuple(gauge_part)))
    return WeightData(q, table, equivariant, tuple(ws), roots_in, roots_out)


def gauge_blocks(q: Quiver, table: VarTable) -> BlockStructure:
    return BlockStructure(tuple(
        (n.id, tuple(f"xi[{n.id}][{j}]" for j in range(1, n.dim + 1)))
        for n in q.gauge_nodes
    ))


def cocharacter(q: Quiver, entries: Mapping[str, Sequence[int]]) -> dict:
    """Flatten {node id: per-slot ints} to {xi varname: int}."""
    out: dict[str, int] = {}
    for nid, vec in entries.items():
        if q.node(nid).kind != "gauge":
            raise QuiverFormatError(f"cocharacter on non-gauge node {nid!r}")
        if len(vec) != q.dim(nid):
            raise QuiverFormatError(f"cocharacter for node {nid!r} has wrong length")
        for j, v in enumerate(vec, start=1):
            if v:
                out[f"xi[{nid}][{j}]"] = v
    return out


def in_effective_cone(q: Quiver, entries: Mapping[str, Sequence[int]]) -> bool:
    """d lies in the effective cone when sgn(theta_k) d_j >= 0 for all slots."""
    for nid, vec in entries.items():
        s = 1 if q.theta(nid) > 0 else -1
        if any(s * v < 0 for v in vec):
            return False
    return True
