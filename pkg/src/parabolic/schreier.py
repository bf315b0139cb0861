"""Orbital Schreier graphs of the affine action, exact and partial.

Vertices are points of an orbit, edges are labeled by the positive
generators U and V only; inverse letters traverse edges backwards.  Two
builders are provided: the full orbit of (0, 0) modulo q, and the exact ball
of given radius around (0, 0) in the infinite orbit.  A vertex of a partial
graph is flagged complete when all four of its neighbours lie in the
explored region, which is what core certification relies on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .linear import Vec2
from .words import Word, concat, invert

_GEN_CHARS = ("U", "V")
_MAX_BALL_DEPTH = 16

_DOT_COLORS = {"U": "#1f77b4", "V": "#d62728"}


class OrbitalGraph:
    """Immutable labeled graph; per generator each vertex has at most one
    outgoing and one incoming edge, as in a folded Stallings graph."""

    __slots__ = ("vertices", "base", "modulus", "complete", "succ", "_pred", "_index")

    def __init__(
        self,
        vertices: list[Vec2],
        succ: list[tuple[int | None, int | None]],
        complete: list[bool],
        base: int = 0,
        modulus: int | None = None,
    ):
        n = len(vertices)
        if not (len(succ) == len(complete) == n):
            raise ValueError("vertices, succ and complete must have equal length")
        if not 0 <= base < n:
            raise ValueError(f"base {base} out of range")
        for v in vertices:
            if v.modulus != modulus:
                raise ValueError(f"vertex {v!r} does not carry graph modulus {modulus}")
        for pair in succ:
            for t in pair:
                if t is not None and not 0 <= t < n:
                    raise ValueError(f"edge target {t} out of range")
        self.vertices = list(vertices)
        self.succ = [tuple(pair) for pair in succ]
        self.complete = list(complete)
        self.base = base
        self.modulus = modulus
        self._index = {(v.x, v.y): i for i, v in enumerate(vertices)}
        if len(self._index) != n:
            raise ValueError("duplicate vertex points")
        self._pred: list[tuple[int | None, int | None]] | None = None
        self._check_connected()

    def _check_connected(self) -> None:
        n = len(self.vertices)
        seen = [False] * n
        seen[self.base] = True
        stack = [self.base]
        pred = self.pred
        while stack:
            v = stack.pop()
            for t in (*self.succ[v], *pred[v]):
                if t is not None and not seen[t]:
                    seen[t] = True
                    stack.append(t)
        if not all(seen):
            missing = seen.index(False)
            raise ValueError(f"vertex {missing} not reachable from base")

    @property
    def pred(self) -> list[tuple[int | None, int | None]]:
        if self._pred is None:
            n = len(self.vertices)
            back: list[list[int | None]] = [[None, None] for _ in range(n)]
            for src, pair in enumerate(self.succ):
                for g, tgt in enumerate(pair):
                    if tgt is None:
                        continue
                    if back[tgt][g] is not None:
                        raise ValueError(
                            f"two {_GEN_CHARS[g]}-edges enter vertex {tgt}; graph is not folded"
                        )
                    back[tgt][g] = src
            self._pred = [tuple(pair) for pair in back]
        return self._pred

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def fully_complete(self) -> bool:
        return all(self.complete)

    def vertex_id(self, point: Vec2 | tuple[int, int]) -> int | None:
        if isinstance(point, Vec2):
            if point.modulus not in (None, self.modulus):
                raise ValueError(f"point modulus {point.modulus} does not match graph")
            key = (point.x, point.y)
        else:
            key = point
        if self.modulus is not None:
            key = (key[0] % self.modulus, key[1] % self.modulus)
        return self._index.get(key)

    def step(self, vid: int, char: str) -> int | None:
        """Follow one letter from a vertex; None means the edge is missing."""
        if char == "U":
            return self.succ[vid][0]
        if char == "V":
            return self.succ[vid][1]
        if char == "u":
            return self.pred[vid][0]
        if char == "v":
            return self.pred[vid][1]
        raise ValueError(f"bad letter {char!r}")

    def degree(self, vid: int) -> int:
        return sum(t is not None for t in self.succ[vid]) + sum(
            t is not None for t in self.pred[vid]
        )

    def positive_edges(self) -> list[tuple[int, str, int]]:
        out = []
        for src, pair in enumerate(self.succ):
            for g, tgt in enumerate(pair):
                if tgt is not None:
                    out.append((src, _GEN_CHARS[g], tgt))
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, OrbitalGraph)
            and self.modulus == other.modulus
            and self.base == other.base
            and self.vertices == other.vertices
            and self.succ == other.succ
            and self.complete == other.complete
        )


def _orbit_mod_q(q: int) -> tuple[list[int], list[int], list[int]]:
    """Breadth-first closure of the orbit of (0, 0) mod q.

    Returns (codes in discovery order, U-successor ids, V-successor ids)
    with points encoded as x * q + y.  Neighbours are visited in letter
    order U, V, U^-1, V^-1.  Shared by build_mod_q and stabilizer_index.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    ids = [-1] * (q * q)
    order = [0]
    ids[0] = 0
    succ_u: list[int] = []
    succ_v: list[int] = []
    i = 0
    while i < len(order):
        code = order[i]
        i += 1
        x, y = divmod(code, q)
        a = ((x + 2 * y) % q) * q + (y + 1) % q
        b = ((x + 1) % q) * q + (2 * x + y) % q
        c = ((x - 2 * y + 2) % q) * q + (y - 1) % q
        d = ((x - 1) % q) * q + (y - 2 * x + 2) % q
        for t in (a, b, c, d):
            if ids[t] < 0:
                ids[t] = len(order)
                order.append(t)
        succ_u.append(ids[a])
        succ_v.append(ids[b])
    return order, succ_u, succ_v


def build_mod_q(q: int) -> OrbitalGraph:
    """Orbital graph of the action on (Z/qZ)^2, complete by construction."""
    order, succ_u, succ_v = _orbit_mod_q(q)
    vertices = [Vec2(*divmod(code, q), modulus=q) for code in order]
    succ = list(zip(succ_u, succ_v))
    return OrbitalGraph(vertices, succ, [True] * len(order), base=0, modulus=q)


def _neighbours(x: int, y: int) -> tuple[tuple[int, int], ...]:
    # letter order U, V, U^-1, V^-1
    return (
        (x + 2 * y, y + 1),
        (x + 1, 2 * x + y),
        (x - 2 * y + 2, y - 1),
        (x - 1, y - 2 * x + 2),
    )


def build_ball(depth: int) -> OrbitalGraph:
    """Every orbit point within graph distance `depth` of (0, 0), exactly.

    Edges are recorded whenever both endpoints were explored; a vertex is
    complete iff all four neighbours were explored.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if depth > _MAX_BALL_DEPTH:
        raise ValueError(f"depth {depth} exceeds the guard {_MAX_BALL_DEPTH}")
    index = {(0, 0): 0}
    points = [(0, 0)]
    frontier = [(0, 0)]
    for _ in range(depth):
        nxt = []
        for x, y in frontier:
            for p in _neighbours(x, y):
                if p not in index:
                    index[p] = len(points)
                    points.append(p)
                    nxt.append(p)
        frontier = nxt
    succ = []
    complete = []
    for x, y in points:
        nb = _neighbours(x, y)
        succ.append((index.get(nb[0]), index.get(nb[1])))
        complete.append(all(p in index for p in nb))
    vertices = [Vec2(x, y) for x, y in points]
    return OrbitalGraph(vertices, succ, complete, base=0, modulus=None)


def trace(g: OrbitalGraph, w: Word, start: int) -> int | None:
    """Endpoint of the path labeled w from start, rightmost letter first;
    None if the path leaves the explored region."""
    if not 0 <= start < len(g.vertices):
        raise ValueError(f"start {start} out of range")
    cur: int | None = start
    for c in reversed(w.text):
        cur = g.step(cur, c)
        if cur is None:
            return None
    return cur


def is_loop_at_base(g: OrbitalGraph, w: Word) -> bool:
    if not g.fully_complete:
        raise ValueError("loop queries need a fully complete graph")
    return trace(g, w, g.base) == g.base


@dataclass(frozen=True)
class CoreReport:
    """Result of a core computation.

    kind is "exact" when the whole graph was available and hanging trees
    were pruned, or "certified-lower-bound" when membership was certified
    vertex by vertex with a witness loop inside the complete region.
    """

    kind: str
    core_vertices: frozenset[int]
    witness: Word | None


def core_exact(g: OrbitalGraph) -> CoreReport:
    """Iteratively delete vertices of undirected degree <= 1.

    Only meaningful when the graph is the whole orbit, so partial graphs are
    rejected; a self-loop contributes 2 to the degree and never prunes.
    """
    if not g.fully_complete:
        raise ValueError("core_exact needs a fully complete graph")
    n = len(g.vertices)
    pred = g.pred
    deg = [g.degree(v) for v in range(n)]
    alive = [True] * n
    stack = [v for v in range(n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v] or deg[v] > 1:
            continue
        alive[v] = False
        for t in (*g.succ[v], *pred[v]):
            if t is not None and alive[t]:
                deg[t] -= 1
                if deg[t] <= 1:
                    stack.append(t)
    return CoreReport("exact", frozenset(v for v in range(n) if alive[v]), None)


def certified_core(g: OrbitalGraph, witness: Word) -> CoreReport:
    """Vertices whose witness loop closes up inside the complete region.

    Sound for partial graphs: every certified vertex lies on a nontrivial
    reduced loop of the full orbital graph, so the true core contains all of
    them.  The count can only grow as the explored region grows.
    """
    if witness.is_identity():
        raise ValueError("certified_core needs a nonempty witness word")
    seq = witness.text[::-1]
    found = []
    complete = g.complete
    for v in range(len(g.vertices)):
        cur: int | None = v
        for c in seq:
            if not complete[cur]:
                cur = None
                break
            cur = g.step(cur, c)
            if cur is None:
                break
        if cur == v:
            found.append(v)
    return CoreReport("certified-lower-bound", frozenset(found), witness)


def spanning_tree_generators(g: OrbitalGraph) -> list[Word]:
    """Schreier generators read off a breadth-first spanning tree.

    Tree edges are chosen in letter order U, V, U^-1, V^-1, then discovery
    order.  Every positive non-tree edge (p, g, p') contributes the loop
    invert(t_p') g t_p at the base, and for a complete graph on n vertices
    exactly n + 1 words come out.
    """
    if not g.fully_complete:
        raise ValueError("spanning_tree_generators needs a fully complete graph")
    n = len(g.vertices)
    tree_word: list[Word | None] = [None] * n
    tree_word[g.base] = Word._raw("")
    tree_edges: set[tuple[int, int, int]] = set()
    queue = [g.base]
    qi = 0
    while qi < len(queue):
        p = queue[qi]
        qi += 1
        for c in "UVuv":
            t = g.step(p, c)
            if t is None or tree_word[t] is not None:
                continue
            tree_word[t] = concat(Word._raw(c), tree_word[p])
            if c == "U":
                tree_edges.add((p, 0, t))
            elif c == "V":
                tree_edges.add((p, 1, t))
            elif c == "u":
                tree_edges.add((t, 0, p))
            else:
                tree_edges.add((t, 1, p))
            queue.append(t)
    if any(w is None for w in tree_word):
        raise ValueError("graph is not connected")
    out = []
    for p in range(n):
        for gidx, c in enumerate(_GEN_CHARS):
            t = g.succ[p][gidx]
            if t is None or (p, gidx, t) in tree_edges:
                continue
            out.append(concat(concat(invert(tree_word[t]), Word._raw(c)), tree_word[p]))
    return out


def export(g: OrbitalGraph, fmt: str) -> str:
    if fmt == "dot":
        return export_dot(g)
    if fmt == "json":
        return export_json(g)
    raise ValueError(f"format must be 'dot' or 'json', got {fmt!r}")


def export_dot(g: OrbitalGraph) -> str:
    """Graphviz rendering: base doubly circled, incomplete vertices dashed,
    U-edges and V-edges in distinct colors."""
    lines = ["digraph orbital {", "  rankdir=LR;", '  node [shape=circle, fontsize=10];']
    for i, v in enumerate(g.vertices):
        attrs = [f'label="({v.x}, {v.y})"']
        if i == g.base:
            attrs.append("peripheries=2")
        if not g.complete[i]:
            attrs.append("style=dashed")
        lines.append(f"  v{i} [{', '.join(attrs)}];")
    for src, gen, tgt in g.positive_edges():
        lines.append(f'  v{src} -> v{tgt} [label="{gen}", color="{_DOT_COLORS[gen]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g: OrbitalGraph) -> str:
    obj = {
        "modulus": g.modulus,
        "base": g.base,
        "vertices": [
            {"id": i, "x": v.x, "y": v.y, "complete": g.complete[i]}
            for i, v in enumerate(g.vertices)
        ],
        "edges": [{"from": s, "to": t, "gen": gen} for s, gen, t in g.positive_edges()],
    }
    return json.dumps(obj, indent=2) + "\n"


def graph_from_json(text: str) -> OrbitalGraph:
    obj = json.loads(text)
    modulus = obj["modulus"]
    raw = obj["vertices"]
    for i, rec in enumerate(raw):
        if rec["id"] != i:
            raise ValueError(f"vertex ids must be consecutive, got {rec['id']} at {i}")
    vertices = [Vec2(rec["x"], rec["y"], modulus) for rec in raw]
    succ: list[list[int | None]] = [[None, None] for _ in raw]
    for e in obj["edges"]:
        succ[e["from"]][_GEN_CHARS.index(e["gen"])] = e["to"]
    complete = [bool(rec["complete"]) for rec in raw]
    return OrbitalGraph(
        vertices, [tuple(p) for p in succ], complete, base=obj["base"], modulus=modulus
    )


def check_edge_consistency(g: OrbitalGraph) -> None:
    """Audit that every stored edge matches the affine action, and that a
    complete vertex has all four incident edges.  Raises on any mismatch."""
    from .action import step

    for vid, v in enumerate(g.vertices):
        for gidx, c in enumerate(_GEN_CHARS):
            expected = step(c, v)
            tgt = g.succ[vid][gidx]
            if tgt is not None and g.vertices[tgt] != expected:
                raise AssertionError(
                    f"edge {vid} -{c}-> {tgt} disagrees with the action at {v}"
                )
        if g.complete[vid] and g.degree(vid) != 4:
            raise AssertionError(f"complete vertex {vid} is missing incident edges")
