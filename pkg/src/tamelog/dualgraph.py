"""Weighted dual graphs of strict normal crossings curve fibres.

Vertices are components (multiplicity, genus, self-intersection); edges are
intersection points. Loops stand for self-crossings and are only accepted
when ``allow_loops`` is set.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Optional

from .errors import InvalidGraph, NotContractible, UnsupportedType
from .fan import FanPoint, KatoFan, require_prime
from .model import LogModel, StratumData

GENERIC_ID = "eta"


@dataclass(frozen=True)
class Vertex:
    id: str
    mult: int
    genus: int = 0
    self_int: int = 0


def _edge(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True, eq=False)
class DualGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...] = ()
    strict_fibre: bool = False
    allow_loops: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(_edge(str(a), str(b)) for a, b in self.edges))
        if not self.vertices:
            raise InvalidGraph("a dual graph needs at least one vertex")
        ids = [v.id for v in self.vertices]
        dup = [i for i, c in Counter(ids).items() if c > 1]
        if dup:
            raise InvalidGraph(f"duplicate vertex ids {sorted(dup)}")
        for v in self.vertices:
            if v.mult < 1:
                raise InvalidGraph(f"vertex {v.id!r}: multiplicity ≥ 1")
            if v.genus < 0:
                raise InvalidGraph(f"vertex {v.id!r}: genus ≥ 0")
        known = set(ids)
        for a, b in self.edges:
            if a not in known or b not in known:
                raise InvalidGraph(f"edge ({a}, {b}) names an unknown vertex")
            if a == b and not self.allow_loops:
                raise InvalidGraph(f"loop at {a!r} (set allow_loops for self-crossing components)")
        if not self._connected():
            raise InvalidGraph("dual graph is not connected")
        if self.strict_fibre:
            bad = {k: d for k, d in self.fibre_defects().items() if d}
            if bad:
                raise InvalidGraph(f"fibre intersection is nonzero at {bad}")

    def _connected(self) -> bool:
        adj = {v.id: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        start = self.vertices[0].id
        seen = {start}
        stack = [start]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(adj)

    def _key(self):
        return (sorted(self.vertices, key=lambda v: v.id), sorted(self.edges))

    def __eq__(self, other):
        if not isinstance(other, DualGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash((tuple(self._key()[0]), tuple(self._key()[1])))

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise InvalidGraph(f"no vertex {vid!r}")

    def degree(self, vid: str) -> int:
        """Edge-endpoints at ``vid``; a loop counts twice."""
        return sum((a == vid) + (b == vid) for a, b in self.edges)

    def loops(self, vid: str) -> int:
        return sum(1 for a, b in self.edges if a == b == vid)

    def neighbors(self, vid: str) -> list[str]:
        """Other endpoints of the non-loop edges at ``vid``, with repetition."""
        out = []
        for a, b in self.edges:
            if a == b:
                continue
            if a == vid:
                out.append(b)
            elif b == vid:
                out.append(a)
        return out

    def fibre_defects(self) -> dict[str, int]:
        """Intersection number of each component with the whole fibre."""
        mult = {v.id: v.mult for v in self.vertices}
        return {
            v.id: v.mult * v.self_int + sum(mult[w] for w in self.neighbors(v.id)) for v in self.vertices
        }

    def multiplicity_gcd(self) -> int:
        g = 0
        for v in self.vertices:
            g = gcd(g, v.mult)
        return g

    def generic_euler(self) -> Optional[int]:
        """Euler characteristic of the generic fibre by adjunction, when the
        multiplicities and self-intersections form a fibre."""
        if any(self.fibre_defects().values()):
            return None
        twice_g_minus_2 = sum(
            v.mult * (2 * (v.genus + self.loops(v.id)) - 2 - v.self_int) for v in self.vertices
        )
        return -twice_g_minus_2

    def euler_number(self) -> int:
        """Topological Euler number of the fibre: open strata plus crossing points."""
        return sum(2 - 2 * v.genus - self.degree(v.id) for v in self.vertices) + len(self.edges)


def strata_model(g: DualGraph, p: int, log_smooth_claimed: bool = False) -> LogModel:
    """The log model whose fan has a codim-1 point per component and a
    codim-2 point per crossing."""
    require_prime(p)
    ids = {v.id for v in g.vertices}
    if GENERIC_ID in ids:
        raise InvalidGraph(f"vertex id {GENERIC_ID!r} is reserved for the generic point")
    mult = {v.id: v.mult for v in g.vertices}
    points = [FanPoint(GENERIC_ID, 0, 1)]
    strata = {GENERIC_ID: StratumData(GENERIC_ID, g.generic_euler(), 2)}
    specs = []
    for v in g.vertices:
        points.append(FanPoint(v.id, 1, v.mult))
        strata[v.id] = StratumData(v.id, 2 - 2 * v.genus - g.degree(v.id), 1, v.genus)
    for k, (a, b) in enumerate(sorted(g.edges)):
        eid = f"{a}~{b}#{k}"
        while eid in ids:
            eid += "'"
        points.append(FanPoint(eid, 2, gcd(mult[a], mult[b])))
        strata[eid] = StratumData(eid, 1, 0)
        specs.append((a, eid))
        if b != a:
            specs.append((b, eid))
    return LogModel(KatoFan(tuple(points), tuple(specs)), strata, p, log_smooth_claimed)


@dataclass(frozen=True)
class SaitoVerdict:
    passed: bool
    reasons: dict[str, str] = field(default_factory=dict)
    offenders: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {"passed": self.passed, "reasons": dict(sorted(self.reasons.items())), "offenders": list(self.offenders)}


def saito_check(g: DualGraph, p: int) -> SaitoVerdict:
    """Every component with multiplicity divisible by ``p`` must be a smooth
    rational curve meeting exactly two other components, both of
    multiplicity prime to ``p``."""
    require_prime(p)
    mult = {v.id: v.mult for v in g.vertices}
    reasons = {}
    offenders = []
    for v in g.vertices:
        if v.mult % p:
            continue
        if g.loops(v.id):
            raise InvalidGraph(f"vertex {v.id!r} has multiplicity divisible by {p} and a loop")
        nbrs = g.neighbors(v.id)
        problems = []
        if v.genus != 0:
            problems.append(f"genus {v.genus}")
        if len(nbrs) != 2 or nbrs[0] == nbrs[1]:
            problems.append(f"meets {len(nbrs)} component branch(es) {sorted(nbrs)}, need two distinct")
        wild = sorted(w for w in set(nbrs) if mult[w] % p == 0)
        if wild:
            problems.append(f"neighbours {wild} have multiplicity divisible by {p}")
        if problems:
            reasons[v.id] = "; ".join(problems)
            offenders.append(v.id)
        else:
            reasons[v.id] = "rational bridge between two prime-to-p components"
    return SaitoVerdict(not offenders, reasons, tuple(offenders))


def scale(g: DualGraph, m: int) -> DualGraph:
    """Multiply every multiplicity by ``m``."""
    if m < 1:
        raise ValueError("scale factor must be positive")
    return replace(g, vertices=tuple(replace(v, mult=v.mult * m) for v in g.vertices))


def _with_self(vertices, changes: dict[str, int]):
    return tuple(replace(v, self_int=v.self_int + changes.get(v.id, 0)) for v in vertices)


def contract(g: DualGraph, vid: str, p: int) -> tuple[DualGraph, bool]:
    """Blow down the (-1)-curve ``vid``.

    Returns the new graph and whether log smoothness is preserved: always
    for a curve between two components, and for a tail only when both
    multiplicities are prime to ``p``.
    """
    require_prime(p)
    e = g.vertex(vid)
    if e.genus != 0 or e.self_int != -1:
        raise NotContractible(f"{vid!r} is not a smooth rational (-1)-curve")
    if g.loops(vid):
        raise NotContractible(f"{vid!r} has a self-crossing")
    nbrs = g.neighbors(vid)
    if len(nbrs) not in (1, 2):
        raise NotContractible(f"{vid!r} meets {len(nbrs)} component branches; need one or two")
    if len(nbrs) == 2 and nbrs[0] == nbrs[1]:
        raise NotContractible(f"{vid!r} meets {nbrs[0]!r} twice; blowing it down leaves a non-strict crossing")
    vertices = tuple(v for v in g.vertices if v.id != vid)
    edges = [ed for ed in g.edges if vid not in ed]
    vertices = _with_self(vertices, {n: 1 for n in nbrs})
    if len(nbrs) == 2:
        edges.append(_edge(nbrs[0], nbrs[1]))
        preserved = True
    else:
        preserved = e.mult % p != 0 and g.vertex(nbrs[0]).mult % p != 0
    return replace(g, vertices=vertices, edges=tuple(edges)), preserved


def contractible(g: DualGraph) -> list[str]:
    """Vertices :func:`contract` accepts, in vertex order."""
    out = []
    for v in g.vertices:
        if v.genus or v.self_int != -1 or g.loops(v.id):
            continue
        nbrs = g.neighbors(v.id)
        if len(nbrs) == 1 or (len(nbrs) == 2 and nbrs[0] != nbrs[1]):
            out.append(v.id)
    return out


def contract_all(g: DualGraph, p: int) -> tuple[DualGraph, list[tuple[str, bool]]]:
    """Blow down contractible curves (first in vertex order) until none is left."""
    steps = []
    while True:
        todo = contractible(g)
        if not todo:
            return g, steps
        g, ok = contract(g, todo[0], p)
        steps.append((todo[0], ok))


def blow_up_point(g: DualGraph, vid: str, new_id: str) -> DualGraph:
    """Blow up a point of component ``vid`` lying on no other component."""
    a = g.vertex(vid)
    if any(v.id == new_id for v in g.vertices):
        raise InvalidGraph(f"vertex id {new_id!r} already used")
    vertices = _with_self(g.vertices, {vid: -1}) + (Vertex(new_id, a.mult, 0, -1),)
    return replace(g, vertices=vertices, edges=g.edges + (_edge(vid, new_id),))


def blow_up_edge(g: DualGraph, a: str, b: str, new_id: str) -> DualGraph:
    """Blow up one crossing point of ``a`` and ``b`` (a node of ``a`` when ``a == b``)."""
    key = _edge(a, b)
    if key not in g.edges:
        raise InvalidGraph(f"no crossing between {a!r} and {b!r}")
    if any(v.id == new_id for v in g.vertices):
        raise InvalidGraph(f"vertex id {new_id!r} already used")
    edges = list(g.edges)
    edges.remove(key)
    ma, mb = g.vertex(a).mult, g.vertex(b).mult
    if a == b:
        vertices = _with_self(g.vertices, {a: -4}) + (Vertex(new_id, 2 * ma, 0, -1),)
        edges += [_edge(a, new_id), _edge(a, new_id)]
    else:
        vertices = _with_self(g.vertices, {a: -1, b: -1}) + (Vertex(new_id, ma + mb, 0, -1),)
        edges += [_edge(a, new_id), _edge(new_id, b)]
    return replace(g, vertices=vertices, edges=tuple(edges))


KODAIRA_SYMBOLS = ("I", "I*", "II", "III", "IV", "II*", "III*", "IV*")


@dataclass(frozen=True)
class KodairaType:
    symbol: str
    n: int = 0

    def __post_init__(self):
        if self.symbol not in KODAIRA_SYMBOLS:
            raise UnsupportedType(f"unknown Kodaira symbol {self.symbol!r}")
        if self.n < 0:
            raise UnsupportedType("n ≥ 0")
        if self.n and self.symbol not in ("I", "I*"):
            raise UnsupportedType(f"type {self.symbol} takes no index")

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "KodairaType":
        """Accepts ``I``/``I*`` with ``n`` given separately, or forms like ``I3``, ``I0*``, ``IV*``."""
        text = text.strip()
        if text in KODAIRA_SYMBOLS and text not in ("I", "I*"):
            return cls(text)
        mt = re.fullmatch(r"I(\d*)(\*?)", text)
        if not mt:
            raise UnsupportedType(f"unknown Kodaira symbol {text!r}")
        if mt.group(1) and n is not None and int(mt.group(1)) != n:
            raise UnsupportedType(f"conflicting indices in {text!r} and n={n}")
        index = int(mt.group(1)) if mt.group(1) else (n or 0)
        return cls("I" + mt.group(2), index)

    def __str__(self) -> str:
        if self.symbol == "I":
            return f"I{self.n}"
        if self.symbol == "I*":
            return f"I{self.n}*"
        return self.symbol


def _graph(rows, edges, **kw) -> DualGraph:
    return DualGraph(tuple(Vertex(i, m, g, s) for i, m, g, s in rows), tuple(edges), strict_fibre=True, **kw)


def _chain(ids):
    return list(zip(ids, ids[1:]))


def kodaira(t: KodairaType, nodal: bool = False) -> DualGraph:
    """Minimal strict normal crossings dual graph of a Kodaira fibre type.

    I0 is a smooth genus-1 component. I1, II, III and IV are returned in
    their resolved forms (a nodal, cuspidal, tangential or triple-point
    configuration blown up until the crossings are strict). ``nodal=True``
    returns I1 as the classical nodal curve, a single vertex with a loop.
    """
    s, n = t.symbol, t.n
    if s == "I":
        if n == 0:
            return _graph([("C", 1, 1, 0)], [])
        if n == 1:
            nodal_curve = _graph([("C0", 1, 0, 0)], [("C0", "C0")], allow_loops=True)
            if nodal:
                return nodal_curve
            return replace(blow_up_edge(nodal_curve, "C0", "C0", "E"), allow_loops=False)
        ids = [f"C{i}" for i in range(n)]
        return _graph([(i, 1, 0, -2) for i in ids], _chain(ids + ids[:1]))
    if s == "I*":
        chain = [f"M{i}" for i in range(n + 1)]
        tips = ["T1", "T2", "T3", "T4"]
        edges = _chain(chain) + [("T1", chain[0]), ("T2", chain[0]), ("T3", chain[-1]), ("T4", chain[-1])]
        return _graph([(i, 1, 0, -2) for i in tips] + [(i, 2, 0, -2) for i in chain], edges)
    if s == "II":
        return _graph(
            [("C", 1, 0, -6), ("E2", 2, 0, -3), ("E3", 3, 0, -2), ("E6", 6, 0, -1)],
            [("C", "E6"), ("E2", "E6"), ("E3", "E6")],
        )
    if s == "III":
        return _graph(
            [("C1", 1, 0, -4), ("C2", 1, 0, -4), ("E2", 2, 0, -2), ("E4", 4, 0, -1)],
            [("C1", "E4"), ("C2", "E4"), ("E2", "E4")],
        )
    if s == "IV":
        return _graph(
            [("C1", 1, 0, -3), ("C2", 1, 0, -3), ("C3", 1, 0, -3), ("E3", 3, 0, -1)],
            [("C1", "E3"), ("C2", "E3"), ("C3", "E3")],
        )
    if s == "IV*":
        rows = [("Z", 3, 0, -2)]
        edges = []
        for arm in "ABC":
            rows += [(f"{arm}1", 2, 0, -2), (f"{arm}0", 1, 0, -2)]
            edges += [("Z", f"{arm}1"), (f"{arm}1", f"{arm}0")]
        return _graph(rows, edges)
    if s == "III*":
        mults = {"L1": 1, "L2": 2, "L3": 3, "Z": 4, "R3": 3, "R2": 2, "R1": 1, "B": 2}
        return _graph(
            [(i, m, 0, -2) for i, m in mults.items()],
            _chain(["L1", "L2", "L3", "Z", "R3", "R2", "R1"]) + [("Z", "B")],
        )
    if s == "II*":
        mults = {"Z": 6, "B": 3, "S4": 4, "S2": 2, "L5": 5, "L4": 4, "L3": 3, "L2": 2, "L1": 1}
        return _graph(
            [(i, m, 0, -2) for i, m in mults.items()],
            [("Z", "B")] + _chain(["Z", "S4", "S2"]) + _chain(["Z", "L5", "L4", "L3", "L2", "L1"]),
        )
    raise UnsupportedType(f"unsupported Kodaira type {t}")


def to_dot(g: DualGraph) -> str:
    """Graphviz text; vertex labels are ``mult:genus:self``."""
    lines = ["graph G {"]
    for v in g.vertices:
        lines.append(f'  "{v.id}" [label="{v.mult}:{v.genus}:{v.self_int}"];')
    for a, b in g.edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
