"""
The graph Gamma(C) on a class of p-elements, its components and component
groups, strongly embedded subgroups, and the two structural checks built on
them (the involution-graph dichotomy and component-in-stabilizer).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .actions import CosetAction, decide_binary
from .errors import MultipleInvolutionClassesError, PreconditionError
from .groups import (ConjClass, FiniteGroup, Subgroup, closure, conjugates, conjugating_element,
                     normalizer, set_stabilizer)


@dataclass
class CommGraph:
    """Undirected simple graph on labelled vertices.

    ``edges`` holds vertex positions (i < j); ``comp`` the component of each
    position, components numbered by their smallest position.
    """
    vertices: np.ndarray
    edges: np.ndarray
    label: str = ""
    comp: np.ndarray = field(init=False)

    def __post_init__(self):
        n = len(self.vertices)
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        self.edges = e
        if n == 0:
            self.comp = np.zeros(0, dtype=np.int64)
            return
        adj = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
        _, lab = connected_components(adj, directed=False)
        # renumber so that component ids follow smallest member
        first = np.full(lab.max() + 1, n)
        np.minimum.at(first, lab, np.arange(n))
        order = np.argsort(first)
        remap = np.empty_like(order)
        remap[order] = np.arange(order.size)
        self.comp = remap[lab]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def num_components(self) -> int:
        return int(self.comp.max()) + 1 if self.n else 0

    def component(self, k: int) -> np.ndarray:
        return self.vertices[self.comp == k]

    def component_of(self, v) -> np.ndarray:
        pos = int(np.searchsorted(self.vertices, v))
        return self.component(int(self.comp[pos]))

    def component_sizes(self) -> list[int]:
        return np.bincount(self.comp).tolist() if self.n else []

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        np.add.at(d, self.edges[:, 0], 1)
        np.add.at(d, self.edges[:, 1], 1)
        return d

    def is_connected(self) -> bool:
        return self.num_components <= 1

    def induced(self, verts, label: str = "") -> "CommGraph":
        verts = np.unique(np.asarray(verts))
        keep = np.zeros(self.n, dtype=bool)
        pos = np.searchsorted(self.vertices, verts)
        keep[pos] = True
        newpos = np.cumsum(keep) - 1
        e = self.edges[keep[self.edges[:, 0]] & keep[self.edges[:, 1]]]
        return CommGraph(self.vertices[keep], newpos[e], label or self.label)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        a[self.edges[:, 0], self.edges[:, 1]] = True
        a[self.edges[:, 1], self.edges[:, 0]] = True
        return a


def gamma_graph(G: FiniteGroup, C: ConjClass) -> CommGraph:
    """x ~ y iff xy = yx and (xy^-1 in C or yx^-1 in C)."""
    if C.element_order == 1:
        raise PreconditionError("Gamma(C) needs a class of nontrivial p-elements")
    V = C.members
    inC = C.mask
    inv = G.inv
    edges = []
    step = max(1, 400_000 // max(1, V.size))
    for s in range(0, V.size, step):
        xs = V[s:s + step, None]
        ys = V[None, :]
        xy = G.mul(xs, ys)
        comm = xy == G.mul(ys, xs)
        rel = inC[G.mul(xs, inv[ys])] | inC[G.mul(ys, inv[xs])]
        i, j = np.nonzero(comm & rel)
        i = i + s
        keep = i < j
        edges.append(np.stack([i[keep], j[keep]], axis=1))
    e = np.concatenate(edges) if edges else np.zeros((0, 2), dtype=np.int64)
    return CommGraph(V, e, f"Gamma({G.label}, class {C.index})")


def component_group(G: FiniteGroup, graph: CommGraph, g: int, label: str = "") -> Subgroup:
    comp = graph.component_of(g)
    return G.subgroup(comp, label or "component group")


def component_groups_conjugate(G: FiniteGroup, graph: CommGraph) -> bool:
    """All component groups of the graph are conjugate to the first one."""
    reps = [int(graph.component(k)[0]) for k in range(graph.num_components)]
    groups = [component_group(G, graph, r) for r in reps]
    return all(conjugating_element(groups[0], S) is not None for S in groups[1:])


def is_strongly_embedded(G: FiniteGroup, N: Subgroup) -> bool:
    """|N ∩ N^g| odd for every g outside N."""
    if N.order == G.order:
        raise PreconditionError("N must be proper")
    if N.order % 2:
        raise PreconditionError("N must have even order")
    if normalizer(G, N).order != N.order:
        return False  # some g outside N has N^g = N
    for C in conjugates(N):
        if C.same_as(N):
            continue
        if int(C.mask[N.members].sum()) % 2 == 0:
            return False
    return True


@dataclass
class DichotomyReport:
    group: str
    class_size: int
    components: list
    branch: str                     # "connected" or "strongly-embedded"
    N_order: int | None = None
    strongly_embedded: bool | None = None
    readings_agree: bool | None = None
    holds: bool = True
    graph: CommGraph | None = None

    def as_dict(self) -> dict:
        return {"group": self.group, "class_size": self.class_size,
                "component_sizes": self.components, "branch": self.branch,
                "N_order": self.N_order, "strongly_embedded": self.strongly_embedded,
                "readings_agree": self.readings_agree, "holds": self.holds}


def check_aschbacher_dichotomy(G: FiniteGroup) -> DichotomyReport:
    """Either Gamma of the involution class is connected, or the setwise
    stabilizer N of a component is strongly embedded.  The normalizer of the
    component group is computed too, and the two readings of N compared."""
    inv = G.involution_classes()
    if len(inv) != 1:
        raise MultipleInvolutionClassesError(f"{G.label} has {len(inv)} involution classes")
    C = inv[0]
    graph = gamma_graph(G, C)
    sizes = graph.component_sizes()
    if graph.is_connected():
        return DichotomyReport(G.label, C.size, sizes, "connected", holds=True, graph=graph)
    X = graph.component(0)
    N = set_stabilizer(G, X, "N(X)")
    N2 = normalizer(G, G.subgroup(X), "N(<X>)")
    se = is_strongly_embedded(G, N)
    return DichotomyReport(G.label, C.size, sizes, "strongly-embedded", N.order, se,
                           N.same_as(N2), holds=se, graph=graph)


def point_fixity(A: CosetAction, g: int) -> int:
    return int((A.perm(g) == np.arange(A.n)).sum())


def max_fixity_class(G: FiniteGroup, A: CosetAction, p: int) -> ConjClass:
    """Class of p-elements whose members fix the most points (ties: lowest index)."""
    best, best_fix = None, -1
    for C in G.conjugacy_classes():
        o = C.element_order
        if o == 1:
            continue
        while o % p == 0:
            o //= p
        if o != 1:
            continue
        f = point_fixity(A, C.rep)
        if f > best_fix:
            best, best_fix = C, f
    if best is None:
        raise PreconditionError(f"{G.label} has no elements of order a power of {p}")
    return best


@dataclass
class ContainmentReport:
    p: int
    class_index: int
    fixity: int
    checked: int
    component_orders: list
    holds: bool

    def as_dict(self) -> dict:
        return {"p": self.p, "class": self.class_index, "fixity": self.fixity,
                "elements_checked": self.checked, "component_orders": self.component_orders,
                "holds": self.holds}


def check_component_in_stabilizer(G: FiniteGroup, H: Subgroup, p: int,
                                  require_binary: bool = True) -> ContainmentReport:
    """For a binary action on (G:H): every g in C ∩ H (C of maximal p-fixity)
    has its component group inside H."""
    if H.order % p:
        raise PreconditionError(f"{p} does not divide |H|")
    A = CosetAction(G, H)
    if require_binary and decide_binary(G, H, A).status != "Binary":
        raise PreconditionError("the action is not binary")
    C = max_fixity_class(G, A, p)
    graph = gamma_graph(G, C)
    gs = H.members[C.mask[H.members]]
    orders, holds = set(), True
    done = set()
    for g in gs:
        k = int(graph.comp[np.searchsorted(graph.vertices, g)])
        if k in done:
            continue
        done.add(k)
        mem = closure(G, graph.component(k))
        orders.add(int(mem.size))
        holds &= bool(H.mask[mem].all())
    return ContainmentReport(p, C.index, point_fixity(A, C.rep), int(gs.size),
                             sorted(orders), holds)


@dataclass
class EdgeProfile:
    vertices: int
    edges: int
    degree_histogram: dict
    component_sizes: list

    def as_dict(self) -> dict:
        return {"vertices": self.vertices, "edges": self.edges,
                "degree_histogram": self.degree_histogram,
                "component_sizes": self.component_sizes}


def edge_count_profile(graph: CommGraph) -> EdgeProfile:
    d = graph.degrees()
    vals, counts = np.unique(d, return_counts=True)
    return EdgeProfile(graph.n, int(len(graph.edges)),
                       {int(v): int(c) for v, c in zip(vals, counts)},
                       sorted(graph.component_sizes(), reverse=True))


_PALETTE = ["lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon",
            "lightcyan", "wheat", "thistle", "honeydew"]


def to_dot(graph: CommGraph, orders=None, name: str = "G") -> str:
    """DOT text; vertices labelled by index (and element order), coloured by component."""
    safe = "".join(ch if ch.isalnum() else "_" for ch in name)
    lines = [f"graph {safe} {{", "  node [style=filled];"]
    for i, v in enumerate(graph.vertices):
        lab = str(int(v)) if orders is None else f"{int(v)} (o{int(orders[v])})"
        col = _PALETTE[int(graph.comp[i]) % len(_PALETTE)]
        lines.append(f'  v{i} [label="{lab}", fillcolor={col}];')
    for a, b in graph.edges:
        lines.append(f"  v{int(a)} -- v{int(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
