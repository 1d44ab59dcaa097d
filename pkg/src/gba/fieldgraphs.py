"""
Field-side graphs: cubes in GF(q^2) (q = 2^(2a+1)), squares in odd GF(q), the
consecutive-squares count, and the quadratic used to build order-3 triples in
PSL2(q).  Everything is exhaustive at fixed q.
"""

from __future__ import annotations

import csv
import io
from functools import reduce
from math import gcd
from dataclasses import asdict, dataclass

import numpy as np

from .errors import EvenQError, NotApplicableError, WrongFieldShapeError
from .ffield import FieldSpec, field_of_order, make_field, prime_power, solve_quadratic, subfield_codes
from .gamma import CommGraph, to_dot


def gf2_rank(vectors) -> int:
    """Rank over GF(2) of integers read as bit vectors (xor basis)."""
    basis: list[int] = []
    for v in vectors:
        v = int(v)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def _graph_from_adjacency(verts: np.ndarray, adj: np.ndarray, label: str) -> CommGraph:
    i, j = np.nonzero(np.triu(adj, 1))
    return CommGraph(verts, np.stack([i, j], axis=1), label)


# -- cubes ------------------------------------------------------------------------------------

@dataclass
class CubeReport:
    q: int
    field_order: int
    cubes: int
    connected: bool
    components: int
    span_dim: int
    span_full: bool
    subfield_neighbours_of_one: bool
    roots_neighbours_of_one: bool       # x^((q+1)/3) = 1, x != 1
    neighbours_generate: bool           # neighbours of 1 generate the cube group

    def as_dict(self) -> dict:
        return asdict(self)


def cube_graph(q: int) -> tuple[CommGraph, FieldSpec]:
    pa = prime_power(q)
    if pa is None or pa[0] != 2 or pa[1] % 2 == 0 or q < 8:
        raise WrongFieldShapeError(f"need q = 2^(2a+1) with a >= 1, got {q}")
    if q * q > 4096:
        raise WrongFieldShapeError(f"q^2 = {q * q} exceeds 4096")
    F = make_field(2, 2 * pa[1])
    cubes = np.unique(F.pow(np.arange(1, F.q), 3))
    inC = np.zeros(F.q, dtype=bool)
    inC[cubes] = True
    adj = inC[F.add(cubes[:, None], cubes[None, :])]
    np.fill_diagonal(adj, False)
    return _graph_from_adjacency(cubes, adj, f"cubes in GF({F.q})"), F


def cube_graph_analysis(q: int) -> CubeReport:
    g, F = cube_graph(q)
    rank = gf2_rank(g.vertices)
    sub = np.array([c for c in subfield_codes(F, q) if c not in (0, 1)])
    one = int(np.searchsorted(g.vertices, 1))
    nb = set(g.vertices[g.edges[g.edges[:, 0] == one, 1]].tolist()) | \
        set(g.vertices[g.edges[g.edges[:, 1] == one, 0]].tolist())
    m = (q + 1) // 3
    roots = {int(x) for x in g.vertices if x != 1 and int(F.pow(x, m)) == 1}
    # the cube group is cyclic of order (q^2-1)/3; the logs of the neighbours
    # generate it iff their gcd with the group order is 1
    order = (F.q - 1) // 3
    logs = [int(F.log[x]) // 3 for x in nb]
    return CubeReport(q, F.q, g.n, g.is_connected(), g.num_components, rank,
                      rank == F.a, bool(set(sub.tolist()) <= nb), roots <= nb,
                      reduce(gcd, logs, order) == 1)


# -- squares ------------------------------------------------------------------------------------

def _odd_field(q: int) -> FieldSpec:
    pa = prime_power(q)
    if pa is None:
        raise WrongFieldShapeError(f"{q} is not a prime power")
    if pa[0] == 2:
        raise EvenQError(f"q = {q} is even")
    return field_of_order(q)


@dataclass
class SquareReport:
    q: int
    vertices: int
    components: int
    component_sizes: list
    degrees: list
    expected_degree: int | None
    consistent: bool
    exceptional: bool

    def as_dict(self) -> dict:
        return asdict(self)


def square_graph(q: int) -> CommGraph:
    F = _odd_field(q)
    sq = np.unique(F.mul(np.arange(1, q), np.arange(1, q)))
    issq = F.is_square(np.arange(q))
    d = F.sub(sq[:, None], sq[None, :])
    adj = issq[d] | issq[F.neg(d)]
    np.fill_diagonal(adj, False)
    return _graph_from_adjacency(sq, adj, f"squares in GF({q})")


def square_graph_analysis(q: int) -> SquareReport:
    """Connectivity of the squares graph; q = 3 mod 4 forces connected, q = 1 mod 4
    forces degree (q-5)/4 and at most two components."""
    g = square_graph(q)
    degs = sorted(set(g.degrees().tolist()))
    sizes = g.component_sizes()
    if q % 4 == 3:
        exp_deg = None
        ok = g.is_connected()
    else:
        exp_deg = (q - 5) // 4
        ok = degs == [exp_deg] if g.n > 1 else True
        ok = ok and g.num_components <= 2
    # a component smaller than q/p cannot generate the Sylow subgroup
    p = prime_power(q)[0]
    exceptional = not g.is_connected() and min(sizes) + 1 <= q // p
    return SquareReport(q, g.n, g.num_components, sizes, degs, exp_deg, ok, bool(exceptional))


def consecutive_squares(q: int) -> np.ndarray:
    F = _odd_field(q)
    allx = np.arange(q)
    issq = F.is_square(allx)
    return allx[issq & issq[F.add(allx, 1)]]


def consecutive_squares_formula(q: int) -> int:
    return (q - 5) // 4 if q % 4 == 1 else (q - 3) // 4


def consecutive_squares_count(q: int) -> int:
    """|{x : x, x+1 nonzero squares}|, enumerated and checked against the formula."""
    n = int(consecutive_squares(q).size)
    f = consecutive_squares_formula(q)
    if n != f:
        raise AssertionError(f"q = {q}: enumeration gives {n}, formula gives {f}")
    return n


def consecutive_squares_map(q: int) -> dict:
    """f(x) = ((x - 1/x)/2)^2 on GF(q) minus {0, +-1} (and +-i when q = 1 mod 4):
    image size, whether it equals the consecutive-squares set, and fibre sizes."""
    F = _odd_field(q)
    allx = np.arange(1, q)
    bad = {0, 1, int(F.neg(1))}
    i2 = np.flatnonzero(F.mul(allx, allx) == F.neg(1))
    bad |= {int(allx[k]) for k in i2}
    dom = np.array([x for x in allx if int(x) not in bad], dtype=np.int64)
    half = F.inv(2)
    vals = F.mul(F.sub(dom, F.inv(dom)), half)
    f = F.mul(vals, vals)
    img, counts = np.unique(f, return_counts=True)
    target = consecutive_squares(q)
    return {"q": q, "domain": int(dom.size), "image": img.tolist(),
            "onto": bool(np.array_equal(img, target)),
            "fibre_sizes": sorted(set(counts.tolist()))}


# -- the order-3 equation ------------------------------------------------------------------------

@dataclass
class StarSolution:
    q: int
    characteristic: int
    solvable: bool
    lam: int | None = None
    x: int | None = None
    y: int | None = None
    route: str = ""

    def as_dict(self) -> dict:
        return asdict(self)

    def matrices(self):
        """g1 = [[1, -1], [1, 0]] and g2 = [[x, y], [z, t]] with x + t = -1 and
        x + y - z = -1 (the traces of g2 and g1 g2), which makes det g2 = 1 the
        all-plus equation."""
        F = field_of_order(self.q)
        x, y = self.x, self.y
        t = int(F.sub(F.neg(1), x))
        z = int(F.add(F.add(x, y), 1))
        g1 = np.array([[1, int(F.neg(1))], [1, 0]], dtype=np.int64)
        g2 = np.array([[x, y], [z, t]], dtype=np.int64)
        return F, g1, g2


def solve_star_equation(q: int) -> StarSolution:
    """Solve y^2 + (x+1) y + (x^2 + x + 1) = 0 (both plus signs).

    Even q: reduces to lambda^2 + lambda + 1 = 0.  Odd q not a power of 3: x = 0
    when -3 is a square, otherwise a point of Q(X, Y, Z) with Z = 1.
    """
    pa = prime_power(q)
    if pa is None or q < 3:
        raise WrongFieldShapeError(f"need a prime power q >= 3, got {q}")
    p = pa[0]
    F = field_of_order(q)
    if p == 3:
        raise NotApplicableError("q is a power of 3")
    if p == 2:
        roots = sorted(r.value for r in solve_quadratic(F, 1, 1))
        if not roots:
            return StarSolution(q, 2, False, route="lambda^2+lambda+1 has no root")
        lam = roots[0]
        # X = x + 1 = 1, Y = y + 1 = lambda
        return StarSolution(q, 2, True, lam, 0, int(F.add(lam, 1)), "lambda")
    roots = sorted(r.value for r in solve_quadratic(F, 1, 1))
    if roots:
        return StarSolution(q, p, True, None, 0, roots[0], "x=0")
    for x in range(1, q):
        b = int(F.add(x, 1))
        c = int(F.add(F.add(F.mul(x, x), x), 1))
        rs = sorted(r.value for r in solve_quadratic(F, F.from_code(b), F.from_code(c)))
        if rs:
            return StarSolution(q, p, True, None, x, rs[0], "quadratic-form")
    return StarSolution(q, p, False, route="no solution")


def check_star_solution(sol: StarSolution) -> dict:
    """g2 has order 3, g1 g2 has order 3, and <g1> != <g2> in PSL2(q)."""
    from .matgroups import GroupElem

    F, g1, g2 = sol.matrices()
    scal = tuple(v for v in range(1, F.q) if int(F.mul(v, v)) == 1)
    e1 = GroupElem.from_array(F, g1, scal)
    e2 = GroupElem.from_array(F, g2, scal)
    det = int(F.sub(F.mul(g2[0, 0], g2[1, 1]), F.mul(g2[0, 1], g2[1, 0])))
    prod = e1 * e2
    return {"det": det, "order_g1": e1.order(), "order_g2": e2.order(),
            "order_g1g2": prod.order(),
            "distinct_subgroups": e2 not in (e1, e1 * e1)}


# -- cross-check with Gamma(C) inside PSL2(q) ----------------------------------------------------

def squares_graph_matches_gamma(q: int) -> bool:
    """The subgraph of Gamma(C) on C ∩ U, for C the class of [[1,1],[0,1]] and U
    the upper unipotent subgroup, equals the squares graph under x -> [[1,x],[0,1]]."""
    from .gamma import gamma_graph
    from .matgroups import build_psl2

    G = build_psl2(q)
    delta = square_graph(q)
    idx = G.indices_of(np.array([[[1, int(x)], [0, 1]] for x in delta.vertices]))
    C = G.conjugacy_classes()[int(G.class_of[idx[0]])]
    if not C.mask[idx].all():
        return False
    U = np.array([[[1, int(x)], [0, 1]] for x in range(q)])
    Uidx = G.indices_of(U)
    sub = gamma_graph(G, C).induced(Uidx[C.mask[Uidx]])
    if sub.n != delta.n:
        return False
    pos = np.searchsorted(sub.vertices, idx)     # delta vertex i -> sub vertex pos[i]
    a = delta.adjacency()
    b = sub.adjacency()[np.ix_(pos, pos)]
    return bool(np.array_equal(a, b))


# -- output ------------------------------------------------------------------------------------

def graph_dot(graph: CommGraph, name: str) -> str:
    return to_dot(graph, name=name)


def csv_row(report) -> str:
    d = report.as_dict()
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(d))
    w.writeheader()
    w.writerow({k: (v if not isinstance(v, (list, dict)) else str(v)) for k, v in d.items()})
    return buf.getvalue()
