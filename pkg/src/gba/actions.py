"""
Transitive coset actions, r-relatedness, height, and binary-action deciders.

Points are the right cosets Hx, indexed by their minimal member; point 0 is H.
The action is on the right: ``A.perm(g)[w]`` is the image of point w under g and
``perm(xy) = perm(y) o perm(x)``.  The stabilizer of the point Hx is x^-1 H x.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (CapExceededError, LengthMismatchError, NoSolutionInFieldError,
                     NotASubgroupError, PreconditionError)
from .groups import FiniteGroup, Subgroup, conjugates, right_coset_reps

DEFAULT_OMEGA_CAP = 10**5
EXHAUSTIVE_NODE_CAP = 200_000
HEIGHT_NODE_CAP = 200_000


class CosetAction:
    def __init__(self, G: FiniteGroup, H: Subgroup, cap_omega: int = DEFAULT_OMEGA_CAP):
        if H.parent is not G:
            raise NotASubgroupError("H must be a subgroup of G")
        if G.order // H.order > cap_omega:
            raise CapExceededError(f"|G:H| = {G.order // H.order} exceeds cap {cap_omega}")
        self.G = G
        self.H = H
        self.reps, self.coset_of = right_coset_reps(G, H)
        self.n = len(self.reps)
        self.transitive = True

    def __repr__(self):
        return f"<action of {self.G.label} on cosets of {self.H.label or 'H'}, {self.n} points>"

    def perm(self, g) -> np.ndarray:
        return self.coset_of[self.G.mul(self.reps, int(g))]

    def perms(self, gs) -> np.ndarray:
        gs = np.asarray(gs, dtype=np.int64)
        return self.coset_of[self.G.mul(self.reps[None, :], gs[:, None])]

    def image(self, pts, g) -> np.ndarray:
        """Images of selected points under g (or under an array of elements)."""
        return self.coset_of[self.G.mul(self.reps[np.asarray(pts)], g)]

    @cached_property
    def hperm(self) -> np.ndarray:
        """Permutations of the members of H, row i for H.members[i]."""
        return self.perms(self.H.members)

    @cached_property
    def h_labels(self) -> np.ndarray:
        """H-orbit id of every point (orbits numbered by smallest point)."""
        _, lab = np.unique(self.hperm.min(axis=0), return_inverse=True)
        return lab

    def orbit_min(self, members) -> np.ndarray:
        members = np.asarray(members, dtype=np.int64)
        out = np.arange(self.n)
        for s in range(0, members.size, 256):
            np.minimum(out, self.perms(members[s:s + 256]).min(axis=0), out=out)
        return out

    def stabilizer(self, p: int) -> Subgroup:
        return self.H.conjugate(int(self.reps[p]))

    def orbital_row(self, p: int) -> np.ndarray:
        """Orbital of each pair (p, b): the H-orbit of b transported back to base 0."""
        return self.h_labels[self.perm(self.G.inv[self.reps[p]])]

    def fixed_counts(self) -> np.ndarray:
        """|H ∩ Stab(p)| for every point p."""
        return (self.hperm == np.arange(self.n)[None, :]).sum(axis=0)

    def transporter(self, I, J) -> np.ndarray:
        """All g with I[k]^g = J[k] for every k."""
        I, J = list(I), list(J)
        if len(I) != len(J):
            raise LengthMismatchError("tuples differ in length")
        G = self.G
        if not I:
            return np.arange(G.order)
        a0, b0 = int(self.reps[I[0]]), int(self.reps[J[0]])
        cand = G.mul(G.mul(G.inv[a0], self.H.members), b0)
        for a, b in zip(I[1:], J[1:]):
            cand = cand[self.coset_of[G.mul(int(self.reps[a]), cand)] == b]
        return cand

    def maps(self, I, J) -> int | None:
        t = self.transporter(I, J)
        return int(t[0]) if t.size else None


def coset_action(G: FiniteGroup, H: Subgroup, cap_omega: int = DEFAULT_OMEGA_CAP) -> CosetAction:
    return CosetAction(G, H, cap_omega)


def r_related(A: CosetAction, I, J, r: int) -> bool:
    """I and J are r-related: every r-subtuple of I is carried onto that of J."""
    I, J = tuple(int(x) for x in I), tuple(int(x) for x in J)
    if len(I) != len(J):
        raise LengthMismatchError("tuples differ in length")
    if r > len(I):
        raise LengthMismatchError("r exceeds tuple length")
    for idx in itertools.combinations(range(len(I)), r):
        if A.maps([I[k] for k in idx], [J[k] for k in idx]) is None:
            return False
    return True


@dataclass
class RelWitness:
    I: tuple
    J: tuple
    related_level: int = 2
    failing_level: int = 3

    def verify(self, A: CosetAction) -> bool:
        return r_related(A, self.I, self.J, self.related_level) and \
            not r_related(A, self.I, self.J, self.failing_level)

    def as_dict(self) -> dict:
        return {"I": list(self.I), "J": list(self.J), "related": self.related_level,
                "not_related": self.failing_level}


@dataclass
class TITriple:
    """Distinct conjugates H1, H2, H3 (given by a generator-free member list) with
    h = x * y, h in H1, x in H2, y in H3, h != 1."""
    H1: Subgroup
    H2: Subgroup
    H3: Subgroup
    h: int
    x: int
    y: int

    def verify(self) -> bool:
        G = self.H1.parent
        distinct = not (self.H1.same_as(self.H2) or self.H1.same_as(self.H3)
                        or self.H2.same_as(self.H3))
        return distinct and self.h != 0 and self.h in self.H1 and self.x in self.H2 \
            and self.y in self.H3 and G.mul1(self.x, self.y) == self.h

    def as_dict(self) -> dict:
        return {"h": self.h, "x": self.x, "y": self.y,
                "H1": self.H1.members[:4].tolist(), "H2": self.H2.members[:4].tolist(),
                "H3": self.H3.members[:4].tolist()}


@dataclass
class BinaryVerdict:
    status: str                     # "Binary", "NotBinary", "Unknown"
    method: str
    certificate: dict = field(default_factory=dict)
    witness: RelWitness | None = None
    triple: TITriple | None = None
    notes: str = ""

    @property
    def binary(self) -> bool | None:
        return {"Binary": True, "NotBinary": False}.get(self.status)

    def as_dict(self) -> dict:
        d = {"status": self.status, "method": self.method, "certificate": self.certificate}
        if self.witness is not None:
            d["witness"] = self.witness.as_dict()
        if self.triple is not None:
            d["triple"] = self.triple.as_dict()
        if self.notes:
            d["notes"] = self.notes
        return d


# -- length-3 witnesses -----------------------------------------------------------------

def triple_witness(A: CosetAction) -> RelWitness | None:
    """Search for I, J in Omega^3 that are 2-related but not 3-related.

    Up to G we may take I = (0, a2, a3) and J = (0, a2, b).  Then b = a3^h with
    h in H = G_0, b must lie in the G_{a2}-orbit of a3, and not in its
    (H ∩ G_{a2})-orbit.  a2 runs over H-orbit representatives, so the search
    is complete.
    """
    H = A.H
    if H.order == 1 or A.n <= 2:
        return None
    hp = A.hperm
    reps_a2 = np.unique(hp.min(axis=0))
    for a2 in reps_a2:
        a2 = int(a2)
        if a2 == 0:
            continue
        lab2 = A.orbital_row(a2)
        in_k = hp[:, a2] == a2
        K = np.flatnonzero(in_k)
        lab_k = hp[K].min(axis=0)
        for i in np.flatnonzero(~in_k):
            img = hp[i]
            ok = (lab2[img] == lab2) & (lab_k[img] != lab_k)
            if ok.any():
                a3 = int(np.flatnonzero(ok)[0])
                return RelWitness((0, a2, a3), (0, a2, int(img[a3])), 2, 3)
    return None


# -- TI subgroups ------------------------------------------------------------------------

def is_ti(G: FiniteGroup, H: Subgroup, A: CosetAction | None = None) -> bool:
    """H ∩ H^g is H or 1 for every g; the H^g are exactly the point stabilizers."""
    if H.order == 1:
        return True
    if A is None:
        for C in conjugates(H):
            k = int(C.mask[H.members].sum())
            if k not in (1, H.order):
                return False
        return True
    fc = A.fixed_counts()
    return bool(np.all((fc == 1) | (fc == H.order)))


def _conj_index(H: Subgroup):
    G = H.parent
    conjs = conjugates(H)
    cid = np.full(G.order, -1, dtype=np.int64)
    for i, C in enumerate(conjs):
        cid[C.members[1:]] = i
    return conjs, cid


def ti_triple_search(G: FiniteGroup, H: Subgroup, exhaustive: bool = False) -> TITriple | None:
    """Distinct conjugates H1, H2, H3 of a TI subgroup with H1 ∩ H2·H3 != 1.

    By symmetry H1 = H suffices; ``exhaustive`` lets H1 run over every conjugate
    as an independent cross-check.  Returns the first triple in index order.
    """
    if H.order == 1 or H.order == G.order:
        raise PreconditionError("need 1 < H < G")
    if not is_ti(G, H):
        raise PreconditionError("H is not a TI subgroup")
    conjs, cid = _conj_index(H)
    if len(conjs) == 1:
        raise PreconditionError("H is normal")
    union = np.flatnonzero(cid >= 0)
    hs = union if exhaustive else H.members[1:]
    xs = union
    for h in hs:
        ch = cid[h]
        xo = xs[cid[xs] != ch]
        ys = G.mul(G.inv[xo], int(h))
        cy = cid[ys]
        ok = (cy >= 0) & (cy != ch) & (cy != cid[xo])
        if ok.any():
            k = int(np.flatnonzero(ok)[0])
            x, y = int(xo[k]), int(ys[k])
            return TITriple(conjs[ch], conjs[cid[x]], conjs[cid[y]], int(h), x, y)
    return None


# -- exhaustive certification -------------------------------------------------------------

@dataclass
class ExhaustiveResult:
    binary: bool
    prefixes: int
    max_depth: int
    witness: RelWitness | None = None


def exhaustive_check(A: CosetAction, node_cap: int = EXHAUSTIVE_NODE_CAP) -> ExhaustiveResult:
    """Decide whether 2-related tuples of every length are fully related.

    Walks tuples of distinct points up to the action of G (prefix p, pointwise
    stabilizer S).  Given that 2-related already forces (m-1)-related, a 2-related
    pair of m-tuples may be moved to (p + [x], p + [b]); b is admissible iff it
    has the same orbital to every point of p as x, and the pair is m-related iff
    b is in the S-orbit of x.  So every level holds iff, for every prefix, the
    orbital signature separates the S-orbits exactly.  Prefixes whose last point
    did not shrink S, or whose S is trivial, impose nothing new and are not
    expanded; all surviving chains are stabilizer chains, so the walk is finite.
    """
    hp = A.hperm
    stats = {"nodes": 0, "depth": 0}

    def orbit_labels(rows):
        return hp[rows].min(axis=0)

    def check(prefix, rows, keys):
        stats["nodes"] += 1
        stats["depth"] = max(stats["depth"], len(prefix))
        if stats["nodes"] > node_cap:
            raise CapExceededError(f"exhaustive check exceeded {node_cap} prefixes")
        olab = orbit_labels(rows)
        pairs = np.unique(np.stack([keys, olab]), axis=1)
        nkeys = np.unique(keys).size
        if pairs.shape[1] != nkeys:
            ks, counts = np.unique(pairs[0], return_counts=True)
            bad = ks[counts > 1][0]
            orbs = pairs[1][pairs[0] == bad]
            I = tuple(prefix) + (int(orbs[0]),)
            J = tuple(prefix) + (int(orbs[1]),)
            return RelWitness(I, J, 2, len(I))
        if rows.size == 1:
            return None
        for x in np.unique(olab):
            x = int(x)
            if x in prefix:
                continue
            sub = rows[hp[rows, x] == x]
            if sub.size == rows.size:
                continue
            row = A.orbital_row(x)
            _, newkeys = np.unique(keys * (row.max() + 1) + row, return_inverse=True)
            w = check(prefix + [x], sub, newkeys)
            if w is not None:
                return w
        return None

    keys0 = A.h_labels.astype(np.int64)
    w = check([0], np.arange(A.H.order), keys0)
    return ExhaustiveResult(w is None, stats["nodes"], stats["depth"], w)


# -- height --------------------------------------------------------------------------------

def height(A: CosetAction, node_cap: int = HEIGHT_NODE_CAP) -> int:
    """Maximal size of an independent set.

    Independence is inherited by subsets, so independent sets grow one point at
    a time; new points are taken up to the pointwise stabilizer of the current set.
    """
    if A.n == 1:
        return 0
    hp = A.hperm
    G = A.G

    def stab_size(pts) -> int:
        pts = list(pts)
        if not pts:
            return G.order
        t = G.inv[A.reps[pts[0]]]
        moved = A.image(pts, int(t))
        return int(np.all(hp[:, moved] == moved[None, :], axis=1).sum())

    best = 1
    nodes = 0

    def grow(pts, rows):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_cap:
            raise CapExceededError(f"height search exceeded {node_cap} nodes")
        best = max(best, len(pts))
        olab = hp[rows].min(axis=0)
        for x in np.unique(olab):
            x = int(x)
            if x in pts:
                continue
            sub = rows[hp[rows, x] == x]
            if sub.size == rows.size:
                continue
            new = pts + [x]
            if all(stab_size(new[:i] + new[i + 1:]) > sub.size for i in range(1, len(pts))):
                grow(new, sub)

    if A.H.order < G.order:
        grow([0], np.arange(A.H.order))
    else:
        best = 0
    return best


def relational_complexity(A: CosetAction, max_len: int | None = None) -> int:
    """Exact RC by brute force over tuples of length <= max_len (small actions only).

    k qualifies when k-related implies m-related for k < m <= max_len; the
    default max_len = height + 2 is one beyond the bound RC <= height + 1, so
    that the bound is observed rather than assumed.
    """
    G = A.G
    if G.order * A.n > 5 * 10**6:
        raise CapExceededError("brute-force RC is for small actions")
    h = height(A)
    if max_len is None:
        max_len = h + 2
    P = A.perms(np.arange(G.order))
    max_len = min(max_len, A.n)

    memo: dict = {}

    def stab_rows(pts: tuple) -> np.ndarray:
        if pts not in memo:
            if not pts:
                memo[pts] = np.arange(G.order)
            else:
                r = stab_rows(pts[:-1])
                memo[pts] = r[P[r, pts[-1]] == pts[-1]]
        return memo[pts]

    def orbit_mask(pts: tuple, x: int) -> np.ndarray:
        m = np.zeros(A.n, dtype=bool)
        m[P[stab_rows(pts), x]] = True
        return m

    def prefixes(length):
        out = []

        def rec(pref):
            if len(pref) == length:
                out.append(pref)
                return
            rows = stab_rows(pref)
            for x in np.unique(P[rows].min(axis=0)):
                if int(x) not in pref:
                    rec(pref + (int(x),))
        rec(())
        return out

    def k_implies_all(k) -> bool:
        for m in range(k + 1, max_len + 1):
            for pref in prefixes(m - 1):
                rows = stab_rows(pref)
                for x in np.unique(P[rows].min(axis=0)):
                    x = int(x)
                    if x in pref:
                        continue
                    cand = np.ones(A.n, dtype=bool)
                    for sub in itertools.combinations(pref, k - 1):
                        cand &= orbit_mask(sub, x)
                    if cand.sum() != orbit_mask(pref, x).sum():
                        return False
        return True

    for k in range(2, max_len + 1):
        if k_implies_all(k):
            return k
    return max_len


# -- the decision cascade ---------------------------------------------------------------------

def decide_binary(G: FiniteGroup, H: Subgroup, A: CosetAction | None = None,
                  cap_omega: int = DEFAULT_OMEGA_CAP,
                  node_cap: int = EXHAUSTIVE_NODE_CAP) -> BinaryVerdict:
    """Binary / NotBinary / Unknown for G on the right cosets of H.

    (i) length-3 witness search; (ii) for TI subgroups the conjugate-triple
    criterion, which is complete; (iii) exhaustive orbit-canonical tuple check;
    (iv) Unknown when a cap is hit.
    """
    try:
        A = A or CosetAction(G, H, cap_omega)
    except CapExceededError as e:
        return BinaryVerdict("Unknown", "cap", {"reason": str(e)})
    if A.n == 1:
        return BinaryVerdict("Binary", "trivial", {"points": 1})
    if H.order == 1:
        return BinaryVerdict("Binary", "regular", {"points": A.n})
    if H.is_normal():
        # H is the kernel; G/H acts regularly, and regular actions are binary
        return BinaryVerdict("Binary", "normal", {"points": A.n})
    w = triple_witness(A)
    if w is not None:
        return BinaryVerdict("NotBinary", "triple-witness", {"points": A.n}, witness=w)
    if is_ti(G, H, A):
        t = ti_triple_search(G, H)
        if t is None:
            return BinaryVerdict("Binary", "ti-criterion",
                                 {"points": A.n, "conjugates": len(conjugates(H)),
                                  "height": 2})
        return BinaryVerdict("Unknown", "inconsistent", {"points": A.n}, triple=t,
                             notes="TI triple found but no length-3 witness")
    try:
        res = exhaustive_check(A, node_cap)
    except CapExceededError as e:
        return BinaryVerdict("Unknown", "cap", {"points": A.n, "reason": str(e)})
    cert = {"points": A.n, "prefixes": res.prefixes, "max_depth": res.max_depth}
    if res.binary:
        return BinaryVerdict("Binary", "exhaustive", cert)
    return BinaryVerdict("NotBinary", "exhaustive", cert, witness=res.witness)


def restrict(H: Subgroup, B: Subgroup) -> tuple[FiniteGroup, Subgroup]:
    """B as a group in its own right, with H (contained in B) as a subgroup of it."""
    if not H.issubset(B):
        raise NotASubgroupError("H is not contained in B")
    Bg = B.as_group()
    idx = np.searchsorted(B.members, H.members)
    return Bg, Bg.subgroup_from_members(idx, H.label, check=False)


# -- Frobenius actions and suborbits -------------------------------------------------------------

def frobenius_profile(A: CosetAction) -> int | None:
    """Complement order |H| if the action is Frobenius, else None."""
    if A.H.order == 1 or A.n == 1:
        return None
    fc = A.fixed_counts()
    fc[0] = 1
    return A.H.order if bool(np.all(fc == 1)) else None


@dataclass
class Suborbit:
    rep: int
    points: np.ndarray
    point_stab_order: int
    kernel_order: int
    frobenius: bool

    @property
    def size(self) -> int:
        return int(self.points.size)


def suborbit_actions(A: CosetAction) -> list[Suborbit]:
    """Orbits of H on the points, with the shape of the induced action on each."""
    hp = A.hperm
    mins = hp.min(axis=0)
    out = []
    for r in np.unique(mins):
        pts = np.flatnonzero(mins == r)
        sub = hp[:, pts]
        fixes = sub == pts[None, :]
        kernel = int(fixes.all(axis=1).sum())
        j = int(np.flatnonzero(pts == r)[0])
        stab_rows = fixes[:, j]
        stab = int(stab_rows.sum())
        frob = False
        if pts.size > 1 and stab > kernel:
            others = np.delete(fixes[stab_rows], j, axis=1)
            two_pt = others.sum(axis=0)
            frob = bool(np.all(two_pt == kernel))
        out.append(Suborbit(int(r), pts, stab, kernel, frob))
    return out


# -- the pseudo-Frobenius lemma -----------------------------------------------------------------

@dataclass
class PseudoFrobeniusReport:
    hypotheses: dict
    hypotheses_hold: bool
    verdict: BinaryVerdict
    inequality_lhs: int
    inequality_rhs: int
    conclusion_holds: bool | None

    def as_dict(self) -> dict:
        return {"hypotheses": self.hypotheses, "hypotheses_hold": self.hypotheses_hold,
                "verdict": self.verdict.status,
                "inequality": [self.inequality_lhs, self.inequality_rhs],
                "conclusion_holds": self.conclusion_holds}


def check_pseudo_frobenius(G: FiniteGroup, N: Subgroup, K: Subgroup, T: Subgroup,
                           T0: Subgroup) -> PseudoFrobeniusReport:
    """Check the hypotheses, decide binaryness of G on (G:T), and test the
    consequences T0 = T and |T| <= 1 + 2|K| (when |N:K| > 2) for binary actions."""
    hyp = {}
    hyp["semidirect"] = N.is_normal() and N.intersect(T).order == 1 and \
        N.order * T.order == G.order
    hyp["K_normal_in_N"] = K.issubset(N) and K.is_normal()
    A_el = N.members[~K.mask[N.members]]
    Tn = T.members[1:]
    free_A = True
    for t in Tn:
        if np.any(G.conj(A_el, int(t)) == A_el):
            free_A = False
            break
    hyp["free_on_N_minus_K"] = free_A
    K1 = K.members[1:]
    t0_trivial = all(np.all(G.conj(K1, int(t)) == K1) for t in T0.members)
    rest = T.members[~T0.mask[T.members]]
    free_quot = all(not np.any(G.conj(K1, int(t)) == K1) for t in rest)
    hyp["T0_le_T"] = T0.issubset(T)
    hyp["T0_acts_trivially_on_K"] = t0_trivial
    hyp["quotient_free_on_K"] = free_quot
    hyp["index_N_K_gt_1"] = N.order // K.order > 1
    hyp["T0_nontrivial"] = T0.order > 1
    ok = all(hyp.values())
    verdict = decide_binary(G, T)
    e = N.order // K.order
    s = e - 2
    lhs = s * (T0.order - 1 + K.order * (T.order - T0.order))
    rhs = N.order - K.order
    concl = None
    if verdict.status == "Binary" and ok:
        concl = T0.order == T.order and (e <= 2 or T.order <= 1 + 2 * K.order)
    return PseudoFrobeniusReport(hyp, ok, verdict, lhs, rhs, concl)


# -- unitary witnesses -----------------------------------------------------------------------------

def _vector_points(G, A: CosetAction, vectors, classes) -> list[int]:
    """Points of A for isotropic vectors (column convention, g acts as v -> g^-1 v).

    ``classes`` is the set of field scalars identifying proportional vectors.  A
    vector v corresponds to the coset H y^-1 where y e1 is proportional to v.
    """
    F = G.spec
    firsts = G.mats[:, :, 0]
    out = []
    for v in vectors:
        v = np.asarray(v, dtype=np.int64)
        hit = np.zeros(G.order, dtype=bool)
        for lam in classes:
            hit |= np.all(firsts == F.mul(v, lam)[None, :], axis=1)
        ys = np.flatnonzero(hit)
        if ys.size == 0:
            raise NoSolutionInFieldError("vector is not in the orbit of e1")
        pts = np.unique(A.coset_of[G.inv[ys]])
        if pts.size != 1:
            raise PreconditionError("vector class does not determine a single coset")
        out.append(int(pts[0]))
    return out


def su3_witness_tuples(q: int, t1_order: int = 1, G=None):
    """Two triples of points, 2-related but not 3-related, for PSU3(q) acting on
    the cosets of P (t1_order = 1) or of P:T1 with |T1| = t1_order.

    Returns (A, I, J, info).  The points are ([e1], [f1], [v]) and
    ([e1], [f1], [v']) with v, v' the isotropic vectors built from field scans.
    """
    from .matgroups import build_psu3, named_subgroup

    G = G or build_psu3(q)
    F = G.spec
    els = np.arange(F.q)
    norm = F.pow(els, q + 1)
    tr = F.add(els, F.pow(els, q))
    scal = set(G.scalars)
    if t1_order == 1:
        H = named_subgroup(G, "P")
        xs = els[tr == 1]
        ys = els[(norm == 1) & (els != 1)]
        if xs.size == 0 or ys.size == 0:
            raise NoSolutionInFieldError("no x with x + x^q = 1 or y != 1 with y^(q+1) = 1")
        x, y = int(xs[0]), int(ys[0])
        v, v2 = [x, y, 1], [x, 1, 1]
        classes = sorted(scal)
    else:
        H = named_subgroup(G, "PT1", order=t1_order)
        t1 = [int(t) for t in els[1:] if int(F.pow(t, t1_order)) == 1]
        if len(t1) != t1_order:
            raise NoSolutionInFieldError(f"no subgroup of order {t1_order} in GF({F.q})*")
        found = None
        for x in t1:
            if x == 1:
                continue
            target = int(F.add(x, F.pow(x, q)))
            if F.p != 2:
                target = int(F.neg(target))
            ys = els[norm == target]
            if ys.size:
                found = (x, int(ys[0]))
                break
        if found is None:
            raise NoSolutionInFieldError("no y with y^(q+1) = x + x^q")
        x, y = found
        v, v2 = [x, y, 1], [1, y, x]
        classes = sorted({int(F.mul(a, b)) for a in t1 for b in scal})
    for vec in (v, v2):
        vec_a = np.array(vec)
        herm = F.add(F.add(F.mul(vec_a[0], F.pow(vec_a[2], q)), F.mul(F.pow(vec_a[0], q), vec_a[2])),
                     F.pow(vec_a[1], q + 1))
        if int(herm) != 0:
            raise NoSolutionInFieldError(f"vector {vec} is not isotropic")
    A = CosetAction(G, H)
    e1, f1 = [1, 0, 0], [0, 0, 1]
    pts = _vector_points(G, A, [e1, f1, v, v2], classes)
    I = (pts[0], pts[1], pts[2])
    J = (pts[0], pts[1], pts[3])
    info = {"x": x, "y": y, "v": v, "v_prime": v2, "H_order": H.order, "points": A.n}
    return A, I, J, info


def witt_pair_transitivity(G, c: int = 1) -> bool:
    """G is transitive on ordered pairs (u, w) of isotropic vectors with <u, w> = c.

    Column convention, <u, w> = u^T J w^q with J antidiagonal.  The orbit of
    (e1, d f1) with <e1, d f1> = c is compared in size with the whole set.
    Meant for groups without central scalars (e.g. PSU3(4) = SU3(4)).
    """
    F = G.spec
    q = G.q
    n = F.q
    grid = np.array(list(itertools.product(range(n), repeat=3)), dtype=np.int64)[1:]

    def herm(u, w):
        wq = F.pow(w, q)
        return F.add(F.add(F.mul(u[..., 0], wq[..., 2]), F.mul(u[..., 1], wq[..., 1])),
                     F.mul(u[..., 2], wq[..., 0]))

    iso = grid[herm(grid, grid) == 0]
    count = 0
    for u in iso:
        count += int((herm(np.broadcast_to(u, iso.shape), iso) == c).sum())
    d = next(x for x in range(1, n) if int(F.pow(x, q)) == c)
    cols0 = G.mats[:, :, 0]
    cols2 = F.mul(G.mats[:, :, 2], d)
    keys = ((cols0[:, 0] * n + cols0[:, 1]) * n + cols0[:, 2]) * n**3 + \
        (cols2[:, 0] * n + cols2[:, 1]) * n + cols2[:, 2]
    return int(np.unique(keys).size) == count


@dataclass
class LambdaReport:
    lam_size: int
    setwise_stab_order: int
    induced_order: int
    two_transitive: bool
    full_symmetric: bool


def unital_lambda_action(G, A: CosetAction | None = None) -> LambdaReport:
    """H = L (the SL2(q) inside PSU3(q)); Lambda = {Hx : x in Q}.

    Reports the group induced on Lambda by its setwise stabilizer, whether it is
    2-transitive, and whether it is the full symmetric group.
    """
    from math import factorial

    from .matgroups import named_subgroup

    L = named_subgroup(G, "L")
    Q = named_subgroup(G, "Q")
    A = A or CosetAction(G, L)
    lam = np.unique(A.coset_of[Q.members])
    n = A.n
    inlam = np.zeros(n, dtype=bool)
    inlam[lam] = True
    keep = []
    for s in range(0, G.order, 2048):
        blk = np.arange(s, min(G.order, s + 2048))
        imgs = A.coset_of[G.mul(A.reps[lam][None, :], blk[:, None])]
        keep.append(blk[inlam[imgs].all(axis=1)])
    stab = np.concatenate(keep)
    imgs = A.coset_of[G.mul(A.reps[lam][None, :], stab[:, None])]
    pos = np.searchsorted(lam, imgs)
    induced = np.unique(pos, axis=0)
    k = lam.size
    # 2-transitive iff the images of the first two points cover all ordered pairs
    img01 = {(int(a), int(b)) for a, b in zip(induced[:, 0], induced[:, 1])}
    two_trans = len(img01) == k * (k - 1)
    return LambdaReport(k, int(stab.size), int(induced.shape[0]), two_trans,
                        induced.shape[0] == factorial(k))
