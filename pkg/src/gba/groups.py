"""
Fully enumerated finite groups.

A ``FiniteGroup`` is stored as an (N, npts) array of point permutations of a
faithful action (right action: ``perms[g][w]`` is the image of point w under g).
Products are composed on a base only: the images of the base points identify
an element, so ``mul`` runs over whole index arrays at once.  Index 0 is the
identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .errors import CapExceededError, NotASubgroupError, NotClosedError

DEFAULT_GROUP_CAP = 10**6
TABLE_CAP = 5000
SWEEP_CAP = 1200


class FiniteGroup:
    def __init__(self, perms: np.ndarray, label: str = "G", gens=None):
        perms = np.ascontiguousarray(perms)
        if perms.ndim != 2 or perms.shape[0] == 0:
            raise ValueError("perms must be a non-empty (N, npts) array")
        npts = perms.shape[1]
        if not np.array_equal(perms[0], np.arange(npts)):
            raise ValueError("row 0 must be the identity permutation")
        dtype = np.int16 if npts < 2**15 else np.int32
        self.perms = perms.astype(dtype)
        self.label = label
        self.order = perms.shape[0]
        self.npts = npts
        self.family = "perm"
        self._choose_base()
        self._gens = None if gens is None else np.asarray(gens, dtype=np.int64)
        self._table = None
        self._subgroup_cache: dict = {}

    def __repr__(self):
        return f"<{self.label} order {self.order}>"

    def __len__(self):
        return self.order

    # -- element lookup
    def _choose_base(self):
        n, npts = self.order, self.npts
        base: list[int] = []
        keys = np.zeros(n, dtype=np.int64)
        count = 1
        while count < n:
            best, best_count = None, count
            for pt in range(npts):
                if pt in base:
                    continue
                c = np.unique(keys * npts + self.perms[:, pt]).size
                if c > best_count:
                    best, best_count = pt, c
                    if c == n:
                        break
            if best is None:
                raise NotClosedError("permutation rows are not distinct (action not faithful)")
            base.append(best)
            keys = keys * npts + self.perms[:, best]
            count = best_count
            if float(npts) ** len(base) > 2**62:
                raise CapExceededError("base too long for int64 keys")
        if not base:
            base = [0]
            keys = self.perms[:, 0].astype(np.int64)
        self.base = np.array(base, dtype=np.int64)
        self._weights = np.array([npts ** (len(base) - 1 - i) for i in range(len(base))],
                                 dtype=np.int64)
        self.base_images = self.perms[:, self.base].astype(np.int64)
        self._keys = keys
        self._order_by_key = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order_by_key]

    def _lookup(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self._sorted_keys[pos] == keys):
            raise NotClosedError(f"{self.label}: product left the enumerated element set")
        return self._order_by_key[pos]

    def index_of_perm(self, perm) -> int:
        perm = np.asarray(perm)
        return int(self._lookup(np.asarray(perm[self.base] @ self._weights))[()])

    # -- arithmetic on indices
    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self._table is not None:
            return self._table[a, b]
        imgs = self.perms[b[..., None], self.base_images[a]]
        return self._lookup(imgs.astype(np.int64) @ self._weights)

    def mul1(self, a: int, b: int) -> int:
        return int(self.mul(a, b)[()])

    def conj(self, x, g) -> np.ndarray:
        """x^g = g^-1 x g."""
        return self.mul(self.mul(self.inv[np.asarray(g)], x), g)

    def power(self, x: int, k: int) -> int:
        k %= int(self.element_orders[x])
        r, y = 0, x
        while k:
            if k & 1:
                r = self.mul1(r, y)
            y = self.mul1(y, y)
            k >>= 1
        return r

    def commute(self, x, y) -> np.ndarray:
        return self.mul(x, y) == self.mul(y, x)

    @cached_property
    def inv(self) -> np.ndarray:
        inv_perms = np.argsort(self.perms, axis=1)
        return self._lookup(inv_perms[:, self.base].astype(np.int64) @ self._weights)

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    def build_table(self):
        """Full multiplication table (only for small groups)."""
        if self._table is None and self.order <= TABLE_CAP:
            n = self.order
            dtype = np.int16 if n < 2**15 else np.int32
            t = np.empty((n, n), dtype=dtype)
            step = max(1, 2_000_000 // n)
            allx = np.arange(n)
            for s in range(0, n, step):
                t[s:s + step] = self.mul(np.arange(s, min(n, s + step))[:, None], allx[None, :])
            self._table = t
        return self._table

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        allx = np.arange(n)
        cur = allx.copy()
        k = 1
        todo = allx[1:]
        while todo.size:
            k += 1
            cur[todo] = self.mul(cur[todo], todo)
            done = todo[cur[todo] == 0]
            orders[done] = k
            todo = todo[cur[todo] != 0]
            if k > n:
                raise NotClosedError("element order exceeds group order")
        return orders

    @property
    def gens(self) -> np.ndarray:
        if self._gens is None:
            self._gens = generating_set(self, np.arange(self.order))
        return self._gens

    # -- conjugacy
    @cached_property
    def _class_data(self):
        n = self.order
        class_id = np.full(n, -1, dtype=np.int64)
        conjugator = np.full(n, -1, dtype=np.int64)
        gens = self.gens
        ginv = self.inv[gens]
        raw = []
        for start in range(n):
            if class_id[start] >= 0:
                continue
            cid = len(raw)
            class_id[start] = cid
            conjugator[start] = 0
            members = [np.array([start])]
            frontier = np.array([start])
            while frontier.size:
                # x^g = g^-1 x g, conjugator c with start^c = x becomes c*g
                imgs = self.mul(self.mul(ginv[None, :], frontier[:, None]), gens[None, :])
                conjs = self.mul(conjugator[frontier][:, None], gens[None, :])
                imgs, conjs = imgs.ravel(), conjs.ravel()
                fresh = class_id[imgs] < 0
                imgs, conjs = imgs[fresh], conjs[fresh]
                imgs, first = np.unique(imgs, return_index=True)
                conjs = conjs[first]
                class_id[imgs] = cid
                conjugator[imgs] = conjs
                members.append(imgs)
                frontier = imgs
            raw.append(np.sort(np.concatenate(members)))
        orders = self.element_orders
        keyed = sorted(range(len(raw)), key=lambda c: (orders[raw[c][0]], raw[c].size, raw[c][0]))
        remap = np.empty(len(raw), dtype=np.int64)
        remap[keyed] = np.arange(len(raw))
        classes = [ConjClass(self, raw[c], int(raw[c][0]), int(orders[raw[c][0]]), i)
                   for i, c in enumerate(keyed)]
        return classes, remap[class_id], conjugator

    def conjugacy_classes(self) -> list["ConjClass"]:
        return self._class_data[0]

    @property
    def class_of(self) -> np.ndarray:
        return self._class_data[1]

    def conjugator_from_rep(self, x: int) -> int:
        """An element c with rep^c = x, rep the minimal member of x's class.

        Classes are grown from their minimal member, so the BFS root is the rep.
        """
        return int(self._class_data[2][x])

    def involution_classes(self) -> list["ConjClass"]:
        return [c for c in self.conjugacy_classes() if c.element_order == 2]

    def is_simple_hint(self) -> bool:
        """Normal subgroups are unions of classes; test only the class-union sizes."""
        classes = self.conjugacy_classes()
        for c in classes[1:]:
            n = normal_closure(self, [c.rep])
            if n.order not in (1, self.order):
                return False
        return True

    # -- subgroups
    def trivial(self) -> "Subgroup":
        return Subgroup(self, np.array([0]), np.array([], dtype=np.int64), "1")

    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order), self.gens, self.label)

    def subgroup(self, gens, label: str = "", limit: int | None = None) -> "Subgroup | None":
        members = closure(self, gens, limit=limit)
        if members is None:
            return None
        return Subgroup(self, members, np.unique(np.asarray(gens, dtype=np.int64)), label)

    def subgroup_from_members(self, members, label: str = "", check: bool = True) -> "Subgroup":
        members = np.unique(np.asarray(members, dtype=np.int64))
        if check:
            mask = np.zeros(self.order, dtype=bool)
            mask[members] = True
            if members.size == 0 or members[0] != 0:
                raise NotASubgroupError(f"{label or 'set'} does not contain the identity")
            prods = self.mul(members[:, None], members[None, :]) if members.size <= 2000 else \
                self.mul(members[:, None], generating_set(self, members)[None, :])
            if not mask[prods].all() or not mask[self.inv[members]].all():
                raise NotASubgroupError(f"{label or 'set'} is not closed")
        gens = generating_set(self, members)
        return Subgroup(self, members, gens, label)


@dataclass(eq=False)
class Subgroup:
    parent: FiniteGroup
    members: np.ndarray
    gens: np.ndarray
    label: str = ""
    _mask: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.members = np.asarray(self.members, dtype=np.int64)
        self.gens = np.asarray(self.gens, dtype=np.int64)

    @property
    def order(self) -> int:
        return int(self.members.size)

    def __len__(self):
        return self.order

    def __repr__(self):
        name = self.label or "H"
        return f"<{name} <= {self.parent.label}, order {self.order}>"

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            m = np.zeros(self.parent.order, dtype=bool)
            m[self.members] = True
            self._mask = m
        return self._mask

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def contains(self, xs) -> np.ndarray:
        return self.mask[np.asarray(xs)]

    def key(self) -> bytes:
        return self.members.tobytes()

    def same_as(self, other: "Subgroup") -> bool:
        return self.order == other.order and np.array_equal(self.members, other.members)

    def issubset(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.members].all())

    def is_normal(self) -> bool:
        return normalizer(self.parent, self).order == self.parent.order

    def conjugate(self, g: int, label: str = "") -> "Subgroup":
        G = self.parent
        mem = np.sort(G.conj(self.members, g))
        gens = G.conj(self.gens, g) if self.gens.size else self.gens
        return Subgroup(G, mem, gens, label or self.label)

    def intersect(self, other: "Subgroup", label: str = "") -> "Subgroup":
        mem = self.members[other.mask[self.members]]
        return Subgroup(self.parent, mem, generating_set(self.parent, mem), label)

    def element_orders(self) -> np.ndarray:
        return self.parent.element_orders[self.members]

    def as_group(self, label: str | None = None) -> FiniteGroup:
        """The subgroup as a FiniteGroup in its own right (same point action)."""
        H = FiniteGroup(self.parent.perms[self.members], label or self.label or "H")
        H.embedding = self.members
        H.family = "sub"
        return H


@dataclass(eq=False)
class ConjClass:
    parent: FiniteGroup
    members: np.ndarray
    rep: int
    element_order: int
    index: int = 0

    @property
    def size(self) -> int:
        return int(self.members.size)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"<class {self.index} of {self.parent.label}: order {self.element_order}, size {self.size}>"

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.members] = True
        return m


# -- closures and generating sets ------------------------------------------------

def closure(G: FiniteGroup, gens, limit: int | None = None) -> np.ndarray | None:
    """Sorted member indices of <gens>, or None once more than ``limit`` appear."""
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    gens = gens[gens != 0]
    if gens.size == 0:
        return np.array([0], dtype=np.int64)
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    found = [np.array([0])]
    frontier = np.array([0])
    count = 1
    while frontier.size:
        prods = np.unique(G.mul(frontier[:, None], gens[None, :]))
        new = prods[~seen[prods]]
        seen[new] = True
        found.append(new)
        count += new.size
        if limit is not None and count > limit:
            return None
        frontier = new
    return np.sort(np.concatenate(found))


def generating_set(G: FiniteGroup, members) -> np.ndarray:
    """Greedy generating set of the subgroup with these members.

    Elements are tried by decreasing order (ties: smallest index).
    """
    members = np.asarray(members, dtype=np.int64)
    if members.size <= 1:
        return np.array([], dtype=np.int64)
    orders = G.element_orders[members]
    cand = members[np.lexsort((members, -orders))]
    gens: list[int] = []
    have = np.zeros(G.order, dtype=bool)
    have[0] = True
    count = 1
    for x in cand:
        if have[x]:
            continue
        gens.append(int(x))
        cur = closure(G, gens)
        have[:] = False
        have[cur] = True
        count = cur.size
        if count == members.size:
            break
    if count != members.size:
        raise NotASubgroupError("member set is not a subgroup")
    return np.array(gens, dtype=np.int64)


def normal_closure(G: FiniteGroup, xs) -> Subgroup:
    xs = np.asarray(xs, dtype=np.int64)
    gens = np.unique(G.conj(xs[:, None], np.arange(G.order)[None, :]))
    return G.subgroup(gens, "normal closure")


# -- centralizers, normalizers, centres -------------------------------------------

def centralizer(G: FiniteGroup, g, label: str = "") -> Subgroup:
    g = np.atleast_1d(np.asarray(g, dtype=np.int64))
    allx = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for x in g:
        mask &= G.mul(allx, x) == G.mul(x, allx)
    mem = allx[mask]
    return Subgroup(G, mem, generating_set(G, mem), label or "C(g)")


def normalizer(G: FiniteGroup, S: Subgroup, label: str = "") -> Subgroup:
    allx = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for s in S.gens:
        mask &= S.mask[G.mul(G.mul(G.inv, s), allx)]
    mem = allx[mask]
    return Subgroup(G, mem, generating_set(G, mem), label or f"N({S.label or 'H'})")


def set_stabilizer(G: FiniteGroup, xs, label: str = "") -> Subgroup:
    """Elements g with xs^g = xs setwise, under conjugation."""
    xs = np.unique(np.asarray(xs, dtype=np.int64))
    inset = np.zeros(G.order, dtype=bool)
    inset[xs] = True
    allx = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for x in xs:
        mask &= inset[G.mul(G.mul(G.inv, x), allx)]
    mem = allx[mask]
    return Subgroup(G, mem, generating_set(G, mem), label or "N(X)")


def center(S: Subgroup, label: str = "") -> Subgroup:
    G = S.parent
    mask = np.ones(S.order, dtype=bool)
    for s in S.gens:
        mask &= G.mul(S.members, s) == G.mul(s, S.members)
    mem = S.members[mask]
    return Subgroup(G, mem, generating_set(G, mem), label or f"Z({S.label or 'H'})")


def conjugates(S: Subgroup) -> list[Subgroup]:
    """All distinct conjugates of S, ordered by the coset rep of N(S) producing them."""
    G = S.parent
    N = normalizer(G, S)
    seen = np.zeros(G.order, dtype=bool)
    out = []
    for g in range(G.order):
        if seen[g]:
            continue
        coset = G.mul(N.members, g)
        seen[coset] = True
        out.append(S.conjugate(g))
    return out


def right_coset_reps(G: FiniteGroup, H: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """coset_of[x] = index of the right coset Hx; reps are minimal members, sorted.

    Small H: minimum over all h of hx.  Large H: propagate minima along left
    multiplication by generators of H until stable (each coset is connected).
    """
    allx = np.arange(G.order)
    best = allx.copy()
    if H.order <= 32 or H.gens.size == 0:
        for h in H.members[1:]:
            np.minimum(best, G.mul(h, allx), out=best)
    else:
        moves = [G.mul(int(g), allx) for g in H.gens]
        while True:
            new = best.copy()
            for m in moves:
                np.minimum(new, best[m], out=new)
            if np.array_equal(new, best):
                break
            best = new
    reps, coset_of = np.unique(best, return_inverse=True)
    return reps, coset_of


# -- Sylow subgroups ----------------------------------------------------------------

def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def sylow_subgroup(G: FiniteGroup, p: int, label: str = "") -> Subgroup:
    """Grow a p-subgroup through p-elements of its normalizer until it is Sylow.

    Starts from a p-element of maximal order (smallest index among ties).
    """
    target = p_part(G.order, p)
    orders = G.element_orders
    pel = np.flatnonzero(np.array([is_p_power(int(o), p) for o in orders]) & (orders > 1))
    if target == 1:
        return G.trivial()
    start = int(pel[np.lexsort((pel, -orders[pel]))][0])
    S = G.subgroup([start])
    while S.order < target:
        N = normalizer(G, S)
        cand = N.members[~S.mask[N.members]]
        grown = False
        for y in cand[np.lexsort((cand, -orders[cand]))]:
            o = int(orders[y])
            y = G.power(int(y), o // p_part(o, p))
            if S.mask[y]:
                continue
            S = G.subgroup(np.concatenate([S.gens, [y]]))
            grown = True
            break
        if not grown:
            raise NotClosedError("Sylow growth stalled")
    S.label = label or f"Syl{p}"
    S.gens = generating_set(G, S.members)
    return S


# -- subgroup conjugacy and the sweep ---------------------------------------------------

def class_signature(S: Subgroup) -> tuple:
    G = S.parent
    counts = np.bincount(G.class_of[S.members], minlength=len(G.conjugacy_classes()))
    return (S.order, tuple(int(c) for c in counts))


def conjugating_element(A: Subgroup, B: Subgroup) -> int | None:
    """Some g with A^g = B, or None."""
    G = A.parent
    if A.order != B.order:
        return None
    if A.order == 1:
        return 0
    gens = A.gens if A.gens.size else generating_set(G, A.members)
    cent_sizes = [centralizer(G, int(a)).order for a in gens]
    a0 = int(gens[int(np.argmin(cent_sizes))])
    C = centralizer(G, a0)
    cls = G.class_of[a0]
    targets = B.members[G.class_of[B.members] == cls]
    c_a0 = G.conjugator_from_rep(a0)
    inv_c = int(G.inv[c_a0])
    for b in targets:
        t = G.mul1(inv_c, G.conjugator_from_rep(int(b)))
        cand = G.mul(C.members, t)
        ok = np.ones(cand.size, dtype=bool)
        for a in gens:
            ok &= B.mask[G.conj(int(a), cand)]
            if not ok.any():
                break
        if ok.any():
            return int(cand[np.flatnonzero(ok)[0]])
    return None


def cyclic_subgroups(G: FiniteGroup):
    """(cyc_id array mapping element -> id of <x>, list of member arrays).

    ids are assigned in order of the smallest generator.
    """
    cyc_id = np.full(G.order, -1, dtype=np.int64)
    groups = []
    orders = G.element_orders
    for x in range(G.order):
        if cyc_id[x] >= 0:
            continue
        o = int(orders[x])
        pw = [0]
        y = 0
        for _ in range(o - 1):
            y = G.mul1(y, x)
            pw.append(y)
        mem = np.sort(np.array(pw, dtype=np.int64))
        gens_of = mem[orders[mem] == o]
        cyc_id[gens_of] = len(groups)
        groups.append(mem)
    return cyc_id, groups


def _orbit_reps_under(G: FiniteGroup, gens, cyc_id: np.ndarray, ids: np.ndarray,
                      cyc_groups) -> np.ndarray:
    """Representatives of <gens>-conjugation orbits on the cyclic subgroups ``ids``."""
    if len(gens) == 0:
        return ids
    ncyc = len(cyc_groups)
    parent = np.arange(ncyc)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # any generator of <x> works: take a member of full order
    orders = G.element_orders
    gen_elems = np.array([int(cyc_groups[i][np.flatnonzero(orders[cyc_groups[i]] ==
                                                           cyc_groups[i].size)[0]])
                          for i in ids], dtype=np.int64)
    for g in gens:
        imgs = cyc_id[G.conj(gen_elems, int(g))]
        for i, j in zip(ids, imgs):
            ri, rj = find(int(i)), find(int(j))
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(int(i)) for i in ids])
    return np.unique(roots)


def subgroups_up_to_conjugacy(G: FiniteGroup, order_filter=None, max_order: int | None = None,
                              cap: int = SWEEP_CAP, proper: bool = False) -> list[Subgroup]:
    """One representative per conjugacy class of subgroups.

    Seeds with the cyclic subgroups and closes under joins with cyclic subgroups
    (taken up to conjugation by the normalizer of the current representative).
    ``max_order`` bounds the sweep (joins larger than it are abandoned), which
    allows bounded sweeps in groups above ``cap``.  ``order_filter`` is an int or
    a predicate applied to the returned representatives.
    """
    if max_order is None and G.order > cap:
        raise CapExceededError(f"full subgroup sweep of {G.label} (order {G.order}) exceeds cap {cap}")
    if G.order <= TABLE_CAP:
        G.build_table()
    limit = max_order
    cyc_id, cyc_groups = cyclic_subgroups(G)
    cyc_ids = np.arange(len(cyc_groups))
    orders = G.element_orders
    cyc_gen = np.array([int(m[np.flatnonzero(orders[m] == m.size)[0]]) for m in cyc_groups])

    reps: list[Subgroup] = []
    by_sig: dict = {}

    def register(S: Subgroup) -> bool:
        sig = class_signature(S)
        for R in by_sig.get(sig, []):
            if R.same_as(S) or conjugating_element(R, S) is not None:
                return False
        by_sig.setdefault(sig, []).append(S)
        reps.append(S)
        return True

    register(G.trivial())
    for i in _orbit_reps_under(G, G.gens, cyc_id, cyc_ids, cyc_groups):
        m = cyc_groups[i]
        if limit is not None and m.size > limit:
            continue
        register(Subgroup(G, m, np.array([cyc_gen[i]]), ""))
    k = 0
    while k < len(reps):
        R = reps[k]
        k += 1
        if R.order == G.order:
            continue
        N = normalizer(G, R)
        outside = cyc_ids[~R.mask[cyc_gen]]
        cands = _orbit_reps_under(G, N.gens, cyc_id, outside, cyc_groups)
        seen_here = set()
        for i in cands:
            mem = closure(G, np.concatenate([R.gens, [cyc_gen[i]]]), limit=limit)
            if mem is None:
                continue
            key = mem.tobytes()
            if key in seen_here:
                continue
            seen_here.add(key)
            register(Subgroup(G, mem, generating_set(G, mem), ""))
    reps.sort(key=lambda S: (S.order, class_signature(S)[1], S.members[:8].tolist()))
    if proper:
        reps = [S for S in reps if S.order < G.order]
    if order_filter is not None:
        pred = (lambda S: S.order == order_filter) if isinstance(order_filter, int) else order_filter
        reps = [S for S in reps if pred(S)]
    return reps


def describe(S: Subgroup) -> str:
    """Short structural tag: order plus element-order profile."""
    orders = S.element_orders()
    prof = np.bincount(orders)
    parts = [f"{o}^{c}" for o, c in enumerate(prof) if c and o > 1]
    return f"|H|={S.order}" + (f" [{' '.join(parts)}]" if parts else "")


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def sz_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


def psu3_order(q: int) -> int:
    return q**3 * (q * q - 1) * (q**3 + 1) // gcd(3, q + 1)
