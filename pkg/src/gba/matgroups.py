"""
Matrix groups over finite fields: SL2/PSL2, SU3/PSU3 and the Suzuki groups.

Matrices are int arrays of field codes.  A projective element is stored in
canonical form: the lexicographically smallest of its multiples by the central
scalars of the group (row-major entries compared by code, so a first nonzero
entry of 1 wins whenever some central scalar achieves it).  After closure each
group gets a faithful action on (projective) points, which is what
``FiniteGroup`` computes with.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .errors import (CapExceededError, NotClosedError, PreconditionError, UnknownNameError,
                     WrongCharacteristicError, WrongFieldShapeError)
from .ffield import FieldElem, FieldSpec, field_of_order, make_field, prime_power
from .groups import (
    DEFAULT_GROUP_CAP,
    FiniteGroup,
    Subgroup,
    center,
    conjugates,
    normalizer,
    psl2_order,
    psu3_order,
    sylow_subgroup,
    sz_order,
)


# -- vectorized matrix arithmetic ---------------------------------------------------

def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Batched product over F; A and B have shape (..., n, n) and broadcast."""
    A, B = np.broadcast_arrays(A, B)
    n = A.shape[-1]
    out = np.empty(A.shape, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            acc = F.mul(A[..., i, 0], B[..., 0, j])
            for k in range(1, n):
                acc = F.add(acc, F.mul(A[..., i, k], B[..., k, j]))
            out[..., i, j] = acc
    return out


def vecmat(F: FieldSpec, V: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Row vectors times matrices: V (..., n), M (..., n, n) -> (..., n)."""
    V, M = np.broadcast_arrays(V[..., :, None], M)
    n = M.shape[-1]
    out = np.empty(M.shape[:-1], dtype=np.int64)
    for j in range(n):
        acc = F.mul(V[..., 0, 0], M[..., 0, j])
        for k in range(1, n):
            acc = F.add(acc, F.mul(V[..., k, 0], M[..., k, j]))
        out[..., j] = acc
    return out


def _encode(F: FieldSpec, flat: np.ndarray) -> np.ndarray:
    m = flat.shape[-1]
    w = np.array([F.q ** (m - 1 - i) for i in range(m)], dtype=np.int64)
    return flat.astype(np.int64) @ w


def canonicalize(F: FieldSpec, mats: np.ndarray, scalars) -> tuple[np.ndarray, np.ndarray]:
    """(canonical matrices, int64 keys) for a batch (N, n, n)."""
    N, n, _ = mats.shape
    if float(F.q) ** (n * n) >= 2.0**62:
        raise CapExceededError(f"matrix keys over {F!r} in dimension {n} overflow int64")
    flat = mats.reshape(N, n * n)
    best = flat
    best_key = _encode(F, flat)
    for lam in scalars:
        if lam == 1:
            continue
        cand = F.mul(flat, lam)
        key = _encode(F, cand)
        better = key < best_key
        best = np.where(better[:, None], cand, best)
        best_key = np.where(better, key, best_key)
    return best.reshape(N, n, n), best_key


def normalize_projective(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """Scale vectors (..., n) so the first nonzero coordinate is 1."""
    nz = V != 0
    first = np.argmax(nz, axis=-1)
    lead = np.take_along_axis(V, first[..., None], axis=-1)
    return F.mul(V, F.inv(lead))


# -- group elements --------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElem:
    """A matrix over a FieldSpec in canonical form for its central scalars."""

    spec: FieldSpec
    n: int
    entries: tuple
    scalars: tuple = (1,)

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows, scalars=(1,)) -> "GroupElem":
        arr = np.array([[spec.elem(x).value if isinstance(x, FieldElem) else spec.from_int(int(x))
                         for x in row] for row in rows], dtype=np.int64)
        return cls.from_array(spec, arr, scalars)

    @classmethod
    def from_array(cls, spec: FieldSpec, arr, scalars=(1,)) -> "GroupElem":
        arr = np.asarray(arr, dtype=np.int64)
        n = arr.shape[0]
        canon, _ = canonicalize(spec, arr[None], scalars)
        return cls(spec, n, tuple(int(v) for v in canon.ravel()), tuple(scalars))

    @property
    def canonical(self) -> bool:
        return True

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.n, self.n)

    def matrix(self) -> list[list[FieldElem]]:
        return [[FieldElem(self.spec, v) for v in row] for row in self.array]

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        prod = matmul(self.spec, self.array, other.array)
        return GroupElem.from_array(self.spec, prod, self.scalars)

    def __pow__(self, k: int) -> "GroupElem":
        if k < 0:
            raise ValueError("use positive powers")
        r = GroupElem.from_array(self.spec, np.eye(self.n, dtype=np.int64), self.scalars)
        for _ in range(k):
            r = r * self
        return r

    def trace(self) -> FieldElem:
        t = 0
        for i in range(self.n):
            t = self.spec.add(t, self.entries[i * self.n + i])
        return FieldElem(self.spec, int(t))

    def is_identity(self) -> bool:
        return self == GroupElem.from_array(self.spec, np.eye(self.n, dtype=np.int64), self.scalars)

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    def key(self) -> int:
        return int(_encode(self.spec, np.array(self.entries, dtype=np.int64)))


class MatrixGroup(FiniteGroup):
    """A FiniteGroup that remembers its matrices."""

    def __init__(self, perms, label, spec: FieldSpec, mats: np.ndarray, scalars, family: str,
                 q: int, gens=None):
        super().__init__(perms, label, gens=gens)
        self.spec = spec
        self.mats = mats
        self.dim = mats.shape[1]
        self.scalars = tuple(int(s) for s in scalars)
        self.family = family
        self.q = q
        keys = _encode(spec, mats.reshape(mats.shape[0], -1))
        self._mat_order = np.argsort(keys)
        self._mat_keys = keys[self._mat_order]

    def element(self, i: int) -> GroupElem:
        return GroupElem(self.spec, self.dim, tuple(int(v) for v in self.mats[i].ravel()),
                         self.scalars)

    def index(self, g) -> int:
        """Index of a GroupElem or raw matrix (canonicalized first)."""
        arr = g.array if isinstance(g, GroupElem) else np.asarray(g, dtype=np.int64)
        _, key = canonicalize(self.spec, arr[None], self.scalars)
        pos = int(np.searchsorted(self._mat_keys, key[0]))
        if pos >= len(self._mat_keys) or self._mat_keys[pos] != key[0]:
            raise KeyError("matrix is not an element of " + self.label)
        return int(self._mat_order[pos])

    def indices_of(self, arrs: np.ndarray) -> np.ndarray:
        _, keys = canonicalize(self.spec, np.asarray(arrs, dtype=np.int64), self.scalars)
        pos = np.minimum(np.searchsorted(self._mat_keys, keys), len(self._mat_keys) - 1)
        if not np.all(self._mat_keys[pos] == keys):
            raise KeyError("some matrices are not elements of " + self.label)
        return self._mat_order[pos]

    def traces(self) -> np.ndarray:
        t = self.mats[:, 0, 0]
        for i in range(1, self.dim):
            t = self.spec.add(t, self.mats[:, i, i])
        return t

    def members_where(self, pred, label: str) -> Subgroup:
        mem = np.flatnonzero(pred(self.mats))
        return self.subgroup_from_members(mem, label)


def _closure_mats(F: FieldSpec, gens: np.ndarray, scalars, cap: int):
    """BFS closure; returns canonical matrices in discovery order (identity first)."""
    n = gens.shape[1]
    ident = np.eye(n, dtype=np.int64)[None]
    gens, gkeys = canonicalize(F, gens, scalars)
    order = np.argsort(gkeys, kind="stable")
    gkeys, uniq = np.unique(gkeys[order], return_index=True)
    gens = gens[order][uniq]
    start, skey = canonicalize(F, ident, scalars)
    mats = [start]
    seen = {int(skey[0])}
    frontier = start
    total = 1
    while frontier.shape[0]:
        prods = matmul(F, frontier[:, None], gens[None, :]).reshape(-1, n, n)
        prods, keys = canonicalize(F, prods, scalars)
        _, first = np.unique(keys, return_index=True)
        first.sort()
        fresh = [i for i in first if int(keys[i]) not in seen]
        if not fresh:
            break
        fresh = np.array(fresh)
        seen.update(int(k) for k in keys[fresh])
        frontier = prods[fresh]
        mats.append(frontier)
        total += len(fresh)
        if total > cap:
            raise CapExceededError(f"closure exceeds group cap {cap}")
    return np.concatenate(mats)


def _point_action(F: FieldSpec, mats: np.ndarray, projective: bool) -> np.ndarray:
    """Permutations of all elements on the orbit(s) of e1, e2, ... under right action."""
    n = mats.shape[1]
    N = mats.shape[0]
    pts_list: list[np.ndarray] = []
    for basis_vec in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[basis_vec] = 1
        imgs = vecmat(F, v[None], mats)
        if projective:
            imgs = normalize_projective(F, imgs)
        orbit = np.unique(imgs, axis=0)
        if any(len(np.unique(np.concatenate([p, orbit]), axis=0)) < len(p) + len(orbit)
               for p in pts_list):
            continue
        pts_list.append(orbit)
        pts = np.concatenate(pts_list)
        keys = _encode(F, pts)
        korder = np.argsort(keys)
        skeys = keys[korder]
        img = vecmat(F, pts[None, :, :], mats[:, None, :, :])
        if projective:
            img = normalize_projective(F, img)
        ikeys = _encode(F, img)
        perms = korder[np.searchsorted(skeys, ikeys)]
        if np.unique(perms, axis=0).shape[0] == N:
            # relabel so that points are in key order, first orbit first
            return perms
    raise NotClosedError("could not find a faithful point action")


def enumerate_group(gens, label: str, spec: FieldSpec | None = None, scalars=(1,),
                    projective: bool = True, family: str = "matrix", q: int | None = None,
                    cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    """Closure of matrix generators (GroupElems or arrays) as a MatrixGroup."""
    if len(gens) and isinstance(gens[0], GroupElem):
        spec = gens[0].spec
        arrs = np.array([g.array for g in gens], dtype=np.int64)
    else:
        arrs = np.asarray(gens, dtype=np.int64)
    if spec is None:
        raise ValueError("field spec required for raw matrices")
    if arrs.size == 0:
        raise ValueError("need at least one generator")
    mats = _closure_mats(spec, arrs, scalars, cap)
    perms = _point_action(spec, mats, projective and len(scalars) >= 1)
    G = MatrixGroup(perms, label, spec, mats, scalars, family, q or spec.q)
    G._gens = G.indices_of(arrs) if arrs.shape[0] <= 64 else None
    return G


# -- families --------------------------------------------------------------------------

def _scalars_with(F: FieldSpec, pred) -> tuple[int, ...]:
    return tuple(int(v) for v in range(1, F.q) if pred(v))


def _transvection_gens(F: FieldSpec) -> np.ndarray:
    gens = []
    for i in range(F.a):
        b = F.p**i
        gens.append([[1, b], [0, 1]])
        gens.append([[1, 0], [b, 1]])
    return np.array(gens, dtype=np.int64)


@lru_cache(maxsize=None)
def build_sl2(q: int, cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    F = field_of_order(q)
    if q * (q * q - 1) > cap:
        raise CapExceededError(f"|SL2({q})| exceeds cap {cap}")
    G = enumerate_group(_transvection_gens(F), f"SL2({q})", F, (1,), projective=False,
                        family="sl2", q=q, cap=cap)
    assert G.order == q * (q * q - 1), G.order
    return G


@lru_cache(maxsize=None)
def build_psl2(q: int, cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    F = field_of_order(q)
    if psl2_order(q) > cap:
        raise CapExceededError(f"|PSL2({q})| exceeds cap {cap}")
    scal = _scalars_with(F, lambda v: int(F.mul(v, v)) == 1)
    G = enumerate_group(_transvection_gens(F), f"PSL2({q})", F, scal, projective=True,
                        family="psl2", q=q, cap=cap)
    if G.order != psl2_order(q):
        raise NotClosedError(f"|PSL2({q})| = {G.order}, expected {psl2_order(q)}")
    return G


def _unitary_parts(q: int):
    pa = prime_power(q)
    if pa is None:
        raise WrongFieldShapeError(f"{q} is not a prime power")
    F = make_field(pa[0], 2 * pa[1])
    return F


def p_dagger_matrices(q: int) -> np.ndarray:
    """All matrices [[1, a1, a2], [0, 1, -a1^q], [0, 0, 1]] with a2 + a2^q + a1^(q+1) = 0."""
    F = _unitary_parts(q)
    out = []
    allx = np.arange(F.q)
    for a1 in range(F.q):
        n1 = int(F.pow(a1, q + 1))
        ok = F.add(F.add(allx, F.pow(allx, q)), n1) == 0
        for a2 in np.flatnonzero(ok):
            out.append([[1, a1, int(a2)], [0, 1, int(F.neg(F.pow(a1, q)))], [0, 0, 1]])
    return np.array(out, dtype=np.int64)


def hermitian_gram(q: int) -> np.ndarray:
    return np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=np.int64)


def conj_transpose(F: FieldSpec, q: int, mats: np.ndarray) -> np.ndarray:
    return np.swapaxes(F.pow(mats, q), -1, -2)


def is_unitary(F: FieldSpec, q: int, mats: np.ndarray) -> np.ndarray:
    """M^dagger J M == J, batched."""
    J = hermitian_gram(q)
    lhs = matmul(F, matmul(F, conj_transpose(F, q, mats), J), mats)
    return np.all(lhs == J, axis=(-1, -2))


def _small_gens(F: FieldSpec, mats: np.ndarray) -> np.ndarray:
    """Greedy generating subset of a small closed matrix set."""
    chosen: list[np.ndarray] = []
    have: set[int] = set()
    keys = _encode(F, mats.reshape(len(mats), -1))
    for m, k in zip(mats, keys):
        if int(k) in have:
            continue
        chosen.append(m)
        cl = _closure_mats(F, np.array(chosen), (1,), cap=len(mats) + 1)
        have = set(int(x) for x in _encode(F, cl.reshape(len(cl), -1)))
        if len(have) == len(mats):
            break
    return np.array(chosen)


def _weyl(F: FieldSpec) -> np.ndarray:
    w = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=np.int64)
    if F.p != 2:
        w = F.neg(w)
    return w


@lru_cache(maxsize=None)
def _build_u3(q: int, projective: bool, cap: int) -> MatrixGroup:
    F = _unitary_parts(q)
    expected = psu3_order(q) if projective else q**3 * (q * q - 1) * (q**3 + 1)
    if expected > cap:
        raise CapExceededError(f"order {expected} exceeds cap {cap}")
    P = p_dagger_matrices(q)
    pg = _small_gens(F, P)
    w = _weyl(F)
    opp = matmul(F, matmul(F, w, pg), w)
    gens = np.concatenate([pg, opp])
    if projective:
        scal = _scalars_with(F, lambda v: int(F.pow(v, 3)) == 1 and int(F.pow(v, q + 1)) == 1)
        label, fam = f"PSU3({q})", "psu3"
    else:
        scal, label, fam = (1,), f"SU3({q})", "su3"
    G = enumerate_group(gens, label, F, scal, projective=projective, family=fam, q=q, cap=cap)
    if G.order != expected:
        raise NotClosedError(f"|{label}| = {G.order}, expected {expected}")
    return G


def build_psu3(q: int, cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    return _build_u3(q, True, cap)


def build_su3(q: int, cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    return _build_u3(q, False, cap)


def sz_parameters(q: int) -> tuple[FieldSpec, int]:
    pa = prime_power(q)
    if pa is None or pa[0] != 2 or pa[1] % 2 == 0 or pa[1] < 3:
        raise WrongFieldShapeError(f"Suzuki groups need q = 2^(2a+1) >= 8, got {q}")
    return make_field(2, pa[1]), (pa[1] - 1) // 2


def sz_u2_matrix(F: FieldSpec, a: int, alpha: int, beta: int) -> np.ndarray:
    """The lower unitriangular Sylow-2 element with parameters (alpha, beta)."""
    th = 2 ** (a + 1)
    at = int(F.pow(alpha, th))
    bt = int(F.pow(beta, th))
    r3 = int(F.add(F.mul(alpha, at), beta))
    r4 = int(F.add(F.add(F.mul(F.mul(alpha, alpha), at), F.mul(alpha, beta)), bt))
    return np.array([[1, 0, 0, 0],
                     [alpha, 1, 0, 0],
                     [r3, at, 1, 0],
                     [r4, beta, alpha, 1]], dtype=np.int64)


def sz_tau() -> np.ndarray:
    return np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=np.int64)


def sz_u2_all(q: int) -> np.ndarray:
    F, a = sz_parameters(q)
    return np.array([sz_u2_matrix(F, a, al, be) for al in range(q) for be in range(q)])


@lru_cache(maxsize=None)
def build_sz(q: int, cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    F, a = sz_parameters(q)
    if sz_order(q) > cap:
        raise CapExceededError(f"|Sz({q})| = {sz_order(q)} exceeds cap {cap}")
    U = sz_u2_all(q)
    ug = _small_gens(F, U)
    t = sz_tau()
    gens = np.concatenate([ug, matmul(F, matmul(F, t, ug), t)])
    G = enumerate_group(gens, f"Sz({q})", F, (1,), projective=True, family="sz", q=q, cap=cap)
    if G.order != sz_order(q):
        raise NotClosedError(f"|Sz({q})| = {G.order}, expected {sz_order(q)}")
    G.sz_a = a
    return G


def build_group(label: str, cap: int = DEFAULT_GROUP_CAP) -> FiniteGroup:
    """Parse labels like 'PSL2(8)', 'SL2(4)', 'Sz(8)', 'PSU3(4)', 'SU3(2)', 'A5'."""
    s = label.replace(" ", "").upper()
    if s.startswith("A") and s[1:].isdigit():
        return alternating_group(int(s[1:]))
    if "(" not in s or not s.endswith(")"):
        raise UnknownNameError(f"cannot parse group label {label!r}")
    head, arg = s[:-1].split("(", 1)
    q = int(arg)
    builders = {"PSL2": build_psl2, "SL2": build_sl2, "SZ": build_sz, "2B2": build_sz,
                "PSU3": build_psu3, "SU3": build_su3}
    if head not in builders:
        raise UnknownNameError(f"unknown group family {head!r}")
    return builders[head](q, cap)


# -- permutation models ----------------------------------------------------------------------

def enumerate_perm_group(gens, label: str, cap: int = DEFAULT_GROUP_CAP) -> FiniteGroup:
    gens = np.atleast_2d(np.asarray(gens, dtype=np.int64))
    npts = gens.shape[1]
    ident = np.arange(npts)[None]
    rows = [ident]
    seen = {ident[0].tobytes()}
    frontier = ident
    total = 1
    while frontier.shape[0]:
        # right action: w^(xg) = (w^x)^g
        prods = np.take_along_axis(
            np.broadcast_to(gens[None], (frontier.shape[0],) + gens.shape),
            np.broadcast_to(frontier[:, None, :], (frontier.shape[0], gens.shape[0], npts)),
            axis=2).reshape(-1, npts)
        fresh = []
        for r in prods:
            b = r.tobytes()
            if b not in seen:
                seen.add(b)
                fresh.append(r)
        if not fresh:
            break
        frontier = np.array(fresh)
        rows.append(frontier)
        total += len(fresh)
        if total > cap:
            raise CapExceededError(f"closure exceeds cap {cap}")
    G = FiniteGroup(np.concatenate(rows), label)
    return G


def alternating_group(n: int) -> FiniteGroup:
    c3 = np.arange(n)
    c3[[0, 1, 2]] = [1, 2, 0]
    if n % 2:
        cyc = np.roll(np.arange(n), -1)
    else:
        cyc = np.concatenate([[0], np.roll(np.arange(1, n), -1)])
    return enumerate_perm_group([c3, cyc], f"A{n}")


# -- named subgroups -------------------------------------------------------------------------

def _diag_mask(mats):
    n = mats.shape[1]
    off = ~np.eye(n, dtype=bool)
    return np.all(mats[:, off] == 0, axis=1)


def _lower_unitri(mats):
    n = mats.shape[1]
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    return np.all(mats[:, upper] == 0, axis=1) & np.all(
        mats[:, np.arange(n), np.arange(n)] == 1, axis=1)


def _upper_unitri(mats):
    return _lower_unitri(np.swapaxes(mats, 1, 2))


def cyclic_of_order(G: FiniteGroup, s: int, label: str = "") -> Subgroup:
    cand = np.flatnonzero(G.element_orders == s)
    if cand.size == 0:
        raise UnknownNameError(f"{G.label} has no element of order {s}")
    return G.subgroup([int(cand[0])], label or f"C{s}")


def named_subgroup(G: FiniteGroup, name: str, **params) -> Subgroup:
    """Subgroups by name.

    Every family: trivial, whole, sylow (p=), sylow-center (p=), cyclic (s=), borel.
    psl2/sl2: unipotent (upper unitriangular), lower-unipotent, torus-split.
    sz: U2, Z(U2), T (diagonal torus in N(U2)).
    psu3/su3: P, Z(P), T, L, Q, R, T1 (order=), PT1 (order=), N(Z(P)).
    """
    fam = getattr(G, "family", "perm")
    key = name.strip()
    if key == "trivial":
        return G.trivial()
    if key == "whole":
        return G.whole()
    if key == "sylow":
        return sylow_subgroup(G, int(params.get("p", 2)))
    if key in ("sylow-center", "Z(sylow)"):
        S = sylow_subgroup(G, int(params.get("p", 2)))
        return center(S, f"Z(Syl{params.get('p', 2)})")
    if key == "cyclic":
        return cyclic_of_order(G, int(params["s"]))
    if fam in ("psl2", "sl2"):
        F = G.spec
        if key in ("unipotent", "borel-unipotent"):
            return G.members_where(_upper_unitri, "U")
        if key == "lower-unipotent":
            return G.members_where(_lower_unitri, "U-")
        if key == "borel":
            return G.members_where(lambda m: m[:, 1, 0] == 0, "B")
        if key == "torus-split":
            return G.members_where(_diag_mask, "T")
    if fam == "sz":
        if key in ("U2", "P"):
            return G.members_where(_lower_unitri, "U2")
        if key in ("Z(U2)", "Z(P)"):
            return G.members_where(lambda m: _lower_unitri(m) & (m[:, 1, 0] == 0), "Z(U2)")
        if key in ("U3", "U2^tau"):
            return G.members_where(_upper_unitri, "U3")
        if key == "T":
            return G.members_where(_diag_mask, "T")
        if key in ("borel", "N(Z(P))"):
            return normalizer(G, named_subgroup(G, "Z(U2)"), "N(Z(P))")
    if fam in ("psu3", "su3"):
        F = G.spec
        q = G.q
        sub_q = np.array(sorted(int(v) for v in range(F.q) if int(F.pow(v, q)) == v))
        in_fq = np.zeros(F.q, dtype=bool)
        in_fq[sub_q] = True
        if key == "P":
            return G.members_where(_upper_unitri, "P")
        if key == "Z(P)":
            return G.members_where(lambda m: _upper_unitri(m) & (m[:, 0, 1] == 0), "Z(P)")
        if key == "Q":
            return G.members_where(lambda m: _upper_unitri(m) & in_fq[m[:, 0, 1]], "Q")
        if key == "T":
            return G.members_where(_diag_mask, "T")
        if key == "L":
            def is_l(m):
                shape = (m[:, 0, 1] == 0) & (m[:, 1, 0] == 0) & (m[:, 1, 2] == 0) & (m[:, 2, 1] == 0)
                corner = m[:, [0, 0, 2, 2], [0, 2, 0, 2]]
                return shape & (m[:, 1, 1] == 1) & np.all(in_fq[corner], axis=1)
            return _projective_members(G, is_l, "L")
        if key == "R":
            def is_r(m):
                return _diag_mask(m) & (m[:, 1, 1] == 1) & in_fq[m[:, 0, 0]] & in_fq[m[:, 2, 2]]
            return _projective_members(G, is_r, "R")
        if key in ("T1", "PT1"):
            s = int(params["order"])
            T = named_subgroup(G, "T")
            cand = T.members[G.element_orders[T.members] == s]
            if cand.size == 0:
                raise UnknownNameError(f"torus of {G.label} has no element of order {s}")
            T1 = G.subgroup([int(cand[0])], f"T1[{s}]")
            if key == "T1":
                return T1
            P = named_subgroup(G, "P")
            return G.subgroup(np.concatenate([P.gens, T1.gens]), f"P:T1[{s}]")
        if key in ("N(Z(P))", "borel"):
            return normalizer(G, named_subgroup(G, "Z(P)"), "N(Z(P))")
    raise UnknownNameError(f"unknown subgroup name {name!r} for family {fam!r}")


def _projective_members(G: MatrixGroup, pred, label: str) -> Subgroup:
    """Members having some central-scalar multiple that satisfies pred."""
    mask = np.zeros(G.order, dtype=bool)
    flat = G.mats
    for lam in G.scalars:
        mask |= pred(G.spec.mul(flat, lam))
    return G.subgroup_from_members(np.flatnonzero(mask), label)


def class_product_count(G: FiniteGroup, C1, C2, h: int) -> int:
    """#{(x, y) in C1 x C2 : xy = h}, as the number of x in C1 with x^-1 h in C2."""
    xs = C1.members
    return int(C2.mask[G.mul(G.inv[xs], int(h))].sum())


# -- explicit matrix witnesses ---------------------------------------------------------------------

def sz_conjugate_pair(F: FieldSpec, a: int, b1: int, b2: int) -> tuple[np.ndarray, np.ndarray]:
    """The lower element h1(b1) and upper element h2(b2) of two conjugates of Z(P)."""
    th = 2 ** (a + 1)
    t1, t2 = int(F.pow(b1, th)), int(F.pow(b2, th))
    h1 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [b1, 0, 1, 0], [t1, b1, 0, 1]], dtype=np.int64)
    h2 = np.array([[1, 0, b2, t2], [0, 1, 0, b2], [0, 0, 1, 0], [0, 0, 0, 1]], dtype=np.int64)
    return h1, h2


def suzuki_product_identity(q: int = 8) -> dict:
    """Over all (b1, b2): (h1 h2)^2 = 1 exactly when b1 = 0 or b2 = 0."""
    F, a = sz_parameters(q)
    eye = np.eye(4, dtype=np.int64)
    bad = []
    for b1 in range(q):
        for b2 in range(q):
            h1, h2 = sz_conjugate_pair(F, a, b1, b2)
            prod = matmul(F, h1, h2)
            inv = bool(np.array_equal(matmul(F, prod, prod), eye))
            if inv != (b1 == 0 or b2 == 0):
                bad.append((b1, b2))
    return {"q": q, "cases": q * q, "counterexamples": bad, "holds": not bad}


@dataclass
class TripleCheck:
    """h1 = h2 h3 with the three elements in pairwise distinct conjugates of a TI subgroup."""
    matrices: list
    product_ok: bool
    orders: list
    traces: list
    containers: list          # indices (in the conjugates list) of the subgroup holding each h_i
    distinct: bool
    holds: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _triple_check(G: MatrixGroup, S: Subgroup, h1, h2, h3) -> TripleCheck:
    F = G.spec
    ok = bool(np.array_equal(canonicalize(F, matmul(F, h2, h3)[None], G.scalars)[0],
                             canonicalize(F, h1[None], G.scalars)[0]))
    idx = [G.index(m) for m in (h1, h2, h3)]
    conj = conjugates(S)
    where = []
    for i in idx:
        hits = [k for k, C in enumerate(conj) if C.contains(i)]
        where.append(hits[0] if len(hits) == 1 else None)
    orders = [int(G.element_orders[i]) for i in idx]
    traces = []
    for m in (h1, h2, h3):
        t = int(m[0, 0])
        for k in range(1, m.shape[0]):
            t = int(F.add(t, m[k, k]))
        traces.append(t)
    distinct = None not in where and len(set(where)) == 3
    return TripleCheck([m.tolist() for m in (h1, h2, h3)], ok, orders, traces, where,
                       distinct, ok and distinct)


def suzuki_order4_triple(q: int = 8) -> TripleCheck:
    """Two order-4 elements, one in U2 and one in U2^tau, whose product is an involution
    lying in a third Sylow 2-subgroup."""
    if q != 8:
        raise WrongFieldShapeError("the explicit 0/1 matrices are stated for q = 8")
    G = build_sz(q)
    h2 = np.array([[1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, 0], [1, 0, 1, 1]], dtype=np.int64)
    h3 = np.array([[1, 1, 0, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]], dtype=np.int64)
    h1 = np.array([[1, 1, 0, 1], [1, 0, 1, 0], [1, 0, 0, 1], [1, 1, 1, 1]], dtype=np.int64)
    P = named_subgroup(G, "sylow", p=2)
    return _triple_check(G, P, h1, h2, h3)


def psl2_sylow_triple(q: int) -> TripleCheck:
    """[[-3,1],[-4,1]] = [[1,1],[0,1]] [[1,0],[-4,1]]: three p-elements in three distinct
    Sylow p-subgroups of PSL2(q), q odd."""
    pa = prime_power(q)
    if pa is None or pa[0] == 2:
        raise WrongFieldShapeError(f"need odd q, got {q}")
    G = build_psl2(q)
    F = G.spec
    f = lambda v: int(F.from_int(v))
    h1 = np.array([[f(-3), 1], [f(-4), 1]], dtype=np.int64)
    h2 = np.array([[1, 1], [0, 1]], dtype=np.int64)
    h3 = np.array([[1, 0], [f(-4), 1]], dtype=np.int64)
    P = named_subgroup(G, "sylow", p=pa[0])
    return _triple_check(G, P, h1, h2, h3)


def trace_criterion(q: int, order: int) -> dict:
    """Exhaustive over SL2(q): order 2 (char 2) iff trace 0; order 3 iff trace -1."""
    G = build_sl2(q)
    F = G.spec
    tr = G.traces()
    ords = G.element_orders
    if order == 2:
        if F.p != 2:
            raise WrongCharacteristicError("the order-2 trace criterion is for even q")
        lhs, rhs = ords <= 2, tr == 0
    elif order == 3:
        lhs, rhs = ords == 3, tr == int(F.neg(1))
    else:
        raise PreconditionError("order must be 2 or 3")
    return {"q": q, "order": order, "elements": int(G.order),
            "mismatches": int((lhs != rhs).sum()), "holds": bool(np.array_equal(lhs, rhs))}
