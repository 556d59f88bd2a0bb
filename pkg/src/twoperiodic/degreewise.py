"""Degree-by-degree linear algebra over F_p, independent of the Groebner machinery.

Every graded object is cut into finite-dimensional slices: the degree-e part
of coker(relations) is the span of the monomial basis of the free module in
degree e modulo the products of relations (and of the ideal generators) with
monomials.  Maps, kernels, homology and free resolutions are then plain
matrix computations.  Only polynomial multiplication is shared with the rest
of the package.
"""

from __future__ import annotations

import numpy as np

from .core import mon_mul


def _rref(A: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (rows, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(_rref(A, p)[1])


def left_nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : v A = 0}."""
    n = A.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if A.shape[1] == 0:
        return np.eye(n, dtype=np.int64)
    aug = np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = _rref(aug, p)
    k = A.shape[1]
    out = [R[i, k:] for i, c in enumerate(piv) if c >= k]
    return np.array(out, dtype=np.int64).reshape(len(out), n)


class Presentation:
    """coker of ``relations`` on the free module with generator ``degrees`` over S/I."""

    def __init__(self, ring, degrees, relations):
        self.ring = ring
        self.S = ring.S
        self.degrees = tuple(degrees)
        self.relations = [dict(r) for r in relations if r]
        self.rel_degrees = [self._degree(r) for r in self.relations]
        self._slices = {}

    def _degree(self, v):
        (m, i) = next(iter(v))
        return self.S.deg(m) + self.degrees[i]

    def ambient(self, e: int):
        """Monomial basis (mon, position) of the free module in degree e."""
        basis = []
        for i, a in enumerate(self.degrees):
            if e - a >= 0:
                basis.extend((m, i) for m in self.S.monomials(e - a))
        return basis

    def slice(self, e: int):
        hit = self._slices.get(e)
        if hit is None:
            hit = self._build(e)
            self._slices[e] = hit
        return hit

    def _build(self, e):
        S, p = self.S, self.S.p
        basis = self.ambient(e)
        index = {t: k for k, t in enumerate(basis)}
        n = len(basis)
        rows = []

        def push(vec):
            row = np.zeros(n, dtype=np.int64)
            for t, c in vec.items():
                row[index[t]] = c % p
            rows.append(row)

        for r, b in zip(self.relations, self.rel_degrees):
            if e - b >= 0:
                for m in S.monomials(e - b):
                    push({(mon_mul(mm, m), i): c for (mm, i), c in r.items()})
        for f in self.ring.ideal:
            df = S.poly_degree(f)
            for i, a in enumerate(self.degrees):
                if e - a - df >= 0:
                    for m in S.monomials(e - a - df):
                        push({(mon_mul(mm, m), i): c for mm, c in f.items()})
        if rows:
            R, piv = _rref(np.array(rows), p)
        else:
            R, piv = np.zeros((0, n), dtype=np.int64), []
        free = [k for k in range(n) if k not in set(piv)]
        return Slice(basis, index, R, piv, free, p)

    def dim(self, e: int) -> int:
        return len(self.slice(e).free)


class Slice:
    """Degree-e part of a presented module: ambient basis, relation echelon, quotient basis."""

    def __init__(self, basis, index, R, pivots, free, p):
        self.basis = basis
        self.index = index
        self.R = R
        self.pivots = pivots
        self.free = free
        self.p = p

    @property
    def dim(self):
        return len(self.free)

    def coords(self, V: np.ndarray) -> np.ndarray:
        """Quotient coordinates of ambient row vectors."""
        p = self.p
        V = np.asarray(V, dtype=np.int64) % p
        if self.pivots:
            V = (V - V[:, self.pivots] @ self.R) % p
        return V[:, self.free]

    def vectors(self, vecs) -> np.ndarray:
        rows = np.zeros((len(vecs), len(self.basis)), dtype=np.int64)
        for k, v in enumerate(vecs):
            for t, c in v.items():
                rows[k, self.index[t]] = c % self.p
        return rows

    def representatives(self):
        """Ambient vectors (as dicts) of the quotient basis."""
        return [{self.basis[k]: 1} for k in self.free]


def map_matrix(src: Presentation, tgt: Presentation, columns, e: int, degree: int = 0) -> np.ndarray:
    """Matrix (rows = basis of src_e) of the map given by ``columns`` into tgt_{e+degree}."""
    p = src.S.p
    s = src.slice(e)
    t = tgt.slice(e + degree)
    images = []
    for (m, i) in (s.basis[k] for k in s.free):
        col = columns[i]
        images.append({(mon_mul(mm, m), j): c for (mm, j), c in col.items()})
    if not images:
        return np.zeros((0, t.dim), dtype=np.int64)
    return t.coords(t.vectors(images))


def hilbert_function(ring, degrees, relations, lo: int, hi: int):
    P = Presentation(ring, degrees, relations)
    return [P.dim(e) for e in range(lo, hi + 1)]


def homology_dims(A: Presentation | None, B: Presentation, C: Presentation | None,
                  f_cols, g_cols, lo: int, hi: int):
    """dim ker(g) / im(f) at B in degrees lo..hi, for degree-0 maps."""
    p = B.S.p
    out = []
    for e in range(lo, hi + 1):
        b = B.dim(e)
        rg = rank_mod_p(map_matrix(B, C, g_cols, e), p) if C is not None else 0
        rf = rank_mod_p(map_matrix(A, B, f_cols, e), p) if A is not None else 0
        out.append(b - rg - rf)
    return out


# -- free resolutions by linear algebra ------------------------------------------------

class DegreewiseResolution:
    """A free resolution of coker(relations), valid in degrees <= ``bound``.

    F_0 and d_1 are the given presentation (not minimalized); later kernels
    are computed slice by slice, adding generators in each degree for the
    part of the kernel not generated from lower degrees.
    """

    def __init__(self, ring, degrees, relations, length: int, bound: int):
        self.ring = ring
        self.bound = bound
        S = ring.S
        rels = [dict(r) for r in relations if r]
        self.free_degrees = [tuple(degrees)]
        self.differentials = [None]
        if rels:
            P = Presentation(ring, degrees, ())
            self.free_degrees.append(tuple(P._degree(r) for r in rels))
            self.differentials.append(rels)
        while len(self.differentials) <= length and len(self.differentials) > 1 \
                and self.differentials[-1]:
            gens, degs = self._kernel(len(self.differentials) - 1)
            self.free_degrees.append(tuple(degs))
            self.differentials.append(gens)

    def _kernel(self, i):
        ring, S = self.ring, self.ring.S
        p = S.p
        src = Presentation(ring, self.free_degrees[i], ())
        tgt = Presentation(ring, self.free_degrees[i - 1], ())
        cols = self.differentials[i]
        gens, degs = [], []
        if not src.degrees:
            return gens, degs
        for e in range(min(src.degrees), self.bound + 1):
            sl = src.slice(e)
            if sl.dim == 0:
                continue
            K = left_nullspace(map_matrix(src, tgt, cols, e), p)
            if K.shape[0] == 0:
                continue
            # the part already generated: monomial multiples of earlier generators
            old = []
            for g, d in zip(gens, degs):
                if e - d >= 0:
                    for m in S.monomials(e - d):
                        old.append({(mon_mul(mm, m), j): c for (mm, j), c in g.items()})
            W = sl.coords(sl.vectors(old)) if old else np.zeros((0, sl.dim), dtype=np.int64)
            base = rank_mod_p(W, p)
            reps = sl.representatives()
            current = W
            for row in K:
                trial = np.concatenate([current, row[None, :]], axis=0)
                if rank_mod_p(trial, p) > base:
                    current = trial
                    base += 1
                    vec = {}
                    for k, c in enumerate(row):
                        if c:
                            (t,) = reps[k].keys()
                            vec[t] = int(c)
                    gens.append(vec)
                    degs.append(e)
        return gens, degs

    def betti_numbers(self, length: int):
        return [len(self.free_degrees[i]) if i < len(self.free_degrees) else 0
                for i in range(length + 1)]


def _tensor_block(ring, degs, N):
    n = len(N.degrees)
    return Presentation(ring, [a + c for a in degs for c in N.degrees],
                        [{(m, j * n + k): c for (m, k), c in s.items()}
                         for j in range(len(degs)) for s in N.relations])


def _tensor_cols(cols, n):
    return [{(m, r * n + k): c for (m, r), c in col.items()} for col in cols for k in range(n)]


def _hom_block(ring, degs, N):
    n = len(N.degrees)
    return Presentation(ring, [c - a for a in degs for c in N.degrees],
                        [{(m, j * n + k): c for (m, k), c in s.items()}
                         for j in range(len(degs)) for s in N.relations])


def _hom_cols(cols, rows, n):
    out = []
    for r in range(rows):
        for k in range(n):
            v = {}
            for j, col in enumerate(cols):
                for (m, rr), c in col.items():
                    if rr == r:
                        v[(m, j * n + k)] = c
            out.append(v)
    return out


class Oracle:
    """Tor, Ext, tensor and torsion dimensions computed slice by slice up to ``max_degree``."""

    def __init__(self, ring, max_degree: int = 12, slack: int = 8):
        self.ring = ring
        self.max_degree = max_degree
        self.slack = slack
        self._res = {}

    def resolution(self, M, length: int) -> DegreewiseResolution:
        key = (M.degrees, tuple(tuple(sorted(r.items())) for r in M.relations))
        res = self._res.get(key)
        if res is None or len(res.differentials) <= length and res.differentials[-1]:
            res = DegreewiseResolution(self.ring, M.degrees, M.relations, length,
                                       self.max_degree + self.slack)
            self._res[key] = res
        return res

    def _stage(self, res, i):
        if i < len(res.free_degrees):
            return res.free_degrees[i], res.differentials[i] if i > 0 else None
        return (), []

    def tor_dims(self, M, N, i: int, lo: int, hi: int):
        res = self.resolution(M, i + 1)
        n = len(N.degrees)
        Fi, di = self._stage(res, i)
        Fu, du = self._stage(res, i + 1)
        B = _tensor_block(self.ring, Fi, N)
        C = _tensor_block(self.ring, self._stage(res, i - 1)[0], N) if i >= 1 else None
        A = _tensor_block(self.ring, Fu, N) if Fu else None
        g = _tensor_cols(di, n) if C is not None else None
        f = _tensor_cols(du, n) if A is not None else None
        return homology_dims(A, B, C, f, g, lo, hi)

    def ext_dims(self, M, N, i: int, lo: int, hi: int):
        res = self.resolution(M, i + 1)
        n = len(N.degrees)
        Fi, _ = self._stage(res, i)
        Fu, du = self._stage(res, i + 1)
        B = _hom_block(self.ring, Fi, N)
        A = None
        f = None
        if i >= 1:
            Fl, _ = self._stage(res, i - 1)
            _, di = self._stage(res, i)
            A = _hom_block(self.ring, Fl, N)
            f = _hom_cols(di, len(Fl), n)
        C = _hom_block(self.ring, Fu, N) if Fu else None
        g = _hom_cols(du, len(Fi), n) if C is not None else None
        return homology_dims(A, B, C, f, g, lo, hi)

    def tensor_dims(self, M, N, lo: int, hi: int):
        m, n = len(M.degrees), len(N.degrees)
        rels = [{(mm, i * n + k): c for (mm, i), c in r.items()} for r in M.relations for k in range(n)]
        rels += [{(mm, i * n + k): c for (mm, k), c in s.items()} for s in N.relations for i in range(m)]
        degs = [a + c for a in M.degrees for c in N.degrees]
        return hilbert_function(self.ring, degs, rels, lo, hi)

    def torsion_dims(self, M, u: dict, lo: int, hi: int, max_power: int = 12):
        """dim of (0 :_M u^k) in degrees lo..hi, for k large enough that it stabilizes."""
        S = self.ring.S
        p = S.p
        P = Presentation(self.ring, M.degrees, M.relations)
        du = S.poly_degree(u)
        prev = None
        for k in range(1, max_power + 1):
            uk = S.power(u, k)
            cols = [{(m, i): c for m, c in uk.items()} for i in range(len(M.degrees))]
            dims = []
            for e in range(lo, hi + 1):
                A = map_matrix(P, P, cols, e, k * du)
                dims.append(A.shape[0] - rank_mod_p(A, p))
            if dims == prev:
                return dims
            prev = dims
        return prev

    def map_ranks(self, f, lo: int, hi: int):
        """Ranks of a GradedMap's degree slices: (dim source_e, rank, dim target_{e+deg})."""
        src = Presentation(self.ring, f.source.degrees, f.source.relations)
        tgt = Presentation(self.ring, f.target.degrees, f.target.relations)
        p = self.ring.p
        out = []
        for e in range(lo, hi + 1):
            A = map_matrix(src, tgt, f.columns, e, f.degree)
            out.append((src.dim(e), rank_mod_p(A, p), tgt.dim(e + f.degree)))
        return out
