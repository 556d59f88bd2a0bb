"""Minimal free resolutions, syzygies, Tor/Ext and periodicity."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import embed, minimal_generators, vector_degree
from .fpmodule import (
    FPModule, GradedMap, HilbertData, RingSpec, StructuralError, Verdict, _kernel_generators,
    dual, evaluation_map, free_summand_split, homology, is_isomorphic, is_isomorphism, minimalize,
)

INFINITE_DEPTH = "inf"


class Resolution:
    """A minimal graded free resolution  ... -> F_1 -> F_0 -> M -> 0.

    ``ranks[i]`` holds the generator degrees of F_i and ``differentials[i]``
    (for i >= 1) the columns of d_i : F_i -> F_{i-1}.  Built lazily: asking
    for a longer stretch extends the stored prefix.
    """

    def __init__(self, module: FPModule, over: RingSpec | None = None):
        self.module = module
        self.ring = over or module.ring
        M = minimalize(FPModule(self.ring, module.degrees, module.relations, check=False)) \
            if over is not None else minimalize(module)
        self.presented = M
        self.free_degrees = [tuple(M.degrees)]
        self.differentials = [None]
        self.complete = False
        if M.relations:
            cols = sorted(M.relations, key=lambda c: vector_degree(self.ring.S, c, M.degrees))
            self.free_degrees.append(tuple(vector_degree(self.ring.S, c, M.degrees) for c in cols))
            self.differentials.append(cols)
        else:
            self.complete = True

    @property
    def length(self) -> int:
        return len(self.free_degrees) - 1

    def extend(self, length: int) -> "Resolution":
        ring = self.ring
        S = ring.S
        while self.length < length and not self.complete:
            i = self.length
            cols = self.differentials[i]
            src = self.free_degrees[i]
            tgt = self.free_degrees[i - 1]
            ker = _kernel_generators(ring, cols, tgt, ())
            ker = [ring.reduce_vector(v) for v in ker]
            ker = [v for v in ker if v]
            if ker:
                idx = minimal_generators(ker, ring.order(src), known=ring.ideal_vectors(len(src)))
                ker = [ker[k] for k in idx]
            if not ker:
                self.complete = True
                break
            ker.sort(key=lambda v: vector_degree(S, v, src))
            self.differentials.append(ker)
            self.free_degrees.append(tuple(vector_degree(S, v, src) for v in ker))
        return self

    def differential(self, i: int):
        self.extend(i)
        if i < len(self.differentials):
            return self.differentials[i]
        return []

    def degrees(self, i: int):
        self.extend(i)
        if i < len(self.free_degrees):
            return self.free_degrees[i]
        return ()

    def betti(self, i: int) -> int:
        return len(self.degrees(i))

    def betti_numbers(self, length: int):
        return [self.betti(i) for i in range(length + 1)]

    def betti_table(self, length: int) -> dict:
        """{(i, j): beta_ij}: number of degree-j generators of F_i."""
        table = {}
        for i in range(length + 1):
            for d in self.degrees(i):
                table[(i, d)] = table.get((i, d), 0) + 1
        return table

    def matrix(self, i: int):
        """d_i as rows of polynomials."""
        cols = self.differential(i)
        rows = len(self.degrees(i - 1))
        return [[{m: c for (m, k), c in col.items() if k == r} for col in cols] for r in range(rows)]

    def format_matrix(self, i: int):
        return [[self.ring.format(e) for e in row] for row in self.matrix(i)]

    def is_minimal(self, length: int) -> bool:
        one = self.ring.S.one
        return all(m != one for i in range(1, length + 1)
                   for col in self.differential(i) for (m, _) in col)

    def is_complex(self, length: int) -> bool:
        """d_i o d_{i+1} = 0 in R for i < length."""
        p = self.ring.p
        from .core import substitute
        for i in range(1, length):
            for col in self.differential(i + 1):
                if self.ring.reduce_vector(substitute(col, self.differential(i), p)):
                    return False
        return True

    def syzygy(self, i: int) -> FPModule:
        """Omega^i: coker(d_{i+1}) on F_i."""
        if i == 0:
            return self.presented
        return FPModule(self.ring, self.degrees(i), self.differential(i + 1), check=False)

    @property
    def projective_dimension(self):
        """Length of the resolution when it is finite, else None (as far as computed)."""
        return self.length if self.complete else None

    def to_json(self, length: int) -> dict:
        return {
            "betti": self.betti_numbers(length),
            "table": [[i, j, b] for (i, j), b in sorted(self.betti_table(length).items())],
            "differentials": [self.format_matrix(i) for i in range(1, min(length, self.length) + 1)],
            "complete": self.complete,
        }


def resolve(M: FPModule, length: int = 6) -> Resolution:
    """Minimal graded free resolution of M over R, computed to ``length``."""
    if length < 0:
        raise ValueError("length must be >= 0")
    res = M.cached(("resolution",), lambda: Resolution(M))
    return res.extend(length)


def resolve_over_S(M: FPModule) -> Resolution:
    """Finite minimal resolution of M regarded as a module over the polynomial ring."""
    def build():
        ring = M.ring
        S = ring.ambient
        rels = list(M.relations)
        for i in range(M.rank):
            rels.extend(embed(f, i) for f in ring.ideal)
        N = FPModule(S, M.degrees, rels, check=False)
        res = Resolution(N, over=S)
        res.extend(S.nvars + 1)
        if not res.complete:
            raise StructuralError("resolution over S did not terminate")
        return res
    return M.cached(("resolution_S",), build)


def syzygy(M: FPModule, i: int) -> FPModule:
    if i < 0:
        raise ValueError("i must be >= 0")
    return resolve(M, i + 1).syzygy(i)


def projective_dimension_S(M: FPModule) -> int:
    return resolve_over_S(M).projective_dimension


def depth(M: FPModule):
    """n - pd_S(M) (Auslander-Buchsbaum); ``INFINITE_DEPTH`` for the zero module."""
    if M.is_zero:
        return INFINITE_DEPTH
    return M.ring.S.nvars - projective_dimension_S(M)


def is_two_periodic(M: FPModule, trials: int = 32, seed: int = 0) -> Verdict:
    """Whether M is isomorphic to Omega^2 M (up to a global twist)."""
    M = minimalize(M)
    if M.is_zero:
        raise StructuralError("periodicity is undefined for the zero module")

    def build():
        res = resolve(M, 4)
        b = res.betti_numbers(3)
        if b[0] != b[2] or b[1] != b[3]:
            return Verdict("no", reason=f"Betti numbers {b} are not 2-periodic")
        return is_isomorphic(M, res.syzygy(2), trials=trials, allow_twist=True, seed=seed)
    return M.cached(("two_periodic", trials, seed), build)


# -- matrix factorizations --------------------------------------------------------

def _infer_twists(S, A, rows, cols, first=0):
    """Row twists a and column twists b with deg A[i][j] = b_j - a_i."""
    a = [None] * rows
    b = [None] * cols
    for start in range(rows):
        if a[start] is not None:
            continue
        a[start] = first
        stack = [("r", start)]
        while stack:
            kind, k = stack.pop()
            if kind == "r":
                for j in range(cols):
                    if A[k][j]:
                        d = S.poly_degree(A[k][j]) + a[k]
                        if b[j] is None:
                            b[j] = d
                            stack.append(("c", j))
                        elif b[j] != d:
                            raise StructuralError("matrix entries are not homogeneous compatibly")
            else:
                for i in range(rows):
                    if A[i][k]:
                        d = b[k] - S.poly_degree(A[i][k])
                        if a[i] is None:
                            a[i] = d
                            stack.append(("r", i))
                        elif a[i] != d:
                            raise StructuralError("matrix entries are not homogeneous compatibly")
    b = [0 if x is None else x for x in b]
    return a, b


@dataclass
class MatrixFactorization:
    """Square matrices A, B over S with A B = B A = f * Id."""
    A: list
    B: list
    f: dict
    S: object = field(repr=False)

    def __post_init__(self):
        S = self.S
        n = len(self.A)
        if any(len(r) != n for r in self.A) or len(self.B) != n or any(len(r) != n for r in self.B):
            raise StructuralError("matrix factorization needs square matrices of equal size")
        for X, Y in ((self.A, self.B), (self.B, self.A)):
            for i in range(n):
                for j in range(n):
                    acc = {}
                    for k in range(n):
                        acc = S.add(acc, S.mul(X[i][k], Y[k][j]))
                    want = self.f if i == j else {}
                    if S.sub(acc, want):
                        raise StructuralError("A*B and B*A must both equal f times the identity")

    @classmethod
    def parse(cls, S, A, B, f):
        conv = lambda M: [[S.parse(e) if isinstance(e, str) else e for e in row] for row in M]
        return cls(conv(A), conv(B), S.parse(f) if isinstance(f, str) else f, S)


def module_from_mf(mf: MatrixFactorization, ring: RingSpec, degrees=None) -> FPModule:
    """coker(A) over R = S/(f)."""
    S = ring.S
    if len(ring.ideal) != 1:
        raise StructuralError("matrix factorizations need a hypersurface ring")
    g = ring.ideal[0]
    c = next(iter(g.values()))
    h = next(iter(mf.f.values())) if mf.f else 0
    if not mf.f or S.sub(S.scale(g, h), S.scale(mf.f, c)):
        raise StructuralError("f is not the hypersurface equation of the ring")
    n = len(mf.A)
    if degrees is None:
        a, _ = _infer_twists(S, mf.A, n, n)
    else:
        a = list(degrees)
    rels = []
    for j in range(n):
        col = {}
        for i in range(n):
            for m, v in mf.A[i][j].items():
                col[(m, i)] = v
        rels.append(col)
    return FPModule(ring, a, rels)


# -- Tor and Ext -----------------------------------------------------------------------

@dataclass
class HomologyModule:
    kind: str
    index: int
    left: FPModule = field(repr=False)
    right: FPModule = field(repr=False)
    value: FPModule = field(repr=False)

    @property
    def hilbert(self) -> HilbertData:
        return self.value.hilbert

    @property
    def length(self):
        return self.value.length

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "length": self.length,
                "hilbert": self.hilbert.to_json()}


def _tensor_free(ring, degs, N: FPModule):
    n = N.rank
    out_deg = [a + c for a in degs for c in N.degrees]
    rels = [{(m, j * n + k): c for (m, k), c in s.items()} for j in range(len(degs)) for s in N.relations]
    return FPModule(ring, out_deg, rels, check=False)


def _tensor_differential(cols, N: FPModule, src: FPModule, tgt: FPModule):
    n = N.rank
    out = []
    for col in cols:
        for k in range(n):
            out.append({(m, r * n + k): c for (m, r), c in col.items()})
    return GradedMap(src, tgt, out, check=False)


def tor(M: FPModule, N: FPModule, i: int, length: int | None = None) -> HomologyModule:
    """Tor_i^R(M, N) as the homology of F (x) N at F_i."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if length is not None and length < i + 1:
        raise StructuralError("resolution truncation too short for this Tor")

    def build():
        ring = M.ring
        res = resolve(M, i + 1)
        mid = _tensor_free(ring, res.degrees(i), N)
        g = None
        if i >= 1:
            lower = _tensor_free(ring, res.degrees(i - 1), N)
            g = _tensor_differential(res.differential(i), N, mid, lower)
        f = None
        if res.betti(i + 1):
            upper = _tensor_free(ring, res.degrees(i + 1), N)
            f = _tensor_differential(res.differential(i + 1), N, upper, mid)
        return HomologyModule("Tor", i, M, N, homology(f, g, mid))
    return M.cached(("tor", id(N), i), lambda: (N, build()))[1]


def _hom_free(ring, degs, N: FPModule):
    n = N.rank
    out_deg = [c - a for a in degs for c in N.degrees]
    rels = [{(m, j * n + k): c for (m, k), c in s.items()} for j in range(len(degs)) for s in N.relations]
    return FPModule(ring, out_deg, rels, check=False)


def _hom_differential(cols, N: FPModule, src: FPModule, tgt: FPModule):
    """phi |-> phi o d, from Hom(F_{i-1}, N) to Hom(F_i, N)."""
    n = N.rank
    rows = src.rank // n if n else 0
    out = []
    for r in range(rows):
        for k in range(n):
            v = {}
            for j, col in enumerate(cols):
                for (m, rr), c in col.items():
                    if rr == r:
                        v[(m, j * n + k)] = c
            out.append(v)
    return GradedMap(src, tgt, out, check=False)


def ext(M: FPModule, N: FPModule, i: int, length: int | None = None) -> HomologyModule:
    """Ext^i_R(M, N) as the cohomology of Hom(F, N) at Hom(F_i, N)."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if length is not None and length < i + 1:
        raise StructuralError("resolution truncation too short for this Ext")

    def build():
        ring = M.ring
        res = resolve(M, i + 1)
        mid = _hom_free(ring, res.degrees(i), N)
        f = None
        if i >= 1:
            lower = _hom_free(ring, res.degrees(i - 1), N)
            f = _hom_differential(res.differential(i), N, lower, mid)
        g = None
        if res.betti(i + 1):
            upper = _hom_free(ring, res.degrees(i + 1), N)
            g = _hom_differential(res.differential(i + 1), N, mid, upper)
        return HomologyModule("Ext", i, M, N, homology(f, g, mid))
    return M.cached(("ext", id(N), i), lambda: (N, build()))[1]


# -- total reflexivity ---------------------------------------------------------------------

@dataclass
class ReflexivityVerdict:
    status: str          # "yes" or "no"
    exact: bool          # False: vanishing checked only up to ``bound``
    bound: int
    reason: str = ""

    def __bool__(self):
        return self.status == "yes"

    def to_json(self):
        return {"status": self.status, "exact": self.exact, "bound": self.bound, "reason": self.reason}


def _periodic_or_zero(M: FPModule, trials, seed) -> bool:
    M = minimalize(M)
    return M.is_zero or bool(is_two_periodic(M, trials=trials, seed=seed))


def is_totally_reflexive(M: FPModule, bound: int = 4, trials: int = 32, seed: int = 0) -> ReflexivityVerdict:
    """Reflexive with Ext^i(M, R) = Ext^i(M*, R) = 0 for 1 <= i <= bound.

    When M and the non-free part of M* are two-periodic, Ext^i is periodic
    in i >= 1 and checking i = 1, 2 is exact.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")

    def build():
        R = M.ring.R
        if not is_isomorphism(evaluation_map(M)):
            return ReflexivityVerdict("no", True, bound, "evaluation map M -> M** is not bijective")
        D = dual(M)
        D_core, _ = free_summand_split(D)
        M_core, _ = free_summand_split(M)
        exact = _periodic_or_zero(M_core, trials, seed) and _periodic_or_zero(D_core, trials, seed)
        B = 2 if exact else bound
        for i in range(1, B + 1):
            if not ext(M, R, i).is_zero:
                return ReflexivityVerdict("no", True, B, f"Ext^{i}(M, R) != 0")
            if not ext(D, R, i).is_zero:
                return ReflexivityVerdict("no", True, B, f"Ext^{i}(M*, R) != 0")
        return ReflexivityVerdict("yes", exact, B, "periodic" if exact else f"checked up to {B}")
    return M.cached(("totally_reflexive", bound, trials, seed), build)
