"""Finitely presented graded modules over R = S/I and the functors on them.

A module is the cokernel of a homogeneous presentation matrix between
twisted free R-modules.  Presentations are stored as relation vectors of
the free module on the generators; the ideal I is always implicit.

Conventions: ``degrees[i]`` is the degree of the i-th generator, so the
free module R(-a) has one generator of degree a.  A graded map of degree d
sends elements of degree e to degree e + d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .core import (
    DEFAULT_PRIME, GroebnerBasis, ModuleOrder, PolyRing, component, embed, groebner,
    groebner_numerator, minimal_generators, restrict, shift_positions, substitute,
    syzygies, vadd, vaxpy, vector_degree, vscale, reindex, _laurent_add,
)


class StructuralError(ValueError):
    """Inputs do not live where an operation needs them to."""


class RingSpecError(ValueError):
    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


# -- Hilbert series ------------------------------------------------------------

class HilbertData:
    """Hilbert series numerator(t) / prod(1 - t^w) of a graded module."""

    def __init__(self, numerator: dict, weights):
        self.numerator = {e: c for e, c in numerator.items() if c}
        self.weights = tuple(weights)

    def __eq__(self, other):
        return (isinstance(other, HilbertData) and self.weights == other.weights
                and self.numerator == other.numerator)

    def __hash__(self):
        return hash((tuple(sorted(self.numerator.items())), self.weights))

    def __repr__(self):
        return f"HilbertData({self.format()})"

    def format(self) -> str:
        if not self.numerator:
            return "0"
        terms = " + ".join(f"{c}*t^{e}" for e, c in sorted(self.numerator.items()))
        den = "*".join(f"(1-t^{w})" for w in self.weights)
        return f"({terms}) / {den}" if den else terms

    def __add__(self, other):
        return HilbertData(_laurent_add(self.numerator, other.numerator), self.weights)

    def __sub__(self, other):
        return HilbertData(_laurent_add(self.numerator, other.numerator, -1), self.weights)

    def shift(self, d: int) -> "HilbertData":
        """Series multiplied by t^d."""
        return HilbertData({e + d: c for e, c in self.numerator.items()}, self.weights)

    @property
    def is_zero(self) -> bool:
        return not self.numerator

    def _reduced(self):
        """(multiplicity of t=1 as a root of the numerator, quotient coefficients, offset)."""
        lo = min(self.numerator)
        hi = max(self.numerator)
        coeffs = [self.numerator.get(e, 0) for e in range(lo, hi + 1)]
        mult = 0
        while coeffs and sum(coeffs) == 0:
            acc, q = 0, []
            for c in coeffs:
                acc += c
                q.append(acc)
            while q and q[-1] == 0:
                q.pop()
            coeffs = q
            mult += 1
        return mult, coeffs, lo

    @cached_property
    def dimension(self) -> int:
        """Krull dimension (pole order at t = 1); -1 for the zero module."""
        if self.is_zero:
            return -1
        mult, _, _ = self._reduced()
        return len(self.weights) - mult

    @property
    def finite_length(self) -> bool:
        return self.dimension <= 0

    @cached_property
    def length(self):
        """Length over R (= k-dimension), or None when infinite."""
        if self.is_zero:
            return 0
        if not self.finite_length:
            return None
        hi = max(self.numerator)
        return sum(self.coefficients(min(self.numerator), hi))

    def coefficients(self, lo: int, hi: int) -> list:
        """Hilbert function values in degrees lo..hi."""
        if self.is_zero:
            return [0] * (hi - lo + 1)
        start = min(min(self.numerator), lo)
        size = hi - start + 1
        c = [0] * max(size, 0)
        for e, a in self.numerator.items():
            if e <= hi:
                c[e - start] += a
        for w in self.weights:
            for k in range(w, size):
                c[k] += c[k - w]
        return c[lo - start:]

    def value(self, d: int) -> int:
        return self.coefficients(d, d)[0]

    def leq(self, other, upto: int) -> bool:
        """Coefficientwise self <= other in all degrees up to ``upto``."""
        lo = min([upto] + list(self.numerator) + list(other.numerator))
        a = self.coefficients(lo, upto)
        b = other.coefficients(lo, upto)
        return all(x <= y for x, y in zip(a, b))

    def twist_to(self, other):
        """d with other == self.shift(d), or None."""
        if self.is_zero or other.is_zero:
            return 0 if self.is_zero and other.is_zero else None
        d = min(other.numerator) - min(self.numerator)
        return d if self.shift(d) == other else None

    def to_json(self) -> dict:
        return {
            "numerator": [[e, c] for e, c in sorted(self.numerator.items())],
            "weights": list(self.weights),
            "dimension": self.dimension,
            "length": self.length,
        }


# -- rings -----------------------------------------------------------------------

class RingSpec:
    """A graded quotient ring R = F_p[vars] / I with declared metadata.

    The dimension, minimal primes and non-zerodivisor candidates are declared
    by the caller and checked by :meth:`validate`.
    """

    def __init__(self, variables, ideal=(), weights=None, p: int = DEFAULT_PRIME, *,
                 dim=None, minimal_primes=(), nzd_candidates=(), name: str = "R",
                 validate: bool = True):
        self.S = PolyRing(variables, weights, p)
        self.name = name
        self.ideal = [self._poly(f) for f in ideal]
        self.ideal = [f for f in self.ideal if f]
        self.dim = dim
        self.minimal_primes = [[self._poly(f) for f in prime] for prime in minimal_primes]
        self.nzd_candidates = [self._poly(f) for f in nzd_candidates]
        self._orders = {}
        self._ideal_vecs = {}
        for f in self.ideal:
            if not self.S.is_homogeneous(f):
                raise RingSpecError("homogeneous_ideal",
                                    f"ideal generator {self.S.format(f)} is not homogeneous")
        order = self.order((0,))
        self.ideal_gb = groebner([embed(f, 0) for f in self.ideal], order)
        if validate:
            self.validate()

    def _poly(self, f):
        return self.S.parse(f) if isinstance(f, str) else dict(f)

    @property
    def p(self):
        return self.S.p

    @property
    def nvars(self):
        return self.S.nvars

    def __repr__(self):
        gens = ", ".join(self.S.format(f) for f in self.ideal) or "0"
        return f"RingSpec({self.name}: F_{self.p}[{','.join(self.S.variables)}]/({gens}))"

    def parse(self, text):
        return self.S.parse(text)

    def format(self, f):
        return self.S.format(f)

    def order(self, degrees) -> ModuleOrder:
        degrees = tuple(degrees)
        o = self._orders.get(degrees)
        if o is None:
            o = ModuleOrder(self.S, degrees)
            self._orders[degrees] = o
        return o

    def ideal_vectors(self, rank: int):
        """GB(I) * e_i for i < rank: a Groebner basis of I * F."""
        vecs = self._ideal_vecs.get(rank)
        if vecs is None:
            vecs = [{(m, i): c for (m, _), c in g.items()}
                    for i in range(rank) for g in self.ideal_gb.elements]
            self._ideal_vecs[rank] = vecs
        return vecs

    def reduce(self, f: dict) -> dict:
        """Normal form of a polynomial modulo I."""
        return {m: c for (m, _), c in self.ideal_gb.reduce(embed(f, 0)).items()}

    def reduce_vector(self, v: dict) -> dict:
        if not self.ideal:
            return dict(v)
        out = {}
        ranks = {i for (_, i) in v}
        for i in ranks:
            for m, c in self.reduce(component(v, i)).items():
                out[(m, i)] = c
        return out

    def free(self, degrees=(0,)) -> "FPModule":
        return FPModule(self, degrees, ())

    @cached_property
    def ambient(self) -> "RingSpec":
        """The polynomial ring S itself, sharing monomial caches with R."""
        if not self.ideal:
            return self
        amb = RingSpec.__new__(RingSpec)
        amb.S = self.S
        amb.name = "S"
        amb.ideal = []
        amb.dim = self.S.nvars
        amb.minimal_primes = [[]]
        amb.nzd_candidates = []
        amb._orders = self._orders
        amb._ideal_vecs = {}
        amb.ideal_gb = groebner([], self.order((0,)))
        return amb

    @cached_property
    def R(self) -> "FPModule":
        return self.free((0,))

    @cached_property
    def hilbert(self) -> HilbertData:
        return self.R.hilbert

    def is_nzd(self, u: dict) -> bool:
        """(0 :_R u) = 0."""
        u = self.reduce(u)
        if not u:
            return False
        d = self.S.poly_degree(u)
        f = GradedMap(self.R, self.R, [embed(u, 0)], degree=d, check=False)
        return kernel(f).is_zero

    def contains_ideal(self, prime) -> bool:
        """I is contained in the ideal generated by ``prime`` (polynomials of S)."""
        order = self.order((0,))
        G = groebner([embed(f, 0) for f in prime], order)
        return all(G.contains(embed(f, 0)) for f in self.ideal)

    @cached_property
    def _prime_gbs(self):
        order = self.order((0,))
        return [groebner([embed(f, 0) for f in list(prime) + self.ideal], order)
                for prime in self.minimal_primes]

    def in_prime(self, idx: int, f: dict) -> bool:
        """f lies in the idx-th declared minimal prime."""
        return self._prime_gbs[idx].contains(embed(f, 0))

    @cached_property
    def is_reduced(self):
        """Whether R -> prod R/p is injective for the declared minimal primes.

        None when no primes are declared.
        """
        if not self.minimal_primes:
            return None
        targets = [FPModule(self, (0,), [embed(f, 0) for f in prime]) for prime in self.minimal_primes]
        target = direct_sum(*targets)
        cols = [{(self.S.one, i): 1 for i in range(target.rank)}]
        return kernel(GradedMap(self.R, target, cols, check=False)).is_zero

    def validate(self):
        for f in self.nzd_candidates:
            if not self.S.is_homogeneous(f) or not f:
                raise RingSpecError("homogeneous_nzd", f"candidate {self.S.format(f)} is not homogeneous")
        for prime in self.minimal_primes:
            for f in prime:
                if not self.S.is_homogeneous(f):
                    raise RingSpecError("homogeneous_prime", f"{self.S.format(f)} is not homogeneous")
            if not self.contains_ideal(prime):
                names = ", ".join(self.S.format(f) for f in prime)
                raise RingSpecError("prime_contains_ideal", f"declared prime ({names}) does not contain I")
        if self.dim is not None:
            pole = self.hilbert.dimension
            if pole != self.dim:
                raise RingSpecError("hilbert_pole_order",
                                    f"Hilbert pole order {pole} != declared dimension {self.dim}")
        for f in self.nzd_candidates:
            if not self.is_nzd(f):
                raise RingSpecError("nzd_candidate", f"{self.S.format(f)} is a zero-divisor")


# -- modules -------------------------------------------------------------------------

class FPModule:
    """coker(relations) on the free module with generator ``degrees``, over ``ring``.

    Values are treated as immutable; Groebner data and Hilbert series are
    computed on first use and cached.
    """

    def __init__(self, ring: RingSpec, degrees, relations=(), *, check: bool = True):
        self.ring = ring
        self.degrees = tuple(degrees)
        rels = [dict(r) for r in relations if r]
        if check:
            for r in rels:
                for (m, i) in r:
                    if not 0 <= i < len(self.degrees):
                        raise StructuralError("relation refers to a missing generator")
                try:
                    vector_degree(ring.S, r, self.degrees)
                except ValueError:
                    raise StructuralError("presentation column is not homogeneous") from None
        self.relations = tuple(rels)
        self._cache = {}

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def rel_degrees(self):
        return tuple(vector_degree(self.ring.S, r, self.degrees) for r in self.relations)

    def __repr__(self):
        return f"FPModule(gens={list(self.degrees)}, relations={len(self.relations)})"

    def matrix(self):
        """Presentation matrix as rows of polynomials."""
        return [[component(r, i) for r in self.relations] for i in range(self.rank)]

    def format_matrix(self):
        return [[self.ring.format(e) for e in row] for row in self.matrix()]

    @property
    def order(self) -> ModuleOrder:
        return self.ring.order(self.degrees)

    @cached_property
    def gb(self) -> GroebnerBasis:
        return groebner(list(self.relations), self.order, known=self.ring.ideal_vectors(self.rank))

    @cached_property
    def hilbert(self) -> HilbertData:
        return HilbertData(groebner_numerator(self.gb), self.ring.S.weights)

    @property
    def is_zero(self) -> bool:
        one = self.ring.S.one
        leads = set(self.gb.leads)
        return all((one, i) in leads for i in range(self.rank))

    @property
    def length(self):
        return self.hilbert.length

    def contains(self, v: dict) -> bool:
        """v lies in the relation submodule (v is zero in the module)."""
        return self.gb.contains(v)

    def reduce(self, v: dict) -> dict:
        return self.gb.reduce(v)

    def shift(self, s: int) -> "FPModule":
        """M(s): the generator of degree a moves to a - s."""
        return FPModule(self.ring, [a - s for a in self.degrees], self.relations, check=False)

    def cached(self, key, build):
        hit = self._cache.get(key)
        if hit is None:
            hit = build()
            self._cache[key] = hit
        return hit


def direct_sum(*mods) -> FPModule:
    if not mods:
        raise StructuralError("empty direct sum")
    ring = mods[0].ring
    degrees, rels, off = [], [], 0
    for M in mods:
        if M.ring is not ring:
            raise StructuralError("ring mismatch")
        degrees.extend(M.degrees)
        rels.extend(shift_positions(r, off) for r in M.relations)
        off += M.rank
    return FPModule(ring, degrees, rels, check=False)


def _same_ring(*mods):
    ring = mods[0].ring
    for M in mods[1:]:
        if M.ring is not ring:
            raise StructuralError("ring mismatch")
    return ring


# -- minimalization ------------------------------------------------------------------

@dataclass
class Minimal:
    """A minimalized module with the bookkeeping back to the original generators."""
    module: FPModule
    kept: list            # original generator indices surviving, in order
    images: list          # images[i]: original e_i written in the new generators


def _minimal(M: FPModule) -> Minimal:
    ring = M.ring
    S = ring.S
    p = S.p
    one = S.one
    rank = M.rank
    rels = [ring.reduce_vector(r) for r in M.relations]
    rels = [r for r in rels if r]
    images = [{(one, i): 1} for i in range(rank)]
    removed = set()
    while True:
        pivot = None
        for ci, r in enumerate(rels):
            for (m, i), c in r.items():
                if m == one:
                    pivot = (ci, i, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        ci, i, c = pivot
        col = rels.pop(ci)
        expr = vscale({t: a for t, a in col.items() if t[1] != i}, -pow(c, -1, p), p)
        removed.add(i)
        new = []
        for r in rels:
            ri = component(r, i)
            if ri:
                r = {t: a for t, a in r.items() if t[1] != i}
                vaxpy(r, ri, expr, p)
            if r:
                new.append(r)
        rels = new
        for k in range(rank):
            ii = component(images[k], i)
            if ii:
                img = {t: a for t, a in images[k].items() if t[1] != i}
                vaxpy(img, ii, expr, p)
                images[k] = img
    kept = [i for i in range(rank) if i not in removed]
    mapping = [None] * rank
    for new_i, old_i in enumerate(kept):
        mapping[old_i] = new_i
    degrees = [M.degrees[i] for i in kept]
    rels = [ring.reduce_vector(reindex(r, mapping)) for r in rels]
    rels = [r for r in rels if r]
    if rels:
        idx = minimal_generators(rels, ring.order(degrees), known=ring.ideal_vectors(len(degrees)))
        rels = [rels[k] for k in idx]
    module = FPModule(ring, degrees, rels, check=False)
    return Minimal(module, kept, [reindex(img, mapping) for img in images])


def minimalize_data(M: FPModule) -> Minimal:
    return M.cached(("minimal",), lambda: _minimal(M))


def minimalize(M: FPModule) -> FPModule:
    """Isomorphic module with no unit entries and a minimal set of relations."""
    return minimalize_data(M).module


def is_minimal(M: FPModule) -> bool:
    one = M.ring.S.one
    return all(m != one for r in M.relations for (m, _) in r)


# -- subquotients ------------------------------------------------------------------------

def _kernel_generators(ring: RingSpec, cols, target_degrees, target_rels):
    """Vectors v of the source with sum v_j cols_j in <target_rels> + I*F (over S)."""
    k = len(cols)
    if k == 0:
        return []
    target_rank = len(target_degrees)
    allv = list(cols) + list(target_rels) + list(ring.ideal_vectors(target_rank))
    syz = syzygies(allv, ring.order(target_degrees))
    return [v for v in (restrict(s, 0, k) for s in syz) if v]


class Subquotient:
    """(<gens> + <rels>) / <rels> inside a graded free module, minimally presented.

    ``gens`` are the surviving generators (ambient vectors) matching the
    generators of ``module``.
    """

    def __init__(self, ring: RingSpec, ambient_degrees, gens, rels):
        self.ring = ring
        self.ambient = tuple(ambient_degrees)
        self.rels = [r for r in rels if r]
        S = ring.S
        gens = [g for g in gens if g]
        degs = [vector_degree(S, g, self.ambient) for g in gens]
        # sort generators by degree so the chosen generators are the low-degree ones
        order_idx = sorted(range(len(gens)), key=lambda j: degs[j])
        gens = [gens[j] for j in order_idx]
        degs = [degs[j] for j in order_idx]
        if gens:
            pres = _kernel_generators(ring, gens, self.ambient, self.rels)
            raw = FPModule(ring, degs, pres, check=False)
            data = _minimal(raw)
            self.module = data.module
            self.gens = [gens[i] for i in data.kept]
        else:
            self.module = FPModule(ring, (), (), check=False)
            self.gens = []
        self._lift_gb = None

    def lift(self, v: dict) -> dict:
        """Coordinates of an ambient vector in terms of the module generators."""
        if not v:
            return {}
        ring = self.ring
        if self._lift_gb is None:
            allv = list(self.gens) + self.rels + list(ring.ideal_vectors(len(self.ambient)))
            self._lift_gb = groebner(allv, ring.order(self.ambient), track=True, reduced=False)
        r, q = self._lift_gb.divide(v, rep={})
        if r:
            raise StructuralError("vector does not lie in the subquotient")
        return vscale(restrict(q, 0, len(self.gens)), -1, ring.p)

    def to_ambient(self, coords: dict) -> dict:
        return substitute(coords, self.gens, self.ring.p)


# -- maps ------------------------------------------------------------------------------

class GradedMap:
    """A homogeneous map source -> target given on generators.

    ``columns[j]`` is the image of the j-th source generator, written as a
    vector of the target's free cover.
    """

    def __init__(self, source: FPModule, target: FPModule, columns, degree: int = 0,
                 check: bool = True):
        _same_ring(source, target)
        self.source = source
        self.target = target
        self.columns = [dict(c) for c in columns]
        self.degree = degree
        if len(self.columns) != source.rank:
            raise StructuralError("one column per source generator required")
        if check:
            self.check()

    @property
    def ring(self):
        return self.source.ring

    def check(self):
        S = self.ring.S
        for j, c in enumerate(self.columns):
            if not c:
                continue
            try:
                d = vector_degree(S, c, self.target.degrees)
            except ValueError:
                raise StructuralError("map column is not homogeneous") from None
            if d != self.source.degrees[j] + self.degree:
                raise StructuralError("map column has the wrong degree")
        for r in self.source.relations:
            if not self.target.contains(self.apply(r)):
                raise StructuralError("map does not respect the source relations")

    def apply(self, v: dict) -> dict:
        return substitute(v, self.columns, self.ring.p)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other."""
        if other.target is not self.source:
            raise StructuralError("maps are not composable")
        cols = [self.apply(c) for c in other.columns]
        return GradedMap(other.source, self.target, cols, self.degree + other.degree, check=False)

    def __repr__(self):
        return f"GradedMap({self.source!r} -> {self.target!r}, degree={self.degree})"


def identity_map(M: FPModule) -> GradedMap:
    one = M.ring.S.one
    return GradedMap(M, M, [{(one, i): 1} for i in range(M.rank)], check=False)


def multiplication_map(M: FPModule, u: dict) -> GradedMap:
    d = M.ring.S.poly_degree(u)
    return GradedMap(M, M, [embed(u, i) for i in range(M.rank)], degree=d, check=False)


def kernel_data(f: GradedMap) -> Subquotient:
    def build():
        ring = f.ring
        cols = f.columns
        gens = _kernel_generators(ring, cols, f.target.degrees, f.target.relations)
        return Subquotient(ring, f.source.degrees, gens, f.source.relations)
    key = ("kernel", id(f))
    hit = f.__dict__.get("_kernel")
    if hit is None:
        hit = build()
        f._kernel = hit
    return hit


def kernel(f: GradedMap) -> FPModule:
    return kernel_data(f).module


def kernel_inclusion(f: GradedMap) -> GradedMap:
    data = kernel_data(f)
    return GradedMap(data.module, f.source, data.gens, check=False)


def cokernel_data(f: GradedMap) -> Minimal:
    hit = f.__dict__.get("_coker")
    if hit is None:
        M = FPModule(f.ring, f.target.degrees, list(f.target.relations) + f.columns, check=False)
        hit = _minimal(M)
        f._coker = hit
    return hit


def cokernel(f: GradedMap) -> FPModule:
    return cokernel_data(f).module


def cokernel_projection(f: GradedMap) -> GradedMap:
    data = cokernel_data(f)
    return GradedMap(f.target, data.module, data.images, check=False)


def image(f: GradedMap) -> FPModule:
    return Subquotient(f.ring, f.target.degrees, f.columns, f.target.relations).module


def is_injective(f: GradedMap) -> bool:
    return kernel(f).is_zero


def is_surjective(f: GradedMap) -> bool:
    return cokernel(f).is_zero


def is_isomorphism(f: GradedMap) -> bool:
    return is_surjective(f) and is_injective(f)


def homology(f: GradedMap | None, g: GradedMap | None, middle: FPModule) -> FPModule:
    """ker(g) / im(f) at ``middle`` for A -f-> middle -g-> C."""
    ring = middle.ring
    one = ring.S.one
    if g is None:
        gens = [{(one, i): 1} for i in range(middle.rank)]
    else:
        gens = _kernel_generators(ring, g.columns, g.target.degrees, g.target.relations)
    rels = list(middle.relations)
    if f is not None:
        rels.extend(f.columns)
    return Subquotient(ring, middle.degrees, gens, rels).module


# -- tensor, hom, duals --------------------------------------------------------------------

def _tensor_raw(M: FPModule, N: FPModule) -> FPModule:
    m, n = M.rank, N.rank
    degrees = [M.degrees[i] + N.degrees[k] for i in range(m) for k in range(n)]
    rels = []
    for r in M.relations:
        for k in range(n):
            rels.append({(mon, i * n + k): c for (mon, i), c in r.items()})
    for s in N.relations:
        for i in range(m):
            rels.append({(mon, i * n + k): c for (mon, k), c in s.items()})
    return FPModule(M.ring, degrees, rels, check=False)


def tensor_data(M: FPModule, N: FPModule) -> Minimal:
    """M (x) N minimalized; original generator i*n + k is e_i (x) f_k."""
    _same_ring(M, N)
    return M.cached(("tensor", id(N)), lambda: (N, _minimal(_tensor_raw(M, N))))[1]


def tensor(M: FPModule, N: FPModule) -> FPModule:
    return tensor_data(M, N).module


def _hom_subquotient(M: FPModule, N: FPModule) -> Subquotient:
    ring = _same_ring(M, N)
    m, n = M.rank, N.rank
    one = ring.S.one
    amb = [N.degrees[k] - M.degrees[i] for i in range(m) for k in range(n)]
    amb_rels = [shift_positions(s, i * n) for i in range(m) for s in N.relations]
    if not M.relations:
        gens = [{(one, j): 1} for j in range(m * n)]
    else:
        b = M.rel_degrees
        tgt = [N.degrees[k] - b[j] for j in range(len(b)) for k in range(n)]
        tgt_rels = [shift_positions(s, j * n) for j in range(len(b)) for s in N.relations]
        images = []
        for i in range(m):
            for k in range(n):
                v = {}
                for j, col in enumerate(M.relations):
                    for (mon, ii), c in col.items():
                        if ii == i:
                            v[(mon, j * n + k)] = c
                images.append(v)
        gens = _kernel_generators(ring, images, tgt, tgt_rels)
    return Subquotient(ring, amb, gens, amb_rels)


def hom_data(M: FPModule, N: FPModule) -> Subquotient:
    """Hom(M, N) with each generator a matrix F0(M) -> F0(N) (ambient index i*n + k)."""
    return M.cached(("hom", id(N)), lambda: (N, _hom_subquotient(M, N)))[1]


def hom(M: FPModule, N: FPModule) -> FPModule:
    return hom_data(M, N).module


def hom_element_map(M: FPModule, N: FPModule, vec: dict, degree: int) -> GradedMap:
    """The map M -> N encoded by an ambient vector of Hom(F0(M), F0(N))."""
    n = N.rank
    cols = [{} for _ in range(M.rank)]
    for (mon, idx), c in vec.items():
        i, k = divmod(idx, n)
        cols[i][(mon, k)] = c
    return GradedMap(M, N, cols, degree=degree, check=False)


def dual_data(M: FPModule) -> Subquotient:
    return hom_data(M, M.ring.R)


def dual(M: FPModule) -> FPModule:
    """M* = Hom(M, R)."""
    return dual_data(M).module


def double_dual(M: FPModule) -> FPModule:
    return dual(dual(M))


def evaluation_map(M: FPModule) -> GradedMap:
    """The natural map M -> M**."""
    def build():
        D = dual_data(M)           # generators phi_k: row vectors over F0(M)
        DD = dual_data(D.module)   # ambient: rows over F0(M*)
        cols = []
        for i in range(M.rank):
            v = {}
            for k, phi in enumerate(D.gens):
                for (mon, idx), c in phi.items():
                    if idx == i:
                        v[(mon, k)] = c
            cols.append(DD.lift(v))
        return GradedMap(M, DD.module, cols, check=False)
    return M.cached(("eval",), build)


def auslander_dual(M: FPModule) -> FPModule:
    """D(M): cokernel of the transposed minimal presentation."""
    def build():
        P = minimalize(M)
        m = P.rank
        rel_deg = P.rel_degrees
        rels = []
        for i in range(m):
            v = {}
            for j, col in enumerate(P.relations):
                for (mon, ii), c in col.items():
                    if ii == i:
                        v[(mon, j)] = c
            rels.append(v)
        raw = FPModule(M.ring, [-b for b in rel_deg], rels, check=False)
        return minimalize(raw)
    return M.cached(("auslander",), build)


def natural_map_alpha(M: FPModule, N: FPModule) -> GradedMap:
    """alpha: M* (x) N -> Hom(M, N), f (x) n |-> (m |-> f(m) n)."""
    def build():
        D = dual_data(M)
        T = tensor_data(D.module, N)
        H = hom_data(M, N)
        n = N.rank
        cols = []
        for old in T.kept:
            k, l = divmod(old, n)
            phi = D.gens[k]
            v = {(mon, idx * n + l): c for (mon, idx), c in phi.items()}
            cols.append(H.lift(v))
        return GradedMap(T.module, H.module, cols, check=False)
    return M.cached(("alpha", id(N)), lambda: (N, build()))[1]


def tensor_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    """f (x) g between the minimalized tensor products."""
    ring = f.ring
    p = ring.p
    src = tensor_data(f.source, g.source)
    tgt = tensor_data(f.target, g.target)
    n_src = g.source.rank
    n_tgt = g.target.rank
    cols = []
    for old in src.kept:
        i, k = divmod(old, n_src)
        v = {}
        for (m1, a), c1 in f.columns[i].items():
            for (m2, b), c2 in g.columns[k].items():
                t = (tuple(x + y for x, y in zip(m1, m2)), a * n_tgt + b)
                x = (v.get(t, 0) + c1 * c2) % p
                if x:
                    v[t] = x
                else:
                    v.pop(t, None)
        cols.append(substitute(v, tgt.images, p))
    return GradedMap(src.module, tgt.module, cols, degree=f.degree + g.degree, check=False)


def natural_map_gamma(M: FPModule, N: FPModule) -> GradedMap:
    """M (x) N -> Hom(M*, N): (eval (x) id) followed by alpha for (M*, N)."""
    def build():
        ev = evaluation_map(M)
        left = tensor_maps(ev, identity_map(N))
        a = natural_map_alpha(dual(M), N)
        if left.target is not a.source:
            raise StructuralError("internal: tensor cache mismatch")
        return a.compose(left)
    return M.cached(("gamma", id(N)), lambda: (N, build()))[1]


# -- Fitting ideals and ideals of R -------------------------------------------------------------

class Ideal:
    """A homogeneous ideal of R, given by generators in S (I is implicit)."""

    def __init__(self, ring: RingSpec, gens):
        self.ring = ring
        gens = [ring.reduce(g) for g in gens]
        self.gens = [g for g in gens if g]
        self._unit = None

    def __repr__(self):
        return "Ideal(" + ", ".join(self.ring.format(g) for g in self.gens) + ")"

    @cached_property
    def quotient_module(self) -> FPModule:
        return FPModule(self.ring, (0,), [embed(g, 0) for g in self.gens], check=False)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.quotient_module.is_zero

    def contains(self, f: dict) -> bool:
        return self.quotient_module.contains(embed(f, 0))

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.issubset(other) and other.issubset(self)

    def __hash__(self):
        return id(self)

    def product(self, other: "Ideal") -> "Ideal":
        S = self.ring.S
        return Ideal(self.ring, [S.mul(a, b) for a in self.gens for b in other.gens])

    def quotient(self, f: dict) -> "Ideal":
        """(self : f)."""
        f = self.ring.reduce(f)
        if not f:
            return Ideal(self.ring, [self.ring.S.const(1)])
        d = self.ring.S.poly_degree(f)
        g = GradedMap(self.ring.R, self.quotient_module, [embed(f, 0)], degree=d, check=False)
        return Ideal(self.ring, [component(v, 0) for v in _kernel_generators(
            self.ring, g.columns, (0,), self.quotient_module.relations)])

    def saturate(self, f: dict) -> "Ideal":
        """(self : f^infinity)."""
        current = self
        while True:
            nxt = current.quotient(f)
            if nxt.quotient_module.hilbert == current.quotient_module.hilbert:
                return current
            current = nxt

    def annihilator(self) -> "Ideal":
        """(0 :_R self)."""
        ring = self.ring
        if not self.gens:
            return Ideal(ring, [ring.S.const(1)])
        S = ring.S
        degs = [-S.poly_degree(g) for g in self.gens]
        target = ring.free(degs)
        col = {}
        for k, g in enumerate(self.gens):
            col.update(embed(g, k))
        f = GradedMap(ring.R, target, [col], check=False)
        return Ideal(ring, [component(v, 0) for v in kernel_data(f).gens])


def _determinant(S: PolyRing, mat, rows, cols, memo):
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if len(rows) == 1:
        res = mat[rows[0]][cols[0]]
    else:
        res = {}
        r0, rest = rows[0], rows[1:]
        for idx, c in enumerate(cols):
            entry = mat[r0][c]
            if not entry:
                continue
            minor = _determinant(S, mat, rest, cols[:idx] + cols[idx + 1:], memo)
            if not minor:
                continue
            res = S.add(res, S.mul(entry, minor), -1 if idx % 2 else 1)
    memo[key] = res
    return res


def fitting_ideal(M: FPModule, r: int) -> Ideal:
    """Fitt_r(M): ideal of (m - r)-minors of the presentation matrix."""
    if r < 0:
        raise ValueError("r must be non-negative")
    ring = M.ring
    S = ring.S
    m = M.rank
    k = m - r
    if k <= 0:
        return Ideal(ring, [S.const(1)])
    mat = [[ring.reduce(e) for e in row] for row in M.matrix()]
    s = len(M.relations)
    if k > s:
        return Ideal(ring, [])
    memo = {}
    gens = []
    for rows in combinations(range(m), k):
        for cols in combinations(range(s), k):
            d = _determinant(S, mat, rows, cols, memo)
            if d:
                gens.append(d)
    return Ideal(ring, gens)


def hilbert(M: FPModule) -> HilbertData:
    return M.hilbert


# -- isomorphism --------------------------------------------------------------------------

@dataclass
class Verdict:
    status: str                       # "yes", "no" or "probably_no"
    witness: GradedMap | None = None
    twist: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.status == "yes"

    def to_json(self):
        out = {"status": self.status, "reason": self.reason}
        if self.twist is not None:
            out["twist"] = self.twist
        return out


def _random_poly(S: PolyRing, d: int, rng: random.Random) -> dict:
    out = {}
    for m in S.monomials(d):
        c = rng.randrange(S.p)
        if c:
            out[m] = c
    return out


def _constant_rank(cols, rank, p, one) -> int:
    rows = []
    for c in cols:
        row = [0] * rank
        for (m, i), a in c.items():
            if m == one:
                row[i] = a
        rows.append(row)
    return _rank_mod_p(rows, p)


def _rank_mod_p(rows, p) -> int:
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((k for k in range(rank, len(rows)) if rows[k][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for k in range(len(rows)):
            if k != rank and rows[k][col] % p:
                f = rows[k][col] * inv % p
                rows[k] = [(a - f * b) % p for a, b in zip(rows[k], rows[rank])]
        rank += 1
    return rank


def is_isomorphic(M: FPModule, N: FPModule, trials: int = 32, allow_twist: bool = False,
                  seed: int = 0) -> Verdict:
    """Randomized search for a graded isomorphism M -> N (of degree = the twist).

    "no" is returned only when an invariant differs or no homomorphism of the
    needed degree exists; otherwise a failed search reports "probably_no".
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ring = _same_ring(M, N)
    M = minimalize(M)
    N = minimalize(N)
    hM, hN = M.hilbert, N.hilbert
    if hM.is_zero and hN.is_zero:
        return Verdict("yes", GradedMap(M, N, [], check=False), 0, "both zero")
    if allow_twist:
        d = hM.twist_to(hN)
    else:
        d = 0 if hM == hN else None
    if d is None:
        return Verdict("no", reason="Hilbert series differ")
    if M.rank != N.rank:
        return Verdict("no", reason="minimal generator counts differ")
    if sorted(a + d for a in M.degrees) != sorted(N.degrees):
        return Verdict("no", reason="generator degrees differ")
    H = hom_data(M, N)
    S = ring.S
    gens = [(g, vector_degree(S, g, H.ambient)) for g in H.gens]
    usable = [(g, gd) for g, gd in gens if gd <= d and S.monomials(d - gd)]
    if not usable:
        return Verdict("no", reason=f"no homomorphisms of degree {d}")
    rng = random.Random(seed)
    p = S.p
    for _ in range(trials):
        vec = {}
        for g, gd in usable:
            vaxpy(vec, _random_poly(S, d - gd, rng), g, p)
        f = hom_element_map(M, N, vec, d)
        # N is minimal: f is onto iff its constant part has full rank (Nakayama);
        # onto plus equal Hilbert series gives bijective.
        if _constant_rank(f.columns, N.rank, p, S.one) == N.rank:
            return Verdict("yes", f, d, "random homomorphism is bijective")
    return Verdict("probably_no", twist=d, reason=f"no isomorphism found in {trials} trials")


def free_summand_split(M: FPModule):
    """(M', f) with M = M' (+) R^f and M' free of free summands."""
    M = minimalize(M)
    if M.rank == 0:
        return M, 0
    ring = M.ring
    S = ring.S
    p = S.p
    D = dual_data(M)
    rows, chosen = [], []
    for phi in D.gens:
        row = [0] * M.rank
        for (m, i), c in phi.items():
            if m == S.one:
                row[i] = c
        if _rank_mod_p(rows + [row], p) > len(rows):
            rows.append(row)
            chosen.append(phi)
    if not chosen:
        return M, 0
    degs = [-vector_degree(S, phi, D.ambient) for phi in chosen]
    target = ring.free(degs)
    cols = []
    for i in range(M.rank):
        v = {}
        for k, phi in enumerate(chosen):
            for (m, idx), c in phi.items():
                if idx == i:
                    v[(m, k)] = c
        cols.append(v)
    f = GradedMap(M, target, cols, check=False)
    return kernel(f), len(chosen)


def projective_equivalence(M: FPModule, N: FPModule, trials: int = 32, seed: int = 0) -> Verdict:
    """M + P = N + Q for free P, Q: strip free summands, then compare up to twist."""
    A, _ = free_summand_split(M)
    B, _ = free_summand_split(N)
    return is_isomorphic(A, B, trials=trials, allow_twist=True, seed=seed)


def ideal_module(ring: RingSpec, gens) -> FPModule:
    """R / (gens)."""
    return Ideal(ring, [ring.parse(g) if isinstance(g, str) else g for g in gens]).quotient_module
