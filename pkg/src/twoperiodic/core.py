"""Sparse polynomials and free-module vectors over a prime field.

Monomials are exponent tuples.  A polynomial is a dict ``{monomial: coeff}``
and a vector of a free module is a dict ``{(monomial, position): coeff}``;
coefficients are stored reduced into ``[1, p)`` and zero terms are never kept.
Everything here is homogeneous-aware: each free module carries a tuple of
generator degrees and every routine assumes homogeneous input.
"""

from __future__ import annotations

import ast
from itertools import combinations

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative, used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# -- monomials ---------------------------------------------------------------

def mon_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mon_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mon_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mon_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mon_coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class PolyRing:
    """Weighted-graded polynomial ring F_p[x_1..x_n].

    Carries the monomial caches (degree, reverse-lex key) shared by every
    module order built over it.
    """

    def __init__(self, variables, weights=None, p: int = DEFAULT_PRIME):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.variables)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        self.field = PrimeField(p)
        self.p = p
        self.one = (0,) * self.nvars
        self._deg = {}
        self._revkey = {}
        self._monos = {}

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, weights={list(self.weights)}, p={self.p})"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.weights == other.weights and self.p == other.p)

    def __hash__(self):
        return hash((self.variables, self.weights, self.p))

    def deg(self, m) -> int:
        d = self._deg.get(m)
        if d is None:
            d = sum(w * e for w, e in zip(self.weights, m))
            self._deg[m] = d
        return d

    def revkey(self, m):
        k = self._revkey.get(m)
        if k is None:
            k = tuple(-e for e in reversed(m))
            self._revkey[m] = k
        return k

    def monomials(self, d: int) -> list:
        """All monomials of weighted degree d, ascending in grevlex."""
        if d < 0:
            return []
        out = self._monos.get(d)
        if out is None:
            out = []

            def rec(i, rest, acc):
                if i == self.nvars:
                    if rest == 0:
                        out.append(tuple(acc))
                    return
                w = self.weights[i]
                for e in range(rest // w + 1):
                    acc.append(e)
                    rec(i + 1, rest - e * w, acc)
                    acc.pop()

            rec(0, d, [])
            out.sort(key=lambda m: self.revkey(m))
            self._monos[d] = out
        return out

    def var(self, i: int) -> dict:
        m = [0] * self.nvars
        m[i] = 1
        return {tuple(m): 1}

    def const(self, c: int) -> dict:
        c %= self.p
        return {self.one: c} if c else {}

    # -- polynomial arithmetic ------------------------------------------------

    def add(self, f: dict, g: dict, scale: int = 1) -> dict:
        """f + scale*g."""
        p = self.p
        out = dict(f)
        for m, c in g.items():
            v = (out.get(m, 0) + scale * c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def sub(self, f, g):
        return self.add(f, g, -1)

    def scale(self, f: dict, c: int) -> dict:
        c %= self.p
        if not c:
            return {}
        return {m: a * c % self.p for m, a in f.items()}

    def mul(self, f: dict, g: dict) -> dict:
        p = self.p
        out = {}
        for m1, a in f.items():
            for m2, b in g.items():
                m = mon_mul(m1, m2)
                v = (out.get(m, 0) + a * b) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def power(self, f: dict, k: int) -> dict:
        out = self.const(1)
        for _ in range(k):
            out = self.mul(out, f)
        return out

    def poly_degree(self, f: dict):
        """Weighted degree of a homogeneous polynomial (None for zero or inhomogeneous)."""
        degs = {self.deg(m) for m in f}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, f: dict) -> bool:
        return len({self.deg(m) for m in f}) <= 1

    # -- text -------------------------------------------------------------------

    def parse(self, text: str) -> dict:
        """Parse an ASCII polynomial such as ``y^2 - x^3 + 2*x*y``."""
        lead = len(text) - len(text.lstrip())
        src = text.strip().replace("^", "**")
        if not src:
            raise PolynomialSyntaxError("empty polynomial", text, 0)

        def column(offset):
            # undo the "^" -> "**" rewrite so columns point into the original text
            return lead + offset - src[:offset].count("**")
        try:
            tree = ast.parse(src, mode="eval")
            return self._eval(tree.body, text)
        except SyntaxError as exc:
            if not exc.offset:
                # a dangling operator: Python reports no position
                raise PolynomialSyntaxError("unexpected end of input", text, lead + len(text.strip())) from None
            raise PolynomialSyntaxError(exc.msg, text, column(exc.offset - 1)) from None
        except PolynomialSyntaxError as exc:
            raise PolynomialSyntaxError(exc.msg, text, column(exc.column)) from None

    def _eval(self, node, text):
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)
                        and node.right.value >= 0):
                    raise PolynomialSyntaxError("exponent must be a non-negative integer",
                                                text, node.col_offset)
                return self.power(left, node.right.value)
            right = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return self.add(left, right)
            if isinstance(node.op, ast.Sub):
                return self.sub(left, right)
            if isinstance(node.op, ast.Mult):
                return self.mul(left, right)
        elif isinstance(node, ast.UnaryOp):
            operand = self._eval(node.operand, text)
            if isinstance(node.op, ast.USub):
                return self.scale(operand, -1)
            if isinstance(node.op, ast.UAdd):
                return operand
        elif isinstance(node, ast.Constant) and isinstance(node.value, int):
            return self.const(node.value)
        elif isinstance(node, ast.Name):
            if node.id not in self.variables:
                raise PolynomialSyntaxError(f"unknown variable {node.id!r}", text, node.col_offset)
            return self.var(self.variables.index(node.id))
        raise PolynomialSyntaxError("unsupported expression", text, getattr(node, "col_offset", 0))

    def format(self, f: dict) -> str:
        if not f:
            return "0"
        parts = []
        for m in sorted(f, key=lambda m: (self.deg(m), self.revkey(m)), reverse=True):
            c = self.field.signed(f[m])
            factors = []
            for name, e in zip(self.variables, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                term = str(abs(c))
            elif abs(c) == 1:
                term = body
            else:
                term = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


class PolynomialSyntaxError(ValueError):
    def __init__(self, msg, text, column):
        super().__init__(f"{msg} (column {column + 1} of {text!r})")
        self.msg = msg
        self.column = column


# -- vectors of free modules -------------------------------------------------

def embed(f: dict, i: int) -> dict:
    return {(m, i): c for m, c in f.items()}


def component(v: dict, i: int) -> dict:
    return {m: c for (m, j), c in v.items() if j == i}


def components(v: dict, rank: int) -> list:
    out = [{} for _ in range(rank)]
    for (m, j), c in v.items():
        out[j][m] = c
    return out


def from_components(polys) -> dict:
    out = {}
    for i, f in enumerate(polys):
        for m, c in f.items():
            out[(m, i)] = c
    return out


def vadd(u: dict, v: dict, p: int, scale: int = 1) -> dict:
    out = dict(u)
    for t, c in v.items():
        x = (out.get(t, 0) + scale * c) % p
        if x:
            out[t] = x
        else:
            out.pop(t, None)
    return out


def vscale(v: dict, c: int, p: int) -> dict:
    c %= p
    if not c:
        return {}
    return {t: a * c % p for t, a in v.items()}


def vmul_term(v: dict, mon, c: int, p: int) -> dict:
    return {(mon_mul(m, mon), i): a * c % p for (m, i), a in v.items()}


def vmul_poly(v: dict, f: dict, p: int) -> dict:
    out = {}
    for mon, c in f.items():
        for (m, i), a in v.items():
            t = (mon_mul(m, mon), i)
            x = (out.get(t, 0) + a * c) % p
            if x:
                out[t] = x
            else:
                out.pop(t, None)
    return out


def vaxpy(acc: dict, f: dict, v: dict, p: int) -> None:
    """acc += f * v in place (f a polynomial)."""
    for mon, c in f.items():
        for (m, i), a in v.items():
            t = (mon_mul(m, mon), i)
            x = (acc.get(t, 0) + a * c) % p
            if x:
                acc[t] = x
            else:
                acc.pop(t, None)


def reindex(v: dict, mapping) -> dict:
    """Move position i to mapping[i]; positions mapped to None are dropped."""
    out = {}
    for (m, i), c in v.items():
        j = mapping[i]
        if j is not None:
            out[(m, j)] = c
    return out


def shift_positions(v: dict, offset: int) -> dict:
    return {(m, i + offset): c for (m, i), c in v.items()}


def restrict(v: dict, lo: int, hi: int) -> dict:
    """Keep positions in [lo, hi), renumbered from 0."""
    return {(m, i - lo): c for (m, i), c in v.items() if lo <= i < hi}


def substitute(v: dict, images, p: int) -> dict:
    """Linear map sending basis vector e_i to images[i]."""
    out = {}
    for (m, i), c in v.items():
        for (m2, j), a in images[i].items():
            t = (mon_mul(m, m2), j)
            x = (out.get(t, 0) + a * c) % p
            if x:
                out[t] = x
            else:
                out.pop(t, None)
    return out


def vector_degree(ring: PolyRing, v: dict, degrees):
    """Degree of a homogeneous vector, or None if zero; raises if inhomogeneous."""
    d = None
    for (m, i) in v:
        e = ring.deg(m) + degrees[i]
        if d is None:
            d = e
        elif d != e:
            raise ValueError("inhomogeneous vector")
    return d


# -- orders ------------------------------------------------------------------

class ModuleOrder:
    """Weighted grevlex, term-over-position, on a graded free module.

    With ``schreyer=(base_order, leads)`` the order compares x^a e_j by the
    base-order key of x^a * leads[j], breaking ties by position.
    """

    def __init__(self, ring: PolyRing, degrees, schreyer=None):
        self.ring = ring
        self.degrees = tuple(degrees)
        self.schreyer = schreyer
        self._key = {}

    @property
    def rank(self):
        return len(self.degrees)

    def degree(self, term) -> int:
        m, i = term
        return self.ring.deg(m) + self.degrees[i]

    def key(self, term):
        k = self._key.get(term)
        if k is None:
            m, i = term
            if self.schreyer is None:
                k = (self.ring.deg(m) + self.degrees[i], self.ring.revkey(m), -i)
            else:
                base, leads = self.schreyer
                lm, li = leads[i]
                k = (base.key((mon_mul(m, lm), li)), -i)
            self._key[term] = k
        return k

    def lead(self, v: dict):
        return max(v, key=self.key)


# -- Groebner bases ----------------------------------------------------------

class GroebnerBasis:
    """A Groebner basis of a submodule of a graded free module.

    ``reps[k]``, when tracked, expresses ``elements[k]`` in the coordinates of
    the generators the basis was computed from.
    """

    def __init__(self, order: ModuleOrder, elements, reps=None):
        self.order = order
        self.ring = order.ring
        self.elements = list(elements)
        self.reps = list(reps) if reps is not None else None
        self.leads = [order.lead(g) for g in self.elements]
        self._by_comp = {}
        for k, (m, i) in enumerate(self.leads):
            self._by_comp.setdefault(i, []).append(k)

    def __len__(self):
        return len(self.elements)

    def find_reducer(self, term):
        m, i = term
        for k in self._by_comp.get(i, ()):
            if mon_divides(self.leads[k][0], m):
                return k
        return None

    def _append(self, g, rep=None):
        k = len(self.elements)
        self.elements.append(g)
        if self.reps is not None:
            self.reps.append(rep)
        lt = self.order.lead(g)
        self.leads.append(lt)
        self._by_comp.setdefault(lt[1], []).append(k)
        return k

    def divide(self, v: dict, rep: dict | None = None, full: bool = True):
        """Division with remainder.

        Returns ``(remainder, quotient)`` where, for a tracked basis, quotient is
        ``rep - sum(q_k * reps[k])``; otherwise the quotient is expressed in the
        positions of the basis elements.
        """
        p = self.ring.p
        key = self.order.key
        v = dict(v)
        r = {}
        q = dict(rep) if rep is not None else {}
        tracked = self.reps is not None
        while v:
            t = max(v, key=key)
            c = v[t]
            k = self.find_reducer(t)
            if k is None:
                if not full:
                    r.update(v)
                    break
                r[t] = c
                del v[t]
                continue
            mult = mon_div(t[0], self.leads[k][0])
            for (m, i), a in self.elements[k].items():
                tt = (mon_mul(m, mult), i)
                x = (v.get(tt, 0) - c * a) % p
                if x:
                    v[tt] = x
                else:
                    v.pop(tt, None)
            if tracked:
                for (m, i), a in self.reps[k].items():
                    tt = (mon_mul(m, mult), i)
                    x = (q.get(tt, 0) - c * a) % p
                    if x:
                        q[tt] = x
                    else:
                        q.pop(tt, None)
            else:
                tt = (mult, k)
                q[tt] = (q.get(tt, 0) + c) % p
        return r, q

    def reduce(self, v: dict) -> dict:
        return self.divide(v)[0]

    def contains(self, v: dict) -> bool:
        return not self.divide(v, full=False)[0]

    def lead_monomials(self):
        return list(self.leads)


def spoly(order: ModuleOrder, f, lf, g, lg, p):
    l = mon_lcm(lf[0], lg[0])
    a = mon_div(l, lf[0])
    b = mon_div(l, lg[0])
    s = vmul_term(f, a, 1, p)
    return vadd(s, vmul_term(g, b, 1, p), p, -1), a, b


def groebner(gens, order: ModuleOrder, *, known=(), track=False, minimal=False,
             reduced=True):
    """Buchberger's algorithm for homogeneous submodules.

    Pairs are processed degree by degree (the sugar degree of homogeneous
    input); the chain criterion prunes pairs, and the product criterion is
    used only on rank-one modules.  ``known`` is a list of vectors that are
    already a Groebner basis among themselves (no pairs formed between them).
    With ``minimal=True`` the positions of the generators that are needed
    (graded Nakayama) are recorded in ``basis.minimal``.
    """
    ring = order.ring
    p = ring.p
    if track and known:
        raise ValueError("tracking is not supported together with known elements")
    G = GroebnerBasis(order, [], [] if track else None)
    pairs = {}  # degree -> list of (key, i, j)
    known_count = 0
    for g in known:
        if g:
            G._append(_normalize(g, order, p))
            known_count += 1
    pending = {}
    for j, g in enumerate(gens):
        if not g:
            continue
        d = order.degree(next(iter(g)))
        pending.setdefault(d, []).append(j)
    chosen = []
    product_ok = order.rank == 1 and order.schreyer is None

    def add(h, rep):
        lh = order.lead(h)
        inv = pow(h[lh], -1, p)
        h = vscale(h, inv, p)
        if rep is not None:
            rep = vscale(rep, inv, p)
        t = G._append(h, rep)
        # chain criterion on existing pairs
        for d, lst in pairs.items():
            kept = []
            for entry in lst:
                _, i, j, l = entry
                if (l[1] == lh[1] and mon_divides(lh[0], l[0])
                        and mon_lcm(G.leads[i][0], lh[0]) != l[0]
                        and mon_lcm(G.leads[j][0], lh[0]) != l[0]):
                    continue
                kept.append(entry)
            pairs[d] = kept
        # new pairs, Gebauer-Moeller style
        cand = {}
        for i in range(t):
            li = G.leads[i]
            if li[1] != lh[1]:
                continue
            l = mon_lcm(li[0], lh[0])
            cand.setdefault(l, []).append(i)
        lcms = sorted(cand, key=lambda l: (ring.deg(l), ring.revkey(l)))
        survivors = []
        for l in lcms:
            if any(mon_divides(s, l) and s != l for s in lcms):
                continue
            survivors.append(l)
            group = cand[l]
            if product_ok and any(mon_coprime(G.leads[i][0], lh[0]) for i in group):
                continue
            i = group[0]
            term = (l, lh[1])
            d = order.degree(term)
            pairs.setdefault(d, []).append((order.key(term), i, t, term))

    while pairs or pending:
        cands = [d for d, lst in pairs.items() if lst] + list(pending)
        if not cands:
            break
        d = min(cands)
        while pairs.get(d):
            lst = sorted(pairs.pop(d), key=lambda e: e[0])
            for _, i, j, _l in lst:
                s, a, b = spoly(order, G.elements[i], G.leads[i], G.elements[j], G.leads[j], p)
                rep = None
                if track:
                    rep = vadd(vmul_term(G.reps[i], a, 1, p), vmul_term(G.reps[j], b, 1, p), p, -1)
                r, q = G.divide(s, rep=rep, full=False)
                if r:
                    add(r, q if track else None)
        pairs.pop(d, None)
        for j in pending.pop(d, ()):
            rep = {(ring.one, j): 1} if track else None
            r, q = G.divide(gens[j], rep=rep, full=False)
            if r:
                add(r, q if track else None)
                chosen.append(j)
    if reduced:
        G = _interreduce(G, track)
    G.minimal = chosen
    return G


def _normalize(g, order, p):
    lt = order.lead(g)
    return vscale(g, pow(g[lt], -1, p), p)


def _interreduce(G: GroebnerBasis, track: bool) -> GroebnerBasis:
    order = G.order
    p = order.ring.p
    keep = []
    for k, (m, i) in enumerate(G.leads):
        redundant = False
        for k2, (m2, i2) in enumerate(G.leads):
            if k2 == k or i2 != i or not mon_divides(m2, m):
                continue
            if m2 != m or k2 < k:
                redundant = True
                break
        if not redundant:
            keep.append(k)
    base = GroebnerBasis(order, [G.elements[k] for k in keep],
                         [G.reps[k] for k in keep] if track else None)
    elements, reps = [], []
    for idx, g in enumerate(base.elements):
        lt = base.leads[idx]
        tail = dict(g)
        c = tail.pop(lt)
        others = GroebnerBasis(order, [e for j, e in enumerate(base.elements) if j != idx],
                               [r for j, r in enumerate(base.reps) if j != idx] if track else None)
        rep = base.reps[idx] if track else None
        if track:
            # reduce g itself keeping the lead; the lead cannot be reduced by the others
            r, q = others.divide(tail, rep=rep)
            elements.append(vadd(r, {lt: c}, p))
            reps.append(q)
        else:
            r, _ = others.divide(tail)
            elements.append(vadd(r, {lt: c}, p))
    out = GroebnerBasis(order, elements, reps if track else None)
    return out


def is_groebner(G: GroebnerBasis) -> bool:
    """Every S-pair reduces to zero."""
    p = G.ring.p
    for i, j in combinations(range(len(G)), 2):
        if G.leads[i][1] != G.leads[j][1]:
            continue
        s, _, _ = spoly(G.order, G.elements[i], G.leads[i], G.elements[j], G.leads[j], p)
        if G.reduce(s):
            return False
    return True


def syzygies_of_basis(G: GroebnerBasis):
    """Schreyer generators of the syzygy module of a Groebner basis.

    The returned vectors live in the free module on the basis elements and
    form a Groebner basis for the Schreyer order (see ``schreyer_order``).
    """
    p = G.ring.p
    out = []
    for i, j in combinations(range(len(G)), 2):
        if G.leads[i][1] != G.leads[j][1]:
            continue
        s, a, b = spoly(G.order, G.elements[i], G.leads[i], G.elements[j], G.leads[j], p)
        r, q = G.divide(s)
        assert not r, "input is not a Groebner basis"
        syz = vadd({(a, i): 1}, {(b, j): 1}, p, -1)
        syz = vadd(syz, q, p, -1)
        if syz:
            out.append(syz)
    return out


def schreyer_order(G: GroebnerBasis) -> ModuleOrder:
    degrees = [G.order.degree(lt) for lt in G.leads]
    return ModuleOrder(G.ring, degrees, schreyer=(G.order, list(G.leads)))


def syzygies(gens, order: ModuleOrder):
    """Generators of the syzygy module of ``gens`` (vectors in the module of ``order``).

    The result lives in the free module with one basis vector per generator.
    Built from the Schreyer syzygies of a tracked Groebner
    basis, pulled back to the original generators.
    """
    ring = order.ring
    p = ring.p
    G = groebner(gens, order, track=True, reduced=False)
    out = []
    for i, j in combinations(range(len(G)), 2):
        if G.leads[i][1] != G.leads[j][1]:
            continue
        s, a, b = spoly(order, G.elements[i], G.leads[i], G.elements[j], G.leads[j], p)
        rep = vadd(vmul_term(G.reps[i], a, 1, p), vmul_term(G.reps[j], b, 1, p), p, -1)
        r, q = G.divide(s, rep=rep)
        assert not r
        if q:
            out.append(q)
    for j, g in enumerate(gens):
        r, q = G.divide(g, rep={(ring.one, j): 1})
        assert not r
        if q:
            out.append(q)
    return out


def minimal_generators(gens, order: ModuleOrder, known=()):
    """Indices of a minimal generating subset of gens modulo the span of ``known``."""
    G = groebner(gens, order, known=known, minimal=True, reduced=False)
    return sorted(G.minimal)


# -- Hilbert series numerators -------------------------------------------------

def _min_monomials(mons):
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(mon_divides(o, m) for o in out):
            out.append(m)
    return out


def _laurent_add(a: dict, b: dict, scale: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _laurent_mul(a: dict, b: dict) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def monomial_numerator(ring: PolyRing, mons) -> dict:
    """Numerator N with HS(S/(mons)) = N(t) / prod(1 - t^w)."""
    gens = _min_monomials(mons)
    return _numerator(ring, tuple(gens))


def _numerator(ring, gens, _memo=None):
    if _memo is None:
        _memo = {}
    if gens in _memo:
        return _memo[gens]
    if not gens:
        res = {0: 1}
    elif _pairwise_coprime(gens):
        res = {0: 1}
        for g in gens:
            res = _laurent_mul(res, _laurent_add({0: 1}, {ring.deg(g): -1}))
    else:
        # pivot on the last generator: N(J + m) = N(J) - t^deg(m) N(J : m)
        *rest, m = gens
        rest = tuple(rest)
        colon = _min_monomials([mon_div(mon_lcm(g, m), m) for g in rest])
        a = _numerator(ring, tuple(_min_monomials(rest)), _memo)
        b = _numerator(ring, tuple(colon), _memo)
        res = _laurent_add(a, {e + ring.deg(m): c for e, c in b.items()}, -1)
    _memo[gens] = res
    return res


def _pairwise_coprime(gens):
    return all(mon_coprime(a, b) for a, b in combinations(gens, 2))


def groebner_numerator(G: GroebnerBasis) -> dict:
    """Hilbert numerator of F / <G>, read off the lead terms."""
    ring = G.ring
    by_comp = {}
    for (m, i) in G.leads:
        by_comp.setdefault(i, []).append(m)
    out = {}
    for i, d in enumerate(G.order.degrees):
        num = monomial_numerator(ring, by_comp.get(i, []))
        out = _laurent_add(out, {e + d: c for e, c in num.items()})
    return out
