"""Reading and writing case files.

A case file is line oriented::

    # comment
    [ring]
    p = 32003
    vars = x y
    weights = 1 1
    ideal = x*y
    dim = 1
    minimal_primes = x ; y
    nzd_candidates = x+y

    [module.Mx]
    degrees = 0
    relations = x

    [check.t4]
    checker = T4
    module = Mxy
    expect = verified

Lists of polynomials are separated by ``;``; a prime is a comma separated
list of generators.  ``relations`` gives the presentation matrix row by row
(rows separated by ``;``, entries by ``,``).  Instead of ``relations`` a
module may use ``constructor``: ``sum A B ...``, ``dual A``, ``tensor A B``,
``syzygy A i``, ``auslander A``, ``shift A s`` or ``mf`` (with ``mf_A``,
``mf_B`` and optional ``mf_degrees``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .core import DEFAULT_PRIME, PolynomialSyntaxError
from .fpmodule import FPModule, RingSpec, RingSpecError, StructuralError, direct_sum
from . import fpmodule as fp

RING_KEYS = ("p", "vars", "weights", "ideal", "dim", "minimal_primes", "nzd_candidates")
MODULE_KEYS = ("degrees", "relations", "constructor", "mf_A", "mf_B", "mf_degrees", "q_periodic")
CHECK_KEYS = ("checker", "module", "left", "right", "q", "expect")
STATUSES = ("verified", "hypothesis_not_met", "refuted", "inconclusive")


class CaseError(ValueError):
    """Parse or validation failure, located by line (and column when known)."""

    def __init__(self, message, line=None, column=None, invariant=None, path=None):
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}".strip() if where else message)
        self.line = line
        self.column = column
        self.invariant = invariant


@dataclass
class Entry:
    value: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass
class Section:
    kind: str                     # "ring", "module" or "check"
    name: str
    entries: dict = field(default_factory=dict)
    line: int = field(default=0, compare=False)

    def get(self, key, default=None):
        e = self.entries.get(key)
        return e.value if e is not None else default


@dataclass
class CaseFile:
    name: str
    ring: Section
    modules: dict
    checks: dict

    # -- serialization --------------------------------------------------

    def serialize(self) -> str:
        out = ["[ring]"]
        out += [f"{k} = {v.value}" for k, v in self.ring.entries.items()]
        for name, sec in self.modules.items():
            out += ["", f"[module.{name}]"]
            out += [f"{k} = {v.value}" for k, v in sec.entries.items()]
        for name, sec in self.checks.items():
            out += ["", f"[check.{name}]"]
            out += [f"{k} = {v.value}" for k, v in sec.entries.items()]
        return "\n".join(out) + "\n"

    # -- construction -----------------------------------------------------

    def build_ring(self) -> RingSpec:
        if getattr(self, "_ring", None) is None:
            self._ring = _build_ring(self.ring)
            self._modules = {}
        return self._ring

    def module(self, name: str) -> FPModule:
        ring = self.build_ring()
        if name not in self._modules:
            if name not in self.modules:
                raise CaseError(f"unknown module {name!r}")
            building = self.__dict__.setdefault("_building", set())
            if name in building:
                sec = self.modules[name]
                raise CaseError(f"module {name!r} is defined in terms of itself", sec.line)
            building.add(name)
            try:
                self._modules[name] = _build_module(self, ring, self.modules[name])
            finally:
                building.discard(name)
        return self._modules[name]

    def declared_period(self, name: str):
        q = self.modules[name].get("q_periodic")
        return int(q) if q else None

    def validate(self):
        self.build_ring()
        for name in self.modules:
            self.module(name)
        for name, sec in self.checks.items():
            if not sec.get("checker"):
                raise CaseError(f"check {name!r} has no checker", sec.line)
            for key in ("module", "left", "right"):
                ref = sec.get(key)
                if ref is not None and ref not in self.modules:
                    e = sec.entries[key]
                    raise CaseError(f"check {name!r} refers to undefined module {ref!r}", e.line, e.column)
            exp = sec.get("expect")
            if exp is not None and exp not in STATUSES:
                e = sec.entries["expect"]
                raise CaseError(f"unknown expected status {exp!r}", e.line, e.column)
        return self


def parse_text(text: str, name: str = "case", validate: bool = True) -> CaseFile:
    ring = None
    modules, checks = {}, {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise CaseError("unterminated section header", lineno, len(line))
            header = stripped[1:-1].strip()
            if header == "ring":
                if ring is not None:
                    raise CaseError("duplicate [ring] section", lineno, 1)
                ring = current = Section("ring", "ring", line=lineno)
            elif "." in header and header.split(".", 1)[0] in ("module", "check"):
                kind, sname = header.split(".", 1)
                if not sname.isidentifier():
                    raise CaseError(f"bad section name {sname!r}", lineno, 1)
                table = modules if kind == "module" else checks
                if sname in table:
                    raise CaseError(f"duplicate section {header!r}", lineno, 1)
                current = table[sname] = Section(kind, sname, line=lineno)
            else:
                raise CaseError(f"unknown section {header!r}", lineno, 1)
            continue
        if "=" not in line:
            raise CaseError("expected 'key = value'", lineno, 1)
        if current is None:
            raise CaseError("entry outside of any section", lineno, 1)
        key, value = line.split("=", 1)
        key = key.strip()
        allowed = {"ring": RING_KEYS, "module": MODULE_KEYS, "check": CHECK_KEYS}[current.kind]
        if key not in allowed:
            raise CaseError(f"unknown key {key!r} in [{current.kind}]", lineno, 1)
        if key in current.entries:
            raise CaseError(f"duplicate key {key!r}", lineno, 1)
        col = line.index("=") + 2 + (len(value) - len(value.lstrip()))
        current.entries[key] = Entry(value.strip(), lineno, col)
    if ring is None:
        raise CaseError("missing [ring] section")
    case = CaseFile(name, ring, modules, checks)
    if validate:
        case.validate()
    return case


def parse_case(path) -> CaseFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise CaseError(f"cannot read {path}: {e}") from None
    try:
        return parse_text(text, path.stem)
    except CaseError as e:
        e.args = (f"{path.name}: {e.args[0]}",)
        raise


# -- building -------------------------------------------------------------------------

def _split(value, sep=";"):
    return [part.strip() for part in value.split(sep) if part.strip()]


def _poly(S, entry: Entry, text: str, offset: int = 0):
    try:
        return S.parse(text)
    except PolynomialSyntaxError as e:
        raise CaseError(f"bad polynomial {text!r}: {e.args[0]}", entry.line,
                        entry.column + offset + (e.column or 0)) from None


def _offsets(value: str, parts, sep):
    """Column offsets of each separated part inside ``value``."""
    out, pos = [], 0
    for part in parts:
        pos = value.index(part, pos)
        out.append(pos)
        pos += len(part)
    return out


def _ints(entry: Entry):
    try:
        return [int(x) for x in entry.value.replace(",", " ").split()]
    except ValueError:
        raise CaseError(f"expected integers, got {entry.value!r}", entry.line, entry.column) from None


def _build_ring(sec: Section) -> RingSpec:
    e = sec.entries
    if "vars" not in e:
        raise CaseError("ring needs 'vars'", sec.line)
    variables = e["vars"].value.replace(",", " ").split()
    p = _ints(e["p"])[0] if "p" in e else DEFAULT_PRIME
    weights = _ints(e["weights"]) if "weights" in e else None
    dim = _ints(e["dim"])[0] if "dim" in e else None
    from .core import PolyRing
    try:
        S = PolyRing(variables, weights, p)
    except ValueError as err:
        raise CaseError(str(err), e["vars"].line, e["vars"].column, invariant="ring") from None

    def polys(key):
        if key not in e:
            return []
        entry = e[key]
        parts = _split(entry.value)
        offs = _offsets(entry.value, parts, ";")
        return [_poly(S, entry, t, o) for t, o in zip(parts, offs)]

    ideal = polys("ideal")
    nzd = polys("nzd_candidates")
    primes = []
    if "minimal_primes" in e:
        entry = e["minimal_primes"]
        for part in _split(entry.value):
            off = entry.value.index(part)
            primes.append([_poly(S, entry, g, off + part.index(g)) for g in _split(part, ",")])
    from .core import is_prime
    if not is_prime(p):
        raise CaseError(f"modulus {p} is not prime", e["p"].line, e["p"].column, invariant="prime_modulus")
    try:
        return RingSpec(variables, ideal, weights, p, dim=dim, minimal_primes=primes,
                        nzd_candidates=nzd)
    except RingSpecError as err:
        line = {"hilbert_pole_order": "dim", "prime_contains_ideal": "minimal_primes",
                "nzd_candidate": "nzd_candidates", "homogeneous_nzd": "nzd_candidates",
                "homogeneous_prime": "minimal_primes", "homogeneous_ideal": "ideal"}.get(err.invariant)
        entry = e.get(line)
        raise CaseError(str(err), entry.line if entry else sec.line,
                        entry.column if entry else None, invariant=err.invariant) from None


def _matrix(S, entry: Entry):
    rows = []
    for row in _split(entry.value):
        off = entry.value.index(row)
        rows.append([_poly(S, entry, t, off + row.index(t)) for t in (x.strip() for x in row.split(","))])
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise CaseError("matrix rows have different lengths", entry.line, entry.column)
    return rows


def _build_module(case: CaseFile, ring: RingSpec, sec: Section) -> FPModule:
    e = sec.entries
    cons = sec.get("constructor")
    try:
        if cons is None:
            if "degrees" not in e:
                raise CaseError(f"module {sec.name!r} needs 'degrees'", sec.line)
            degrees = _ints(e["degrees"])
            rels = []
            if "relations" in e:
                rows = _matrix(ring.S, e["relations"])
                if len(rows) != len(degrees):
                    raise CaseError("relation matrix needs one row per generator",
                                    e["relations"].line, e["relations"].column)
                ncols = len(rows[0]) if rows else 0
                for j in range(ncols):
                    col = {}
                    for i in range(len(rows)):
                        for m, c in rows[i][j].items():
                            col[(m, i)] = c
                    rels.append(col)
            try:
                return FPModule(ring, degrees, rels)
            except StructuralError as err:
                entry = e.get("relations", e["degrees"])
                raise CaseError(f"module {sec.name!r}: {err}", entry.line, entry.column,
                                invariant="homogeneous_presentation") from None
        words = cons.split()
        op, args = words[0], words[1:]
        ref = lambda n: case.module(n)
        if op == "sum":
            return direct_sum(*[ref(a) for a in args])
        if op == "dual":
            return fp.dual(ref(args[0]))
        if op == "tensor":
            return fp.tensor(ref(args[0]), ref(args[1]))
        if op == "auslander":
            return fp.auslander_dual(ref(args[0]))
        if op == "shift":
            return ref(args[0]).shift(int(args[1]))
        if op == "syzygy":
            from .resolution import syzygy
            return syzygy(ref(args[0]), int(args[1]))
        if op == "mf":
            from .resolution import MatrixFactorization, module_from_mf
            if len(ring.ideal) != 1:
                raise CaseError("mf constructor needs a hypersurface ring", e["constructor"].line)
            A = _matrix(ring.S, e["mf_A"])
            B = _matrix(ring.S, e["mf_B"])
            mf = MatrixFactorization(A, B, ring.ideal[0], ring.S)
            degs = _ints(e["mf_degrees"]) if "mf_degrees" in e else None
            return module_from_mf(mf, ring, degs)
        raise CaseError(f"unknown constructor {op!r}", e["constructor"].line, e["constructor"].column)
    except (KeyError, IndexError):
        raise CaseError(f"module {sec.name!r}: incomplete constructor", sec.line) from None
    except StructuralError as err:
        raise CaseError(f"module {sec.name!r}: {err}", sec.line, invariant="structure") from None
