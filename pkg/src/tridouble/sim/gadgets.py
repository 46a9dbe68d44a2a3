"""Gadget scripts: a line-oriented Clifford circuit language over code blocks.

One operation per line, ``#`` starts a comment::

    block A golay23 0          # declare a view: code, first qubit
    prepare A +                # 0 1 + - +i -i, or ``in`` for the run input
    bell B C                   # logical (|00> + |11>)/sqrt2 across two blocks
    cnot D A 0:23              # transversal CNOT, control sub-range optional
    h A | s A | sdg A | spow A 3
    pauli A X                  # logical X, Y or Z
    error A Z 0,5,9            # physical Pauli on listed qubits
    measure A X m              # transversal measurement, logical bit -> m
    measure_stabilizers A s
    project D doubled s        # shared-syndrome conversion onto a code form
    if m pauli A Z             # any op, run when m == 1
    discard A

Blocks are contiguous views and may overlap, so a doubled block can be
declared over the qubits of its self-dual and inner parts.  ``t`` is
accepted by the parser but rejected at run time.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..codes import CssCode, as_css, catalog
from ..decode import decoder_for
from ..doubling import double, doubled_form, extended_form
from ..gf2 import BitMatrix, popcount, solve
from .tableau import Tableau

STATES = ("0", "1", "+", "-", "+i", "-i")

# doubled catalog codes and their (self-dual, inner) parts
DOUBLED_PARTS = {"tri49": ("color17", "rm15"), "tri95": ("golay23", "tri49")}

_ARITY = {
    "qubits": (1, 1),
    "block": (3, 3),
    "prepare": (2, 2),
    "bell": (2, 2),
    "cnot": (2, 3),
    "h": (1, 1),
    "s": (1, 1),
    "sdg": (1, 1),
    "spow": (2, 2),
    "t": (1, 1),
    "tdg": (1, 1),
    "pauli": (2, 2),
    "error": (3, 3),
    "measure": (3, 3),
    "measure_stabilizers": (2, 2),
    "project": (3, 3),
    "discard": (1, 1),
}
NON_CLIFFORD = ("t", "tdg")


class ScriptError(ValueError):
    pass


class NonCliffordError(ScriptError):
    pass


class SimulationIntegrityError(RuntimeError):
    pass


@dataclass(frozen=True)
class Op:
    kind: str
    args: tuple[str, ...]
    cond: str | None = None
    line: int = 0

    def __str__(self) -> str:
        body = " ".join((self.kind,) + self.args)
        return f"if {self.cond} {body}" if self.cond else body


@dataclass(frozen=True)
class Block:
    name: str
    code_name: str
    offset: int

    @property
    def code(self) -> CssCode:
        return css_for(self.code_name)

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def qubits(self) -> range:
        return range(self.offset, self.offset + self.n)

    def lift(self, bits: int) -> int:
        return bits << self.offset


@dataclass(frozen=True)
class GadgetScript:
    ops: tuple[Op, ...]
    blocks: dict[str, Block]
    nqubits: int

    def __str__(self) -> str:
        return "\n".join(str(op) for op in self.ops)


@lru_cache(maxsize=None)
def css_for(name: str) -> CssCode:
    return as_css(catalog(name))


@lru_cache(maxsize=None)
def conversion_form(name: str, form: str) -> CssCode:
    try:
        sd, tri = DOUBLED_PARTS[name]
    except KeyError:
        raise ScriptError(f"{name} is not a doubled code; choose from {sorted(DOUBLED_PARTS)}") from None
    d = double(catalog(sd), catalog(tri))
    if form == "doubled":
        return doubled_form(d)
    if form == "extended":
        return extended_form(d)
    raise ScriptError(f"unknown form {form!r}; use doubled or extended")


def _parse_op(words: list[str], lineno: int) -> Op:
    cond = None
    if words[0] == "if":
        if len(words) < 3:
            raise ScriptError(f"line {lineno}: 'if' needs a label and an operation")
        cond, words = words[1], words[2:]
        if words[0] in ("block", "qubits", "if"):
            raise ScriptError(f"line {lineno}: cannot condition {words[0]!r}")
    kind, args = words[0], tuple(words[1:])
    if kind not in _ARITY:
        raise ScriptError(f"line {lineno}: unknown operation {kind!r}")
    lo, hi = _ARITY[kind]
    if not lo <= len(args) <= hi:
        raise ScriptError(f"line {lineno}: {kind} takes {lo}..{hi} arguments, got {len(args)}")
    return Op(kind, args, cond, lineno)


def parse_script(text: str) -> GadgetScript:
    ops: list[Op] = []
    blocks: dict[str, Block] = {}
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        words = shlex.split(raw, comments=True)
        if not words:
            continue
        op = _parse_op(words, lineno)
        if op.kind == "qubits":
            declared = int(op.args[0])
            continue
        if op.kind == "block":
            name, code_name, offset = op.args
            if name in blocks:
                raise ScriptError(f"line {lineno}: block {name!r} declared twice")
            try:
                css_for(code_name)
            except KeyError as exc:
                raise ScriptError(f"line {lineno}: {exc.args[0]}") from None
            blocks[name] = Block(name, code_name, int(offset))
            continue
        for ref in _block_refs(op):
            if ref not in blocks:
                raise ScriptError(f"line {lineno}: undeclared block {ref!r}")
        ops.append(op)
    extent = max((b.offset + b.n for b in blocks.values()), default=0)
    if declared is not None and declared < extent:
        raise ScriptError(f"blocks need {extent} qubits but only {declared} declared")
    return GadgetScript(tuple(ops), blocks, declared or extent)


def _block_refs(op: Op) -> tuple[str, ...]:
    if op.kind in ("bell", "cnot"):
        return op.args[:2]
    return op.args[:1]


# local code-state tableaus ----------------------------------------------------------

@lru_cache(maxsize=None)
def _local_rows(code_name: str, basis: str):
    """Destabilizer and stabilizer rows of ``|0>`` (basis Z) or ``|+>`` (basis X).

    With ``G`` the stabilizers of the type matching ``basis`` and ``H`` the
    others plus the logical of type ``basis``: ``F H^T = I`` and
    ``D [G; F]^T = [I | 0]`` give destabilizers that pair off exactly.
    """
    code = css_for(code_name)
    if basis == "Z":
        g, h = code.x_stabs, BitMatrix.vstack(code.z_stabs, BitMatrix((code.logical_z.bits,), code.n))
    else:
        g, h = code.z_stabs, BitMatrix.vstack(code.x_stabs, BitMatrix((code.logical_x.bits,), code.n))
    f = [solve(h, 1 << k) for k in range(h.nrows)]
    gf = BitMatrix.vstack(g, BitMatrix(tuple(f), code.n))
    dd = [solve(gf, 1 << i) for i in range(g.nrows)]
    if any(v is None for v in f + dd):
        raise SimulationIntegrityError(f"{code_name}: stabilizers are not independent")

    def typed(bits: int, pauli: str):
        return (bits, 0, 0) if pauli == "X" else (0, bits, 0)

    gtype, htype = ("X", "Z") if basis == "Z" else ("Z", "X")
    stab = [typed(r, gtype) for r in g.rows] + [typed(r, htype) for r in h.rows]
    destab = [typed(r, htype) for r in dd] + [typed(r, gtype) for r in f]
    return tuple(destab), tuple(stab)


@lru_cache(maxsize=None)
def _pure_errors(code: CssCode) -> dict[str, tuple[int, ...]]:
    """Per stabilizer, an opposite-type Pauli flipping only that stabilizer.

    Keyed by the type of the stabilizer being flipped.
    """
    out = {}
    for t, other in (("X", "Z"), ("Z", "X")):
        m = BitMatrix.vstack(code.stabs(t), BitMatrix((code.logical(t).bits,), code.n))
        fixes = tuple(solve(m, 1 << i) for i in range(code.stabs(t).nrows))
        if any(v is None for v in fixes):
            raise SimulationIntegrityError(f"{code.name}: no pure error for some {t} stabilizer")
        out[t] = fixes
    return out


def y_sign(code: CssCode) -> int:
    """Sign bit of ``iXZ`` when written as the tableau row ``(lx, lz)``."""
    return 1 if popcount(code.logical_x.bits & code.logical_z.bits) % 4 == 3 else 0


# running --------------------------------------------------------------------------------

@dataclass
class RunResult:
    states: dict[str, str]
    record: dict[str, int]
    syndromes: dict[str, tuple[int, int]] = field(default_factory=dict)
    tableau: Tableau | None = None
    seed: int | None = None

    def state(self, block: str) -> str:
        return self.states[block]


class Runner:
    """Executes one script on one tableau; owns the measurement record."""

    def __init__(self, script: GadgetScript, rng: np.random.Generator, initial: dict[str, str]):
        self.script = script
        self.tab = Tableau(script.nqubits, rng)
        self.initial = initial
        self.record: dict[str, int] = {}
        self.syndromes: dict[str, tuple[int, int]] = {}
        self.discarded: set[str] = set()

    def block(self, name: str) -> Block:
        if name in self.discarded:
            raise ScriptError(f"block {name!r} was discarded")
        return self.script.blocks[name]

    # logical operators ------------------------------------------------------------
    def logical_x(self, b: Block, sign: int = 0) -> None:
        self.tab.pauli(b.lift(b.code.logical_x.bits), 0)

    def logical_z(self, b: Block) -> None:
        self.tab.pauli(0, b.lift(b.code.logical_z.bits))

    def expectation(self, b: Block, pauli: str) -> int:
        c = b.code
        if pauli == "X":
            return self.tab.expectation(b.lift(c.logical_x.bits), 0)
        if pauli == "Z":
            return self.tab.expectation(0, b.lift(c.logical_z.bits))
        return self.tab.expectation(b.lift(c.logical_x.bits), b.lift(c.logical_z.bits), y_sign(c))

    def describe(self, b: Block) -> str:
        for pauli, names in (("Z", ("0", "1")), ("X", ("+", "-")), ("Y", ("+i", "-i"))):
            e = self.expectation(b, pauli)
            if e:
                return names[0] if e > 0 else names[1]
        return "mixed"

    # operations ---------------------------------------------------------------------
    def prepare(self, b: Block, state: str) -> None:
        if state == "in":
            state = self.initial.get(b.name, "0")
        if state not in STATES:
            raise ScriptError(f"unknown state {state!r}; use one of {', '.join(STATES)}")
        if not self.tab.is_fresh(b.qubits):
            raise ScriptError(f"block {b.name!r} is not fresh")
        basis = "Z" if state in ("0", "1") else "X"
        destab, stab = _local_rows(b.code_name, basis)
        self.tab.set_rows(b.qubits, destab, stab)
        if state == "1":
            self.logical_x(b)
        elif state == "-":
            self.logical_z(b)
        elif state in ("+i", "-i"):
            c = b.code
            m = self.tab.measure(b.lift(c.logical_x.bits), b.lift(c.logical_z.bits),
                                 y_sign(c) ^ (state == "-i"))
            if m:
                self.logical_z(b)

    def bell(self, a: Block, b: Block) -> None:
        # both |+>, then fix the joint Z parity
        self.prepare(a, "+")
        self.prepare(b, "+")
        zz = a.lift(a.code.logical_z.bits) | b.lift(b.code.logical_z.bits)
        if self.tab.measure(0, zz):
            self.logical_x(b)

    def cnot(self, c: Block, t: Block, window: str | None) -> None:
        lo, hi = 0, c.n
        if window:
            a, _, z = window.partition(":")
            lo, hi = int(a), int(z)
        if hi - lo != t.n or not 0 <= lo < hi <= c.n:
            raise ScriptError(f"cnot window {lo}:{hi} of {c.name} does not match {t.name} ({t.n} qubits)")
        controls = [c.offset + i for i in range(lo, hi)]
        self.tab.cx(controls, list(t.qubits))

    def measure(self, b: Block, basis: str, label: str) -> None:
        if basis not in ("X", "Z"):
            raise ScriptError(f"measure basis must be X or Z, got {basis!r}")
        outs = self.tab.measure_qubits(b.qubits, basis)
        bits = sum(o << i for i, o in enumerate(outs))
        logical = b.code.logical(basis).bits
        self.record[label] = popcount(bits & logical) & 1
        self.discarded.add(b.name)

    def measure_stabilizers(self, b: Block, label: str) -> None:
        c = b.code
        sx = sum(self.tab.measure(b.lift(r), 0) << i for i, r in enumerate(c.x_stabs.rows))
        sz = sum(self.tab.measure(0, b.lift(r)) << i for i, r in enumerate(c.z_stabs.rows))
        self.syndromes[label] = (sx, sz)
        self.record[label] = int(bool(sx or sz))

    def project(self, b: Block, form: str, label: str) -> None:
        """Measure the target form's generators, decode shared syndromes, fix signs."""
        code = conversion_form(b.code_name, form)
        if code.n != b.n:
            raise ScriptError(f"form {form} of {b.code_name} has {code.n} qubits, block has {b.n}")
        ns = catalog(b.code_name).b0.nrows
        xs, zs = code.x_stabs.rows, code.z_stabs.rows
        sx = sum(self.tab.measure(b.lift(r), 0) << i for i, r in enumerate(xs[:ns]))
        sz = sum(self.tab.measure(0, b.lift(r)) << i for i, r in enumerate(zs[:ns]))
        dec = decoder_for(b.code_name)
        zc = dec.decode(sx).correction
        xc = dec.decode(sz).correction
        if zc or xc:
            self.tab.pauli(b.lift(xc), b.lift(zc))
        self.syndromes[label] = (sx, sz)
        fixes = _pure_errors(code)
        flips = 0
        for i in range(ns, len(xs)):
            if self.tab.measure(b.lift(xs[i]), 0):
                self.tab.pauli(0, b.lift(fixes["X"][i]))
                flips += 1
        for i in range(ns, len(zs)):
            if self.tab.measure(0, b.lift(zs[i])):
                self.tab.pauli(b.lift(fixes["Z"][i]), 0)
                flips += 1
        for r in xs:
            if self.tab.expectation(b.lift(r), 0) != 1:
                raise SimulationIntegrityError(f"X stabilizer sign not fixed in {b.name}")
        for r in zs:
            if self.tab.expectation(0, b.lift(r)) != 1:
                raise SimulationIntegrityError(f"Z stabilizer sign not fixed in {b.name}")
        self.record[label] = flips

    def execute(self, op: Op) -> None:
        if op.cond is not None:
            if op.cond not in self.record:
                raise ScriptError(f"line {op.line}: label {op.cond!r} not measured yet")
            if not self.record[op.cond]:
                return
        k, a = op.kind, op.args
        if k in NON_CLIFFORD:
            raise NonCliffordError(f"line {op.line}: non-Clifford operation {k!r} cannot run on a tableau")
        b = self.block(a[0])
        if k == "prepare":
            self.prepare(b, a[1])
        elif k == "bell":
            self.bell(b, self.block(a[1]))
        elif k == "cnot":
            self.cnot(b, self.block(a[1]), a[2] if len(a) > 2 else None)
        elif k == "h":
            self.tab.h(b.qubits)
        elif k in ("s", "sdg", "spow"):
            power = {"s": 1, "sdg": 3}.get(k) or int(a[1])
            self.tab.s(b.qubits, power)
        elif k == "pauli":
            p = a[1].upper()
            if p not in ("X", "Y", "Z"):
                raise ScriptError(f"line {op.line}: logical Pauli must be X, Y or Z")
            if p in ("X", "Y"):
                self.logical_x(b)
            if p in ("Z", "Y"):
                self.logical_z(b)
        elif k == "error":
            p = a[1].upper()
            bits = sum(1 << int(i) for i in a[2].split(",") if i != "")
            if bits >> b.n:
                raise ScriptError(f"line {op.line}: error outside block {b.name}")
            xb = b.lift(bits) if p in ("X", "Y") else 0
            zb = b.lift(bits) if p in ("Z", "Y") else 0
            self.tab.pauli(xb, zb)
        elif k == "measure":
            self.measure(b, a[1].upper(), a[2])
        elif k == "measure_stabilizers":
            self.measure_stabilizers(b, a[1])
        elif k == "project":
            self.project(b, a[1], a[2])
        elif k == "discard":
            self.discarded.add(b.name)

    def result(self, seed: int | None) -> RunResult:
        states = {}
        for name, b in self.script.blocks.items():
            if name in self.discarded:
                continue
            states[name] = self.describe(b)
        return RunResult(states, dict(self.record), dict(self.syndromes), self.tab, seed)


def check_clifford(script: GadgetScript) -> None:
    for op in script.ops:
        if op.kind in NON_CLIFFORD:
            raise NonCliffordError(f"line {op.line}: non-Clifford operation {op.kind!r} cannot run on a tableau")


def run_tableau(script: GadgetScript | str, initial: dict[str, str] | None = None,
                seed: int | np.random.SeedSequence | None = None) -> RunResult:
    """Run a Clifford script; outcomes of random measurements come from ``seed``."""
    if isinstance(script, str):
        script = parse_script(script)
    check_clifford(script)
    rng = np.random.default_rng(seed)
    runner = Runner(script, rng, dict(initial or {}))
    for op in script.ops:
        runner.execute(op)
    return runner.result(seed if isinstance(seed, int) else None)


__all__ = [
    "Block",
    "DOUBLED_PARTS",
    "GadgetScript",
    "NonCliffordError",
    "Op",
    "RunResult",
    "STATES",
    "ScriptError",
    "SimulationIntegrityError",
    "conversion_form",
    "css_for",
    "parse_script",
    "run_tableau",
    "y_sign",
]
