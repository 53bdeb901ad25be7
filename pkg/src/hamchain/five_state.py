"""Five-state rewrite machine on an open chain: odd sites carry movement
symbols, even sites carry qubit placeholders, and a single cursor-like symbol
ferries the qubit block rightward one block per round, firing one two-qubit
gate per adjacent pair as it sweeps.

Logical qubit values are never stored in a configuration; placeholders keep
their left-to-right order, so placeholder rank = logical qubit index.  Block
boundaries are static lattice metadata consulted by a few rules, not symbols.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

# odd-site symbols
MOV = ">"  # right-mover
MOVLE = "<"  # left-mover (also swaps placeholder and blank)
TUR = "T"  # turn-around
BUL = "."  # bullet spacer
PLUS = "+"  # plus spacer
# even-site symbols
Q = "q"  # qubit placeholder
G = "g"  # gate-qubit placeholder
BLANK = "_"  # unborn/dead

ODD_SYMBOLS = frozenset({MOV, MOVLE, TUR, BUL, PLUS})
EVEN_SYMBOLS = frozenset({Q, G, BLANK})


class RuleEngineError(RuntimeError):
    """Zero or multiple rule matches where exactly one was required."""


@dataclass(frozen=True)
class Lattice5:
    """Chain of 1 + 2nR sites: a 1-site block, then R blocks of 2n sites."""

    n: int
    R: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.R < 1:
            raise ValueError("need R >= 1")

    @property
    def L(self) -> int:
        return 1 + 2 * self.n * self.R

    def boundary_after(self, i: int) -> bool:
        """True if a block boundary sits between sites i and i+1."""
        return 1 <= i < self.L and (i - 1) % (2 * self.n) == 0


@dataclass(frozen=True)
class Config5:
    lattice: Lattice5
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) != self.lattice.L:
            raise ValueError(f"expected {self.lattice.L} symbols, got {len(self.symbols)}")
        for i, sym in enumerate(self.symbols, 1):
            family = ODD_SYMBOLS if i % 2 == 1 else EVEN_SYMBOLS
            if sym not in family:
                raise ValueError(f"site {i}: symbol {sym!r} not allowed on this parity")

    def dump_line(self, step: int) -> str:
        toks = []
        for i, sym in enumerate(self.symbols, 1):
            toks.append(sym)
            if self.lattice.boundary_after(i) and i < self.lattice.L:
                toks.append("|")
        return f"{step}\t" + " ".join(toks)


def parse_dump_line(line: str, lattice: Lattice5) -> tuple[int, Config5]:
    step_s, _, rest = line.partition("\t")
    syms = tuple(t for t in rest.split() if t != "|")
    return int(step_s), Config5(lattice, syms)


@dataclass(frozen=True)
class GateEvent:
    """A rule-1 firing: gate U_{round,position} on logical qubits (i, i+1)."""

    step: int  # transition index t (maps configuration t to t+1); -1 if unset
    m: int  # 1-based index in overall application order; -1 if unset
    round: int
    position: int
    forward: bool

    @property
    def qubits(self) -> tuple[int, int]:
        return (self.position, self.position + 1)


def initial_config5(n: int, R: int) -> Config5:
    lat = Lattice5(n, R)
    syms = [TUR]
    syms += [Q, PLUS] * (n - 1) + [Q, BUL]
    syms += [BLANK, BUL] * (n * (R - 1))
    return Config5(lat, tuple(syms))


# Rewrite rules over windows of three consecutive sites (s, s+1, s+2).
# Each entry: (name, lhs, rhs, boundary key).  The key states which window
# offset must (+) or must not (-) sit just before a block boundary; None
# means the rule never consults boundary metadata.  Rule "1" fires a gate.
_RULES = (
    ("1", (G, PLUS, Q), (Q, PLUS, G), None),
    ("2", (G, BUL, BLANK), (Q, TUR, BLANK), ("+", 1)),
    ("3", (TUR, BLANK, BUL), (MOVLE, BLANK, BUL), None),
    ("4", (Q, MOVLE, BLANK), (BLANK, MOVLE, Q), None),
    ("5a", (PLUS, BLANK, MOVLE), (MOVLE, BLANK, PLUS), None),
    ("5b", (BUL, BLANK, MOVLE), (BUL, BLANK, TUR), None),
    ("6a", (TUR, Q, PLUS), (BUL, G, PLUS), ("+", 0)),
    ("6b", (TUR, Q, PLUS), (BUL, Q, MOV), ("-", 0)),
    ("7a", (MOV, Q, PLUS), (PLUS, Q, MOV), None),
    ("7b", (MOV, Q, BUL), (PLUS, Q, TUR), ("-", 2)),
)


def _matches(c: Config5, reverse: bool):
    """All (start site s, rule) pairs whose window matches, in scan order."""
    syms = c.symbols
    lat = c.lattice
    out = []
    for s in range(1, lat.L - 1):
        window = syms[s - 1 : s + 2]
        for name, lhs, rhs, bkey in _RULES:
            pat = rhs if reverse else lhs
            if window != pat:
                continue
            if bkey is not None:
                sign, off = bkey
                at_boundary = lat.boundary_after(s + off)
                if (sign == "+") != at_boundary:
                    continue
            out.append((s, name))
    return out


def _gate_slot(lat: Lattice5, s: int) -> tuple[int, int]:
    """(round, position) of the rule-1 firing whose window starts at site s."""
    r = (s - 2) // (2 * lat.n) + 1
    block_start = 2 + 2 * lat.n * (r - 1)
    i = (s - block_start) // 2 + 1
    return r, i


def _step(c: Config5, reverse: bool):
    hits = _matches(c, reverse)
    if not hits:
        return None
    if len(hits) > 1:
        raise RuleEngineError(
            f"{len(hits)} rule instances match {'backward' if reverse else 'forward'}: {hits}"
        )
    s, name = hits[0]
    _, lhs, rhs, _ = next(r for r in _RULES if r[0] == name)
    src, dst = (rhs, lhs) if reverse else (lhs, rhs)
    syms = list(c.symbols)
    syms[s - 1 : s + 2] = dst
    event = None
    if name == "1":
        r, i = _gate_slot(c.lattice, s if not reverse else s)
        event = GateEvent(step=-1, m=-1, round=r, position=i, forward=not reverse)
    return Config5(c.lattice, tuple(syms)), event


def forward_step5(c: Config5):
    """Unique successor configuration, or None at the final configuration."""
    return _step(c, reverse=False)


def backward_step5(c: Config5):
    """Unique predecessor configuration, or None at the initial configuration."""
    return _step(c, reverse=True)


@dataclass
class HistoryTrace:
    """T+1 configurations; events[t] is the gate fired on the t -> t+1 edge."""

    configs: list = field(default_factory=list)
    events: dict = field(default_factory=dict)

    @property
    def T(self) -> int:
        return len(self.configs) - 1

    def dump(self) -> str:
        return "\n".join(c.dump_line(t) for t, c in enumerate(self.configs)) + "\n"


def enumerate_history5(n: int, R: int) -> HistoryTrace:
    trace = HistoryTrace()
    c = initial_config5(n, R)
    trace.configs.append(c)
    m = 0
    while True:
        nxt = forward_step5(c)
        if nxt is None:
            break
        c, event = nxt
        if event is not None:
            m += 1
            trace.events[len(trace.configs) - 1] = replace(event, step=len(trace.configs) - 1, m=m)
        trace.configs.append(c)
    return trace


def step_count_formula5(n: int, R: int) -> int:
    """The closed-form transition count quoted for this machine."""
    return (R - 1) * (3 * n * n + n) + n + 1


# --- local Hamiltonian terms -------------------------------------------------


@dataclass(frozen=True)
class LocalTerm5:
    """One forward rewrite instance as a Hamiltonian term (h.c. implied).

    Represents -|rhs><lhs| placed at window (site, site+1, site+2), plus its
    Hermitian conjugate.  When the rewrite is rule 1, `slot` names the gate
    (round, position) whose 4x4 unitary dresses the two logical qubits.
    """

    site: int
    lhs: tuple[str, str, str]
    rhs: tuple[str, str, str]
    rule: str
    slot: tuple[int, int] | None = None
    unitary: object = None  # 4x4 ndarray for rule-1 terms when a circuit is given


def local_terms5(n: int, R: int, circuit=None) -> list[LocalTerm5]:
    lat = Lattice5(n, R)
    out = []
    for s in range(1, lat.L - 1):
        for name, lhs, rhs, bkey in _RULES:
            if lhs[0] in ODD_SYMBOLS and s % 2 == 0:
                continue
            if lhs[0] in EVEN_SYMBOLS and s % 2 == 1:
                continue
            if bkey is not None:
                sign, off = bkey
                if (sign == "+") != lat.boundary_after(s + off):
                    continue
            slot = _gate_slot(lat, s) if name == "1" else None
            if slot is not None and not (1 <= slot[0] <= R and 1 <= slot[1] <= n - 1):
                continue
            unitary = None
            if slot is not None:
                unitary = (
                    circuit.slot_matrix(*slot) if circuit is not None else np.eye(4)
                )
            out.append(
                LocalTerm5(site=s, lhs=lhs, rhs=rhs, rule=name, slot=slot, unitary=unitary)
            )
    return out
