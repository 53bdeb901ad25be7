"""Brute-force certification that the local terms act as the hopping matrix
on the span of dressed history states.

A dressed state is a classical symbol pattern together with the 2^n logical
register.  Local terms are applied directly to dressed states by window
matching; no full many-body vector is ever built.  Certification checks, for
every history index t, that H maps state t to -(state t-1) - (state t+1)
with the recorded gate unitaries on the register factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import eight_state as e8
from . import five_state as f5
from .circuit import Circuit
from .gates import QubitState, apply_unitary

QUBIT_TOL = 1e-12


@dataclass(frozen=True)
class DressedState:
    pattern: object  # Config5 or Config8
    qubits: QubitState


def _placeholder_rank5(cfg: f5.Config5, site: int) -> int:
    """1-based logical index of the placeholder at `site` (left-to-right rank)."""
    rank = 0
    for i, sym in enumerate(cfg.symbols, 1):
        if sym in (f5.Q, f5.G):
            rank += 1
        if i == site:
            return rank
    raise ValueError(f"site {site} out of range")


def apply_H5(terms: list[f5.LocalTerm5], s: DressedState) -> list[tuple[float, DressedState]]:
    """All -1-weighted images of `s` under the term list (h.c. included)."""
    cfg: f5.Config5 = s.pattern
    out = []
    for term in terms:
        window = cfg.symbols[term.site - 1 : term.site + 2]
        for src, dst, dagger in ((term.lhs, term.rhs, False), (term.rhs, term.lhs, True)):
            if window != src:
                continue
            syms = list(cfg.symbols)
            syms[term.site - 1 : term.site + 2] = dst
            qubits = s.qubits
            if term.unitary is not None:
                i = _placeholder_rank5(cfg, term.site)
                mat = term.unitary.conj().T if dagger else term.unitary
                qubits = QubitState(
                    qubits.n, apply_unitary(qubits.amps, mat, (i, i + 1), qubits.n)
                )
            out.append((-1.0, DressedState(f5.Config5(cfg.lattice, tuple(syms)), qubits)))
    return out


def apply_H8(terms: list[e8.LocalTerm8], s: DressedState) -> list[tuple[float, DressedState]]:
    cfg: e8.Config8 = s.pattern
    out = []
    for term in terms:
        for src, dst, dagger in ((term.pre, term.post, False), (term.post, term.pre, True)):
            ok, binding = e8._match_at(cfg, src, dst, term.cell)
            if not ok:
                continue
            new_cfg = e8._apply_at(cfg, dst, term.cell, binding)
            qubits = s.qubits
            if term.rule == "4a":
                pair = (
                    e8._cell_value(cfg, "d", term.cell),
                    e8._cell_value(cfg, "d+", term.cell),
                )
                ev = e8.GateEvent8(
                    step=-1, m=0, cell=term.cell, letter=binding, pair=pair,
                    forward=not dagger,
                )
                mat = ev.unitary()
                lq = ev.logical_qubits(cfg.layout)
                if mat is not None and lq is not None:
                    qubits = QubitState(
                        qubits.n, apply_unitary(qubits.amps, mat, lq, qubits.n)
                    )
            out.append((-1.0, DressedState(new_cfg, qubits)))
    return out


def _collect(images: list[tuple[float, DressedState]]) -> dict:
    """Sum amplitudes per pattern: pattern -> weighted amplitude vector."""
    acc: dict = {}
    for w, ds in images:
        vec = acc.setdefault(ds.pattern, np.zeros_like(ds.qubits.amps))
        acc[ds.pattern] = vec + w * ds.qubits.amps
    return acc


@dataclass
class CertReport:
    scheme: str
    lines: list[str] = field(default_factory=list)
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def text(self) -> str:
        verdict = "PASS" if self.passed else f"FAIL ({self.failures} states)"
        return "\n".join(self.lines + [f"overall: {verdict}"]) + "\n"


def _dressed_history(scheme: str, circuit: Circuit, initial: QubitState):
    """History configurations with the register state carried along each edge."""
    if scheme == "ham5":
        trace = f5.enumerate_history5(circuit.n, circuit.rounds)
        gate_of = lambda ev: circuit.slot_matrix(ev.round, ev.position)
        target_of = lambda ev: ev.qubits
    elif scheme == "ham8":
        trace = e8.enumerate_history8(circuit)
        gate_of = lambda ev: ev.unitary()
        target_of = lambda ev: ev.logical_qubits(trace.configs[0].layout)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    states = [DressedState(trace.configs[0], initial)]
    for t in range(trace.T):
        q = states[-1].qubits
        ev = trace.events.get(t)
        if ev is not None:
            mat, lq = gate_of(ev), target_of(ev)
            if mat is not None and lq is not None:
                q = QubitState(q.n, apply_unitary(q.amps, mat, lq, q.n))
        states.append(DressedState(trace.configs[t + 1], q))
    return states


def certify_subspace(scheme: str, circuit: Circuit, initial: QubitState | None = None) -> CertReport:
    """Check closure of the dressed history span under the local terms."""
    if initial is None:
        initial = QubitState.basis("0" * circuit.n)
    states = _dressed_history(scheme, circuit, initial)
    if scheme == "ham5":
        terms = f5.local_terms5(circuit.n, circuit.rounds, circuit)
        apply_H = lambda s: apply_H5(terms, s)
    else:
        terms = e8.local_terms8(circuit)
        apply_H = lambda s: apply_H8(terms, s)
    report = CertReport(scheme)
    T = len(states) - 1
    for t, s in enumerate(states):
        got = _collect(apply_H(s))
        want: dict = {}
        for nb in (t - 1, t + 1):
            if 0 <= nb <= T:
                want[states[nb].pattern] = -1.0 * states[nb].qubits.amps
        neighbor_of = {states[nb].pattern: nb for nb in (t - 1, t + 1) if 0 <= nb <= T}
        errs = []
        for pat, vec in got.items():
            if pat not in want:
                errs.append("unexpected output pattern")
            elif np.max(np.abs(vec - want[pat])) > QUBIT_TOL:
                errs.append(f"register mismatch vs t'={neighbor_of[pat]}")
        for pat in want:
            if pat not in got:
                errs.append("missing neighbor pattern")
        if errs:
            report.failures += 1
            report.lines.append(f"t={t} FAIL: {'; '.join(errs)}")
        else:
            report.lines.append(f"t={t} PASS")
    return report
