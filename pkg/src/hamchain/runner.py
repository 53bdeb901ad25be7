"""Measurement protocol: pad with identity rounds, evolve for a random time,
sample a history index, accept late indices, and read out the register.

Sampling uses the factored representation: the history index distribution
|c_t(tau)|^2 comes from the walk module, and the accepted readout comes from
the gate-event prefix product at the sampled index.  This is exact because
distinct configurations are orthogonal basis patterns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from io import StringIO

import numpy as np
from scipy.fft import dst

from . import eight_state as e8
from . import five_state as f5
from . import walk
from .circuit import Circuit
from .gates import QubitState, apply_unitary

GENERATOR_NAME = "numpy-default_rng-PCG64"

SCHEMES = ("ham5", "ham8")


class NotAHistoryStateError(KeyError):
    """Pattern is not one of the enumerated history configurations."""


@dataclass(frozen=True)
class RunPlan:
    circuit: Circuit
    scheme: str
    q: int = 6
    tau0: float | None = None  # None: 10 T log(T+2) after padding
    shots: int = 1000
    seed: int = 0
    initial: str | None = None  # bit string; None: all zeros

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")
        if self.shots < 1 or self.q < 2:
            raise ValueError("need shots >= 1 and q >= 2")
        if self.tau0 is not None and not self.tau0 > 0:
            raise ValueError("need tau0 > 0")
        if self.initial is not None and (
            len(self.initial) != self.circuit.n or set(self.initial) - {"0", "1"}
        ):
            raise ValueError("initial must be an n-qubit bit string")


@dataclass
class RunReport:
    plan: RunPlan
    T: int
    rounds_total: int
    tau0: float
    threshold: int  # smallest accepted history index
    taus: np.ndarray = field(repr=False, default=None)
    steps: np.ndarray = field(repr=False, default=None)
    accepted: np.ndarray = field(repr=False, default=None)
    readouts: list = field(repr=False, default=None)  # bit string or None per shot

    @property
    def acceptance_rate(self) -> float:
        return float(np.mean(self.accepted))

    def histogram(self) -> dict[str, int]:
        hist: dict[str, int] = {}
        for r in self.readouts:
            if r is not None:
                hist[r] = hist.get(r, 0) + 1
        return hist

    def serialize(self) -> str:
        p = self.plan
        out = StringIO()
        out.write(f"scheme {p.scheme}\n")
        out.write(f"qubits {p.circuit.n}\n")
        out.write(f"rounds_real {p.circuit.rounds}\n")
        out.write(f"rounds_total {self.rounds_total}\n")
        out.write(f"q {p.q}\n")
        out.write(f"tau0 {self.tau0:.12g}\n")
        out.write(f"shots {p.shots}\n")
        out.write(f"seed {p.seed}\n")
        out.write(f"generator {GENERATOR_NAME}\n")
        out.write(f"initial {p.initial or '0' * p.circuit.n}\n")
        out.write(f"T {self.T}\n")
        out.write(f"threshold {self.threshold}\n")
        out.write("shot_records tau t accepted readout\n")
        for tau, t, acc, r in zip(self.taus, self.steps, self.accepted, self.readouts):
            out.write(f"{tau:.12g} {t} {int(acc)} {r if r is not None else '-'}\n")
        out.write("histogram\n")
        for key in sorted(self.histogram()):
            out.write(f"{key} {self.histogram()[key]}\n")
        out.write(f"acceptance_rate {self.acceptance_rate:.12g}\n")
        return out.getvalue()


def padded_history(plan: RunPlan):
    """(trace, rounds_total, prefix register states) for the padded machine."""
    n, r_real = plan.circuit.n, plan.circuit.rounds
    r_total = walk.padding_plan(n, r_real, plan.q, plan.scheme)
    padded = Circuit(n, r_total, dict(plan.circuit.gates))
    initial = QubitState.basis(plan.initial or "0" * n)
    if plan.scheme == "ham5":
        trace = f5.enumerate_history5(n, r_total)
        gate_of = lambda ev: padded.slot_matrix(ev.round, ev.position)
        target_of = lambda ev: ev.qubits
        real_fired = lambda ev: ev.round <= r_real
    else:
        trace = e8.enumerate_history8(padded)
        layout = trace.configs[0].layout
        gate_of = lambda ev: ev.unitary()
        target_of = lambda ev: ev.logical_qubits(layout)
        n_real = r_real * (n - 1)
        real_fired = lambda ev: 0 < ev.m <= n_real
    prefixes = [initial]
    real_left = sum(1 for ev in trace.events.values() if real_fired(ev))
    remaining = [real_left]
    for t in range(trace.T):
        q = prefixes[-1]
        ev = trace.events.get(t)
        if ev is not None:
            mat, lq = gate_of(ev), target_of(ev)
            if mat is not None and lq is not None:
                q = QubitState(q.n, apply_unitary(q.amps, mat, lq, q.n))
            if real_fired(ev):
                real_left -= 1
        prefixes.append(q)
        remaining.append(real_left)
    return trace, r_total, prefixes, remaining


def run(plan: RunPlan) -> RunReport:
    trace, r_total, prefixes, remaining = padded_history(plan)
    T = trace.T
    tau0 = plan.tau0 if plan.tau0 is not None else walk.default_tau0(T)
    threshold = walk.tail_threshold(T, plan.q)
    n = plan.circuit.n

    rng = np.random.default_rng(plan.seed)
    taus = rng.uniform(0.0, tau0, plan.shots)
    u_step = rng.random(plan.shots)
    u_read = rng.random(plan.shots)

    # The path-graph eigenbasis is a discrete sine basis, so the propagator
    # column c_t(tau) is a type-I DST of the phased spectrum: O(T log T) per
    # shot with O(T) memory, instead of the dense (T+1)^2 eigenvector matrix.
    k = np.arange(1, T + 2)
    lam = -2.0 * np.cos(k * np.pi / (T + 2))
    sin0 = np.sin(k * np.pi / (T + 2))

    steps = np.empty(plan.shots, dtype=int)
    accepted = np.zeros(plan.shots, dtype=bool)
    readouts: list = [None] * plan.shots
    for s in range(plan.shots):
        amps = dst(np.exp(-1j * lam * taus[s]) * sin0, type=1) / (T + 2)
        probs = np.abs(amps) ** 2
        cdf = np.cumsum(probs / probs.sum())
        t = int(np.searchsorted(cdf, u_step[s], side="right"))
        t = min(t, T)
        steps[s] = t
        if t >= threshold:
            if remaining[t] != 0:
                raise AssertionError(
                    f"accepted index {t} before all real gates fired; padding bug"
                )
            accepted[s] = True
            pq = np.abs(prefixes[t].amps) ** 2
            pq = pq / pq.sum()
            x = int(np.searchsorted(np.cumsum(pq), u_read[s], side="right"))
            readouts[s] = format(min(x, 2**n - 1), f"0{n}b")
    return RunReport(
        plan=plan, T=T, rounds_total=r_total, tau0=float(tau0),
        threshold=threshold, taus=taus, steps=steps, accepted=accepted,
        readouts=readouts,
    )


def infer_step(trace, pattern) -> int:
    """Index of `pattern` within the enumerated history."""
    for t, cfg in enumerate(trace.configs):
        if cfg == pattern:
            return t
    raise NotAHistoryStateError("pattern is not a history configuration")
