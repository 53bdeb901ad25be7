"""Continuous-time dynamics on the history line.

The effective Hamiltonian on the T+1 history states is the path-graph
hopping matrix with -1 couplings.  Its eigensystem is closed-form:

    lambda_k = -2 cos(k pi / (T+2)),
    v_k(t)   = sqrt(2/(T+2)) sin(k pi (t+1) / (T+2)),   k = 1..T+1,

so both the propagator and its time average over [0, tau0] are evaluated
exactly (the spectrum is nondegenerate, so only the k = l diagonal needs no
oscillatory factor).  Couplings have unit magnitude; tau is dimensionless.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from io import StringIO

import numpy as np


@dataclass(frozen=True)
class WalkSpec:
    T: int
    q: int
    tau0: float

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("need T >= 1")
        if self.q < 2:
            raise ValueError("need q >= 2")
        if not self.tau0 > 0:
            raise ValueError("need tau0 > 0")


@dataclass(frozen=True)
class WalkAmplitudes:
    tau: float
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex)
        object.__setattr__(self, "amps", a)
        norm = float(np.sum(np.abs(a) ** 2))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"walk amplitudes not normalized: {norm}")

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def hopping_matrix(T: int) -> np.ndarray:
    """(T+1) x (T+1) path-graph matrix with -1 on the two off-diagonals."""
    h = np.zeros((T + 1, T + 1))
    idx = np.arange(T)
    h[idx, idx + 1] = -1.0
    h[idx + 1, idx] = -1.0
    return h


def eigensystem(T: int) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form (eigenvalues, eigenvectors[t, k]) of hopping_matrix(T)."""
    k = np.arange(1, T + 2)
    lam = -2.0 * np.cos(k * np.pi / (T + 2))
    t = np.arange(T + 1)
    vecs = np.sqrt(2.0 / (T + 2)) * np.sin(np.outer(t + 1, k) * np.pi / (T + 2))
    return lam, vecs


def evolve(T: int, tau: float) -> WalkAmplitudes:
    """Amplitudes c_t(tau) starting from history index 0."""
    lam, v = eigensystem(T)
    amps = v @ (np.exp(-1j * lam * tau) * v[0, :])
    return WalkAmplitudes(tau, amps)


def avg_prob(T: int, m: int, tau0: float) -> float:
    """Time average of |c_m(tau)|^2 over tau uniform on [0, tau0], exactly.

    |c_m|^2 = sum_{k,l} e^{-i(lam_k - lam_l) tau} v_k(m) v_k(0) v_l(m) v_l(0);
    averaging each cross term gives sin(d tau0)/(d tau0) with d = lam_k - lam_l.
    """
    if not 0 <= m <= T:
        raise ValueError(f"m={m} outside 0..{T}")
    lam, v = eigensystem(T)
    w = v[m, :] * v[0, :]
    d = lam[:, None] - lam[None, :]
    avg = np.sinc(d * tau0 / np.pi)  # np.sinc(x) = sin(pi x)/(pi x); 1 at d=0
    return float(w @ avg @ w)


def avg_prob_all(T: int, tau0: float) -> np.ndarray:
    lam, v = eigensystem(T)
    d = lam[:, None] - lam[None, :]
    avg = np.sinc(d * tau0 / np.pi)
    w = v * v[0, :]  # w[m, k] = v_k(m) v_k(0)
    return np.einsum("mk,kl,ml->m", w, avg, w)


def avg_prob_limit(T: int, m: int) -> float:
    """tau0 -> infinity limit: sum_k v_k(m)^2 v_k(0)^2."""
    _, v = eigensystem(T)
    return float(np.sum(v[m, :] ** 2 * v[0, :] ** 2))


def tail_threshold(T: int, q: int) -> int:
    """Smallest accepted index: m > T/q means m >= floor(T/q) + 1."""
    return T // q + 1


def tail_prob(T: int, q: int, tau0: float) -> float:
    """Time-averaged probability of landing at m > T/q."""
    WalkSpec(T, q, tau0)
    probs = avg_prob_all(T, tau0)
    return float(np.sum(probs[tail_threshold(T, q) :]))


def tail_prob_limit(T: int, q: int) -> float:
    _, v = eigensystem(T)
    m0 = tail_threshold(T, q)
    return float(np.sum((v[m0:, :] ** 2) @ (v[0, :] ** 2)))


def default_tau0(T: int) -> float:
    """Averaging horizon growing as T log T."""
    return 10.0 * T * np.log(T + 2)


def padding_plan(n: int, r_real: int, q: int, scheme: str) -> int:
    """Smallest round count R >= r_real such that the last gate of the first
    r_real rounds fires no later than step floor(T/q) of the padded history."""
    from . import eight_state, five_state
    from .circuit import Circuit

    if scheme not in ("ham5", "ham8"):
        raise ValueError(f"unknown scheme {scheme!r}")
    r_total = r_real
    while True:
        if scheme == "ham5":
            tr = five_state.enumerate_history5(n, r_total)
            last_real = max(
                (ev.step for ev in tr.events.values() if ev.round <= r_real), default=0
            )
        else:
            tr = eight_state.enumerate_history8(Circuit(n, r_total))
            n_real = r_real * (n - 1)  # logical firings covering the real rounds
            last_real = max(
                (ev.step for ev in tr.events.values() if 0 < ev.m <= n_real), default=0
            )
        if last_real <= tr.T // q:
            return r_total
        r_total += 1


# --- CSV emitters -------------------------------------------------------------


def probability_table_csv(T: int, taus) -> str:
    out = StringIO()
    out.write("tau,m,p\n")
    for tau in taus:
        probs = evolve(T, tau).probabilities()
        for m, p in enumerate(probs):
            out.write(f"{tau:.12g},{m},{p:.12g}\n")
    return out.getvalue()


def averaged_table_csv(T: int, tau0: float) -> str:
    out = StringIO()
    out.write("m,avg_p\n")
    for m, p in enumerate(avg_prob_all(T, tau0)):
        out.write(f"{m},{p:.12g}\n")
    return out.getvalue()
