"""Dense statevector simulation of the two QAO-Ansatz gate families.

A state on ``m`` qubits is a complex128 array of length ``2**m``. Basis index
``b`` encodes local node ``j`` in bit ``j`` (bit 0 least significant), and
bitstrings are rendered node-0-first, so index 1 on two qubits is ``"10"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import CapacityError, ParameterError

MAX_QUBITS = 24
DENSE_ORACLE_CAP = 6


@dataclass(frozen=True)
class Counts:
    counts: dict[str, int]
    shots: int

    def __getitem__(self, key):
        return self.counts[key]

    def __len__(self):
        return len(self.counts)


def num_qubits(psi: np.ndarray) -> int:
    return int(psi.shape[0]).bit_length() - 1


def bitstring(index: int, m: int) -> str:
    return "".join("1" if index >> j & 1 else "0" for j in range(m))


def parse_bitstring(bits: str) -> int:
    return sum(1 << j for j, c in enumerate(bits) if c == "1")


@lru_cache(maxsize=32)
def hamming_weights(m: int) -> np.ndarray:
    idx = np.arange(1 << m)
    hw = np.zeros(1 << m, dtype=np.int64)
    for j in range(m):
        hw += (idx >> j) & 1
    hw = hw.astype(np.uint8)
    hw.flags.writeable = False
    return hw


def init_state(m: int, clamped_ones: Iterable[int] = ()) -> np.ndarray:
    if m > MAX_QUBITS:
        raise CapacityError(f"{m} qubits exceeds the cap of {MAX_QUBITS}")
    if m < 0:
        raise ParameterError("qubit count must be non-negative")
    index = 0
    for j in clamped_ones:
        if not 0 <= j < m:
            raise ParameterError(f"clamped qubit {j} out of range for m={m}")
        index |= 1 << j
    psi = np.zeros(1 << m, dtype=np.complex128)
    psi[index] = 1.0
    return psi


def apply_phase_separator(psi: np.ndarray, gamma: float) -> np.ndarray:
    """Return ``exp(i*gamma*H) psi`` with ``H`` the Hamming-weight operator."""
    return psi * np.exp(1j * gamma * hamming_weights(num_qubits(psi)))


@lru_cache(maxsize=4096)
def mixer_pairs(m: int, target: int, controls: frozenset[int]) -> tuple[np.ndarray, np.ndarray]:
    """Basis-index pairs ``(b, b | 1<<target)`` whose control bits are all 0.

    Only these pairs are touched by a partial mixer; ``b`` has the target bit 0.
    """
    if not 0 <= target < m:
        raise ParameterError(f"target {target} out of range for m={m}")
    if target in controls:
        raise ParameterError(f"target {target} cannot also be a control")
    mask = 1 << target
    for c in controls:
        if not 0 <= c < m:
            raise ParameterError(f"control {c} out of range for m={m}")
        mask |= 1 << c
    idx = np.arange(1 << m)
    low = idx[(idx & mask) == 0]
    high = low | (1 << target)
    low.flags.writeable = False
    high.flags.writeable = False
    return low, high


def rotate_pairs(psi: np.ndarray, low: np.ndarray, high: np.ndarray, beta: float) -> None:
    """In place: ``exp(-i*beta*X)`` on every (low, high) amplitude pair."""
    c, s = np.cos(beta), -1j * np.sin(beta)
    a = psi[low]
    b = psi[high]
    psi[low] = c * a + s * b
    psi[high] = s * a + c * b


def apply_partial_mixer(psi: np.ndarray, target: int, controls: Iterable[int], beta: float) -> np.ndarray:
    """Rotate ``target`` about X by ``beta`` iff every control qubit is |0>."""
    low, high = mixer_pairs(num_qubits(psi), target, frozenset(controls))
    out = psi.copy()
    rotate_pairs(out, low, high, beta)
    return out


def probabilities(psi: np.ndarray) -> np.ndarray:
    return psi.real**2 + psi.imag**2


def expectation_hamming(psi: np.ndarray) -> float:
    return float(probabilities(psi) @ hamming_weights(num_qubits(psi)))


def sample(psi: np.ndarray, shots: int, rng: np.random.Generator) -> Counts:
    if shots < 1:
        raise ParameterError("shots must be >= 1")
    m = num_qubits(psi)
    p = probabilities(psi)
    p = p / p.sum()
    draws = rng.choice(p.size, size=shots, p=p)
    values, freq = np.unique(draws, return_counts=True)
    return Counts({bitstring(int(v), m): int(f) for v, f in zip(values, freq)}, shots)


def dense_mixer_matrix(m: int, target: int, controls: Iterable[int], beta: float) -> np.ndarray:
    """Explicit ``I + (exp(-i*beta*X_t) - I) * P0(controls)``, built entry by entry.

    Test oracle only; it shares no code with :func:`apply_partial_mixer`.
    """
    if m > DENSE_ORACLE_CAP:
        raise CapacityError(f"dense oracle is capped at {DENSE_ORACLE_CAP} qubits")
    controls = set(controls)
    dim = 1 << m
    rot = np.array([[np.cos(beta), -1j * np.sin(beta)], [-1j * np.sin(beta), np.cos(beta)]])
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for row in range(dim):
        for col in range(dim):
            # column and row must agree on every qubit except the target
            others_equal = all(
                (row >> q & 1) == (col >> q & 1) for q in range(m) if q != target
            )
            if not others_equal:
                continue
            projector = 1.0 if all(col >> c & 1 == 0 for c in controls) else 0.0
            identity = 1.0 if row == col else 0.0
            delta = rot[row >> target & 1, col >> target & 1] - identity
            mat[row, col] = identity + delta * projector
    return mat
