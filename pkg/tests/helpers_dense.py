"""Small dense-matrix oracle shared by test modules.

Everything here is built directly from 2x2 matrices and numpy.kron so the
checks are independent of the package's own simulators.  Qubit 0 is the
most significant tensor factor (leftmost letter of a Pauli string).
"""

from __future__ import annotations

import numpy as np

from adaptstab.pauli import PauliOperator

I2 = np.eye(2, dtype=complex)
XM = np.array([[0, 1], [1, 0]], dtype=complex)
YM = np.array([[0, -1j], [1j, 0]], dtype=complex)
ZM = np.array([[1, 0], [0, -1]], dtype=complex)
HM = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
SM = np.array([[1, 0], [0, 1j]], dtype=complex)

_LETTERS = {"I": I2, "X": XM, "Y": YM, "Z": ZM}


def dense_pauli(p: PauliOperator) -> np.ndarray:
    m = np.eye(1, dtype=complex)
    for q in range(p.n):
        site = np.eye(2, dtype=complex)
        if (p.x >> q) & 1:
            site = site @ XM
        if (p.z >> q) & 1:
            site = site @ ZM
        m = np.kron(m, site)
    return p.phase * m


def embed_unitary(u: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Expand a gate on `qubits` to the full 2^n space by permuting axes."""
    k = len(qubits)
    rest = [q for q in range(n) if q not in qubits]
    order = list(qubits) + rest
    op = np.kron(u, np.eye(1 << (n - k)))
    op = op.reshape([2] * (2 * n))
    perm = order + [q + n for q in order]
    inv = np.argsort(perm)
    return op.transpose(inv).reshape(1 << n, 1 << n)


def gate_unitary(name: str, qubits: tuple[int, ...], n: int, pauli: str | None = None) -> np.ndarray:
    if name in ("H", "S", "SDG", "X", "Y", "Z"):
        u = {
            "H": HM,
            "S": SM,
            "SDG": SM.conj().T,
            "X": XM,
            "Y": YM,
            "Z": ZM,
        }[name]
        return embed_unitary(u, qubits, n)
    if name == "SWAP":
        u = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
        return embed_unitary(u, qubits, n)
    if name in ("CNOT", "CZ", "CP"):
        letter = {"CNOT": "X", "CZ": "Z", "CP": pauli}[name]
        targets = qubits[1:]
        p = _LETTERS[letter]
        tgt = np.eye(1, dtype=complex)
        for _ in targets:
            tgt = np.kron(tgt, p)
        dim = 1 << len(targets)
        u = np.block(
            [[np.eye(dim, dtype=complex), np.zeros((dim, dim))], [np.zeros((dim, dim)), tgt]]
        )
        return embed_unitary(u, qubits, n)
    raise ValueError(name)


def dense_state_from_ops(n: int, ops: list[tuple]) -> np.ndarray:
    """Apply (name, qubits[, pauli]) tuples to |0..0> with dense matrices."""
    v = np.zeros(1 << n, dtype=complex)
    v[0] = 1.0
    for op in ops:
        name, qubits = op[0], tuple(op[1])
        pauli = op[2] if len(op) > 2 else None
        v = gate_unitary(name, qubits, n, pauli) @ v
    return v
