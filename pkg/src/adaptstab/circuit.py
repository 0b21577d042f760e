"""Adaptive-circuit IR: validation, depth, simulation, lightcones.

A circuit is a list of layers; each layer holds gates and measurements
acting on pairwise-disjoint qubits.  Gates may carry a classical condition
(parity of earlier measurement bits).  Measured qubits are dead for the
rest of the circuit and are factored out of the final tableau.

Depth counts every layer containing at least one non-merged operation;
layers holding only ``merged`` bookkeeping gates (Hadamards absorbed into
neighboring controlled-Pauli layers) are skipped, so reported depths match
hand counts for syndrome-extraction fragments.

Lightcones are transitive closures of gate-support contact only; classical
feedforward wires are deliberately not traced (operator spreading through
unitaries is what the g function bounds).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .pauli import single_site
from .tableau import (
    StabilizerTableau,
    apply_gate,
    factor_out_qubit,
    measure_pauli,
    zero_state,
)

__all__ = [
    "Condition",
    "Gate",
    "Measure",
    "AdaptiveCircuit",
    "Geometry",
    "ValidationReport",
    "validate",
    "depth",
    "ancilla_count",
    "simulate",
    "forward_lightcone",
    "backward_lightcone",
    "g_value",
    "ghz_adaptive",
    "fanout_depth",
    "to_json",
    "from_json",
]

GATE_NAMES = ("H", "S", "X", "Y", "Z", "CNOT", "CZ", "SWAP", "CP")


@dataclass(frozen=True)
class Condition:
    """Fire the gate when XOR of the classical bits equals `xor`."""

    bits: tuple[int, ...]
    xor: int = 1


@dataclass(frozen=True)
class Gate:
    op: str
    qubits: tuple[int, ...]
    pauli: str | None = None
    cond: Condition | None = None
    merged: bool = False

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))


@dataclass(frozen=True)
class Measure:
    qubit: int
    cbit: int


@dataclass
class AdaptiveCircuit:
    m: int
    cbits: int = 0
    layers: list[list[Gate | Measure]] = field(default_factory=list)

    def add_layer(self, ops: Iterable[Gate | Measure]) -> None:
        self.layers.append(list(ops))


@dataclass(frozen=True)
class Geometry:
    """all-to-all, or an r-dimensional grid with given side lengths."""

    kind: str = "all"
    r: int = 0
    sides: tuple[int, ...] | None = None

    @staticmethod
    def all_to_all() -> "Geometry":
        return Geometry("all")

    @staticmethod
    def grid(r: int, sides: Sequence[int] | None = None) -> "Geometry":
        if r < 1:
            raise ValueError("grid dimension must be >= 1")
        return Geometry("grid", r, None if sides is None else tuple(sides))

    def _sides_for(self, m: int) -> tuple[int, ...]:
        if self.sides is not None:
            if math.prod(self.sides) < m:
                raise ValueError("grid sides too small for qubit count")
            return self.sides
        side = 1
        while side**self.r < m:
            side += 1
        return (side,) * self.r

    def coords(self, q: int, m: int) -> tuple[int, ...]:
        sides = self._sides_for(m)
        out = []
        for s in reversed(sides):
            out.append(q % s)
            q //= s
        return tuple(reversed(out))

    def gate_fits(self, qubits: Sequence[int], K: int, m: int) -> bool:
        """Grid gates must fit in a box of side K (span <= K-1 per axis)."""
        if self.kind == "all":
            return True
        pts = [self.coords(q, m) for q in qubits]
        for axis in range(self.r):
            vals = [p[axis] for p in pts]
            if max(vals) - min(vals) > K - 1:
                return False
        return True


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str]


def validate(c: AdaptiveCircuit, K: int, geometry: Geometry | None = None) -> ValidationReport:
    geometry = geometry or Geometry.all_to_all()
    bad: list[str] = []
    if c.m < 1:
        bad.append("circuit has no qubits")
    written: set[int] = set()
    dead: dict[int, int] = {}
    cbit_writers: set[int] = set()
    for li, layer in enumerate(c.layers):
        if not layer:
            bad.append(f"layer {li}: empty layer")
        used: set[int] = set()
        newly_written: set[int] = set()
        for op in layer:
            if isinstance(op, Measure):
                qs: tuple[int, ...] = (op.qubit,)
                if not 0 <= op.cbit < c.cbits:
                    bad.append(f"layer {li}: classical bit {op.cbit} out of range")
                elif op.cbit in cbit_writers:
                    bad.append(f"layer {li}: classical bit {op.cbit} written twice")
                else:
                    cbit_writers.add(op.cbit)
                    newly_written.add(op.cbit)
            else:
                qs = op.qubits
                if op.op not in GATE_NAMES:
                    bad.append(f"layer {li}: unknown gate {op.op!r}")
                    continue
                if op.op == "CP" and op.pauli not in ("X", "Y", "Z"):
                    bad.append(f"layer {li}: CP gate needs pauli X/Y/Z")
                if op.op in ("H", "S", "X", "Y", "Z") and len(qs) != 1:
                    bad.append(f"layer {li}: {op.op} takes one qubit")
                if op.op in ("CZ", "SWAP", "CP") and len(qs) != 2:
                    bad.append(f"layer {li}: {op.op} takes two qubits")
                if op.op == "CNOT" and len(qs) < 2:
                    bad.append(f"layer {li}: CNOT takes a control and >=1 target")
                if len(qs) > K:
                    bad.append(f"layer {li}: gate {op.op} fan-in {len(qs)} exceeds K={K}")
                if not geometry.gate_fits(qs, K, c.m):
                    bad.append(f"layer {li}: gate {op.op} on {qs} violates grid locality")
                if op.cond is not None:
                    if op.cond.xor not in (0, 1):
                        bad.append(f"layer {li}: condition offset must be 0/1")
                    for b in op.cond.bits:
                        if not 0 <= b < c.cbits:
                            bad.append(f"layer {li}: condition bit {b} out of range")
                        elif b not in written:
                            bad.append(
                                f"layer {li}: condition bit {b} not written in an earlier layer"
                            )
            if len(set(qs)) != len(qs):
                bad.append(f"layer {li}: repeated qubit within one operation")
            for q in qs:
                if not 0 <= q < c.m:
                    bad.append(f"layer {li}: qubit {q} out of range")
                elif q in dead:
                    bad.append(
                        f"layer {li}: qubit {q} used after measurement in layer {dead[q]}"
                    )
            overlap = used & set(qs)
            if overlap:
                bad.append(f"layer {li}: qubits {sorted(overlap)} shared by two operations")
            used |= set(qs)
        for op in layer:
            if isinstance(op, Measure) and op.qubit not in dead:
                dead[op.qubit] = li
        written |= newly_written
    return ValidationReport(not bad, bad)


def depth(c: AdaptiveCircuit) -> int:
    count = 0
    for layer in c.layers:
        live = any(not (isinstance(op, Gate) and op.merged) for op in layer)
        if live:
            count += 1
    return count


def ancilla_count(c: AdaptiveCircuit, n_target: int) -> int:
    if n_target > c.m:
        raise ValueError("target register larger than the circuit")
    return c.m - n_target


def _fire(cond: Condition | None, record: list[int | None]) -> bool:
    if cond is None:
        return True
    acc = 0
    for b in cond.bits:
        v = record[b]
        if v is None:
            raise ValueError(f"condition reads unwritten classical bit {b}")
        acc ^= v
    return acc == cond.xor


def simulate(
    c: AdaptiveCircuit,
    *,
    seed: int | None = None,
    forced: Sequence[int] | None = None,
    initial: StabilizerTableau | None = None,
) -> tuple[StabilizerTableau, list[int | None]]:
    """Run the circuit, returning (tableau on surviving qubits, outcome bits).

    Outcomes come from `forced` (a 0/1 list indexed by classical bit) when
    given, otherwise from a seeded RNG.  Forcing an impossible deterministic
    outcome raises ContradictionError.
    """
    t = initial.copy() if initial is not None else zero_state(c.m)
    if t.n != c.m:
        raise ValueError("initial tableau size mismatch")
    rng = np.random.default_rng(seed)
    record: list[int | None] = [None] * c.cbits
    measured: list[int] = []
    for layer in c.layers:
        for op in layer:
            if isinstance(op, Measure):
                p = single_site(c.m, op.qubit, "Z")
                force_sign = None
                if forced is not None:
                    force_sign = 1 if forced[op.cbit] == 0 else -1
                outcome, _, _ = measure_pauli(t, p, forced=force_sign, rng=rng)
                record[op.cbit] = 0 if outcome == 1 else 1
                measured.append(op.qubit)
            else:
                if _fire(op.cond, record):
                    apply_gate(t, op.op, op.qubits, pauli=op.pauli)
    for q in sorted(measured, reverse=True):
        t = factor_out_qubit(t, q)
    return t, record


def _op_qubits(op: Gate | Measure) -> tuple[int, ...]:
    return (op.qubit,) if isinstance(op, Measure) else op.qubits


def forward_lightcone(c: AdaptiveCircuit, qubits: Iterable[int], from_layer: int = 0) -> set[int]:
    cone = set(qubits)
    for layer in c.layers[from_layer:]:
        for op in layer:
            qs = _op_qubits(op)
            if cone.intersection(qs):
                cone.update(qs)
    return cone


def backward_lightcone(c: AdaptiveCircuit, qubits: Iterable[int]) -> set[int]:
    cone = set(qubits)
    for layer in reversed(c.layers):
        for op in layer:
            qs = _op_qubits(op)
            if cone.intersection(qs):
                cone.update(qs)
    return cone


def g_value(K: int, D: int, geometry: Geometry | None = None) -> int:
    """Worst-case lightcone size of one qubit through D layers of fan-in K."""
    if K < 2 or D < 0:
        raise ValueError("need K >= 2 and D >= 0")
    geometry = geometry or Geometry.all_to_all()
    if geometry.kind == "all":
        return K**D
    return (2 * (K - 1) * D + 1) ** geometry.r


def fanout_depth(block: int, K: int) -> int:
    """Layers needed to copy one filled qubit across a block, fan-in K."""
    d = 0
    filled = 1
    while filled < block:
        filled *= K
        d += 1
    return d


def ghz_adaptive(n: int, a: int, K: int) -> AdaptiveCircuit:
    """Two-phase GHZ_n preparation: adaptive backbone fusion + fan-out trees.

    The n target qubits are split into ceil(n/a) blocks of size <= a.  Block
    leaders are fused into GHZ by measuring neighbor Z-parities on
    ceil(n/a)-1 ancillas (chain fusion) and applying prefix-parity X
    corrections; each leader is then copied across its block by a CNOT tree
    of depth ceil(log_K a).  Ancillas occupy indices n..m-1; the chain order
    interleaves ancilla i between leaders i and i+1.
    """
    if not 1 <= a <= n:
        raise ValueError("need 1 <= a <= n")
    if K < 2:
        raise ValueError("need K >= 2")
    nb = -(-n // a)
    m = n + nb - 1
    blocks = [list(range(i * a, min((i + 1) * a, n))) for i in range(nb)]
    leaders = [b[0] for b in blocks]
    anc = list(range(n, m))
    c = AdaptiveCircuit(m, cbits=nb - 1)

    c.add_layer(Gate("H", (q,)) for q in leaders)
    if nb > 1:
        c.add_layer(Gate("CNOT", (leaders[i], anc[i])) for i in range(nb - 1))
        c.add_layer(Gate("CNOT", (leaders[i + 1], anc[i])) for i in range(nb - 1))
        c.add_layer(Measure(anc[i], i) for i in range(nb - 1))
        c.add_layer(
            Gate("X", (leaders[j],), cond=Condition(tuple(range(j)), 1))
            for j in range(1, nb)
        )
    filled = [b[:1] for b in blocks]
    pending = [b[1:] for b in blocks]
    while any(pending):
        layer: list[Gate] = []
        for i in range(nb):
            nxt_filled = []
            for src in filled[i]:
                grab, pending[i] = pending[i][: K - 1], pending[i][K - 1 :]
                if grab:
                    layer.append(Gate("CNOT", (src, *grab)))
                    nxt_filled += grab
            filled[i] += nxt_filled
        c.add_layer(layer)
    return c


# -- JSON interchange ----------------------------------------------------------


def _op_to_dict(op: Gate | Measure) -> dict:
    if isinstance(op, Measure):
        return {"op": "MZ", "qubit": op.qubit, "cbit": op.cbit}
    d: dict = {"op": op.op, "qubits": list(op.qubits)}
    if op.pauli is not None:
        d["pauli"] = op.pauli
    if op.cond is not None:
        d["cond"] = {"bits": list(op.cond.bits), "xor": op.cond.xor}
    if op.merged:
        d["merged"] = True
    return d


def _op_from_dict(d: dict) -> Gate | Measure:
    if d["op"] == "MZ":
        return Measure(d["qubit"], d["cbit"])
    cond = None
    if "cond" in d:
        cond = Condition(tuple(d["cond"]["bits"]), d["cond"]["xor"])
    return Gate(d["op"], tuple(d["qubits"]), d.get("pauli"), cond, d.get("merged", False))


def to_json(c: AdaptiveCircuit, indent: int | None = None) -> str:
    payload = {
        "m": c.m,
        "cbits": c.cbits,
        "layers": [[_op_to_dict(op) for op in layer] for layer in c.layers],
    }
    return json.dumps(payload, indent=indent)


def from_json(text: str) -> AdaptiveCircuit:
    d = json.loads(text)
    return AdaptiveCircuit(
        d["m"], d["cbits"], [[_op_from_dict(o) for o in layer] for layer in d["layers"]]
    )
