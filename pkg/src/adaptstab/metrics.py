"""State-complexity indicators: generator weights, correlations, anti-shallowness.

Weight machinery works on tableaux (group enumeration + matroid greedy, with
an independent rank-sweep oracle).  Correlation machinery works on dense
states and ships two estimators for the operator-norm maximization:

* ``pauli-enum`` — exact maximization over Pauli strings on the chosen
  supports.  Deterministic; exact for the state families shipped here.
* ``alternating-sign`` — sign-operator ascent on the connected-correlation
  tensor with random restarts.  Monotone per iteration, and never reported
  below the Pauli value because the Pauli maximizer seeds one restart.

Both are lower bounds on the true supremum over norm-1 observables; reports
carry the method label.  All anti-shallowness logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .densesim import StateVector, fidelity, from_tableau, pauli_matrix
from .errors import ResourceGuardError
from .pauli import PauliOperator, format_pauli
from .tableau import (
    StabilizerTableau,
    conjugate_pauli,
    restricted_group_elements,
)

__all__ = [
    "WeightVector",
    "CorrelationReport",
    "group_elements",
    "min_weight_generators",
    "stabilizer_weight",
    "weight_vector_oracle",
    "pauli_correlation_strength",
    "pauli_correlation_range",
    "correlation_strength_w",
    "correlation_range_w",
    "global_correlation",
    "global_correlation_reports",
    "anti_shallowness_lower",
    "anti_shallowness_upper",
    "anti_shallowness_continuity",
    "correlation_continuity_check",
    "flip_generator_sign",
    "local_indistinguishable",
    "lemma1_check",
    "lemma2_check",
]


@dataclass(frozen=True)
class WeightVector:
    """Non-increasing generator weights, ordered by the lexicographic rule."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries, reverse=True)))
        n = len(self.entries)
        if any(not 1 <= e <= n for e in self.entries):
            raise ValueError("weights must lie in [1, n]")

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)

    def __lt__(self, other: "WeightVector") -> bool:
        return self.entries < other.entries

    def __le__(self, other: "WeightVector") -> bool:
        return self.entries <= other.entries


@dataclass
class CorrelationReport:
    region: tuple[int, ...]
    w: int
    method: str
    value: float
    pair: dict

    def to_json(self) -> dict:
        return {
            "region": list(self.region),
            "w": self.w,
            "method": self.method,
            "value": self.value,
            "pair": self.pair,
        }


# -- stabilizer weight ---------------------------------------------------------


def group_elements(t: StabilizerTableau) -> list[PauliOperator]:
    """All 2^n - 1 non-identity stabilizer group elements (Gray-code order)."""
    n = t.n
    if n > 20:
        raise ResourceGuardError("group enumeration capped at n <= 20")
    elems: list[PauliOperator | None] = [None] * (1 << n)
    elems[0] = PauliOperator(n, 0, 0)
    for mask in range(1, 1 << n):
        low = mask & -mask
        prev = elems[mask ^ low]
        assert prev is not None
        elems[mask] = prev * t.generators[low.bit_length() - 1]
    return [e for e in elems[1:] if e is not None]


def _independent_subset(elems: Iterable[PauliOperator], n: int) -> list[PauliOperator]:
    basis: list[int] = []
    picked: list[PauliOperator] = []
    for p in elems:
        r = p.symplectic_row()
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
            picked.append(p)
            if len(picked) == n:
                break
    return picked


def min_weight_generators(
    t: StabilizerTableau,
) -> tuple[list[PauliOperator], WeightVector]:
    """Generators realizing the minimal non-increasing weight vector.

    Matroid greedy over the whole group: sorted by (weight, lex), keep
    whatever is independent of what came before.  The returned list is in
    pick order (non-decreasing weight).
    """
    elems = sorted(group_elements(t), key=lambda p: (p.weight(), p.x, p.z))
    picked = _independent_subset(elems, t.n)
    assert len(picked) == t.n
    return picked, WeightVector(tuple(p.weight() for p in picked))


def stabilizer_weight(t: StabilizerTableau) -> int:
    return min_weight_generators(t)[1][0]


def weight_vector_oracle(t: StabilizerTableau, k: int) -> int:
    """k-th largest entry of the minimal vector, via a rank sweep.

    Independent of the greedy: the k-th entry (1-indexed) is the least W such
    that elements of weight <= W span a subspace of dimension >= n - k + 1.
    """
    n = t.n
    if n > 14:
        raise ResourceGuardError("rank-sweep oracle capped at n <= 14")
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    by_weight: dict[int, list[int]] = {}
    for p in group_elements(t):
        by_weight.setdefault(p.weight(), []).append(p.symplectic_row())
    basis: list[int] = []
    rank = 0
    for wt in sorted(by_weight):
        for r in by_weight[wt]:
            for b in basis:
                r = min(r, r ^ b)
            if r:
                basis.append(r)
                basis.sort(reverse=True)
                rank += 1
        if rank >= n - k + 1:
            return wt
    raise AssertionError("group rank below n")


# -- correlation estimators ------------------------------------------------------


def _rdm(s: StateVector, qubits: Sequence[int]) -> np.ndarray:
    tensor = s.amps.reshape([2] * s.n)
    tensor = np.moveaxis(tensor, qubits, range(len(qubits)))
    m = tensor.reshape(1 << len(qubits), -1)
    return m @ m.conj().T

def _delta4(s: StateVector, a1: Sequence[int], a2: Sequence[int]) -> np.ndarray:
    """Connected-correlation tensor rho_{A1A2} - rho_{A1} x rho_{A2}."""
    d1, d2 = 1 << len(a1), 1 << len(a2)
    joint = _rdm(s, list(a1) + list(a2))
    delta = joint - np.kron(_rdm(s, a1), _rdm(s, a2))
    return delta.reshape(d1, d2, d1, d2)


def _corr(delta4: np.ndarray, o1: np.ndarray, o2: np.ndarray) -> float:
    return float(np.einsum("ik,jl,klij->", o1, o2, delta4).real)


def _pauli_stack(w: int) -> tuple[list[str], np.ndarray]:
    names = ["".join(c) for c in product("IXYZ", repeat=w)]
    return names, np.stack([pauli_matrix(s) for s in names])


def _pair_max_pauli(delta4: np.ndarray, w: int) -> tuple[float, str, str]:
    names, stack = _pauli_stack(w)
    table = np.einsum("aik,bjl,klij->ab", stack, stack, delta4).real
    flat = int(np.abs(table).argmax())
    ai, bi = divmod(flat, len(names))
    return float(abs(table[ai, bi])), names[ai], names[bi]


def _sign_operator(m: np.ndarray) -> np.ndarray:
    ev, u = np.linalg.eigh((m + m.conj().T) / 2)
    return u @ np.diag(np.where(ev >= 0, 1.0, -1.0)) @ u.conj().T


def _pair_max_alternating(
    delta4: np.ndarray, w: int, restarts: int, seed: int
) -> float:
    rng = np.random.default_rng(seed)
    d2 = delta4.shape[1]
    _, _, best_name2 = _pair_max_pauli(delta4, w)
    inits = [pauli_matrix(best_name2)]
    for _ in range(restarts):
        h = rng.normal(size=(d2, d2)) + 1j * rng.normal(size=(d2, d2))
        inits.append(_sign_operator(h + h.conj().T))
    best = 0.0
    for o2 in inits:
        val = 0.0
        for _ in range(200):
            o1 = _sign_operator(np.einsum("jl,ilkj->ik", o2, delta4))
            o2 = _sign_operator(np.einsum("ik,kjil->jl", o1, delta4))
            new = abs(_corr(delta4, o1, o2))
            if new - val < 1e-12:
                val = max(val, new)
                break
            val = new
        best = max(best, val)
    return best


def correlation_strength_w(
    s: StateVector,
    region: Sequence[int],
    w: int,
    method: str = "pauli-enum",
    restarts: int = 8,
    seed: int = 0,
) -> CorrelationReport:
    """min over disjoint size-w subset pairs of the per-pair max |Cor|."""
    region = tuple(sorted(set(region)))
    if w < 1:
        raise ValueError("need w >= 1")
    if len(region) < 2 * w:
        raise ValueError("region cannot hold two disjoint size-w subsets")
    if method == "pauli-enum" and w > 3:
        raise ResourceGuardError("pauli-enum supports w <= 3")
    if method not in ("pauli-enum", "alternating-sign"):
        raise ValueError(f"unknown method {method!r}")
    best: CorrelationReport | None = None
    for a1 in combinations(region, w):
        rest = [q for q in region if q not in a1]
        for a2 in combinations(rest, w):
            if a2 < a1:
                continue
            delta4 = _delta4(s, a1, a2)
            if method == "pauli-enum":
                val, n1, n2 = _pair_max_pauli(delta4, w)
                pair = {"a1": list(a1), "a2": list(a2), "o1": n1, "o2": n2}
            else:
                val = _pair_max_alternating(delta4, w, restarts, seed)
                pair = {
                    "a1": list(a1),
                    "a2": list(a2),
                    "o1": "sign-operator",
                    "o2": "sign-operator",
                }
            if best is None or val < best.value:
                best = CorrelationReport(region, w, method, val, pair)
    assert best is not None
    return best


def pauli_correlation_strength(s: StateVector, region: Sequence[int]) -> float:
    """min over qubit pairs in the region of the best single-site Pauli |Cor|."""
    region = tuple(sorted(set(region)))
    if len(region) < 2:
        raise ValueError("region needs at least two qubits")
    return correlation_strength_w(s, region, 1).value


def _max_clique(adj: list[int], n: int) -> int:
    """Exact Bron-Kerbosch with pivoting on bitset adjacency."""
    best = 0

    def expand(r_size: int, p: int, x: int) -> None:
        nonlocal best
        if p == 0 and x == 0:
            best = max(best, r_size)
            return
        pool = p | x
        pivot = (pool & -pool).bit_length() - 1
        for u in range(n):
            if (pool >> u) & 1 and bin(p & adj[u]).count("1") > bin(p & adj[pivot]).count("1"):
                pivot = u
        cand = p & ~adj[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            bit = 1 << v
            expand(r_size + 1, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit
            cand &= ~bit
    expand(0, (1 << n) - 1, 0)
    return best


def pauli_correlation_range(s: StateVector, tol: float = 1e-9) -> int:
    """Largest region where every qubit pair shows a Pauli correlation > tol."""
    n = s.n
    if n > 16:
        raise ResourceGuardError("correlation range capped at n <= 16")
    adj = [0] * n
    for i, j in combinations(range(n), 2):
        val, _, _ = _pair_max_pauli(_delta4(s, (i,), (j,)), 1)
        if val > tol:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return max(1, _max_clique(adj, n))


def correlation_range_w(s: StateVector, w: int, delta: float) -> int:
    """Largest |A| with Cor^A_w > delta (>= 1 by convention)."""
    n = s.n
    if n > 12:
        raise ResourceGuardError("subset scan capped at n <= 12")
    for size in range(n, 2 * w - 1, -1):
        for region in combinations(range(n), size):
            if correlation_strength_w(s, region, w).value > delta:
                return size
    return 1


def global_correlation(s: StateVector) -> float:
    """Cor over the full register at w=1 (deterministic pauli-enum value)."""
    return correlation_strength_w(s, range(s.n), 1).value


def global_correlation_reports(
    s: StateVector, restarts: int = 8, seed: int = 0
) -> tuple[CorrelationReport, CorrelationReport]:
    full = range(s.n)
    return (
        correlation_strength_w(s, full, 1, "pauli-enum"),
        correlation_strength_w(s, full, 1, "alternating-sign", restarts, seed),
    )


# -- anti-shallowness ------------------------------------------------------------


def anti_shallowness_lower(s: StateVector) -> float:
    cor = global_correlation(s)
    return -math.log2(1 - cor**2 / 36)


def _best_product_fidelity(s: StateVector, restarts: int, seed: int) -> float:
    """Alternating single-site ascent on |<product|s>|^2 (local optimum)."""
    rng = np.random.default_rng(seed)
    n = s.n
    tensor = s.amps.reshape([2] * n)
    best = 0.0
    for _ in range(restarts):
        sites = []
        for _ in range(n):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            sites.append(v / np.linalg.norm(v))
        prev = 0.0
        for _ in range(500):
            for q in range(n):
                operands: list = [tensor, list(range(n))]
                for r in range(n):
                    if r != q:
                        operands += [sites[r].conj(), [r]]
                w = np.einsum(*operands, [q])
                norm = float(np.linalg.norm(w))
                if norm > 1e-15:
                    sites[q] = w / norm
            operands = [tensor, list(range(n))]
            for r in range(n):
                operands += [sites[r].conj(), [r]]
            val = abs(complex(np.einsum(*operands, [])))
            if val - prev < 1e-13:
                prev = max(prev, val)
                break
            prev = val
        best = max(best, prev**2)
    return best


def anti_shallowness_upper(
    s: StateVector,
    candidates: Sequence[StateVector] = (),
    product_search: bool = False,
    restarts: int = 8,
    seed: int = 0,
) -> float:
    """min over candidate states of -log2 fidelity; optional product search."""
    values = []
    for c in candidates:
        f = fidelity(s, c)
        values.append(math.inf if f == 0 else -math.log2(f))
    if product_search:
        f = _best_product_fidelity(s, restarts, seed)
        values.append(math.inf if f == 0 else -math.log2(f))
    if not values:
        raise ValueError("no candidates and product search disabled")
    return min(values)


def anti_shallowness_continuity(log_fidelity: float, eps: float) -> float:
    """Shallowness bound surviving an eps-infidelity perturbation (clamped at 0)."""
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    arg = (1 - eps) * 2.0**log_fidelity + eps + 2 * math.sqrt(eps * (1 - eps))
    return max(0.0, -math.log2(arg))


def correlation_continuity_check(
    s1: StateVector,
    s2: StateVector,
    op1,
    op2,
    tol: float = 1e-9,
) -> bool:
    """|Cor(s1) - Cor(s2)| <= 6 sqrt(1 - F) for norm-1 observables."""
    from .densesim import correlation  # local import keeps module load light

    for op in (op1, op2):
        if op.operator_norm() > 1 + 1e-9:
            raise ValueError("continuity bound needs operator norm <= 1")
    eps = max(0.0, 1.0 - fidelity(s1, s2))
    gap = abs(correlation(s1, op1, op2) - correlation(s2, op1, op2))
    return gap <= 6 * math.sqrt(eps) + tol


# -- indistinguishability and lemma checks ----------------------------------------


def flip_generator_sign(t: StabilizerTableau, index: int) -> StabilizerTableau:
    if not 0 <= index < t.n:
        raise IndexError("generator index out of range")
    out = t.copy()
    out.generators[index] = out.generators[index].negate()
    return out


def local_indistinguishable(
    t1: StabilizerTableau, t2: StabilizerTableau, k: int
) -> bool:
    """Signed restricted stabilizer groups agree on every subset of size <= k."""
    if t1.n != t2.n:
        raise ValueError("dimension mismatch")
    for size in range(1, min(k, t1.n) + 1):
        for subset in combinations(range(t1.n), size):
            if restricted_group_elements(t1, subset) != restricted_group_elements(
                t2, subset
            ):
                return False
    return True


def lemma1_check(p: PauliOperator, layer: Sequence, K: int) -> bool:
    """One layer of fan-in <= K gates grows Pauli weight at most K-fold."""
    used: set[int] = set()
    q = p
    for gate in layer:
        name, qubits = gate[0], tuple(gate[1])
        pauli = gate[2] if len(gate) > 2 else None
        if len(qubits) > K:
            raise ValueError("gate fan-in exceeds K")
        if used & set(qubits):
            raise ValueError("layer gates overlap")
        used |= set(qubits)
        q = conjugate_pauli(q, name, qubits, pauli=pauli)
    return q.weight() <= K * p.weight()


def lemma2_check(t: StabilizerTableau) -> bool:
    """wt_s >= CR_P / sqrt(n) on the tableau's state."""
    if t.n > 12:
        raise ResourceGuardError("lemma2 check capped at n <= 12")
    wt_s = stabilizer_weight(t)
    cr = pauli_correlation_range(from_tableau(t))
    return wt_s >= cr / math.sqrt(t.n) - 1e-12
