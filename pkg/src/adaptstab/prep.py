"""Compile stabilizer-code states into verified shallow adaptive circuits.

The pipeline: build a code from check strings, edge-color its Tanner graph
so commuting checks are measured in parallel through ancillas, insert CZ
gates between ancilla pairs whose controlled-Pauli interleaving is odd
("tangled" pairs), then fix the random measurement signs with one round of
parity-conditioned Pauli corrections.  The synthesized circuit for a
sparsity-s code has depth at most 2 + s + s^2.

Sparsity note: the depth bound uses a single ``s`` for both the maximum
check weight and the maximum per-qubit participation.  Codes where the two
differ (Steane: weights 4, participation 6) get s = max of both.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .bounds import ResourceProfile, check_adaptive_weight, check_clifford_adaptive
from .circuit import AdaptiveCircuit, Condition, Gate, Measure, depth, simulate
from .errors import ContradictionError, ResourceGuardError
from .metrics import stabilizer_weight
from .pauli import PauliOperator, format_pauli, gf2_rank, gf2_solve, parse_pauli
from .tableau import StabilizerTableau, apply_gate, from_stabilizers, is_stabilized_by, states_equal, zero_state

__all__ = [
    "StabilizerCode",
    "TannerGraph",
    "MeasurementSchedule",
    "TanglingGraph",
    "MeasurementFragment",
    "build_code",
    "builtin_code",
    "parse_code_text",
    "tanner_graph",
    "edge_color_bipartite",
    "tangling_parity",
    "build_tangling",
    "edge_color_general",
    "synthesize_measurement_circuit",
    "pauli_correction",
    "x_type_logicals",
    "prepare_state",
    "verify_preparation",
    "check_measurement_transform",
]


# ---------------------------------------------------------------------------
# codes


@dataclass
class StabilizerCode:
    """n qubits with an independent, mutually commuting set of checks.

    ``s`` is the sparsity: the larger of the maximum check weight and the
    maximum number of checks any one qubit participates in.  ``k = n - t``
    logical qubits remain for t checks.
    """

    n: int
    checks: tuple[PauliOperator, ...]
    name: str = ""

    def __post_init__(self) -> None:
        self.checks = tuple(self.checks)
        if not self.checks:
            raise ValueError("a code needs at least one check")
        for c in self.checks:
            if c.n != self.n:
                raise ValueError(f"check {format_pauli(c)} acts on {c.n} qubits, code has {self.n}")
            if not c.hermitian or c.display_sign != 1:
                raise ValueError(f"check {format_pauli(c)} must be hermitian with sign +1")
        for i, j in combinations(range(len(self.checks)), 2):
            if not self.checks[i].commutes(self.checks[j]):
                raise ValueError(
                    f"checks {format_pauli(self.checks[i])} and {format_pauli(self.checks[j])} anticommute"
                )
        rows = [c.symplectic_row() for c in self.checks]
        r = gf2_rank(rows, cols=2 * self.n)
        if r != len(self.checks):
            raise ValueError(f"checks are dependent: symplectic rank {r} < {len(self.checks)}")

    @property
    def t(self) -> int:
        return len(self.checks)

    @property
    def k(self) -> int:
        return self.n - len(self.checks)

    @property
    def s(self) -> int:
        max_wt = max(c.weight() for c in self.checks)
        part = [0] * self.n
        for c in self.checks:
            for q in c.support():
                part[q] += 1
        return max(max_wt, max(part))


def build_code(check_strings: Sequence[str], name: str = "") -> StabilizerCode:
    """Parse check strings like ``ZZI`` into a validated code."""
    checks = [parse_pauli(s) for s in check_strings]
    if not checks:
        raise ValueError("no checks given")
    return StabilizerCode(checks[0].n, tuple(checks), name)


def _repetition(n: int) -> StabilizerCode:
    if n < 2:
        raise ValueError("repetition code needs n >= 2")
    rows = ["I" * i + "ZZ" + "I" * (n - i - 2) for i in range(n - 1)]
    return build_code(rows, f"repetition({n})")


_STEANE_SUPPORTS = ((0, 2, 4, 6), (1, 2, 5, 6), (3, 4, 5, 6))


def _steane() -> StabilizerCode:
    rows = []
    for letter in "XZ":
        for sup in _STEANE_SUPPORTS:
            rows.append("".join(letter if q in sup else "I" for q in range(7)))
    return build_code(rows, "steane")


def _toric(side: int) -> StabilizerCode:
    """Toric code on a side x side torus; qubits on edges, one star and one
    plaquette dropped to keep the checks independent (k = 2)."""
    if side < 2:
        raise ValueError("toric code needs side >= 2")

    def h(r: int, c: int) -> int:  # edge going right from vertex (r, c)
        return r * side + c

    def v(r: int, c: int) -> int:  # edge going down from vertex (r, c)
        return side * side + r * side + c

    n = 2 * side * side
    rows = []
    for r in range(side):
        for c in range(side):
            if (r, c) == (side - 1, side - 1):
                continue  # dropped star
            sup = {h(r, c), h(r, (c - 1) % side), v(r, c), v((r - 1) % side, c)}
            rows.append("".join("X" if q in sup else "I" for q in range(n)))
    for r in range(side):
        for c in range(side):
            if (r, c) == (side - 1, side - 1):
                continue  # dropped plaquette
            sup = {h(r, c), h((r + 1) % side, c), v(r, c), v(r, (c + 1) % side)}
            rows.append("".join("Z" if q in sup else "I" for q in range(n)))
    return build_code(rows, f"toric({side})")


def builtin_code(name: str) -> StabilizerCode:
    """Named codes: ``repetition(n)``, ``steane``, ``toric(l)``."""
    key = name.strip().lower()
    arg = None
    if "(" in key and key.endswith(")"):
        base, raw = key[:-1].split("(", 1)
        key, arg = base.strip(), int(raw)
    if key == "repetition":
        return _repetition(arg if arg is not None else 3)
    if key == "steane":
        return _steane()
    if key == "toric":
        return _toric(arg if arg is not None else 2)
    raise ValueError(f"unknown builtin code: {name!r}")


def parse_code_text(text: str, name: str = "") -> StabilizerCode:
    """Code file format: Pauli-string lines with ``#`` comments, or a JSON
    object ``{"name": ..., "n": ..., "checks": [...]}``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        d = json.loads(stripped)
        code = build_code(d["checks"], d.get("name", name))
        if "n" in d and d["n"] != code.n:
            raise ValueError(f"declared n={d['n']} but checks act on {code.n} qubits")
        return code
    lines = []
    for line in stripped.splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            lines.append(body)
    return build_code(lines, name)


# ---------------------------------------------------------------------------
# Tanner graph and measurement scheduling


@dataclass
class TannerGraph:
    """Bipartite qubit/check incidence graph with per-edge Pauli letters."""

    n_qubits: int
    n_checks: int
    edges: tuple[tuple[int, int], ...]  # (qubit, check), lexicographic
    letters: dict[tuple[int, int], str] = field(default_factory=dict)

    @property
    def max_degree(self) -> int:
        dq = [0] * self.n_qubits
        dc = [0] * self.n_checks
        for q, j in self.edges:
            dq[q] += 1
            dc[j] += 1
        return max(dq + dc)


def tanner_graph(code: StabilizerCode) -> TannerGraph:
    edges = []
    letters = {}
    for j, check in enumerate(code.checks):
        word = check.letters()
        for q in check.support():
            edges.append((q, j))
            letters[(q, j)] = word[q]
    edges.sort()
    return TannerGraph(code.n, code.t, tuple(edges), letters)


@dataclass
class MeasurementSchedule:
    """Proper edge coloring of a Tanner graph: color c = controlled-Pauli
    layer c; ``letters`` carries the Pauli applied along each edge."""

    colors: dict[tuple[int, int], int]
    letters: dict[tuple[int, int], str]
    num_colors: int

    def __post_init__(self) -> None:
        for (q1, j1), (q2, j2) in combinations(self.colors, 2):
            if (q1 == q2 or j1 == j2) and self.colors[(q1, j1)] == self.colors[(q2, j2)]:
                raise ValueError(f"edges {(q1, j1)} and {(q2, j2)} share a node and a color")
        for e, c in self.colors.items():
            if not 1 <= c <= self.num_colors:
                raise ValueError(f"edge {e} has color {c} outside 1..{self.num_colors}")

    def to_json(self) -> dict:
        rows = [
            {"qubit": q, "check": j, "color": self.colors[(q, j)], "letter": self.letters[(q, j)]}
            for (q, j) in sorted(self.colors)
        ]
        return {"num_colors": self.num_colors, "edges": rows}

    @classmethod
    def from_json(cls, d: dict) -> "MeasurementSchedule":
        colors = {(int(r["qubit"]), int(r["check"])): int(r["color"]) for r in d["edges"]}
        letters = {(int(r["qubit"]), int(r["check"])): r["letter"] for r in d["edges"]}
        return cls(colors, letters, int(d["num_colors"]))


def edge_color_bipartite(g: TannerGraph) -> MeasurementSchedule:
    """Proper edge coloring with exactly max-degree colors.

    Bipartite graphs have edge chromatic number equal to the maximum degree;
    each new edge either takes a color free at both ends or frees one up by
    swapping an alternating two-color path.  Deterministic: edges arrive in
    (qubit, check) order and the smallest free color always wins.
    """
    delta = g.max_degree
    used_q: list[dict[int, int]] = [dict() for _ in range(g.n_qubits)]  # color -> check
    used_c: list[dict[int, int]] = [dict() for _ in range(g.n_checks)]  # color -> qubit
    colors: dict[tuple[int, int], int] = {}
    for q, j in g.edges:
        both = [c for c in range(1, delta + 1) if c not in used_q[q] and c not in used_c[j]]
        if both:
            c = both[0]
        else:
            a = min(c for c in range(1, delta + 1) if c not in used_q[q])
            b = min(c for c in range(1, delta + 1) if c not in used_c[j])
            # Walk the alternating a/b path starting from the check node; it
            # can never reach q (q has no a-edge), so swapping a and b along
            # it frees color a at j while keeping the coloring proper.
            path: list[tuple[tuple[int, int], int]] = []
            on_check, vertex, col = True, j, a
            while True:
                table = used_c[vertex] if on_check else used_q[vertex]
                if col not in table:
                    break
                other = table[col]
                edge = (other, vertex) if on_check else (vertex, other)
                path.append((edge, col))
                on_check, vertex, col = not on_check, other, b if col == a else a
            for edge, old in path:
                used_q[edge[0]].pop(old)
                used_c[edge[1]].pop(old)
            for edge, old in path:
                new = a + b - old
                colors[edge] = new
                used_q[edge[0]][new] = edge[1]
                used_c[edge[1]][new] = edge[0]
            c = a
        colors[(q, j)] = c
        used_q[q][c] = j
        used_c[j][c] = q
    return MeasurementSchedule(colors, dict(g.letters), delta if g.edges else 0)


def tangling_parity(schedule: MeasurementSchedule, i: int, j: int) -> bool:
    """True when ancillas i and j need a CZ to undo odd interleaving.

    Over shared qubits where the two checks apply anticommuting letters,
    count the sites where check i's controlled Pauli is scheduled before
    check j's.  Swapping one anticommuting pair costs a CZ between the two
    ancillas, so an odd count leaves a net CZ.  Global commutation makes the
    anticommuting-site count even, hence the parity order-independent.
    """
    sites = []
    for (q, jj), letter in schedule.letters.items():
        if jj != i:
            continue
        other = schedule.letters.get((q, j))
        if other is not None and other != letter:
            sites.append(q)
    if len(sites) % 2 == 1:
        raise ValueError(f"checks {i} and {j} anticommute; schedule is for commuting checks")
    before = 0
    for q in sites:
        ci, cj = schedule.colors[(q, i)], schedule.colors[(q, j)]
        if ci == cj:
            raise RuntimeError(f"improper schedule: edges ({q},{i}) and ({q},{j}) share color {ci}")
        if ci < cj:
            before += 1
    return before % 2 == 1


@dataclass
class TanglingGraph:
    """Ancilla pairs (one node per check) that need a correcting CZ."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]

    @property
    def max_degree(self) -> int:
        deg = [0] * self.n_nodes
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return max(deg, default=0)


def build_tangling(schedule: MeasurementSchedule) -> TanglingGraph:
    n_nodes = max((j for _, j in schedule.colors), default=-1) + 1
    edges = tuple(
        (i, j) for i, j in combinations(range(n_nodes), 2) if tangling_parity(schedule, i, j)
    )
    return TanglingGraph(n_nodes, edges)


def edge_color_general(g: TanglingGraph) -> dict[tuple[int, int], int]:
    """Proper edge coloring of a simple graph with <= max-degree + 1 colors
    (fan rotation plus alternating-path inversion)."""
    if not g.edges:
        return {}
    limit = g.max_degree + 1
    adj: dict[int, dict[int, int]] = {v: {} for v in range(g.n_nodes)}  # neighbor -> color
    color: dict[tuple[int, int], int] = {}

    def key(u: int, v: int) -> tuple[int, int]:
        return (u, v) if u < v else (v, u)

    def free(v: int) -> int:
        used = set(adj[v].values())
        return min(c for c in range(1, limit + 1) if c not in used)

    def set_color(u: int, v: int, c: int | None) -> None:
        if c is None:
            color.pop(key(u, v), None)
            adj[u].pop(v, None)
            adj[v].pop(u, None)
        else:
            color[key(u, v)] = c
            adj[u][v] = c
            adj[v][u] = c

    def is_fan(u: int, fan: list[int]) -> bool:
        for a, b in zip(fan, fan[1:]):
            c = adj[u].get(b)
            if c is None or c in adj[a].values():
                return False
        return True

    for u, v in sorted(g.edges):
        # Maximal fan of u starting at the uncolored edge (u, v).
        fan = [v]
        while True:
            nxt = None
            for w in sorted(adj[u]):
                if w in fan:
                    continue
                if adj[u][w] not in adj[fan[-1]].values():
                    nxt = w
                    break
            if nxt is None:
                break
            fan.append(nxt)
        c = free(u)
        d = free(fan[-1])
        if d not in set(adj[u].values()):
            w_idx = len(fan) - 1
        else:
            # Invert the maximal c/d alternating path from u, freeing d at u.
            # Collect first, then swap: recoloring mid-walk would let the
            # walk step back across the edge it just flipped.
            path = []
            seen = set()
            cur, col = u, d
            while True:
                nbr = next((x for x, cc in adj[cur].items() if cc == col), None)
                if nbr is None or key(cur, nbr) in seen:
                    break
                seen.add(key(cur, nbr))
                path.append((cur, nbr, col))
                cur, col = nbr, c if col == d else d
            for a_v, b_v, old in path:
                set_color(a_v, b_v, c if old == d else d)
            w_idx = next(
                (
                    i
                    for i in range(len(fan))
                    if d not in adj[fan[i]].values() and is_fan(u, fan[: i + 1])
                ),
                None,
            )
            if w_idx is None:
                raise RuntimeError("edge coloring failed; this is a bug")
        # Rotate the fan prefix onto w, then give (u, w) color d.
        for i in range(w_idx):
            set_color(u, fan[i], adj[u][fan[i + 1]])
        set_color(u, fan[w_idx], d)
    return color


# ---------------------------------------------------------------------------
# circuit synthesis


@dataclass
class MeasurementFragment:
    """Parallel syndrome-extraction circuit plus its bookkeeping."""

    circuit: AdaptiveCircuit
    syndrome_bits: dict[int, int]  # check index -> classical bit
    schedule: MeasurementSchedule
    cz_colors: dict[tuple[int, int], int]
    sparsity: int

    @property
    def depth(self) -> int:
        return depth(self.circuit)


def synthesize_measurement_circuit(
    checks: StabilizerCode | Sequence[PauliOperator],
    n: int | None = None,
    *,
    ancilla_offset: int | None = None,
    cbit_offset: int = 0,
    schedule: MeasurementSchedule | None = None,
) -> MeasurementFragment:
    """Measure all checks in parallel through one ancilla each.

    Layer plan: ancilla Hadamards (merged, depth-free) / one controlled-Pauli
    layer per schedule color / CZ layers between tangled ancillas / merged
    Hadamards / one layer measuring every ancilla.  Total counted depth is
    at most 2 + s + s^2.  A custom ``schedule`` may force a different layer
    order (and hence different tangling) than the built-in coloring.
    """
    if isinstance(checks, StabilizerCode):
        code = checks
    else:
        ops = tuple(checks)
        width = n if n is not None else (ops[0].n if ops else 0)
        code = StabilizerCode(width, ops, "fragment")
    base = code.n if ancilla_offset is None else ancilla_offset
    if base < code.n:
        raise ValueError("ancillas would overlap data qubits")
    if schedule is None:
        schedule = edge_color_bipartite(tanner_graph(code))
    else:
        want = {(q, j) for j, c in enumerate(code.checks) for q in c.support()}
        if set(schedule.colors) != want:
            raise ValueError("schedule does not cover exactly the code's Tanner edges")
    anc = [base + j for j in range(code.t)]
    layers: list[list] = [[Gate("H", (a,), merged=True) for a in anc]]
    for c in range(1, schedule.num_colors + 1):
        layer = [
            Gate("CP", (anc[j], q), pauli=schedule.letters[(q, j)])
            for (q, j) in sorted(schedule.colors)
            if schedule.colors[(q, j)] == c
        ]
        layers.append(layer)
    cz_colors = edge_color_general(build_tangling(schedule))
    for c in range(1, max(cz_colors.values(), default=0) + 1):
        layer = [
            Gate("CZ", (anc[i], anc[j])) for (i, j) in sorted(cz_colors) if cz_colors[(i, j)] == c
        ]
        layers.append(layer)
    layers.append([Gate("H", (a,), merged=True) for a in anc])
    layers.append([Measure(anc[j], cbit_offset + j) for j in range(code.t)])
    circuit = AdaptiveCircuit(base + code.t, cbit_offset + code.t, layers)
    bits = {j: cbit_offset + j for j in range(code.t)}
    return MeasurementFragment(circuit, bits, schedule, cz_colors, code.s)


def pauli_correction(s_plus: Sequence[PauliOperator], s_minus: Sequence[PauliOperator]) -> PauliOperator:
    """A Pauli commuting with every ``s_plus`` and anticommuting with every
    ``s_minus``, found by one GF(2) solve; sign fixed to +1."""
    gens = list(s_plus) + list(s_minus)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    rows = [g.z | (g.x << n) for g in gens]
    b = [0] * len(s_plus) + [1] * len(s_minus)
    sol = gf2_solve(rows, b, cols=2 * n)
    if sol is None:
        raise ValueError("inconsistent sign pattern: generators are not independent")
    u = sol.particular
    x, z = u & ((1 << n) - 1), u >> n
    return PauliOperator.from_exponent(n, x, z, bin(x & z).count("1") % 4)


def x_type_logicals(code: StabilizerCode) -> list[PauliOperator]:
    """k independent X-type logical representatives.

    An X-type operator with support vector d commutes with every check
    exactly when d is orthogonal to all check z-parts, so candidates form
    the null space of the z-part matrix.  The pure-X part of the check group
    sits inside that null space with codimension exactly k, and extending a
    basis across the gap yields the logicals.
    """
    t, n = code.t, code.n
    zrows = [c.z for c in code.checks]
    sol = gf2_solve(zrows, [0] * t, cols=n)
    candidates = sol.null_basis
    # x-parts of check-group elements with trivial z-part.
    trans = [sum(((zrows[i] >> q) & 1) << i for i in range(t)) for q in range(n)]
    group_sol = gf2_solve(trans, [0] * n, cols=t)
    span: list[int] = []

    def reduce(vec: int) -> int:
        for b in span:
            vec = min(vec, vec ^ b)
        return vec

    for lam in group_sol.null_basis:
        vec = 0
        for i in range(t):
            if (lam >> i) & 1:
                vec ^= code.checks[i].x
        vec = reduce(vec)
        if vec:
            span.append(vec)
    logicals = []
    for d in candidates:
        rem = reduce(d)
        if rem:
            span.append(rem)
            logicals.append(PauliOperator(n, d, 0))
        if len(logicals) == code.k:
            break
    if len(logicals) != code.k:
        raise RuntimeError(
            f"could not extend to {code.k} X-type logicals (found {len(logicals)}); rank deficit"
        )
    return logicals


def _correction_layers(gens: list[PauliOperator], t: int, n: int) -> list[list[Gate]]:
    """Compile outcome-dependent corrections into parity-conditioned gates.

    The correction Pauli solves a linear system whose right-hand side is the
    syndrome vector, so it is GF(2)-linear in the outcome bits: solve once
    per basis syndrome and superpose.  Each qubit then carries at most one
    X/Y gate and one Z gate, each conditioned on a parity of syndrome bits;
    a second layer appears only when some qubit needs X- and Z-corrections
    with different parity sets.
    """
    rows = [g.z | (g.x << n) for g in gens]
    xs, zs = [], []
    for j in range(t):
        b = [1 if i == j else 0 for i in range(len(gens))]
        sol = gf2_solve(rows, b, cols=2 * n)
        if sol is None:
            raise ValueError("correction system inconsistent; generators corrupted")
        u = sol.particular
        xs.append(u & ((1 << n) - 1))
        zs.append(u >> n)
    first: list[Gate] = []
    second: list[Gate] = []
    for q in range(n):
        jx = tuple(j for j in range(t) if (xs[j] >> q) & 1)
        jz = tuple(j for j in range(t) if (zs[j] >> q) & 1)
        if jx and jx == jz:
            first.append(Gate("Y", (q,), cond=Condition(jx, 1)))
        elif jx and jz:
            first.append(Gate("X", (q,), cond=Condition(jx, 1)))
            second.append(Gate("Z", (q,), cond=Condition(jz, 1)))
        elif jx:
            first.append(Gate("X", (q,), cond=Condition(jx, 1)))
        elif jz:
            first.append(Gate("Z", (q,), cond=Condition(jz, 1)))
    layers = []
    if first:
        layers.append(first)
    if second:
        layers.append(second)
    return layers


def prepare_state(
    code: StabilizerCode,
    policy: str = "auto",
    *,
    s1: Sequence[PauliOperator] | None = None,
    s2: Sequence[PauliOperator] | None = None,
    phi_layers: Sequence[Sequence[Gate]] | None = None,
    schedule: MeasurementSchedule | None = None,
) -> tuple[AdaptiveCircuit, StabilizerTableau]:
    """Compile a code into (adaptive circuit, target tableau).

    ``auto`` measures every check on the all-plus state and completes the
    generator set with X-type logicals, so the target is the code state
    stabilized by checks and logical-X representatives.  ``explicit`` takes
    a caller-chosen split: S1 is measured, S2 must already stabilize the
    product state prepared by ``phi_layers``.
    """
    n = code.n
    if policy == "auto":
        s1 = list(code.checks)
        s2 = x_type_logicals(code)
        phi_layers = [[Gate("H", (q,)) for q in range(n)]]
    elif policy == "explicit":
        if s1 is None or s2 is None or phi_layers is None:
            raise ValueError("explicit policy needs s1, s2, and phi_layers")
        s1, s2 = list(s1), list(s2)
    else:
        raise ValueError(f"unknown partition policy: {policy!r}")

    for g in s1:
        if g.weight() > code.s:
            raise ValueError(f"S1 element {format_pauli(g)} heavier than sparsity {code.s}")
    phi = zero_state(n)
    for layer in phi_layers:
        for gate in layer:
            if not isinstance(gate, Gate) or gate.cond is not None:
                raise ValueError("phi_layers must be unconditioned gates on the data register")
            if any(q >= n for q in gate.qubits):
                raise ValueError("phi_layers must act on data qubits only")
            apply_gate(phi, gate.op, gate.qubits, pauli=gate.pauli)
    for g in s2:
        if is_stabilized_by(phi, g) != 1:
            raise ValueError(f"S2 element {format_pauli(g)} does not stabilize the initial state")
    gens = list(s1) + list(s2)
    if len(gens) != n:
        raise ValueError(f"need n={n} generators, got {len(gens)}")
    for a, b in combinations(gens, 2):
        if not a.commutes(b):
            raise ValueError(f"generators {format_pauli(a)} and {format_pauli(b)} anticommute")
    if gf2_rank([g.symplectic_row() for g in gens], cols=2 * n) != n:
        raise ValueError("S1 and S2 together must be independent")

    target = from_stabilizers(gens)
    frag = synthesize_measurement_circuit(s1, n, ancilla_offset=n, schedule=schedule)
    t = len(s1)
    layers = [list(layer) for layer in phi_layers]
    layers.extend(frag.circuit.layers)
    layers.extend(_correction_layers(gens, t, n))
    return AdaptiveCircuit(n + t, t, layers), target


def verify_preparation(
    circuit: AdaptiveCircuit,
    target: StabilizerTableau,
    trials: int = 20,
    also_exhaustive: bool = True,
) -> dict:
    """Simulate the circuit against the target on random seeds and, when the
    ancilla count permits, on every forced outcome pattern; reports depth,
    ancilla usage, and the applicable trade-off bound checks."""
    n_a = circuit.m - target.n
    report: dict = {
        "n": target.n,
        "m": circuit.m,
        "n_a": n_a,
        "depth": depth(circuit),
        "random_trials": trials,
        "branches": None,
        "realizable": None,
        "all_match": True,
        "counterexample": None,
    }
    for seed in range(trials):
        tab, record = simulate(circuit, seed=seed)
        if not states_equal(tab, target):
            report["all_match"] = False
            report["counterexample"] = "".join(str(b) for b in record)
            break
    if also_exhaustive and report["all_match"]:
        if circuit.cbits > 12:
            raise ResourceGuardError(
                f"exhaustive verification over 2^{circuit.cbits} branches refused; "
                "pass also_exhaustive=False"
            )
        realizable = 0
        for mask in range(1 << circuit.cbits):
            forced = [(mask >> i) & 1 for i in range(circuit.cbits)]
            try:
                tab, record = simulate(circuit, forced=forced)
            except ContradictionError:
                continue
            realizable += 1
            if not states_equal(tab, target):
                report["all_match"] = False
                report["counterexample"] = "".join(str(b) for b in forced)
                break
        report["branches"] = 1 << circuit.cbits
        report["realizable"] = realizable
    wt_s = stabilizer_weight(target)
    profile = ResourceProfile.from_circuit(circuit, target.n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report["bounds"] = [
            check_adaptive_weight(profile, wt_s),
            check_clifford_adaptive(profile, wt_s),
        ]
    return report


def check_measurement_transform(big: StabilizerTableau, small: StabilizerTableau) -> bool:
    """Can measuring Z on the last m - n qubits of ``big`` yield ``small``?

    True exactly when every generator S of the small state extends to a
    group element S (x) Z^z of the big state for some ancilla pattern z.
    Each candidate is a unique generator combination, and sign repair uses
    the fact that pure ancilla-Z group elements multiply without phases, so
    their signs form a linear functional over the solution space.
    """
    m, n = big.n, small.n
    if m < n:
        raise ValueError("big register must be at least as wide as small")
    gens = big.generators
    t = len(gens)

    def product(mask: int) -> PauliOperator:
        acc = PauliOperator(m, 0, 0)
        for i in range(t):
            if (mask >> i) & 1:
                acc = acc.multiply(gens[i])
        return acc

    for s in small.generators:
        rows = []
        rhs = []
        for q in range(m):  # x-part: match s below n, vanish on ancillas
            rows.append(sum(((gens[i].x >> q) & 1) << i for i in range(t)))
            rhs.append((s.x >> q) & 1 if q < n else 0)
        for q in range(n):  # z-part constrained on the data qubits only
            rows.append(sum(((gens[i].z >> q) & 1) << i for i in range(t)))
            rhs.append((s.z >> q) & 1)
        sol = gf2_solve(rows, rhs, cols=t)
        if sol is None:
            return False
        g0 = product(sol.particular)
        expected = s.embed(m).multiply(PauliOperator(m, 0, (g0.z >> n) << n))
        if g0 == expected:
            continue
        # Wrong sign: null-space elements are pure Z on the ancillas, whose
        # signs compose linearly, so any negative one repairs the mismatch.
        if any(product(v).display_sign == -1 for v in sol.null_basis):
            continue
        return False
    return True
