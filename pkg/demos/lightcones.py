"""Causal cones through adaptive circuits vs the worst-case g value.

g_{K,D} bounds how many qubits one qubit can influence through D layers of
fan-in-K gates: K^D with all-to-all connectivity, (2(K-1)D + 1)^r on an
r-dimensional grid.  Actual cones in structured circuits sit well below it.
"""

from adaptstab.circuit import (
    Geometry,
    backward_lightcone,
    depth,
    forward_lightcone,
    g_value,
    ghz_adaptive,
)


def main():
    print("worst-case g values")
    for K, D in ((2, 3), (2, 6), (3, 4)):
        allg = g_value(K, D)
        grid1 = g_value(K, D, Geometry.grid(1))
        grid2 = g_value(K, D, Geometry.grid(2))
        print(f"  K={K} D={D}: all-to-all {allg}, line {grid1}, plane {grid2}")

    circ = ghz_adaptive(16, 4, 2)
    D = depth(circ)
    print(f"\nadaptive GHZ circuit: n=16, a=4 -> m={circ.m}, depth {D}")
    for q in (0, 5, 16):
        fwd = forward_lightcone(circ, [q])
        bwd = backward_lightcone(circ, [q])
        tag = "ancilla" if q >= 16 else "data"
        print(
            f"  qubit {q:>2} ({tag}): forward cone {len(fwd)},"
            f" backward cone {len(bwd)}, bound g = {g_value(2, D)}"
        )


if __name__ == "__main__":
    main()
