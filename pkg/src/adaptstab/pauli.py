"""Signed Pauli operators and GF(2) linear algebra.

Conventions used throughout the package:

* An n-qubit Pauli is stored as ``phase * prod_j X_j^{x_j} Z_j^{z_j}`` with
  the X factor to the left of the Z factor on every site.  ``x`` and ``z``
  are Python integers used as bit sets; bit ``j`` (that is ``1 << j``)
  belongs to qubit ``j``.
* The phase is a power of ``i`` and multiplies the X-before-Z product.  In
  this convention the display string ``"+Y"`` is stored with phase ``+i``
  because ``Y = i X Z``.  ``format_pauli`` always prints the display sign
  (``+``, ``-``, ``+i``, ``-i``) followed by one letter per qubit.
* GF(2) matrices are lists of row integers; column ``j`` is bit ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "PauliOperator",
    "BitMatrix",
    "identity",
    "single_site",
    "from_bits",
    "multiply",
    "commutes",
    "weight",
    "tensor",
    "parse_pauli",
    "format_pauli",
    "gf2_rank",
    "gf2_solve",
    "gf2_membership",
    "GF2Solution",
]

_PHASES = (1, 1j, -1, -1j)
_SIGN_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_TEXT_SIGN = {"+": 0, "": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}


def _popcount(v: int) -> int:
    return v.bit_count()


class PauliOperator:
    """A signed Pauli operator on ``n`` qubits.

    ``phase`` is the coefficient of the X-before-Z bit-set form and is one
    of ``1, -1, 1j, -1j``.  Use :func:`format_pauli` / ``str(P)`` for the
    human-readable letter form with its display sign.
    """

    __slots__ = ("n", "x", "z", "e")

    def __init__(self, n: int, x: int, z: int, phase: complex = 1):
        if n < 1:
            raise ValueError(f"need at least one qubit, got n={n}")
        mask = (1 << n) - 1
        if x & ~mask or z & ~mask:
            raise ValueError("bit set extends beyond n qubits")
        try:
            e = _PHASES.index(phase)
        except ValueError:
            raise ValueError(f"phase must be a power of i, got {phase!r}") from None
        self.n = n
        self.x = x
        self.z = z
        self.e = e

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_exponent(n: int, x: int, z: int, e: int) -> "PauliOperator":
        p = PauliOperator(n, x, z)
        p.e = e % 4
        return p

    # -- basic structure ----------------------------------------------

    @property
    def phase(self) -> complex:
        return _PHASES[self.e]

    @property
    def y_count(self) -> int:
        """Number of sites carrying both an X and a Z factor."""
        return _popcount(self.x & self.z)

    @property
    def display_sign(self) -> complex:
        """Sign printed in front of the letter string (``Y`` absorbs one i)."""
        return _PHASES[(self.e - self.y_count) % 4]

    @property
    def hermitian(self) -> bool:
        return (self.e - self.y_count) % 2 == 0

    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def support(self) -> tuple[int, ...]:
        occ = self.x | self.z
        return tuple(j for j in range(self.n) if (occ >> j) & 1)

    def letter(self, q: int) -> str:
        xb, zb = (self.x >> q) & 1, (self.z >> q) & 1
        return "IXZY"[xb + 2 * zb]

    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    def is_identity_bits(self) -> bool:
        return self.x == 0 and self.z == 0

    # -- algebra --------------------------------------------------------

    def multiply(self, other: "PauliOperator") -> "PauliOperator":
        """Exact product ``self * other``.

        Moving ``other``'s X block through ``self``'s Z block contributes
        ``(-1)^{|z_self & x_other|}``; everything else is bitwise XOR.
        """
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        e = (self.e + other.e + 2 * _popcount(self.z & other.x)) % 4
        return PauliOperator.from_exponent(
            self.n, self.x ^ other.x, self.z ^ other.z, e
        )

    __mul__ = multiply

    def commutes(self, other: "PauliOperator") -> bool:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def dagger(self) -> "PauliOperator":
        return PauliOperator.from_exponent(
            self.n, self.x, self.z, -self.e + 2 * self.y_count
        )

    def negate(self) -> "PauliOperator":
        return PauliOperator.from_exponent(self.n, self.x, self.z, self.e + 2)

    def embed(self, m: int, offset: int = 0) -> "PauliOperator":
        """The same operator viewed on an ``m``-qubit register at ``offset``."""
        if offset < 0 or offset + self.n > m:
            raise ValueError("embedding does not fit the target register")
        return PauliOperator.from_exponent(
            m, self.x << offset, self.z << offset, self.e
        )

    def restrict(self, qubits: Sequence[int]) -> "PauliOperator":
        """Letters of ``self`` on ``qubits`` as a |qubits|-site Pauli (phase kept)."""
        x = z = 0
        for i, q in enumerate(qubits):
            x |= ((self.x >> q) & 1) << i
            z |= ((self.z >> q) & 1) << i
        return PauliOperator.from_exponent(len(qubits), x, z, self.e)

    def symplectic_row(self, n_cols: int | None = None) -> int:
        """Bits ``(x | z << n)`` as one integer row for rank computations."""
        n = self.n if n_cols is None else n_cols
        return self.x | (self.z << n)

    # -- value semantics -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (self.n, self.x, self.z, self.e) == (other.n, other.x, other.z, other.e)

    def __hash__(self) -> int:
        return hash((self.n, self.x, self.z, self.e))

    def __repr__(self) -> str:
        return f"PauliOperator({format_pauli(self)!r})"

    def __str__(self) -> str:
        return format_pauli(self)


def identity(n: int) -> PauliOperator:
    return PauliOperator(n, 0, 0)


def single_site(n: int, q: int, letter: str) -> PauliOperator:
    """``letter`` on qubit ``q``, identity elsewhere, display sign +1."""
    if not 0 <= q < n:
        raise ValueError(f"qubit {q} out of range for n={n}")
    x, z, e = {"I": (0, 0, 0), "X": (1, 0, 0), "Z": (0, 1, 0), "Y": (1, 1, 1)}[letter]
    return PauliOperator.from_exponent(n, x << q, z << q, e)


def from_bits(n: int, x: int, z: int, sign: int = 1) -> PauliOperator:
    """Hermitian Pauli with the given bit sets and display sign ``sign``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    e = (_popcount(x & z) + (0 if sign == 1 else 2)) % 4
    return PauliOperator.from_exponent(n, x, z, e)


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    return p.multiply(q)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return p.commutes(q)


def weight(p: PauliOperator) -> int:
    return p.weight()


def tensor(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """``p`` on the low qubits, ``q`` appended above them."""
    return PauliOperator.from_exponent(
        p.n + q.n, p.x | (q.x << p.n), p.z | (q.z << p.n), p.e + q.e
    )


def parse_pauli(text: str) -> PauliOperator:
    """Parse ``[+|-][i]LETTERS`` with letters from ``IXYZ``."""
    body = text.strip()
    sign = ""
    for prefix in ("+i", "-i", "i", "+", "-"):
        if body.startswith(prefix):
            sign, body = prefix, body[len(prefix):]
            break
    if not body:
        raise ValueError(f"empty Pauli string in {text!r}")
    x = z = y = 0
    for j, ch in enumerate(body):
        if ch == "I":
            continue
        elif ch == "X":
            x |= 1 << j
        elif ch == "Z":
            z |= 1 << j
        elif ch == "Y":
            x |= 1 << j
            z |= 1 << j
            y += 1
        else:
            raise ValueError(f"illegal Pauli letter {ch!r} in {text!r}")
    e = (_TEXT_SIGN[sign] + y) % 4
    return PauliOperator.from_exponent(len(body), x, z, e)


def format_pauli(p: PauliOperator) -> str:
    return _SIGN_TEXT[(p.e - p.y_count) % 4] + p.letters()


# -- GF(2) linear algebra ------------------------------------------------


@dataclass
class BitMatrix:
    """Rows of packed bits; column ``j`` is bit ``j`` of each row integer."""

    rows: list[int]
    cols: int

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "BitMatrix":
        packed = []
        cols = 0
        for row in rows:
            bits = list(row)
            cols = max(cols, len(bits))
            packed.append(sum(b << j for j, b in enumerate(bits)))
        return BitMatrix(packed, cols)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class GF2Solution:
    """One particular solution plus a null-space basis (free columns zeroed)."""

    particular: int
    null_basis: list[int]
    cols: int

    def solutions(self) -> Iterable[int]:
        """All solutions (use only when the null space is small)."""
        for mask in range(1 << len(self.null_basis)):
            x = self.particular
            for i, v in enumerate(self.null_basis):
                if (mask >> i) & 1:
                    x ^= v
            yield x


def _as_rows(m: BitMatrix | Sequence[int], cols: int | None) -> tuple[list[int], int]:
    if isinstance(m, BitMatrix):
        return list(m.rows), m.cols
    if cols is None:
        raise ValueError("cols is required when passing raw rows")
    return list(m), cols


def gf2_rank(m: BitMatrix | Sequence[int], cols: int | None = None) -> int:
    rows = list(m.rows) if isinstance(m, BitMatrix) else list(m)
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
    return len(basis)


def gf2_solve(
    m: BitMatrix | Sequence[int], b: Sequence[int], cols: int | None = None
) -> GF2Solution | None:
    """Solve ``M x = b`` over GF(2).

    Returns ``None`` when inconsistent; otherwise the particular solution is
    the one with every free variable set to zero, so repeated calls are
    deterministic.
    """
    rows, ncols = _as_rows(m, cols)
    if len(b) != len(rows):
        raise ValueError(f"rhs length {len(b)} != row count {len(rows)}")
    # Augment with the rhs in bit ncols, then eliminate to reduced form.
    aug = [rows[i] | (int(b[i]) & 1) << ncols for i in range(len(rows))]
    pivots: dict[int, int] = {}  # column -> row index in `reduced`
    reduced: list[int] = []
    for row in aug:
        for col, idx in pivots.items():
            if (row >> col) & 1:
                row ^= reduced[idx]
        if row == 0:
            continue
        low = (row & -row).bit_length() - 1
        if low == ncols:
            return None  # 0 = 1
        for idx, r in enumerate(reduced):
            if (r >> low) & 1:
                reduced[idx] = r ^ row
        pivots[low] = len(reduced)
        reduced.append(row)
    particular = 0
    for col, idx in pivots.items():
        if (reduced[idx] >> ncols) & 1:
            particular |= 1 << col
    null_basis = []
    for col in range(ncols):
        if col in pivots:
            continue
        vec = 1 << col
        for pcol, idx in pivots.items():
            if (reduced[idx] >> col) & 1:
                vec |= 1 << pcol
        null_basis.append(vec)
    return GF2Solution(particular, null_basis, ncols)


def gf2_membership(rows: Sequence[int], cols: int, target: int) -> int | None:
    """Combination mask ``c`` with ``XOR_{i in c} rows[i] = target``, or None.

    The mask's bit ``i`` selects ``rows[i]``; used to reconstruct group
    elements (and their signs) from generator rows.
    """
    system = []
    rhs = []
    for col in range(cols):
        system.append(sum(((rows[i] >> col) & 1) << i for i in range(len(rows))))
        rhs.append((target >> col) & 1)
    sol = gf2_solve(system, rhs, cols=len(rows))
    return None if sol is None else sol.particular
