"""Exchange matrices: finite skew-symmetrizable matrices and periodic banded
infinite families, plus the named examples used throughout the package.

A finite exchange matrix carries an explicit tuple of integer indices so that
windows cut out of an infinite quiver keep their original labels (which may be
negative).  A periodic banded matrix is an infinite integer matrix determined
by a period p and a rule table mapping (index class mod p, column offset) to
an entry; all entries outside the band are zero.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg


class NotSkewSymmetrizable(ValueError):
    pass


class ExchangeMatrix:
    """Finite integer exchange matrix over an explicit index set."""

    __slots__ = ("indices", "data", "_pos")

    def __init__(
        self,
        indices: Sequence[int],
        entries: Mapping[tuple[int, int], int],
        check: bool = True,
    ):
        self.indices: tuple[int, ...] = tuple(sorted(indices))
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("duplicate indices")
        self._pos = {i: p for p, i in enumerate(self.indices)}
        self.data: dict[tuple[int, int], int] = {
            k: int(v) for k, v in entries.items() if v != 0
        }
        for (i, j) in self.data:
            if i not in self._pos or j not in self._pos:
                raise ValueError(f"entry ({i},{j}) outside index set")
        if check:
            self._check_sign_pattern()

    def _check_sign_pattern(self) -> None:
        for (i, j), v in self.data.items():
            w = self.data.get((j, i), 0)
            if v * w > 0 or (v != 0 and w == 0):
                raise NotSkewSymmetrizable(
                    f"entries ({i},{j})={v} and ({j},{i})={w} violate the sign pattern"
                )

    # -- basic access ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.indices)

    def entry(self, i: int, j: int) -> int:
        return self.data.get((i, j), 0)

    def column(self, k: int) -> dict[int, int]:
        return {i: v for (i, j), v in self.data.items() if j == k}

    def row(self, k: int) -> dict[int, int]:
        return {j: v for (i, j), v in self.data.items() if i == k}

    def to_dense(self) -> list[list[Fraction]]:
        n = self.n
        out = linalg.zeros(n, n)
        for (i, j), v in self.data.items():
            out[self._pos[i]][self._pos[j]] = Fraction(v)
        return out

    @staticmethod
    def from_dense(rows: Sequence[Sequence[int]], indices: Sequence[int] | None = None) -> "ExchangeMatrix":
        n = len(rows)
        idx = tuple(indices) if indices is not None else tuple(range(n))
        entries = {
            (idx[i], idx[j]): int(rows[i][j])
            for i in range(n)
            for j in range(n)
            if rows[i][j]
        }
        return ExchangeMatrix(idx, entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.indices == other.indices and self.data == other.data

    def __repr__(self):
        return f"ExchangeMatrix(n={self.n}, indices={self.indices[:6]}{'...' if self.n > 6 else ''})"

    # -- mutation ----------------------------------------------------------

    def mutate(self, k: int) -> "ExchangeMatrix":
        """Matrix mutation at index k."""
        if k not in self._pos:
            raise KeyError(f"index {k} not in matrix")
        new: dict[tuple[int, int], int] = {}
        col_k = self.column(k)
        row_k = self.row(k)
        touched = set(self.data)
        for i in col_k:
            for j in row_k:
                touched.add((i, j))
        for (i, j) in touched:
            v = self.data.get((i, j), 0)
            if i == k or j == k:
                nv = -v
            else:
                bik = col_k.get(i, 0)
                bkj = row_k.get(j, 0)
                nv = v + (abs(bik) * bkj + bik * abs(bkj)) // 2
            if nv:
                new[(i, j)] = nv
        return ExchangeMatrix(self.indices, new, check=False)

    def mutate_word(self, word: Iterable[int]) -> "ExchangeMatrix":
        b = self
        for k in word:
            b = b.mutate(k)
        return b

    # -- symmetrizer -------------------------------------------------------

    def symmetrizer(self) -> dict[int, int]:
        """Positive integers d_i with d_i b_ij = -d_j b_ji, minimal per component."""
        d: dict[int, Fraction] = {}
        adj: dict[int, list[int]] = {i: [] for i in self.indices}
        for (i, j) in self.data:
            adj[i].append(j)
        for start in self.indices:
            if start in d:
                continue
            d[start] = Fraction(1)
            queue = [start]
            while queue:
                i = queue.pop()
                for j in adj[i]:
                    ratio = -Fraction(self.entry(i, j), self.entry(j, i))
                    if ratio <= 0:
                        raise NotSkewSymmetrizable(f"sign clash at ({i},{j})")
                    val = d[i] * ratio
                    if j in d:
                        if d[j] != val:
                            raise NotSkewSymmetrizable(f"inconsistent cycle through ({i},{j})")
                    else:
                        d[j] = val
                        queue.append(j)
        # clear denominators and common factors per connected component, then
        # globally: any common positive scaling is a valid symmetrizer, so use
        # the smallest integer one
        import math

        lcm = 1
        for v in d.values():
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        ints = {i: int(v * lcm) for i, v in d.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        return {i: v // g for i, v in ints.items()}

    def symmetrizer_dense(self) -> list[list[Fraction]]:
        d = self.symmetrizer()
        n = self.n
        out = linalg.zeros(n, n)
        for i, idx in enumerate(self.indices):
            out[i][i] = Fraction(d[idx])
        return out

    # -- io ------------------------------------------------------------------

    def to_json(self) -> dict:
        entries = sorted([i, j, v] for (i, j), v in self.data.items())
        out: dict = {"kind": "finite", "n": self.n, "entries": entries}
        if self.indices != tuple(range(self.n)):
            out["indices"] = list(self.indices)
        return out


class PeriodicBandedMatrix:
    """Infinite integer matrix, p-periodic along the diagonal with finite band.

    entry(i, j) = rule[(i mod p, j - i)]; zero outside the rule table.
    """

    __slots__ = ("period", "band", "rule")

    def __init__(self, period: int, band: int, rule: Mapping[tuple[int, int], int]):
        self.period = int(period)
        self.band = int(band)
        self.rule: dict[tuple[int, int], int] = {}
        for (cls, off), v in rule.items():
            if v == 0:
                continue
            if abs(off) > self.band:
                raise ValueError(f"offset {off} outside band {self.band}")
            self.rule[(cls % self.period, off)] = int(v)
        self._check_skew_pattern()

    def _check_skew_pattern(self) -> None:
        for (cls, off), v in self.rule.items():
            w = self.rule.get(((cls + off) % self.period, -off), 0)
            if off == 0 and v != 0:
                raise NotSkewSymmetrizable("nonzero diagonal entry")
            if v * w > 0 or (v != 0 and w == 0):
                raise NotSkewSymmetrizable(f"rule ({cls},{off}) violates the sign pattern")

    def entry(self, i: int, j: int) -> int:
        return self.rule.get((i % self.period, j - i), 0)

    def window(self, lo: int, hi: int) -> ExchangeMatrix:
        """Finite submatrix on indices lo..hi inclusive."""
        idx = range(lo, hi + 1)
        entries = {}
        for i in idx:
            for off in range(-self.band, self.band + 1):
                j = i + off
                if lo <= j <= hi:
                    v = self.entry(i, j)
                    if v:
                        entries[(i, j)] = v
        return ExchangeMatrix(idx, entries, check=False)

    def symbol_matrix(self) -> "list[list[dict[int, int]]]":
        """p x p matrix of univariate Laurent polynomials {power: coeff}.

        Entry (r, s) collects b_{r, s + p m} as the coefficient of z^m.  A
        nonzero right kernel of this symbol certifies that no banded left
        inverse exists.
        """
        p = self.period
        out: list[list[dict[int, int]]] = [[{} for _ in range(p)] for _ in range(p)]
        for (cls, off), v in self.rule.items():
            j = cls + off
            m, s = divmod(j, p)
            out[cls][s][m] = out[cls][s].get(m, 0) + v
        return out

    def to_json(self) -> dict:
        rule = sorted([cls, off, v] for (cls, off), v in self.rule.items())
        return {
            "kind": "periodic_banded",
            "period": self.period,
            "band": self.band,
            "rule": rule,
        }


def matrix_from_json(data: dict) -> "ExchangeMatrix | PeriodicBandedMatrix":
    kind = data.get("kind")
    if kind == "finite":
        n = int(data["n"])
        indices = tuple(data.get("indices", range(n)))
        entries = {(int(i), int(j)): int(v) for i, j, v in data["entries"]}
        return ExchangeMatrix(indices, entries)
    if kind == "periodic_banded":
        rule = {(int(c), int(o)): int(v) for c, o, v in data["rule"]}
        return PeriodicBandedMatrix(int(data["period"]), int(data["band"]), rule)
    raise ValueError(f"unknown matrix kind {kind!r}")


def load_matrix(path: str) -> "ExchangeMatrix | PeriodicBandedMatrix":
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# Named matrices
# ---------------------------------------------------------------------------


def a2_matrix() -> ExchangeMatrix:
    """Rank-2 matrix [[0,1],[-1,0]] (finite type, 5-periodic mutation)."""
    return ExchangeMatrix.from_dense([[0, 1], [-1, 0]])


def somos4_matrix() -> ExchangeMatrix:
    """The rank-4 quiver whose mutation sequence 1,2,3,4,... generates Somos-4."""
    return ExchangeMatrix.from_dense(
        [
            [0, -1, 2, -1],
            [1, 0, -3, 2],
            [-2, 3, 0, -1],
            [1, -2, 1, 0],
        ]
    )


def lv_matrix() -> PeriodicBandedMatrix:
    """Infinite 3-periodic band-3 quiver of the lattice Lotka-Volterra flow."""
    rule = {
        (0, 1): 1,
        (0, -1): 1,
        (0, 2): -1,
        (0, -2): -1,
        (1, 1): 1,
        (1, 2): 1,
        (1, -3): 1,
        (1, -1): -1,
        (1, -2): -1,
        (1, 3): -1,
        (2, 1): -1,
        (2, -1): -1,
        (2, 2): 1,
        (2, -2): 1,
    }
    return PeriodicBandedMatrix(3, 3, rule)


def lv_periodic_matrix(m: int) -> ExchangeMatrix:
    """The 3m x 3m closure of the Lotka-Volterra quiver (indices mod 3m)."""
    if m <= 2:
        raise ValueError("periodic closure needs m > 2")
    n = 3 * m
    rule = lv_matrix().rule
    entries: dict[tuple[int, int], int] = {}
    for i in range(n):
        for (cls, off), v in rule.items():
            if i % 3 == cls:
                j = (i + off) % n
                entries[(i, j)] = entries.get((i, j), 0) + v
    entries = {k: v for k, v in entries.items() if v}
    return ExchangeMatrix(range(n), entries)


def alternating_chain_matrix() -> PeriodicBandedMatrix:
    """Infinite chain b_ij = (-1)^i (delta_{i,j+1} + delta_{i,j-1})."""
    rule = {(0, 1): 1, (0, -1): 1, (1, 1): -1, (1, -1): -1}
    return PeriodicBandedMatrix(2, 1, rule)


def liouville_even_matrix(m: int) -> ExchangeMatrix:
    """Affine A-type cyclic quiver on 2m vertices for the even-site lattice."""
    if m < 2:
        raise ValueError("need m >= 2 (at least 4 vertices)")
    n = 2 * m
    entries: dict[tuple[int, int], int] = {}
    for k in range(m):
        i = 2 * k
        entries[(i, (i - 1) % n)] = -1
        entries[(i, (i + 1) % n)] = entries.get((i, (i + 1) % n), 0) - 1
        j = 2 * k + 1
        entries[(j, (j - 1) % n)] = 1
        entries[(j, (j + 1) % n)] = entries.get((j, (j + 1) % n), 0) + 1
    entries = {k: v for k, v in entries.items() if v}
    return ExchangeMatrix(range(n), entries)


def liouville_odd_matrix(m: int) -> ExchangeMatrix:
    """Doubled cyclic quiver on 2(2m+1) vertices for the odd-site lattice.

    Each lattice site i carries two vertices: (i,+) at 2i and (i,-) at 2i+1,
    with site indices taken mod N = 2m+1.
    """
    if m < 1:
        raise ValueError("need m >= 1 (at least 3 sites)")
    N = 2 * m + 1
    entries: dict[tuple[int, int], int] = {}

    def plus(i: int) -> int:
        return 2 * (i % N)

    def minus(i: int) -> int:
        return 2 * (i % N) + 1

    for k in range(N):
        entries[(plus(k), minus(k - 1))] = entries.get((plus(k), minus(k - 1)), 0) - 1
        entries[(plus(k), minus(k + 1))] = entries.get((plus(k), minus(k + 1)), 0) - 1
        entries[(minus(k), plus(k + 1))] = entries.get((minus(k), plus(k + 1)), 0) + 1
        entries[(minus(k), plus(k - 1))] = entries.get((minus(k), plus(k - 1)), 0) + 1
    entries = {k: v for k, v in entries.items() if v}
    return ExchangeMatrix(range(2 * N), entries)


def named_matrix(name: str, m: int | None = None) -> "ExchangeMatrix | PeriodicBandedMatrix":
    name = name.lower()
    if name == "a2":
        return a2_matrix()
    if name == "somos4":
        return somos4_matrix()
    if name == "lv":
        return lv_matrix()
    if name == "example37":
        return alternating_chain_matrix()
    if name == "liouville-even":
        if m is None:
            raise ValueError("liouville-even needs --m")
        return liouville_even_matrix(m)
    if name == "liouville-odd":
        if m is None:
            raise ValueError("liouville-odd needs --m")
        return liouville_odd_matrix(m)
    raise ValueError(f"unknown named matrix {name!r}")


NAMED_MATRICES = ("a2", "somos4", "lv", "liouville-even", "liouville-odd", "example37")
