"""Exact permutation algebra on the points {0..n-1}.

Permutations are stored as image tables: ``image[i]`` is where point ``i``
goes.  Composition follows the convention (p * q)(i) = p(q(i)), i.e. the
right factor acts first.  Everything here is exact integer arithmetic;
the determinant routine deliberately avoids the parity shortcut so it can
serve as an independent cross-check of ``signature``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

CycleType = tuple[int, ...]

DETERMINANT_SIZE_LIMIT = 256


class CostGuardError(ValueError):
    """An operation would exceed its resource guard."""


class Perm:
    """A bijection on {0..n-1}, immutable and hashable.

    The constructor validates bijectivity, so every live instance is a
    genuine permutation.  All operations return new objects.
    """

    __slots__ = ("_image",)

    def __init__(self, image: Iterable[int]):
        img = tuple(int(v) for v in image)
        n = len(img)
        if n == 0:
            raise ValueError("a permutation needs at least one point")
        seen = bytearray(n)
        for v in img:
            if not 0 <= v < n:
                raise ValueError(f"image value {v} outside 0..{n - 1}")
            if seen[v]:
                raise ValueError(f"image value {v} repeated; not a bijection")
            seen[v] = 1
        self._image = img

    @classmethod
    def identity(cls, n: int) -> "Perm":
        if n < 1:
            raise ValueError(f"invalid size {n}; need at least one point")
        return cls(range(n))

    @property
    def image(self) -> tuple[int, ...]:
        return self._image

    @property
    def n(self) -> int:
        return len(self._image)

    def __len__(self) -> int:
        return len(self._image)

    def __call__(self, point: int) -> int:
        return self._image[point]

    def __iter__(self) -> Iterator[int]:
        return iter(self._image)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self._image == other._image

    def __hash__(self) -> int:
        return hash(self._image)

    def __repr__(self) -> str:
        return f"Perm({list(self._image)})"

    def __mul__(self, other: "Perm") -> "Perm":
        """Compose: (self * other)(i) = self(other(i)); ``other`` acts first."""
        if len(self) != len(other):
            raise ValueError(
                f"size mismatch: cannot compose permutations on {len(self)} and {len(other)} points"
            )
        simg = self._image
        return Perm(simg[v] for v in other._image)

    def inverse(self) -> "Perm":
        inv = [0] * len(self._image)
        for i, v in enumerate(self._image):
            inv[v] = i
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._image))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self._image) if i == v)

    def cycles(self) -> list[list[int]]:
        """Disjoint cycles covering all points, fixed points included.

        Canonical form: each cycle starts at its minimal point and cycles
        are sorted by starting point (scanning points in order gives both).
        """
        img = self._image
        visited = bytearray(len(img))
        out: list[list[int]] = []
        for start in range(len(img)):
            if visited[start]:
                continue
            cycle = []
            j = start
            while not visited[j]:
                visited[j] = 1
                cycle.append(j)
                j = img[j]
            out.append(cycle)
        return out

    def _cycle_count(self) -> int:
        img = self._image
        visited = bytearray(len(img))
        count = 0
        for start in range(len(img)):
            if visited[start]:
                continue
            count += 1
            j = start
            while not visited[j]:
                visited[j] = 1
                j = img[j]
        return count

    def cycle_type(self) -> CycleType:
        """Multiset of cycle lengths, ascending, summing to n."""
        return tuple(sorted(len(c) for c in self.cycles()))

    def signature(self) -> int:
        """+1 for even permutations, -1 for odd.

        Computed as (-1)**(n - c) with c the number of cycles, fixed points
        included; each length-l cycle contributes l - 1 transpositions.
        """
        return -1 if (len(self._image) - self._cycle_count()) % 2 else 1

    def to_matrix(self) -> "PermMatrix":
        """Matrix with entries[j][i] = 1 exactly when this maps i to j."""
        inv = self.inverse()._image
        n = len(inv)
        rows = tuple(
            tuple(1 if i == inv[j] else 0 for i in range(n)) for j in range(n)
        )
        return PermMatrix(rows)


@dataclass(frozen=True)
class PermMatrix:
    """A 0/1 matrix with exactly one 1 per row and per column."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise ValueError("empty matrix")
        col_ones = [0] * n
        for row in self.entries:
            if len(row) != n:
                raise ValueError("matrix is not square")
            row_ones = 0
            for i, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"entry {v} is not 0 or 1")
                if v:
                    row_ones += 1
                    col_ones[i] += 1
            if row_ones != 1:
                raise ValueError("row does not contain exactly one 1")
        if any(c != 1 for c in col_ones):
            raise ValueError("column does not contain exactly one 1")

    @property
    def n(self) -> int:
        return len(self.entries)

    def pretty(self) -> str:
        """Rows of space-separated 0/1 digits."""
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)

    def csv(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.entries)

    def json_payload(self) -> dict:
        """Object with the size and a row-major entry list."""
        return {"n": self.n, "entries": [v for row in self.entries for v in row]}

    @classmethod
    def from_json_payload(cls, payload: dict) -> "PermMatrix":
        n = int(payload["n"])
        flat = [int(v) for v in payload["entries"]]
        if len(flat) != n * n:
            raise ValueError("entry list does not match the declared size")
        rows = tuple(tuple(flat[r * n : (r + 1) * n]) for r in range(n))
        return cls(rows)


def exact_determinant(matrix: PermMatrix, max_size: int = DETERMINANT_SIZE_LIMIT) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination.

    Runs general integer elimination rather than reading the sign off the
    permutation structure, so it stays an independent oracle for
    ``Perm.signature``.  Guarded to ``max_size`` because the cost is cubic.
    """
    n = matrix.n
    if n > max_size:
        raise CostGuardError(f"determinant guard: {n} > {max_size} rows")
    a = [list(row) for row in matrix.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot_row = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot_row is None:
                return 0
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]
