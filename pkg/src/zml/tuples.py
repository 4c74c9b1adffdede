"""Index tuples for the first-half and two-half residue functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = ["HalfTuple", "FullTuple", "canonical", "parse_tuple"]


def canonical(entries: Iterable[int]) -> tuple[int, ...]:
    """Sorted descending, zeros dropped."""
    out = sorted((int(e) for e in entries if e), reverse=True)
    if out and out[-1] < 0:
        raise ValueError("tuple entries must be non-negative")
    return tuple(out)


@dataclass(frozen=True)
class HalfTuple:
    """lambda in Z_{>=0}^k stored as its canonical multiset of nonzero entries."""

    k: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.entries):
            raise ValueError("tuple entries must be non-negative")
        ent = canonical(self.entries)
        if len(ent) > self.k:
            raise ValueError(f"{len(ent)} nonzero entries do not fit in k={self.k} slots")
        object.__setattr__(self, "entries", ent)

    @property
    def weight(self) -> int:
        return sum(self.entries)

    @property
    def support(self) -> int:
        return len(self.entries)

    def padded(self) -> tuple[int, ...]:
        return self.entries + (0,) * (self.k - len(self.entries))

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class FullTuple:
    """alpha in Z_{>=0}^{2k}: first half alpha_1..alpha_k, second half the rest."""

    k: int
    entries: tuple[int, ...]

    def __post_init__(self):
        ent = tuple(int(e) for e in self.entries)
        if self.k < 1:
            raise ValueError("k must be positive")
        if len(ent) != 2 * self.k:
            raise ValueError(f"expected {2 * self.k} entries, got {len(ent)}")
        if any(e < 0 for e in ent):
            raise ValueError("tuple entries must be non-negative")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_halves(cls, k: int, first: Sequence[int], second: Sequence[int] = ()) -> "FullTuple":
        if len(first) > k or len(second) > k:
            raise ValueError(f"halves longer than k={k}")
        f = tuple(first) + (0,) * (k - len(first))
        s = tuple(second) + (0,) * (k - len(second))
        return cls(k, f + s)

    @property
    def first(self) -> tuple[int, ...]:
        return self.entries[: self.k]

    @property
    def second(self) -> tuple[int, ...]:
        return self.entries[self.k :]

    @property
    def weight(self) -> int:
        return sum(self.entries)

    @property
    def support(self) -> int:
        return sum(1 for e in self.entries if e)

    def swapped(self) -> "FullTuple":
        return FullTuple(self.k, self.second + self.first)

    def __str__(self):
        return ",".join(map(str, canonical(self.first))) + ";" + ",".join(map(str, canonical(self.second)))


def parse_tuple(text: str) -> tuple[tuple[int, ...], tuple[int, ...] | None]:
    """Parse "2,2,1;2,1" into halves; the second half is None without ';'."""
    text = text.strip().strip("()")

    def part(s: str) -> tuple[int, ...]:
        s = s.strip()
        if not s:
            return ()
        try:
            vals = tuple(int(v) for v in s.split(","))
        except ValueError:
            raise ValueError(f"bad tuple entry in {s!r}") from None
        if any(v < 0 for v in vals):
            raise ValueError("tuple entries must be non-negative")
        return vals

    if ";" in text:
        a, b = text.split(";", 1)
        return part(a), part(b)
    return part(text), None
