"""Digit streams on Baire space: ultimately periodic values, lazy views,
the pairing bijection and the tensor/projection coding built on it."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

__all__ = [
    "pair",
    "unpair",
    "UPStream",
    "StreamView",
    "DyadicDistance",
    "ProjectionSpectrum",
    "project",
    "projection_spectrum",
    "tensor_view",
    "lcp",
    "distance",
    "zeros",
    "constant",
]


def pair(n: int, m: int) -> int:
    """Return ``2**n * (2*m + 1) - 1``, a bijection from pairs onto naturals."""
    if n < 0 or m < 0:
        raise ValueError("pair() takes natural numbers")
    return (1 << n) * (2 * m + 1) - 1


def unpair(k: int) -> tuple[int, int]:
    """Inverse of :func:`pair`; ``n`` is the 2-adic valuation of ``k + 1``."""
    if k < 0:
        raise ValueError("unpair() takes a natural number")
    k1 = k + 1
    n = (k1 & -k1).bit_length() - 1
    return n, ((k1 >> n) - 1) // 2


def _check_digits(seq: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(d) for d in seq)
    for d in out:
        if d < 0:
            raise ValueError(f"digits must be natural numbers, got {d}")
    return out


def _min_period(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for p in range(1, n + 1):
        if n % p == 0 and period[:p] * (n // p) == period:
            return period[:p]
    return period


@dataclass(frozen=True)
class UPStream:
    """An ultimately periodic sequence ``prefix + period + period + ...``.

    Instances are always canonical (shortest period, then shortest prefix),
    so ``==`` and ``hash`` decide equality of the denoted infinite sequences.
    """

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __init__(self, prefix: Sequence[int] = (), period: Sequence[int] = (0,)):
        pre = list(_check_digits(prefix))
        per = _check_digits(period)
        if not per:
            raise ValueError("period must be nonempty")
        per = list(_min_period(per))
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        object.__setattr__(self, "prefix", tuple(pre))
        object.__setattr__(self, "period", tuple(per))

    def __getitem__(self, i: int) -> int:
        return self.at(i)

    def at(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative index")
        p = len(self.prefix)
        if i < p:
            return self.prefix[i]
        return self.period[(i - p) % len(self.period)]

    def take(self, n: int) -> list[int]:
        return [self.at(i) for i in range(n)]

    def __iter__(self) -> Iterator[int]:
        yield from self.prefix
        while True:
            yield from self.period

    def shift(self, n: int) -> "UPStream":
        """The stream with its first ``n`` digits dropped."""
        p = len(self.prefix)
        if n <= p:
            return UPStream(self.prefix[n:], self.period)
        r = (n - p) % len(self.period)
        return UPStream((), self.period[r:] + self.period[:r])

    def prepend(self, digits: Sequence[int]) -> "UPStream":
        return UPStream(tuple(digits) + self.prefix, self.period)

    def unroll(self, prefix_len: int, repeats: int = 1) -> tuple[list[int], list[int]]:
        """A non-canonical (prefix, period) presentation with a longer prefix."""
        prefix_len = max(prefix_len, len(self.prefix))
        return self.take(prefix_len), self.shift(prefix_len).take(len(self.period) * repeats)

    @property
    def horizon(self) -> int:
        """Number of digits after which the stream is purely periodic."""
        return len(self.prefix)

    def view(self) -> "StreamView":
        return StreamView(self.at)

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "period": list(self.period)}

    @classmethod
    def from_json(cls, data) -> "UPStream":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data.get("prefix", []), data["period"])

    def __repr__(self) -> str:
        pre = ",".join(map(str, self.prefix))
        per = ",".join(map(str, self.period))
        return f"UPStream([{pre}]({per})^w)"


def zeros() -> UPStream:
    return UPStream((), (0,))


def constant(d: int) -> UPStream:
    return UPStream((), (d,))


class StreamView:
    """Lazy infinite stream given by a digit function; reads are memoized."""

    def __init__(self, fn: Callable[[int], int]):
        self._fn = fn
        self._cache: dict[int, int] = {}

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative index")
        try:
            return self._cache[i]
        except KeyError:
            d = self._cache[i] = int(self._fn(i))
            return d

    at = __getitem__

    def take(self, n: int) -> list[int]:
        return [self[i] for i in range(n)]

    @classmethod
    def of(cls, x: "UPStream | StreamView | Sequence[int] | Callable[[int], int]") -> "StreamView":
        if isinstance(x, StreamView):
            return x
        if isinstance(x, UPStream):
            return cls(x.at)
        if callable(x):
            return cls(x)
        raise TypeError(f"cannot view {type(x).__name__} as an infinite stream")


@dataclass(frozen=True)
class DyadicDistance:
    """Either 0 or ``2**-exponent``; ``exponent is None`` encodes 0."""

    exponent: int | None

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def _key(self) -> float:
        return 0.0 if self.exponent is None else 2.0 ** (-self.exponent)

    def scaled(self, k: int) -> "DyadicDistance":
        """Multiply by ``2**k``."""
        if self.exponent is None:
            return self
        return DyadicDistance(self.exponent - k)

    def __le__(self, other: "DyadicDistance") -> bool:  # type: ignore[override]
        if self.exponent is None:
            return True
        if other.exponent is None:
            return False
        return self.exponent >= other.exponent

    def __lt__(self, other: "DyadicDistance") -> bool:  # type: ignore[override]
        return self <= other and self != other

    def __ge__(self, other: "DyadicDistance") -> bool:  # type: ignore[override]
        return other <= self

    def __gt__(self, other: "DyadicDistance") -> bool:  # type: ignore[override]
        return other < self

    def __repr__(self) -> str:
        return "0" if self.exponent is None else f"2^-{self.exponent}"


def lcp(x: UPStream, y: UPStream) -> int | None:
    """Index of the first disagreement, or ``None`` when ``x == y``."""
    if x == y:
        return None
    lp = max(len(x.prefix), len(y.prefix))
    lx, ly = len(x.period), len(y.period)
    bound = lp + lx * ly // gcd(lx, ly)
    for i in range(bound):
        if x.at(i) != y.at(i):
            return i
    raise AssertionError("distinct canonical streams must differ before the bound")


def distance(x: UPStream, y: UPStream) -> DyadicDistance:
    return DyadicDistance(lcp(x, y))


def project(x: UPStream, n: int) -> UPStream:
    """The n-th projection: digit m is ``x[pair(n, m)]``."""
    start = (1 << n) - 1
    step = 1 << (n + 1)
    p, L = len(x.prefix), len(x.period)
    pre: list[int] = []
    m = 0
    while start + m * step < p:
        pre.append(x.prefix[start + m * step])
        m += 1
    base = (start + m * step - p) % L
    s = step % L
    per_len = L // gcd(s, L) if s else 1
    per = [x.period[(base + j * s) % L] for j in range(per_len)]
    return UPStream(pre, per)


@dataclass(frozen=True)
class ProjectionSpectrum:
    """All projections of one stream, finitely presented.

    ``stream(n)`` is ``head[n]`` for ``n < len(head)`` and otherwise
    ``cycle[(n - len(head)) % len(cycle)]``.
    """

    head: tuple[UPStream, ...]
    cycle: tuple[UPStream, ...]

    def stream(self, n: int) -> UPStream:
        h = len(self.head)
        if n < h:
            return self.head[n]
        return self.cycle[(n - h) % len(self.cycle)]

    __getitem__ = stream

    @property
    def start(self) -> int:
        return len(self.head)

    @property
    def distinct(self) -> list[UPStream]:
        seen: dict[UPStream, None] = {}
        for s in self.head + self.cycle:
            seen.setdefault(s)
        return list(seen)


def projection_spectrum(x: UPStream) -> ProjectionSpectrum:
    """Present every projection of ``x`` via an eventually periodic index map.

    Once ``2**n - 1 >= len(prefix)`` the n-th projection only depends on
    ``2**n mod len(period)``, and powers of two are eventually periodic
    modulo any number.
    """
    p, L = len(x.prefix), len(x.period)
    n0 = 0
    while (1 << n0) - 1 < p:
        n0 += 1
    head = [project(x, n) for n in range(n0)]
    seen: dict[int, int] = {}
    residues: list[int] = []
    n = n0
    r = pow(2, n0, L)
    while r not in seen:
        seen[r] = n
        residues.append(r)
        n += 1
        r = (r * 2) % L
    first = seen[r]
    head += [project(x, k) for k in range(n0, first)]
    cycle = [project(x, k) for k in range(first, n)]
    return ProjectionSpectrum(tuple(head), tuple(cycle))


def tensor_view(rows: "Callable[[int], StreamView | UPStream] | Sequence") -> StreamView:
    """The coded stream whose digit ``pair(n, m)`` is digit ``m`` of row ``n``."""
    if callable(rows):
        get = rows
    else:
        get = rows.__getitem__

    @lru_cache(maxsize=None)
    def row(n: int) -> StreamView:
        return StreamView.of(get(n))

    def digit(k: int) -> int:
        n, m = unpair(k)
        return row(n)[m]

    return StreamView(digit)
