import threading
from dataclasses import dataclass
from typing import List, Union

from ..exceptions import ParameterError


class OutOfBounds:
    """
    Symbol returned for reads outside a string.

    It compares unequal to everything, itself included, so two out-of-bounds
    reads never match. Never put it in a container and use ``in`` or list
    equality: those short-circuit on identity.
    """

    __slots__ = ()

    def __eq__(self, other) -> bool:
        return False

    def __ne__(self, other) -> bool:
        return True

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return "<out-of-bounds>"


OUT_OF_BOUNDS = OutOfBounds()
# Separator of auxiliary strings, same no-match semantics
SEPARATOR = OutOfBounds()

Symbol = Union[int, OutOfBounds]


class ProbeCounter:
    """Thread-safe monotone counter of character reads"""

    def __init__(self):
        self._value = 0
        self._lock = threading.Lock()

    def add(self, amount: int = 1) -> None:
        with self._lock:
            self._value += amount

    @property
    def value(self) -> int:
        with self._lock:
            return self._value


class Text:
    """
    Immutable byte string whose every indexed read is counted.

    Oracles should use ``tobytes()``, which does not touch the counter.
    """

    def __init__(self, data: Union[bytes, bytearray, str], counter: ProbeCounter = None, label: str = "text"):
        if isinstance(data, str):
            data = data.encode("latin-1")
        self._data = bytes(data)
        self.counter = counter if counter is not None else ProbeCounter()
        self.label = label

    def __len__(self) -> int:
        return len(self._data)

    def __repr__(self) -> str:
        return f"Text({self.label}, n={len(self._data)}, probes={self.counter.value})"

    @property
    def probes(self) -> int:
        return self.counter.value

    def probe(self, i: int) -> Symbol:
        self.counter.add(1)
        if 0 <= i < len(self._data):
            return self._data[i]
        return OUT_OF_BOUNDS

    def read(self, lo: int, hi: int) -> List[Symbol]:
        """Read positions lo..hi-1, one probe each"""
        if hi <= lo:
            return []
        self.counter.add(hi - lo)
        n = len(self._data)
        if 0 <= lo and hi <= n:
            return list(self._data[lo:hi])
        return [self._data[i] if 0 <= i < n else OUT_OF_BOUNDS for i in range(lo, hi)]

    def fragment(self, lo: int, hi: int) -> "Fragment":
        return Fragment(self, lo, hi)

    def whole(self) -> "Fragment":
        return Fragment(self, 0, len(self._data))

    def tobytes(self) -> bytes:
        return self._data

    def uninstrumented(self) -> "Text":
        """Clone with a private counter"""
        return Text(self._data, label=self.label)


@dataclass(frozen=True)
class Fragment:
    """Half-open window parent[lo..hi); reads outside the window are out of bounds"""

    parent: Text
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi <= len(self.parent):
            raise ParameterError(
                f"fragment [{self.lo}..{self.hi}) outside text of length {len(self.parent)}"
            )

    def __len__(self) -> int:
        return self.hi - self.lo

    @property
    def counter(self) -> ProbeCounter:
        return self.parent.counter

    def probe(self, i: int) -> Symbol:
        if 0 <= i < self.hi - self.lo:
            return self.parent.probe(self.lo + i)
        self.parent.counter.add(1)
        return OUT_OF_BOUNDS

    def read(self, lo: int, hi: int) -> List[Symbol]:
        if hi <= lo:
            return []
        size = self.hi - self.lo
        inner_lo, inner_hi = max(lo, 0), min(hi, size)
        if inner_lo >= inner_hi:
            self.parent.counter.add(hi - lo)
            return [OUT_OF_BOUNDS] * (hi - lo)
        symbols = self.parent.read(self.lo + inner_lo, self.lo + inner_hi)
        head, tail = inner_lo - lo, hi - inner_hi
        if head or tail:
            self.parent.counter.add(head + tail)
            symbols = [OUT_OF_BOUNDS] * head + symbols + [OUT_OF_BOUNDS] * tail
        return symbols

    def fragment(self, lo: int, hi: int) -> "Fragment":
        if not 0 <= lo <= hi <= self.hi - self.lo:
            raise ParameterError(f"sub-fragment [{lo}..{hi}) outside fragment of length {len(self)}")
        return Fragment(self.parent, self.lo + lo, self.lo + hi)

    def tobytes(self) -> bytes:
        return self.parent.tobytes()[self.lo:self.hi]


# Anything the algorithms can read from
StringView = Union[Text, Fragment]


@dataclass(frozen=True)
class PeriodInfo:
    period: int
    prefix_len: int

    def __post_init__(self):
        if not 1 <= self.period <= self.prefix_len:
            raise ParameterError(f"period {self.period} outside [1..{self.prefix_len}]")
