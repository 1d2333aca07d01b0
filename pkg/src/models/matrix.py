"""
Dense matrices over one exact ring.

Supported rings: "int", "rat" (Fraction), "qsqrt2" (QSqrt2) and "poly"
(MultiPoly). Entries are stored row-major and never mutated.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

from src.models.polynomial import MultiPoly
from src.models.scalars import QSqrt2, format_rat, rat_from_json, rat_to_json, to_rat
from src.utils.errors import ArityMismatchError, EncodingError, NotSquareError

RINGS = ("int", "rat", "qsqrt2", "poly")


def infer_ring(entries: Sequence[Any]) -> str:
    """Smallest ring holding every entry."""
    if any(isinstance(e, MultiPoly) for e in entries):
        return "poly"
    if any(isinstance(e, QSqrt2) for e in entries):
        return "qsqrt2"
    if any(isinstance(e, Fraction) and e.denominator != 1 for e in entries):
        return "rat"
    return "int"


def _coerce(value: Any, ring: str, arity: Optional[int]) -> Any:
    if ring == "int":
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"Non-integer entry {value} in an integer matrix")
            return value.numerator
        return int(value)
    if ring == "rat":
        return to_rat(value)
    if ring == "qsqrt2":
        return QSqrt2.of(value)
    if isinstance(value, MultiPoly):
        return value
    return MultiPoly.constant(to_rat(value), arity or 1)


class ExactMatrix:
    """Rectangular matrix with entries from a single exact ring."""

    __slots__ = ("rows", "cols", "ring", "_entries", "header")

    def __init__(
        self,
        rows: Sequence[Sequence[Any]],
        ring: Optional[str] = None,
        header: Optional[Mapping[str, Any]] = None,
    ):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("Matrices must have at least one row and one column")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("Matrix rows must all have the same length")
        flat = [e for r in rows for e in r]
        ring = ring or infer_ring(flat)
        if ring not in RINGS:
            raise ValueError(f"Unknown ring '{ring}', expected one of {RINGS}")
        arity = None
        if ring == "poly":
            arities = {e.arity for e in flat if isinstance(e, MultiPoly)}
            if len(arities) > 1:
                a, b = sorted(arities)[:2]
                raise ArityMismatchError(a, b, "polynomial matrix entries")
            arity = arities.pop() if arities else 1
        self.rows = len(rows)
        self.cols = width
        self.ring = ring
        self._entries = tuple(tuple(_coerce(e, ring, arity) for e in r) for r in rows)
        self.header = dict(header or {})

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_function(cls, size: int, entry: Callable[[int, int], Any], ring: Optional[str] = None,
                      header: Optional[Mapping[str, Any]] = None) -> "ExactMatrix":
        return cls([[entry(i, j) for j in range(size)] for i in range(size)], ring, header)

    @classmethod
    def identity(cls, size: int, ring: str = "int") -> "ExactMatrix":
        return cls.from_function(size, lambda i, j: 1 if i == j else 0, ring)

    # ---- access -------------------------------------------------------

    def __getitem__(self, index) -> Any:
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> List[Any]:
        return list(self._entries[i])

    def to_rows(self) -> List[List[Any]]:
        return [list(r) for r in self._entries]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def require_square(self) -> None:
        if not self.is_square():
            raise NotSquareError(self.rows, self.cols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self._entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                           self.ring, self.header)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._entries[i][j] == self._entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def leading_block(self, size: int) -> "ExactMatrix":
        """Top-left size x size submatrix."""
        return ExactMatrix([r[:size] for r in self._entries[:size]], self.ring)

    def map(self, fn: Callable[[Any], Any], ring: Optional[str] = None) -> "ExactMatrix":
        return ExactMatrix([[fn(e) for e in r] for r in self._entries], ring, self.header)

    def zero(self) -> Any:
        sample = self._entries[0][0]
        return sample - sample

    def one(self) -> Any:
        if self.ring == "int":
            return 1
        if self.ring == "rat":
            return Fraction(1)
        if self.ring == "qsqrt2":
            return QSqrt2.one()
        return MultiPoly.one(self._entries[0][0].arity)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        rows = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self._entries[i][0] * other._entries[0][j]
                for t in range(1, self.cols):
                    acc = acc + self._entries[i][t] * other._entries[t][j]
                row.append(acc)
            rows.append(row)
        return ExactMatrix(rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, ring={self.ring})"

    # ---- serialization ------------------------------------------------

    def format_entry(self, value: Any, names: Optional[Sequence[str]] = None) -> str:
        if self.ring == "poly":
            return value.format(names)
        if self.ring == "rat":
            return format_rat(value)
        return str(value)

    def to_dict(self) -> Dict[str, Any]:
        def encode(value: Any) -> Any:
            if self.ring == "int":
                return str(value)
            if self.ring == "rat":
                return rat_to_json(value)
            return value.to_dict()

        data: Dict[str, Any] = {
            "rows": self.rows,
            "cols": self.cols,
            "ring": self.ring,
            "entries": [[encode(e) for e in r] for r in self._entries],
        }
        if self.header:
            data["header"] = dict(self.header)
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExactMatrix":
        ring = data["ring"]
        if ring not in RINGS:
            raise ValueError(f"Unknown ring '{ring}', expected one of {RINGS}")

        def decode(value: Any) -> Any:
            if ring == "int":
                return int(value)
            if ring == "rat":
                return rat_from_json(value) if isinstance(value, Mapping) else to_rat(value)
            if ring == "qsqrt2":
                return QSqrt2.from_dict(value)
            return MultiPoly.from_dict(value)

        try:
            rows = [[decode(e) for e in r] for r in data["entries"]]
        except EncodingError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise EncodingError(f"Invalid {ring} matrix entries: {e}") from e
        if len(rows) != int(data["rows"]) or any(len(r) != int(data["cols"]) for r in rows):
            raise ValueError("Matrix shape does not match its rows/cols fields")
        return cls(rows, ring, data.get("header"))
