"""
Core data models for numeric translation checking.

This module defines the structures shared by the parsers, the formatter,
the verifier and the evaluation harness:
- CanonicalNumeral: language-neutral meaning of a numeric expression
- SpannedExpression: a numeric expression located in a sentence
- NumericPair / Verdict / PostEditReport: post-editing results
- DatasetItem / EvalResult: pass-rate evaluation
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .numeral import NumericValue

Number = Union[int, str, NumericValue]


class NumericType(Enum):
    """The ten kinds of numeric expression."""
    LARGE_UNIT = "large_unit"
    RANGE = "range"
    DECIMAL = "decimal"
    NUMBER_STRING = "number_string"
    FRACTION = "fraction"
    RATIO = "ratio"
    NEGATIVE_NUMBER = "negative_number"
    FORMULA = "formula"
    ORDINAL = "ordinal"
    SPECIAL = "special"

    @property
    def is_scalar(self) -> bool:
        """Single signed value, whatever the spelling."""
        return self in (NumericType.LARGE_UNIT, NumericType.DECIMAL, NumericType.NEGATIVE_NUMBER)


class Measure(Enum):
    """Measure tags carried by Special numerals."""
    FOLD = "fold"
    MEGAPIXEL = "megapixel"


class Language(Enum):
    EN = "en"
    ZH = "zh"


class Direction(Enum):
    """Translation direction."""
    EN_ZH = "en-zh"
    ZH_EN = "zh-en"

    @property
    def source(self) -> Language:
        return Language.EN if self is Direction.EN_ZH else Language.ZH

    @property
    def target(self) -> Language:
        return Language.ZH if self is Direction.EN_ZH else Language.EN

    @property
    def label(self) -> str:
        return "EN→ZH" if self is Direction.EN_ZH else "ZH→EN"

    @classmethod
    def parse(cls, text: str) -> "Direction":
        """Accept 'en-zh', 'EN→ZH', 'en2zh' and similar spellings."""
        key = text.strip().lower()
        for separator in ("→", "->", "2", "_", " "):
            key = key.replace(separator, "-")
        for direction in cls:
            if direction.value == key:
                return direction
        raise ValueError(f"unknown direction: {text!r}")


OPERATORS = ("+", "-", "*", "/")


@dataclass(frozen=True, eq=False)
class CanonicalNumeral:
    """Language-neutral meaning of a numeric expression.

    Equality ignores the scalar tag: Decimal, LargeUnit and NegativeNumber are
    the same kind of thing (one signed value) spelled differently.
    """

    type: NumericType
    values: Tuple[NumericValue, ...] = ()
    literal: Optional[str] = None
    measure: Optional[Measure] = None
    operators: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "operators", tuple(self.operators))
        self._validate()
        if self.type is NumericType.RANGE and self.values[1] < self.values[0]:
            object.__setattr__(self, "values", (self.values[1], self.values[0]))

    def _validate(self):
        kind = self.type
        count = len(self.values)
        if kind is NumericType.NUMBER_STRING:
            if not self.literal or count:
                raise ValueError("number strings carry a literal and no values")
            return
        if self.literal is not None:
            raise ValueError(f"{kind.value} must not carry a literal")
        if count == 0:
            raise ValueError(f"{kind.value} needs at least one value")
        if kind.is_scalar or kind in (NumericType.ORDINAL, NumericType.SPECIAL):
            if count != 1:
                raise ValueError(f"{kind.value} carries exactly one value")
        if kind in (NumericType.RANGE, NumericType.RATIO, NumericType.FRACTION) and count != 2:
            raise ValueError(f"{kind.value} carries exactly two values")
        if kind is NumericType.FRACTION and self.values[1].is_zero:
            raise ValueError("fraction denominator must be nonzero")
        if kind is NumericType.ORDINAL and (self.values[0].is_negative or not self.values[0].is_integer()):
            raise ValueError("ordinals are non-negative integers")
        if (kind is NumericType.SPECIAL) != (self.measure is not None):
            raise ValueError("a measure is carried by Special numerals only")
        if kind is NumericType.FORMULA:
            if count < 2 or len(self.operators) != count - 1:
                raise ValueError("formulas need n operands and n-1 operators")
            unknown = set(self.operators) - set(OPERATORS)
            if unknown:
                raise ValueError(f"unknown formula operators: {sorted(unknown)}")
        elif self.operators:
            raise ValueError("operators are carried by formulas only")

    # Constructors

    @classmethod
    def scalar(cls, value: Number, large_unit: bool = False) -> "CanonicalNumeral":
        """A single value, tagged from its spelling."""
        value = NumericValue.of(value)
        if value.is_negative:
            kind = NumericType.NEGATIVE_NUMBER
        elif large_unit:
            kind = NumericType.LARGE_UNIT
        else:
            kind = NumericType.DECIMAL
        return cls(kind, (value,))

    @classmethod
    def number_string(cls, literal: str) -> "CanonicalNumeral":
        return cls(NumericType.NUMBER_STRING, literal=literal)

    @classmethod
    def fraction(cls, numerator: Number, denominator: Number) -> "CanonicalNumeral":
        return cls(NumericType.FRACTION, (NumericValue.of(numerator), NumericValue.of(denominator)))

    @classmethod
    def ratio(cls, left: Number, right: Number) -> "CanonicalNumeral":
        return cls(NumericType.RATIO, (NumericValue.of(left), NumericValue.of(right)))

    @classmethod
    def range(cls, low: Number, high: Number) -> "CanonicalNumeral":
        return cls(NumericType.RANGE, (NumericValue.of(low), NumericValue.of(high)))

    @classmethod
    def ordinal(cls, n: Number) -> "CanonicalNumeral":
        return cls(NumericType.ORDINAL, (NumericValue.of(n),))

    @classmethod
    def special(cls, value: Number, measure: Measure) -> "CanonicalNumeral":
        return cls(NumericType.SPECIAL, (NumericValue.of(value),), measure=measure)

    @classmethod
    def formula(cls, operands: Sequence[Number], operators: Sequence[str]) -> "CanonicalNumeral":
        return cls(NumericType.FORMULA, tuple(NumericValue.of(o) for o in operands),
                   operators=tuple(operators))

    # Identity

    @property
    def family(self) -> str:
        return "scalar" if self.type.is_scalar else self.type.value

    def identity(self) -> Tuple[Any, ...]:
        return (self.family, self.values, self.literal, self.measure, self.operators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CanonicalNumeral):
            return NotImplemented
        return self.identity() == other.identity()

    def __hash__(self) -> int:
        return hash(self.identity())

    @property
    def value(self) -> NumericValue:
        """The single value of a scalar, ordinal or special numeral."""
        return self.values[0]

    def __str__(self) -> str:
        if self.type is NumericType.NUMBER_STRING:
            return f"number_string({self.literal!r})"
        if self.type is NumericType.FORMULA:
            body = str(self.values[0])
            for op, operand in zip(self.operators, self.values[1:]):
                body += f" {op} {operand}"
        elif self.type is NumericType.FRACTION:
            body = f"{self.values[0]}/{self.values[1]}"
        elif self.type is NumericType.RATIO:
            body = f"{self.values[0]}:{self.values[1]}"
        else:
            body = ", ".join(str(v) for v in self.values)
        if self.measure is not None:
            body += f" {self.measure.value}"
        return f"{self.type.value}({body})"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"type": self.type.value, "values": [str(v) for v in self.values]}
        if self.literal is not None:
            data["literal"] = self.literal
        if self.measure is not None:
            data["measure"] = self.measure.value
        if self.operators:
            data["operators"] = list(self.operators)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CanonicalNumeral":
        measure = data.get("measure")
        return cls(
            NumericType(data["type"]),
            tuple(NumericValue.of(v) for v in data.get("values", [])),
            literal=data.get("literal"),
            measure=Measure(measure) if measure else None,
            operators=tuple(data.get("operators", [])),
        )


@dataclass(frozen=True)
class Span:
    """Half-open character interval [start, end)."""
    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def slice(self, text: str) -> str:
        return text[self.start:self.end]

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class SpannedExpression:
    """A numeric expression found in a sentence.

    Rule-based scans always fill span and canonical. Expressions reported by
    an LLM extractor may lack either when the surface cannot be located or
    parsed; error then says why.
    """
    span: Optional[Span]
    surface: str
    canonical: Optional[CanonicalNumeral]
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "span": [self.span.start, self.span.end] if self.span else None,
            "surface": self.surface,
            "canonical": self.canonical.to_dict() if self.canonical else None,
            "error": self.error,
        }


class VerdictKind(Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    OMITTED = "omitted"
    SPURIOUS = "spurious"
    UNVERIFIABLE = "unverifiable"


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking one numeric pair."""
    kind: VerdictKind
    expected: Optional[CanonicalNumeral] = None
    reason: Optional[str] = None

    @classmethod
    def match(cls) -> "Verdict":
        return cls(VerdictKind.MATCH)

    @classmethod
    def mismatch(cls, expected: CanonicalNumeral) -> "Verdict":
        return cls(VerdictKind.MISMATCH, expected=expected)

    @classmethod
    def omitted(cls) -> "Verdict":
        return cls(VerdictKind.OMITTED)

    @classmethod
    def spurious(cls) -> "Verdict":
        return cls(VerdictKind.SPURIOUS)

    @classmethod
    def unverifiable(cls, reason: str) -> "Verdict":
        return cls(VerdictKind.UNVERIFIABLE, reason=reason)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value}
        if self.expected is not None:
            data["expected"] = self.expected.to_dict()
        if self.reason is not None:
            data["reason"] = self.reason
        return data


@dataclass(frozen=True)
class NumericPair:
    """Aligned source and target expressions."""
    source: Optional[SpannedExpression]
    target: Optional[SpannedExpression]
    verdict: Optional[Verdict] = None

    def __post_init__(self):
        if self.source is None and self.target is None:
            raise ValueError("a pair needs at least one side")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source.to_dict() if self.source else None,
            "target": self.target.to_dict() if self.target else None,
            "verdict": self.verdict.to_dict() if self.verdict else None,
        }


@dataclass
class PostEditReport:
    """Result of post-editing one translation."""
    edited: str
    pairs: List[NumericPair] = field(default_factory=list)
    edit_count: int = 0
    unresolved: int = 0

    def count(self, kind: VerdictKind) -> int:
        return sum(1 for p in self.pairs if p.verdict is not None and p.verdict.kind is kind)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "edited": self.edited,
            "pairs": [p.to_dict() for p in self.pairs],
            "edit_count": self.edit_count,
            "unresolved": self.unresolved,
        }


@dataclass(frozen=True)
class TargetEntry:
    """One numeric span of a dataset source with its acceptable renderings."""
    span: Span
    references: Tuple[str, ...]


@dataclass(frozen=True)
class DatasetItem:
    """One evaluation sentence."""
    id: str
    direction: Direction
    type: NumericType
    source: str
    targets: Tuple[TargetEntry, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "direction": self.direction.value,
            "type": self.type.value,
            "source": self.source,
            "targets": [
                {"span": [t.span.start, t.span.end], "references": list(t.references)}
                for t in self.targets
            ],
        }


@dataclass(frozen=True)
class JudgeResult:
    """Pass/fail for one item; unmet lists indices of unmatched target entries."""
    item_id: str
    passed: bool
    unmet: Tuple[int, ...] = ()
    details: Tuple[str, ...] = ()


@dataclass
class TypeTally:
    passed: int = 0
    total: int = 0

    @property
    def rate(self) -> Fraction:
        return Fraction(self.passed, self.total) if self.total else Fraction(0)


@dataclass
class EvalResult:
    """Pass-rate ledger. Rates are exact fractions; floats only at display."""
    per_type: Dict[Tuple[Direction, NumericType], TypeTally] = field(default_factory=dict)
    verdicts: Dict[str, JudgeResult] = field(default_factory=dict)
    passed: int = 0
    total: int = 0

    @property
    def overall(self) -> Fraction:
        return Fraction(self.passed, self.total) if self.total else Fraction(0)

    def direction_tally(self, direction: Direction) -> TypeTally:
        tally = TypeTally()
        for (d, _), t in self.per_type.items():
            if d is direction:
                tally.passed += t.passed
                tally.total += t.total
        return tally
