from __future__ import annotations

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, root_validator, validator


class PrimeFactorization(BaseModel):
    value: int
    factors: List[Tuple[int, int]] = Field(default_factory=list)  # (prime, exponent), primes increasing

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def product_matches(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        value, factors = values.get("value"), values.get("factors")
        if value < 1:
            raise ValueError("only positive integers have a prime factorization")
        product, previous = 1, 1
        for prime, exponent in factors:
            if prime <= previous or exponent < 1:
                raise ValueError(f"factor ({prime}, {exponent}) breaks the increasing-prime layout")
            product *= prime**exponent
            previous = prime
        if product != value:
            raise ValueError(f"factors multiply to {product}, not {value}")
        return values

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    @property
    def prime_powers(self) -> List[int]:
        return [p**a for p, a in self.factors]

    def exponent_of(self, prime: int) -> int:
        return dict(self.factors).get(prime, 0)


class BezoutCertificate(BaseModel):
    inputs: List[int]
    gcd: int
    coefficients: List[int]

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def identity_holds(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        inputs, gcd, coefficients = values.get("inputs"), values.get("gcd"), values.get("coefficients")
        if not inputs or len(inputs) != len(coefficients):
            raise ValueError("one coefficient per input is required")
        if gcd < 1 or any(q % gcd for q in inputs):
            raise ValueError(f"{gcd} is not a positive common divisor of {inputs}")
        if sum(c * q for c, q in zip(coefficients, inputs)) != gcd:
            raise ValueError("coefficients do not reproduce the gcd")
        return values


class PropertyWitness(BaseModel):
    """Elements a, b whose `exponent`-th powers do not commute."""

    a: int
    b: int
    exponent: int
    law: str


class PropertyReport(BaseModel):
    group: str
    order: int
    m: int
    n: int
    satisfies_p: bool
    is_abelian: bool
    witness: Optional[PropertyWitness] = None
    theorems_applicable: bool = True
    wall_time_ms: float = 0.0

    @root_validator(skip_on_failure=True)
    def witness_on_failure(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if not values.get("satisfies_p") and values.get("witness") is None:
            raise ValueError("a report that fails the property must carry a witness")
        return values

    @property
    def is_counterexample(self) -> bool:
        return self.satisfies_p and not self.is_abelian


class ScanSummary(BaseModel):
    p_abelian: int = 0
    p_nonabelian: int = 0
    not_p_abelian: int = 0
    not_p_nonabelian: int = 0


class ScanReport(BaseModel):
    rows: List[PropertyReport] = Field(default_factory=list)
    summary: ScanSummary = Field(default_factory=ScanSummary)
    counterexamples: List[PropertyReport] = Field(default_factory=list)


class LemmaVerdict(BaseModel):
    """Outcome of a verifier: a verdict plus evidence that can be re-checked from scratch."""

    statement: str
    holds: bool
    vacuous: bool = False
    evidence: Dict[str, Any] = Field(default_factory=dict)
    violation: Optional[Dict[str, Any]] = None
    note: Optional[str] = None

    @root_validator(skip_on_failure=True)
    def violation_on_failure(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if not values.get("holds") and not values.get("violation"):
            raise ValueError("a failing verdict must name its violation")
        return values


class TorsionPart(BaseModel):
    element: int  # x^cofactor
    prime: int
    exponent: int
    prime_power: int
    cofactor: int  # order / prime_power
    coefficient: int

    @validator("prime_power")
    def power_matches(cls, v: int, values: Dict[str, Any]) -> int:
        if "prime" in values and "exponent" in values and v != values["prime"] ** values["exponent"]:
            raise ValueError("prime_power must equal prime ** exponent")
        return v


class TorsionDecomposition(BaseModel):
    element: int
    order: int
    parts: List[TorsionPart] = Field(default_factory=list)
    certificate: Optional[BezoutCertificate] = None

    @root_validator(skip_on_failure=True)
    def parts_consistent(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        order, parts = values.get("order"), values.get("parts")
        if (order == 1) != (not parts):
            raise ValueError("only the identity has an empty decomposition")
        for part in parts:
            if part.cofactor * part.prime_power != order:
                raise ValueError(f"cofactor {part.cofactor} does not complement {part.prime_power} in {order}")
        if parts and sum(p.coefficient * p.cofactor for p in parts) != 1:
            raise ValueError("coefficients do not sum the cofactors to 1")
        return values


class FactorKind(str, Enum):
    cyclic = "C"
    dihedral = "D"
    symmetric = "S"
    alternating = "A"
    quaternion = "Q8"
    heisenberg = "Heis"
    file = "@"


class FactorSpec(BaseModel):
    kind: FactorKind
    param: Optional[int] = None
    path: Optional[str] = None

    @root_validator(skip_on_failure=True)
    def param_matches_kind(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        kind, param = values.get("kind"), values.get("param")
        if kind == FactorKind.file:
            if not values.get("path"):
                raise ValueError("@ requires a path")
        elif kind == FactorKind.quaternion:
            if param is not None:
                raise ValueError("Q8 takes no parameter")
        elif param is None or param < 1:
            raise ValueError(f"{kind.value} requires a positive parameter")
        return values

    def label(self) -> str:
        if self.kind == FactorKind.file:
            return f"@{self.path}"
        if self.kind == FactorKind.quaternion:
            return "Q8"
        return f"{self.kind.value}{self.param}"


class GroupSpec(BaseModel):
    """Parsed constructor expression: base ("x" base)*, associating left."""

    factors: List[FactorSpec]

    @validator("factors")
    def nonempty(cls, v: List[FactorSpec]) -> List[FactorSpec]:
        if not v:
            raise ValueError("a group spec needs at least one factor")
        return v

    def label(self) -> str:
        return "x".join(f.label() for f in self.factors)
