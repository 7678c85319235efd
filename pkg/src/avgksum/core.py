"""Domain types, verifiers and JSON (de)serialization.

Modular elements are always stored as canonical residues in ``[0, Q)``;
the centered form is computed on demand by :func:`center_representative`.
All arithmetic uses Python integers, so moduli of any size are exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from sympy import isprime


class ParameterError(ValueError):
    """An argument violates an operation's precondition."""


class CapacityError(RuntimeError):
    """An exhaustive enumeration would exceed its configured guard."""


class OracleContractError(RuntimeError):
    """An oracle returned an output that does not satisfy its contract."""


@dataclass(frozen=True)
class Modular:
    Q: int

    def __post_init__(self):
        if int(self.Q) != self.Q or self.Q < 2:
            raise ParameterError(f"modulus must be an integer >= 2, got {self.Q!r}")

    @property
    def size(self) -> int:
        return self.Q

    def contains(self, value: int) -> bool:
        return 0 <= value < self.Q

    def is_zero_sum(self, total: int) -> bool:
        return total % self.Q == 0

    def to_json(self) -> dict:
        return {"modular": str(self.Q)}


@dataclass(frozen=True)
class Interval:
    u: int

    def __post_init__(self):
        if int(self.u) != self.u or self.u < 1:
            raise ParameterError(f"interval bound must be an integer >= 1, got {self.u!r}")

    @property
    def size(self) -> int:
        return 2 * self.u + 1

    def contains(self, value: int) -> bool:
        return -self.u <= value <= self.u

    def is_zero_sum(self, total: int) -> bool:
        return total == 0

    def to_json(self) -> dict:
        return {"interval": str(self.u)}


Domain = Union[Modular, Interval]


def parse_domain(text: str) -> Domain:
    """Parse ``modular:Q`` or ``interval:u``."""
    kind, _, value = text.partition(":")
    try:
        n = int(value)
    except ValueError:
        raise ParameterError(f"bad domain {text!r}") from None
    if kind == "modular":
        return Modular(n)
    if kind == "interval":
        return Interval(n)
    raise ParameterError(f"bad domain {text!r}; expected modular:Q or interval:u")


@dataclass(frozen=True)
class KSumInstance:
    domain: Domain
    k: int
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(a) for a in self.elements))
        if self.k < 2:
            raise ParameterError(f"k must be >= 2, got {self.k}")
        if len(self.elements) < self.k:
            raise ParameterError(f"instance has m={len(self.elements)} < k={self.k}")
        for a in self.elements:
            if not self.domain.contains(a):
                raise ParameterError(f"element {a} outside domain {self.domain}")

    @property
    def m(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class KSumSolution:
    indices: tuple

    def __post_init__(self):
        idx = tuple(sorted(int(i) for i in self.indices))
        if len(set(idx)) != len(idx):
            raise ParameterError(f"solution indices are not distinct: {self.indices}")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


@dataclass(frozen=True)
class SisInstance:
    q: int
    r: int
    beta: int
    elements: tuple
    Q: int = field(init=False)

    def __post_init__(self):
        if not isprime(self.q):
            raise ParameterError(f"q={self.q} is not prime")
        if self.r < 1:
            raise ParameterError(f"r must be >= 1, got {self.r}")
        if self.beta < 1:
            raise ParameterError(f"beta must be >= 1, got {self.beta}")
        Q = self.q ** self.r
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "elements", tuple(int(a) for a in self.elements))
        if not self.elements:
            raise ParameterError("SIS instance needs at least one element")
        for a in self.elements:
            if not 0 <= a < Q:
                raise ParameterError(f"element {a} is not a residue mod {Q}")

    @property
    def m_prime(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class SisSolution:
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))

    @property
    def l1(self) -> int:
        return sum(abs(v) for v in self.x)

    def __neg__(self):
        return SisSolution(tuple(-v for v in self.x))


@dataclass(frozen=True)
class PlaneInstance:
    d: int
    Q: int
    points: tuple

    def __post_init__(self):
        if self.d < 1:
            raise ParameterError(f"d must be >= 1, got {self.d}")
        if not isprime(self.Q):
            raise ParameterError(f"Q={self.Q} is not prime")
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        for p in pts:
            if len(p) != self.d + 1:
                raise ParameterError(f"point {p} is not in Z_Q^{self.d + 1}")
            if any(not 0 <= c < self.Q for c in p):
                raise ParameterError(f"point {p} has a non-canonical coordinate")
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return len(self.points)


def center_representative(residue: int, Q: int) -> int:
    """Map ``residue`` in ``[0, Q)`` to the representative in ``[-(Q-1)/2, (Q-1)/2]``."""
    if Q < 3 or Q % 2 == 0:
        raise ParameterError(f"centering needs an odd modulus >= 3, got {Q}")
    if not 0 <= residue < Q:
        raise ParameterError(f"{residue} is not a canonical residue mod {Q}")
    half = (Q - 1) // 2
    return residue - Q if residue > half else residue


def verify_ksum(instance: KSumInstance, sol: KSumSolution) -> bool:
    if len(sol.indices) != instance.k:
        raise ParameterError(f"solution has {len(sol.indices)} indices, instance k={instance.k}")
    if any(not 0 <= i < instance.m for i in sol.indices):
        raise ParameterError(f"solution indices {sol.indices} out of range for m={instance.m}")
    total = sum(instance.elements[i] for i in sol.indices)
    return instance.domain.is_zero_sum(total)


def verify_sis(instance: SisInstance, sol: SisSolution) -> bool:
    if len(sol.x) != instance.m_prime:
        raise ParameterError(f"x has length {len(sol.x)}, instance has m'={instance.m_prime}")
    if not any(sol.x):
        return False
    if sol.l1 > instance.beta:
        return False
    return sum(x * a for x, a in zip(sol.x, instance.elements)) % instance.Q == 0


# JSON: big integers are written as decimal strings throughout.

def _domain_from_json(obj: dict) -> Domain:
    if "modular" in obj:
        return Modular(int(obj["modular"]))
    if "interval" in obj:
        return Interval(int(obj["interval"]))
    raise ParameterError(f"bad domain object {obj!r}")


def instance_to_json(instance: KSumInstance) -> dict:
    return {
        "domain": instance.domain.to_json(),
        "k": instance.k,
        "elements": [str(a) for a in instance.elements],
    }


def instance_from_json(obj: dict) -> KSumInstance:
    return KSumInstance(
        _domain_from_json(obj["domain"]),
        int(obj["k"]),
        tuple(int(a) for a in obj["elements"]),
    )


def sis_to_json(instance: SisInstance) -> dict:
    return {
        "q": str(instance.q),
        "r": instance.r,
        "beta": str(instance.beta),
        "elements": [str(a) for a in instance.elements],
    }


def sis_from_json(obj: dict) -> SisInstance:
    return SisInstance(int(obj["q"]), int(obj["r"]), int(obj["beta"]),
                       tuple(int(a) for a in obj["elements"]))


def dumps(obj) -> str:
    """Canonical JSON text used for every file the package writes."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def as_residues(values: Iterable[int], Q: int) -> Sequence[int]:
    return tuple(int(v) % Q for v in values)
