"""Qubit and CNOT cost comparison: doubled-code magic states vs. distillation in the Golay code.

Every output is computed from the constants of a :class:`CostModel` and
carries a human-readable trace of the arithmetic.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

# where each default comes from, in plain terms
PROVENANCE = {
    "golay_n": "qubits in the Golay code block",
    "doubled_n": "qubits in the doubled code block",
    "noisy_magic_states_per_output": "noisy inputs per output for two rounds of 3k+8-to-k distillation, large k",
    "distillation_logical_cnots": "logical CNOTs in the optimized 20-to-4 distillation circuit",
    "first_round_multiplier": "first-round distillations per second-round distillation",
    "golay_noisy_ancilla_per_verified": "noisy Golay ancillas per verified |0> or |+>",
    "doubled_noisy_ancilla_assumed": "noisy doubled-code ancillas per verified |+> (pessimistic)",
    "latin_rect_plus_cost": "CNOTs per noisy |+> with the basic Latin rectangle method",
    "latin_rect_zero_cost": "CNOTs per noisy |0> with the basic Latin rectangle method",
    "optimized_zero": "CNOTs per noisy |0> with overlap-exploiting circuits",
    "optimized_plus": "CNOTs per noisy |+> with overlap-exploiting circuits",
}

# reference totals the traces are checked against
REFERENCE = {
    "distillation_basic": 207,
    "doubled_basic": 95,
    "doubled_steane_style": 1140,
    "distillation_steane_style": 1863,
    "distillation_per_round": 1403,
    "distillation": 8418,
    "doubled_prep": 5676,
    "doubled_logical": 1045,
    "doubled_total": 6721,
}


@dataclass(frozen=True)
class CostModel:
    golay_n: int = 23
    doubled_n: int = 95
    noisy_magic_states_per_output: int = 9
    distillation_logical_cnots: int = 61
    first_round_multiplier: int = 5
    golay_noisy_ancilla_per_verified: int = 4
    doubled_noisy_ancilla_assumed: int = 12
    latin_rect_plus_cost: int = 473
    latin_rect_zero_cost: int = 359
    optimized_zero: int = 267
    optimized_plus: int = 315

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{f.name} must be a nonnegative integer, got {v!r}")

    @property
    def distillation_cnot_per_round(self) -> int:
        return self.distillation_logical_cnots * self.golay_n

    def provenance(self, name: str) -> str:
        return PROVENANCE[name]

    def changed(self) -> dict[str, int]:
        base = CostModel()
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(self)
                if getattr(self, f.name) != getattr(base, f.name)}


@dataclass(frozen=True)
class Cost:
    name: str
    value: int
    trace: str
    reference: int | None = None

    @property
    def matches(self) -> bool | None:
        return None if self.reference is None else self.value == self.reference

    def line(self) -> str:
        flag = ""
        if self.reference is not None:
            flag = " [match]" if self.matches else f" [MISMATCH: reference {self.reference}]"
        return f"{self.name}: {self.value} = {self.trace}{flag}"


@dataclass(frozen=True)
class Comparison:
    costs: dict[str, Cost] = field(default_factory=dict)

    def __getitem__(self, key: str) -> int:
        return self.costs[key].value

    def values(self) -> dict[str, int]:
        return {k: c.value for k, c in self.costs.items()}

    def mismatches(self) -> list[str]:
        return [k for k, c in self.costs.items() if c.matches is False]

    def lines(self) -> list[str]:
        return [c.line() for c in self.costs.values()]


def _cost(name: str, value: int, trace: str, model: CostModel) -> Cost:
    # references only make sense for the default constants
    ref = REFERENCE.get(name) if not model.changed() else None
    return Cost(name, value, trace, ref)


def qubit_costs(model: CostModel | None = None) -> Comparison:
    m = model or CostModel()
    k, g, d = m.noisy_magic_states_per_output, m.golay_n, m.doubled_n
    a, r = m.golay_noisy_ancilla_per_verified, m.doubled_noisy_ancilla_assumed
    per_state = 1 + a + a
    return Comparison({
        "distillation_basic": _cost("distillation_basic", g * k, f"{g} x {k}", m),
        "doubled_basic": _cost("doubled_basic", d, f"{d}", m),
        "doubled_steane_style": _cost("doubled_steane_style", d * r, f"{d} x {r}", m),
        "distillation_steane_style": _cost(
            "distillation_steane_style",
            k * g * per_state,
            f"{k} x {g} x (1 + {a} + {a})  (each magic state plus verified |0> and |+> ancillas)",
            m,
        ),
    })


def cnot_costs(model: CostModel | None = None) -> Comparison:
    m = model or CostModel()
    g, d = m.golay_n, m.doubled_n
    per_round = m.distillation_cnot_per_round
    mult = m.first_round_multiplier
    r, plus = m.doubled_noisy_ancilla_assumed, m.latin_rect_plus_cost
    prep = r * plus
    logical = d * (r - 1) if r else 0
    return Comparison({
        "distillation_per_round": _cost(
            "distillation_per_round", per_round, f"{m.distillation_logical_cnots} x {g}", m),
        "distillation": _cost(
            "distillation", per_round * mult + per_round, f"{per_round} x {mult} + {per_round}", m),
        "doubled_prep": _cost("doubled_prep", prep, f"{r} x {plus}", m),
        "doubled_logical": _cost("doubled_logical", logical, f"{d} x {max(r - 1, 0)}", m),
        "doubled_total": _cost("doubled_total", prep + logical, f"{prep} + {logical}", m),
    })


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int

    def __str__(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]"

    @property
    def corrects(self) -> int:
        return (self.d - 1) // 2

    @classmethod
    def parse(cls, text: str) -> CodeParams:
        body = text.strip().removeprefix("[[").removesuffix("]]")
        try:
            n, k, d = (int(x) for x in body.split(","))
        except ValueError:
            raise ValueError(f"expected [[n,k,d]], got {text!r}") from None
        return cls(n, k, d)


def concatenated_params(outer: CodeParams, inner: CodeParams) -> tuple[CodeParams, int]:
    """Parameters of ``outer`` concatenated with ``inner`` and the number of correctable errors."""
    if outer.k != 1 or inner.k != 1:
        raise ValueError("concatenation here is defined for codes encoding one qubit")
    out = CodeParams(outer.n * inner.n, 1, outer.d * inner.d)
    return out, out.corrects


def load_overrides(text: str) -> CostModel:
    """``key = value`` lines (``#`` comments allowed) applied to the default model."""
    names = {f.name for f in dataclasses.fields(CostModel)}
    values: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise ValueError(f"line {lineno}: expected one of {', '.join(sorted(names))} = <int>")
        try:
            values[key] = int(val.strip())
        except ValueError:
            raise ValueError(f"line {lineno}: {key} needs an integer value") from None
    return CostModel(**values)


__all__ = [
    "CodeParams",
    "Comparison",
    "Cost",
    "CostModel",
    "PROVENANCE",
    "REFERENCE",
    "cnot_costs",
    "concatenated_params",
    "load_overrides",
    "qubit_costs",
]
