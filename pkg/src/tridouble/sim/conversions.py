"""Code conversion and gate gadgets as ready-made scripts.

Self-dual <-> doubled conversions come in two flavours: by measuring the
target code's stabilizers (correcting with shared syndromes only, then fixing
the signs of the extra stabilizers) and by one-bit teleportation through a
transversal CNOT that touches only the first self-dual block of the doubled
code.  The T gadget and the magic-state gadget run with transversal S in
place of T; the power of S needed for a logical S follows from the code's
weight-mod-8 certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..analysis import t_gate_certificate
from ..codes import catalog
from .gadgets import DOUBLED_PARTS, RunResult, ScriptError, css_for, parse_script, run_tableau

DIRECTIONS = ("sd->doubled", "doubled->sd")


@dataclass(frozen=True)
class GadgetRun:
    script: str
    output_block: str
    input_state: str
    result: RunResult

    @property
    def output(self) -> str:
        return self.result.state(self.output_block)


def _direction(direction: str) -> str:
    d = direction.replace("→", "->").replace(" ", "")
    if d not in DIRECTIONS:
        raise ScriptError(f"direction must be one of {', '.join(DIRECTIONS)}, got {direction!r}")
    return d


def _parts(doubled: str) -> tuple[str, str, int, int]:
    try:
        sd, tri = DOUBLED_PARTS[doubled]
    except KeyError:
        raise ScriptError(f"{doubled} is not a doubled code") from None
    return sd, tri, css_for(sd).n, css_for(tri).n


def measurement_script(direction: str, doubled: str = "tri95", errors: str = "") -> str:
    sd, tri, n_sd, n_tri = _parts(doubled)
    head = (
        f"block A {sd} 0\n"
        f"block B {sd} {n_sd}\n"
        f"block C {tri} {2 * n_sd}\n"
        f"block D {doubled} 0\n"
    )
    if _direction(direction) == "sd->doubled":
        return head + (
            "prepare A in\n"
            "bell B C            # entangled ancilla pair extends the self-dual code\n"
            f"{errors}"
            "project D doubled s # shared syndromes decode, extra Z signs fixed\n"
        )
    return head + (
        "prepare D in\n"
        f"{errors}"
        "project D extended s  # shared syndromes decode, extra X signs fixed\n"
        "discard B\n"
        "discard C\n"
    )


def cnot_script(direction: str, doubled: str = "tri95") -> str:
    sd, _, n_sd, _ = _parts(doubled)
    n = css_for(doubled).n
    if _direction(direction) == "doubled->sd":
        return (
            f"block D {doubled} 0\n"
            f"block A {sd} {n}\n"
            "prepare D in\n"
            "prepare A 0\n"
            f"cnot D A 0:{n_sd}   # first self-dual block only\n"
            "measure D X m\n"
            "if m pauli A Z\n"
        )
    return (
        f"block A {sd} 0\n"
        f"block D {doubled} {n_sd}\n"
        "prepare A in\n"
        "prepare D +\n"
        f"cnot D A 0:{n_sd}\n"
        "measure A Z m\n"
        "if m pauli D X\n"
    )


def output_block(direction: str, method: str) -> str:
    to_sd = _direction(direction) == "doubled->sd"
    return "A" if to_sd else "D"


def convert_by_measurement(direction: str, state: str, seed=None, doubled: str = "tri95",
                           errors: str = "") -> GadgetRun:
    """Move a logical state between the self-dual and doubled codes by measurement.

    ``errors`` is extra script text (``error`` lines) inserted just before
    the projection.
    """
    text = measurement_script(direction, doubled, errors)
    key = "A" if _direction(direction) == "sd->doubled" else "D"
    res = run_tableau(text, {key: state}, seed)
    return GadgetRun(text, output_block(direction, "measure"), state, res)


def convert_by_cnot(direction: str, state: str, seed=None, doubled: str = "tri95") -> GadgetRun:
    """One-bit teleportation gadget; consumes a self-dual |0> or a doubled |+> ancilla."""
    text = cnot_script(direction, doubled)
    key = "D" if _direction(direction) == "doubled->sd" else "A"
    res = run_tableau(text, {key: state}, seed)
    return GadgetRun(text, output_block(direction, "cnot"), state, res)


@lru_cache(maxsize=None)
def s_power_for_logical_s(code_name: str) -> int:
    """Power ``m`` with transversal ``S^m`` acting as logical ``S``.

    Transversal ``T^k`` multiplies the logical |1> branch by ``w^(k e)`` where
    ``e`` is the certificate's exponent; ``S = T^2`` therefore gives
    ``i^(m e)`` and we need ``m e = 1 mod 4``.
    """
    code = catalog(code_name)
    if hasattr(code, "c"):
        e = t_gate_certificate(code).logical_phase_exponent
    else:
        # self-dual: stabilizers are doubly even and the odd coset has weight n mod 4
        e = code.n % 4
    if e is None or e % 2 == 0:
        raise ScriptError(f"transversal S on {code_name} is not a logical S or S^-1")
    for m in range(1, 4):
        if (m * e) % 4 == 1:
            return m
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def t_power_for_logical_t(code_name: str) -> int:
    e = t_gate_certificate(catalog(code_name)).logical_phase_exponent
    for m in range(1, 8):
        if (m * e) % 8 == 1:
            return m
    raise ScriptError(f"transversal T on {code_name} is not a logical T")


def t_gadget_script(doubled: str = "tri95", substitute: bool = True) -> str:
    """Move to the doubled code, apply the transversal gate, move back."""
    sd, _, n_sd, _ = _parts(doubled)
    n = css_for(doubled).n
    if substitute:
        gate = f"spow D {s_power_for_logical_s(doubled)}   # transversal S in place of T"
    else:
        gate = "t D"
    return (
        f"block A {sd} 0\n"
        f"block D {doubled} {n_sd}\n"
        f"block G {sd} {n_sd + n}\n"
        "prepare A in\n"
        "prepare D +\n"
        f"cnot D A 0:{n_sd}\n"
        "measure A Z m1\n"
        "if m1 pauli D X\n"
        f"{gate}\n"
        "prepare G 0\n"
        f"cnot D G 0:{n_sd}\n"
        "measure D X m2\n"
        "if m2 pauli G Z\n"
    )


def magic_gadget_script(doubled: str = "tri95", substitute: bool = True) -> str:
    """Prepare a magic state in the doubled code, move it out, inject it.

    With the magic state ``U|+>`` (``U = S`` here, ``T`` on hardware) the
    injection CNOT and a Z measurement leave ``U|psi>`` or ``U^-1|psi>``; the
    second case is repaired with ``U^2``, a Clifford for ``U = T``.
    """
    sd, _, n_sd, _ = _parts(doubled)
    n = css_for(doubled).n
    m = s_power_for_logical_s(doubled)
    gate = f"spow D {m}" if substitute else "t D"
    sd_fix = f"spow A {(2 * s_power_for_logical_s(sd)) % 4}"
    return (
        f"block D {doubled} 0\n"
        f"block M {sd} {n}\n"
        f"block A {sd} {n + n_sd}\n"
        "prepare D +\n"
        f"{gate}\n"
        "prepare M 0\n"
        f"cnot D M 0:{n_sd}\n"
        "measure D X m1\n"
        "if m1 pauli M Z\n"
        "prepare A in\n"
        "cnot A M\n"
        "measure M Z m2\n"
        f"if m2 {sd_fix}   # square of the injected gate\n"
    )


def t_gadget(state: str, seed=None, doubled: str = "tri95") -> GadgetRun:
    text = t_gadget_script(doubled)
    return GadgetRun(text, "G", state, run_tableau(text, {"A": state}, seed))


def magic_gadget(state: str, seed=None, doubled: str = "tri95") -> GadgetRun:
    text = magic_gadget_script(doubled)
    return GadgetRun(text, "A", state, run_tableau(text, {"A": state}, seed))


# logical S on single-qubit Pauli eigenstates
S_ACTION = {"0": "0", "1": "1", "+": "+i", "-": "-i", "+i": "-", "-i": "+"}


def trial_seeds(seed: int, trials: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(trials)


__all__ = [
    "DIRECTIONS",
    "GadgetRun",
    "S_ACTION",
    "cnot_script",
    "convert_by_cnot",
    "convert_by_measurement",
    "magic_gadget",
    "magic_gadget_script",
    "measurement_script",
    "s_power_for_logical_s",
    "t_gadget",
    "t_gadget_script",
    "t_power_for_logical_t",
    "trial_seeds",
]
