"""Code-capacity Monte Carlo: sample data errors, decode, classify the residual."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import binomtest

from ..codes import _pauli, as_css, catalog
from ..decode import FullDecoder, decoder_for
from ..gf2 import parity

MODES = ("shared", "full")
CHUNK = 4096


@dataclass(frozen=True)
class MonteCarloResult:
    code: str
    error_type: str
    mode: str
    model: str
    param: float
    trials: int
    seed: int | None
    identity: int
    stabilizer: int
    logical: int
    exhaustive: bool = False
    confidence: float = 0.95

    @property
    def failures(self) -> int:
        return self.logical

    @property
    def successes(self) -> int:
        return self.identity + self.stabilizer

    @property
    def failure_fraction(self) -> float:
        return self.logical / self.trials

    @property
    def interval(self) -> tuple[float, float]:
        ci = binomtest(self.logical, self.trials).proportion_ci(self.confidence, method="wilson")
        return float(ci.low), float(ci.high)

    def lines(self) -> list[str]:
        lo, hi = self.interval
        param = self.param if self.model == "rate" else int(self.param)
        return [
            f"code: {self.code}",
            f"error_type: {self.error_type}",
            f"mode: {self.mode}",
            f"model: {self.model}",
            f"{'rate' if self.model == 'rate' else 'weight'}: {param}",
            f"sampling: {'exhaustive' if self.exhaustive else 'random'}",
            f"seed: {self.seed}",
            f"trials: {self.trials}",
            f"identity: {self.identity}",
            f"stabilizer: {self.stabilizer}",
            f"logical: {self.logical}",
            f"failure_fraction: {self.failure_fraction:.6f}",
            f"wilson_{int(self.confidence * 100)}: [{lo:.6f}, {hi:.6f}]",
        ]


class _Setup:
    def __init__(self, code_name: str, error_type: str, mode: str, max_weight: int):
        code = catalog(code_name)
        self.n = code.n
        self.opposing = code.b1.rows[0]
        if mode == "shared":
            self.decoder = decoder_for(code_name)
            self.checks = code.b0
        elif mode == "full":
            css = as_css(code)
            self.decoder = FullDecoder(css, error_type, max_weight)
            self.checks = css.checks_for(error_type)
        else:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.cols = self.checks.columns()

    def classify(self, error: int, syndrome: int) -> str:
        residual = error ^ self.decoder.decode(syndrome).correction
        if residual == 0:
            return "identity"
        if self.checks.syndrome(residual):
            raise RuntimeError("decoder returned a correction with the wrong syndrome")
        return "logical" if parity(residual & self.opposing) else "stabilizer"

    def run(self, supports) -> dict[str, int]:
        counts = {"identity": 0, "stabilizer": 0, "logical": 0}
        cols = self.cols
        for supp in supports:
            e = 0
            s = 0
            for j in supp:
                e |= 1 << int(j)
                s ^= cols[j]
            counts[self.classify(e, s)] += 1
        return counts


def _fixed_weight(rng: np.random.Generator, n: int, w: int, count: int):
    keys = rng.random((count, n))
    return np.argpartition(keys, w - 1, axis=1)[:, :w] if w else np.zeros((count, 0), np.int64)


def _iid(rng: np.random.Generator, n: int, p: float, count: int):
    flips = rng.random((count, n)) < p
    return [np.flatnonzero(row) for row in flips]


def monte_carlo(
    code: str,
    error_type: str = "Z",
    *,
    weight: int | None = None,
    rate: float | None = None,
    trials: int = 1000,
    seed: int | None = 0,
    mode: str = "shared",
    exhaustive: bool = False,
    threads: int = 1,
) -> MonteCarloResult:
    """Failure statistics for one code, decoder mode and error model.

    Exactly one of ``weight`` (uniform supports of that size) and ``rate``
    (independent flips) is given.  ``exhaustive`` enumerates every support
    of the given weight instead of sampling.  Trials are split into chunks
    with their own seeds spawned from ``seed``; chunk results are summed,
    so the outcome does not depend on ``threads``.
    """
    error_type = _pauli(error_type)
    if (weight is None) == (rate is None):
        raise ValueError("give exactly one of weight and rate")
    if trials < 1 and not exhaustive:
        raise ValueError("trials must be at least 1")
    n = catalog(code).n
    if weight is not None and not 0 <= weight <= n:
        raise ValueError(f"weight must be in [0, {n}]")
    if rate is not None and not 0.0 <= rate <= 1.0:
        raise ValueError("rate must be in [0, 1]")
    if exhaustive and weight is None:
        raise ValueError("exhaustive mode needs a fixed weight")
    setup = _Setup(code, error_type, mode, weight if weight is not None else n)

    if exhaustive:
        counts = setup.run(itertools.combinations(range(n), weight))
        total = math.comb(n, weight)
    else:
        sizes = [min(CHUNK, trials - i) for i in range(0, trials, CHUNK)]
        seqs = np.random.SeedSequence(seed).spawn(len(sizes))

        def chunk(args):
            seq, size = args
            rng = np.random.default_rng(seq)
            if weight is not None:
                supports = _fixed_weight(rng, n, weight, size)
            else:
                supports = _iid(rng, n, rate, size)
            return setup.run(supports)

        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                parts = list(pool.map(chunk, zip(seqs, sizes)))
        else:
            parts = [chunk(a) for a in zip(seqs, sizes)]
        counts = {k: sum(p[k] for p in parts) for k in ("identity", "stabilizer", "logical")}
        total = trials
    model, param = ("weight", weight) if weight is not None else ("rate", rate)
    return MonteCarloResult(code, error_type, mode, model, param, total, seed,
                            counts["identity"], counts["stabilizer"], counts["logical"], exhaustive)


__all__ = ["MODES", "MonteCarloResult", "monte_carlo"]
