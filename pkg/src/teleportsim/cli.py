"""Campaign front end: seeded Monte-Carlo runs, exhaustive enumeration,
table derivation, and certification, reported as deterministic JSON.

Exit status is nonzero iff any fidelity drops below 1 - 1e-9, any
transcript violates a resource bound, or (with --strict) certification
finds an operator mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy.stats import chi2

from .bell import BellState
from .harness import run_all_branches, run_session
from .qstate import (
    StateVector,
    computational_basis_state,
    make_state,
    parse_state_literal,
    random_state,
)
from .teleport import (
    MAX_PROTOCOL_WIDTH,
    MAX_TABLE_WIDTH,
    ProtocolTranscript,
    certify_table,
    derive_corrections,
    protocol_labels,
    reference_table,
)

FIDELITY_EXIT_THRESHOLD = 1 - 1e-9
MODES = ("sample", "branches", "derive-table", "certify")
FIXTURE_NAMES = ("zero", "uniform", "ghz")


@dataclass(frozen=True)
class CampaignConfig:
    n: int = 2
    trials: int = 100
    seed: int = 0
    mode: str = "sample"
    input: str = "random"
    out: str | None = None
    strict: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 1 <= self.n <= MAX_PROTOCOL_WIDTH:
            raise ValueError(f"n must be 1..{MAX_PROTOCOL_WIDTH}, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class CampaignReport:
    config: CampaignConfig
    fidelity_min: float | None
    fidelity_mean: float | None
    outcome_histogram: dict[str, int] | None
    chi_square_statistic: float | None
    chi_square_p_value: float | None
    resource_violations: list[str]
    certification: dict | None
    table_text: str | None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["config"] = asdict(self.config)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @property
    def failed(self) -> bool:
        if self.resource_violations:
            return True
        if self.fidelity_min is not None and self.fidelity_min < FIDELITY_EXIT_THRESHOLD:
            return True
        return False

    def exit_code(self, strict: bool) -> int:
        if self.failed:
            return 1
        if strict and self.certification is not None:
            if self.certification["counts"]["operator_mismatch"] > 0:
                return 1
        return 0


def chi_square_uniform(
    histogram: dict[str, int] | list[int], expected_prob: float
) -> tuple[float, float]:
    """Pearson statistic and p-value of counts against a uniform law.

    Every bin must be present (zero counts included); expected_prob must
    equal 1/bins.
    """
    counts = np.asarray(
        [histogram[k] for k in sorted(histogram)] if isinstance(histogram, dict) else histogram,
        dtype=float,
    )
    bins = counts.shape[0]
    if bins < 2:
        raise ValueError("need at least two bins")
    if abs(expected_prob * bins - 1.0) > 1e-9:
        raise ValueError(f"expected_prob {expected_prob} does not cover {bins} bins")
    total = counts.sum()
    if total <= 0:
        raise ValueError("histogram is empty")
    expected = total * expected_prob
    statistic = float(((counts - expected) ** 2 / expected).sum())
    p_value = float(chi2.sf(statistic, bins - 1))
    return statistic, p_value


def load_state(path: str | Path) -> StateVector:
    """Read a state literal file."""
    return parse_state_literal(Path(path).read_text())


def fixture_state(name: str, n: int) -> StateVector:
    xs, _, _ = protocol_labels(n)
    if name == "zero":
        return computational_basis_state(xs, 0)
    if name == "uniform":
        return make_state(xs, np.ones(2 ** n, dtype=complex))
    if name == "ghz":
        a = np.zeros(2 ** n, dtype=complex)
        a[0] = a[-1] = 1
        return make_state(xs, a)
    raise ValueError(f"unknown fixture {name!r}; choices are {FIXTURE_NAMES}")


def resolve_input(cfg: CampaignConfig, rng: np.random.Generator) -> StateVector:
    if cfg.input == "random":
        xs, _, _ = protocol_labels(cfg.n)
        return random_state(xs, rng)
    if cfg.input in FIXTURE_NAMES:
        return fixture_state(cfg.input, cfg.n)
    state = load_state(cfg.input)
    if state.n_qubits != cfg.n:
        raise ValueError(
            f"input file has {state.n_qubits} qubits but the campaign width is {cfg.n}"
        )
    return state


def _scan_resources(transcripts: list[ProtocolTranscript], n: int) -> list[str]:
    problems = []
    for t in transcripts:
        if t.bell_pairs_consumed != n:
            problems.append(f"branch {t.message}: consumed {t.bell_pairs_consumed} pairs")
        if len(t.message) != 2 * n:
            problems.append(f"branch {t.message}: {len(t.message)} classical bits")
        if t.single_qubit_ops > 2 * n:
            problems.append(f"branch {t.message}: {t.single_qubit_ops} single-qubit ops")
    return problems


def _empty_histogram(n: int) -> dict[str, int]:
    return {format(i, f"0{2 * n}b"): 0 for i in range(4 ** n)}


def run_campaign(cfg: CampaignConfig) -> CampaignReport:
    root = np.random.SeedSequence(cfg.seed)
    input_ss, trials_ss = root.spawn(2)
    fidelities: list[float] = []
    histogram = None
    statistic = p_value = None
    certification = None
    table_text = None
    transcripts: list[ProtocolTranscript] = []

    if cfg.mode == "sample":
        xi = resolve_input(cfg, np.random.default_rng(input_ss))
        histogram = _empty_histogram(cfg.n)
        for child in trials_ss.spawn(cfg.trials):
            t = run_session(xi, cfg.n, child)
            transcripts.append(t)
            fidelities.append(t.final_fidelity)
            histogram[t.message] += 1
        statistic, p_value = chi_square_uniform(histogram, 1 / 4 ** cfg.n)
    elif cfg.mode == "branches":
        if cfg.n > MAX_TABLE_WIDTH:
            raise ValueError(f"branches mode supports n <= {MAX_TABLE_WIDTH}")
        xi = resolve_input(cfg, np.random.default_rng(input_ss))
        transcripts = run_all_branches(xi, cfg.n)
        histogram = _empty_histogram(cfg.n)
        for t in transcripts:
            histogram[t.message] += 1
            fidelities.append(t.final_fidelity)
        statistic, p_value = chi_square_uniform(histogram, 1 / 4 ** cfg.n)
    elif cfg.mode == "derive-table":
        if cfg.n > MAX_TABLE_WIDTH:
            raise ValueError(f"derive-table mode supports n <= {MAX_TABLE_WIDTH}")
        table_text = derive_corrections(cfg.n).to_text()
    else:  # certify
        derived = derive_corrections(cfg.n)
        certification = certify_table(derived, reference_table(cfg.n)).to_dict()

    return CampaignReport(
        config=cfg,
        fidelity_min=min(fidelities) if fidelities else None,
        fidelity_mean=float(np.mean(fidelities)) if fidelities else None,
        outcome_histogram=histogram,
        chi_square_statistic=statistic,
        chi_square_p_value=p_value,
        resource_violations=_scan_resources(transcripts, cfg.n),
        certification=certification,
        table_text=table_text,
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="teleportsim",
        description="Seeded teleportation campaigns over Bell pairs, with "
        "exhaustive branch enumeration and correction-table certification.",
    )
    p.add_argument("--n", type=int, default=2, help="number of qubits to teleport")
    p.add_argument("--trials", type=int, default=100, help="sampled sessions in sample mode")
    p.add_argument("--seed", type=int, default=0, help="campaign seed")
    p.add_argument("--mode", choices=MODES, default="sample")
    p.add_argument(
        "--input",
        default="random",
        help=f"input state: 'random', a fixture name {FIXTURE_NAMES}, or a literal file path",
    )
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.add_argument(
        "--strict",
        action="store_true",
        help="exit nonzero when certification finds an operator mismatch",
    )
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = CampaignConfig(
            n=args.n,
            trials=args.trials,
            seed=args.seed,
            mode=args.mode,
            input=args.input,
            out=args.out,
            strict=args.strict,
        )
        report = run_campaign(cfg)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = report.to_json()
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return report.exit_code(cfg.strict)


if __name__ == "__main__":
    sys.exit(main())
