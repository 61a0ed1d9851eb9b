"""Seeded sweep harness behind the ``klab`` command-line front end.

Row schemas
-----------
verify-* commands share one CSV header::

    command,p,ell,H,K,J,lhs,bound,ratio,pass,wall_time_ms

``solve`` emits::

    p,H,K,J,j_found,x,y,count_j,s1_j,s2_re,s2_im,wall_time_ms

(j_found = -1 and x = y = -1 when no pair in the family is soluble).
``scan-hooley`` and ``bench`` carry their own documented columns.
Inapplicable cells hold "-".  JSON output mirrors the same rows as an
array of objects.

Exit codes: 0 all checks passed, 1 usage error (nothing written),
2 at least one falsification row.

Determinism
-----------
All randomness (sampled twists, family placement) flows from splitmix64
streams derived from the configured seed, so a fixed config reproduces
its rows bit for bit.  Timing fields are the one exception; under
``deterministic=True`` they are pinned to 0 and the CSV timestamp
header line is suppressed, making output files byte-identical across
runs.
"""

from __future__ import annotations

import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Optional

import numpy as np

from .expsums import SumSpec, all_windows, kloosterman_table
from .intervals import DisjointFamily, IntervalPairFamily, IntInterval
from .meanvalue import (
    family_mean_square,
    family_mean_square_bound,
    hooley_scan,
    spectral_mean_square,
    window_mean_square,
    window_mean_square_bound,
)
from .modarith import PrimeModulus, is_prime_u64
from .solver import (
    InfeasibleGeometry,
    family_first_soluble,
    pair_report,
    solubility_threshold,
    two_thirds_parameters,
)

__all__ = [
    "SplitMix64",
    "derive_seed",
    "UsageError",
    "ExperimentConfig",
    "generate_family",
    "generate_disjoint_family",
    "sample_twists",
    "run",
    "COMMANDS",
    "GENERATOR_MODES",
]

_MASK64 = (1 << 64) - 1

COMMANDS = (
    "verify-lemma1",
    "verify-identity",
    "verify-mvt",
    "verify-weil",
    "solve",
    "scan-hooley",
    "bench",
)

GENERATOR_MODES = ("random-disjoint", "equally-spaced", "adversarial-clustered")

# Relative tolerance for the two-route mean-square identity and absolute
# tolerance for the count decomposition check on solve rows.
_IDENTITY_RTOL = 1e-8
_COUNT_ATOL = 1e-6


class SplitMix64:
    """splitmix64, the 64-bit mixing PRNG (public reference constants).

    Chosen as the harness generator because ten lines reproduce the
    stream exactly in any language, which keeps seeded fixtures
    portable; see README for the constants.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection (no modulo bias)."""
        if n < 1:
            raise ValueError(f"below() needs n >= 1, got {n}")
        span = _MASK64 + 1
        limit = span - span % n
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive."""
        return lo + self.below(hi - lo + 1)


def derive_seed(seed: int, *salts: int) -> int:
    """Stable substream derivation: fold each salt into the state with
    one splitmix64 scramble.  Purely arithmetic, hence portable."""
    s = seed & _MASK64
    for v in salts:
        s = SplitMix64(s ^ (v & _MASK64)).next_u64()
    return s


# Stream tags so different consumers of the same seed never collide.
_TAG_ELL = 0x311
_TAG_PAIRS = 0xFA7
_TAG_DISJOINT = 0xD15


class UsageError(ValueError):
    """Bad configuration: reported on stderr, exit 1, nothing written."""


def sample_twists(p: int, count: int, seed: int) -> list[int]:
    """Deterministic sample of `count` distinct twists from [1, p-1]."""
    if count >= p - 1:
        return list(range(1, p))
    rng = SplitMix64(derive_seed(seed, p, _TAG_ELL))
    chosen: set[int] = set()
    out = []
    while len(out) < count:
        ell = 1 + rng.below(p - 1)
        if ell not in chosen:
            chosen.add(ell)
            out.append(ell)
    return sorted(out)


def generate_family(
    p: PrimeModulus,
    H: int,
    K: int,
    J: int,
    seed: int,
    mode: str = "random-disjoint",
) -> IntervalPairFamily:
    """J interval pairs: disjoint |I1| = H placed by `mode`, |I2| = K
    placed uniformly at random.  Deterministic in (p, H, K, J, seed, mode).

    Raises InfeasibleGeometry when J*H > p-1 (the disjoint first
    intervals cannot fit) or K > p-1 (the second interval cannot fit).
    """
    m = p.p
    if mode not in GENERATOR_MODES:
        raise ValueError(f"unknown generator mode: {mode!r}")
    if J < 1 or H < 1 or K < 1:
        raise ValueError("J, H, K must all be >= 1")
    if J * H > m - 1:
        raise InfeasibleGeometry(f"J*H = {J * H} exceeds p-1 = {m - 1}")
    if K > m - 1:
        raise InfeasibleGeometry(f"K = {K} cannot fit inside (0, {m})")
    rng = SplitMix64(
        derive_seed(seed, m, H, K, J, GENERATOR_MODES.index(mode), _TAG_PAIRS)
    )
    slack = (m - 1) - J * H
    if mode == "random-disjoint":
        gaps = sorted(rng.below(slack + 1) for _ in range(J))
        los = [1 + g + i * H for i, g in enumerate(gaps)]
    elif mode == "equally-spaced":
        stride = H + (slack // (J - 1) if J > 1 else 0)
        los = [1 + i * stride for i in range(J)]
    else:  # adversarial-clustered: packed hard against the left edge
        los = [1 + i * H for i in range(J)]
    pairs = []
    for lo in los:
        i1 = IntInterval(lo, lo + H - 1)
        lo2 = 1 + rng.below(m - K)  # lo2 in [1, p-K]
        pairs.append((i1, IntInterval(lo2, lo2 + K - 1)))
    return IntervalPairFamily(tuple(pairs), H, K)


def generate_disjoint_family(
    p: PrimeModulus, H: int, J: int, seed: int
) -> DisjointFamily:
    """J pairwise-disjoint intervals with sizes drawn from (H/2, H],
    placed uniformly at random.  Deterministic in (p, H, J, seed)."""
    m = p.p
    if J < 1 or H < 1:
        raise ValueError("J and H must be >= 1")
    if J * H > m - 1:
        raise InfeasibleGeometry(f"J*H = {J * H} exceeds p-1 = {m - 1}")
    rng = SplitMix64(derive_seed(seed, m, H, J, _TAG_DISJOINT))
    sizes = [rng.randint(H // 2 + 1, H) for _ in range(J)]
    slack = (m - 1) - sum(sizes)
    marks = sorted(rng.below(slack + 1) for _ in range(J))
    intervals = []
    consumed = 0
    for size, mark in zip(sizes, marks):
        lo = 1 + mark + consumed
        intervals.append(IntInterval(lo, lo + size - 1))
        consumed += size
    return DisjointFamily(tuple(intervals), H)


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved description of one harness invocation.

    h_tokens / k_tokens hold unresolved length tokens ("8", "1..32",
    "dyadic"); they expand per modulus at run time because "dyadic"
    depends on p.
    """

    command: str
    p_list: tuple[int, ...]
    h_tokens: tuple[str, ...] = ("dyadic",)
    k_tokens: tuple[str, ...] = ()
    ell_policy: str = "sample:10"
    J: Optional[int] = None
    c: float = 1.0
    seed: int = 1
    mode: str = "random-disjoint"
    out: Optional[str] = None
    fmt: str = "csv"
    workers: int = 1
    deterministic: bool = False


_VERIFY_COLUMNS = (
    "command", "p", "ell", "H", "K", "J",
    "lhs", "bound", "ratio", "pass", "wall_time_ms",
)
_SOLVE_COLUMNS = (
    "p", "H", "K", "J", "j_found", "x", "y",
    "count_j", "s1_j", "s2_re", "s2_im", "wall_time_ms",
)
_HOOLEY_COLUMNS = (
    "command", "p", "ell", "H",
    "max_abs", "max_ratio", "mean_sq_over_H", "argmax_n", "wall_time_ms",
)
_BENCH_COLUMNS = ("command", "p", "H", "windows", "wall_time_ms")

_COLUMNS_BY_COMMAND = {
    "verify-lemma1": _VERIFY_COLUMNS,
    "verify-identity": _VERIFY_COLUMNS,
    "verify-mvt": _VERIFY_COLUMNS,
    "verify-weil": _VERIFY_COLUMNS,
    "solve": _SOLVE_COLUMNS,
    "scan-hooley": _HOOLEY_COLUMNS,
    "bench": _BENCH_COLUMNS,
}

# Complete-sum tables inside verify-weil are O(p^2) per twist.
_WEIL_MAX_P = 100_000


def _expand_tokens(tokens: tuple[str, ...], p: int) -> list[int]:
    """Expand length tokens against a concrete modulus, sorted unique."""
    values: set[int] = set()
    for tok in tokens:
        if tok == "dyadic":
            h = 1
            while h <= p - 1:
                values.add(h)
                h *= 2
        elif ".." in tok:
            a_txt, b_txt = tok.split("..", 1)
            values.update(range(int(a_txt), int(b_txt) + 1))
        else:
            values.add(int(tok))
    return sorted(values)


def _parse_ell_policy(policy: str) -> tuple[str, int]:
    """Return ("all", 0) | ("sample", n) | ("fixed", ell)."""
    if policy == "all":
        return "all", 0
    if policy.startswith("sample:"):
        n = int(policy.split(":", 1)[1])
        if n < 1:
            raise UsageError(f"sample count must be >= 1: got {policy!r}")
        return "sample", n
    try:
        ell = int(policy)
    except ValueError:
        raise UsageError(
            f"--ell must be 'all', 'sample:<n>' or an integer: got {policy!r}"
        ) from None
    return "fixed", ell


def _twists_for(p: int, config: ExperimentConfig) -> list[int]:
    kind, arg = _parse_ell_policy(config.ell_policy)
    if kind == "all":
        return list(range(1, p))
    if kind == "sample":
        return sample_twists(p, arg, config.seed)
    if not (1 <= arg <= p - 1):
        raise UsageError(f"fixed ell {arg} outside [1, p-1] for p = {p}")
    return [arg]


def _validate(config: ExperimentConfig) -> list[PrimeModulus]:
    """Front-load every usage check so nothing is written on failure."""
    if config.command not in COMMANDS:
        raise UsageError(f"unknown command: {config.command!r}")
    if config.fmt not in ("csv", "json"):
        raise UsageError(f"--format must be csv or json: got {config.fmt!r}")
    if config.mode not in GENERATOR_MODES:
        raise UsageError(f"--mode must be one of {GENERATOR_MODES}: got {config.mode!r}")
    if config.workers < 1:
        raise UsageError(f"--workers must be >= 1: got {config.workers}")
    if not (0 <= config.seed < 1 << 64):
        raise UsageError(f"--seed must fit in 64 bits: got {config.seed}")
    if config.c <= 0:
        raise UsageError(f"--c must be positive: got {config.c}")
    if config.J is not None and config.J < 1:
        raise UsageError(f"--J must be >= 1: got {config.J}")
    if not config.p_list:
        raise UsageError("at least one modulus is required (--p)")

    moduli = []
    for p in config.p_list:
        if not is_prime_u64(p) or p < 3 or p >= 1 << 63:
            raise UsageError(f"modulus must be an odd prime in [3, 2**63): got {p}")
        moduli.append(PrimeModulus(p))

    # Token syntax errors should surface now, not mid-sweep.
    for tokens, label in ((config.h_tokens, "--H"), (config.k_tokens, "--K")):
        for tok in tokens:
            if tok == "dyadic":
                continue
            parts = tok.split("..", 1) if ".." in tok else [tok]
            for part in parts:
                try:
                    v = int(part)
                except ValueError:
                    raise UsageError(f"{label} token not understood: {tok!r}") from None
                if v < 1:
                    raise UsageError(f"{label} values must be >= 1: got {tok!r}")

    for pm in moduli:
        p = pm.p
        hs = _expand_tokens(config.h_tokens, p)
        if config.command != "solve" and not hs:
            raise UsageError(f"no window lengths resolved for p = {p}")
        for h in hs:
            if h > p:
                raise UsageError(f"H = {h} exceeds p = {p}")
        if config.command == "verify-mvt":
            bad = [h for h in hs if h < 2]
            if bad:
                raise UsageError(
                    f"verify-mvt needs H >= 2 (log^2 bound degenerates): got {bad}"
                )
            too_big = [h for h in hs if h > p - 1]
            if too_big:
                raise UsageError(
                    f"verify-mvt intervals must fit inside (0, {p}): got {too_big}"
                )
            if config.J is not None:
                for h in hs:
                    if config.J * h > p - 1:
                        raise UsageError(
                            f"J = {config.J} disjoint intervals of length <= {h} "
                            f"cannot fit inside (0, {p})"
                        )
        if config.command in ("verify-weil", "verify-identity") and p > _WEIL_MAX_P:
            raise UsageError(
                f"{config.command} builds O(p^2) complete-sum tables; "
                f"p <= {_WEIL_MAX_P}"
            )
        if config.command == "solve":
            if bool(config.h_tokens) != bool(config.k_tokens):
                raise UsageError("solve needs both --H and --K, or neither")
            ks = _expand_tokens(config.k_tokens, p) if config.k_tokens else []
            for v in hs + ks:
                if v > p - 1:
                    raise UsageError(
                        f"interval length {v} cannot fit inside (0, {p})"
                    )
        _twists_for(p, config)  # validates fixed ell against each p
    return moduli


def _dash_row(columns: tuple[str, ...], **values) -> dict:
    row = {col: "-" for col in columns}
    row.update(values)
    return row


# ---------------------------------------------------------------------------
# Per-cell workers.  Each returns (row_dict, ok_flag).


def _cell_verify_lemma1(pm, ell, H) -> tuple[dict, bool]:
    spec = SumSpec(ell, pm)
    lhs = window_mean_square(spec, H)
    bound = window_mean_square_bound(H, pm)
    ok = lhs <= bound
    row = _dash_row(
        _VERIFY_COLUMNS,
        command="verify-lemma1", p=pm.p, ell=ell, H=H,
        lhs=lhs, bound=bound, ratio=lhs / bound, **{"pass": ok},
    )
    return row, ok


def _cell_verify_identity(pm, ell, H) -> tuple[dict, bool]:
    spec = SumSpec(ell, pm)
    lhs = window_mean_square(spec, H)
    rhs = spectral_mean_square(spec, H)
    ok = abs(lhs - rhs) <= _IDENTITY_RTOL * max(abs(lhs), abs(rhs), 1.0)
    row = _dash_row(
        _VERIFY_COLUMNS,
        command="verify-identity", p=pm.p, ell=ell, H=H,
        lhs=lhs, bound=rhs, ratio=lhs / rhs if rhs else math.inf, **{"pass": ok},
    )
    return row, ok


def _cell_verify_mvt(pm, ell, H, J, seed) -> tuple[dict, bool]:
    spec = SumSpec(ell, pm)
    fam = generate_disjoint_family(pm, H, J, seed)
    lhs = family_mean_square(spec, fam)
    bound = family_mean_square_bound(H, pm)
    ok = lhs <= bound
    row = _dash_row(
        _VERIFY_COLUMNS,
        command="verify-mvt", p=pm.p, ell=ell, H=H, J=fam.J,
        lhs=lhs, bound=bound, ratio=lhs / bound, **{"pass": ok},
    )
    return row, ok


def _cell_weil_complete(pm, ell) -> tuple[dict, bool]:
    table = kloosterman_table(SumSpec(ell, pm))
    lhs = float(np.abs(table[1:]).max())  # a = 1..p-1
    bound = 2.0 * pm.sqrt_p
    ok = lhs <= bound
    row = _dash_row(
        _VERIFY_COLUMNS,
        command="verify-weil", p=pm.p, ell=ell,
        lhs=lhs, bound=bound, ratio=lhs / bound, **{"pass": ok},
    )
    return row, ok


def _cell_weil_incomplete(pm, ell, H) -> tuple[dict, bool]:
    W = all_windows(SumSpec(ell, pm), H)
    lhs = float(np.abs(W).max())
    bound = 2.0 * (1.0 + pm.log_p) * pm.sqrt_p
    ok = lhs <= bound
    row = _dash_row(
        _VERIFY_COLUMNS,
        command="verify-weil", p=pm.p, ell=ell, H=H,
        lhs=lhs, bound=bound, ratio=lhs / bound, **{"pass": ok},
    )
    return row, ok


def _cell_solve(pm, H, K, J, seed, mode, capped) -> tuple[dict, bool]:
    fam = generate_family(pm, H, K, J, seed, mode)
    hit = family_first_soluble(fam, pm)
    if hit is None:
        row = dict.fromkeys(_SOLVE_COLUMNS, 0)
        row.update(p=pm.p, H=H, K=K, J=J, j_found=-1, x=-1, y=-1,
                   count_j=0, s1_j=0.0, s2_re=0.0, s2_im=0.0)
        return row, True  # insolubility is a finding, not a falsification
    j, _ = hit
    i1, i2 = fam.pairs[j - 1]
    rep = pair_report(j, i1, i2, pm)
    assert rep.witness is not None
    # The decomposition must reassemble the exact count; a mismatch is a
    # falsification event for the solve command.
    ok = (
        abs(rep.count - (rep.main + rep.error_re)) <= _COUNT_ATOL
        and abs(rep.error_im) <= _COUNT_ATOL
    )
    row = {
        "p": pm.p, "H": H, "K": K, "J": J,
        "j_found": rep.j, "x": rep.witness[0], "y": rep.witness[1],
        "count_j": rep.count, "s1_j": rep.main,
        "s2_re": rep.error_re, "s2_im": rep.error_im,
    }
    _ = capped
    return row, ok


def _cell_hooley(pm, ell, H) -> tuple[dict, bool]:
    stats = hooley_scan(SumSpec(ell, pm), H)
    row = {
        "command": "scan-hooley", "p": pm.p, "ell": ell, "H": H,
        "max_abs": stats.max_abs, "max_ratio": stats.max_ratio,
        "mean_sq_over_H": stats.mean_sq_over_H, "argmax_n": stats.argmax_n,
    }
    return row, True


def _cell_bench(pm, H) -> tuple[dict, bool]:
    # Timed externally like every other cell; the windows count is the
    # size of the scan.  Under --deterministic the timing is pinned, so
    # bench degrades to a smoke test by design.
    all_windows(SumSpec(1, pm), H)
    row = {"command": "bench", "p": pm.p, "H": H, "windows": pm.p}
    return row, True


def _build_jobs(config: ExperimentConfig, moduli) -> list[Callable[[], tuple[dict, bool]]]:
    """One closure per output row, already in sorted parameter order."""
    jobs: list[Callable[[], tuple[dict, bool]]] = []
    cmd = config.command
    for pm in moduli:
        p = pm.p
        hs = _expand_tokens(config.h_tokens, p)
        if cmd in ("verify-lemma1", "verify-identity"):
            for ell in _twists_for(p, config):
                for H in hs:
                    fn = _cell_verify_lemma1 if cmd == "verify-lemma1" else _cell_verify_identity
                    jobs.append(lambda pm=pm, ell=ell, H=H, fn=fn: fn(pm, ell, H))
        elif cmd == "verify-mvt":
            for ell in _twists_for(p, config):
                for H in hs:
                    J = config.J if config.J is not None else (p - 1) // H
                    seed = derive_seed(config.seed, p, ell, H)
                    jobs.append(
                        lambda pm=pm, ell=ell, H=H, J=J, seed=seed: _cell_verify_mvt(
                            pm, ell, H, J, seed
                        )
                    )
        elif cmd == "verify-weil":
            for ell in _twists_for(p, config):
                jobs.append(lambda pm=pm, ell=ell: _cell_weil_complete(pm, ell))
                for H in hs:
                    jobs.append(
                        lambda pm=pm, ell=ell, H=H: _cell_weil_incomplete(pm, ell, H)
                    )
        elif cmd == "solve":
            pair_lists = _solve_cells(config, pm)
            jobs.extend(pair_lists)
        elif cmd == "scan-hooley":
            for ell in _twists_for(p, config):
                for H in hs:
                    jobs.append(lambda pm=pm, ell=ell, H=H: _cell_hooley(pm, ell, H))
        elif cmd == "bench":
            for H in hs:
                jobs.append(lambda pm=pm, H=H: _cell_bench(pm, H))
    return jobs


def _solve_cells(config: ExperimentConfig, pm) -> list[Callable[[], tuple[dict, bool]]]:
    p = pm.p
    if config.h_tokens and config.k_tokens:
        hs = _expand_tokens(config.h_tokens, p)
        ks = _expand_tokens(config.k_tokens, p)
    else:
        # Documented default: the balanced two-thirds regime.  Its exact
        # parameters never fit inside (0, p) (see two_thirds_preset), so
        # reaching here without explicit --H/--K is a usage error with a
        # pointer at the regime's built-in infeasibility.
        h, k, _ = two_thirds_parameters(pm)
        if k > p - 1 or h > p - 1:
            raise UsageError(
                f"solve at p = {p} without --H/--K requests the balanced "
                f"two-thirds preset (H={h}, K={k}), which cannot fit inside "
                f"(0, {p}); pass explicit --H and --K"
            )
        hs, ks = [h], [k]
    cells = []
    for H in hs:
        for K in ks:
            if config.J is not None:
                J, capped = config.J, False
                if J * H > p - 1:
                    raise UsageError(
                        f"J = {J} disjoint intervals of length {H} cannot fit "
                        f"inside (0, {p})"
                    )
            else:
                want = solubility_threshold(H, K, pm, config.c)
                J = min(want, (p - 1) // H)
                capped = J < want
                if capped:
                    print(
                        f"note: p={p} H={H} K={K}: threshold J={want} exceeds "
                        f"capacity; using J={J}",
                        file=sys.stderr,
                    )
            seed = derive_seed(config.seed, p, H, K)
            cells.append(
                lambda pm=pm, H=H, K=K, J=J, seed=seed, capped=capped: _cell_solve(
                    pm, H, K, J, seed, config.mode, capped
                )
            )
    return cells


def _execute(jobs, config: ExperimentConfig) -> tuple[list[dict], bool]:
    """Run the cells, timing each; order of rows == order of jobs."""

    def timed(job):
        t0 = time.perf_counter()
        row, ok = job()
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        row["wall_time_ms"] = 0.0 if config.deterministic else round(elapsed_ms, 3)
        return row, ok

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(timed, jobs))
    else:
        results = [timed(job) for job in jobs]
    rows = [row for row, _ in results]
    all_ok = all(ok for _, ok in results)
    return rows, all_ok


def _normalize(v):
    """Collapse numpy scalars to builtins so CSV and JSON render cleanly."""
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return v


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _render(rows: list[dict], config: ExperimentConfig) -> str:
    columns = _COLUMNS_BY_COMMAND[config.command]
    rows = [{col: _normalize(row[col]) for col in columns} for row in rows]
    if config.fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    if not config.deterministic:
        stamp = datetime.now(timezone.utc).isoformat()
        buf.write(f"# generated {stamp}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_format_value(row[col]) for col in columns) + "\n")
    return buf.getvalue()


def run(config: ExperimentConfig) -> int:
    """Validate, sweep, write, and report.

    Returns the process exit code: 0 when every check passed, 2 when at
    least one falsification row was produced.  Usage problems raise
    UsageError before any output exists.
    """
    moduli = _validate(config)
    jobs = _build_jobs(config, moduli)
    rows, all_ok = _execute(jobs, config)
    text = _render(rows, config)
    if config.out is None:
        sys.stdout.write(text)
    else:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if all_ok else 2
