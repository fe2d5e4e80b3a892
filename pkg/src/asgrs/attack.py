"""Algebraic key recovery for the ASG(r,s) from a short keystream.

The search runs over all 2^l control states and both guesses for the
first decimated B-bit.  For each guess the two decimated streams are
peeled out of consecutive keystream differences (a step with control
bit 1 changes only the B-side stream, a step with 0 only the C-side),
short LFSRs are fitted to them, and the guess is kept only if replaying
the fitted model reproduces every supplied keystream bit.

Surviving candidates then have their jump sizes recovered: writing the
undecimated register output as b_t = Tr(u a^t) for a root a of the
public feedback polynomial, the decimated stream is Tr(u g^t) with
g = a^r, which is linear in the coordinates of u.  For each admissible
r the m x m trace system is solved and the solution checked against
further stream bits.  The winning (r, u) yields the register's initial
state via b_t = Tr(u a^t).

Note that (r, u) is only determined up to Frobenius conjugacy:
Tr(u g^t) = Tr(u^2 (g^2)^t), so jumps r and 2r mod (2^m - 1) with
matching u-powers generate identical streams.  The ascending search
returns the smallest admissible r of the class, and the assembled key
is keystream-equivalent to the one used for encryption.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .analysis import LfsrFit, berlekamp_massey
from .errors import UnsupportedParameterError
from .field import FieldContext, FieldElement, field_context
from .gf2 import BinaryPolynomial, BitMatrix, BitVector, invert
from .generator import AsgKey, AsgParams, keystream, validate_params
from .registers import (
    BitSequence,
    LfsrSpec,
    _de_bruijn_next,
    output_sequence,
)

ORACLE_WORK_CAP = 1 << 26


@dataclass
class AttackCounters:
    """Work actually performed, for empirical complexity measurements."""

    a_states_tried: int = 0
    bm_runs: int = 0
    trace_solves: int = 0
    verified_candidates: int = 0

    def merge(self, other: "AttackCounters"):
        self.a_states_tried += other.a_states_tried
        self.bm_runs += other.bm_runs
        self.trace_solves += other.trace_solves
        self.verified_candidates += other.verified_candidates


@dataclass(frozen=True)
class AttackConfig:
    """Attack inputs and knobs.

    ``verify_margin`` is the number of keystream bits the caller wants
    held out beyond what fitting consumes; candidates are always checked
    against every supplied bit, so the margin takes effect whenever the
    keystream is long enough to provide it.  It is floored at l + 20 so
    that the expected number of chance survivors across all 2^(l+1)
    guesses stays below 2^-19 at the suggested keystream length.
    """

    params: AsgParams
    keystream: list[int]
    verify_margin: int | None = None
    max_candidates: int = 16
    worker_count: int = 1

    def __post_init__(self):
        violations = validate_params(self.params)
        if violations:
            raise ValueError("invalid params: " + "; ".join(violations))
        minimum = 3 * (self.params.m + self.params.n)
        if len(self.keystream) < minimum:
            raise ValueError(
                f"keystream of {len(self.keystream)} bits is below the "
                f"minimum requirement of 3(m+n) = {minimum}")
        floor = self.params.l + 20
        if self.verify_margin is None:
            object.__setattr__(self, "verify_margin", floor)
        elif self.verify_margin < floor:
            raise ValueError(f"verify_margin must be at least l + 20 = {floor}")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be positive")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")


def suggested_keystream_length(params: AsgParams, verify_margin: int | None = None) -> int:
    """Comfortable default: 4(m+n) bits for fitting plus the verify margin."""
    margin = params.l + 20 if verify_margin is None else verify_margin
    return 4 * (params.m + params.n) + margin


class FitFailure(Enum):
    INSUFFICIENT_BITS = "insufficient-bits"
    COMPLEXITY_EXCEEDED = "complexity-exceeded"


@dataclass(frozen=True)
class CandidateModel:
    """A surviving (control state, beta_0) guess with its fitted registers."""

    a_init: BitVector
    beta0: int
    beta_fit: LfsrFit
    lambda_fit: LfsrFit


def _control_bits(params: AsgParams, a_mask: int, count: int) -> list[int]:
    taps = LfsrSpec(params.l, params.poly_a).taps_mask
    span = params.l
    out = []
    s = a_mask
    for _ in range(count):
        out.append(s & 1)
        s = _de_bruijn_next(s, taps, span)
    return out


def reconstruct_streams(a_seq: BitSequence, keystream: BitSequence,
                        beta0: int) -> tuple[list[int], list[int]]:
    """Peel the two decimated streams out of the keystream.

    Requires len(a_seq) >= len(keystream) - 1.  Each step t with control
    bit 1 extends the B-side stream by beta_{p+1} = beta_p ^ z_t ^ z_{t+1};
    a 0 extends the C-side stream the same way.  Short keystreams simply
    yield short prefixes.
    """
    if len(keystream) == 0:
        return [], []
    if len(a_seq) < len(keystream) - 1:
        raise ValueError("control sequence shorter than keystream - 1")
    beta = [beta0 & 1]
    lam = [keystream[0] ^ (beta0 & 1)]
    for t in range(len(keystream) - 1):
        diff = keystream[t] ^ keystream[t + 1]
        if a_seq[t]:
            beta.append(beta[-1] ^ diff)
        else:
            lam.append(lam[-1] ^ diff)
    return beta, lam


def fit_candidate(config: AttackConfig, a_init: BitVector, beta0: int,
                  counters: AttackCounters | None = None) -> CandidateModel | FitFailure:
    """Reconstruct, harvest quotas of 2m/2n bits, and fit both registers.

    The fits run on exactly the first 2m (resp. 2n) harvested bits, the
    budget that suffices to pin down a register of the public length;
    anything above the length cap cannot be the real register and is
    rejected outright.
    """
    params = config.params
    m, n = params.m, params.n
    z = config.keystream
    a_seq = _control_bits(params, a_init.mask, max(len(z) - 1, 0))
    beta, lam = reconstruct_streams(a_seq, z, beta0)
    if len(beta) < 2 * m or len(lam) < 2 * n:
        return FitFailure.INSUFFICIENT_BITS
    beta_fit = berlekamp_massey(beta[:2 * m])
    if counters:
        counters.bm_runs += 1
    if beta_fit.linear_complexity > m:
        return FitFailure.COMPLEXITY_EXCEEDED
    lambda_fit = berlekamp_massey(lam[:2 * n])
    if counters:
        counters.bm_runs += 1
    if lambda_fit.linear_complexity > n:
        return FitFailure.COMPLEXITY_EXCEEDED
    return CandidateModel(a_init, beta0, beta_fit, lambda_fit)


def verify_candidate(config: AttackConfig, cand: CandidateModel) -> bool:
    """Replay the fitted model and compare every supplied keystream bit."""
    z = config.keystream
    if not z:
        return True
    a_seq = _control_bits(config.params, cand.a_init.mask, len(z) - 1)
    ones = sum(a_seq)
    beta_hat = cand.beta_fit.extend(ones + 1)
    lam_hat = cand.lambda_fit.extend(len(a_seq) - ones + 1)
    p = q = 0
    if (beta_hat[0] ^ lam_hat[0]) != z[0]:
        return False
    for t, a in enumerate(a_seq):
        if a:
            p += 1
        else:
            q += 1
        if (beta_hat[p] ^ lam_hat[q]) != z[t + 1]:
            return False
    return True


@dataclass(frozen=True)
class DecimationFit:
    """Recovered decimation: jump r, trace coefficient u, and the first
    m output bits of the undecimated register (b_t = Tr(u a^t))."""

    r: int
    u: FieldElement
    initial_bits: BitVector


@lru_cache(maxsize=None)
def _trace_solver(ctx: FieldContext, r: int):
    """Per-(field, r) system: gamma, the m x m trace matrix, and its inverse.

    Row t, column i holds Tr(x^i * gamma^t).  The inverse is None when
    the matrix is rank deficient (not observed for primitive moduli, but
    treated as recoverable data rather than assumed impossible).
    """
    m = ctx.m
    gamma = ctx.pow(ctx.alpha.mask, r)
    rows = []
    g = 1
    for _ in range(m):
        row = 0
        for i in range(m):
            if ctx.trace_of(ctx.mul(1 << i, g)):
                row |= 1 << i
        rows.append(row)
        g = ctx.mul(g, gamma)
    matrix = BitMatrix(m, m, tuple(rows))
    try:
        inv = invert(matrix)
    except ValueError:
        inv = None
    return gamma, matrix, inv


def trace_system_matrix(ctx: FieldContext, r: int) -> BitMatrix:
    """The m x m coefficient matrix of the trace system for gamma = alpha^r."""
    return _trace_solver(ctx, r)[1]


def recover_decimation(ctx: FieldContext, observed: BitSequence,
                       verify_bits: int | None = None,
                       counters: AttackCounters | None = None,
                       connection_filter: BinaryPolynomial | None = None) -> DecimationFit | None:
    """Find (r, u) with observed_t = Tr(u (alpha^r)^t), plus the register head.

    Ascending candidates r coprime to 2^m - 1 are tried; the first whose
    solved u survives `verify_bits` further stream positions wins.  The
    all-zero solution is excluded (a zero register state is invalid), and
    None means no admissible pair explains the stream.

    ``connection_filter`` is an optional shortcut, off by default: skip
    any r whose substitute feedback (the minimal polynomial of alpha^r)
    differs from a connection polynomial already fitted to the stream.
    Conjugate exponents share the minimal polynomial, so the filter never
    changes which candidate wins, only how many systems get solved.
    """
    m = ctx.m
    v = 2 * m if verify_bits is None else verify_bits
    if len(observed) < m + v:
        raise ValueError(f"need at least m + {v} = {m + v} observed bits")
    head_mask = 0
    for t in range(m):
        head_mask |= (observed[t] & 1) << t
    period = (1 << m) - 1
    for r in range(1, period):
        if math.gcd(r, period) != 1:
            continue
        if connection_filter is not None:
            if ctx.element(ctx.pow(ctx.alpha.mask, r)).minimal_polynomial() != connection_filter:
                continue
        gamma, _, inv = _trace_solver(ctx, r)
        if counters:
            counters.trace_solves += 1
        if inv is None:
            continue
        u = 0
        for j, row in enumerate(inv.row_masks):
            u |= ((row & head_mask).bit_count() & 1) << j
        if u == 0:
            continue
        # solution matches observed[:m] by construction; check the rest
        e = ctx.pow(gamma, m)
        e = ctx.mul(u, e)
        ok = True
        for t in range(m, m + v):
            if ctx.trace_of(e) != observed[t]:
                ok = False
                break
            e = ctx.mul(e, gamma)
        if not ok:
            continue
        alpha = ctx.alpha.mask
        bits = []
        e = u
        for _ in range(m):
            bits.append(ctx.trace_of(e))
            e = ctx.mul(e, alpha)
        return DecimationFit(r, ctx.element(u), BitVector.from_bits(bits))
    return None


@dataclass(frozen=True)
class AttackReport:
    recovered_keys: list[AsgKey]
    counters: AttackCounters
    wall_time_seconds: float


def _bits_to_cells(bits: BitVector) -> BitVector:
    # output bits b_0..b_{m-1}  ->  register cells (cell i = b_{m-1-i})
    m = bits.length
    mask = 0
    for i in range(m):
        mask |= bits[m - 1 - i] << i
    return BitVector(mask, m)


def _recover_key(config: AttackConfig, cand: CandidateModel,
                 counters: AttackCounters) -> AsgKey | None:
    params = config.params
    z = config.keystream
    a_seq = _control_bits(params, cand.a_init.mask, len(z) - 1)
    beta, lam = reconstruct_streams(a_seq, z, cand.beta0)

    def recover(poly, m, fit, harvested):
        ctx = field_context(poly)
        want = max(3 * m, len(harvested))
        obs = fit.extend(want)
        return recover_decimation(ctx, obs, verify_bits=len(obs) - m,
                                  counters=counters)

    fit_b = recover(params.poly_b, params.m, cand.beta_fit, beta)
    if fit_b is None:
        return None
    fit_c = recover(params.poly_c, params.n, cand.lambda_fit, lam)
    if fit_c is None:
        return None
    key = AsgKey(
        state_a=cand.a_init,
        state_b=_bits_to_cells(fit_b.initial_bits),
        state_c=_bits_to_cells(fit_c.initial_bits),
        r=fit_b.r,
        s=fit_c.r,
    )
    # soundness gate: a reported key must regenerate the whole input
    if keystream(params, key, len(z)) != list(z):
        return None
    return key


def _attack_chunk(config: AttackConfig, lo: int, hi: int) -> tuple[list[AsgKey], AttackCounters]:
    counters = AttackCounters()
    keys: list[AsgKey] = []
    l = config.params.l
    for a_mask in range(lo, hi):
        counters.a_states_tried += 1
        a_init = BitVector(a_mask, l)
        for beta0 in (0, 1):
            cand = fit_candidate(config, a_init, beta0, counters)
            if isinstance(cand, FitFailure):
                continue
            if not verify_candidate(config, cand):
                continue
            counters.verified_candidates += 1
            key = _recover_key(config, cand, counters)
            if key is not None:
                keys.append(key)
    return keys, counters


def run_attack(config: AttackConfig) -> AttackReport:
    """Exhaust all 2^l control states and both beta_0 guesses.

    Every reported key regenerates the entire input keystream; reports
    are deterministic for a given config regardless of worker_count
    (wall time aside).  The candidate list is truncated to
    max_candidates after the full sweep, so counters always reflect the
    complete search.
    """
    start = time.perf_counter()
    total = 1 << config.params.l
    workers = min(config.worker_count, total)
    bounds = [(total * i // workers, total * (i + 1) // workers)
              for i in range(workers)]
    if workers == 1:
        parts = [_attack_chunk(config, lo, hi) for lo, hi in bounds]
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_attack_chunk, config, lo, hi)
                       for lo, hi in bounds]
            parts = [f.result() for f in futures]
    keys: list[AsgKey] = []
    counters = AttackCounters()
    for part_keys, part_counters in parts:
        keys.extend(part_keys)
        counters.merge(part_counters)
    keys = keys[:config.max_candidates]
    return AttackReport(keys, counters, time.perf_counter() - start)


def _coprime_jumps(length: int) -> list[int]:
    period = (1 << length) - 1
    return [r for r in range(1, period) if math.gcd(r, period) == 1]


def brute_force_oracle(params: AsgParams, target: BitSequence) -> list[AsgKey]:
    """All valid keys whose keystream matches `target`, by exhaustion.

    Independent of the generator's stepping engine: every candidate
    keystream bit is read off precomputed output cycles as
    z_t = b[(p_t * r + off_b) mod 2^m-1] ^ c[(q_t * s + off_c) mod 2^n-1],
    where p_t/q_t count the control bits seen so far.
    """
    violations = validate_params(params)
    if violations:
        raise ValueError("invalid params: " + "; ".join(violations))
    l, m, n = params.l, params.m, params.n
    jumps_r = _coprime_jumps(m)
    jumps_s = _coprime_jumps(n)
    work = (1 << (l + m + n)) * len(jumps_r) * len(jumps_s)
    if work > ORACLE_WORK_CAP:
        raise UnsupportedParameterError(
            f"oracle work 2^{math.log2(work):.1f} exceeds the cap of "
            f"2^{int(math.log2(ORACLE_WORK_CAP))}")

    spec_b = LfsrSpec(m, params.poly_b)
    spec_c = LfsrSpec(n, params.poly_c)
    pm, pn = (1 << m) - 1, (1 << n) - 1
    b_states, b_cycle = _state_cycle(spec_b, pm)
    c_states, c_cycle = _state_cycle(spec_c, pn)
    a_taps = LfsrSpec(l, params.poly_a).taps_mask
    a_states = []
    s = 0
    for _ in range(1 << l):
        a_states.append(s)
        s = _de_bruijn_next(s, a_taps, l)
    control = [st & 1 for st in a_states]

    z = list(target)
    big = len(z)
    out: list[AsgKey] = []
    for phase in range(1 << l):
        p_arr = [0] * big
        q_arr = [0] * big
        for t in range(big - 1):
            if control[(phase + t) % (1 << l)]:
                p_arr[t + 1] = p_arr[t] + 1
                q_arr[t + 1] = q_arr[t]
            else:
                p_arr[t + 1] = p_arr[t]
                q_arr[t + 1] = q_arr[t] + 1
        qs_for_s = {s_: [(q_arr[t] * s_) % pn for t in range(big)] for s_ in jumps_s}
        for r in jumps_r:
            pr = [(p_arr[t] * r) % pm for t in range(big)]
            for off_b in range(pm):
                need = [z[t] ^ b_cycle[(pr[t] + off_b) % pm] for t in range(big)]
                for s_ in jumps_s:
                    qs = qs_for_s[s_]
                    for off_c in range(pn):
                        if all(c_cycle[(qs[t] + off_c) % pn] == need[t]
                               for t in range(big)):
                            out.append(AsgKey(
                                BitVector(a_states[phase], l),
                                BitVector(b_states[off_b], m),
                                BitVector(c_states[off_c], n),
                                r, s_))
    return out


def _state_cycle(spec: LfsrSpec, period: int) -> tuple[list[int], list[int]]:
    states = []
    ref = BitVector(1, spec.length)
    bits = output_sequence(spec, ref, period)
    s = ref.mask
    taps = spec.taps_mask
    full = (1 << spec.length) - 1
    for _ in range(period):
        states.append(s)
        fb = (s & taps).bit_count() & 1
        s = ((s << 1) & full) | fb
    return states, bits
