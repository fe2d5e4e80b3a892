import math
import random

import pytest

from asgrs import AsgKey, AsgParams, BitVector
from asgrs.registers import primitive_polynomial


def make_params(l, m, n, strict=True):
    return AsgParams(l, m, n,
                     primitive_polynomial(l),
                     primitive_polynomial(m),
                     primitive_polynomial(n),
                     strict=strict)


def coprime_jump(rng, length):
    period = (1 << length) - 1
    while True:
        j = rng.randrange(1, period)
        if math.gcd(j, period) == 1:
            return j


def random_valid_key(params, rng):
    return AsgKey(
        state_a=BitVector(rng.randrange(0, 1 << params.l), params.l),
        state_b=BitVector(rng.randrange(1, 1 << params.m), params.m),
        state_c=BitVector(rng.randrange(1, 1 << params.n), params.n),
        r=coprime_jump(rng, params.m),
        s=coprime_jump(rng, params.n),
    )


@pytest.fixture
def rng():
    return random.Random(0xA56)


# ---------------------------------------------------------------------------
# Straight-line reference simulator, written directly from the generator
# description with plain bit lists.  Deliberately independent of the
# package's packed-integer engine; used as an oracle.


def _ref_lfsr_step(cells, poly_mask):
    # new cell 0 = sum_i f_i * cell[len-1-i]; everything shifts up
    fb = 0
    for i in range(len(cells)):
        if (poly_mask >> i) & 1:
            fb ^= cells[len(cells) - 1 - i]
    return [fb] + cells[:-1]


def _ref_debruijn_step(cells, poly_mask):
    nxt = _ref_lfsr_step(cells, poly_mask)
    if all(c == 0 for c in cells[:-1]):
        nxt[0] ^= 1
    return nxt


def reference_keystream(params, key, count):
    a = list(key.state_a)
    b = list(key.state_b)
    c = list(key.state_c)
    out = []
    for t in range(count):
        out.append(b[-1] ^ c[-1])
        if t == count - 1:
            break
        if a[0]:
            for _ in range(key.r):
                b = _ref_lfsr_step(b, params.poly_b.mask)
        else:
            for _ in range(key.s):
                c = _ref_lfsr_step(c, params.poly_c.mask)
        a = _ref_debruijn_step(a, params.poly_a.mask)
    return out
