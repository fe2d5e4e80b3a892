"""Stable on-disk formats: params/key/report JSON and bitstream files.

Polynomials and register states are serialized as hexadecimal masks
with bit i holding the coefficient of x^i (or cell i), so files are
human-diffable and carry no endianness questions.  Bitstreams come in
two interchangeable forms:

* text: ASCII '0'/'1' with all whitespace ignored on read;
* binary: magic "ASGB", a little-endian 8-byte bit count, then the
  payload packed 8 bits per byte with bit t at byte t//8, position
  t mod 8 counted from the least significant bit.
"""

from __future__ import annotations

import json
from pathlib import Path

from .attack import AttackCounters, AttackReport
from .generator import AsgKey, AsgParams
from .gf2 import BinaryPolynomial, BitVector

BINARY_MAGIC = b"ASGB"


def _hex(mask: int) -> str:
    return f"0x{mask:x}"


def _mask(value) -> int:
    if isinstance(value, int):
        return value
    return int(value, 16)


def write_params(path: str | Path, params: AsgParams):
    doc = {
        "l": params.l,
        "m": params.m,
        "n": params.n,
        "poly_a": _hex(params.poly_a.mask),
        "poly_b": _hex(params.poly_b.mask),
        "poly_c": _hex(params.poly_c.mask),
    }
    _write_json(path, doc)


def read_params(path: str | Path, strict: bool = True) -> AsgParams:
    doc = json.loads(Path(path).read_text())
    return AsgParams(
        l=int(doc["l"]),
        m=int(doc["m"]),
        n=int(doc["n"]),
        poly_a=BinaryPolynomial(_mask(doc["poly_a"])),
        poly_b=BinaryPolynomial(_mask(doc["poly_b"])),
        poly_c=BinaryPolynomial(_mask(doc["poly_c"])),
        strict=strict,
    )


def key_to_dict(key: AsgKey) -> dict:
    return {
        "state_a": _hex(key.state_a.mask),
        "state_b": _hex(key.state_b.mask),
        "state_c": _hex(key.state_c.mask),
        "r": key.r,
        "s": key.s,
    }


def key_from_dict(doc: dict, params: AsgParams) -> AsgKey:
    return AsgKey(
        state_a=BitVector(_mask(doc["state_a"]), params.l),
        state_b=BitVector(_mask(doc["state_b"]), params.m),
        state_c=BitVector(_mask(doc["state_c"]), params.n),
        r=int(doc["r"]),
        s=int(doc["s"]),
    )


def write_key(path: str | Path, key: AsgKey):
    _write_json(path, key_to_dict(key))


def read_key(path: str | Path, params: AsgParams) -> AsgKey:
    return key_from_dict(json.loads(Path(path).read_text()), params)


def write_bits(path: str | Path, bits: list[int], fmt: str = "text"):
    if fmt == "text":
        lines = []
        for i in range(0, len(bits), 64):
            lines.append("".join(str(b & 1) for b in bits[i:i + 64]))
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))
    elif fmt == "binary":
        payload = bytearray((len(bits) + 7) // 8)
        for t, b in enumerate(bits):
            if b & 1:
                payload[t >> 3] |= 1 << (t & 7)
        blob = BINARY_MAGIC + len(bits).to_bytes(8, "little") + bytes(payload)
        Path(path).write_bytes(blob)
    else:
        raise ValueError(f"unknown bitstream format {fmt!r}")


def read_bits(path: str | Path) -> list[int]:
    """Reads either bitstream format, sniffing the binary magic."""
    raw = Path(path).read_bytes()
    if raw[:4] == BINARY_MAGIC:
        count = int.from_bytes(raw[4:12], "little")
        payload = raw[12:]
        if len(payload) < (count + 7) // 8:
            raise ValueError("binary bitstream truncated")
        return [(payload[t >> 3] >> (t & 7)) & 1 for t in range(count)]
    bits = []
    for ch in raw.decode("ascii"):
        if ch in "01":
            bits.append(ch == "1")
        elif not ch.isspace():
            raise ValueError(f"unexpected character {ch!r} in text bitstream")
    return [int(b) for b in bits]


def report_to_dict(report: AttackReport) -> dict:
    return {
        "recovered_keys": [key_to_dict(k) for k in report.recovered_keys],
        "counters": {
            "a_states_tried": report.counters.a_states_tried,
            "bm_runs": report.counters.bm_runs,
            "trace_solves": report.counters.trace_solves,
            "verified_candidates": report.counters.verified_candidates,
        },
        "wall_time_seconds": report.wall_time_seconds,
    }


def write_report(path: str | Path, report: AttackReport):
    _write_json(path, report_to_dict(report))


def read_report(path: str | Path, params: AsgParams) -> AttackReport:
    doc = json.loads(Path(path).read_text())
    keys = [key_from_dict(d, params) for d in doc["recovered_keys"]]
    c = doc["counters"]
    counters = AttackCounters(
        a_states_tried=c["a_states_tried"],
        bm_runs=c["bm_runs"],
        trace_solves=c["trace_solves"],
        verified_candidates=c["verified_candidates"],
    )
    return AttackReport(keys, counters, doc["wall_time_seconds"])


def _write_json(path: str | Path, doc: dict):
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
