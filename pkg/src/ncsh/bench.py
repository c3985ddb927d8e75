"""Encryption time and working-set benchmark across the three suites.

Each trial seals a random message through the same path the handshake uses
and opens it again.  ``encrypt_us`` and ``decrypt_us`` time the payload
stages only; RSA key generation is reported separately as ``keygen_us``.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import random
import statistics
import time
from dataclasses import dataclass, field

from .errors import InvalidArgument
from .handshake.envelope import open as open_envelope
from .handshake.envelope import seal
from .handshake.state import Phase, Role, SessionState
from .handshake.suite import calibrate
from .primitives.rsa import LEVEL_BITS, SecurityLevel, rsa_keygen
from .primitives.symmetric import CipherSuite, random_bytes

DEFAULT_SIZES = (10, 100, 500, 1000, 1500, 2000)
CSV_FIELDS = ("suite", "size", "keygen_us", "encrypt_us", "decrypt_us", "ciphertext_bytes", "peak_buffer_bytes")
SUITE_ORDER = (CipherSuite.AES, CipherSuite.DES, CipherSuite.RSA)


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple = DEFAULT_SIZES
    suites: tuple = SUITE_ORDER
    trials: int = 10
    level: SecurityLevel = SecurityLevel.L1
    include_keygen: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "suites", tuple(CipherSuite(s) for s in self.suites))
        object.__setattr__(self, "level", SecurityLevel(self.level))
        if not self.sizes or min(self.sizes) < 1:
            raise InvalidArgument("sizes must be a non-empty list of positive octet counts")
        if not self.suites or len(set(self.suites)) != len(self.suites):
            raise InvalidArgument("suites must be non-empty and distinct")
        if self.trials < 3:
            raise InvalidArgument("trials must be at least 3")


@dataclass(frozen=True)
class BenchRecord:
    suite: CipherSuite
    size: int
    keygen_us: int
    encrypt_us: int
    decrypt_us: int
    ciphertext_bytes: int
    peak_buffer_bytes: int

    def row(self) -> list:
        return [self.suite.name] + [getattr(self, f) for f in CSV_FIELDS[1:]]


def _peers(cc, st, params):
    sender = SessionState(Role.COMMAND_CENTRE, cc, params, phase=Phase.READY, peer_public=st.public)
    receiver = SessionState(Role.SHOOTER_TARGET, st, params, phase=Phase.READY, peer_public=cc.public)
    return sender, receiver


def _trial(suite, size, cfg, keys, rng):
    params = calibrate(cfg.level, suite)
    bits = LEVEL_BITS[cfg.level]
    keygen_us = 0.0
    if cfg.include_keygen:
        t0 = time.perf_counter_ns()
        keys = (rsa_keygen(bits, rng), rsa_keygen(bits, rng))
        keygen_us = (time.perf_counter_ns() - t0) / 1000.0
    sender, receiver = _peers(*keys, params)
    plaintext = random_bytes(rng, size)
    sealed, opened = {}, {}
    env = seal(sender, plaintext, rng, sealed)
    if open_envelope(receiver, env, opened) != plaintext:
        raise AssertionError(f"{suite.name} round trip failed at {size} octets")
    return keygen_us, sealed["encrypt_us"], opened["decrypt_us"], len(env.ciphertext), sealed["encrypt_peak_octets"]


def run_bench(cfg: BenchConfig, rng=None) -> list[BenchRecord]:
    """Median timings per (suite, size), in suite-major then size order."""
    rng = rng if rng is not None else random.Random()
    bits = LEVEL_BITS[cfg.level]
    keys = (rsa_keygen(bits, rng), rsa_keygen(bits, rng))
    records = []
    for suite in cfg.suites:
        for size in cfg.sizes:
            _trial(suite, size, dataclasses.replace(cfg, include_keygen=False), keys, rng)  # warm up
            runs = [_trial(suite, size, cfg, keys, rng) for _ in range(cfg.trials)]
            cols = list(zip(*runs))
            records.append(BenchRecord(
                suite=suite,
                size=size,
                keygen_us=round(statistics.median(cols[0])),
                encrypt_us=round(statistics.median(cols[1])),
                decrypt_us=round(statistics.median(cols[2])),
                ciphertext_bytes=max(cols[3]),
                peak_buffer_bytes=max(cols[4]),
            ))
    return records


def csv_text(records) -> str:
    if not records:
        raise InvalidArgument("no records to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def write_csv(records, destination) -> None:
    """Write to a path or a text stream; write errors propagate."""
    _write(csv_text(records), destination)


def json_text(records) -> str:
    if not records:
        raise InvalidArgument("no records to write")
    rows = [dict(zip(CSV_FIELDS, r.row())) for r in records]
    return json.dumps(rows, indent=2) + "\n"


def write_json(records, destination) -> None:
    _write(json_text(records), destination)


def _write(text, destination):
    if hasattr(destination, "write"):
        destination.write(text)
        return
    with open(destination, "w", newline="") as fh:
        fh.write(text)


def _record(row: dict) -> BenchRecord:
    try:
        return BenchRecord(CipherSuite[row["suite"]], *(int(row[f]) for f in CSV_FIELDS[1:]))
    except (KeyError, ValueError) as exc:
        raise InvalidArgument(f"bad bench row {row}: {exc}") from None


def read_csv(source) -> list[BenchRecord]:
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, newline="") as fh:
            text = fh.read()
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise InvalidArgument(f"unexpected CSV header {reader.fieldnames}")
    return [_record(row) for row in reader]


def read_json(source) -> list[BenchRecord]:
    if hasattr(source, "read"):
        rows = json.load(source)
    else:
        with open(source) as fh:
            rows = json.load(fh)
    return [_record(row) for row in rows]


@dataclass
class OrderingSummary:
    sizes: list
    encrypt_rank: dict = field(default_factory=dict)  # size -> suites, fastest first
    buffer_rank: dict = field(default_factory=dict)  # size -> suites, smallest first
    rsa_slowest_everywhere: bool | None = None
    rsa_largest_buffer_everywhere: bool | None = None
    # size -> "AES<DES", "DES<AES" or "AES=DES"; observed, never asserted
    aes_vs_des: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = []
        for s in self.sizes:
            enc = " < ".join(x.name for x in self.encrypt_rank[s])
            buf = " < ".join(x.name for x in self.buffer_rank[s])
            extra = f"  aes/des: {self.aes_vs_des[s]}" if s in self.aes_vs_des else ""
            out.append(f"size {s:>5}: time {enc}; buffer {buf}{extra}")
        out.append(f"RSA slowest at every size: {self.rsa_slowest_everywhere}")
        out.append(f"RSA largest buffer at every size: {self.rsa_largest_buffer_everywhere}")
        return out


def _rank(recs, key):
    return [r.suite for r in sorted(recs, key=lambda r: (key(r), SUITE_ORDER.index(r.suite)))]


def summarize(records) -> OrderingSummary:
    by_suite: dict = {}
    for r in records:
        sizes = by_suite.setdefault(r.suite, {})
        if r.size in sizes:
            raise InvalidArgument(f"duplicate record for {r.suite.name} at {r.size}")
        sizes[r.size] = r
    if len(by_suite) < 2:
        raise InvalidArgument("summarize needs records for at least two suites")
    coverage = {frozenset(v) for v in by_suite.values()}
    if len(coverage) != 1:
        raise InvalidArgument("suites do not cover the same sizes")
    sizes = sorted(next(iter(coverage)))
    summary = OrderingSummary(sizes)
    has_rsa = CipherSuite.RSA in by_suite
    slowest = largest = has_rsa
    for s in sizes:
        recs = [by_suite[x][s] for x in SUITE_ORDER if x in by_suite]
        summary.encrypt_rank[s] = _rank(recs, lambda r: r.encrypt_us)
        summary.buffer_rank[s] = _rank(recs, lambda r: r.peak_buffer_bytes)
        if has_rsa:
            rsa = by_suite[CipherSuite.RSA][s]
            others = [r for r in recs if r.suite is not CipherSuite.RSA]
            slowest = slowest and all(rsa.encrypt_us > r.encrypt_us for r in others)
            largest = largest and all(rsa.peak_buffer_bytes > r.peak_buffer_bytes for r in others)
        if CipherSuite.AES in by_suite and CipherSuite.DES in by_suite:
            a, d = by_suite[CipherSuite.AES][s].encrypt_us, by_suite[CipherSuite.DES][s].encrypt_us
            summary.aes_vs_des[s] = "AES<DES" if a < d else "DES<AES" if d < a else "AES=DES"
    if has_rsa:
        summary.rsa_slowest_everywhere = slowest
        summary.rsa_largest_buffer_everywhere = largest
    return summary
