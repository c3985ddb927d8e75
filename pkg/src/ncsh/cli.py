"""``ncsh`` command line: keygen, listen, send, bench, selftest.

Exit codes: 0 ok, 2 usage, 3 delivery failed, 4 crypto or verification
failure, 5 I/O.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import NcshError
from .primitives.rsa import LEVEL_BITS, SecurityLevel, rsa_keygen
from .primitives.symmetric import CipherSuite

EXIT_OK, EXIT_USAGE, EXIT_DELIVERY, EXIT_CRYPTO, EXIT_IO = 0, 2, 3, 4, 5

_CRYPTO_STATUSES = {"signature-invalid", "corrupt-ciphertext", "peer-key-mismatch"}


@dataclass(frozen=True)
class Keygen:
    level: SecurityLevel
    out_prefix: str
    seed: int | None = None


@dataclass(frozen=True)
class Listen:
    port: int
    key_prefix: str | None
    once: bool = False
    level: SecurityLevel = SecurityLevel.L1
    seed: int | None = None


@dataclass(frozen=True)
class Send:
    host: str
    port: int
    key_prefix: str | None
    peer_hint: str | None
    suite: CipherSuite
    level: SecurityLevel
    message: bytes | None = None
    file: str | None = None
    timeout_ms: int = 500
    max_retries: int = 5
    as_json: bool = False
    seed: int | None = None


@dataclass(frozen=True)
class Bench:
    sizes: tuple
    trials: int
    level: SecurityLevel
    include_keygen: bool
    out: str | None
    json_out: str | None = None
    seed: int | None = None


@dataclass(frozen=True)
class Selftest:
    pass


def _level(text):
    try:
        return SecurityLevel[text.upper()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"level must be one of L1, L2, L3, not {text!r}") from None


def _suite(text):
    try:
        return CipherSuite[text.upper()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"suite must be aes, des or rsa, not {text!r}") from None


def _sizes(text):
    try:
        sizes = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def _port(text):
    port = int(text)
    if not 0 <= port <= 0xFFFF:
        raise argparse.ArgumentTypeError(f"port out of range: {port}")
    return port


def build_parser() -> argparse.ArgumentParser:
    from .netio.transport import listener_port

    p = argparse.ArgumentParser(prog="ncsh", description="Signed, encrypted messages between two peers over UDP.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True, metavar="{keygen,listen,send,bench,selftest}")

    def common(sp, seed=True):
        sp.add_argument("--level", type=_level, default=SecurityLevel.L1, help="L1, L2 or L3 (default L1)")
        if seed:
            sp.add_argument("--seed", type=int, help="seed the RNG (reproducible runs; not for real keys)")

    kg = sub.add_parser("keygen", help="write PREFIX.pub and PREFIX.key")
    common(kg)
    kg.add_argument("--out", required=True, metavar="PREFIX")

    ls = sub.add_parser("listen", help="run the shooter target")
    common(ls)
    ls.add_argument("--port", type=_port, default=listener_port())
    ls.add_argument("--key", metavar="PREFIX", help="own key pair (default: a fresh one)")
    ls.add_argument("--once", action="store_true", help="exit after one session")

    sd = sub.add_parser("send", help="run the command centre")
    common(sd)
    sd.add_argument("host")
    sd.add_argument("--port", type=_port, default=listener_port())
    sd.add_argument("--suite", type=_suite, default=CipherSuite.AES, help="aes, des or rsa (default aes)")
    sd.add_argument("--key", metavar="PREFIX", help="own key pair (default: a fresh one)")
    sd.add_argument("--peer-key", metavar="PATH", help="expected .pub of the listener")
    sd.add_argument("--timeout-ms", type=int, default=500)
    sd.add_argument("--retries", type=int, default=5)
    sd.add_argument("--json", action="store_true", help="print the outcome as JSON")
    msg = sd.add_mutually_exclusive_group(required=True)
    msg.add_argument("--msg", metavar="STRING")
    msg.add_argument("--file", metavar="PATH")

    bn = sub.add_parser("bench", help="time AES, DES and RSA over a range of sizes")
    common(bn)
    bn.add_argument("--sizes", type=_sizes, default=(10, 100, 500, 1000, 1500, 2000))
    bn.add_argument("--trials", type=int, default=10)
    bn.add_argument("--include-keygen", action="store_true")
    bn.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")
    bn.add_argument("--json", metavar="PATH", help="also write a JSON mirror")

    sub.add_parser("selftest", help="known-answer and round-trip checks")
    return p


def parse_args(argv) -> tuple:
    """Return ``(command, verbose)``; usage errors exit with status 2."""
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.command == "keygen":
        cmd = Keygen(a.level, a.out, a.seed)
    elif a.command == "listen":
        cmd = Listen(a.port, a.key, a.once, a.level, a.seed)
    elif a.command == "send":
        if a.timeout_ms <= 0 or a.retries < 0:
            parser.error("--timeout-ms must be positive and --retries non-negative")
        cmd = Send(a.host, a.port, a.key, a.peer_key, a.suite, a.level,
                   a.msg.encode() if a.msg is not None else None, a.file,
                   a.timeout_ms, a.retries, a.json, a.seed)
    elif a.command == "bench":
        if a.trials < 3:
            parser.error("--trials must be at least 3")
        cmd = Bench(a.sizes, a.trials, a.level, a.include_keygen, a.out, a.json, a.seed)
    else:
        cmd = Selftest()
    return cmd, a.verbose


def show_plaintext(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        return data.hex()


def exit_code_for(status: str) -> int:
    if status == "ok":
        return EXIT_OK
    if status in _CRYPTO_STATUSES:
        return EXIT_CRYPTO
    return EXIT_DELIVERY


def _rng(seed):
    return random.Random(seed) if seed is not None else random.SystemRandom()


class KeyFileError(Exception):
    pass


def _read_key(reader, path):
    try:
        return reader(path)
    except NcshError as exc:
        raise KeyFileError(f"{path}: {exc}") from None


def _keys(prefix, level, rng):
    from .primitives.keyfile import read_private

    if prefix is None:
        return rsa_keygen(LEVEL_BITS[level], rng)
    return _read_key(read_private, f"{prefix}.key")


def _keygen(cmd: Keygen, out):
    from .primitives.keyfile import write_keypair

    kp = rsa_keygen(LEVEL_BITS[cmd.level], _rng(cmd.seed))
    pub, key = write_keypair(cmd.out_prefix, kp)
    print(f"wrote {pub} and {key} ({kp.modulus_bits}-bit modulus, e={kp.e})", file=out)
    return EXIT_OK


def _listen(cmd: Listen, out):
    from .handshake import calibrate
    from .netio.peers import ShooterTarget, serve_udp
    from .netio.transport import UdpEndpoint

    keys = _keys(cmd.key_prefix, cmd.level, _rng(cmd.seed))
    target = ShooterTarget(keys, calibrate(cmd.level, CipherSuite.AES))
    with UdpEndpoint.bind("0.0.0.0", cmd.port) as ep:
        print(f"listening on udp port {ep.address[1]} ({keys.modulus_bits}-bit key)", file=sys.stderr, flush=True)
        status = EXIT_OK
        seen = 0
        while True:
            serve_udp(ep, target, once=True)
            for r in target.completed[seen:]:
                if r.status == "ok":
                    print(show_plaintext(r.plaintext), file=out, flush=True)
                    print(f"session {r.session_id:016x}: verify {r.report.verify_us} us, "
                          f"decrypt {r.report.decrypt_us} us", file=sys.stderr, flush=True)
                else:
                    print(f"session {r.session_id:016x}: {r.status}", file=sys.stderr, flush=True)
                status = exit_code_for(r.status)
            seen = len(target.completed)
            if cmd.once and seen:
                return status


def _send(cmd: Send, out):
    from .handshake import calibrate
    from .netio.peers import run_command_centre
    from .netio.transport import UdpEndpoint
    from .primitives.keyfile import read_public

    rng = _rng(cmd.seed)
    message = cmd.message if cmd.message is not None else Path(cmd.file).read_bytes()
    expected = _read_key(read_public, cmd.peer_hint)[0] if cmd.peer_hint else None
    keys = _keys(cmd.key_prefix, cmd.level, rng)
    params = calibrate(cmd.level, cmd.suite)
    with UdpEndpoint.connect(cmd.host, cmd.port) as ep:
        outcome = run_command_centre(ep, keys, params, message, rng, timeout_ms=cmd.timeout_ms,
                                     max_retries=cmd.max_retries, expected_peer=expected)
    if cmd.as_json:
        doc = {
            "status": outcome.status,
            "session_id": f"{outcome.session_id:016x}",
            "round_trip_us": round(outcome.round_trip_s * 1e6),
            "transmissions": outcome.transmissions,
            "peer_verify_us": outcome.report.verify_us if outcome.report else None,
            "peer_decrypt_us": outcome.report.decrypt_us if outcome.report else None,
        }
        print(json.dumps(doc), file=out)
    elif outcome.ok:
        print(f"delivered {len(message)} octets with {cmd.suite.name}: round trip "
              f"{outcome.round_trip_s * 1e3:.2f} ms, peer verify {outcome.report.verify_us} us, "
              f"peer decrypt {outcome.report.decrypt_us} us", file=out)
    else:
        print(f"send failed: {outcome.status}", file=sys.stderr)
    return exit_code_for(outcome.status)


def _bench(cmd: Bench, out):
    from .bench import BenchConfig, run_bench, summarize, write_csv, write_json

    cfg = BenchConfig(sizes=cmd.sizes, trials=cmd.trials, level=cmd.level, include_keygen=cmd.include_keygen)
    records = run_bench(cfg, _rng(cmd.seed))
    write_csv(records, cmd.out if cmd.out else out)
    if cmd.json_out:
        write_json(records, cmd.json_out)
    if len(cfg.suites) > 1:
        for line in summarize(records).lines():
            print(line, file=sys.stderr)
    return EXIT_OK


def _selftest(cmd, out):
    from . import selftest

    return EXIT_OK if selftest.run(lambda s: print(s, file=out)) else EXIT_CRYPTO


_HANDLERS = {Keygen: _keygen, Listen: _listen, Send: _send, Bench: _bench, Selftest: _selftest}


def run(cmd, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        return _HANDLERS[type(cmd)](cmd, out)
    except (OSError, KeyFileError) as exc:
        print(f"ncsh: {exc}", file=sys.stderr)
        return EXIT_IO
    except NcshError as exc:
        print(f"ncsh: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_CRYPTO


def main(argv=None) -> int:
    cmd, verbose = parse_args(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return run(cmd)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
