import os
import socket
import subprocess
import sys
import threading
import time

import pytest

from ncsh.cli import (
    EXIT_CRYPTO,
    EXIT_DELIVERY,
    EXIT_IO,
    EXIT_OK,
    Bench,
    Keygen,
    Listen,
    Selftest,
    Send,
    exit_code_for,
    main,
    parse_args,
    show_plaintext,
)
from ncsh.handshake import CipherSuite, MsgType, SecurityLevel, calibrate
from ncsh.netio import ShooterTarget, UdpEndpoint, decode_frame, serve_udp
from ncsh.primitives.keyfile import read_private, read_public
from ncsh.primitives.sha1 import sha1


def free_port():
    with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture
def listener(keys):
    """In-process shooter target on a free port; yields (port, target)."""
    target = ShooterTarget(keys(SecurityLevel.L1, 1), calibrate(SecurityLevel.L1, CipherSuite.AES))
    ep = UdpEndpoint.bind("127.0.0.1", 0)
    stop = threading.Event()
    t = threading.Thread(target=serve_udp, args=(ep, target), kwargs=dict(should_stop=stop.is_set, poll_s=0.05))
    t.start()
    yield ep.address[1], target
    stop.set()
    t.join(5)
    ep.close()


class TestParseArgs:
    def test_keygen(self):
        cmd, _ = parse_args(["keygen", "--level", "L2", "--out", "alice"])
        assert cmd == Keygen(SecurityLevel.L2, "alice")

    def test_bench(self):
        cmd, _ = parse_args(["bench", "--sizes", "10,100", "--trials", "5"])
        assert isinstance(cmd, Bench) and cmd.sizes == (10, 100) and cmd.trials == 5
        assert cmd.level is SecurityLevel.L1 and not cmd.include_keygen

    def test_send_defaults(self):
        cmd, _ = parse_args(["send", "10.0.0.1", "--msg", "hi"])
        assert isinstance(cmd, Send)
        assert (cmd.host, cmd.port, cmd.suite, cmd.level, cmd.message) == \
            ("10.0.0.1", 47001, CipherSuite.AES, SecurityLevel.L1, b"hi")

    def test_listen_and_env_port(self, monkeypatch):
        cmd, _ = parse_args(["listen", "--once", "--key", "bob"])
        assert cmd == Listen(47001, "bob", True)
        monkeypatch.setenv("NCSH_PORT", "47555")
        assert parse_args(["listen"])[0].port == 47555

    def test_selftest(self):
        assert parse_args(["selftest"])[0] == Selftest()

    @pytest.mark.parametrize("argv", [
        ["send", "--msg", "hi"],
        ["send", "h", "--msg", "a", "--file", "b"],
        ["send", "h"],
        ["keygen"],
        ["keygen", "--out", "x", "--level", "L4"],
        ["send", "h", "--msg", "a", "--suite", "rc4"],
        ["bench", "--trials", "2"],
        ["bench", "--sizes", "10,0"],
        ["bench", "--frobnicate"],
        ["teleport"],
        [],
    ])
    def test_usage_errors_exit_2(self, argv, capsys):
        with pytest.raises(SystemExit) as exc:
            parse_args(argv)
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err


class TestHelpers:
    def test_show_plaintext(self):
        assert show_plaintext("héllo".encode()) == "héllo"
        assert show_plaintext(b"\xff\x00") == "ff00"

    @pytest.mark.parametrize("status,code", [
        ("ok", 0), ("delivery-failed", 3), ("signature-invalid", 4),
        ("corrupt-ciphertext", 4), ("peer-key-mismatch", 4),
    ])
    def test_exit_codes(self, status, code):
        assert exit_code_for(status) == code


class TestRun:
    def test_keygen_files_readable(self, tmp_path, capsys):
        prefix = str(tmp_path / "alice")
        assert main(["keygen", "--out", prefix, "--seed", "1"]) == EXIT_OK
        kp = read_private(prefix + ".key")
        pub, level = read_public(prefix + ".pub")
        assert pub == kp.public and level is SecurityLevel.L1 and kp.n.bit_length() == 512

    def test_send_to_listener(self, listener, capsys):
        port, target = listener
        code = main(["send", "127.0.0.1", "--port", str(port), "--msg", "test", "--seed", "2"])
        assert code == EXIT_OK
        assert "peer verify" in capsys.readouterr().out
        assert target.completed[-1].plaintext == b"test"

    def test_send_file_json(self, listener, tmp_path, capsys):
        port, target = listener
        f = tmp_path / "orders.bin"
        f.write_bytes(bytes(range(256)) * 20)
        code = main(["send", "127.0.0.1", "--port", str(port), "--file", str(f), "--suite", "des", "--json"])
        assert code == EXIT_OK
        assert '"status": "ok"' in capsys.readouterr().out
        assert target.completed[-1].plaintext == f.read_bytes()

    def test_peer_key_mismatch_is_4(self, listener, tmp_path):
        port, _ = listener
        prefix = str(tmp_path / "someone")
        main(["keygen", "--out", prefix, "--seed", "3"])
        code = main(["send", "127.0.0.1", "--port", str(port), "--msg", "x", "--peer-key", prefix + ".pub"])
        assert code == EXIT_CRYPTO

    def test_nobody_listening_is_3(self):
        code = main(["send", "127.0.0.1", "--port", str(free_port()), "--msg", "x",
                     "--timeout-ms", "30", "--retries", "1"])
        assert code == EXIT_DELIVERY

    def test_missing_file_is_5(self, tmp_path):
        assert main(["send", "127.0.0.1", "--file", str(tmp_path / "nope")]) == EXIT_IO

    def test_bad_key_file_is_5(self, tmp_path):
        (tmp_path / "bad.key").write_text("level=L1\nn=ZZ\ne=3\nd=5\n")
        assert main(["send", "127.0.0.1", "--msg", "x", "--key", str(tmp_path / "bad")]) == EXIT_IO
        assert main(["listen", "--key", str(tmp_path / "absent")]) == EXIT_IO

    def test_bench_writes_csv(self, tmp_path):
        out, js = tmp_path / "b.csv", tmp_path / "b.json"
        assert main(["bench", "--sizes", "10,20", "--trials", "3", "--out", str(out), "--json", str(js)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("suite,size") and len(lines) == 7
        assert js.exists()

    def test_selftest(self, capsys):
        assert main(["selftest"]) == EXIT_OK
        assert "FAIL" not in capsys.readouterr().out


def tampering_proxy(listen_port, stop):
    """UDP proxy that flips one ciphertext octet in DATA frames and fixes the checksum."""
    sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    sock.bind(("127.0.0.1", 0))
    sock.settimeout(0.05)
    upstream = ("127.0.0.1", listen_port)

    def loop():
        client = None
        while not stop.is_set():
            try:
                data, addr = sock.recvfrom(65535)
            except socket.timeout:
                continue
            if addr != upstream:
                client = addr
                if decode_frame(data).msg_type is MsgType.DATA:
                    body = bytearray(data[:-4])
                    body[-40] ^= 0x01
                    data = bytes(body) + sha1(bytes(body))[:4]
                sock.sendto(data, upstream)
            elif client:
                sock.sendto(data, client)
        sock.close()

    t = threading.Thread(target=loop)
    t.start()
    return sock.getsockname()[1], t


class TestTamperingProxy:
    def test_send_through_proxy_exits_4(self, listener):
        port, target = listener
        stop = threading.Event()
        proxy_port, t = tampering_proxy(port, stop)
        try:
            code = main(["send", "127.0.0.1", "--port", str(proxy_port), "--msg", "x" * 64])
        finally:
            stop.set()
            t.join(5)
        assert code == EXIT_CRYPTO
        assert target.completed[-1].status == "signature-invalid"


class TestTwoProcesses:
    def test_loopback_demo(self, tmp_path):
        port = str(free_port())
        env = {**os.environ, "PYTHONUNBUFFERED": "1"}
        cmd = [sys.executable, "-m", "ncsh"]
        subprocess.run(cmd + ["keygen", "--out", str(tmp_path / "bob"), "--seed", "7"], check=True, env=env)
        listen = subprocess.Popen(cmd + ["listen", "--port", port, "--key", str(tmp_path / "bob"), "--once"],
                                  stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True, env=env)
        try:
            deadline = time.monotonic() + 10
            while "listening" not in listen.stderr.readline():
                assert time.monotonic() < deadline
            sent = subprocess.run(cmd + ["send", "127.0.0.1", "--port", port, "--msg", "test",
                                         "--peer-key", str(tmp_path / "bob.pub")],
                                  capture_output=True, text=True, env=env, timeout=30)
            out, _ = listen.communicate(timeout=30)
        finally:
            listen.kill()
        assert sent.returncode == 0, sent.stderr
        assert listen.returncode == 0
        assert out.splitlines() == ["test"]
