"""Text key files: ``level=``, ``n=``, ``e=`` and (private only) ``d=`` lines,
integers in lowercase hex without separators."""
from __future__ import annotations

from pathlib import Path

from ..errors import InvalidArgument
from .rsa import PublicKey, RsaKeyPair, SecurityLevel


def format_key(kp: RsaKeyPair, private: bool) -> str:
    if kp.level is None:
        raise InvalidArgument("demo keys have no security level and cannot be saved")
    lines = [f"level={kp.level.value}", f"n={kp.n:x}", f"e={kp.e:x}"]
    if private:
        lines.append(f"d={kp.d:x}")
    return "\n".join(lines) + "\n"


def parse_key(text: str) -> dict:
    fields = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep or name not in ("level", "n", "e", "d") or name in fields:
            raise InvalidArgument(f"bad key file line: {raw!r}")
        fields[name] = value
    missing = {"level", "n", "e"} - fields.keys()
    if missing:
        raise InvalidArgument(f"key file missing {sorted(missing)}")
    try:
        out = {"level": SecurityLevel(fields["level"])}
        for name in ("n", "e", "d"):
            if name in fields:
                if fields[name] != fields[name].lower():
                    raise ValueError("uppercase hex")
                out[name] = int(fields[name], 16)
    except ValueError as exc:
        raise InvalidArgument(f"bad key file value: {exc}") from None
    return out


def write_keypair(prefix: str | Path, kp: RsaKeyPair) -> tuple[Path, Path]:
    prefix = Path(prefix)
    pub = prefix.with_name(prefix.name + ".pub")
    key = prefix.with_name(prefix.name + ".key")
    pub.write_text(format_key(kp, private=False))
    key.write_text(format_key(kp, private=True))
    return pub, key


def read_public(path: str | Path) -> tuple[PublicKey, SecurityLevel]:
    f = parse_key(Path(path).read_text())
    return PublicKey(f["e"], f["n"]), f["level"]


def read_private(path: str | Path) -> RsaKeyPair:
    f = parse_key(Path(path).read_text())
    if "d" not in f:
        raise InvalidArgument(f"{path} holds no private exponent")
    return RsaKeyPair(n=f["n"], e=f["e"], d=f["d"], modulus_bits=f["n"].bit_length(), level=f["level"])
