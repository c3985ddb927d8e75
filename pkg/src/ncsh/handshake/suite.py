"""Runtime security-level calibration."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ..primitives.rsa import LEVEL_BITS, SecurityLevel
from ..primitives.symmetric import KEY_OCTETS, CipherSuite


class SigMode(enum.IntEnum):
    DIGEST = 1
    LITERAL = 2


@dataclass(frozen=True)
class SuiteParams:
    suite: CipherSuite
    rsa_modulus_bits: int
    sym_key_octets: int
    sig_mode: SigMode = SigMode.DIGEST


def calibrate(level: SecurityLevel, suite: CipherSuite, sig_mode: SigMode = SigMode.DIGEST) -> SuiteParams:
    return SuiteParams(
        suite=CipherSuite(suite),
        rsa_modulus_bits=LEVEL_BITS[SecurityLevel(level)],
        sym_key_octets=KEY_OCTETS[CipherSuite(suite)],
        sig_mode=SigMode(sig_mode),
    )
