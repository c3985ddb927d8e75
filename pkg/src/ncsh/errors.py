"""Exception hierarchy shared by every layer.

Each class carries a short machine-readable ``code`` so that transport and
CLI layers can map failures to wire error octets and exit statuses without
string matching.
"""


class NcshError(Exception):
    code = "error"


class InvalidArgument(NcshError, ValueError):
    code = "invalid-argument"


class NotInvertible(NcshError, ArithmeticError):
    code = "not-invertible"


class KeygenFailure(NcshError):
    code = "keygen-failure"


class BlockTooLarge(NcshError, ValueError):
    code = "block-too-large"


class CorruptCiphertext(NcshError):
    code = "corrupt-ciphertext"


class CorruptSignature(NcshError):
    code = "corrupt-signature"


class SignatureInvalid(NcshError):
    code = "signature-invalid"


class IncompatibleModuli(NcshError):
    code = "incompatible-moduli"


class ProtocolViolation(NcshError):
    code = "protocol-violation"


class FrameError(NcshError):
    code = "frame-error"


class BadMagic(FrameError):
    code = "bad-magic"


class BadVersion(FrameError):
    code = "bad-version"


class BadChecksum(FrameError):
    code = "bad-checksum"


class Truncated(FrameError):
    code = "truncated"


class BadLength(FrameError):
    code = "bad-length"


class BadType(FrameError):
    code = "bad-type"


class BadFragment(FrameError):
    code = "bad-fragment"


class MissingFragment(NcshError):
    code = "missing-fragment"


class ConflictingDuplicate(NcshError):
    code = "conflicting-duplicate"
