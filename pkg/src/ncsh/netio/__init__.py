"""Datagram framing, fragmentation, reliable delivery and the two peer roles."""
from .fragment import DEFAULT_MAX_FRAGMENT, Reassembler, fragment, frames_for, reassemble
from .frame import HEADER_OCTETS, MAGIC, MAX_PAYLOAD, OVERHEAD, VERSION, Frame, decode_frame, encode_frame
from .peers import Received, SessionOutcome, ShooterTarget, run_command_centre, serve_udp, simulate_session
from .simlink import LossyLink, SimEndpoint, lossy_link
from .transport import DEFAULT_PORT, DeliveryReport, UdpEndpoint, listener_port, send_reliable

__all__ = [
    "DEFAULT_MAX_FRAGMENT", "DEFAULT_PORT", "DeliveryReport", "Frame", "HEADER_OCTETS", "LossyLink",
    "MAGIC", "MAX_PAYLOAD", "OVERHEAD", "Reassembler", "Received", "SessionOutcome", "ShooterTarget",
    "SimEndpoint", "UdpEndpoint", "VERSION", "decode_frame", "encode_frame", "fragment", "frames_for",
    "lossy_link", "listener_port", "reassemble", "run_command_centre", "send_reliable", "serve_udp", "simulate_session",
]
