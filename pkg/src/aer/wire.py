"""Binary framing and a two-party handshake over a reliable byte stream.

Frame layout (multi-byte integers big-endian)::

    "AER1" | version=0x01 | type | dim | count:u16 | count*dim*dim bytes
    [PARAMS only: | count_b:u16 | count_b*dim*dim bytes]

Matrices are raw row-major bytes. Frames carry no checksum; the channel is
assumed reliable. KEY_REVEAL sends a derived key in the clear and exists
only for tests.
"""

from __future__ import annotations

import enum
import logging
import socket
import struct
import threading
from dataclasses import dataclass
from typing import Optional, Sequence

from .aag import GeneratorWord, PartyState, PublicParams, Role, commit, derive_key, make_party
from .errors import (
    BadMagic,
    BadType,
    BadVersion,
    DimensionMismatch,
    LengthMismatch,
    ProtocolError,
    TrailingBytes,
    TruncatedFrame,
)
from .matrix import AerMatrix

log = logging.getLogger(__name__)

MAGIC = b"AER1"
VERSION = 0x01
_HEADER = struct.Struct(">4sBBBH")
_COUNT = struct.Struct(">H")


class MsgType(enum.IntEnum):
    PARAMS = 0x01
    COMMIT_ALICE = 0x02
    COMMIT_BOB = 0x03
    KEY_REVEAL = 0x7F


def encode_matrix(x: AerMatrix) -> bytes:
    return bytes(x.entries)


def decode_matrix(data: bytes, dim: int) -> AerMatrix:
    if len(data) != dim * dim:
        raise LengthMismatch(f"{len(data)} bytes cannot hold a {dim}x{dim} matrix")
    return AerMatrix(dim, tuple(data))


@dataclass(frozen=True)
class HandshakeMessage:
    msg_type: MsgType
    dim: int
    matrices: tuple[AerMatrix, ...]
    matrices_b: tuple[AerMatrix, ...] = ()  # PARAMS: set B

    def __post_init__(self) -> None:
        object.__setattr__(self, "msg_type", MsgType(self.msg_type))
        object.__setattr__(self, "matrices", tuple(self.matrices))
        object.__setattr__(self, "matrices_b", tuple(self.matrices_b))
        if not 1 <= self.dim <= 255:
            raise DimensionMismatch(f"dim {self.dim} does not fit the frame")
        for m in self.matrices + self.matrices_b:
            if m.dim != self.dim:
                raise DimensionMismatch(f"{m.dim}x{m.dim} matrix in a dim {self.dim} message")
        if self.matrices_b and self.msg_type is not MsgType.PARAMS:
            raise ValueError("only PARAMS carries a second matrix block")


def _block(ms: Sequence[AerMatrix]) -> bytes:
    if len(ms) > 0xFFFF:
        raise ValueError("too many matrices for one frame")
    return _COUNT.pack(len(ms)) + b"".join(encode_matrix(m) for m in ms)


def encode_message(m: HandshakeMessage) -> bytes:
    head = _HEADER.pack(MAGIC, VERSION, m.msg_type, m.dim, len(m.matrices))
    body = b"".join(encode_matrix(x) for x in m.matrices)
    if m.msg_type is MsgType.PARAMS:
        body += _block(m.matrices_b)
    return head + body


class _Reader:
    """Pulls exact byte counts from a ``read(n)`` callable."""

    def __init__(self, read) -> None:
        self._read = read

    def exactly(self, n: int) -> bytes:
        data = self._read(n)
        if len(data) < n:
            raise TruncatedFrame(f"wanted {n} bytes, stream ended after {len(data)}")
        return data

    def matrices(self, count: int, dim: int) -> tuple[AerMatrix, ...]:
        size = dim * dim
        raw = self.exactly(count * size)
        return tuple(AerMatrix(dim, tuple(raw[i * size:(i + 1) * size])) for i in range(count))


def _read_message(r: _Reader) -> HandshakeMessage:
    magic, version, mtype, dim, count = _HEADER.unpack(r.exactly(_HEADER.size))
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise BadVersion(f"unsupported version {version}")
    try:
        mtype = MsgType(mtype)
    except ValueError:
        raise BadType(f"unknown message type 0x{mtype:02X}") from None
    if dim == 0:
        raise TruncatedFrame("dim 0 frame")
    first = r.matrices(count, dim)
    second: tuple[AerMatrix, ...] = ()
    if mtype is MsgType.PARAMS:
        (count_b,) = _COUNT.unpack(r.exactly(_COUNT.size))
        second = r.matrices(count_b, dim)
    return HandshakeMessage(mtype, dim, first, second)


def decode_message(data: bytes) -> HandshakeMessage:
    pos = 0

    def read(n: int) -> bytes:
        nonlocal pos
        chunk = data[pos:pos + n]
        pos += len(chunk)
        return chunk

    msg = _read_message(_Reader(read))
    if pos != len(data):
        raise TrailingBytes(f"{len(data) - pos} bytes after the frame")
    return msg


def _sock_reader(sock: socket.socket) -> _Reader:
    def read(n: int) -> bytes:
        chunks = []
        got = 0
        while got < n:
            chunk = sock.recv(n - got)
            if not chunk:
                break
            chunks.append(chunk)
            got += len(chunk)
        return b"".join(chunks)

    return _Reader(read)


def send_message(sock: socket.socket, m: HandshakeMessage) -> None:
    sock.sendall(encode_message(m))


def recv_message(sock: socket.socket, expect: Optional[MsgType] = None) -> HandshakeMessage:
    m = _read_message(_sock_reader(sock))
    if expect is not None and m.msg_type is not expect:
        raise ProtocolError(f"expected {expect.name}, got {m.msg_type.name}")
    return m


class Endpoint:
    """One side of the exchange bound to a socket.

    The steps are separate methods so a single thread can interleave both
    parties; :meth:`run` performs them in order for threaded use.
    """

    def __init__(
        self,
        role: Role,
        sock: socket.socket,
        word: GeneratorWord,
        params: Optional[PublicParams] = None,
        wait_for_peer: bool = False,
        reveal: bool = False,
    ) -> None:
        if role is Role.ALICE and params is None:
            raise ValueError("Alice publishes the parameters and must be given them")
        self.role = role
        self.sock = sock
        self.word = word
        self.params = params
        self.wait_for_peer = wait_for_peer
        self.reveal = reveal
        self.state: Optional[PartyState] = None
        self.key: Optional[AerMatrix] = None
        self.peer_key: Optional[AerMatrix] = None

    @property
    def _own_commit(self) -> MsgType:
        return MsgType.COMMIT_ALICE if self.role is Role.ALICE else MsgType.COMMIT_BOB

    @property
    def _peer_commit(self) -> MsgType:
        return MsgType.COMMIT_BOB if self.role is Role.ALICE else MsgType.COMMIT_ALICE

    def open(self) -> None:
        if self.role is Role.ALICE:
            p = self.params
            send_message(self.sock, HandshakeMessage(MsgType.PARAMS, p.dim, p.set_a, p.set_b))
        else:
            m = recv_message(self.sock, MsgType.PARAMS)
            self.params = PublicParams(m.dim, m.matrices, m.matrices_b)
        self.state = make_party(self.role, self.params, self.word)

    def send_commit(self) -> None:
        out = commit(self.state)
        send_message(self.sock, HandshakeMessage(self._own_commit, self.params.dim, out))

    def receive_commit(self) -> AerMatrix:
        m = recv_message(self.sock, self._peer_commit)
        if m.dim != self.params.dim:
            raise DimensionMismatch(f"peer commit has dim {m.dim}")
        self.key = derive_key(self.state, m.matrices)
        return self.key

    def send_reveal(self) -> None:
        log.warning("KEY_REVEAL: sending the derived key in the clear (test mode only)")
        send_message(self.sock, HandshakeMessage(MsgType.KEY_REVEAL, self.params.dim, (self.key,)))

    def check_reveal(self) -> None:
        m = recv_message(self.sock, MsgType.KEY_REVEAL)
        self.peer_key = m.matrices[0] if m.matrices else None
        if self.peer_key != self.key:
            raise ProtocolError(f"key mismatch: ours {self.key}, peer {self.peer_key}")

    def run(self) -> AerMatrix:
        self.open()
        if self.wait_for_peer:
            key = self.receive_commit()
            self.send_commit()
        else:
            self.send_commit()
            key = self.receive_commit()
        if self.reveal:
            self.send_reveal()
            self.check_reveal()
        return key


@dataclass
class HandshakeResult:
    key_alice: AerMatrix
    key_bob: AerMatrix
    alice: PartyState
    bob: PartyState


def socket_pair(transport: str = "duplex", port: int = 0) -> tuple[socket.socket, socket.socket]:
    """Connected (alice, bob) sockets: in-process pair or TCP on 127.0.0.1."""
    if transport == "duplex":
        return socket.socketpair()
    if transport != "tcp":
        raise ValueError(f"unknown transport {transport!r}")
    with socket.create_server(("127.0.0.1", port)) as server:
        bob_side = socket.create_connection(server.getsockname()[:2], timeout=10)
        alice_side, _ = server.accept()
    alice_side.settimeout(10)
    return alice_side, bob_side


def run_handshake_over_channel(
    params: PublicParams,
    word_a: GeneratorWord,
    word_b: GeneratorWord,
    channel: Optional[tuple[socket.socket, socket.socket]] = None,
    *,
    transport: str = "duplex",
    port: int = 0,
    first: Optional[Role] = None,
    reveal: bool = False,
    threaded: bool = True,
) -> HandshakeResult:
    """Run both parties over ``channel`` (defaults to a fresh socket pair).

    ``first`` forces that role's commit onto the wire before the other's;
    by default both send as soon as they can.
    """
    a_sock, b_sock = channel if channel is not None else socket_pair(transport, port)
    alice = Endpoint(Role.ALICE, a_sock, word_a, params, wait_for_peer=first is Role.BOB, reveal=reveal)
    bob = Endpoint(Role.BOB, b_sock, word_b, wait_for_peer=first is Role.ALICE, reveal=reveal)
    try:
        if threaded:
            _run_threads(alice, bob)
        else:
            _run_interleaved(alice, bob, first)
    finally:
        if channel is None:
            a_sock.close()
            b_sock.close()
    return HandshakeResult(alice.key, bob.key, alice.state, bob.state)


def _run_threads(alice: Endpoint, bob: Endpoint) -> None:
    errors: list[BaseException] = []

    def target(ep: Endpoint) -> None:
        try:
            ep.run()
        except BaseException as exc:  # re-raised in the caller's thread
            errors.append(exc)
            ep.sock.close()

    threads = [threading.Thread(target=target, args=(ep,), daemon=True) for ep in (alice, bob)]
    for t in threads:
        t.start()
    for t in threads:
        t.join(timeout=60)
    if errors:
        raise errors[0]


def _run_interleaved(alice: Endpoint, bob: Endpoint, first: Optional[Role]) -> None:
    alice.open()
    bob.open()
    if first is Role.BOB:
        bob.send_commit()
        alice.receive_commit()
        alice.send_commit()
        bob.receive_commit()
    else:
        alice.send_commit()
        if first is Role.ALICE:
            bob.receive_commit()
            bob.send_commit()
        else:
            bob.send_commit()
            bob.receive_commit()
        alice.receive_commit()
    if alice.reveal:
        alice.send_reveal()
        bob.send_reveal()
        alice.check_reveal()
        bob.check_reveal()
