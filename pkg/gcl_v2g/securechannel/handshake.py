#    Copyright 2026 Genesis Corporation.
#
#    All Rights Reserved.
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.

"""Three-flight authenticated key exchange.

::

    client                                         server
    ClientHello  random, endpoint binding   ---->
                                            <----  ServerHello  random,
                                                   certificate, key share,
                                                   signature over both hellos
    ClientFinished  key share, MAC          ---->
                                            <----  ServerFinished  MAC

Signatures are Ed25519, the key exchange is X25519 and the keys come from
HKDF-SHA256 salted with both randoms. Both finished MACs (HMAC-SHA256) cover
the whole transcript. The endpoint binding carries the addresses and ports
the client connected from and to; the server rejects a binding that differs
from what it observes, so a relay that re-originates the connection fails.

The classes here do no I/O: they consume record bodies and return the
records to send.
"""

from __future__ import annotations

import enum
import logging
import random
import struct
import typing as tp

from cryptography.hazmat.primitives.asymmetric import x25519

from gcl_v2g.securechannel import crypto
from gcl_v2g.securechannel import exceptions as sc_exc
from gcl_v2g.securechannel import identity as sc_identity
from gcl_v2g.securechannel import records

LOG = logging.getLogger(__name__)

RANDOM_SIZE = 32
SHARE_SIZE = 32

_SIGNATURE_CONTEXT = b"gcl-v2g server hello signature"
_KEY_INFO = b"gcl-v2g key expansion"
_BINDING = struct.Struct(">16sH16sH")

Reason = sc_exc.FailureReason

_ALERT_CODES = {
    Reason.CERTIFICATE_VERIFY_FAILURE: 1,
    Reason.TRANSCRIPT_MISMATCH: 2,
    Reason.TIMEOUT: 3,
}
_ALERT_REASONS = {code: reason for reason, code in _ALERT_CODES.items()}


class MessageType(enum.IntEnum):
    CLIENT_HELLO = 1
    SERVER_HELLO = 2
    CLIENT_FINISHED = 3
    SERVER_FINISHED = 4


class EndpointBinding(tp.NamedTuple):
    client_address: bytes
    client_port: int
    server_address: bytes
    server_port: int

    def to_bytes(self) -> bytes:
        return _BINDING.pack(
            self.client_address, self.client_port, self.server_address, self.server_port
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> EndpointBinding:
        return cls(*_BINDING.unpack(data))


def _failure(reason: Reason, detail: str) -> sc_exc.HandshakeFailure:
    return sc_exc.HandshakeFailure(reason=reason, detail=detail)


def alert_record(reason: Reason) -> bytes:
    return records.encode_record(
        records.RecordType.ALERT, bytes([_ALERT_CODES[reason]])
    )


def _expect(
    record_type: records.RecordType, body: bytes, message_type: MessageType
) -> None:
    if record_type is records.RecordType.ALERT:
        reason = _ALERT_REASONS.get(body[0]) if len(body) == 1 else None
        raise _failure(
            reason or Reason.TRANSCRIPT_MISMATCH, "alert received from the peer"
        )
    if record_type is not records.RecordType.HANDSHAKE:
        raise _failure(Reason.TRANSCRIPT_MISMATCH, f"unexpected {record_type.name}")
    if not body or body[0] != message_type:
        raise _failure(Reason.TRANSCRIPT_MISMATCH, f"expected {message_type.name}")


def _derive(
    shared: bytes, client_random: bytes, server_random: bytes, hello_hash: bytes
) -> tuple[bytes, bytes, bytes, bytes]:
    size = crypto.KEY_SIZE
    okm = crypto.hkdf_sha256(
        shared,
        salt=client_random + server_random,
        info=_KEY_INFO + hello_hash,
        length=4 * size,
    )
    return okm[:size], okm[size : 2 * size], okm[2 * size : 3 * size], okm[3 * size :]


def _share(rng: random.Random | None) -> x25519.X25519PrivateKey:
    return x25519.X25519PrivateKey.from_private_bytes(crypto.generate_key(rng))


class _ServerHello(tp.NamedTuple):
    random: bytes
    certificate: sc_identity.Certificate
    share: bytes
    signature: bytes
    signed_part: bytes

    @classmethod
    def parse(cls, body: bytes) -> _ServerHello:
        offset = 1
        server_random = body[offset : offset + RANDOM_SIZE]
        offset += RANDOM_SIZE
        (cert_size,) = struct.unpack_from(">H", body, offset)
        offset += 2
        certificate = sc_identity.Certificate.from_bytes(
            body[offset : offset + cert_size]
        )
        offset += cert_size
        share = body[offset : offset + SHARE_SIZE]
        offset += SHARE_SIZE
        signature = body[offset:]
        if (
            len(server_random) != RANDOM_SIZE
            or len(share) != SHARE_SIZE
            or len(signature) != sc_identity.SIGNATURE_SIZE
        ):
            raise ValueError("bad server hello size")
        return cls(server_random, certificate, share, signature, body[:offset])


class ClientHandshake:
    """Client side: verifies the server against a trust anchor."""

    def __init__(
        self,
        anchor: sc_identity.TrustAnchor,
        binding: EndpointBinding,
        rng: random.Random | None = None,
    ) -> None:
        self._anchor = anchor
        self._binding = binding
        self._random = crypto.generate_key(rng)
        self._share = _share(rng)
        self._transcript: list[bytes] = []
        self._server_finished_key = b""
        self._pending_keys: records.SessionKeys | None = None
        self.keys: records.SessionKeys | None = None
        self.peer_certificate: sc_identity.Certificate | None = None

    @property
    def done(self) -> bool:
        return self.keys is not None

    def client_hello(self) -> bytes:
        body = (
            bytes([MessageType.CLIENT_HELLO]) + self._random + self._binding.to_bytes()
        )
        self._transcript = [body]
        return records.encode_record(records.RecordType.HANDSHAKE, body)

    def receive(self, record_type: records.RecordType, body: bytes) -> bytes | None:
        if not self._transcript:
            raise RuntimeError("client_hello() must be sent first")
        if self.keys is not None:
            raise RuntimeError("Handshake already finished")
        if len(self._transcript) == 1:
            return self._on_server_hello(record_type, body)
        self._on_server_finished(record_type, body)
        return None

    def _on_server_hello(self, record_type: records.RecordType, body: bytes) -> bytes:
        _expect(record_type, body, MessageType.SERVER_HELLO)
        try:
            hello = _ServerHello.parse(body)
        except (ValueError, struct.error) as e:
            raise _failure(Reason.TRANSCRIPT_MISMATCH, f"bad server hello: {e}")

        client_hello = self._transcript[0]
        if not sc_identity.verify_signature(
            hello.certificate.public_key,
            hello.signature,
            _SIGNATURE_CONTEXT + client_hello + hello.signed_part,
        ):
            raise _failure(
                Reason.TRANSCRIPT_MISMATCH, "server hello signature does not verify"
            )
        if not sc_identity.verify(hello.certificate, self._anchor):
            raise _failure(
                Reason.CERTIFICATE_VERIFY_FAILURE,
                f"certificate of {hello.certificate.subject_name!r} is not issued "
                f"by {self._anchor.name!r}",
            )
        self.peer_certificate = hello.certificate
        self._transcript.append(body)

        try:
            peer_share = x25519.X25519PublicKey.from_public_bytes(hello.share)
            shared = self._share.exchange(peer_share)
        except ValueError as e:
            raise _failure(Reason.TRANSCRIPT_MISMATCH, f"bad key share: {e}")
        c2s, s2c, client_key, server_key = _derive(
            shared, self._random, hello.random, crypto.sha256(client_hello + body)
        )
        self._server_finished_key = server_key

        share = self._share.public_key().public_bytes_raw()
        head = bytes([MessageType.CLIENT_FINISHED]) + share
        mac = crypto.hmac_sha256(
            client_key, crypto.sha256(b"".join(self._transcript) + head)
        )
        finished = head + mac
        self._transcript.append(finished)
        self._pending_keys = records.SessionKeys(
            c2s, s2c, crypto.sha256(b"".join(self._transcript))
        )
        return records.encode_record(records.RecordType.HANDSHAKE, finished)

    def _on_server_finished(self, record_type: records.RecordType, body: bytes) -> None:
        _expect(record_type, body, MessageType.SERVER_FINISHED)
        assert self._pending_keys is not None
        expected = crypto.hmac_sha256(
            self._server_finished_key, self._pending_keys.transcript_hash
        )
        if not crypto.macs_equal(body[1:], expected):
            raise _failure(Reason.TRANSCRIPT_MISMATCH, "server finished MAC mismatch")
        self.keys = self._pending_keys
        LOG.debug("Client handshake with %s done", self.peer_certificate.subject_name)


class ServerHandshake:
    """Server side: proves possession of the identity key."""

    def __init__(
        self,
        identity: sc_identity.Identity,
        observed: EndpointBinding,
        rng: random.Random | None = None,
    ) -> None:
        self._identity = identity
        self._observed = observed
        self._client_random = b""
        self._random = crypto.generate_key(rng)
        self._share = _share(rng)
        self._transcript: list[bytes] = []
        self._client_finished_key = b""
        self._server_finished_key = b""
        self._c2s = b""
        self._s2c = b""
        self.keys: records.SessionKeys | None = None

    @property
    def done(self) -> bool:
        return self.keys is not None

    def receive(self, record_type: records.RecordType, body: bytes) -> bytes:
        if not self._transcript:
            return self._on_client_hello(record_type, body)
        if self.keys is None:
            return self._on_client_finished(record_type, body)
        raise RuntimeError("Handshake already finished")

    def _on_client_hello(self, record_type: records.RecordType, body: bytes) -> bytes:
        _expect(record_type, body, MessageType.CLIENT_HELLO)
        if len(body) != 1 + RANDOM_SIZE + _BINDING.size:
            raise _failure(Reason.TRANSCRIPT_MISMATCH, "bad client hello size")
        client_random = body[1 : 1 + RANDOM_SIZE]
        binding = EndpointBinding.from_bytes(body[1 + RANDOM_SIZE :])
        if binding != self._observed:
            raise _failure(
                Reason.TRANSCRIPT_MISMATCH,
                "endpoint binding differs from the observed connection",
            )

        certificate = self._identity.certificate.to_bytes()
        signed_part = (
            bytes([MessageType.SERVER_HELLO])
            + self._random
            + struct.pack(">H", len(certificate))
            + certificate
            + self._share.public_key().public_bytes_raw()
        )
        signature = self._identity.sign(_SIGNATURE_CONTEXT + body + signed_part)
        hello = signed_part + signature
        self._transcript = [body, hello]
        self._client_random = client_random
        return records.encode_record(records.RecordType.HANDSHAKE, hello)

    def _on_client_finished(
        self, record_type: records.RecordType, body: bytes
    ) -> bytes:
        _expect(record_type, body, MessageType.CLIENT_FINISHED)
        if len(body) != 1 + SHARE_SIZE + crypto.MAC_SIZE:
            raise _failure(Reason.TRANSCRIPT_MISMATCH, "bad client finished size")
        head, mac = body[: 1 + SHARE_SIZE], body[1 + SHARE_SIZE :]

        try:
            peer_share = x25519.X25519PublicKey.from_public_bytes(head[1:])
            shared = self._share.exchange(peer_share)
        except ValueError as e:
            raise _failure(Reason.TRANSCRIPT_MISMATCH, f"bad key share: {e}")
        client_hello, server_hello = self._transcript
        c2s, s2c, client_key, server_key = _derive(
            shared,
            self._client_random,
            self._random,
            crypto.sha256(client_hello + server_hello),
        )
        expected = crypto.hmac_sha256(
            client_key, crypto.sha256(client_hello + server_hello + head)
        )
        if not crypto.macs_equal(mac, expected):
            raise _failure(Reason.TRANSCRIPT_MISMATCH, "client finished MAC mismatch")

        self._transcript.append(body)
        transcript_hash = crypto.sha256(b"".join(self._transcript))
        self.keys = records.SessionKeys(c2s, s2c, transcript_hash)
        finished = bytes([MessageType.SERVER_FINISHED]) + crypto.hmac_sha256(
            server_key, transcript_hash
        )
        LOG.debug("Server handshake as %s done", self._identity.name)
        return records.encode_record(records.RecordType.HANDSHAKE, finished)
