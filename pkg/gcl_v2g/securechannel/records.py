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

"""Record framing and sealed application records.

Every record is ``type (1) | length (2, big-endian) | body``. Application
records are sealed with ChaCha20-Poly1305; the nonce and the associated data
carry an implicit per-direction counter, so a replayed, reordered or
modified record fails authentication.
"""

from __future__ import annotations

import dataclasses
import enum
import struct

from cryptography import exceptions as crypto_exc

from gcl_v2g.securechannel import crypto
from gcl_v2g.securechannel import exceptions as sc_exc

HEADER_SIZE = 3
MAX_BODY_SIZE = 0xFFFF
MAX_PLAINTEXT_SIZE = MAX_BODY_SIZE - crypto.TAG_SIZE

_HEADER = struct.Struct(">BH")


class RecordType(enum.IntEnum):
    ALERT = 0x15
    HANDSHAKE = 0x16
    APPLICATION_DATA = 0x17


class Direction(enum.IntEnum):
    CLIENT_TO_SERVER = 0
    SERVER_TO_CLIENT = 1


@dataclasses.dataclass(frozen=True)
class SessionKeys:
    client_to_server_key: bytes
    server_to_client_key: bytes
    transcript_hash: bytes

    def key_for(self, direction: Direction) -> bytes:
        if direction is Direction.CLIENT_TO_SERVER:
            return self.client_to_server_key
        return self.server_to_client_key


def encode_record(record_type: RecordType, body: bytes) -> bytes:
    if len(body) > MAX_BODY_SIZE:
        raise ValueError(f"Record body too large: {len(body)}")
    return _HEADER.pack(int(record_type), len(body)) + body


def decode_record(data: bytes) -> tuple[RecordType, bytes, int]:
    """Decode one record from the beginning of `data`.

    Returns the type, the body and the number of consumed bytes, or raises
    BadRecord. Incomplete input raises BadRecord as well; use RecordBuffer
    for streams.
    """
    if len(data) < HEADER_SIZE:
        raise sc_exc.BadRecord(detail="truncated header")
    raw_type, length = _HEADER.unpack_from(data)
    try:
        record_type = RecordType(raw_type)
    except ValueError:
        raise sc_exc.BadRecord(detail=f"unknown record type {raw_type:#04x}")
    if len(data) < HEADER_SIZE + length:
        raise sc_exc.BadRecord(detail="truncated body")
    end = HEADER_SIZE + length
    return record_type, bytes(data[HEADER_SIZE:end]), end


class RecordBuffer:
    def __init__(self) -> None:
        self._buffer = bytearray()

    def feed(self, data: bytes) -> None:
        self._buffer.extend(data)

    def pop(self) -> tuple[RecordType, bytes] | None:
        if len(self._buffer) < HEADER_SIZE:
            return None
        raw_type, length = _HEADER.unpack_from(self._buffer)
        if raw_type not in set(RecordType):
            raise sc_exc.BadRecord(detail=f"unknown record type {raw_type:#04x}")
        if len(self._buffer) < HEADER_SIZE + length:
            return None
        record_type, body, consumed = decode_record(bytes(self._buffer))
        del self._buffer[:consumed]
        return record_type, body


def _nonce(counter: int) -> bytes:
    return bytes(4) + counter.to_bytes(8, "big")


def _associated_data(direction: Direction, counter: int) -> bytes:
    return (
        bytes([RecordType.APPLICATION_DATA, direction]) + counter.to_bytes(8, "big")
    )


def seal(
    keys: SessionKeys, direction: Direction, counter: int, plaintext: bytes
) -> bytes:
    if len(plaintext) > MAX_PLAINTEXT_SIZE:
        raise ValueError(f"Plaintext too large: {len(plaintext)}")
    ciphertext = crypto.encrypt_chacha20_poly1305(
        keys.key_for(direction),
        plaintext,
        _nonce(counter),
        _associated_data(direction, counter),
    )
    return encode_record(RecordType.APPLICATION_DATA, ciphertext)


def open_body(
    keys: SessionKeys, direction: Direction, counter: int, body: bytes
) -> bytes:
    try:
        return crypto.decrypt_chacha20_poly1305(
            keys.key_for(direction),
            _nonce(counter),
            body,
            _associated_data(direction, counter),
        )
    except crypto_exc.InvalidTag:
        raise sc_exc.AuthenticationFailure(
            detail=f"record {counter} ({direction.name}) does not authenticate"
        )


def open_record(
    keys: SessionKeys, direction: Direction, counter: int, record: bytes
) -> bytes:
    record_type, body, consumed = decode_record(record)
    if record_type is not RecordType.APPLICATION_DATA or consumed != len(record):
        raise sc_exc.AuthenticationFailure(detail="not a single application record")
    return open_body(keys, direction, counter, body)


class RecordLayer:
    """Sealing state of one side of an established channel."""

    def __init__(self, keys: SessionKeys, is_client: bool) -> None:
        self.keys = keys
        if is_client:
            self.send_direction = Direction.CLIENT_TO_SERVER
            self.receive_direction = Direction.SERVER_TO_CLIENT
        else:
            self.send_direction = Direction.SERVER_TO_CLIENT
            self.receive_direction = Direction.CLIENT_TO_SERVER
        self.send_counter = 0
        self.receive_counter = 0

    def seal(self, plaintext: bytes) -> bytes:
        """Seal `plaintext`, splitting it into as many records as needed."""
        records = []
        chunks = [
            plaintext[i : i + MAX_PLAINTEXT_SIZE]
            for i in range(0, len(plaintext), MAX_PLAINTEXT_SIZE)
        ] or [b""]
        for chunk in chunks:
            records.append(
                seal(self.keys, self.send_direction, self.send_counter, chunk)
            )
            self.send_counter += 1
        return b"".join(records)

    def open(self, record: bytes) -> bytes:
        plaintext = open_record(
            self.keys, self.receive_direction, self.receive_counter, record
        )
        self.receive_counter += 1
        return plaintext

    def open_body(self, body: bytes) -> bytes:
        plaintext = open_body(
            self.keys, self.receive_direction, self.receive_counter, body
        )
        self.receive_counter += 1
        return plaintext
