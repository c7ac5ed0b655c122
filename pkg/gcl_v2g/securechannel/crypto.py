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

from __future__ import annotations

import base64
import hmac as std_hmac
import random
import secrets

from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives import hmac
from cryptography.hazmat.primitives.ciphers import aead
from cryptography.hazmat.primitives.kdf import hkdf

KEY_SIZE = 32
NONCE_SIZE = 12
MAC_SIZE = 32
TAG_SIZE = 16


def _validate_key_and_nonce(key: bytes, nonce: bytes) -> None:
    if len(key) != KEY_SIZE:
        raise ValueError(f"Invalid key length {len(key)}. Expected {KEY_SIZE}.")

    if len(nonce) != NONCE_SIZE:
        raise ValueError(f"Invalid nonce length {len(nonce)}. Expected {NONCE_SIZE}.")


def generate_key(rng: random.Random | None = None) -> bytes:
    """Random key material, reproducible when a seeded `rng` is given."""
    if rng is None:
        return secrets.token_bytes(KEY_SIZE)
    return rng.randbytes(KEY_SIZE)


def to_base64(data: bytes) -> str:
    return base64.b64encode(data).decode()


def from_base64(value: str) -> bytes:
    return base64.b64decode(value.encode(), validate=True)


def encrypt_chacha20_poly1305(
    key: bytes,
    plaintext: bytes,
    nonce: bytes,
    associated_data: bytes | None = None,
) -> bytes:
    _validate_key_and_nonce(key, nonce)

    cipher = aead.ChaCha20Poly1305(key)
    return cipher.encrypt(nonce, plaintext, associated_data)


def decrypt_chacha20_poly1305(
    key: bytes,
    nonce: bytes,
    ciphertext: bytes,
    associated_data: bytes | None = None,
) -> bytes:
    _validate_key_and_nonce(key, nonce)

    cipher = aead.ChaCha20Poly1305(key)
    return cipher.decrypt(nonce, ciphertext, associated_data)


def sha256(data: bytes) -> bytes:
    digest = hashes.Hash(hashes.SHA256())
    digest.update(data)
    return digest.finalize()


def hmac_sha256(key: bytes, data: bytes) -> bytes:
    h = hmac.HMAC(key, hashes.SHA256())
    h.update(data)
    return h.finalize()


def macs_equal(left: bytes, right: bytes) -> bool:
    return std_hmac.compare_digest(left, right)


def hkdf_sha256(secret: bytes, salt: bytes, info: bytes, length: int) -> bytes:
    return hkdf.HKDF(
        algorithm=hashes.SHA256(),
        length=length,
        salt=salt,
        info=info,
    ).derive(secret)
