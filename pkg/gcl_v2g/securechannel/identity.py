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

"""Certificates, identities and trust anchors.

A certificate binds a subject name to an Ed25519 public key and is signed
by the issuer. A trust anchor is the issuer's name and verification key.
"""

from __future__ import annotations

import dataclasses
import logging
import random
import struct
import typing as tp

from cryptography import exceptions as crypto_exc
from cryptography.hazmat.primitives.asymmetric import ed25519

from gcl_v2g.common import utils
from gcl_v2g.securechannel import crypto
from gcl_v2g.securechannel import exceptions as sc_exc

LOG = logging.getLogger(__name__)

IDENTITY_FORMAT = "gcl-v2g-identity"
ANCHOR_FORMAT = "gcl-v2g-anchor"
FILE_VERSION = 1

PUBLIC_KEY_SIZE = 32
SIGNATURE_SIZE = 64


def _pack_str(value: str) -> bytes:
    raw = value.encode("utf-8")
    return struct.pack(">H", len(raw)) + raw


def _unpack_str(data: bytes, offset: int) -> tuple[str, int]:
    if offset + 2 > len(data):
        raise ValueError("truncated string")
    (size,) = struct.unpack_from(">H", data, offset)
    offset += 2
    if offset + size > len(data):
        raise ValueError("truncated string")
    return data[offset : offset + size].decode("utf-8"), offset + size


@dataclasses.dataclass(frozen=True)
class Certificate:
    subject_name: str
    public_key: bytes
    issuer_name: str
    signature: bytes

    def tbs(self) -> bytes:
        """The signed part: subject name and public key."""
        return _pack_str(self.subject_name) + self.public_key

    def to_bytes(self) -> bytes:
        return (
            _pack_str(self.subject_name)
            + self.public_key
            + _pack_str(self.issuer_name)
            + self.signature
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> Certificate:
        subject, offset = _unpack_str(data, 0)
        public_key = data[offset : offset + PUBLIC_KEY_SIZE]
        offset += PUBLIC_KEY_SIZE
        issuer, offset = _unpack_str(data, offset)
        signature = data[offset:]
        if len(public_key) != PUBLIC_KEY_SIZE or len(signature) != SIGNATURE_SIZE:
            raise ValueError("bad certificate size")
        return cls(subject, public_key, issuer, signature)


@dataclasses.dataclass(frozen=True)
class TrustAnchor:
    name: str
    verification_key: bytes


class Identity(tp.NamedTuple):
    certificate: Certificate
    signing_key: bytes

    @property
    def name(self) -> str:
        return self.certificate.subject_name

    def private_key(self) -> ed25519.Ed25519PrivateKey:
        return ed25519.Ed25519PrivateKey.from_private_bytes(self.signing_key)

    def sign(self, data: bytes) -> bytes:
        return self.private_key().sign(data)

    def as_anchor(self) -> TrustAnchor:
        """Use this identity as an issuer of other identities."""
        return TrustAnchor(self.name, self.certificate.public_key)


def _raw_public_key(key: ed25519.Ed25519PrivateKey) -> bytes:
    return key.public_key().public_bytes_raw()


def generate_identity(
    name: str, issuer: Identity | None, rng: random.Random | None = None
) -> Identity:
    """Create a key pair and a certificate for `name`.

    Without an issuer the certificate is self-signed. With a seeded `rng`
    the result is reproducible.
    """
    key = ed25519.Ed25519PrivateKey.from_private_bytes(crypto.generate_key(rng))
    public_key = _raw_public_key(key)
    unsigned = Certificate(name, public_key, "", b"")
    if issuer is None:
        issuer_name, signature = name, key.sign(unsigned.tbs())
    else:
        issuer_name, signature = issuer.name, issuer.sign(unsigned.tbs())

    certificate = Certificate(name, public_key, issuer_name, signature)
    LOG.debug("Generated identity %s issued by %s", name, issuer_name)
    return Identity(certificate, key.private_bytes_raw())


def verify(certificate: Certificate, anchor: TrustAnchor) -> bool:
    if certificate.issuer_name != anchor.name:
        return False
    try:
        ed25519.Ed25519PublicKey.from_public_bytes(anchor.verification_key).verify(
            certificate.signature, certificate.tbs()
        )
    except (crypto_exc.InvalidSignature, ValueError):
        return False
    return True


def verify_signature(public_key: bytes, signature: bytes, data: bytes) -> bool:
    try:
        ed25519.Ed25519PublicKey.from_public_bytes(public_key).verify(signature, data)
    except (crypto_exc.InvalidSignature, ValueError):
        return False
    return True


def identity_to_dict(identity: Identity) -> dict[str, tp.Any]:
    cert = identity.certificate
    return {
        "format": IDENTITY_FORMAT,
        "version": FILE_VERSION,
        "subject": cert.subject_name,
        "issuer": cert.issuer_name,
        "publicKey": crypto.to_base64(cert.public_key),
        "signature": crypto.to_base64(cert.signature),
        "signingKey": crypto.to_base64(identity.signing_key),
    }


def anchor_to_dict(anchor: TrustAnchor) -> dict[str, tp.Any]:
    return {
        "format": ANCHOR_FORMAT,
        "version": FILE_VERSION,
        "name": anchor.name,
        "verificationKey": crypto.to_base64(anchor.verification_key),
    }


def save_identity(path: str, identity: Identity) -> None:
    utils.dump_json(path, identity_to_dict(identity), private=True)


def save_anchor(path: str, anchor: TrustAnchor) -> None:
    utils.dump_json(path, anchor_to_dict(anchor))


def _load(path: str) -> dict[str, tp.Any]:
    try:
        data = utils.load_json(path)
    except (OSError, ValueError) as e:
        raise sc_exc.InvalidIdentityFile(path=path, detail=str(e))
    if not isinstance(data, dict) or data.get("version") != FILE_VERSION:
        raise sc_exc.InvalidIdentityFile(path=path, detail="unsupported container")
    return data


def identity_from_dict(data: dict[str, tp.Any], path: str = "<memory>") -> Identity:
    try:
        certificate = Certificate(
            subject_name=data["subject"],
            public_key=crypto.from_base64(data["publicKey"]),
            issuer_name=data["issuer"],
            signature=crypto.from_base64(data["signature"]),
        )
        signing_key = crypto.from_base64(data["signingKey"])
    except (KeyError, TypeError, ValueError) as e:
        raise sc_exc.InvalidIdentityFile(path=path, detail=f"bad field {e}")
    return Identity(certificate, signing_key)


def load_identity(path: str) -> Identity:
    data = _load(path)
    if data.get("format") != IDENTITY_FORMAT:
        raise sc_exc.InvalidIdentityFile(path=path, detail="not an identity file")
    return identity_from_dict(data, path)


def load_anchor(path: str) -> TrustAnchor:
    """Load a trust anchor from an anchor file or an issuer identity file."""
    data = _load(path)
    if data.get("format") == IDENTITY_FORMAT:
        return identity_from_dict(data, path).as_anchor()
    if data.get("format") != ANCHOR_FORMAT:
        raise sc_exc.InvalidIdentityFile(path=path, detail="not an anchor file")
    try:
        return TrustAnchor(data["name"], crypto.from_base64(data["verificationKey"]))
    except (KeyError, TypeError, ValueError) as e:
        raise sc_exc.InvalidIdentityFile(path=path, detail=f"bad field {e}")
