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

import enum

from gcl_v2g.common import exceptions


class FailureReason(str, enum.Enum):
    CERTIFICATE_VERIFY_FAILURE = "CertificateVerifyFailure"
    TRANSCRIPT_MISMATCH = "TranscriptMismatch"
    TIMEOUT = "Timeout"

    def __str__(self) -> str:
        return self.value


class SecureChannelException(exceptions.V2GException):
    __template__ = "An unknown secure channel exception occurred."


class HandshakeFailure(SecureChannelException):
    __template__ = "Handshake failed: {reason} ({detail})"
    reason: FailureReason
    detail: str


class AuthenticationFailure(SecureChannelException):
    __template__ = "Record authentication failed: {detail}"
    detail: str


class BadRecord(SecureChannelException):
    __template__ = "Malformed record: {detail}"
    detail: str


class InvalidIdentityFile(SecureChannelException):
    __template__ = "Invalid identity file {path}: {detail}"
    path: str
    detail: str
