# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""
Kernel Certificate Serializers
"""

from pathlib import Path
from typing import Union

from magtm.core import MissingCertificateError, dump_json, load_json
from magtm.greens import (
    BoundCertificate,
    KernelCertificate,
    KernelId,
    RearrangementEnvelope,
    Regime,
)


def serialize_bound(cert: BoundCertificate) -> dict:
    return {
        "kernel": cert.kernel.value,
        "regime": cert.regime.value,
        "leading_coeff": cert.leading_coeff,
        "correction_exponent": cert.correction_exponent,
        "decay_rate": cert.decay_rate,
        "fitted_constant": cert.fitted_constant,
        "sample_report": cert.sample_report,
        "held_out_report": cert.held_out_report,
        "params": dict(cert.params),
        "grid": {k: list(v) for k, v in cert.grid.items()},
        "grid_hash": cert.grid_hash,
    }


def serialize_envelope(env: RearrangementEnvelope) -> dict:
    return {
        "kind": env.kind,
        "constant": env.constant,
        "delta3": env.delta3,
        "far_constant": env.far_constant,
        "far_decay": env.far_decay,
        "sample_measure": env.sample_measure,
    }


def certificate_to_dict(cert: Union[KernelCertificate, BoundCertificate]) -> dict:
    """Plain dict of a certificate; no timestamps so re-runs serialize identically."""
    if isinstance(cert, BoundCertificate):
        return serialize_bound(cert)
    return {
        "kernel": cert.kernel.value,
        "near": serialize_bound(cert.near),
        "far": serialize_bound(cert.far),
        "envelope": serialize_envelope(cert.envelope) if cert.envelope else None,
    }


def bound_certificate_from_dict(data: dict) -> BoundCertificate:
    return BoundCertificate(
        kernel=KernelId(data["kernel"]),
        regime=Regime(data["regime"]),
        leading_coeff=float(data["leading_coeff"]),
        correction_exponent=float(data["correction_exponent"]),
        decay_rate=float(data["decay_rate"]),
        fitted_constant=float(data["fitted_constant"]),
        sample_report=float(data["sample_report"]),
        held_out_report=float(data["held_out_report"]),
        params=dict(data.get("params", {})),
        grid=dict(data.get("grid", {})),
        grid_hash=data.get("grid_hash", ""),
    )


def certificate_from_dict(data: dict) -> KernelCertificate:
    if not data or "near" not in data or "far" not in data:
        raise MissingCertificateError("certificate payload lacks near/far bounds")
    env = data.get("envelope")
    return KernelCertificate(
        kernel=KernelId(data["kernel"]),
        near=bound_certificate_from_dict(data["near"]),
        far=bound_certificate_from_dict(data["far"]),
        envelope=RearrangementEnvelope(**env) if env else None,
    )


def write_certificate(path, cert: Union[KernelCertificate, BoundCertificate]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_json(certificate_to_dict(cert)))
    return path


def read_certificate(path) -> KernelCertificate:
    return certificate_from_dict(load_json(path))


__all__ = [
    "serialize_bound",
    "serialize_envelope",
    "certificate_to_dict",
    "certificate_from_dict",
    "bound_certificate_from_dict",
    "write_certificate",
    "read_certificate",
]
