"""Exceptional-point geometry of the four-site PT-symmetric lattice."""

import json

from ._core import (
    InvalidArgument,
    box_components,
    discriminants,
    energies,
    hamiltonian,
    in_domain,
    in_domain_oracle,
    oracle_eigenvalues,
    segment_connected,
    slice,
    verify_json,
)


def verify():
    """Run the identity suite and return the report as a dict."""
    return json.loads(verify_json())


__all__ = [
    "InvalidArgument",
    "box_components",
    "discriminants",
    "energies",
    "hamiltonian",
    "in_domain",
    "in_domain_oracle",
    "oracle_eigenvalues",
    "segment_connected",
    "slice",
    "verify",
]
