"""
KMS states of Cuntz-Krieger dynamics: inverse temperature and diagonal data.
"""

from .analysis import KMSReport, equilibrium_restriction, kms_analyze, scaling_identity_check

__all__ = ["KMSReport", "equilibrium_restriction", "kms_analyze", "scaling_identity_check"]
