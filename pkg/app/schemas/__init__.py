from .certificate import CertificateDocument
from .reference import X2Reference, load_x2_reference
from .scan import SCAN_COLUMNS, CheckReport, CheckResult, ScanRow

__all__ = [
    "SCAN_COLUMNS",
    "CertificateDocument",
    "CheckReport",
    "CheckResult",
    "ScanRow",
    "X2Reference",
    "load_x2_reference",
]
