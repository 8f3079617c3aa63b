"""Tiny text-rendering helpers shared by the verification reports."""

from __future__ import annotations

import numpy as np


def check_line(label: str, value: float, tol: float) -> str:
    """One report line: value, the tolerance it was checked against, verdict."""
    status = "PASS" if value <= tol else "FAIL"
    return f"{label}: {value:.3e} (tol {tol:.1e}): {status}"


def format_matrix(m: np.ndarray, precision: int = 6) -> str:
    return np.array2string(
        np.asarray(m), precision=precision, suppress_small=True, separator=", "
    )
