import os

BASE_TOL = 1e-10


def tol_scale():
    """Multiplier applied to default tolerances, read from ``LOSSGAIN_TOL``."""
    raw = os.environ.get("LOSSGAIN_TOL")
    if raw is None or raw.strip() == "":
        return 1.0
    value = float(raw)
    if not value > 0:
        raise ValueError(f"LOSSGAIN_TOL must be positive, got {raw!r}")
    return value


def default_tol(tol=None):
    return BASE_TOL * tol_scale() if tol is None else tol
