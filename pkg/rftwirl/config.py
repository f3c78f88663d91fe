import os

from dotenv import load_dotenv

load_dotenv()


def _get_int(name: str, default: int) -> int:
    raw = os.getenv(name, str(default)).strip()
    try:
        return int(raw)
    except Exception:
        return int(default)


def _get_float(name: str, default: float) -> float:
    raw = os.getenv(name, repr(default)).strip()
    try:
        return float(raw)
    except Exception:
        return float(default)


def _get_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name, "1" if default else "0").strip().lower()
    if raw in {"1", "true", "yes", "on"}:
        return True
    if raw in {"0", "false", "no", "off"}:
        return False
    return bool(default)


class Settings:
    MAX_QUBITS = _get_int("RFTWIRL_MAX_N", 10)
    ENUMERATION_MAX_N = _get_int("RFTWIRL_ENUMERATION_MAX_N", 6)

    TOLERANCE = _get_float("RFTWIRL_TOLERANCE", 1e-10)
    CERT_TOLERANCE = _get_float("RFTWIRL_CERT_TOLERANCE", 1e-9)
    HOLEVO_TOLERANCE = _get_float("RFTWIRL_HOLEVO_TOLERANCE", 1e-9)
    CERT_N_RANDOM = _get_int("RFTWIRL_CERT_N_RANDOM", 64)
    PAIRWISE_LIMIT = _get_int("RFTWIRL_PAIRWISE_LIMIT", 128)

    DEFAULT_SEED = _get_int("RFTWIRL_DEFAULT_SEED", 20050101)
    SAMPLED_TWIRL_SAMPLES = _get_int("RFTWIRL_SAMPLED_TWIRL_SAMPLES", 10000)

    CACHE_DIR = os.getenv("RFTWIRL_CACHE_DIR", "").strip()
    METRICS_TEXTFILE = os.getenv("RFTWIRL_METRICS_TEXTFILE", "").strip()
    LOG_LEVEL = os.getenv("RFTWIRL_LOG_LEVEL", "WARNING").strip().upper()
    LOG_JSON = _get_bool("RFTWIRL_LOG_JSON", True)


settings = Settings()
