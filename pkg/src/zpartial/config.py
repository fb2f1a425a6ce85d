"""Default caps and the cross-check switch.

Defaults may be overridden through the environment:
``ZPARTIAL_CAP_HOM``, ``ZPARTIAL_CAP_SUBGROUPS``, ``ZPARTIAL_CAP_BATTERY``,
``ZPARTIAL_MAX_STEPS`` and ``ZPARTIAL_CHECK`` (any non-empty value other
than ``0`` turns cross-checking on).
"""
import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(raw)


# size of a single Hom-set / element stream handed out by the enumerators
CAP_HOM = _env_int("ZPARTIAL_CAP_HOM", 4096)
# largest module order whose subgroup lattice is searched
CAP_SUBGROUPS = _env_int("ZPARTIAL_CAP_SUBGROUPS", 1 << 10)
# per-(source, target) Hom-set size a battery sweep is allowed to scan
CAP_BATTERY = _env_int("ZPARTIAL_CAP_BATTERY", 1 << 20)
MAX_STEPS = _env_int("ZPARTIAL_MAX_STEPS", 8)
DEFAULT_BATTERY_ORDER = 16

CROSS_CHECK = os.environ.get("ZPARTIAL_CHECK", "") not in ("", "0")


def caps() -> dict:
    return {
        "cap_hom": CAP_HOM,
        "cap_subgroups": CAP_SUBGROUPS,
        "cap_battery": CAP_BATTERY,
        "max_steps": MAX_STEPS,
    }
