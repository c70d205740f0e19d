"""Job configuration shared by every subcommand."""

import json
import os
from dataclasses import asdict, dataclass

from dqm.algebra.field import get_field

FORMATS = ("text", "json", "csv")


def default_cache_dir():
    env = os.environ.get("DQM_CACHE_DIR")
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(base, "dqm")


def parse_modulus(text):
    """'1,1,1' (low to high) -> (1, 1, 1)."""
    if text is None or text == "":
        return None
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(","))
    except ValueError:
        raise ValueError(f"modulus must be a comma-separated coefficient list, got {text!r}") from None


@dataclass(frozen=True)
class JobConfig:
    p: int = 3
    e: int = 1
    modulus: tuple = None
    cache_dir: str = None
    fmt: str = "text"
    jobs: int = 1
    precision_cap: int = 2 ** 14

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        if self.precision_cap < 1:
            raise ValueError("--precision-cap must be >= 1")
        # validates p, e and the modulus before any computation
        self.field()

    def field(self):
        return get_field(self.p, self.e, self.modulus if self.e > 1 else None)

    def to_json(self):
        d = asdict(self)
        d["modulus"] = list(self.modulus) if self.modulus else None
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        if d.get("modulus"):
            d["modulus"] = tuple(d["modulus"])
        return cls(**d)
