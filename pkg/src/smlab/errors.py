"""Exception types and size caps shared by every backend."""

from __future__ import annotations

import os
from dataclasses import dataclass

# Rings above this size are never tabulated.
CONSTRUCTION_CAP = 4096
# Ideal lattices (R as a module over itself) are only enumerated up to this size.
IDEAL_LATTICE_CAP = 256


class SmlabError(Exception):
    """Base class for errors raised by the library."""


class PreconditionError(SmlabError, ValueError):
    """An operation was called outside its documented domain (e.g. N = M)."""


class CapExceeded(SmlabError):
    """A structure is larger than the configured size cap."""


class ParseError(SmlabError, ValueError):
    """An instance descriptor could not be understood."""


@dataclass(frozen=True)
class Caps:
    ring: int = 64
    module: int = 200
    lattice: int = 512

    @classmethod
    def parse(cls, text: str) -> "Caps":
        """Parse ``"ring=64,module=200,lattice=512"``; missing keys keep defaults."""
        values = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, val = part.partition("=")
            if not sep or key.strip() not in ("ring", "module", "lattice"):
                raise ParseError(f"bad cap entry {part!r}")
            try:
                values[key.strip()] = int(val)
            except ValueError:
                raise ParseError(f"bad cap value {part!r}") from None
        return cls(**values)

    @classmethod
    def from_env(cls) -> "Caps":
        text = os.environ.get("SMLAB_CAPS", "")
        return cls.parse(text) if text else cls()


def lattice_cap() -> int:
    return Caps.from_env().lattice
