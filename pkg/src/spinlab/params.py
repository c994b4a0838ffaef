"""Model couplings for the single spin coupled to a fully connected Ising chain."""

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction

from spinlab.errors import InvalidArgument

COUPLING_FIELDS = ("omega", "delta", "omega_t", "delta_t", "j_chain", "j_couple")


def twice_spin(spin):
    """Return ``2*spin`` as an int, rejecting anything that is not a positive half-integer.

    Accepts ints, floats, :class:`~fractions.Fraction` and strings such as ``"5/2"``.
    """
    if isinstance(spin, bool):
        raise InvalidArgument(f"spin must be a half-integer, got {spin!r}")
    try:
        value = Fraction(spin) if isinstance(spin, str) else Fraction(spin).limit_denominator(1 << 20)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"spin must be a half-integer, got {spin!r}") from exc
    if isinstance(spin, float) and (not math.isfinite(spin) or float(value) != spin):
        raise InvalidArgument(f"spin must be a half-integer, got {spin!r}")
    two = 2 * value
    if two.denominator != 1 or two < 1:
        raise InvalidArgument(f"spin must be a positive half-integer, got {spin!r}")
    return int(two)


@dataclass(frozen=True)
class ModelParams:
    """The six couplings plus the total chain spin ``S = N/2``.

    Attributes
    ----------
    omega, delta : float
        z and x splittings of the single spin.
    omega_t, delta_t : float
        z and x fields acting on the chain.
    j_chain : float
        All-to-all Ising coupling inside the chain.
    j_couple : float
        Coupling between the single spin and the chain.
    spin : float
        Total chain spin; only finite-size operations read it.
    """

    omega: float = 0.0
    delta: float = 0.0
    omega_t: float = 0.0
    delta_t: float = 0.0
    j_chain: float = 0.0
    j_couple: float = 0.0
    spin: float = 0.5

    def __post_init__(self):
        for name in COUPLING_FIELDS:
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError) as exc:
                raise InvalidArgument(f"{name} must be a real number, got {value!r}") from exc
            if not math.isfinite(value):
                raise InvalidArgument(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "spin", twice_spin(self.spin) / 2)

    @property
    def two_spin(self):
        return int(round(2 * self.spin))

    @property
    def dim(self):
        """Dimension of the chain space, ``2S + 1``."""
        return self.two_spin + 1

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(COUPLING_FIELDS) - {"spin"}
        if unknown:
            raise InvalidArgument(f"unknown model fields: {sorted(unknown)}")
        return cls(**data)
