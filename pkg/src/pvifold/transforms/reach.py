"""Which integer shifts of theta are realized by Okamoto chains."""

from __future__ import annotations

from enum import Enum


class Reachability(str, Enum):
    OKAMOTO_CHAIN = "OkamotoChain"
    NEEDS_FRACTIONAL_LINEAR = "NeedsFractionalLinear"
    UNREACHABLE = "Unreachable"

    def __str__(self):
        return self.value


def schlesinger_reachable(k0: int, k1: int, kt: int, kinf: int) -> Reachability:
    """Classify the shift theta -> theta + (k0, k1, kt, kinf).

    Okamoto maps alone reach it iff all four integers have the same parity.
    With fractional-linear maps (sign changes of thetas) added, exactly the
    shifts with even sum are reachable.
    """
    ks = (k0, k1, kt, kinf)
    if any(not isinstance(k, int) for k in ks):
        raise TypeError("shifts must be integers")
    parities = {k % 2 for k in ks}
    if len(parities) == 1:
        return Reachability.OKAMOTO_CHAIN
    if sum(ks) % 2 == 0:
        return Reachability.NEEDS_FRACTIONAL_LINEAR
    return Reachability.UNREACHABLE
