import math

from dataclasses import dataclass
from typing import Tuple

from ..types import DomainError


@dataclass(frozen=True)
class ArctanSpectrum:
    values: Tuple[float, ...]
    sup_norm: float


def lifted_spectrum_arctan(lam: float, mu: float, K: int) -> ArctanSpectrum:
    """
    Spectrum ``√μ / (arctan(√μ/λ) + kπ)``, ``|k| <= K``, of a lifted shape operator

    ``arctan`` is the principal branch, so a negative ``λ`` gives a base
    angle in ``(−π/2, 0)``; ``λ = 0`` uses ``π/2``.  For ``μ = 0`` the
    spectrum is ``{λ}``.

    Args:
        lam (``float``): eigenvalue of the orbit shape operator
        mu (``float``): nonnegative coupling
        K (``int``): truncation

    Returns:
        ``ArctanSpectrum``: the values and ``sup_norm = √μ / arctan(√μ/|λ|)``
    """
    if mu < 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")

    if K < 0:
        raise DomainError(f"K must be nonnegative, got {K}")

    if mu == 0:
        return ArctanSpectrum(values=(float(lam),), sup_norm=abs(float(lam)))

    root = math.sqrt(mu)
    base = math.atan(root / lam) if lam != 0 else math.pi / 2
    values = tuple(root / (base + k * math.pi) for k in range(-K, K + 1))

    sup = root / (math.atan(root / abs(lam)) if lam != 0 else math.pi / 2)
    return ArctanSpectrum(values=values, sup_norm=sup)
