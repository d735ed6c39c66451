#   ┌─┐┬ ┬┌─┐┌┬┐┌┐ ┌─┐┬─┐┌─┐┬  ┌─┐┬ ┬
#   │  ├─┤├─┤│││├┴┐├┤ ├┬┘├┤ │  │ ││││
#   └─┘┴ ┴┴ ┴┴ ┴└─┘└─┘┴└─└  ┴─┘└─┘└┴┘
#
#                                    🔒 Licensed under the CC-by-NC
#                                 https://creativecommons.org/licenses/by-nc/4.0/

"""Embedded Runge-Kutta pairs for the chamber flow"""

import numpy as np

from typing import Callable, List, Tuple


class ExplicitRungeKutta:
    """Explicit embedded pair for an autonomous field ``y' = f(y)``.

    Subclasses fill in the stage count ``s``, the orders ``n`` (propagating)
    and ``m`` (embedded), the stage times ``eval_stages``, the Butcher rows
    ``BT`` and the error weights ``TR`` (propagating minus embedded weights).

    When the last Butcher row equals the propagating weights the pair is
    FSAL: the last stage is the field at the new point and is handed back
    so the next step can reuse it.
    """

    s: int = 0
    n: int = 0
    m: int = 0
    eval_stages: List[float] = []
    BT: dict = {}
    TR: List[float] = []

    @property
    def error_exponent(self) -> float:
        return 1.0 / (self.m + 1)

    @property
    def fsal(self) -> bool:
        return len(self.BT) == self.s - 1 and self.eval_stages[-1] == 1

    def step(
        self, func: Callable[[np.ndarray], np.ndarray], y: np.ndarray, h: float, k0=None
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """One step of size ``h``.

        Returns
        -------
        y_new : array
            propagated solution
        error : array
            local truncation error estimate
        k_last : array
            field at the last stage (the field at ``y_new`` for FSAL pairs)
        """
        ks = [func(y) if k0 is None else k0]

        for i in range(self.s - 1):
            row = self.BT[i]
            slope = sum(a * k for a, k in zip(row, ks) if a)
            ks.append(func(y + h * slope))

        weights = self.BT[self.s - 2]
        y_new = y + h * sum(b * k for b, k in zip(weights, ks) if b)
        error = h * sum(t * k for t, k in zip(self.TR, ks) if t)

        return y_new, error, ks[-1]


class RKDP54(ExplicitRungeKutta):
    """Dormand-Prince 5(4) pair. Seven stages, 5th order propagation with an
    embedded 4th order error estimate, first-same-as-last.

    Characteristics
    ---------------
    * Order: 5 (propagating) / 4 (embedded)
    * Stages: 7 (6 new field evaluations per accepted step)
    * Explicit, adaptive timestep

    Note
    ----
    The chamber field is only stiff next to a wall, where the flow hands
    over to the blow-up fit instead of resolving the pole.
    """

    s = 7

    n = 5
    m = 4

    eval_stages = [0.0, 1/5, 3/10, 4/5, 8/9, 1, 1]

    BT = {
        0: [       1/5],
        1: [      3/40,        9/40],
        2: [     44/45,      -56/15,       32/9],
        3: [19372/6561, -25360/2187, 64448/6561, -212/729],
        4: [ 9017/3168,     -355/33, 46732/5247,   49/176, -5103/18656],
        5: [    35/384,           0,   500/1113,  125/192,  -2187/6784, 11/84],
        }

    TR = [71/57600, 0, -71/16695, 71/1920, -17253/339200, 22/525, -1/40]
