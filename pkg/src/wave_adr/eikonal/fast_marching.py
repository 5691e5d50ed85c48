"""
Factored fast marching for |grad tau| = s from a point source.

tau = tau0 * tau1 with tau0 = |x - x0| known analytically; the march solves
for tau1, which is smooth at the source. Each trial update is the first-order
upwind quadratic written in terms of tau1:

    sum over axes (a t + b)^2 = s^2,
    a = tau0 / (sigma h) + d tau0,   b = -tau0 tau1_n / (sigma h)

where tau1_n is the frozen upwind neighbour on that axis and sigma = +1 when
the neighbour precedes the node along the axis. An axis without a frozen
neighbour contributes (d tau0 * t)^2. Every freeze recomputes the trial
values of its unfrozen neighbours from the current frozen set.
"""

import heapq
import math
from typing import Sequence

import numpy as np
from structlog import get_logger

from wave_adr.core.errors import EikonalError
from wave_adr.core.fields import SlownessModel

logger = get_logger(__name__)

FAR, TRIAL, FROZEN = 0, 1, 2
CAUSALITY_TOL = 1e-12


class FactoredFastMarching:
    """
    One march over a slowness grid.

    State per node: FAR, TRIAL (in the heap) or FROZEN. Stale heap entries
    are skipped on pop.
    """

    def __init__(self, s: SlownessModel, source: Sequence[int]):
        grid = s.grid
        n = grid.n_interior
        iy, ix = int(source[0]), int(source[1])
        if not (0 <= iy < n and 0 <= ix < n):
            raise EikonalError(f"Source node {(iy, ix)} outside the {n}x{n} grid")
        if not np.all(np.isfinite(s.s)):
            raise EikonalError("Slowness must be finite")

        self.grid = grid
        self.h = grid.h
        self.s = s.s
        self.source = (iy, ix)

        offsets = np.arange(n) * self.h
        dy = offsets[:, None] - offsets[iy]
        dx = offsets[None, :] - offsets[ix]
        self.tau0 = np.hypot(dx, dy)
        with np.errstate(invalid="ignore", divide="ignore"):
            self.tau0_x = np.where(self.tau0 > 0, dx / self.tau0, 0.0)
            self.tau0_y = np.where(self.tau0 > 0, dy / self.tau0, 0.0)

        self.tau1 = np.full(grid.shape, np.inf)
        self.state = np.full(grid.shape, FAR, dtype=np.int8)
        self._heap: list[tuple[float, int, int]] = []
        self._front = 0.0

    def tau(self, node: tuple[int, int]) -> float:
        return self.tau0[node] * self.tau1[node]

    def run(self) -> np.ndarray:
        """March until every node is frozen; returns tau1."""
        src = self.source
        self.tau1[src] = self.s[src]
        self.state[src] = FROZEN
        self._update_neighbours(src)

        frozen = 1
        while self._heap:
            value, iy, ix = heapq.heappop(self._heap)
            node = (iy, ix)
            if self.state[node] == FROZEN or value != self.tau(node):
                continue
            if value < self._front * (1.0 - CAUSALITY_TOL) - CAUSALITY_TOL:
                raise EikonalError(f"Fast marching froze {node} out of order")
            self._front = value
            self.state[node] = FROZEN
            frozen += 1
            self._update_neighbours(node)

        if frozen != self.grid.size:
            raise EikonalError(f"Fast marching froze {frozen} of {self.grid.size} nodes")
        logger.debug("fast_marching_done", n=self.grid.n_interior, max_tau=float(self.tau_max()))
        return self.tau1

    def tau_max(self) -> float:
        return float(np.max(self.tau0 * self.tau1))

    def _neighbours(self, node):
        iy, ix = node
        n = self.grid.n_interior
        for ny, nx in ((iy - 1, ix), (iy + 1, ix), (iy, ix - 1), (iy, ix + 1)):
            if 0 <= ny < n and 0 <= nx < n:
                yield (ny, nx)

    def _update_neighbours(self, node):
        # replace, not min: the one-axis estimate is no upper bound
        for nb in self._neighbours(node):
            if self.state[nb] == FROZEN:
                continue
            self.tau1[nb] = self._local_solve(nb)
            self.state[nb] = TRIAL
            heapq.heappush(self._heap, (self.tau(nb), nb[0], nb[1]))

    def _upwind(self, node, axis: int):
        """(sigma, tau1_n, tau_n) of the frozen neighbour with the smaller tau along ``axis``."""
        iy, ix = node
        n = self.grid.n_interior
        best = None
        for sigma in (1, -1):
            nb = (iy - sigma, ix) if axis == 0 else (iy, ix - sigma)
            if not (0 <= nb[0] < n and 0 <= nb[1] < n) or self.state[nb] != FROZEN:
                continue
            tau_n = self.tau(nb)
            if best is None or tau_n < best[2]:
                best = (sigma, self.tau1[nb], tau_n)
        return best

    def _local_solve(self, node) -> float:
        tau0 = self.tau0[node]
        grads = (self.tau0_y[node], self.tau0_x[node])
        s2 = self.s[node] ** 2
        upwind = [self._upwind(node, axis) for axis in (0, 1)]

        terms = []
        for axis, up in enumerate(upwind):
            if up is None:
                terms.append((grads[axis], 0.0, None))
            else:
                sigma, tau1_n, tau_n = up
                a = tau0 / (sigma * self.h) + grads[axis]
                b = -tau0 * tau1_n / (sigma * self.h)
                terms.append((a, b, tau_n))

        candidates = []
        if all(up is not None for up in upwind):
            t = self._larger_root(terms, s2)
            if t is not None and all(tau0 * t >= tn - CAUSALITY_TOL for _, _, tn in terms):
                candidates.append(t)
        if not candidates:
            for axis, up in enumerate(upwind):
                if up is None:
                    continue
                other = 1 - axis
                one_axis = [terms[axis], (grads[other], 0.0, None)]
                t = self._larger_root(one_axis, s2)
                if t is not None and tau0 * t >= up[2] - CAUSALITY_TOL:
                    candidates.append(t)
        if not candidates:
            # degenerate quadratic: step one cell along the cheapest axis
            candidates = [
                (up[2] + self.h * math.sqrt(s2)) / tau0 for up in upwind if up is not None
            ]
        t = min(candidates)
        # keep the frozen sequence monotone
        return max(t, self._front / tau0)

    @staticmethod
    def _larger_root(terms, s2: float):
        qa = sum(a * a for a, _, _ in terms)
        qb = 2.0 * sum(a * b for a, b, _ in terms)
        qc = sum(b * b for _, b, _ in terms) - s2
        if qa <= 0.0:
            return None
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0.0:
            return None
        return (-qb + math.sqrt(disc)) / (2.0 * qa)


def march(s: SlownessModel, source: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """(tau0, tau1) for a point source at node ``source``."""
    fmm = FactoredFastMarching(s, source)
    tau1 = fmm.run()
    return fmm.tau0, tau1
