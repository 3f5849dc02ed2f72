"""Numerical tolerances shared by the proximity, medial and limit code."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

from .errors import ToleranceConflict


@dataclass(frozen=True)
class Params:
    """All tolerances, expressed in the units of the window.

    Use :meth:`for_h` to get the defaults tied to a grid spacing.
    """

    h: float
    eps: float  # sample spacing
    eps_d: float  # distance slack for near-minimizers
    eta_sep: float  # spatial separation between minimizer clusters
    eps_lim: float  # radius of the limit surrogates
    eps_conv: float  # sup-norm threshold for convergence
    tail_k: int = 5
    cap: int = 64
    threads: int = 1

    @classmethod
    def for_h(cls, h: float, **overrides) -> "Params":
        eps = h / 4
        p = cls(h=h, eps=eps, eps_d=4 * eps, eta_sep=12 * eps, eps_lim=4 * h, eps_conv=2 * h)
        return replace(p, **overrides) if overrides else p

    def __post_init__(self):
        for name in ("h", "eps", "eps_d", "eta_sep", "eps_lim", "eps_conv"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.eta_sep <= 2 * (self.eps + self.eps_d):
            raise ToleranceConflict("eta_sep must exceed 2*(eps + eps_d)")
        if self.tail_k < 1 or self.threads < 1 or self.cap < 2:
            raise ValueError("tail_k, threads must be >= 1 and cap >= 2")

    @property
    def on_tol(self) -> float:
        """Points this close to the set count as on it."""
        return 2 * self.eps

    @property
    def eps_thm(self) -> float:
        return max(2 * self.h, 2 * self.eps_lim)

    def scaled(self, lam: float) -> "Params":
        return replace(
            self,
            h=lam * self.h,
            eps=lam * self.eps,
            eps_d=lam * self.eps_d,
            eta_sep=lam * self.eta_sep,
            eps_lim=lam * self.eps_lim,
            eps_conv=lam * self.eps_conv,
        )

    def to_json(self) -> dict:
        # threads changes scheduling only, never the numbers, so it is not recorded
        d = asdict(self)
        del d["threads"]
        return d
