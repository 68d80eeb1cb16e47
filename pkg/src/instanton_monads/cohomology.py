"""Cohomology bookkeeping for line bundles and instanton monads on P^(2n+1)."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

__all__ = [
    "signed_binomial",
    "line_cohomology",
    "euler_char_line",
    "euler_char_E",
    "allowed_degree",
    "CohomologyTable",
    "natural_cohomology_table",
]


def signed_binomial(a: int, N: int) -> int:
    """``C(a, N)`` as the polynomial ``a (a-1) ... (a-N+1) / N!`` (valid for negative ``a``)."""
    num = 1
    for i in range(N):
        num *= a - i
    return num // factorial(N)


def line_cohomology(N: int, m: int) -> list[int]:
    """``h^q(P^N, O(m))`` for ``q = 0..N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    h = [0] * (N + 1)
    if m >= 0:
        h[0] = comb(m + N, N)
    if m <= -N - 1:
        h[N] = comb(-m - 1, N)
    return h


def euler_char_line(N: int, m: int) -> int:
    return signed_binomial(m + N, N)


def euler_char_E(n: int, k: int, l: int) -> int:
    """``chi(E(l))`` from ``0 -> O(-1)^(k+1) -> O^(2n+2k+2) -> O(1)^(k+1) -> 0``."""
    N = 2 * n + 1
    return (2 * n + 2 * k + 2) * euler_char_line(N, l) - (k + 1) * (
        euler_char_line(N, l + 1) + euler_char_line(N, l - 1)
    )


def allowed_degree(n: int, l: int) -> int | None:
    """The only ``q`` with possibly nonzero ``h^q(E(l))`` in the twist window."""
    if l == -2 * n - 1:
        return 2 * n
    if l in (-1, 0):
        # h^0(E) = 0 because ker(p) is stable; h^q(E) = 0 for q >= 2
        return 1
    if -2 * n <= l <= -2:
        return None
    raise ValueError(f"twist {l} outside the window [{-2 * n - 1}, 0]")


@dataclass(frozen=True)
class CohomologyTable:
    n: int
    k: int
    entries: dict[tuple[int, int], int]

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries[key]

    @property
    def twists(self) -> range:
        return range(-2 * self.n - 1, 1)

    @property
    def degrees(self) -> range:
        return range(0, 2 * self.n + 2)

    def alternating_sum(self, l: int) -> int:
        return sum((-1) ** q * self.entries[(q, l)] for q in self.degrees)

    def is_natural(self) -> bool:
        return all(
            sum(1 for q in self.degrees if self.entries[(q, l)]) <= 1 for l in self.twists
        )

    def to_json(self) -> dict[str, int]:
        return {f"{q},{l}": v for (q, l), v in sorted(self.entries.items())}

    @classmethod
    def from_json(cls, n: int, k: int, data: dict[str, int]) -> "CohomologyTable":
        entries = {}
        for key, v in data.items():
            q, l = (int(s) for s in key.split(","))
            entries[(q, l)] = int(v)
        return cls(n, k, entries)

    def format_text(self) -> str:
        header = "q\\l " + " ".join(f"{l:>4}" for l in self.twists)
        lines = [header]
        for q in reversed(self.degrees):
            lines.append(f"{q:>3} " + " ".join(f"{self.entries[(q, l)]:>4}" for l in self.twists))
        return "\n".join(lines)


def natural_cohomology_table(n: int, k: int) -> CohomologyTable:
    """Cohomology of ``E(l)`` for ``-2n-1 <= l <= 0`` from Euler characteristics.

    Raises ``ArithmeticError`` if some ``chi(E(l))`` has a sign (or is
    nonzero) incompatible with the only degree allowed at that twist.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be at least 1")
    entries = {(q, l): 0 for q in range(2 * n + 2) for l in range(-2 * n - 1, 1)}
    for l in range(-2 * n - 1, 1):
        chi = euler_char_E(n, k, l)
        q = allowed_degree(n, l)
        if q is None:
            if chi != 0:
                raise ArithmeticError(f"chi(E({l})) = {chi} but all cohomology must vanish")
            continue
        if chi * (-1) ** q < 0:
            raise ArithmeticError(f"chi(E({l})) = {chi} has the wrong sign for degree {q}")
        entries[(q, l)] = abs(chi)
    return CohomologyTable(n, k, entries)
