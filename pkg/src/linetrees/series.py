"""Exact truncated multivariate power series in the color variables.

The generating function F(g_1, ..., g_D) of the tree family satisfies

    F = sum_{k=0..D} e_k(g) * F^k,

where e_k is the k-th elementary symmetric polynomial of the variables.
`solve_tree_equation` finds the unique solution with constant term 1 by
fixed-point iteration, which is exact at any truncation order because each
pass locks in one more total degree.  `closed_form_series` assembles the
level-n series directly from the counting formula; the verify_* functions
compare the two routes coefficient by coefficient.

Coefficients are arbitrary-precision integers throughout; truncation is by
total degree, so every identity checked here is closed under it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .combinatorics import ColorProfile, closed_form_count, profiles_with_total
from .errors import BudgetExceeded, DomainError, NonConvergence
from .verification import Mismatch, VerificationReport

# Default per-d ceilings on the truncation order.
_DEFAULT_MAX_ORDERS = {2: 20, 3: 12}


def _max_order_cap(d: int) -> int:
    return _DEFAULT_MAX_ORDERS.get(d, 8)


def _check_order(d: int, order: int, max_order: int | None) -> None:
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    cap = _max_order_cap(d) if max_order is None else max_order
    if order > cap:
        raise BudgetExceeded(f"order {order} exceeds the cap of {cap} for d={d}")


@dataclass(frozen=True)
class MultiSeries:
    """Multivariate power series truncated by total degree.

    ``coeffs`` maps exponent tuples (p_1, ..., p_d) with sum <= order to
    nonzero integers; absent keys are zero.  Instances are treated as
    immutable; arithmetic returns new series truncated at the same order.
    """

    d: int
    order: int
    coeffs: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"need d >= 1 variables, got {self.d}")
        if self.order < 0:
            raise DomainError(f"order must be >= 0, got {self.order}")
        cleaned: dict[tuple[int, ...], int] = {}
        for key, value in self.coeffs.items():
            key = tuple(key)
            if len(key) != self.d or any(e < 0 for e in key):
                raise DomainError(f"bad exponent vector {key} for d={self.d}")
            if not isinstance(value, int):
                raise DomainError(f"coefficient at {key} is not an integer: {value!r}")
            if value != 0 and sum(key) <= self.order:
                cleaned[key] = value
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def constant(cls, d: int, order: int, value: int = 1) -> "MultiSeries":
        return cls(d, order, {(0,) * d: value})

    @classmethod
    def zero(cls, d: int, order: int) -> "MultiSeries":
        return cls(d, order, {})

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.coeffs.get(tuple(exponents), 0)

    def items_sorted(self) -> list[tuple[tuple[int, ...], int]]:
        """Coefficients sorted by total degree, then lexicographic exponent."""
        return sorted(self.coeffs.items(), key=lambda item: (sum(item[0]), item[0]))

    def _require_same_shape(self, other: "MultiSeries") -> None:
        if self.d != other.d or self.order != other.order:
            raise DomainError(
                f"shape mismatch: (d={self.d}, order={self.order}) vs "
                f"(d={other.d}, order={other.order})"
            )

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._require_same_shape(other)
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            out[key] = out.get(key, 0) + value
        return MultiSeries(self.d, self.order, out)

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def __neg__(self) -> "MultiSeries":
        return MultiSeries(self.d, self.order, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiSeries(
                self.d, self.order, {k: v * other for k, v in self.coeffs.items()}
            )
        self._require_same_shape(other)
        out: dict[tuple[int, ...], int] = {}
        for pa, ca in self.coeffs.items():
            deg_a = sum(pa)
            for pb, cb in other.coeffs.items():
                if deg_a + sum(pb) > self.order:
                    continue
                key = tuple(x + y for x, y in zip(pa, pb))
                out[key] = out.get(key, 0) + ca * cb
        return MultiSeries(self.d, self.order, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiSeries":
        if exponent < 0:
            raise DomainError(f"series power must be >= 0, got {exponent}")
        result = MultiSeries.constant(self.d, self.order, 1)
        base = self
        # Exponents stay tiny; square-and-multiply keeps big orders cheap.
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def truncate(self, order: int) -> "MultiSeries":
        """Drop all terms of total degree above ``order``."""
        return MultiSeries(self.d, order, self.coeffs)

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Value of the truncated sum at a complex point, by nested Horner."""
        if len(point) != self.d:
            raise DomainError(f"point has {len(point)} entries, series has d={self.d}")
        return _horner(self.coeffs, tuple(complex(x) for x in point))

    def to_json_obj(self) -> dict:
        """Stable dump: coefficients as decimal strings, sorted by total
        degree then lexicographic exponent."""
        return {
            "d": self.d,
            "order": self.order,
            "coeffs": [{"p": list(p), "c": str(c)} for p, c in self.items_sorted()],
        }


def _horner(coeffs: dict[tuple[int, ...], int], point: tuple[complex, ...]) -> complex:
    if not coeffs:
        return 0j
    if not point:
        return complex(coeffs.get((), 0))
    groups: dict[int, dict[tuple[int, ...], int]] = {}
    for key, value in coeffs.items():
        groups.setdefault(key[0], {})[key[1:]] = value
    result = 0j
    for power in range(max(groups), -1, -1):
        result = result * point[0]
        sub = groups.get(power)
        if sub is not None:
            result += _horner(sub, point[1:])
    return result


def evaluate(series: MultiSeries, point: Sequence[complex]) -> complex:
    """Module-level alias for :meth:`MultiSeries.evaluate`."""
    return series.evaluate(point)


def elementary_symmetric_series(d: int, order: int) -> list[MultiSeries]:
    """The elementary symmetric polynomials e_0=1, e_1, ..., e_d as series.

    e_k is the sum of all squarefree degree-k monomials; with order < k it
    truncates to zero.
    """
    if d < 1:
        raise DomainError(f"need d >= 1 variables, got {d}")
    out = [MultiSeries.constant(d, order, 1)]
    for k in range(1, d + 1):
        coeffs: dict[tuple[int, ...], int] = {}
        for subset in itertools.combinations(range(d), k):
            key = tuple(1 if i in subset else 0 for i in range(d))
            coeffs[key] = 1
        out.append(MultiSeries(d, order, coeffs))
    return out


def solve_tree_equation(
    d: int, order: int, *, max_order: int | None = None
) -> MultiSeries:
    """Unique series solution with constant term 1 of F = sum_k e_k F^k.

    Fixed-point iteration from F=1: each pass fixes one more total degree,
    so iterates must agree within order+1 passes; failing to stabilize in
    order+2 passes signals a bug and raises NonConvergence.
    """
    if d < 2:
        raise DomainError(f"need d >= 2 colors, got {d}")
    _check_order(d, order, max_order)
    elementary = elementary_symmetric_series(d, order)
    current = MultiSeries.constant(d, order, 1)
    for _ in range(order + 2):
        nxt = elementary[0]
        power = MultiSeries.constant(d, order, 1)
        for k in range(1, d + 1):
            power = power * current
            nxt = nxt + elementary[k] * power
        if nxt == current:
            return current
        current = nxt
    raise NonConvergence(
        f"fixed point did not stabilize within {order + 2} passes (d={d}, order={order})"
    )


def closed_form_series(
    d: int, n: int, order: int, *, max_order: int | None = None
) -> MultiSeries:
    """Level-n series assembled directly from the closed-form counts."""
    if n < 1:
        raise DomainError(f"level n must be >= 1, got {n}")
    _check_order(d, order, max_order)
    coeffs: dict[tuple[int, ...], int] = {}
    for total in range(order + 1):
        for p in profiles_with_total(d, total):
            coeffs[p] = closed_form_count(ColorProfile(d, p), n)
    return MultiSeries(d, order, coeffs)


def _collect_mismatches(
    lhs: MultiSeries, rhs: MultiSeries, context: dict
) -> Iterable[Mismatch]:
    keys = sorted(set(lhs.coeffs) | set(rhs.coeffs), key=lambda p: (sum(p), p))
    for p in keys:
        a, b = lhs.coefficient(p), rhs.coefficient(p)
        if a != b:
            yield Mismatch({**context, "p": list(p)}, a, b)


def verify_linear_recursion(
    d: int, n_max: int, order: int, *, max_order: int | None = None
) -> VerificationReport:
    """Check F_{n+1} = F_n + sum_{k=1..d} e_k F_{n+k} for n = 0..n_max,
    with every F_m built from the closed form (F_0 = 1)."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    _check_order(d, order, max_order)
    elementary = elementary_symmetric_series(d, order)
    levels = {0: MultiSeries.constant(d, order, 1)}
    for m in range(1, n_max + d + 1):
        levels[m] = closed_form_series(d, m, order, max_order=max_order)
    report = VerificationReport("recursion", d, {"n_max": n_max, "order": order})
    for n in range(n_max + 1):
        rhs = levels[n]
        for k in range(1, d + 1):
            rhs = rhs + elementary[k] * levels[n + k]
        report.failures.extend(_collect_mismatches(levels[n + 1], rhs, {"n": n}))
    return report


def verify_geometric(
    d: int, n_max: int, order: int, *, max_order: int | None = None
) -> VerificationReport:
    """Check that the level-n series is the n-th truncated power of the
    functional-equation solution, for n = 1..n_max."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    _check_order(d, order, max_order)
    base = solve_tree_equation(d, order, max_order=max_order)
    power = base
    report = VerificationReport("geometric", d, {"n_max": n_max, "order": order})
    for n in range(1, n_max + 1):
        direct = closed_form_series(d, n, order, max_order=max_order)
        report.failures.extend(_collect_mismatches(direct, power, {"n": n}))
        power = power * base
    return report


def verify_convolution(
    d: int, n: int, m: int, order: int, *, max_order: int | None = None
) -> VerificationReport:
    """Check the convolution identity: the product of the level-n and
    level-m series equals the level-(n+m) series on all profiles with
    total <= order."""
    if n < 1 or m < 1:
        raise DomainError(f"levels must be >= 1, got n={n}, m={m}")
    _check_order(d, order, max_order)
    product = closed_form_series(d, n, order, max_order=max_order) * closed_form_series(
        d, m, order, max_order=max_order
    )
    direct = closed_form_series(d, n + m, order, max_order=max_order)
    report = VerificationReport("convolution", d, {"n": n, "m": m, "order": order})
    report.failures.extend(_collect_mismatches(product, direct, {}))
    return report
