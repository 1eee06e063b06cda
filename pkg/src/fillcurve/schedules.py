"""Reduction schedules for both constructions, as exact rationals.

A triangle-chain schedule fixes, level by level, the fraction ``r_k`` of
area removed from every triangle; the partial products
``p_n = (1-r_1)...(1-r_n)`` are the total chain areas and decrease to the
target ``beta``.  The square-chain schedule plays the same role with side
reduction coefficients ``a_k`` whose squared product tends to ``beta``.

The default generating rule keeps everything rational and makes the
residual halve exactly each level:

    p_n = beta + (1 - beta) / 2^n        (ratios derived, r_n -> 0)
    q_n = alpha + (1 - alpha) / 2^n      (coefficients a_n = q_n / q_{n-1})

Custom ratio/coefficient lists are accepted as long as every term lies in
]0, 1[ and the final partial product sits within a declared tolerance of
the target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rational import parse_rational, rational_str


class ScheduleError(ValueError):
    """Invalid schedule parameter or exhausted schedule horizon."""


def _check_open_unit(value: Fraction, name: str) -> Fraction:
    value = Fraction(value)
    if not 0 < value < 1:
        raise ScheduleError(f"{name} must lie strictly between 0 and 1, got {value}")
    return value


@dataclass(frozen=True)
class KnoppSchedule:
    """Removal ratios r_1..r_n with their exact partial products.

    ``partial_products[0] == 1`` and ``partial_products[n]`` equals the
    telescoped product of ``(1 - r_k)`` for k <= n, exactly.
    """

    beta: Fraction
    partial_products: tuple[Fraction, ...]
    ratios: tuple[Fraction, ...]
    default_rule: bool = True

    @property
    def horizon(self) -> int:
        return len(self.ratios)

    def partial_product(self, n: int) -> Fraction:
        if not 0 <= n <= self.horizon:
            raise ScheduleError(f"level {n} outside schedule horizon {self.horizon}")
        return self.partial_products[n]

    def ratio(self, k: int) -> Fraction:
        """r_k, 1-based."""
        if not 1 <= k <= self.horizon:
            raise ScheduleError(f"ratio index {k} outside horizon {self.horizon}")
        return self.ratios[k - 1]

    def extended(self, horizon: int) -> "KnoppSchedule":
        """New schedule with at least the requested horizon (default rule only)."""
        if horizon <= self.horizon:
            return self
        if not self.default_rule:
            raise ScheduleError("cannot extend a custom ratio list")
        return knopp_schedule(self.beta, horizon)

    def to_json_dict(self) -> dict:
        return {
            "beta": rational_str(self.beta),
            "p": [rational_str(v) for v in self.partial_products],
            "r": [rational_str(v) for v in self.ratios],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "KnoppSchedule":
        beta = parse_rational(data["beta"])
        ratios = [parse_rational(v) for v in data["r"]]
        products = [parse_rational(v) for v in data["p"]]
        sched = from_ratios(beta, ratios, tolerance=abs(products[-1] - beta))
        if list(sched.partial_products) != products:
            raise ScheduleError("partial products inconsistent with ratios")
        return sched


def knopp_schedule(beta: Fraction, n_max: int) -> KnoppSchedule:
    """Default-rule schedule: p_n = beta + (1-beta)/2^n, ratios derived."""
    beta = _check_open_unit(beta, "beta")
    if n_max < 0:
        raise ScheduleError("horizon must be non-negative")
    products = [Fraction(1)]
    ratios = []
    for n in range(1, n_max + 1):
        p_n = beta + (1 - beta) / 2**n
        ratios.append(1 - p_n / products[-1])
        products.append(p_n)
    return KnoppSchedule(beta, tuple(products), tuple(ratios))


def from_ratios(beta: Fraction, ratios, tolerance: Fraction) -> KnoppSchedule:
    """Wrap a user-supplied ratio list, validating every r_k in ]0,1[ and
    that the final partial product lies within `tolerance` of beta."""
    beta = _check_open_unit(beta, "beta")
    ratios = tuple(Fraction(r) for r in ratios)
    for k, r in enumerate(ratios, start=1):
        if not 0 < r < 1:
            raise ScheduleError(f"ratio r_{k} = {r} outside ]0,1[")
    products = [Fraction(1)]
    for r in ratios:
        products.append(products[-1] * (1 - r))
    if ratios and abs(products[-1] - beta) > tolerance:
        raise ScheduleError(
            f"partial product {products[-1]} strays from beta={beta} by more "
            f"than the declared tolerance {tolerance}")
    return KnoppSchedule(beta, tuple(products), ratios, default_rule=False)


def first_small_index(schedule: KnoppSchedule, bound: Fraction) -> int:
    """Smallest 1-based n0 such that every listed ratio r_n with n >= n0 is
    strictly below `bound`."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ScheduleError("bound must be positive")
    n0 = 1
    for k in range(schedule.horizon, 0, -1):
        if schedule.ratio(k) >= bound:
            n0 = k + 1
            break
    if n0 > schedule.horizon:
        raise ScheduleError(
            f"no ratio below {bound} within horizon {schedule.horizon}")
    return n0


@dataclass(frozen=True)
class LanceThomasSchedule:
    """Side reduction coefficients a_1..a_n with partial products q_n.

    ``beta`` is derived as alpha squared so that the chain areas q_n^2
    decrease to it exactly.
    """

    alpha: Fraction
    partial_products: tuple[Fraction, ...]
    coefficients: tuple[Fraction, ...]
    default_rule: bool = True

    @property
    def beta(self) -> Fraction:
        return self.alpha * self.alpha

    @property
    def horizon(self) -> int:
        return len(self.coefficients)

    def partial_product(self, n: int) -> Fraction:
        if not 0 <= n <= self.horizon:
            raise ScheduleError(f"generation {n} outside horizon {self.horizon}")
        return self.partial_products[n]

    def coefficient(self, k: int) -> Fraction:
        """a_k, 1-based."""
        if not 1 <= k <= self.horizon:
            raise ScheduleError(f"coefficient index {k} outside horizon {self.horizon}")
        return self.coefficients[k - 1]

    def side(self, n: int) -> Fraction:
        """Cell side length after n generations: (a_1/2)...(a_n/2) = q_n/2^n."""
        return self.partial_product(n) / 2**n

    def extended(self, horizon: int) -> "LanceThomasSchedule":
        if horizon <= self.horizon:
            return self
        if not self.default_rule:
            raise ScheduleError("cannot extend a custom coefficient list")
        return lance_thomas_schedule(self.alpha, horizon)

    def to_json_dict(self) -> dict:
        return {
            "alpha": rational_str(self.alpha),
            "beta": rational_str(self.beta),
            "q": [rational_str(v) for v in self.partial_products],
            "a": [rational_str(v) for v in self.coefficients],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LanceThomasSchedule":
        alpha = parse_rational(data["alpha"])
        coeffs = [parse_rational(v) for v in data["a"]]
        products = [parse_rational(v) for v in data["q"]]
        sched = from_coefficients(alpha, coeffs,
                                  tolerance=abs(products[-1] - alpha))
        if list(sched.partial_products) != products:
            raise ScheduleError("partial products inconsistent with coefficients")
        return sched


def lance_thomas_schedule(alpha: Fraction, n_max: int) -> LanceThomasSchedule:
    """Default-rule schedule: q_n = alpha + (1-alpha)/2^n."""
    alpha = _check_open_unit(alpha, "alpha")
    if n_max < 0:
        raise ScheduleError("horizon must be non-negative")
    products = [Fraction(1)]
    coeffs = []
    for n in range(1, n_max + 1):
        q_n = alpha + (1 - alpha) / 2**n
        coeffs.append(q_n / products[-1])
        products.append(q_n)
    return LanceThomasSchedule(alpha, tuple(products), tuple(coeffs))


def from_coefficients(alpha: Fraction, coefficients,
                      tolerance: Fraction) -> LanceThomasSchedule:
    """Wrap a user-supplied coefficient list (same validation contract as
    `from_ratios`, with the tail checked against alpha)."""
    alpha = _check_open_unit(alpha, "alpha")
    coefficients = tuple(Fraction(a) for a in coefficients)
    for k, a in enumerate(coefficients, start=1):
        if not 0 < a < 1:
            raise ScheduleError(f"coefficient a_{k} = {a} outside ]0,1[")
    products = [Fraction(1)]
    for a in coefficients:
        products.append(products[-1] * a)
    if coefficients and abs(products[-1] - alpha) > tolerance:
        raise ScheduleError(
            f"partial product {products[-1]} strays from alpha={alpha} by more "
            f"than the declared tolerance {tolerance}")
    return LanceThomasSchedule(alpha, tuple(products), coefficients,
                               default_rule=False)
