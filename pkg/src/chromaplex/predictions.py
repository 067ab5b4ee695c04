"""Closed-form targets for the Monte Carlo harness.

Quantities whose finite-p law is exactly a harmonic sum are evaluated as
exact rationals; limit statements keep their leading-order form and carry
the sharp next-order error term so the harness can widen tolerances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .config_digraph import model_constants, quartic_constants
from .models import BaseGraph

try:
    from gmpy2 import mpq

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _HAVE_GMPY2 = False

_BLOCK = 256

EXACT = "exact-finite-p"
ASYMPTOTIC = "leading-asymptotic"


def _fraction_from_coprime(num: int, den: int) -> Fraction:
    """Fraction without the constructor's gcd pass; requires den > 0 and
    gcd(num, den) == 1."""
    f = Fraction.__new__(Fraction)
    f._numerator = num
    f._denominator = den
    return f


try:
    _probe = _fraction_from_coprime(3, 2)
    if _probe != Fraction(3, 2) or _probe + Fraction(1, 2) != 2:
        raise RuntimeError
    del _probe
except Exception:  # pragma: no cover - slots changed upstream
    _fraction_from_coprime = Fraction  # type: ignore[assignment]


def _harmonic_block(lo: int, hi: int) -> tuple[int, int]:
    num, den = 0, 1
    for j in range(lo, hi):
        num = num * j + den
        den *= j
    return num, den


def _variance_block(lo: int, hi: int) -> tuple[int, int]:
    num, den = 0, 1
    for j in range(lo, hi):
        jj = j * j
        num = num * jj + (j - 1) * den
        den *= jj
    return num, den


def _range_sum(lo: int, hi: int, block):
    """Balanced tree sum of block partial sums over lo <= j < hi; gmpy2
    rationals canonicalize the merges when available."""
    if hi - lo <= _BLOCK:
        num, den = block(lo, hi)
        return mpq(num, den) if _HAVE_GMPY2 else Fraction(num, den)
    mid = (lo + hi) // 2
    return _range_sum(lo, mid, block) + _range_sum(mid, hi, block)


def _to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    return _fraction_from_coprime(int(q.numerator), int(q.denominator))


def harmonic(n: int) -> Fraction:
    """Exact H_n = sum_{j<=n} 1/j."""
    if n < 1:
        raise ValueError("harmonic numbers start at n = 1")
    return _to_fraction(_range_sum(1, n + 1, _harmonic_block))


def harmonic_var(n: int) -> Fraction:
    """Exact sum_{j<=n} (j-1)/j^2, the cycle-count variance of a uniform
    permutation of size n."""
    if n < 1:
        raise ValueError("needs n >= 1")
    return _to_fraction(_range_sum(1, n + 1, _variance_block))


@dataclass(frozen=True)
class Prediction:
    name: str
    model: str
    observable: str
    D: Optional[int]
    p: Optional[int]
    value: Union[Fraction, float]
    kind: str          # EXACT or ASYMPTOTIC
    error_order: float  # sharp next-order term at this p; 0.0 when unstated
    anchor: str        # formula this value evaluates

    def as_float(self) -> float:
        return float(self.value)


def _degree_prefactor(D: int) -> Fraction:
    fact = math.factorial(D - 1)
    return Fraction(fact, 2)


def _degree_from_b2(D: int, half_order: int, b2_mean) -> Union[Fraction, float]:
    """Degree formula (D-1)!/2 * (D(D-1)/2 * P + D - b2) evaluated at the
    predicted mean face count; P is half the vertex count of the graph."""
    lead = Fraction(D * (D - 1), 2) * half_order + D
    if isinstance(b2_mean, Fraction):
        return _degree_prefactor(D) * (lead - b2_mean)
    return float(_degree_prefactor(D)) * (float(lead) - b2_mean)


def predict(
    model: str,
    observable: str,
    D: Optional[int] = None,
    p: Optional[int] = None,
    base: Optional[BaseGraph] = None,
) -> Prediction:
    """Closed-form prediction for one observable of one model."""
    if model == "uniform":
        return _predict_uniform(observable, D, p)
    if model == "quartic":
        return _predict_quartic(observable, D, p)
    if model == "ribbon":
        return _predict_ribbon(observable, p)
    if model == "uncolored":
        return _predict_uncolored(observable, D, p, base)
    raise ValueError(f"unknown model {model!r}")


def _mk(model, observable, D, p, value, kind, error_order, anchor) -> Prediction:
    return Prediction(
        name=f"{model}.{observable}",
        model=model,
        observable=observable,
        D=D,
        p=p,
        value=value,
        kind=kind,
        error_order=error_order,
        anchor=anchor,
    )


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _predict_uniform(obs: str, D: int, p: int) -> Prediction:
    _need(D is not None and D >= 1 and p is not None and p >= 1, "need D >= 1, p >= 1")
    if obs == "connected":
        if D == 1:
            return _mk("uniform", obs, D, p, Fraction(1, p), EXACT, 0.0, "1/p")
        return _mk(
            "uniform", obs, D, p,
            1 - Fraction(1, p ** (D - 1)),
            ASYMPTOTIC, p ** (-2 * (D - 1)), "1 - 1/p^(D-1)",
        )
    if obs == "components":
        if D == 1:
            return _mk("uniform", obs, D, p, harmonic(p), EXACT, 0.0, "H_p")
        return _mk(
            "uniform", obs, D, p, 1.0, ASYMPTOTIC, p ** (-(D - 1)), "1 + O(1/p^(D-1))"
        )
    if obs == "bD":
        _need(D >= 3, "point-count limit needs D >= 3")
        return _mk(
            "uniform", obs, D, p, float(D + 1), ASYMPTOTIC, p ** (-(D - 2)),
            "D+1 + O(1/p^(D-2))",
        )
    if obs == "b2":
        return _mk(
            "uniform", obs, D, p,
            Fraction(D * (D + 1), 2) * harmonic(p),
            EXACT, 0.0, "D(D+1)/2 * H_p",
        )
    if obs == "b2_var":
        return _mk(
            "uniform", obs, D, p,
            D * (D + 1) / 2 * math.log(p),
            ASYMPTOTIC, 0.0, "D(D+1)/2 * ln p",
        )
    if obs == "jacket_faces":
        return _mk(
            "uniform", obs, D, p, (D + 1) * harmonic(p), EXACT, 0.0, "(D+1) * H_p"
        )
    if obs == "gurau_degree":
        _need(D >= 2, "degree needs D >= 2")
        b2 = Fraction(D * (D + 1), 2) * harmonic(p)
        return _mk(
            "uniform", obs, D, p, _degree_from_b2(D, p, b2), EXACT, 0.0,
            "(D-1)!/2 * (D(D-1)/2*p + D - E[b2])",
        )
    raise ValueError(f"unsupported uniform observable {obs!r}")


def _predict_quartic(obs: str, D: int, p: int) -> Prediction:
    _need(D is not None and D >= 2 and p is not None and p >= 1, "need D >= 2, p >= 1")
    if obs == "connected":
        return _mk(
            "quartic", obs, D, p,
            1 - Fraction(1, 2 * p - 1) if p > 1 else Fraction(1),
            ASYMPTOTIC, p ** -2.0, "1 - 1/(2p-1)",
        )
    if obs == "components":
        return _mk("quartic", obs, D, p, 1.0, ASYMPTOTIC, 1.0 / p, "1 + O(1/p)")
    if obs == "b2":
        return _mk(
            "quartic", obs, D, p,
            (D - 1) ** 2 * p + D * harmonic(2 * p),
            EXACT, 0.0, "(D-1)^2 p + D * H_2p",
        )
    if obs == "b2_var":
        return _mk(
            "quartic", obs, D, p,
            40.0 * math.log(2 * p) ** 3,
            ASYMPTOTIC, 0.0, "upper bound 40 (ln 2p)^3",
        )
    if obs == "k_of_S":
        _need(D >= 3, "giant-component regime needs D >= 3")
        return _mk(
            "quartic", obs, D, p,
            1.0 + math.log(D / (D - 1)),
            ASYMPTOTIC, 0.0, "1 + ln(D/(D-1))",
        )
    if obs == "bD":
        if D == 2:
            return _mk(
                "quartic", obs, D, p,
                p + 2 * harmonic(2 * p),
                EXACT, 0.0, "p + 2 H_2p",
            )
        return _mk(
            "quartic", obs, D, p,
            p + D * (1.0 + math.log(D / (D - 1))),
            ASYMPTOTIC, 0.0, "p + D(1 + ln(D/(D-1)))",
        )
    if obs in ("C1", "C2", "C3", "C4"):
        k = int(obs[1:])
        lam = quartic_constants(D).lambda_k(k)
        return _mk("quartic", obs, D, p, lam, ASYMPTOTIC, 0.0, f"1/({k} D^{k})")
    if obs == "jacket_faces":
        value = Fraction(2 * p * (D - 1) ** 2, D) + 2 * harmonic(2 * p)
        return _mk(
            "quartic", obs, D, p, value, EXACT, 0.0,
            "2p(D-1)^2/D + 2 H_2p",
        )
    if obs == "gurau_degree":
        b2 = (D - 1) ** 2 * p + D * harmonic(2 * p)
        return _mk(
            "quartic", obs, D, p, _degree_from_b2(D, 2 * p, b2), EXACT, 0.0,
            "(D-1)!/2 * (D(D-1)/2*2p + D - E[b2])",
        )
    raise ValueError(f"unsupported quartic observable {obs!r}")


def _predict_ribbon(obs: str, p: int) -> Prediction:
    _need(p is not None and p >= 1, "need p >= 1")
    if obs == "connected":
        return _mk(
            "ribbon", obs, None, p,
            1 - Fraction(1, 2 * p - 1) if p > 1 else Fraction(1),
            ASYMPTOTIC, p ** -2.0, "1 - 1/(2p-1)",
        )
    if obs == "genus":
        return _mk(
            "ribbon", obs, None, p,
            1 + Fraction(p, 2) - harmonic(2 * p),
            EXACT, 0.0, "1 + p/2 - H_2p",
        )
    raise ValueError(f"unsupported ribbon observable {obs!r}")


def _predict_uncolored(obs: str, D, p: int, base: BaseGraph) -> Prediction:
    _need(base is not None, "uncolored predictions need a base graph")
    _need(p is not None and p >= 1, "need p >= 1")
    _need(D is None or D == base.D, "D disagrees with the base graph")
    D, t = base.D, base.t
    if obs == "connected":
        return _mk(
            "uncolored", obs, D, p,
            1 - Fraction(p, math.comb(t * p, t)),
            ASYMPTOTIC, float(p) ** (-2.0 * (t - 1)), "1 - p/C(tp, t)",
        )
    if obs == "components":
        return _mk(
            "uncolored", obs, D, p, 1.0, ASYMPTOTIC, float(p) ** (-(t - 1.0)),
            "1 + O(1/p^(t-1))",
        )
    constants = model_constants(base)
    if obs == "k_of_S":
        _need(D >= 3, "giant-component regime needs D >= 3")
        _need(constants.supercritical, "subcritical base: d0 <= 1")
        return _mk(
            "uncolored", obs, D, p, 1.0 + constants.c_G, ASYMPTOTIC, 0.0,
            "1 + c_G (cycle sum from k=2)",
        )
    if obs == "bD":
        _need(D >= 3, "point-count regime needs D >= 3")
        _need(constants.supercritical, "subcritical base: d0 <= 1")
        return _mk(
            "uncolored", obs, D, p, p + D * (1.0 + constants.c_G), ASYMPTOTIC, 0.0,
            "p + D(1 + c_G)",
        )
    raise ValueError(f"unsupported uncolored observable {obs!r}")


_TABLE_OBSERVABLES = {
    "uniform": ("connected", "components", "b2", "b2_var", "jacket_faces",
                "gurau_degree", "bD"),
    "quartic": ("connected", "components", "b2", "b2_var", "jacket_faces",
                "gurau_degree", "k_of_S", "bD", "C1", "C2"),
    "ribbon": ("connected", "genus"),
    "uncolored": ("connected", "components", "k_of_S", "bD"),
}


def prediction_table(
    model: str,
    D: Optional[int] = None,
    p: Optional[int] = None,
    base: Optional[BaseGraph] = None,
) -> list[Prediction]:
    """All predictions available for a model at these parameters."""
    rows = []
    for obs in _TABLE_OBSERVABLES[model]:
        try:
            rows.append(predict(model, obs, D=D, p=p, base=base))
        except ValueError:
            continue  # observable not defined at these parameters
    return rows


def format_value(value: Union[Fraction, float]) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    return repr(value)


def predictions_csv(rows: list[Prediction]) -> str:
    lines = ["name,model,D,p,value,kind,anchor"]
    for r in rows:
        D = "" if r.D is None else r.D
        p = "" if r.p is None else r.p
        lines.append(f"{r.name},{r.model},{D},{p},{format_value(r.value)},{r.kind},{r.anchor}")
    return "\n".join(lines) + "\n"
