"""Built-in test functions covering smooth, polynomial, Lipschitz, and
bounded-variation-derivative regimes."""

import math

import numpy as np

from .operator import ScalarFunction


def constant(c: float) -> ScalarFunction:
    return ScalarFunction(
        value=lambda x: np.full_like(np.asarray(x, dtype=float), c),
        d1=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        d2=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        name=f"const{c:g}",
    )


def monomial(i: int) -> ScalarFunction:
    if i == 0:
        return constant(1.0)
    return ScalarFunction(
        value=lambda x, i=i: np.asarray(x, dtype=float) ** i,
        d1=lambda x, i=i: i * np.asarray(x, dtype=float) ** (i - 1),
        d2=(lambda x, i=i: i * (i - 1) * np.asarray(x, dtype=float) ** (i - 2))
        if i >= 2 else (lambda x: np.zeros_like(np.asarray(x, dtype=float))),
        name=f"e{i}",
    )


def polynomial(coeffs) -> ScalarFunction:
    """Polynomial sum c_j x^j from ascending coefficients."""
    c = np.asarray(coeffs, dtype=float)
    d1c = c[1:] * np.arange(1, len(c))
    d2c = d1c[1:] * np.arange(1, len(d1c))

    def _eval(cs, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for cj in cs[::-1]:
            out = out * x + cj
        return out

    return ScalarFunction(
        value=lambda x: _eval(c, x),
        d1=lambda x: _eval(d1c, x) if len(d1c) else np.zeros_like(np.asarray(x, dtype=float)),
        d2=lambda x: _eval(d2c, x) if len(d2c) else np.zeros_like(np.asarray(x, dtype=float)),
        name="poly" + ",".join(f"{v:g}" for v in c),
    )


def _x2_sin_scaled(w: float, name: str) -> ScalarFunction:
    # f = x^2 sin(w x);  f' = 2x sin + w x^2 cos;  f'' = 2 sin + 4wx cos - w^2 x^2 sin
    def val(x):
        x = np.asarray(x, dtype=float)
        return x * x * np.sin(w * x)

    def d1(x):
        x = np.asarray(x, dtype=float)
        return 2 * x * np.sin(w * x) + w * x * x * np.cos(w * x)

    def d2(x):
        x = np.asarray(x, dtype=float)
        return 2 * np.sin(w * x) + 4 * w * x * np.cos(w * x) - w * w * x * x * np.sin(w * x)

    return ScalarFunction(value=val, d1=d1, d2=d2, name=name)


def _abs_minus_half() -> ScalarFunction:
    def val(x):
        return np.abs(np.asarray(x, dtype=float) - 0.5)

    def d1(x):
        return np.sign(np.asarray(x, dtype=float) - 0.5)

    return ScalarFunction(
        value=val, d1=d1,
        d1_left_at=lambda x: -1.0 if x <= 0.5 else 1.0,
        d1_right_at=lambda x: -1.0 if x < 0.5 else 1.0,
        name="abs_half",
    )


def _x_pow_3_2() -> ScalarFunction:
    def val(x):
        x = np.asarray(x, dtype=float)
        return x * np.sqrt(x)

    def d1(x):
        x = np.asarray(x, dtype=float)
        return 1.5 * np.sqrt(x)

    return ScalarFunction(value=val, d1=d1, name="x_3_2")


#: Corpus keyed by CLI name.
CORPUS = {
    "one": constant(1.0),
    "e1": monomial(1),
    "e2": monomial(2),
    "e3": monomial(3),
    "e4": monomial(4),
    "poly7": polynomial([0, 1, 0, 0, 0, 10, 0, 1]),          # x^7 + 10 x^5 + x
    "x2_sin_2x_over_pi": _x2_sin_scaled(2.0 / math.pi, "x2_sin_2x_over_pi"),
    "x2_sin_2pi_x": _x2_sin_scaled(2.0 * math.pi, "x2_sin_2pi_x"),
    "abs_half": _abs_minus_half(),
    "x_3_2": _x_pow_3_2(),
}

#: Standard five-function sweep for the theorem-bound audits.
SWEEP_FIVE = ("e1", "e2", "poly7", "x2_sin_2x_over_pi", "abs_half")

#: Polynomial members of the corpus, by degree.
POLYNOMIALS = ("one", "e1", "e2", "e3", "e4", "poly7")


def by_name(name: str) -> ScalarFunction:
    """Look up a corpus function, or build one from "poly:c0,c1,...". """
    if name in CORPUS:
        return CORPUS[name]
    if name.startswith("poly:"):
        try:
            coeffs = [float(v) for v in name[5:].split(",")]
        except ValueError:
            raise KeyError(f"bad polynomial spec {name!r}") from None
        return polynomial(coeffs)
    raise KeyError(f"unknown function {name!r}; known: {', '.join(sorted(CORPUS))} or poly:c0,c1,...")
