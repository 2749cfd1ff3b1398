#!/usr/bin/env python3
"""Independent reference values for the C++ test suite.

Each value is computed here from first principles (closed forms, direct
arithmetic, plain-Python re-implementations) and written to expected.json
alongside the noiseless fitting dataset. The C++ tests read these files and
never compute their own expectations for these cases.

    make_oracles.py           regenerate the files
    make_oracles.py --check   exit 1 if the files on disk are out of date
"""

import json
import math
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent

SHARES = [0.13, 0.20, 0.32, 0.25, 0.10]
LIFETIMES = [math.inf, 363.0, 74.0, 17.0, 2.0]


def airborne_fraction(years):
    """Fraction of a one-off pulse still airborne `years` after the pulse."""
    return sum(a * (1.0 if math.isinf(tau) else math.exp(-years / tau)) for a, tau in zip(SHARES, LIFETIMES))


def lagged_warming(cs, efold, years):
    """Warming after `years` steps toward a fixed equilibrium `cs` from zero."""
    return cs * (1.0 - (1.0 - 1.0 / efold) ** years)


def through_origin_slope(xs, ys):
    return sum(x * y for x, y in zip(xs, ys)) / sum(x * x for x in xs)


def toy_world_growth():
    """Three countries with constant populations: world per-capita growth and
    the output-weighted mean of national growth rates."""
    pop = [10.0, 50.0, 200.0]
    inc_prev = [30000.0, 8000.0, 1500.0]
    inc_now = [30600.0, 8400.0, 1590.0]
    gdp_prev = [p * y for p, y in zip(pop, inc_prev)]
    g = [b / a - 1.0 for a, b in zip(inc_prev, inc_now)]
    weighted = sum(w * r for w, r in zip(gdp_prev, g)) / sum(gdp_prev)
    world_prev = sum(gdp_prev) / sum(pop)
    world_now = sum(p * y for p, y in zip(pop, inc_now)) / sum(pop)
    return {
        "population_millions": pop,
        "income_previous": inc_prev,
        "income_now": inc_now,
        "national_growth": g,
        "output_weighted_growth": weighted,
        "world_average_growth": world_now / world_prev - 1.0,
    }


def toy_convergence(horizon=100, years=121):
    """Two countries: the poor one grows at 1%, the rich one at 2%.

    Growth rates blend linearly to the output-weighted world rate over the
    horizon, then incomes are rescaled so world output matches the input."""
    pop = [[50.0] * years, [20.0 * (1.004 ** t) for t in range(years)]]
    inc = [[1000.0 * 1.01 ** t for t in range(years)], [30000.0 * 1.02 ** t for t in range(years)]]
    gdp = [[p * 1e6 * y for p, y in zip(pop[c], inc[c])] for c in range(2)]
    world = [gdp[0][t] + gdp[1][t] for t in range(years)]
    out = [[inc[0][0]], [inc[1][0]]]
    for t in range(1, years):
        own = [inc[c][t] / inc[c][t - 1] - 1.0 for c in range(2)]
        world_rate = sum(own[c] * gdp[c][t - 1] for c in range(2)) / world[t - 1]
        blend = min(1.0, t / horizon)
        nxt = [out[c][t - 1] * (1.0 + (1.0 - blend) * own[c] + blend * world_rate) for c in range(2)]
        implied = sum(pop[c][t] * 1e6 * nxt[c] for c in range(2))
        for c in range(2):
            out[c].append(nxt[c] * world[t] / implied)
    late = years - 1
    return {
        "horizon": horizon,
        "years": years,
        "poor_original_late_growth": inc[0][late] / inc[0][late - 1] - 1.0,
        "poor_converged_late_growth": out[0][late] / out[0][late - 1] - 1.0,
        "poor_converged_income_last": out[0][late],
        "rich_converged_income_last": out[1][late],
    }


def noiseless_quadratic():
    ts = [0.5 * k for k in range(1, 11)]
    return ts, [-0.17 * t * t for t in ts]


def build():
    ts, ys = noiseless_quadratic()
    two_x, two_y = [1.0, 2.0], [-0.8, -1.5]
    return {
        "airborne_fraction_1000y": airborne_fraction(1000.0),
        "airborne_fraction_10000y": airborne_fraction(10000.0),
        "warming_after_40y_cs3_efold40": lagged_warming(3.0, 40.0, 40),
        "linear_two_points": {"warming": two_x, "impact_pct": two_y,
                              "slope": through_origin_slope(two_x, two_y)},
        "vulnerability_ratio_eps_m036_income_4x": 4.0 ** 0.36,
        "toy_world_growth": toy_world_growth(),
        "toy_convergence": toy_convergence(),
        "ramsey_10y_discount_r0045": 1.045 ** -10,
        "noiseless_quadratic": {"coefficient": -0.17, "warming": ts, "impact_pct": ys},
    }


def render():
    expected = json.dumps(build(), indent=2, sort_keys=True) + "\n"
    ts, ys = noiseless_quadratic()
    data = "warming_c,impact_pct_gdp\n" + "".join(f"{t!r},{y!r}\n" for t, y in zip(ts, ys))
    return {"expected.json": expected, "quadratic_noiseless.csv": data}


def main():
    files = render()
    if "--check" in sys.argv[1:]:
        stale = [name for name, text in files.items()
                 if not (HERE / name).exists() or (HERE / name).read_text() != text]
        if stale:
            print("out of date: " + ", ".join(stale))
            return 1
        print("oracle files are current")
        return 0
    for name, text in files.items():
        (HERE / name).write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
