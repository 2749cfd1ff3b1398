#!/usr/bin/env python3
"""Generate the synthetic scenarios, historical emissions and meta-analysis
points shipped in data/synthetic.

The output is deterministic. Numbers are written in the shortest form that
round-trips, choosing between fixed and scientific notation the same way the
C++ writer does, so loading and re-serialising a file reproduces it byte for
byte.

Usage: make_synthetic_data.py [OUT_DIR]   (default: data/synthetic)
"""

import math
import pathlib
import random
import sys
from decimal import Decimal

START, END = 1950, 2300
BASE_YEAR = 2010
HIST_FIRST, HIST_LAST = 1960, 2015

# id, name, population 2010 (millions), income 2010 (USD-2005 per person),
# emissions 2010 (MtC), population growth 2010, growth offset
COUNTRIES = [
    ("BDI", "Burundi", 9.0, 150.0, 0.05, 0.030, -0.004),
    ("BGD", "Bangladesh", 150.0, 550.0, 15.0, 0.012, 0.004),
    ("BRA", "Brazil", 195.0, 5000.0, 115.0, 0.009, 0.0),
    ("CHN", "China", 1340.0, 4000.0, 2300.0, 0.005, 0.012),
    ("DEU", "Germany", 82.0, 35000.0, 220.0, -0.001, 0.0),
    ("FRA", "France", 65.0, 34000.0, 100.0, 0.005, -0.001),
    ("GBR", "United Kingdom", 62.0, 37000.0, 140.0, 0.006, 0.0),
    ("IND", "India", 1230.0, 1100.0, 480.0, 0.013, 0.008),
    ("IRN", "Iran", 74.0, 3000.0, 160.0, 0.011, -0.002),
    ("ITA", "Italy", 60.0, 30000.0, 115.0, 0.002, -0.004),
    ("JPN", "Japan", 128.0, 36000.0, 330.0, -0.002, -0.003),
    ("KAZ", "Kazakhstan", 16.0, 4500.0, 65.0, 0.012, 0.002),
    ("MEX", "Mexico", 114.0, 8000.0, 120.0, 0.012, -0.001),
    ("NGA", "Nigeria", 160.0, 1100.0, 25.0, 0.026, 0.0),
    ("ROW", "Rest of world", 2636.0, 8500.0, 3515.0, 0.012, 0.0),
    ("RUS", "Russia", 143.0, 6500.0, 450.0, -0.002, 0.0),
    ("SAU", "Saudi Arabia", 28.0, 13000.0, 140.0, 0.022, -0.004),
    ("UKR", "Ukraine", 46.0, 2200.0, 80.0, -0.005, -0.002),
    ("USA", "United States", 309.0, 42000.0, 1500.0, 0.008, 0.0),
    ("ZAF", "South Africa", 51.0, 5600.0, 130.0, 0.010, -0.002),
]

FRONTIER_INCOME = 42000.0
CATCH_UP = 0.004
HISTORICAL_GROWTH = 0.015


def shortest(x):
    """Shortest round-trip text for a float: fixed or scientific, whichever
    is shorter, fixed on a tie."""
    x = float(x)
    if x == 0.0:
        return "0"
    sign, digits, exp = Decimal(repr(x)).as_tuple()
    sig = "".join(map(str, digits))
    stripped = sig.rstrip("0")
    exp += len(sig) - len(stripped)
    sig = stripped
    point = len(sig) + exp  # digits before the decimal point in fixed notation
    sci_exp = point - 1
    sci = sig[0] + ("." + sig[1:] if len(sig) > 1 else "") + "e" + ("-" if sci_exp < 0 else "+") + f"{abs(sci_exp):02d}"
    if point <= 0:
        fixed = "0." + "0" * (-point) + sig
    elif point >= len(sig):
        fixed = sig + "0" * (point - len(sig))
    else:
        fixed = sig[:point] + "." + sig[point:]
    return ("-" if sign else "") + (fixed if len(fixed) <= len(sci) else sci)


def round_sig(x, n=10):
    return float(f"{x:.{n}g}")


def frontier_growth(year, shift):
    return 0.010 + shift + 0.010 * math.exp(-max(0, year - START) / 150.0)


def carbon_decline(year):
    """Annual rate at which carbon intensity falls."""
    return 0.012 + 0.025 / (1.0 + math.exp(-(year - 2070) / 15.0))


def population_path(pop_base, growth_base):
    pop = {BASE_YEAR: pop_base}
    rate = lambda y: growth_base * math.exp(-(y - BASE_YEAR) / 60.0)
    for y in range(BASE_YEAR + 1, END + 1):
        pop[y] = pop[y - 1] * (1.0 + rate(y))
    for y in range(BASE_YEAR, START, -1):
        pop[y - 1] = pop[y] / (1.0 + rate(y))
    return pop


def income_path(inc_base, offset, shift):
    inc = {BASE_YEAR: inc_base}
    frontier = {BASE_YEAR: FRONTIER_INCOME}

    def growth(y, own, front):
        catch = CATCH_UP * math.log(front / own)
        fade = math.exp(-max(0, y - BASE_YEAR) / 120.0)
        return frontier_growth(y, shift) + catch + offset * fade

    for y in range(BASE_YEAR + 1, END + 1):
        g = growth(y, inc[y - 1], frontier[y - 1])
        frontier[y] = frontier[y - 1] * (1.0 + frontier_growth(y, shift))
        inc[y] = inc[y - 1] * (1.0 + g)
    # Before the base year incomes diverged rather than converged.
    for y in range(BASE_YEAR, START, -1):
        inc[y - 1] = inc[y] / (1.0 + HISTORICAL_GROWTH + shift + 2.0 * offset)
    return inc


def intensity_path(ci_base):
    ci = {BASE_YEAR: ci_base}
    for y in range(BASE_YEAR + 1, END + 1):
        ci[y] = ci[y - 1] * (1.0 - carbon_decline(y))
    for y in range(BASE_YEAR, START, -1):
        ci[y - 1] = ci[y] / (1.0 - carbon_decline(y))
    return ci


def build(shift):
    panel = {}
    for cid, _name, pop0, inc0, em0, gpop, offset in COUNTRIES:
        ci0 = em0 * 1e6 / (pop0 * 1e6 * inc0)
        pop = population_path(pop0, gpop)
        inc = income_path(inc0, offset, shift)
        ci = intensity_path(ci0)
        panel[cid] = {
            y: (round_sig(pop[y]), round_sig(inc[y]), round_sig(ci[y])) for y in range(START, END + 1)
        }
    return panel


def write_scenario(out_dir, stem, scenario_id, notes, panel):
    lines = ["country,year,population_millions,income_per_capita_usd2005,carbon_intensity_tc_per_usd"]
    for cid in sorted(panel):
        for y in range(START, END + 1):
            p, i, c = panel[cid][y]
            lines.append(f"{cid},{y},{shortest(p)},{shortest(i)},{shortest(c)}")
    (out_dir / f"{stem}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    toml = [
        f'id = "{scenario_id}"',
        "convergence = false",
        f'notes = "{notes}"',
        'provenance = "synthetic, generated by tools/make_synthetic_data.py"',
        "",
        "[names]",
    ]
    toml += [f'{cid} = "{name}"' for cid, name, *_ in sorted(COUNTRIES)]
    (out_dir / f"{stem}.toml").write_text("\n".join(toml) + "\n", encoding="utf-8")


def write_history(out_dir, panel):
    lines = ["country,year,emissions_mtc"]
    for cid in sorted(panel):
        for y in range(HIST_FIRST, HIST_LAST + 1):
            p, i, c = panel[cid][y]
            lines.append(f"{cid},{y},{shortest(round_sig(p * 1e6 * i * c / 1e6))}")
    (out_dir / "historical_emissions.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_meta(out_dir):
    rng = random.Random(20240101)
    lines = ["warming_c,impact_pct_gdp"]
    for k in range(24):
        t = round(0.5 + 5.0 * k / 23.0, 2)
        central = -0.45 * t - 0.082 * t * t
        lines.append(f"{shortest(t)},{shortest(round(central + rng.gauss(0.0, 0.25), 3))}")
    (out_dir / "meta_synthetic.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    out_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data/synthetic")
    out_dir.mkdir(parents=True, exist_ok=True)
    baseline = build(0.0)
    write_scenario(out_dir, "baseline", "synthetic-baseline",
                   "Synthetic 20-region world calibrated to 2010 GDP and emissions; not a published scenario",
                   baseline)
    write_scenario(out_dir, "high_growth", "synthetic-high-growth",
                   "Synthetic variant with frontier growth 0.5 points above baseline; not a published scenario",
                   build(0.005))
    write_scenario(out_dir, "low_growth", "synthetic-low-growth",
                   "Synthetic variant with frontier growth 0.5 points below baseline; not a published scenario",
                   build(-0.005))
    write_history(out_dir, baseline)
    write_meta(out_dir)


if __name__ == "__main__":
    main()
