#!/usr/bin/env python3
"""Regenerates the synthetic daily-return fixtures in this directory.

The sample is deliberately small but structured: seven benchmark series act as
factors, five competitors load on them with known intercepts, and a 20-asset
universe drives the random-portfolio machinery. 238 weekdays starting
2022-03-07 cover twelve monthly selection dates. Everything is drawn from a
fixed legacy NumPy generator so the committed CSVs are byte-stable.
"""

import datetime as dt
import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
N_DAYS = 238
START = dt.date(2022, 3, 7)  # a Monday


def weekdays(start: dt.date, count: int) -> list[dt.date]:
    out = []
    day = start
    while len(out) < count:
        if day.weekday() < 5:
            out.append(day)
        day += dt.timedelta(days=1)
    return out


def write_csv(name: str, dates: list[dt.date], columns: dict[str, np.ndarray],
              fmt: str = "%.8f") -> None:
    path = os.path.join(HERE, name)
    with open(path, "w") as fh:
        fh.write("date," + ",".join(columns) + "\n")
        for i, day in enumerate(dates):
            cells = ",".join(fmt % columns[c][i] for c in columns)
            fh.write(f"{day.isoformat()},{cells}\n")
    print(f"wrote {path}")


def main() -> None:
    rng = np.random.RandomState(20220307)
    dates = weekdays(START, N_DAYS)

    # --- benchmarks (factors) ---
    mkt = rng.normal(0.0003, 0.011, N_DAYS)
    factors = {
        "mkt": mkt,
        "value": 0.9 * mkt + rng.normal(0.0001, 0.005, N_DAYS),
        "growth": 1.1 * mkt + rng.normal(-0.0001, 0.006, N_DAYS),
        "small": 1.2 * mkt + rng.normal(0.0, 0.008, N_DAYS),
        "large": 0.8 * mkt + rng.normal(0.0001, 0.004, N_DAYS),
        "hiyield": 0.4 * mkt + rng.normal(0.0001, 0.004, N_DAYS),
        "bond": -0.1 * mkt + rng.normal(0.0, 0.003, N_DAYS),
    }
    write_csv("benchmarks.csv", dates, factors)

    # --- risk-free ---
    tbill = np.full(N_DAYS, 0.00008)
    write_csv("risk_free.csv", dates, {"tbill": tbill})

    # --- competitors: known loadings and intercepts ---
    fac = np.column_stack([factors[k] for k in factors]) - tbill[:, None]
    specs = [
        ("alice", [0.8, 0.1, 0.0, 0.0, 0.0, 0.0, 0.2], 0.00080, 0.003),
        ("bravo", [1.0, 0.0, 0.2, 0.0, 0.0, 0.0, 0.0], -0.00050, 0.004),
        ("carol", [0.5, 0.0, 0.0, 0.3, 0.0, 0.1, 0.0], 0.00010, 0.005),
        ("delta", [1.2, 0.0, 0.0, 0.0, 0.3, 0.0, 0.0], 0.00000, 0.006),
        ("echo", [0.3, 0.2, 0.0, 0.0, 0.0, 0.0, 0.5], -0.00015, 0.002),
    ]
    competitors = {}
    for name, betas, alpha, noise_sd in specs:
        competitors[name] = (tbill + fac @ np.asarray(betas) + alpha
                             + rng.normal(0.0, noise_sd, N_DAYS))
    write_csv("competitors.csv", dates, competitors)

    # --- universe of tradable assets ---
    universe = {}
    for i in range(20):
        beta = 0.5 + 1.0 * rng.uniform()
        universe[f"a{i + 1:02d}"] = beta * mkt + rng.normal(0.0, 0.015, N_DAYS)
    write_csv("universe.csv", dates, universe)

    # --- a short price-quoted file for ingestion tests ---
    px_dates = dates[:11]
    prices = {}
    for j in range(3):
        rets = rng.normal(0.0005, 0.01, len(px_dates) - 1)
        path = 100.0 * np.concatenate([[1.0], np.cumprod(1.0 + rets)])
        prices[f"px{j + 1}"] = path
    write_csv("prices.csv", px_dates, prices, fmt="%.6f")

    with open(os.path.join(HERE, "golden.cfg"), "w") as fh:
        fh.write(
            "# reference settings for the golden outputs\n"
            "k = 3\n"
            "sims = 200\n"
            "seed = 42\n"
            "alpha_days = 238\n"
            "format = csv\n"
        )
    print("wrote golden.cfg")


if __name__ == "__main__":
    main()
