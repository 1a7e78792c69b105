"""Generate tests/fixtures/synthetic.csv: clustered outage records with a few defects."""
import csv
import datetime as dt
import math
import random
import sys


def gap(rng, mean, sd):
    k = (mean / sd) ** 2
    return rng.gammavariate(k, mean / k)


def main(path, seed=7, events=300):
    rng = random.Random(seed)
    t = dt.datetime(2021, 1, 1)
    rows = []
    for _ in range(events):
        n = min(60, max(1, int(rng.paretovariate(1.1))))
        do_mean = 7.45 + 23.3 * math.exp(-0.0388 * n) + 32.2 * math.exp(-0.00391 * n)
        dr_mean = 7.64 + 30.8 * math.exp(-0.0514 * n) + 33.8 * math.exp(-0.00391 * n)
        starts, o = [], 0.0
        for k in range(n):
            if k:
                o += gap(rng, do_mean, 0.8 * do_mean)
            starts.append(round(o))
        ends, r = [], starts[0] + max(1, round(gap(rng, 132, 92.4)))
        for k in range(n):
            if k:
                r += max(1, round(gap(rng, dr_mean, 0.9 * dr_mean)))
            ends.append(max(r, starts[k] + 1))
            r = ends[-1]
        # Restores are matched to outages that are already out.
        open_ = []
        pairs = []
        for e in ends:
            open_ += [s for s in starts[len(open_) + len(pairs):] if s <= e]
            j = rng.randrange(len(open_))
            pairs.append((open_.pop(j), e))
        for s, e in pairs:
            c = max(1, round(gap(rng, 54, 120)))
            rows.append([t + dt.timedelta(minutes=s), t + dt.timedelta(minutes=e), c])
        t += dt.timedelta(minutes=max(starts + ends) + rng.randint(30, 2000))
    rows.sort(key=lambda x: (x[0], x[1]))
    fmt = "%Y-%m-%dT%H:%M"
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["outage_start", "restore_time", "customers"])
        for i, (s, e, c) in enumerate(rows):
            cust = "" if i % 97 == 5 else str(c)
            w.writerow([s.strftime(fmt), e.strftime(fmt), cust])
        w.writerow(["2021-03-01T10:00", "2021-03-01T09:00", "12"])
        w.writerow(["not-a-time", "2021-03-01T09:00", "3"])
        w.writerow(["2021-03-02T10:00", "2021-03-02T11:00", "-4"])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/synthetic.csv")
