#!/usr/bin/env python3
# Copyright 2026 The Vaultsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates vaultsim scenario files (JSONL)."""

import argparse
import json
import random
import sys

HOURS = 24


def header(seed, users, analysts=(), **params):
    base = {"days": 3, "cells": 4, "q": 2, "home": 0, "d_max": 2.0,
            "tau": 24, "K": "majority", "error": "identity"}
    base.update(params)
    h = {"v": 1, "seed": seed, "params": base, "users": list(users)}
    if analysts:
        h["analysts"] = list(analysts)
    return h


def user_ids(n):
    return [f"u{i:02d}" for i in range(1, n + 1)]


def sec_walk(rng, users, ticks, cells, coverage):
    """Hourly location samples; each user drifts between neighbouring cells."""
    where = {u: rng.randrange(cells) for u in users}
    events = {}
    for t in range(ticks):
        for u in users:
            if rng.random() < 0.2:
                where[u] = (where[u] + rng.choice((-1, 1))) % cells
            if rng.random() < coverage:
                events.setdefault(t, []).append(
                    {"tick": t, "op": "sample_sec", "user": u, "cell": where[u]})
    return events


def demo(seed):
    rng = random.Random(seed)
    users = user_ids(12)
    analyst = "analyst"
    days, cells = 3, 4
    ticks = days * HOURS
    timeline = {}

    def add(t, op, **kw):
        timeline.setdefault(t, []).append({"tick": t, "op": op, **kw})

    for u in users:
        add(0, "activate", user=u)
    add(0, "register", analyst=analyst)

    contacts = [(10, "u01", "u06", 1.2), (20, "u02", "u07", 0.8),
                (33, "u03", "u08", 1.5), (44, "u04", "u09", 3.5)]
    for t, a, b, d in contacts:
        add(t, "move", user=a, dists={b: d})
        add(t + 1, "move", user=a, dists={b: d + 6.0})

    for t, u in [(12, "u01"), (20, "u02"), (30, "u03"), (40, "u04"),
                 (48, "u05")]:
        add(t, "infect", user=u)

    add(23, "analyse", analyst=analyst)                 # nothing uploaded
    add(26, "share", user="u01")
    add(27, "check", user="u06")
    add(30, "share", user="u02")
    add(31, "check", user="u07")
    add(31, "check", user="u12")
    add(47, "analyse", analyst=analyst)                 # no consent yet
    add(50, "share", user="u03")
    add(52, "share", user="u04")
    add(54, "share", user="u05")
    add(55, "share", user="u10")                        # not infected
    for t, u in [(56, "u01"), (57, "u02"), (58, "u03")]:
        add(t, "accept", user=u, analyst=analyst)
    add(60, "check", user="u08")
    add(60, "check", user="u09")
    add(71, "analyse", analyst=analyst)
    add(71, "leak")

    samples = sec_walk(rng, users, ticks, cells, coverage=0.85)
    lines = [header(seed, users, [analyst], days=days, cells=cells)]
    for t in range(ticks):
        lines += samples.get(t, [])
        lines += timeline.get(t, [])
    return lines


def gated(seed):
    users = user_ids(4)
    lines = [header(seed, users, ["analyst"], days=2, cells=3, K="all")]
    lines.append({"tick": 0, "op": "register", "analyst": "analyst"})
    for i, u in enumerate(users):
        lines.append({"tick": i, "op": "sample_sec", "user": u, "cell": i % 3})
        lines.append({"tick": i, "op": "infect", "user": u})
        lines.append({"tick": i, "op": "share", "user": u})
    for u in users[:3]:
        lines.append({"tick": 5, "op": "accept", "user": u, "analyst": "analyst"})
    lines.append({"tick": 23, "op": "analyse", "analyst": "analyst"})
    return lines


def minimal(seed):
    return [header(seed, ["u01"]),
            {"tick": 0, "op": "activate", "user": "u01"},
            {"tick": 0, "op": "check", "user": "u01"}]


def random_trace(seed, n_users, n_days):
    rng = random.Random(seed)
    users = user_ids(n_users)
    analysts = ["a1", "a2"]
    lines = [header(seed, users, analysts, days=n_days, q=2)]
    samples = sec_walk(rng, users, n_days * HOURS, 4, coverage=0.6)
    ops = {}
    for u in users:
        ops.setdefault(0, []).append({"tick": 0, "op": "activate", "user": u})
    for a in analysts:
        ops[0].append({"tick": 0, "op": "register", "analyst": a})
    for _ in range(n_users * 3):
        t = rng.randrange(1, n_days * HOURS)
        u = rng.choice(users)
        kind = rng.choice(("infect", "share", "check", "accept", "analyse",
                           "move"))
        ev = {"tick": t, "op": kind, "user": u}
        if kind in ("accept", "analyse"):
            ev["analyst"] = rng.choice(analysts)
            if kind == "analyse":
                del ev["user"]
        if kind == "move":
            peer = rng.choice([p for p in users if p != u])
            ev["dists"] = {peer: round(rng.uniform(0.5, 4.0), 2)}
        ops.setdefault(t, []).append(ev)
    for t in range(n_days * HOURS):
        lines += samples.get(t, []) + ops.get(t, [])
    return lines


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("kind", choices=("demo", "gated", "minimal", "random"))
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--users", type=int, default=6)
    p.add_argument("--days", type=int, default=2)
    args = p.parse_args()
    if args.kind == "demo":
        lines = demo(args.seed)
    elif args.kind == "gated":
        lines = gated(args.seed)
    elif args.kind == "minimal":
        lines = minimal(args.seed)
    else:
        lines = random_trace(args.seed, args.users, args.days)
    for line in lines:
        sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
