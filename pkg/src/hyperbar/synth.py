"""Synthetic face-to-face contact streams for tests and benchmarks.

Individuals sit on a ring inside their cluster; each window a few groups
form around random anchors from near neighbours, and every pair in a group
gets one contact record.  Clusters never mix, so each one is a separate
connected component.
"""

from __future__ import annotations

import random

GROUP_SIZES = (2, 3, 4, 5)
GROUP_WEIGHTS = (0.72, 0.2, 0.06, 0.02)


def generate_contacts(n_individuals: int, n_contacts: int, seed: int = 0, clusters: int = 1,
                      reach: int = 12, groups_per_window: int = 6,
                      window_len: int = 20) -> list[tuple[int, str, str]]:
    """Return ``(t, i, j)`` records, about ``n_contacts`` of them, sorted by time."""
    if clusters < 1 or n_individuals < 2 * clusters:
        raise ValueError("each cluster needs at least two individuals")
    rng = random.Random(seed)
    width = len(str(n_individuals - 1))
    ids = [f"v{i:0{width}d}" for i in range(n_individuals)]
    members = [ids[c::clusters] for c in range(clusters)]
    records: list[tuple[int, str, str]] = []
    t = 0
    while len(records) < n_contacts:
        taken: set[str] = set()
        for _ in range(rng.randint(1, groups_per_window)):
            ring = members[rng.randrange(clusters)]
            size = min(rng.choices(GROUP_SIZES, GROUP_WEIGHTS)[0], len(ring))
            anchor = rng.randrange(len(ring))
            span = min(reach, len(ring) - 1)
            offsets = rng.sample(range(1, span + 1), size - 1)
            group = sorted({ring[(anchor + o) % len(ring)] for o in [0, *offsets]})
            if taken.intersection(group):
                continue
            taken.update(group)
            for a in range(len(group)):
                for b in range(a + 1, len(group)):
                    records.append((t, group[a], group[b]))
        t += window_len
    return records[:n_contacts] if len(records) > n_contacts else records


def format_contacts(records) -> str:
    return "".join(f"{t} {i} {j}\n" for t, i, j in records)
