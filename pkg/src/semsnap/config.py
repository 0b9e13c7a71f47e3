"""Severity weights and the differentiate palette, with file/env overrides."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

DEFAULT_WEIGHTS = {
    "R1": 3.0,
    "R2": 2.0,
    "R3a": 1.0,
    "R3b": 1.0,
    "R4": 2.0,
    "R5": 2.0,
    # extra consistency penalty for a same-grouping multiples whose matched
    # y-domains differ
    "R3a-domain": 1.0,
    # unconfirmed relations are possibilities, not certainties
    "conditional-factor": 0.5,
}

# First non-colliding entry wins; order is the determinism contract.
DEFAULT_CONSTANT_COLORS = (
    "#2ca02c", "#d62728", "#1f77b4", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

DEFAULT_CATEGORICAL_SCHEMES = (
    ("green-pink", ("#a1d99b", "#f781bf", "#6baed6", "#fdae6b", "#9e9ac8",
                    "#a55194")),
    ("tableau", ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                 "#edc948")),
    ("dark2", ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
               "#e6ab02")),
    ("pastel", ("#fbb4ae", "#b3cde3", "#ccebc5", "#decbe4", "#fed9a6",
                "#ffffcc")),
    ("set2", ("#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854",
              "#ffd92f")),
    ("accent", ("#7fc97f", "#beaed4", "#fdc086", "#ffff99", "#386cb0",
                "#f0027f")),
    ("bold", ("#7f3c8d", "#11a579", "#3969ac", "#f2b701", "#e73f74",
              "#80ba5a")),
    ("vivid", ("#e58606", "#5d69b1", "#52bca3", "#99c945", "#cc61b0",
               "#24796c")),
    ("safe", ("#88ccee", "#cc6677", "#ddcc77", "#117733", "#332288",
              "#aa4499")),
    ("prism", ("#5f4690", "#1d6996", "#38a6a5", "#0f8554", "#73af48",
               "#edad08")),
)

DEFAULT_RAMPS = (
    ("greens", ("#e5f5e0", "#00441b")),
    ("purples", ("#efedf5", "#3f007d")),
    ("oranges", ("#fee6ce", "#7f2704")),
    ("greys", ("#f0f0f0", "#252525")),
)

DEFAULT_SIZE_RANGES = ((2.0, 10.0), (1.0, 6.0), (4.0, 16.0), (3.0, 24.0),
                       (5.0, 40.0))


@dataclass(frozen=True)
class Config:
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    constant_colors: tuple = DEFAULT_CONSTANT_COLORS
    categorical_schemes: tuple = DEFAULT_CATEGORICAL_SCHEMES
    ramps: tuple = DEFAULT_RAMPS
    size_ranges: tuple = DEFAULT_SIZE_RANGES


def load_config(path: Optional[str] = None) -> Config:
    """Read a config file; falls back to SEMSNAP_CONFIG, then defaults."""
    if path is None:
        path = os.environ.get("SEMSNAP_CONFIG")
    if path is None:
        return Config()
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    weights = dict(DEFAULT_WEIGHTS)
    weights.update(raw.get("weights", {}))
    colors = tuple(raw.get("constantColors", DEFAULT_CONSTANT_COLORS))
    schemes = tuple((s["id"], tuple(s["colors"]))
                    for s in raw["categoricalSchemes"]) \
        if "categoricalSchemes" in raw else DEFAULT_CATEGORICAL_SCHEMES
    ramps = tuple((r["id"], tuple(r["colors"])) for r in raw["ramps"]) \
        if "ramps" in raw else DEFAULT_RAMPS
    sizes = tuple(tuple(s) for s in raw.get("sizeRanges", DEFAULT_SIZE_RANGES))
    return Config(weights=weights, constant_colors=colors,
                  categorical_schemes=schemes, ramps=ramps, size_ranges=sizes)
