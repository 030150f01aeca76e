"""Shipped experiment maps and the directory format they live in.

A fixture directory holds one JSON file per map plus a manifest naming
the training order, the test set, the generating seed and the selection
statistics. The packaged default set was produced by
``treasurehunt mapgen`` with the seed recorded in the manifest.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .harness import MapFixtures
from .pipeline import FixtureSet, MapStats
from .world import map_from_dict, map_to_dict


def write_fixture_dir(fixture_set: FixtureSet, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    training_ids = [f"training{i+1}" for i in range(len(fixture_set.training))]
    test_ids = [f"test{i+1:02d}" for i in range(len(fixture_set.test))]
    for map_id, world in zip(
        training_ids + test_ids, fixture_set.training + fixture_set.test
    ):
        with open(out_dir / f"{map_id}.json", "w") as fh:
            json.dump(map_to_dict(world), fh, indent=2)
            fh.write("\n")
    manifest = {
        "masterSeed": fixture_set.master_seed,
        "criteria": {
            "poolSize": fixture_set.criteria.pool_size,
            "runsPerMap": fixture_set.criteria.runs_per_map,
            "selectCount": fixture_set.criteria.select_count,
            "maxStdDev": fixture_set.criteria.max_std_dev,
        },
        "training": training_ids,
        "test": test_ids,
        "testStats": {
            map_id: _stats_to_dict(stats)
            for map_id, stats in zip(test_ids, fixture_set.test_stats)
        },
    }
    with open(out_dir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _stats_to_dict(stats: MapStats) -> dict:
    return {
        "mean": stats.mean,
        "stdDev": stats.std_dev,
        "stdErr": stats.std_err,
        "optimal": stats.optimal,
        "ratio": stats.ratio,
    }


def load_fixture_dir(fixture_dir: Path) -> MapFixtures:
    with open(fixture_dir / "manifest.json") as fh:
        manifest = json.load(fh)
    maps = {}
    for map_id in (*manifest["training"], *manifest["test"]):
        with open(fixture_dir / f"{map_id}.json") as fh:
            maps[map_id] = map_from_dict(json.load(fh))
    return MapFixtures(
        training_ids=tuple(manifest["training"]),
        test_ids=tuple(manifest["test"]),
        maps=maps,
    )


def load_packaged_fixtures() -> MapFixtures:
    """The default map set that ships inside the package."""
    root = resources.files("treasurehunt") / "fixtures"
    with resources.as_file(root) as path:
        return load_fixture_dir(Path(path))
