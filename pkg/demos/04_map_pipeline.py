"""The map selection pipeline end to end on a small pool: generate,
self-play, rank by score spread, filter by the three selection rules.
Run with: python demos/04_map_pipeline.py (takes a few seconds)"""
import random

from treasurehunt import pipeline

criteria = pipeline.SelectionCriteria(pool_size=40, runs_per_map=10, select_count=6)
# small pools cannot always balance the gold across quadrants; when that
# happens select_test_maps raises a SelectionError naming the criterion
rng = random.Random(0)

pool = [pipeline.generate_map(rng) for _ in range(criteria.pool_size)]
print(f"generated {len(pool)} maps, self-playing each {criteria.runs_per_map} times...")
ranked = pipeline.evaluate_pool(pool, criteria, rng)

print("\nlowest-variance maps (mean +- SE over self-plays, vs omniscient optimum):")
print("  gold wumpus pits            mean     SE   optimal  ratio")
for stats in ranked[:8]:
    m = stats.map
    pits = ",".join(p.label for p in sorted(m.pits))
    print(f"  {m.gold.label:4s} {m.wumpus.label:6s} {pits:15s}"
          f" {stats.mean:7.1f} {stats.std_err:6.2f} {stats.optimal:8d}"
          f"  {stats.ratio:.3f}")

chosen = pipeline.select_test_maps(ranked, criteria)
print(f"\nselected {len(chosen)} test maps "
      "(low variance, gold not next to start, quadrants balanced):")
for m in chosen:
    print(f"  gold {m.gold.label}  quadrant {pipeline.quadrant(m.gold)}")
