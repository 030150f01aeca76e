"""A complete simulated participant session: counterbalanced plan, 15
maps, questionnaires after each, event log and CSV export. Run with:
python demos/05_experiment_session.py"""
import io
import random

from treasurehunt.fixtures import load_packaged_fixtures
from treasurehunt.harness import SessionRunner, TrialLogger, plan_session, verify_log_replay
from treasurehunt.world import GameStatus, legal_moves

fixtures = load_packaged_fixtures()
plan = plan_session(participant_index=0, fixtures=fixtures, rng=random.Random(8))
print(f"participant {plan.participant_id}: conditions {[c.value for c in plan.condition_order]}")
print(f"test map order: {' '.join(plan.test_map_ids)}\n")

log_stream = io.StringIO()
runner = SessionRunner(plan, fixtures, random.Random(9), TrialLogger(log_stream, plan.participant_id))
rng = random.Random(10)

while not runner.complete:
    if runner.state.status is not GameStatus.IN_PROGRESS:
        runner.submit_questionnaire(trust=rng.randint(4, 9), self_confidence=rng.randint(1, 6))
        continue
    # this simulated participant accepts the star 80% of the time
    if runner.recommended is not None and rng.random() < 0.8:
        runner.make_move(runner.recommended)
    else:
        runner.make_move(rng.choice(sorted(legal_moves(runner.state))))

print("map        condition     steps accepted  score  trust")
for t in runner.sealed_trials:
    cond = t.condition.value if t.condition else "unassisted"
    rate = "   -" if t.acceptance_rate is None else f"{t.acceptance_rate:.2f}"
    print(f"{t.map_id:10s} {cond:13s} {len(t.steps):5d}    {rate}  {t.final_score:5d}  {t.trust}")

import json
events = [json.loads(line) for line in log_stream.getvalue().splitlines()]
verify_log_replay(events, fixtures)
print(f"\nevent log: {len(events)} records, replay check passed")
print("\nCSV export:")
print(runner.export_csv())
