#!/usr/bin/env python3
"""Regenerates the bundled mock fixtures. Output is deterministic."""

import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))

NO_CTX_JUDGE = "You will also be given two model responses to this query"
CTX_JUDGE = "and the context under which the query was issued. This context will be presented in the form of follow-up questions and the user's answers to these questions"
FOLLOWUP_GEN = "Generate up to 10 follow-up QA pairs"
JURY = "Follow-up Questions:"
CLASSIFY = "Query Types:"
COUNT = "how many of the criteria in the follow-up questions"
FILTER = "Is the query independent of the answer choices?"
RATE = "Rate the response on a scale of 1-5"
JUSTIFY = "free-text justification"


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def write_json(path, obj):
    write(path, json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def write_jsonl(path, rows):
    write(path, "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows))


def qa_block(pairs):
    lines = []
    for q, choices in pairs:
        lines.append("Q: %s A: %s" % (q, json.dumps(choices)))
    return "Context: " + "\n".join(lines)


BASE_QAS = [
    ("What is your level of expertise?", ["Novice", "Intermediate", "Expert"]),
    ("How long should the answer be?", ["One paragraph", "A detailed guide"]),
    ("What is the purpose of your question?", ["Work", "Study", "Curiosity"]),
]


def verdict(which, why):
    return '**output: {"judgement": "%s"}**\nJustification: %s' % (which, why)


def judge_rules(marker_phrase, marker, winner):
    """Text-keyed rules: the named candidate wins in either presentation order."""
    if winner == "Tie":
        return [{"contains": [marker_phrase, marker], "text": verdict("Tie", "Both responses are equally lacking in detail.")}]
    tag = "ALPHA" if winner == "alpha" else "BETA"
    return [
        {"contains": [marker_phrase, marker, "Response 1: " + tag],
         "text": verdict("Response 1", "Response 1 follows the stated background and is more relevant.")},
        {"contains": [marker_phrase, marker, "Response 2: " + tag],
         "text": verdict("Response 2", "Response 2 follows the stated background and is more relevant.")},
    ]


def common_rules():
    return [
        {"contains": [CLASSIFY], "text": '["Subjective", "Open-ended"]'},
        {"contains": [JURY], "model": "u[0-9]", "text": '**output: {"1": "Yes", "2": "Yes", "3": "Yes", "4": "Yes", "5": "Yes", "6": "Yes", "7": "Yes", "8": "Yes", "9": "Yes", "10": "Yes"}**'},
        {"contains": [COUNT, "Response: ALPHA"], "text": "2\nThe response adapts to the expertise and length answers."},
        {"contains": [COUNT], "text": "1\nThe response adapts to the length answer only."},
        {"contains": [JUSTIFY, "equally lacking"], "text": '**output: {"category": "Surface"}**'},
        {"contains": [JUSTIFY], "text": '**output: {"category": "Content"}**'},
        {"contains": [FILTER], "text": '{"1": "Yes", "2": "Yes", "3": "Yes"}'},
        {"contains": [RATE, "Response: ALPHA"], "text": '**output: {"Novice": 5, "Expert": 2}**'},
        {"contains": [RATE], "text": '**output: {"Novice": 4, "Expert": 4}**'},
        {"model": "alpha", "contains": ["Context:"], "text": "ALPHA answer, adapted to the stated context."},
        {"model": "alpha", "text": "ALPHA answer."},
        {"model": "beta", "contains": ["Context:"], "text": "BETA answer, adapted to the stated context."},
        {"model": "beta", "text": "BETA answer."},
    ]


def config(**extra):
    c = {
        "seed": 7,
        "runs_dir": "runs",
        "cache_dir": "cache",
        "queries_file": "queries.jsonl",
        "attributes_file": "attributes.json",
        "providers": [{"id": "mock", "kind": "mock", "mock_script": "mock_script.json",
                       "requests_per_minute": 1000000, "max_concurrency": 8,
                       "retry": {"max_attempts": 1, "backoff_base_ms": 1, "backoff_cap_ms": 1}}],
        "models": [{"id": m, "provider": "mock"} for m in
                   ["alpha", "beta", "c1", "g1", "g2", "u1", "u2", "u3", "j1", "j2", "j3", "k1"]],
        "classifier": "c1",
        "generators": ["g1", "g2"],
        "jurors": ["u1", "u2", "u3"],
        "judges": ["j1", "j2", "j3"],
        "pairs": [{"a": "alpha", "b": "beta", "label": "alpha vs beta"}],
        "settings": ["NoCtxGen_NoCtxEval", "NoCtxGen_CtxEval", "CtxGen_CtxEval"],
        "constraint_judge": "k1",
        "justification_judge": "k1",
        "rating_judge": "k1",
        "bias_candidate": "alpha",
        "max_concurrency": 4,
        "annotation": {"host": "127.0.0.1", "port": 0, "judgments_per_task": 3, "quota": 3},
    }
    c.update(extra)
    return c


ATTRIBUTES = [{"name": "Expertise", "question": "What is your level of expertise?",
               "answer_choices": ["Novice", "Expert"]}]


def pipeline20():
    """20 queries. p03 and p11 need no context; p07 has a followup one juror
    rejects; p12 gets 12 QAs from both generators and is capped at 10."""
    d = os.path.join(HERE, "pipeline20")
    queries = [{"id": "p%02d" % i, "text": "Pipeline query %02d about planning a garden" % i,
                "source": "fixture"} for i in range(20)]
    rules = []
    for q in queries:
        qid = q["id"]
        if qid in ("p03", "p11"):
            rules.append({"contains": [FOLLOWUP_GEN, "Query: " + q["text"]], "model": "g1",
                          "text": "No"})
            rules.append({"contains": [FOLLOWUP_GEN, "Query: " + q["text"]], "model": "g2",
                          "text": "No"})
        elif qid == "p12":
            many = [("Question number %d about the garden?" % k, ["Small", "Large"]) for k in range(12)]
            rules.append({"contains": [FOLLOWUP_GEN, "Query: " + q["text"]],
                          "text": "Yes\n" + qa_block(many)})
    rules.append({"contains": [FOLLOWUP_GEN], "text": "Yes\n" + qa_block(BASE_QAS)})
    # p07: juror u3 rejects the second followup, giving votes (Y, Y, N).
    rules.append({"contains": [JURY, "Query: Pipeline query 07 "], "model": "u3",
                  "text": '**output: {"1": "Yes", "2": "No", "3": "Yes"}**'})
    rules.extend(common_rules())
    for q in queries:
        rules.extend(judge_rules(NO_CTX_JUDGE, "Query: " + q["text"], "alpha" if int(q["id"][1:]) % 3 else "beta"))
    rules.extend(judge_rules(CTX_JUDGE, "Query: Pipeline", "alpha"))
    write_jsonl(os.path.join(d, "queries.jsonl"), queries)
    write_json(os.path.join(d, "mock_script.json"), {"rules": rules})
    write_json(os.path.join(d, "config.json"), config())
    write_json(os.path.join(d, "attributes.json"), ATTRIBUTES)


def flip100():
    """100 queries whose no-context majorities split 39/53/8 (alpha wins /
    beta wins / tie) and whose context-aware majorities split 68/32/0."""
    d = os.path.join(HERE, "flip100")
    queries = []
    rules = []
    for i in range(100):
        no_ctx = "alpha" if i < 39 else ("beta" if i < 92 else "Tie")
        ctx = "alpha" if i < 68 else "beta"
        text = "Flip query %03d [n:%s] [c:%s]" % (i, no_ctx, ctx)
        queries.append({"id": "f%03d" % i, "text": text, "source": "fixture"})
    for who in ("alpha", "beta", "Tie"):
        rules.extend(judge_rules(NO_CTX_JUDGE, "[n:%s]" % who, who))
    for who in ("alpha", "beta"):
        rules.extend(judge_rules(CTX_JUDGE, "[c:%s]" % who, who))
    rules.append({"contains": [FOLLOWUP_GEN], "text": "Yes\n" + qa_block(BASE_QAS)})
    rules.extend(common_rules())
    write_jsonl(os.path.join(d, "queries.jsonl"), queries)
    write_json(os.path.join(d, "mock_script.json"), {"rules": rules})
    write_json(os.path.join(d, "config.json"),
               config(settings=["NoCtxGen_NoCtxEval", "CtxGen_CtxEval"]))
    write_json(os.path.join(d, "attributes.json"), ATTRIBUTES)
    write_json(os.path.join(d, "expected.json"), {
        "NoCtxGen_NoCtxEval": {"a": 39, "b": 53, "tie": 8},
        "CtxGen_CtxEval": {"a": 68, "b": 32, "tie": 0}})


def parser_corpus():
    R1, R2, T, U = "Response1", "Response2", "Tie", "Unparsed"
    cases = [
        ('**output: {"judgement": "Response 1"}**', R1),
        ('**output: {"judgement": "Response 2"}**', R2),
        ('**output: {"judgement": "Tie"}**', T),
        ('**Output: {"judgement": "Response 1"}**\nJustification: clearer.', R1),
        ('**OUTPUT: {"Judgement": "response 2"}**', R2),
        ('**output: {"judgement": "TIE" }**', T),
        ('**output: {"judgment": "Response 1"}**', R1),
        ("**output: {'judgement': 'Response 2'}**", R2),
        ('**output: {“judgement”: “Response 1”}**', R1),
        ('**output:{"judgement":"Response2"}**', R2),
        ('Judgement: **output: {"judgement": "Response 1" }**\nJustification: Response 1 uses the context.', R1),
        ('After comparing both, **output: {"judgement": "Tie"}** since both ignore the context.', T),
        ('**output: {"judgement": "Response 2", "confidence": "high"}**', R2),
        ('**output: {\n  "judgement": "Response 1"\n}**', R1),
        ('**output: {"judgement": "response 1"}**', R1),
        ('**output: {"judgement": "RESPONSE 2"}**', R2),
        ('**output: {"judgement": "Tie"}** Both responses are equally good.', T),
        ('Response 2 is longer. **output: {"judgement": "Response 1"}**', R1),
        ('**output: {"judgement": "Response 2"} **', R2),
        ('** output: {"judgement": "Tie"}**', T),
        ('{"judgement": "Response 1"}', R1),
        ('The answer is {"judgement": "Response 2"} because it is complete.', R2),
        ('output: {"judgement": "Tie"}', T),
        ('```json\n{"judgement": "Response 1"}\n```', R1),
        ("{'judgement': 'Response 2'}", R2),
        ('Final: {"Judgement": "tie"}', T),
        ('{"judgment": "Response 2"}\nResponse 2 covers the constraints.', R2),
        ('{"reasoning": "both fine", "judgement": "Tie"}', T),
        ('Output - {"judgement": "Response 1"} - done', R1),
        ('{"judgement": "Response 1"} and again {"judgement": "Response 1"}', R1),
        ('Response 1 is better.', U),
        ('I prefer the second response.', U),
        ('Both responses are equally good, so it is a tie.', U),
        ('', U),
        ('**output: {"judgement": "_"}**', U),
        ('**output: {"judgement": "Response 3"}**', U),
        ('{"judgement": "Response 1"} {"judgement": "Response 2"}', U),
        ('**output: {"verdict": "Response 1"}**', U),
        ('**output: {"judgement": "Both"}**', U),
        ('Judgement: Response 2', U),
    ]
    assert len(cases) == 40
    write_json(os.path.join(HERE, "parser_corpus.json"),
               [{"text": t, "label": l} for t, l in cases])


def sensitivity50():
    """Adapted-mode ratings for 50 queries over one three-valued attribute.
    Cells 45..49 are incomplete and must be excluded."""
    rng = random.Random(20260101)
    values = ["Novice", "Intermediate", "Expert"]
    rows = []
    counts = [0] * 5
    excluded = 0
    for i in range(50):
        qid = "s%02d" % i
        ratings = [rng.randint(1, 5) for _ in values]
        if i >= 45:
            # Missing one value.
            for v, r in list(zip(values, ratings))[:2]:
                rows.append({"query_id": qid, "attribute": "Expertise", "attribute_value": v,
                             "response_mode": "Adapted", "rating": r})
            excluded += 1
            continue
        for v, r in zip(values, ratings):
            rows.append({"query_id": qid, "attribute": "Expertise", "attribute_value": v,
                         "response_mode": "Adapted", "rating": r})
        counts[max(ratings) - min(ratings)] += 1
    # Default-mode noise the histogram must ignore.
    rows.append({"query_id": "s00", "attribute": "Expertise", "attribute_value": "Novice",
                 "response_mode": "Default", "rating": 1})
    d = os.path.join(HERE, "sensitivity50")
    write_jsonl(os.path.join(d, "ratings.jsonl"), rows)
    n = sum(counts)
    write_json(os.path.join(d, "expected.json"), {
        "attribute": "Expertise", "values": values, "counts": counts,
        "pct": [100.0 * c / n for c in counts], "n_cells": n, "n_excluded": excluded})


if __name__ == "__main__":
    pipeline20()
    flip100()
    parser_corpus()
    sensitivity50()
