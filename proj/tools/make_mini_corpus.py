#!/usr/bin/env python3
"""Generates the bundled mini-corpus used by the tests.

Each synthetic article mixes a few topics. Every topic has one headline
sentence plus elaborations that reuse its keywords, and the main topic is
restated later in the article, so redundancy-aware selection matters. The
reference summary is a light paraphrase of the headline sentences.

Output is deterministic for a given seed.
"""

import argparse
import json
import random

SUBJECTS = [
    ("city council", "council", ["budget", "transit", "housing", "vote", "plan"]),
    ("storm", "storm", ["flooding", "coast", "evacuation", "rainfall", "damage"]),
    ("central bank", "bank", ["interest", "rates", "inflation", "lending", "markets"]),
    ("football club", "club", ["striker", "transfer", "season", "league", "coach"]),
    ("research team", "team", ["vaccine", "trial", "patients", "dose", "results"]),
    ("technology firm", "firm", ["chip", "factory", "profits", "shares", "supply"]),
    ("school district", "district", ["teachers", "strike", "classes", "salaries", "union"]),
    ("airline", "airline", ["flights", "delays", "pilots", "routes", "fuel"]),
    ("museum", "museum", ["exhibition", "paintings", "visitors", "collection", "curator"]),
    ("wildfire crews", "crews", ["blaze", "forest", "acres", "containment", "smoke"]),
    ("election board", "board", ["ballots", "recount", "turnout", "districts", "voters"]),
    ("energy company", "company", ["pipeline", "gas", "prices", "regulators", "output"]),
]

PLACES = ["Springfield", "Riverton", "Lakeside", "Northgate", "Ashford",
          "Milbrook", "Eastport", "Westhaven", "Carlow", "Dunmore"]

DAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday"]

HEADLINE = [
    "The {s} in {p} announced a major change to {k0} and {k1} on {d}.",
    "On {d} the {s} in {p} confirmed new {k0} measures tied to {k1}.",
    "The {s} of {p} said on {d} that {k0} and {k1} would be overhauled.",
]

DETAIL = [
    "Officials said the {k0} decision followed months of debate over {k1}.",
    "Critics argued that the {k0} proposal ignored concerns about {k1}.",
    "Local residents asked how the {k0} changes would affect {k1}.",
    "A spokesperson for the {sh} described the {k0} figures as encouraging.",
    "Analysts expect {k0} to remain a central issue alongside {k1}.",
    "Several experts questioned whether {k0} could improve without more {k1}.",
]

RESTATE = [
    "Once again the {sh} stressed that {k0} and {k1} were its main priorities.",
    "The {sh} repeated that the {k0} plan and the {k1} review would go ahead.",
]

FILLER = [
    "The weather in {p} was mild for most of the week.",
    "Traffic on the main road into {p} was lighter than usual.",
    "A local bakery in {p} celebrated its fiftieth anniversary.",
    "Volunteers cleaned the riverside park on {d} morning.",
]

SUMMARY = [
    "{p} {sh} announces change to {k0} and {k1}.",
    "{S} in {p} confirms {k0} measures linked to {k1}.",
    "{p} {sh} to overhaul {k0} and {k1}.",
]

CJK_TOPICS = [
    ("市政府", ["预算", "交通", "住房"]),
    ("气象台", ["暴雨", "洪水", "撤离"]),
    ("研究团队", ["疫苗", "试验", "患者"]),
    ("科技公司", ["芯片", "工厂", "利润"]),
    ("学校", ["教师", "课程", "工资"]),
    ("航空公司", ["航班", "延误", "燃油"]),
]

CJK_HEADLINE = "{s}宣布调整{k0}和{k1}政策。"
CJK_DETAIL = ["官员表示{k0}问题已经讨论了几个月。", "专家认为{k0}与{k1}密切相关！",
              "居民关心{k1}会受到怎样的影响？", "分析人士预计{k0}仍是焦点；"]
CJK_RESTATE = "{s}再次强调{k0}和{k1}是首要任务。"
CJK_FILLER = ["今天天气晴朗。", "街道上车辆不多。"]
CJK_SUMMARY = "{s}调整{k0}和{k1}政策。"


def topic_block(rng, subject, place, day):
    full, short, keys = subject
    k0, k1 = rng.sample(keys, 2)
    fmt = dict(s=full, sh=short, p=place, d=day, k0=k0, k1=k1, S=full.capitalize())
    headline = rng.choice(HEADLINE).format(**fmt)
    details = []
    for template in rng.sample(DETAIL, rng.randint(2, 3)):
        a, b = rng.sample(keys, 2)
        details.append(template.format(**{**fmt, "k0": a, "k1": b}))
    summary = rng.choice(SUMMARY).format(**fmt)
    restate = rng.choice(RESTATE).format(**fmt)
    return headline, details, summary, restate


def latin_doc(rng, idx):
    place = rng.choice(PLACES)
    day = rng.choice(DAYS)
    subjects = rng.sample(SUBJECTS, 3)
    sentences, summary = [], []
    restates = []
    for t, subject in enumerate(subjects):
        headline, details, summ, restate = topic_block(rng, subject, place, day)
        # The main topic leads; later topics sometimes open with a detail.
        if t > 0 and rng.random() < 0.4:
            sentences.extend(details[:1] + [headline] + details[1:])
        else:
            sentences.extend([headline] + details)
        if rng.random() < 0.5:
            sentences.append(rng.choice(FILLER).format(p=place, d=day))
        summary.append(summ)
        restates.append(restate)
    sentences.append(restates[0])
    return {"id": f"en-{idx:03d}", "text": " ".join(sentences),
            "summary": " ".join(summary), "lang": "latin"}


def cjk_doc(rng, idx):
    topics = rng.sample(CJK_TOPICS, 3)
    sentences, summary, restates = [], [], []
    for s, keys in topics:
        k0, k1 = rng.sample(keys, 2)
        sentences.append(CJK_HEADLINE.format(s=s, k0=k0, k1=k1))
        for template in rng.sample(CJK_DETAIL, 2):
            a, b = rng.sample(keys, 2)
            sentences.append(template.format(k0=a, k1=b))
        if rng.random() < 0.5:
            sentences.append(rng.choice(CJK_FILLER))
        summary.append(CJK_SUMMARY.format(s=s, k0=k0, k1=k1))
        restates.append(CJK_RESTATE.format(s=s, k0=k0, k1=k1))
    sentences.append(restates[0])
    return {"id": f"zh-{idx:03d}", "sentences": sentences,
            "summary": "".join(summary), "lang": "cjk"}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--latin", type=int, default=20)
    parser.add_argument("--cjk", type=int, default=6)
    parser.add_argument("--seed", type=int, default=2021)
    parser.add_argument("--out", default="-")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    docs = [latin_doc(rng, i) for i in range(args.latin)]
    docs += [cjk_doc(rng, i) for i in range(args.cjk)]
    lines = "".join(json.dumps(d, ensure_ascii=False) + "\n" for d in docs)
    if args.out == "-":
        print(lines, end="")
    else:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(lines)


if __name__ == "__main__":
    main()
