"""Run law grids over a corpus and assemble reports.

Results are gathered per instance (so every law on one module shares one
context of cached lattices and localizations) and then emitted in corpus
order, law-registry order.  Nothing in the JSON depends on timing or on the
number of worker processes.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

from ..errors import Caps, SmlabError
from ..instances import Instance
from .corpus import generate_corpus
from .registry import LAW_ORDER, LAWS, ZLAWS, LawResult, check_law, make_context

SUITES = {
    "core": ("finite", LAW_ORDER),
    "z": ("zlattice", ZLAWS),
    "all": (None, LAW_ORDER),
}

VERDICTS = ("pass", "fail", "skipped-hypothesis", "probe", "error")


def suite_plan(suite: str) -> tuple[str | None, list[str]]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    backend, laws = SUITES[suite]
    return backend, list(laws)


def _laws_for(inst: Instance, laws: Sequence[str]) -> list[str]:
    if inst.backend == "finite":
        return list(laws)
    return [law for law in laws if LAWS[law].zlattice is not None]


def _run_instance(args) -> list[dict]:
    backend, descriptor, provenance, laws, mutation, seed = args
    inst = Instance(backend, descriptor, provenance)
    out = []
    try:
        ctx = make_context(inst, mutation, seed)
    except SmlabError as exc:
        return [LawResult(law, inst.name, inst.descriptor, "error", reason=str(exc)).to_json()
                for law in laws]
    for law in laws:
        try:
            res = check_law(law, inst, mutation, seed=seed, context=ctx)
        except SmlabError as exc:
            res = LawResult(law, inst.name, inst.descriptor, "error", reason=str(exc))
        out.append(res.to_json())
    return out


def run_suite(laws: Iterable[str] | None = None, corpus: Sequence[Instance] | None = None,
              jobs: int = 1, *, suite: str = "all", seed: int = 42, caps: Caps | None = None,
              mutation: str | None = None) -> dict:
    """Evaluate the selected laws on the corpus and return the report dict."""
    backend, default_laws = suite_plan(suite)
    selected = default_laws if laws is None else [law for law in LAW_ORDER if law in set(laws)]
    for law in (laws or ()):
        if law not in LAWS:
            raise KeyError(f"unknown law {law!r}")
    if corpus is None:
        corpus = generate_corpus(seed, caps)
    if backend is not None:
        corpus = [inst for inst in corpus if inst.backend == backend]
    tasks = []
    for inst in corpus:
        mine = _laws_for(inst, selected)
        if mine:
            tasks.append((inst.backend, inst.descriptor, inst.provenance, mine, mutation, seed))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_instance, tasks, chunksize=4))
    else:
        chunks = [_run_instance(t) for t in tasks]
    results = [r for chunk in chunks for r in chunk]
    return build_report(results, suite=suite, seed=seed, caps=caps, mutation=mutation, laws=selected)


def build_report(results: list[dict], *, suite: str, seed: int, caps: Caps | None,
                 mutation: str | None, laws: list[str]) -> dict:
    totals = Counter(r["verdict"] for r in results)
    per_law: dict[str, dict] = {}
    for law in laws:
        rows = [r for r in results if r["law"] == law]
        if not rows:
            continue
        counts = Counter(r["verdict"] for r in rows)
        per_law[law] = {**{v: counts.get(v, 0) for v in VERDICTS},
                        "quantified": sum(r["quantified"] for r in rows),
                        "skipped_tuples": sum(r["skipped"] for r in rows)}
    anomalies = [{"law": r["law"], "instance": r["instance"], **a}
                 for r in results for a in r.get("anomalies", [])]
    probes = [{"law": r["law"], "instance": r["instance"], **p}
              for r in results for p in r.get("probes", [])
              if r["law"] in ("Q2_9_CONVERSE", "T3_2")]
    caps = caps or Caps.from_env()
    return {
        "suite": suite,
        "seed": seed,
        "caps": {"ring": caps.ring, "module": caps.module, "lattice": caps.lattice},
        "mutation": mutation,
        "summary": {"results": len(results), **{v: totals.get(v, 0) for v in VERDICTS},
                    "instances": len({r["instance"] for r in results})},
        "laws": per_law,
        "anomalies": anomalies,
        "probes": probes,
        "results": results,
    }


def report_ok(report: dict) -> bool:
    return report["summary"]["fail"] == 0 and report["summary"]["error"] == 0


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def markdown_report(report: dict) -> str:
    s = report["summary"]
    lines = [
        f"# Law suite `{report['suite']}` (seed {report['seed']})",
        "",
        f"{s['results']} results over {s['instances']} instances: "
        f"{s['pass']} pass, {s['fail']} fail, {s['skipped-hypothesis']} skipped, "
        f"{s['probe']} probe, {s['error']} error.",
        "",
        "| law | pass | fail | skipped | probe | error | tuples checked | tuples skipped |",
        "|---|---|---|---|---|---|---|---|",
    ]
    for law, c in report["laws"].items():
        lines.append(f"| {law} | {c['pass']} | {c['fail']} | {c['skipped-hypothesis']} | {c['probe']} "
                     f"| {c['error']} | {c['quantified']} | {c['skipped_tuples']} |")
    fails = [r for r in report["results"] if r["verdict"] in ("fail", "error")]
    if fails:
        lines += ["", "## Failures", ""]
        for r in fails:
            lines.append(f"- {r['law']} on `{r['instance']}`: "
                         f"`{json.dumps(r.get('payload') or r.get('reason'), ensure_ascii=False)}`")
    lines += ["", f"Anomalies: {len(report['anomalies'])}. Probe records: {len(report['probes'])}.", ""]
    return "\n".join(lines)
