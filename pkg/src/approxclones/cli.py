"""Batch driver: ``approxclones {clones,axioms,sample,regress}``.

Exit codes: 0 success, 1 regression failure, 2 input error, 3 every rule
evaluation hit the PUT cap.
"""

from __future__ import annotations

import argparse
import csv
import glob
import json
import logging
import os
import sys
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional

import yaml

from . import experiments, regress
from .axioms import Outcomes, check_independence_of_losers, check_strong_independence, check_weak_independence
from .clones import clone_report
from .core import DomainError, Profile, ResourceError
from .ingest import DROP, POLICIES, IngestError, attach_parties, parse_election, party_relation, serialize_profile
from .rules import DEFAULT_CAP, Rule
from .samplers import CULTURES, CultureSpec, profile_seeds, sample

log = logging.getLogger("approxclones")

EXIT_OK, EXIT_REGRESSION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
DEFAULT_BUCKETS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
DEFAULT_RULES = ("irv", "ranked_pairs", "borda", "plurality")


@dataclass
class ExperimentConfig:
    inputs: list = field(default_factory=list)
    culture: Optional[str] = None
    m: int = 10
    n: int = 50
    count: int = 1
    contagion: float = 0.1
    dimension: str = "2"
    seed: int = 0
    rules: list = field(default_factory=lambda: list(DEFAULT_RULES))
    buckets: list = field(default_factory=lambda: list(DEFAULT_BUCKETS))
    approx_threshold: float = 0.2
    policy: str = DROP
    output: str = "out"
    cap: int = DEFAULT_CAP
    trials: int = 1
    jobs: int = 1
    manifest: Optional[str] = None

    def validate(self):
        b = [Fraction(str(x)) for x in self.buckets]
        if not b or any(x < 0 or x > 1 for x in b) or any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
            raise DomainError("alpha buckets must be strictly increasing within [0, 1]")
        if self.trials < 1 or self.count < 1:
            raise DomainError("trial and profile counts must be at least 1")
        if self.policy not in POLICIES:
            raise DomainError(f"policy must be one of {POLICIES}")
        if self.culture is not None and self.culture not in CULTURES:
            raise DomainError(f"unknown culture {self.culture!r}")
        self.rules = [Rule.parse(r) if not isinstance(r, Rule) else r for r in self.rules]


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _flt(x) -> str:
    return f"{float(x):.6f}"


def _write_csv(path: Path, header: list, rows: list):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, data):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass
class Item:
    name: str
    profile: Profile
    parties: dict = field(default_factory=dict)
    discarded_voters: int = 0


def load_inputs(config: ExperimentConfig) -> tuple[list[Item], list[tuple[str, str]]]:
    """Profiles from input globs and/or a culture batch, sorted by name; per-file errors collected."""
    items, errors = [], []
    paths = sorted({p for pattern in config.inputs for p in glob.glob(pattern)})
    for path in paths:
        if path.endswith(".parties") or not os.path.isfile(path):
            continue
        try:
            text = Path(path).read_text(encoding="utf-8")
            profile, raw = parse_election(text, config.policy)
            sidecar = Path(path + ".parties")
            parties = attach_parties(raw, sidecar.read_text(encoding="utf-8") if sidecar.exists() else None)
        except (IngestError, DomainError, OSError, UnicodeDecodeError) as exc:
            errors.append((path, str(exc)))
            log.warning("skipping %s: %s", path, exc)
            continue
        items.append(Item(Path(path).name, profile, parties, raw.discarded_voters))
    if config.culture:
        for i, seed in enumerate(profile_seeds(config.seed, config.count)):
            spec = CultureSpec(config.culture, config.m, config.n, seed, config.contagion, str(config.dimension))
            items.append(Item(f"{config.culture}_{i:05d}", sample(spec)))
    items.sort(key=lambda it: it.name)
    return items, errors


def _bucket_label(alpha: Fraction, bounds: list) -> str:
    if alpha == 0:
        return "0"
    for lo, hi in zip(bounds, bounds[1:]):
        if lo < alpha <= hi:
            return f"({lo},{hi}]"
    return f">{bounds[-1]}"


def _bucket_labels(bounds: list) -> list:
    return ["0"] + [f"({lo},{hi}]" for lo, hi in zip(bounds, bounds[1:])]


# ---------------------------------------------------------------- clones

def _clone_rows(item: Item):
    rep = clone_report(item.profile)
    pair_rows = []
    split = {"same": [], "cross": []}
    for s in rep.scores:
        rel = party_relation(item.parties, *s.pair)
        if rel in split:
            split[rel].append(s)
        pair_rows.append([item.name, s.pair[0], s.pair[1], _frac(s.alpha), _frac(s.beta),
                          _flt(s.alpha), _flt(s.beta), s.nonadjacent_count, s.swap_count, rel])

    def mins(scores):
        if not scores:
            return "", ""
        return _frac(min(s.alpha for s in scores)), _frac(min(s.beta for s in scores))

    same, cross = mins(split["same"]), mins(split["cross"])
    profile_row = [item.name, rep.n, rep.m, _frac(rep.min_alpha), _frac(rep.min_beta),
                   _flt(rep.min_alpha), _flt(rep.min_beta), len(rep.perfect_pairs),
                   ";".join(f"{x}|{y}" for x, y in rep.min_alpha_pairs),
                   same[0], same[1], cross[0], cross[1], item.discarded_voters]
    return pair_rows, profile_row, rep


def cmd_clones(config: ExperimentConfig) -> int:
    items, errors = load_inputs(config)
    if not items:
        log.error("no input profiles")
        return EXIT_INPUT
    out = Path(config.output)
    out.mkdir(parents=True, exist_ok=True)
    items = [it for it in items if it.profile.m >= 2]
    if not items:
        log.error("no input profile has two or more candidates")
        return EXIT_INPUT
    results = _map(config, _clone_rows, items)
    pair_rows, profile_rows, reports = [], [], []
    for pr, row, rep in results:
        pair_rows += pr
        profile_rows.append(row)
        reports.append(rep)
    _write_csv(out / "clones_pairs.csv",
               ["profile", "x", "y", "alpha", "beta", "alpha_float", "beta_float",
                "nonadjacent_voters", "swaps", "party_relation"], pair_rows)
    _write_csv(out / "clones_profiles.csv",
               ["profile", "n", "m", "min_alpha", "min_beta", "min_alpha_float", "min_beta_float",
                "perfect_clone_pairs", "min_alpha_pairs", "min_alpha_same_party", "min_beta_same_party",
                "min_alpha_cross_party", "min_beta_cross_party", "discarded_voters"], profile_rows)
    dist = []
    for measure, key in (("min_alpha", "min_alpha"), ("min_beta", "min_beta")):
        values: dict = {}
        for rep in reports:
            v = getattr(rep, key)
            values[v] = values.get(v, 0) + 1
        dist += [[measure, _frac(v), _flt(v), c] for v, c in sorted(values.items())]
    _write_csv(out / "clones_distribution.csv", ["measure", "value", "value_float", "profiles"], dist)
    count = len(reports)
    with_perfect = sum(1 for r in reports if r.perfect_pairs)
    mean_alpha = sum((r.min_alpha for r in reports), Fraction(0)) / count
    mean_beta = sum((r.min_beta for r in reports), Fraction(0)) / count
    summary = {
        "profiles": count,
        "profiles_with_perfect_clones": with_perfect,
        "perfect_clone_fraction": with_perfect / count,
        "mean_min_alpha": float(mean_alpha),
        "mean_min_beta": float(mean_beta),
        "mean_min_alpha_exact": _frac(mean_alpha),
        "mean_min_beta_exact": _frac(mean_beta),
        "input_errors": [{"file": f, "error": e} for f, e in errors],
    }
    cross = [row[11] for row in profile_rows if row[11] != ""]
    if cross:
        summary["mean_min_alpha_cross_party"] = float(sum(Fraction(c) for c in cross) / len(cross))
        summary["mean_min_beta_cross_party"] = float(
            sum(Fraction(row[12]) for row in profile_rows if row[12] != "") / len(cross))
    thr = Fraction(str(config.approx_threshold))
    approx = [row for row in pair_rows if Fraction(row[3]) <= thr]
    if any(row[9] != "unknown" for row in pair_rows):
        same = sum(1 for row in approx if row[9] == "same")
        summary["approx_pairs"] = len(approx)
        summary["approx_pairs_same_party"] = same
    _write_json(out / "clones_summary.json", summary)
    print(f"{count} profiles; {with_perfect} with perfect clones; "
          f"mean min alpha {float(mean_alpha):.4f}; mean min beta {float(mean_beta):.4f}")
    return EXIT_OK


# ---------------------------------------------------------------- axioms

def _axiom_rows(args):
    item, rules, bounds, cap = args
    p = item.profile
    rep = clone_report(p)
    verdict_rows, loser_rows, error_rows = [], [], []
    for rule in rules:
        out = Outcomes(rule, p, cap)
        try:
            rows = []
            for s in rep.scores:
                strong = check_strong_independence(rule, p, s.pair, outcomes=out)
                weak = check_weak_independence(rule, p, s.pair, outcomes=out)
                for variant, verdict in (("strong", strong), ("weak", weak)):
                    detail = ";".join(f"-{w.removed}:{'+'.join(w.failed) or 'ok'}" for w in verdict.witnesses)
                    rows.append([item.name, rule.value, s.pair[0], s.pair[1], _frac(s.alpha), _frac(s.beta),
                                 _bucket_label(s.alpha, bounds), "approx_clone_independence", variant,
                                 int(verdict.satisfied), detail, "|".join(sorted(out.full))])
            losers = check_independence_of_losers(rule, p, outcomes=out)
        except ResourceError as exc:
            error_rows.append([item.name, rule.value, str(exc)])
            continue
        verdict_rows += rows
        bad = [w.removed for w in losers.witnesses if not w.passed]
        loser_rows.append([item.name, rule.value, int(losers.satisfied), "|".join(bad)])
    return verdict_rows, loser_rows, error_rows


def _prop(v: int, d: int):
    return {"violations": v, "denominator": d, "proportion": (v / d) if d else None}


def _fmt_prop(p) -> str:
    if p is None:
        return "-"
    if p == 1:
        return "1"
    if p == 0:
        return "0"
    return f"{p:.2f}"


def cmd_axioms(config: ExperimentConfig) -> int:
    items, errors = load_inputs(config)
    items = [it for it in items if it.profile.m >= 3]
    if not items:
        log.error("no input profiles with at least three candidates")
        return EXIT_INPUT
    out = Path(config.output)
    out.mkdir(parents=True, exist_ok=True)
    bounds = [Fraction(str(b)) for b in config.buckets]
    thr = Fraction(str(config.approx_threshold))
    results = _map(config, _axiom_rows, [(it, config.rules, bounds, config.cap) for it in items])
    verdicts, losers, rerrors = [], [], []
    for v, lo, e in results:
        verdicts += v
        losers += lo
        rerrors += e
    _write_csv(out / "axioms_verdicts.csv",
               ["profile", "rule", "x", "y", "alpha", "beta", "alpha_bucket", "axiom", "variant",
                "satisfied", "removals", "winners"], verdicts)
    _write_csv(out / "axioms_losers.csv", ["profile", "rule", "satisfied", "violating_removals"], losers)
    _write_csv(out / "axioms_errors.csv", ["profile", "rule", "error"], rerrors)

    summary = {"profiles": len(items), "input_errors": [{"file": f, "error": e} for f, e in errors],
               "approx_threshold": str(thr), "rules": {}}
    table, curves = [], []
    for rule in config.rules:
        rows = [r for r in verdicts if r[1] == rule.value]
        cells = {}
        for label, keep in (("perfect_clones", lambda a: a == 0),
                            ("approx_clones", lambda a: 0 < a <= thr),
                            ("all_pairs", lambda a: True)):
            cells[label] = {}
            for variant in ("strong", "weak"):
                sel = [r for r in rows if r[8] == variant and keep(Fraction(r[4]))]
                cells[label][variant] = _prop(sum(1 for r in sel if r[9] == 0), len(sel))
        lrows = [r for r in losers if r[1] == rule.value]
        cells["losers"] = _prop(sum(1 for r in lrows if r[2] == 0), len(lrows))
        cells["resource_errors"] = sum(1 for r in rerrors if r[1] == rule.value)
        summary["rules"][rule.value] = cells
        table.append([
            rule.label,
            _fmt_prop(cells["perfect_clones"]["strong"]["proportion"]),
            f"{_fmt_prop(cells['approx_clones']['strong']['proportion'])} "
            f"({_fmt_prop(cells['approx_clones']['weak']['proportion'])})",
            f"{_fmt_prop(cells['all_pairs']['strong']['proportion'])} "
            f"({_fmt_prop(cells['all_pairs']['weak']['proportion'])})",
            _fmt_prop(cells["losers"]["proportion"]),
            cells["perfect_clones"]["strong"]["denominator"],
            cells["approx_clones"]["strong"]["denominator"],
            cells["all_pairs"]["strong"]["denominator"],
            cells["losers"]["denominator"],
        ])
        for label in _bucket_labels(bounds):
            sel_s = [r for r in rows if r[6] == label and r[8] == "strong"]
            sel_w = [r for r in rows if r[6] == label and r[8] == "weak"]
            sat = lambda sel: _flt(sum(r[9] for r in sel) / len(sel)) if sel else ""
            curves.append([rule.value, label, len(sel_s), sat(sel_s), sat(sel_w)])
    _write_csv(out / "axioms_table.csv",
               ["rule", "perfect_clones", "approx_clones", "all_pairs", "losers",
                "perfect_pairs", "approx_pairs", "all_pairs_count", "loser_profiles"], table)
    _write_csv(out / "axioms_alpha_curves.csv",
               ["rule", "alpha_bucket", "pairs", "strong_satisfied", "weak_satisfied"], curves)
    _write_json(out / "axioms_summary.json", summary)
    for row in table:
        print(f"{row[0]:<14} perfect {row[1]:<6} approx {row[2]:<14} all {row[3]:<14} losers {row[4]}")
    cells_total = len(items) * len(config.rules)
    if cells_total and len(rerrors) == cells_total:
        return EXIT_CAP
    return EXIT_OK


# ---------------------------------------------------------------- sample

def _spec_dict(spec: CultureSpec) -> dict:
    return {"culture": spec.culture, "m": spec.m, "n": spec.n, "seed": spec.seed,
            "contagion": spec.contagion, "dimension": str(spec.dimension)}


def cmd_sample(config: ExperimentConfig) -> int:
    out = Path(config.output)
    if config.manifest:
        manifest = json.loads(Path(config.manifest).read_text(encoding="utf-8"))
        entries = [(e["file"], CultureSpec(**e["spec"])) for e in manifest["profiles"]]
    else:
        if not config.culture:
            log.error("sample needs --culture or --manifest")
            return EXIT_INPUT
        seeds = profile_seeds(config.seed, config.count)
        entries = [(f"{config.culture}_{i:05d}.soc",
                    CultureSpec(config.culture, config.m, config.n, s, config.contagion, str(config.dimension)))
                   for i, s in enumerate(seeds)]
    try:
        out.mkdir(parents=True, exist_ok=True)
        records = []
        for fname, spec in entries:
            profile = sample(spec)
            (out / fname).write_text(serialize_profile(profile, metadata={"CULTURE": spec.culture,
                                                                          "SEED": str(spec.seed)}),
                                     encoding="utf-8", newline="\n")
            records.append({"file": fname, "spec": _spec_dict(spec), "description": spec.describe()})
        _write_json(out / "manifest.json", {"root_seed": config.seed, "profiles": records})
    except OSError as exc:
        log.error("cannot write output: %s", exc)
        return EXIT_INPUT
    print(f"wrote {len(entries)} profiles to {out}")
    return EXIT_OK


# ---------------------------------------------------------------- regress

def _suite_lines(trials: int, seed: int) -> list[tuple[bool, str]]:
    """Randomised property suites; the literal Smith-set claim is reported, not gated."""
    lines = []
    r = experiments.prop1_suite(trials, seed)
    lines.append((r["mismatches"] == 0, f"mean alpha/beta closed forms: {r['mismatches']} of {trials} profiles differ"))
    r = experiments.thm4_suite(trials, seed)
    for rule in ("irv", "ranked_pairs", "schulze"):
        s = r[rule]
        lines.append((s["violations"] == 0, f"m=3 weak independence on simple profiles ({rule}): "
                                            f"{s['violations']} violations in {s['pairs_checked']} pairs"))
    r = experiments.perfect_clone_suite(trials, seed)
    for rule in ("irv", "ranked_pairs", "schulze"):
        s = r[rule]
        lines.append((s["violations"] == 0, f"constructed perfect clones ({rule}): {s['violations']} violations"))
    r = experiments.thm5_suite(trials, seed)
    for rule in ("ranked_pairs", "schulze"):
        s = r[rule]
        lines.append((s["simple_violations"] == 0,
                      f"odd n, Smith set <= 3 ({rule}): {s['simple_violations']} violations on simple profiles, "
                      f"{s['nonsimple_violations']} on {s['nonsimple_profiles']} tied profiles (not gated)"))
    return lines


def cmd_regress(config: Optional[ExperimentConfig] = None) -> int:
    results = regress.run()
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} expectations passed")
    if config is not None and config.trials > 1:
        for ok, text in _suite_lines(config.trials, config.seed):
            print(f"[{'PASS' if ok else 'FAIL'}] {text}")
            failed += not ok
    return EXIT_REGRESSION if failed else EXIT_OK


# ---------------------------------------------------------------- plumbing

def _map(config: ExperimentConfig, fn, items):
    if config.jobs <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * config.jobs))))


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="approxclones", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("clones", "axioms", "sample", "regress"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON or YAML file with any of the options below")
        if name == "regress":
            p.add_argument("--trials", type=int, help="also run the randomised suites with this many trials")
            p.add_argument("--seed", type=int)
            continue
        p.add_argument("-i", "--input", dest="inputs", action="append", help="file glob (repeatable)")
        p.add_argument("--culture", choices=CULTURES)
        p.add_argument("-m", type=int)
        p.add_argument("-n", type=int)
        p.add_argument("--count", type=int, help="number of sampled profiles")
        p.add_argument("--contagion", type=float)
        p.add_argument("--dimension", choices=["1", "2", "3", "circle"])
        p.add_argument("--seed", type=int)
        p.add_argument("--rules", type=lambda s: [r for r in s.split(",") if r], help="comma-separated rule names")
        p.add_argument("--buckets", type=lambda s: [float(x) for x in s.split(",")], help="alpha bucket boundaries")
        p.add_argument("--approx-threshold", type=float)
        p.add_argument("--policy", choices=POLICIES)
        p.add_argument("-o", "--output")
        p.add_argument("--cap", type=int, help="explored-state cap per rule evaluation")
        p.add_argument("--jobs", type=int, help="worker processes")
        if name == "sample":
            p.add_argument("--manifest", help="regenerate the files listed in a manifest.json")
    return parser


def build_config(ns: argparse.Namespace) -> ExperimentConfig:
    values = {}
    if getattr(ns, "config", None):
        text = Path(ns.config).read_text(encoding="utf-8")
        loaded = json.loads(text) if ns.config.endswith(".json") else yaml.safe_load(text)
        values.update({k.replace("-", "_"): v for k, v in (loaded or {}).items()})
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(values) - known
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    for name in known:
        v = getattr(ns, name, None)
        if v is not None:
            values[name] = v
    if isinstance(values.get("inputs"), str):
        values["inputs"] = [values["inputs"]]
    config = ExperimentConfig(**values)
    config.validate()
    return config


COMMANDS = {"clones": cmd_clones, "axioms": cmd_axioms, "sample": cmd_sample, "regress": cmd_regress}


def main(argv=None) -> int:
    ns = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        config = build_config(ns)
        return COMMANDS[ns.command](config)
    except (DomainError, OSError, yaml.YAMLError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
