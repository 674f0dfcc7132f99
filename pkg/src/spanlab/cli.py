"""Command-line interface.

Every run (except the read-only ``report``) appends one CampaignRecord to
the store ledger and writes its outputs as artifacts under
``<store>/artifacts/<campaign_id>/``. Exit codes: 0 when the campaign
completed and found nothing wrong, 2 when a budget ran out and a resumable
checkpoint was written (PARTIAL), 1 on failures, bad usage, or when a
completed campaign found a violation (a formula/search disagreement, a
bound violation, or a refuted proved statement). Conjecture certificates
are different: REFUTED is a definitive, successful outcome there, so it
exits 0.

Configuration precedence: command-line flags, then SPANLAB_* environment
variables (SPANLAB_STORE, SPANLAB_THREADS, SPANLAB_SEED), then defaults.
The effective configuration is echoed into every CampaignRecord.

Group specs are written Z<n> or Z<n1>xZ<n2>x... (case-insensitive), e.g.
Z15, Z2xZ4.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .critical import (critical_number_case, critical_number_formula,
                       critical_number_search, verify_critical_formula)
from .extremal import (HAS_COMPLETE_SUBSET, SHAPE_EX2, SHAPE_I, SHAPE_II,
                       ExtremalEnumeration, classify, conjecture_window_check,
                       theorem_main_hypothesis)
from .fuzz import CAMPAIGNS, DEFAULT_TRIALS, run_all_campaigns
from .groups import ElementSet, parse_group_spec
from .search import CheckpointMismatch, EnumerationPaused, SearchBudget
from .store import (STATUS_COMPLETE, STATUS_FAILED, STATUS_PARTIAL,
                    CampaignRecord, CampaignStore, atomic_write_text, dump_json,
                    sha256_file, utc_stamp)

DEFAULT_STORE = Path.home() / ".spanlab"
CHECKPOINT_SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; 2 is reserved for PARTIAL here."""

    def error(self, message):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        print(f"spanlab: error: {name} must be an integer, got {raw!r}",
              file=sys.stderr)
        raise SystemExit(1) from None


def _budget_from_args(args) -> SearchBudget:
    b = SearchBudget()
    if getattr(args, "max_nodes", None) is not None:
        b.max_nodes = args.max_nodes
    if getattr(args, "max_seconds", None) is not None:
        b.max_seconds = args.max_seconds
    if getattr(args, "max_candidates", None) is not None:
        b.max_candidates = args.max_candidates
    if getattr(args, "max_exact_order", None) is not None:
        b.max_exact_order = args.max_exact_order
    if getattr(args, "extended", False):
        b.extended = True
    return b


def _config_echo(args, keys: list[str]) -> dict:
    out = {}
    for key in keys:
        val = getattr(args, key, None)
        if isinstance(val, Path):
            val = str(val)
        out[key.replace("_", "-")] = val
    out["store"] = str(args.store)
    return out


def _normalized_command(name: str, config: dict) -> str:
    parts = [name]
    for key in sorted(config):
        val = config[key]
        if val is None or val is False:
            continue
        if val is True:
            parts.append(f"--{key}")
        else:
            parts.append(f"--{key}={val}")
    return " ".join(parts)


class _Run:
    """One campaign: id, ledger record, artifact registration, final print."""

    def __init__(self, store: CampaignStore, name: str, group: str | None,
                 config: dict):
        self.store = store
        self.name = name
        self.campaign_id = store.new_campaign_id(name)
        self.record = CampaignRecord(
            campaign_id=self.campaign_id,
            command=_normalized_command(name, config),
            group=group,
            status=STATUS_FAILED,
            started=utc_stamp(),
            finished="",
            config=config,
        )

    @property
    def dir(self) -> Path:
        return self.store.artifact_dir(self.campaign_id)

    def artifact(self, name: str, obj) -> Path:
        path = self.store.write_artifact(self.campaign_id, name, obj)
        self.register(name, path)
        return path

    def register(self, name: str, path: Path) -> None:
        self.record.artifacts[name] = str(path)
        if path.exists():
            self.record.checksums[name] = sha256_file(path)

    def finish(self, status: str, summary: dict, lines: list[str], code: int) -> int:
        self.record.status = status
        self.record.finished = utc_stamp()
        self.record.summary = summary
        self.store.append(self.record)
        for line in lines:
            print(line)
        print(f"campaign {self.campaign_id}: {status}")
        return code

    def fail(self, exc: BaseException) -> int:
        msg = f"{type(exc).__name__}: {exc}"
        print(f"error: {exc}", file=sys.stderr)
        return self.finish(STATUS_FAILED, {"error": msg}, [], 1)


# -- checkpoint plumbing -----------------------------------------------------------


def _write_checkpoint(path: Path, command: str, records_path: Path | None,
                      state: dict) -> None:
    atomic_write_text(path, dump_json({
        "schema": CHECKPOINT_SCHEMA,
        "command": command,
        "records": str(records_path) if records_path else None,
        "state": state,
    }, pretty=True))


def _load_checkpoint(path: Path, command: str) -> dict:
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise CheckpointMismatch(f"cannot read checkpoint {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CheckpointMismatch(
            f"corrupt checkpoint {path}: {exc.msg} at line {exc.lineno} "
            f"column {exc.colno}") from None
    if not isinstance(data, dict) or "state" not in data:
        raise CheckpointMismatch(f"corrupt checkpoint {path}: missing 'state'")
    if data.get("command") != command:
        raise CheckpointMismatch(
            f"checkpoint {path} was written by {data.get('command')!r}, "
            f"not {command!r}")
    return data


def _prior_lines(ck: dict, emitted: int) -> list[str]:
    """Recover the first `emitted` record lines written before the checkpoint."""
    if emitted == 0:
        return []
    recorded = ck.get("records")
    if not recorded:
        raise CheckpointMismatch("checkpoint names no records file to resume from")
    final = Path(recorded)
    partial = final.with_name(final.name + ".partial")
    source = partial if partial.exists() else final if final.exists() else None
    if source is None:
        raise CheckpointMismatch(
            f"resume needs {partial} (or {final}) from the interrupted run")
    lines = [ln for ln in source.read_text().splitlines() if ln.strip()]
    if len(lines) < emitted:
        raise CheckpointMismatch(
            f"{source} holds {len(lines)} records but the checkpoint expects "
            f">= {emitted}; refusing to resume from inconsistent output")
    return lines[:emitted]


def _stream_records(enum: ExtremalEnumeration, records_final: Path,
                    ck_path: Path, command: str, checkpoint_every: int,
                    prior: list[str], collect) -> tuple[str, dict | None]:
    """Drive an enumeration, writing one JSON line per record.

    Output goes to <records_final>.partial and is atomically renamed on
    completion; the checkpoint is rewritten every `checkpoint_every`
    records, always after the matching lines are flushed, so the pair
    (partial file, checkpoint) is never ahead of itself.
    """
    partial = records_final.with_name(records_final.name + ".partial")
    partial.parent.mkdir(parents=True, exist_ok=True)
    written = 0
    with open(partial, "w", encoding="utf-8") as f:
        for line in prior:
            f.write(line + "\n")
        f.flush()
        try:
            for rec in enum.records():
                d = rec.to_dict()
                f.write(dump_json(d) + "\n")
                written += 1
                collect(d)
                if checkpoint_every and written % checkpoint_every == 0:
                    f.flush()
                    _write_checkpoint(ck_path, command, records_final,
                                      enum.state())
        except (EnumerationPaused, KeyboardInterrupt) as stop:
            f.flush()
            state = stop.state if isinstance(stop, EnumerationPaused) else enum.state()
            _write_checkpoint(ck_path, command, records_final, state)
            return STATUS_PARTIAL, state
        f.flush()
    os.replace(partial, records_final)
    _write_checkpoint(ck_path, command, records_final, enum.state())
    return STATUS_COMPLETE, None


# -- subcommands -------------------------------------------------------------------


def cmd_cr(args, store: CampaignStore) -> int:
    config = _config_echo(args, ["group", "mode", "reduce_orbits", "max_nodes",
                                 "max_seconds", "max_exact_order", "extended"])
    run = _Run(store, "cr", args.group, config)
    try:
        group = parse_group_spec(args.group)
        budget = _budget_from_args(args)
        formula = critical_number_formula(group)
        case = critical_number_case(group)
        result = {"group": group.spec_string, "order": group.order,
                  "formula": formula, "case": case, "search": None,
                  "agree": None}
        lines = []
        if args.mode in ("both", "formula"):
            lines.append(f"cr({group.spec_string}) = {formula} by formula "
                         f"(case {case})")
        status, code = STATUS_COMPLETE, 0
        if args.mode in ("both", "search"):
            out = critical_number_search(group, budget,
                                         reduce_orbits=args.reduce_orbits)
            result["search"] = out.to_dict()
            if out.status == "complete":
                result["agree"] = out.value == formula
                lines.append(
                    f"search: cr = {out.value}, max non-spanning witness "
                    f"{list(out.witness)} ({out.nodes} nodes)")
                if out.value != formula:
                    lines.append(f"DISAGREEMENT: formula {formula} (case {case}) "
                                 f"!= searched {out.value}")
                    code = 1
                else:
                    lines.append("formula and exhaustive search agree")
            elif out.status == "skipped":
                lines.append(
                    f"search skipped: order {group.order} above the exact-search "
                    f"cap ({budget.max_exact_order}); pass --extended or raise "
                    f"--max-exact-order to force it")
            else:
                lines.append("search ran out of budget before certifying")
                status, code = STATUS_PARTIAL, 2
        run.artifact("cr.json", result)
        return run.finish(status, {"formula": formula, "case": case,
                                   "search": result["search"] and
                                   result["search"]["status"],
                                   "agree": result["agree"]}, lines, code)
    except Exception as exc:  # noqa: BLE001 - every failure must land in the ledger
        return run.fail(exc)


def cmd_verify_theorem_a(args, store: CampaignStore) -> int:
    config = _config_echo(args, ["max_order", "reduce_orbits", "max_nodes",
                                 "max_seconds"])
    run = _Run(store, "verify-theorem-a", None, config)
    try:
        budget = _budget_from_args(args)
        budget.max_exact_order = args.max_order
        table = verify_critical_formula(args.max_order, budget,
                                        reduce_orbits=args.reduce_orbits)
        run.artifact("table.json", table.to_dict())
        md = render_critical_table(table.to_dict(), "markdown")
        md_path = run.dir / "table.md"
        atomic_write_text(md_path, md)
        run.register("table.md", md_path)
        complete_rows = [r for r in table.rows if r.status == "complete"]
        pending = [r for r in table.rows if r.status == "budget_exceeded"]
        bad = table.disagreements
        lines = [f"checked {len(table.rows)} groups of order 3..{args.max_order}: "
                 f"{len(complete_rows)} searched, {len(bad)} disagreements"]
        for r in bad:
            lines.append(f"  MISMATCH {r.spec}: formula {r.formula}, "
                         f"search {r.searched}")
        if bad:
            status, code = STATUS_COMPLETE, 1
        elif pending:
            status, code = STATUS_PARTIAL, 2
            lines.append(f"{len(pending)} groups ran out of budget")
        else:
            status, code = STATUS_COMPLETE, 0
            lines.append("formula matches exhaustive search on every group")
        return run.finish(status, {"groups": len(table.rows),
                                   "disagreements": len(bad),
                                   "pending": len(pending)}, lines, code)
    except Exception as exc:  # noqa: BLE001
        return run.fail(exc)


def _resume_setup(args, run: _Run, command: str, group_spec: str):
    """Returns (checkpoint_state_or_None, prior_lines, inherited_records).

    `inherited_records` is the output path recorded in the checkpoint, so
    a bare `--resume <ck>` keeps appending to the interrupted run's file
    instead of starting a fresh one in the new campaign's directory.
    """
    if not args.resume:
        return None, [], None
    ck = _load_checkpoint(Path(args.resume), command)
    state = ck["state"]
    got = state.get("group")
    if got != group_spec:
        raise CheckpointMismatch(
            f"checkpoint {args.resume} is for group {got!r}, this run is for "
            f"{group_spec!r}")
    inherited = Path(ck["records"]) if ck.get("records") else None
    return state, _prior_lines(ck, int(state.get("emitted", 0))), inherited


def cmd_enumerate(args, store: CampaignStore) -> int:
    config = _config_echo(args, ["group", "out", "orbit_dedup", "extended",
                                 "threads", "max_nodes", "max_seconds",
                                 "max_candidates", "checkpoint_every", "resume"])
    run = _Run(store, "enumerate-extremal", args.group, config)
    try:
        group = parse_group_spec(args.group)
        budget = _budget_from_args(args)
        state, prior, inherited = _resume_setup(args, run, "enumerate-extremal",
                                                group.spec_string)
        if state is not None and state.get("done"):
            return run.finish(STATUS_COMPLETE,
                              {"resumed": True, "records": state.get("emitted", 0)},
                              ["checkpoint already marks this enumeration "
                               "COMPLETE; nothing to do"], 0)
        enum = ExtremalEnumeration(group, budget, orbit_dedup=args.orbit_dedup,
                                   checkpoint=state, threads=args.threads)
        if args.out:
            out_path = Path(args.out)
        else:
            out_path = inherited or run.dir / "records.jsonl"
        if args.checkpoint:
            ck_path = Path(args.checkpoint)
        elif args.resume:
            ck_path = Path(args.resume)
        else:
            ck_path = run.dir / "checkpoint.json"
        tag_counts: dict[str, int] = {}

        def collect(d: dict) -> None:
            for tag in d["tags"]:
                tag_counts[tag] = tag_counts.get(tag, 0) + 1

        status, _ = _stream_records(enum, out_path, ck_path, "enumerate-extremal",
                                    args.checkpoint_every, prior, collect)
        for line in prior:
            collect(json.loads(line))
        run.register("checkpoint", ck_path)
        total = enum.stats.emitted
        lines = [f"{group.spec_string}: {total} extremal records "
                 f"(size {enum.k}, mode {enum.mode}, "
                 f"orbit_dedup {str(enum.orbit_dedup).lower()})"]
        if status == STATUS_COMPLETE:
            run.register("records", out_path)
            lines.append(f"records written to {out_path}")
            for tag in sorted(tag_counts):
                lines.append(f"  {tag}: {tag_counts[tag]}")
            code = 0
        else:
            partial = out_path.with_name(out_path.name + ".partial")
            run.register("records.partial", partial)
            lines.append(f"budget exhausted; resume with --resume {ck_path}")
            code = 2
        return run.finish(status, {"records": total, "mode": enum.mode,
                                   "orbit_dedup": enum.orbit_dedup,
                                   "tags": tag_counts, "nodes": enum.stats.nodes},
                          lines, code)
    except Exception as exc:  # noqa: BLE001
        return run.fail(exc)


def cmd_classify(args, store: CampaignStore) -> int:
    config = _config_echo(args, ["group", "set"])
    run = _Run(store, "classify", args.group, config)
    try:
        group = parse_group_spec(args.group)
        try:
            indices = [int(part) for part in args.set.replace(" ", "").split(",") if part]
        except ValueError:
            raise ValueError(f"--set must be comma-separated indices, got {args.set!r}")
        a = ElementSet.from_indices(group, indices)
        record = classify(a)
        d = record.to_dict()
        run.artifact("record.json", d)
        lines = [dump_json(d, pretty=True).rstrip()]
        return run.finish(STATUS_COMPLETE, {"tags": list(record.tags)}, lines, 0)
    except Exception as exc:  # noqa: BLE001
        return run.fail(exc)


def cmd_conjecture(args, store: CampaignStore) -> int:
    config = _config_echo(args, ["which", "p", "q", "extended", "threads",
                                 "max_nodes", "max_seconds", "checkpoint_every",
                                 "resume"])
    run = _Run(store, "conjecture", f"Z{args.p * args.q}", config)
    try:
        conjecture_window_check(args.which, args.p, args.q)
        required = HAS_COMPLETE_SUBSET if args.which == 1 else SHAPE_EX2
        prop = ("every extremal set contains a complete subset" if args.which == 1
                else "every extremal set is a symmetric generator interval")
        group = parse_group_spec(f"Z{args.p * args.q}")
        state, prior, inherited = _resume_setup(args, run, "conjecture",
                                                group.spec_string)
        budget = _budget_from_args(args)
        enum = ExtremalEnumeration(group, budget, orbit_dedup=False,
                                   checkpoint=state, threads=args.threads)
        records_path = inherited or run.dir / "records.jsonl"
        ck_path = Path(args.resume) if args.resume else run.dir / "checkpoint.json"
        counts = {"total": 0, "failing": 0}
        counterexamples: list[dict] = []

        def collect(d: dict) -> None:
            counts["total"] += 1
            if required not in d["tags"]:
                counts["failing"] += 1
                if len(counterexamples) < 25:
                    counterexamples.append(d)

        for line in prior:
            collect(json.loads(line))
        status, _ = _stream_records(enum, records_path, ck_path, "conjecture",
                                    args.checkpoint_every, prior, collect)
        outcome = (STATUS_PARTIAL if status == STATUS_PARTIAL
                   else "VERIFIED" if counts["failing"] == 0 else "REFUTED")
        cert = {
            "which": args.which, "p": args.p, "q": args.q,
            "group": group.spec_string,
            "property": prop,
            "outcome": outcome,
            "extremal_count": counts["total"],
            "failing_count": counts["failing"],
            "counterexamples": counterexamples,
            "orbit_dedup": False,
            "records": str(records_path),
        }
        run.artifact("cert.json", cert)
        run.register("checkpoint", ck_path)
        lines = [f"conjecture {args.which} at (p, q) = ({args.p}, {args.q}) "
                 f"over {group.spec_string}: {outcome}",
                 f"extremal sets: {counts['total']}, failing: {counts['failing']}"]
        if status == STATUS_COMPLETE:
            run.register("records", records_path)
            code = 0
        else:
            run.register("records.partial",
                         records_path.with_name(records_path.name + ".partial"))
            lines.append(f"budget exhausted; resume with --resume {ck_path}")
            code = 2
        return run.finish(status, {"outcome": outcome, **counts}, lines, code)
    except Exception as exc:  # noqa: BLE001
        return run.fail(exc)


def cmd_verify_main(args, store: CampaignStore) -> int:
    config = _config_echo(args, ["group", "orbit_dedup", "extended", "threads",
                                 "max_nodes", "max_seconds", "checkpoint_every",
                                 "resume"])
    run = _Run(store, "verify-main", args.group, config)
    try:
        group = parse_group_spec(args.group)
        case = theorem_main_hypothesis(group)
        required = SHAPE_I if case == "even" else SHAPE_II
        state, prior, inherited = _resume_setup(args, run, "verify-main",
                                                group.spec_string)
        budget = _budget_from_args(args)
        enum = ExtremalEnumeration(group, budget, orbit_dedup=args.orbit_dedup,
                                   checkpoint=state, threads=args.threads)
        records_path = inherited or run.dir / "records.jsonl"
        ck_path = Path(args.resume) if args.resume else run.dir / "checkpoint.json"
        counts = {"total": 0, "violations": 0}
        tag_counts: dict[str, int] = {}
        violating: list[dict] = []

        def collect(d: dict) -> None:
            counts["total"] += 1
            for tag in d["tags"]:
                tag_counts[tag] = tag_counts.get(tag, 0) + 1
            if required not in d["tags"]:
                counts["violations"] += 1
                if len(violating) < 25:
                    violating.append(d)

        for line in prior:
            collect(json.loads(line))
        status, _ = _stream_records(enum, records_path, ck_path, "verify-main",
                                    args.checkpoint_every, prior, collect)
        outcome = (STATUS_PARTIAL if status == STATUS_PARTIAL
                   else "VERIFIED" if counts["violations"] == 0 else "REFUTED")
        report = {
            "group": group.spec_string,
            "case": case,
            "required_tag": required,
            "outcome": outcome,
            "extremal_count": counts["total"],
            "tag_counts": dict(sorted(tag_counts.items())),
            "violations": violating,
            "orbit_dedup": enum.orbit_dedup,
            "records": str(records_path),
        }
        run.artifact("theorem.json", report)
        run.register("checkpoint", ck_path)
        lines = [f"{group.spec_string} ({case} case, requires {required}): {outcome}",
                 f"extremal sets: {counts['total']}, violations: "
                 f"{counts['violations']}"]
        if status == STATUS_COMPLETE:
            run.register("records", records_path)
            code = 0 if outcome == "VERIFIED" else 1
        else:
            run.register("records.partial",
                         records_path.with_name(records_path.name + ".partial"))
            lines.append(f"budget exhausted; resume with --resume {ck_path}")
            code = 2
        return run.finish(status, {"outcome": outcome, **counts,
                                   "tags": tag_counts}, lines, code)
    except Exception as exc:  # noqa: BLE001
        return run.fail(exc)


def cmd_fuzz(args, store: CampaignStore) -> int:
    config = _config_echo(args, ["lemma", "trials", "seed", "exhaustive"])
    run = _Run(store, "fuzz-bounds", None, config)
    try:
        lemmas = args.lemma or list(CAMPAIGNS)
        reports = run_all_campaigns(args.trials, args.seed, lemmas,
                                    exhaustive=args.exhaustive)
        run.artifact("fuzz.json", [r.to_dict() for r in reports])
        dirty = [r for r in reports if not r.clean]
        lines = []
        for r in reports:
            mark = "ok" if r.clean else "VIOLATIONS"
            extra = ""
            if r.exhaustive:
                extra = f", exhaustive {r.exhaustive['violations']} violations"
            lines.append(f"  {r.lemma}: trials {r.trials}, applied {r.applied}, "
                         f"violations {r.violations}{extra} [{mark}]")
        lines.append(f"{len(reports)} campaigns, {len(dirty)} with violations")
        code = 1 if dirty else 0
        return run.finish(STATUS_COMPLETE,
                          {"campaigns": len(reports), "dirty": len(dirty),
                           "seed": args.seed, "trials": args.trials},
                          lines, code)
    except Exception as exc:  # noqa: BLE001
        return run.fail(exc)


# -- report rendering ---------------------------------------------------------------


def _table(headers: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "markdown":
        out = ["| " + " | ".join(headers) + " |",
               "|" + "|".join("---" for _ in headers) + "|"]
        out += ["| " + " | ".join(row) + " |" for row in rows]
        return "\n".join(out) + "\n"
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    fmt_row = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt_row.format(*headers), fmt_row.format(*("-" * w for w in widths))]
    out += [fmt_row.format(*row) for row in rows]
    return "\n".join(out) + "\n"


def render_critical_table(table: dict, fmt: str) -> str:
    rows = []
    for r in table["rows"]:
        rows.append([r["spec"], str(r["order"]), str(r["formula"]),
                     str(r["searched"]) if r["searched"] is not None else "-",
                     {True: "yes", False: "NO", None: "-"}[r["agree"]],
                     str(r["witness"]) if r["witness"] is not None else "-",
                     r["status"]])
    head = ["group", "order", "formula", "searched", "agree", "witness", "status"]
    title = (f"critical numbers up to order {table['max_order']}: "
             f"{'all agree' if table['all_agree'] else 'DISAGREEMENTS PRESENT'}\n\n")
    return title + _table(head, rows, fmt)


def _render_fuzz(reports: list[dict], fmt: str) -> str:
    rows = [[r["lemma"], str(r["trials"]), str(r["applied"]),
             str(r["violations"]),
             str(r["exhaustive"]["violations"]) if r.get("exhaustive") else "-",
             "yes" if r["clean"] else "NO"]
            for r in reports]
    return _table(["bound", "trials", "applied", "violations",
                   "exhaustive-violations", "clean"], rows, fmt)


def _render_records_file(path: Path, fmt: str) -> str:
    tag_counts: dict[str, int] = {}
    total = 0
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            total += 1
            for tag in json.loads(line)["tags"]:
                tag_counts[tag] = tag_counts.get(tag, 0) + 1
    rows = [[tag, str(n)] for tag, n in sorted(tag_counts.items())]
    return (f"{total} records\n"
            + _table(["tag", "count"], rows, fmt))


def cmd_report(args, store: CampaignStore) -> int:
    fmt = args.format
    if not args.campaign:
        records = store.records()
        if not records:
            print(f"no campaigns in {store.root}")
            return 0
        rows = [[r["campaign_id"], r["status"], r.get("group") or "-",
                 r["command"][:60]] for r in records]
        print(_table(["campaign", "status", "group", "command"], rows, fmt),
              end="")
        return 0
    rec = store.find(args.campaign)
    if rec is None:
        print(f"error: campaign {args.campaign!r} not found in {store.root}",
              file=sys.stderr)
        return 1
    print(f"campaign {rec['campaign_id']}")
    print(f"  command:  {rec['command']}")
    print(f"  status:   {rec['status']}")
    print(f"  started:  {rec['started']}")
    print(f"  finished: {rec['finished']}")
    if rec.get("summary"):
        print(f"  summary:  {dump_json(rec['summary'])}")
    print()
    for name, raw_path in sorted(rec.get("artifacts", {}).items()):
        path = Path(raw_path)
        if not path.exists():
            print(f"[{name}] missing: {path}")
            continue
        print(f"[{name}] {path}")
        try:
            if name == "table.json":
                print(render_critical_table(json.loads(path.read_text()), fmt))
            elif name == "fuzz.json":
                print(_render_fuzz(json.loads(path.read_text()), fmt))
            elif name.startswith("records"):
                print(_render_records_file(path, fmt))
            elif path.suffix == ".json":
                print(dump_json(json.loads(path.read_text()), pretty=True))
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            print(f"  (unrenderable: {exc})")
    return 0


# -- parser ------------------------------------------------------------------------


def _add_budget_flags(p: _Parser, exact_order: bool = False) -> None:
    p.add_argument("--max-nodes", type=int, default=None, metavar="N",
                   help="stop after N search nodes (writes a checkpoint)")
    p.add_argument("--max-seconds", type=float, default=None, metavar="S",
                   help="stop after S seconds (writes a checkpoint)")
    if exact_order:
        p.add_argument("--max-exact-order", type=int, default=None, metavar="N",
                       help="largest group order searched exhaustively "
                            "(default 24; larger orders are skipped)")
    p.add_argument("--extended", action="store_true",
                   help="allow long-running searches (missed-target engine)")


def _add_enum_flags(p: _Parser) -> None:
    p.add_argument("--orbit-dedup", action=argparse.BooleanOptionalAction,
                   default=None,
                   help="emit one representative per unit-scaling orbit "
                        "(default: on for extended runs on cyclic groups, "
                        "off otherwise)")
    p.add_argument("--threads", type=int,
                   default=_env_int("SPANLAB_THREADS", 1),
                   help="worker processes for extended enumeration "
                        "(default SPANLAB_THREADS or 1)")
    p.add_argument("--resume", metavar="CHECKPOINT",
                   help="resume from a checkpoint.json written by an "
                        "interrupted run")
    p.add_argument("--checkpoint-every", type=int, default=1000, metavar="N",
                   help="rewrite the checkpoint every N records (default 1000)")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="spanlab",
        description="Subset-sum spanning laboratory for finite abelian groups: "
                    "critical numbers, extremal-set enumeration and "
                    "classification, conjecture certificates, and bound fuzzing.",
        epilog="Group specs: Z<n> for cyclic, Z<n1>xZ<n2>x... for products "
               "(case-insensitive), e.g. Z15, Z2xZ4, Z3xZ3. Exit codes: "
               "0 complete, 2 partial (checkpoint written), 1 failure or "
               "violation found.")
    parser.add_argument("--store", type=Path,
                        default=Path(os.environ.get("SPANLAB_STORE",
                                                    str(DEFAULT_STORE))),
                        help="campaign store directory "
                             "(default SPANLAB_STORE or ~/.spanlab)")
    sub = parser.add_subparsers(dest="subcommand", required=True,
                                metavar="COMMAND")

    p = sub.add_parser("cr", help="critical number: closed formula plus "
                                  "exhaustive cross-check")
    p.add_argument("--group", required=True, help="group spec, e.g. Z15")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--formula", dest="mode", action="store_const",
                      const="formula", help="closed form only")
    mode.add_argument("--search", dest="mode", action="store_const",
                      const="search", help="certified exhaustive search only")
    mode.add_argument("--both", dest="mode", action="store_const", const="both",
                      help="formula plus search with agreement check (default)")
    p.set_defaults(mode="both")
    p.add_argument("--reduce-orbits", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="search one avoided target per unit orbit (sound for "
                        "cyclic groups; default on)")
    _add_budget_flags(p, exact_order=True)
    p.set_defaults(func=cmd_cr)

    p = sub.add_parser("verify-theorem-a",
                       help="formula vs exhaustive search on every abelian "
                            "group up to an order cap")
    p.add_argument("--max-order", type=int, default=24,
                   help="largest group order to verify (default 24)")
    p.add_argument("--reduce-orbits", action=argparse.BooleanOptionalAction,
                   default=True)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_verify_theorem_a)

    p = sub.add_parser("enumerate-extremal",
                       help="stream every extremal non-spanning set, classified")
    p.add_argument("--group", required=True)
    p.add_argument("--out", help="records file (default: inside the campaign "
                                 "artifact directory)")
    p.add_argument("--checkpoint", help="checkpoint file location (default: "
                                        "inside the campaign artifact directory)")
    p.add_argument("--max-candidates", type=int, default=None, metavar="N",
                   help="largest C(|G|-1, k) the direct engine will walk "
                        "(default 5000000)")
    _add_budget_flags(p)
    _add_enum_flags(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="classify one set against the "
                                        "extremal shapes")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True, metavar="I,J,...",
                   help="comma-separated element indices, e.g. 1,2,3,12,13,14")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("conjecture",
                       help="enumerate all extremal sets of Z_pq and emit a "
                            "VERIFIED/REFUTED certificate")
    p.add_argument("--which", type=int, required=True, choices=(1, 2))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_budget_flags(p)
    _add_enum_flags(p)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("verify-main",
                       help="check the structure theorem's shape claim on "
                            "every extremal set")
    p.add_argument("--group", required=True)
    _add_budget_flags(p)
    _add_enum_flags(p)
    p.set_defaults(func=cmd_verify_main)

    p = sub.add_parser("fuzz-bounds",
                       help="randomized + exhaustive campaigns over the "
                            "bound checks")
    p.add_argument("--lemma", action="append", choices=sorted(CAMPAIGNS),
                   help="bound to fuzz (repeatable; default: all)")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=_env_int("SPANLAB_SEED", 0),
                   help="campaign seed (default SPANLAB_SEED or 0)")
    p.add_argument("--exhaustive", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="include the exhaustive sub-suites (default on)")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("report", help="render stored campaigns")
    p.add_argument("--campaign", help="campaign id (default: list campaigns)")
    p.add_argument("--format", choices=("text", "markdown"), default="text")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    store = CampaignStore(args.store)
    try:
        return args.func(args, store)
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
