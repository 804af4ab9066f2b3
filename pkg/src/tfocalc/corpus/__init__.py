"""Proof-script fixtures for the displayed derivations, with their expected verdicts.

Each ``.prf`` file in this directory carries a header giving the displayed
end-sequent and the notation mapping used to transcribe it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources

from ..calculi import check_proof
from ..proof import ScriptParseError, StructureError, parse_script, script_to_tree


@dataclass(frozen=True)
class CorpusEntry:
    id: int
    name: str
    system: str
    files: tuple
    anchor: str
    expect: str = "checks"          # or "must-fail"
    error: str | None = None        # RuleError.kind required for must-fail
    retarget: str | None = None     # check under this system instead of the script's own

    @property
    def must_fail(self) -> bool:
        return self.expect == "must-fail"


@dataclass
class FileResult:
    file: str
    system: str
    passed: bool
    errors: list = field(default_factory=list)


@dataclass
class EntryResult:
    entry: CorpusEntry
    files: list
    seconds: float

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.files)


@dataclass
class CorpusReport:
    results: list
    seconds: float

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.results)

    def __str__(self):
        out = []
        for r in self.results:
            e = r.entry
            verdict = "PASS" if r.passed else "FAIL"
            out.append(f"{verdict} {e.id:>2} {e.name:<28} {e.system:<22} "
                       f"expect={e.expect}{'(' + e.error + ')' if e.error else ''}")
            for f in r.files:
                if not f.passed or e.must_fail:
                    for err in f.errors:
                        out.append(f"      {f.file}: {err}")
        out.append(f"{self.passed}/{len(self.results)} entries as expected "
                   f"in {self.seconds:.2f}s")
        return "\n".join(out)


ENTRIES = (
    CorpusEntry(1, "extav-provable", "GS'", ("extav.prf",), "Provability of EXTAV"),
    CorpusEntry(2, "extav-rule-derivable", "GCI", ("extav_rule_gci.prf",),
                "Derivability of (ExtAV)"),
    CorpusEntry(3, "a-intro-derivable", "GCI", ("thm2_aintro.prf",), "is derivable in GCI"),
    CorpusEntry(4, "exists-right-unrestricted", "GS", ("exists_right_unrestricted.prf",),
                "where the rightmost sequent being"),
    CorpusEntry(5, "ha-to-forall", "GT-CLASSICAL", ("ha_to_forall.prf",),
                "In one direction we have"),
    CorpusEntry(6, "forall-to-ha", "GT-CLASSICAL", ("forall_to_ha.prf",),
                "In the second direction"),
    CorpusEntry(7, "tau-left-from-ha", "GCI", ("tau_left_from_ha.prf",),
                "which, by cut with (a)"),
    CorpusEntry(8, "ext-via-t", "GT-CLASSICAL", ("ext_via_t.prf",),
                "both central principles EXT and AV are provable"),
    CorpusEntry(9, "av-via-t", "GT-CLASSICAL", ("av_via_t.prf",), "are alphabetic variants"),
    CorpusEntry(10, "converse-ext", "GT-CLASSICAL", ("converse_ext.prf",),
                "One may even prove the converse"),
    CorpusEntry(11, "iota-contradiction", "GT-CLASSICAL-UNSOUND", ("iota_contradiction.prf",),
                "we run into contradiction"),
    CorpusEntry(12, "ext-in-gsnf", "GSNF", ("ext_in_gsnf.prf",),
                "Derivability of (Ext) and (AV)"),
    CorpusEntry(13, "extax-in-gtnf", "GTNF", ("extax_gtnf.prf",),
                "axiom ExtAx since it is provable"),
    CorpusEntry(14, "identity-case-3", "GTNF'", ("gtnf_prime_case3.prf",),
                "the following proof of 3"),
    CorpusEntry(15, "leibniz-cases", "GS", ("ll_case1.prf", "ll_case2.prf", "ll_case3.prf"),
                "only troublesome cases of LL"),
    CorpusEntry(16, "iota-in-gsnf", "GSNF", ("iota_contradiction.prf",),
                "where φ is stratified", "must-fail", "rule-not-in-system", retarget="GSNF"),
    CorpusEntry(16, "russell-in-gsnf", "GSNF", ("russell_nf_mustfail.prf",),
                "where φ is stratified", "must-fail", "stratification"),
    CorpusEntry(17, "eigenvariable-violation", "GPC", ("eigen_mustfail.prf",),
                "not present in Γ, Δ and φ", "must-fail", "eigenvariable"),
)


def read(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def path(name: str):
    return resources.files(__name__).joinpath(name)


def load(name: str):
    """``(script, tree)`` for a fixture file."""
    script = parse_script(read(name))
    return script, script_to_tree(script)


def _run_file(entry: CorpusEntry, name: str) -> FileResult:
    try:
        script, tree = load(name)
    except (ScriptParseError, StructureError) as e:
        return FileResult(name, entry.system, False, [f"parse: {e}"])
    system = entry.retarget or script.system
    errors = check_proof(system, tree, script.assumptions)
    if entry.must_fail:
        passed = any(e.kind == entry.error for e in errors)
    else:
        passed = not errors and script.system == entry.system
        if script.system != entry.system:
            errors = [f"script declares {script.system}, entry expects {entry.system}"]
    return FileResult(name, system, passed, [str(e) for e in errors])


def run_entry(entry: CorpusEntry) -> EntryResult:
    t0 = time.perf_counter()
    files = [_run_file(entry, f) for f in entry.files]
    return EntryResult(entry, files, time.perf_counter() - t0)


def run_corpus(entries=ENTRIES) -> CorpusReport:
    t0 = time.perf_counter()
    results = [run_entry(e) for e in entries]
    return CorpusReport(results, time.perf_counter() - t0)


def entry(key) -> CorpusEntry:
    """Look up by id (first match) or name."""
    for e in ENTRIES:
        if e.id == key or e.name == key:
            return e
    raise KeyError(key)
