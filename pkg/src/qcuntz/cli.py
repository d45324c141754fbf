"""Command-line front end: normalize/act/coact/theta/sq plus check suites.

Every suite runs decidable exact-arithmetic checks and emits a
machine-readable report: case ids, parameters, pass/fail, a witness when a
case fails, and wall time per case.  Exit status: 0 all pass, 1 any fail,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field

from . import braid as braid_mod
from . import fock, qmatrix
from .cuntz import (
    CuntzElement,
    Word,
    cuntz_compact,
    cuntz_equal,
    cuntz_is_zero,
    cuntz_level,
    cuntz_mul,
    cuntz_star,
    to_json_dict,
)
from .parse import ParseError, parse_element, parse_uq_word
from .qscalar import ONE, QScalar
from .uq import LieData, act_word, counit, is_fixed, rep_relations_check


@dataclass
class CaseResult:
    case_id: str
    params: dict
    passed: bool
    witness: str | None
    wall_time_ms: float


@dataclass
class CheckReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "cases": [
                {
                    "case_id": c.case_id,
                    "params": c.params,
                    "passed": c.passed,
                    "witness": c.witness,
                    "wall_time_ms": round(c.wall_time_ms, 3),
                }
                for c in self.cases
            ],
        }

    def render_text(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.cases:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.case_id} ({c.wall_time_ms:.0f} ms)")
            if not c.passed and c.witness:
                lines.append(f"         witness: {c.witness}")
        return "\n".join(lines)


def _run_case(report: CheckReport, case_id: str, params: dict, fn) -> None:
    t0 = time.perf_counter()
    try:
        passed, witness = fn()
    except Exception as exc:  # a crashed check is a failing check, with the reason
        passed, witness = False, f"exception: {exc!r}"
    dt = (time.perf_counter() - t0) * 1000.0
    report.cases.append(CaseResult(case_id, params, passed, witness, dt))


# ---------------------------------------------------------------------------
# corpora


def random_element(d: int, rng: random.Random, max_half: int = 2, n_terms: int = 3) -> CuntzElement:
    terms = {}
    for _ in range(n_terms):
        mu = tuple(rng.randint(1, d) for _ in range(rng.randint(0, max_half)))
        nu = tuple(rng.randint(1, d) for _ in range(rng.randint(0, max_half)))
        coeff = QScalar(rng.randint(-3, 3)) + QScalar.q_power(rng.randint(-2, 2))
        if coeff:
            terms[Word(mu, nu)] = coeff
    x = CuntzElement(d, terms)
    return x


def default_corpus(d: int) -> list[tuple[str, CuntzElement, bool]]:
    """(name, element, expected fixed/co-fixed) triples."""
    th1 = braid_mod.theta(d, 1).element
    th2 = braid_mod.theta(d, 2).element
    sq = braid_mod.q_antisymmetric(d)
    return [
        ("one", CuntzElement.unit(d), True),
        ("s1", CuntzElement.gen(d, 1), False),
        ("theta1", th1, True),
        ("theta2", th2, True),
        ("Sq", sq, True),
        ("theta1*Sq", cuntz_mul(th1, sq), True),
        ("theta1^2", cuntz_mul(th1, th1), True),
    ]


# ---------------------------------------------------------------------------
# suites


def _suite_relations(ds, params) -> CheckReport:
    rep = CheckReport("relations")
    for d in ds:
        for depth in (1, 2):
            def fn(d=d, depth=depth):
                results = rep_relations_check(LieData(d), depth)
                bad = [name for name, ok in results if not ok]
                return not bad, ("; ".join(bad) if bad else None)

            _run_case(rep, f"relations-n{d}-depth{depth}", {"n": d, "depth": depth}, fn)
    return rep


def _suite_ybe(ds, params) -> CheckReport:
    rep = CheckReport("ybe")
    for d in ds:
        _run_case(rep, f"ybe-d{d}", {"d": d}, lambda d=d: (braid_mod.ybe_check(d), None))

        def perturbed(d=d):
            r = braid_mod.rmatrix(d)
            r.mat.set(0, 1, r.mat[(0, 1)] + ONE)
            holds = braid_mod.ybe_check(d, r)
            return (not holds), ("perturbed R passed the identity" if holds else None)

        _run_case(rep, f"ybe-falsifiability-d{d}", {"d": d}, perturbed)
    return rep


def _suite_braid(ds, params) -> CheckReport:
    rep = CheckReport("braid")
    strands = params.get("strands") or 3
    for d in ds:
        th = {i: braid_mod.theta(d, i).element for i in range(1, strands + 1)}
        for i in range(1, strands):
            def adjacent(d=d, i=i, th=th):
                lhs = cuntz_mul(cuntz_mul(th[i], th[i + 1]), th[i])
                rhs = cuntz_mul(cuntz_mul(th[i + 1], th[i]), th[i + 1])
                ok = cuntz_equal(lhs, rhs)
                return ok, (None if ok else json_witness(lhs - rhs))

            _run_case(
                rep, f"braid-adjacent-d{d}-i{i}", {"d": d, "i": i}, adjacent
            )
        for i in range(1, strands + 1):
            for j in range(i + 2, strands + 1):
                def distant(d=d, i=i, j=j, th=th):
                    lhs = cuntz_mul(th[i], th[j])
                    rhs = cuntz_mul(th[j], th[i])
                    ok = cuntz_equal(lhs, rhs)
                    return ok, (None if ok else json_witness(lhs - rhs))

                _run_case(
                    rep, f"braid-distant-d{d}-i{i}-j{j}", {"d": d, "i": i, "j": j}, distant
                )
    return rep


def _suite_fixed(ds, params) -> CheckReport:
    rep = CheckReport("fixed")
    for d in ds:
        g = LieData(d)
        for name, el, expect in default_corpus(d):
            def fn(g=g, el=el, expect=expect):
                got = is_fixed(g, el)
                ok = got == expect
                return ok, (None if ok else f"is_fixed={got}, expected {expect}")

            _run_case(rep, f"fixed-d{d}-{name}", {"d": d, "element": name}, fn)
    return rep


def _suite_cofixed(ds, params) -> CheckReport:
    rep = CheckReport("cofixed")
    for d in ds:
        for name, el, expect in default_corpus(d):
            def fn(el=el, expect=expect):
                got = qmatrix.is_cofixed(el)
                ok = got == expect
                return ok, (None if ok else f"is_cofixed={got}, expected {expect}")

            _run_case(rep, f"cofixed-d{d}-{name}", {"d": d, "element": name}, fn)
    return rep


def _suite_fixed_eq_cofixed(ds, params) -> CheckReport:
    rep = CheckReport("fixed-eq-cofixed")
    n_random = params.get("corpus") or 50
    seed = params.get("seed") or 20240801
    for d in ds:
        g = LieData(d)
        rng = random.Random(seed + d)
        pool = [(name, el) for name, el, _ in default_corpus(d)]
        pool += [(f"random{a}", random_element(d, rng)) for a in range(n_random)]
        for name, el in pool:
            def fn(g=g, el=el):
                f, c = is_fixed(g, el), qmatrix.is_cofixed(el)
                ok = f == c
                return ok, (None if ok else f"is_fixed={f} but is_cofixed={c}")

            _run_case(rep, f"fixed-eq-cofixed-d{d}-{name}", {"d": d, "element": name}, fn)
    return rep


def _suite_duality(ds, params) -> CheckReport:
    rep = CheckReport("duality")
    seed = params.get("seed") or 20240802
    n_random = params.get("corpus") or 50
    for d in ds:
        g = LieData(d)
        wordlen = params.get("wordlen") or (3 if d == 2 else 2)
        rng = random.Random(seed + d)
        pool = [(name, el) for name, el, _ in default_corpus(d)[:4]]
        pool += [(f"random{a}", random_element(d, rng)) for a in range(n_random)]
        words = qmatrix.all_uq_words(d, wordlen)

        def fn(g=g, pool=pool, words=words):
            for name, el in pool:
                for w in words:
                    lhs = qmatrix.dual_act(w, el)
                    rhs = act_word(g, w, el)
                    if not cuntz_equal(lhs, rhs):
                        wtxt = " ".join(str(x) for x in w) or "1"
                        return False, f"element {name}, word {wtxt}: {json_witness(lhs - rhs)}"
            return True, None

        _run_case(
            rep,
            f"duality-d{d}-wordlen{wordlen}",
            {"d": d, "wordlen": wordlen, "corpus": len(pool)},
            fn,
        )
    return rep


def _suite_frt_confluence(ds, params) -> CheckReport:
    rep = CheckReport("frt-confluence")
    n_triples = params.get("triples") or 100
    seed = params.get("seed") or 20240803
    for d in ds:
        def build(d=d):
            rs = qmatrix.frt_rules(d)
            bad = rs.unresolved_overlaps()
            return not bad, (f"{len(bad)} unresolved overlaps" if bad else None)

        _run_case(rep, f"frt-overlaps-d{d}", {"d": d}, build)

        def assoc(d=d):
            rng = random.Random(seed + d)
            gens = list(range(d * d))
            for _ in range(n_triples):
                els = []
                for _ in range(3):
                    t = {}
                    for _ in range(2):
                        m = tuple(rng.choice(gens) for _ in range(rng.randint(0, 2)))
                        t[m] = QScalar(rng.randint(-3, 3)) + QScalar.q_power(
                            rng.randint(-1, 1)
                        )
                    e = qmatrix.QMatElement(d)
                    e.terms = qmatrix.context(d).frt.nf_terms(t)
                    els.append(e)
                x, y, z = els
                lhs = qmatrix.qm_mul(qmatrix.qm_mul(x, y), z)
                rhs = qmatrix.qm_mul(x, qmatrix.qm_mul(y, z))
                if lhs != rhs:
                    return False, "associativity failed on a random triple"
            return True, None

        _run_case(
            rep, f"frt-associativity-d{d}", {"d": d, "triples": n_triples}, assoc
        )
    return rep


def _suite_qdet(ds, params) -> CheckReport:
    rep = CheckReport("qdet")
    wordlen = params.get("wordlen") or 3
    for d in ds:
        def counit_pairing(d=d):
            det = qmatrix.qdet(d)
            for w in qmatrix.all_uq_words(d, wordlen):
                lhs = qmatrix.pairing(det, w)
                rhs = ONE
                for gen in w:
                    rhs = rhs * counit(gen)
                if lhs != rhs:
                    wtxt = " ".join(str(x) for x in w) or "1"
                    return False, f"<det, {wtxt}> = {lhs} != {rhs}"
            return True, None

        _run_case(rep, f"qdet-counit-d{d}", {"d": d, "wordlen": wordlen}, counit_pairing)

        def central(d=d):
            det = qmatrix.qdet(d)
            for i in range(1, d + 1):
                for j in range(1, d + 1):
                    u = qmatrix.QMatElement.gen(d, i, j)
                    if qmatrix.qm_mul(det, u) != qmatrix.qm_mul(u, det):
                        return False, f"det does not commute with u{i}{j}"
            return True, None

        _run_case(rep, f"qdet-central-d{d}", {"d": d}, central)

        def grouplike(d=d):
            det = qmatrix.qdet(d)
            words = qmatrix.all_uq_words(d, 2)
            for a in words:
                for b in words:
                    lhs = qmatrix.pairing(det, a + b)
                    rhs = qmatrix.pairing(det, a) * qmatrix.pairing(det, b)
                    if lhs != rhs:
                        return False, "det is not group-like under the pairing"
            return True, None

        _run_case(rep, f"qdet-grouplike-d{d}", {"d": d}, grouplike)

        def reduces(d=d):
            red = qmatrix.sl_quotient_reduce(qmatrix.qdet(d))
            ok = red == qmatrix.QMatElement.unit(d)
            return ok, (None if ok else f"reduce(det) = {red}")

        _run_case(rep, f"qdet-reduce-d{d}", {"d": d}, reduces)
    return rep


def _suite_antipode(ds, params) -> CheckReport:
    rep = CheckReport("antipode")
    for d in ds:
        def inverse(d=d):
            unit = qmatrix.QMatElement.unit(d)
            zero = qmatrix.QMatElement(d)
            for i in range(1, d + 1):
                for j in range(1, d + 1):
                    left = qmatrix.QMatElement(d)
                    right = qmatrix.QMatElement(d)
                    for k in range(1, d + 1):
                        left = left + qmatrix.qm_mul(
                            qmatrix.QMatElement.gen(d, i, k), qmatrix.antipode_u(d, k, j)
                        )
                        right = right + qmatrix.qm_mul(
                            qmatrix.antipode_u(d, i, k), qmatrix.QMatElement.gen(d, k, j)
                        )
                    want = unit if i == j else zero
                    if qmatrix.sl_quotient_reduce(left) != want:
                        return False, f"(U gamma0(U))_{i}{j} != delta"
                    if qmatrix.sl_quotient_reduce(right) != want:
                        return False, f"(gamma0(U) U)_{i}{j} != delta"
            return True, None

        _run_case(rep, f"antipode-inverse-d{d}", {"d": d}, inverse)

        def dual_rep(d=d):
            from .uq import UqGenerator, antipode_rep

            g = LieData(d)
            for gen in g.generators():
                mat = antipode_rep(g, gen)
                for i in range(1, d + 1):
                    for j in range(1, d + 1):
                        got = qmatrix.pairing(qmatrix.antipode_u(d, i, j), (gen,))
                        if got != mat[(i - 1, j - 1)]:
                            return False, f"<gamma0(u){i}{j}, {gen}> mismatch"
            return True, None

        _run_case(rep, f"antipode-dual-rep-d{d}", {"d": d}, dual_rep)

        def star_products(d=d):
            for i in range(1, d + 1):
                for j in range(1, d + 1):
                    x = cuntz_mul(CuntzElement.gen_star(d, i), CuntzElement.gen(d, j))
                    want = (
                        CuntzElement.unit(d) if i == j else CuntzElement.zero(d)
                    )
                    if not (qmatrix.coact(x) == qmatrix.tensor_with_unit(want)):
                        return False, f"omega(s{i}* s{j}) != delta"
            return True, None

        _run_case(rep, f"antipode-star-coaction-d{d}", {"d": d}, star_products)
    return rep


def _suite_rll(ds, params) -> CheckReport:
    rep = CheckReport("rll")
    deg = params.get("wordlen") or 3
    for d in ds:
        _run_case(
            rep,
            f"rll-d{d}-deg{deg}",
            {"d": d, "max_deg": deg},
            lambda d=d: (qmatrix.rll_check(d, deg), None),
        )

        def unit_row(d=d):
            for i in range(1, d + 1):
                for j in range(1, d + 1):
                    for sign in ("+", "-"):
                        got = qmatrix.pair_L(sign, i, j, (), d)
                        want = ONE if i == j else QScalar(0)
                        if got != want:
                            return False, f"<l{i}{j}^({sign}), 1> = {got}"
            return True, None

        _run_case(rep, f"rll-unit-d{d}", {"d": d}, unit_row)
    return rep


def _suite_oracle(ds, params) -> CheckReport:
    rep = CheckReport("oracle")
    n_pairs = params.get("corpus") or 200
    n_neg = max(10, n_pairs // 4)
    seed = params.get("seed") or 20240804
    for d in ds:
        def concordance(d=d):
            rng = random.Random(seed + d)
            for a in range(n_pairs):
                x = random_element(d, rng)
                m = x.max_colength() + rng.randint(0, 1)
                y = cuntz_compact(cuntz_level(x, m))
                diff = x - y
                if not oracle_zero_of(diff):
                    return False, f"pair {a}: symbolic equality refuted by the oracle"
            return True, None

        _run_case(rep, f"oracle-concordance-d{d}", {"d": d, "pairs": n_pairs}, concordance)

        def falsifiability(d=d):
            rng = random.Random(seed + 1000 + d)
            checked = 0
            tries = 0
            while checked < n_neg and tries < 10 * n_neg:
                tries += 1
                x = random_element(d, rng)
                if cuntz_is_zero(x):
                    continue
                checked += 1
                if oracle_zero_of(x):
                    return False, f"nonzero element {checked} passed the oracle"
            return checked >= n_neg, (
                None if checked >= n_neg else "could not build enough nonzero samples"
            )

        _run_case(rep, f"oracle-falsifiability-d{d}", {"d": d, "samples": n_neg}, falsifiability)
    return rep


def oracle_zero_of(x: CuntzElement) -> bool:
    return fock.oracle_is_zero(fock.config_for(x), x)


def json_witness(x: CuntzElement) -> str:
    return json.dumps(to_json_dict(cuntz_compact(x)))


_SUITES = {
    "relations": (_suite_relations, (2, 3, 4)),
    "ybe": (_suite_ybe, (2, 3, 4)),
    "braid": (_suite_braid, (2, 3)),
    "fixed": (_suite_fixed, (2, 3)),
    "cofixed": (_suite_cofixed, (2, 3)),
    "fixed-eq-cofixed": (_suite_fixed_eq_cofixed, (2,)),
    "duality": (_suite_duality, (2, 3)),
    "frt-confluence": (_suite_frt_confluence, (2, 3)),
    "qdet": (_suite_qdet, (2, 3)),
    "antipode": (_suite_antipode, (2, 3)),
    "rll": (_suite_rll, (2,)),
    "oracle": (_suite_oracle, (2, 3)),
}


def run_suite(name: str, **params) -> CheckReport:
    """Run a named suite; params: ds, strands, wordlen, corpus, triples, seed."""
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(_SUITES)}")
    fn, default_ds = _SUITES[name]
    ds = params.pop("ds", None) or default_ds
    report = fn(tuple(ds), params)
    report.cases.sort(key=lambda c: c.case_id)
    return report


# ---------------------------------------------------------------------------
# argument handling


def _parse_drange(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return (int(text),)


def _element_out(x: CuntzElement, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_json_dict(x))
    return str(x)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="qcuntz",
        description="Exact checks for the quantum-group symmetry of the Cuntz algebra",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("normalize", help="parse and canonicalize an element")
    p_norm.add_argument("-d", type=int, required=True)
    p_norm.add_argument("-x", required=True, help="element expression")
    p_norm.add_argument("--format", choices=("json", "text"), default="text")

    p_act = sub.add_parser("act", help="act by a generator word")
    p_act.add_argument("-d", type=int, required=True)
    p_act.add_argument("-a", required=True, help="generator word, e.g. 'e1 k1^-1'")
    p_act.add_argument("-x", required=True)
    p_act.add_argument("--format", choices=("json", "text"), default="text")

    p_co = sub.add_parser("coact", help="coaction of an element")
    p_co.add_argument("-d", type=int, required=True)
    p_co.add_argument("-x", required=True)
    p_co.add_argument("--format", choices=("json", "text"), default="text")

    p_th = sub.add_parser("theta", help="braid generator image")
    p_th.add_argument("-d", type=int, required=True)
    p_th.add_argument("-i", type=int, default=1)
    p_th.add_argument("--format", choices=("json", "text"), default="text")

    p_sq = sub.add_parser("sq", help="rank-d q-antisymmetric tensor")
    p_sq.add_argument("-d", type=int, required=True)
    p_sq.add_argument("--format", choices=("json", "text"), default="text")

    p_chk = sub.add_parser("check", help="run a verification suite")
    p_chk.add_argument("suite", choices=sorted(_SUITES) + ["all"])
    p_chk.add_argument("-d", dest="drange", default=None, help="D or D1..D2")
    p_chk.add_argument("--strands", type=int, default=None)
    p_chk.add_argument("--wordlen", type=int, default=None)
    p_chk.add_argument("--corpus", type=int, default=None)
    p_chk.add_argument("--triples", type=int, default=None)
    p_chk.add_argument("--seed", type=int, default=None)
    p_chk.add_argument("--out", default=None)
    p_chk.add_argument("--format", choices=("json", "text"), default="json")

    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0

    try:
        if args.command == "normalize":
            x = cuntz_compact(parse_element(args.x, args.d))
            print(_element_out(x, args.format))
            return 0
        if args.command == "act":
            g = LieData(args.d)
            w = parse_uq_word(args.a, args.d)
            x = parse_element(args.x, args.d)
            print(_element_out(cuntz_compact(act_word(g, w, x)), args.format))
            return 0
        if args.command == "coact":
            x = parse_element(args.x, args.d)
            c = qmatrix.coact(x)
            if args.format == "json":
                terms = sorted(
                    c.terms.items(),
                    key=lambda kv: (kv[0][0].degree, kv[0][0].mu, kv[0][0].nu, kv[0][1]),
                )
                print(
                    json.dumps(
                        {
                            "d": c.d,
                            "terms": [
                                {
                                    "mu": list(w.mu),
                                    "nu": list(w.nu),
                                    "factors": [
                                        [g // c.d + 1, g % c.d + 1] for g in m
                                    ],
                                    "coeff": str(v),
                                }
                                for (w, m), v in terms
                            ],
                        }
                    )
                )
            else:
                print(str(c))
            return 0
        if args.command == "theta":
            print(_element_out(braid_mod.theta(args.d, args.i).element, args.format))
            return 0
        if args.command == "sq":
            print(_element_out(braid_mod.q_antisymmetric(args.d), args.format))
            return 0
        if args.command == "check":
            names = sorted(_SUITES) if args.suite == "all" else [args.suite]
            params = {
                "strands": args.strands,
                "wordlen": args.wordlen,
                "corpus": args.corpus,
                "triples": args.triples,
                "seed": args.seed,
            }
            ds = _parse_drange(args.drange) if args.drange else None
            reports = [run_suite(n, ds=ds, **params) for n in names]
            payload = (
                reports[0].to_json_dict()
                if len(reports) == 1
                else {"suites": [r.to_json_dict() for r in reports]}
            )
            text = (
                json.dumps(payload, indent=2)
                if args.format == "json"
                else "\n".join(r.render_text() for r in reports)
            )
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text + "\n")
            else:
                print(text)
            return 0 if all(r.passed for r in reports) else 1
        return 2
    except (ParseError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
