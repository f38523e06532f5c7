"""Input documents, report assembly and canonical rendering.

Every number in a report is an exact integer or rational written as a
string, so reports survive any JSON parser and are byte-stable: keys are
sorted and lattices are given by their canonical Hermite bases.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .bruteforce import BudgetExceeded, brute_force_cohomology
from .catalog import ARITHMETIC_VARIANTS, CATALOG, arithmetic_variant, catalog_keys
from .cohomology import CoefficientModule, cohomology_group, cyclic_oracle
from .dual_torus import (
    IOTA_NOTE,
    coinvariant_group,
    component_group,
    fixed_points,
    frobenius_coinvariant_group,
    sandwich_report,
    unramified_character_torus,
    xs_comparison,
)
from .galois import (
    FiniteGroup,
    GaloisLattice,
    InvalidArithmeticData,
    LocalArithmeticData,
    admissible_arithmetic,
    coinvariants,
    dual_module,
    invariants,
    projection_lattice,
    unramified_data,
)
from .lattice import INFINITE, RationalLattice
from .linalg import FinGenAbGroup, IntegerMatrix
from .oracle import SweepSummary
from .weil import SIGN_CONVENTION, UnramifiedWeilModel, cocycle_suite, model_h1_count

VERSION = 1
ANALYZE_ORACLE_BUDGET = 1_000_000

CONVENTIONS = {
    "cochains": "inhomogeneous bar cochains; (df)(g1..gn+1) = g1 f(g2..) "
                "+ sum (-1)^i f(..gi gi+1..) + (-1)^(n+1) f(g1..gn)",
    "dual_action": "g acts on the dual lattice by the inverse transpose",
    "frobenius_sign": SIGN_CONVENTION,
    "iota": IOTA_NOTE,
    "numbers": "integers as decimal strings, rationals as p/q strings",
}


class DocumentError(ValueError):
    """A malformed input document; ``field`` locates the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


# ---------------------------------------------------------------------------
# scalar encoders


def enc_int(x: int) -> str:
    return str(int(x))


def enc_frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def enc_index(x) -> str:
    if x is None:
        return "undefined"
    return "infinite" if x == INFINITE else enc_int(x)


def enc_group(g: FinGenAbGroup) -> dict:
    return {"free_rank": enc_int(g.free_rank), "torsion": [enc_int(t) for t in g.torsion],
            "text": str(g)}


def enc_lattice(lat: RationalLattice) -> dict:
    return {"ambient_dim": enc_int(lat.ambient_dim), "rank": enc_int(lat.rank),
            "basis": [[enc_frac(x) for x in b] for b in lat.basis], "text": str(lat)}


_INT = re.compile(r"-?[0-9]+\Z")


def _int(value, field: str) -> int:
    if isinstance(value, bool):
        raise DocumentError(field, "expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INT.match(value.strip()):
        return int(value.strip())
    raise DocumentError(field, f"expected a decimal integer string, got {value!r}")


def _list(value, field: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(field, f"expected a list, got {type(value).__name__}")
    return value


def _mapping(value, field: str) -> Mapping:
    if not isinstance(value, Mapping):
        raise DocumentError(field, f"expected an object, got {type(value).__name__}")
    return value


# ---------------------------------------------------------------------------
# input documents


@dataclass(frozen=True)
class TorusInputDocument:
    lattice: GaloisLattice
    arithmetic: LocalArithmeticData | None = None
    name: str = ""

    @property
    def group(self) -> FiniteGroup:
        return self.lattice.group


def parse_arithmetic(data, group: FiniteGroup, field: str = "arithmetic") -> LocalArithmeticData:
    data = _mapping(data, field)
    for key in ("inertia", "frobenius"):
        if key not in data:
            raise DocumentError(f"{field}.{key}", "missing")
    inertia = [_int(x, f"{field}.inertia[{i}]")
               for i, x in enumerate(_list(data["inertia"], f"{field}.inertia"))]
    for i, x in enumerate(inertia):
        if not 0 <= x < group.order:
            raise DocumentError(f"{field}.inertia[{i}]", f"element {x} out of range")
    frob = _int(data["frobenius"], f"{field}.frobenius")
    arith = LocalArithmeticData(frozenset(inertia), frob)
    try:
        arith.check(group)
    except InvalidArithmeticData as exc:
        raise DocumentError(field, str(exc)) from None
    return arith


def parse_document(data) -> TorusInputDocument:
    data = _mapping(data, "document")
    unknown = set(data) - {"group", "action", "arithmetic", "name"}
    if unknown:
        raise DocumentError(sorted(unknown)[0], "unknown field")
    for key in ("group", "action"):
        if key not in data:
            raise DocumentError(key, "missing")
    g = _mapping(data["group"], "group")
    for key in ("order", "mult_table", "identity_index"):
        if key not in g:
            raise DocumentError(f"group.{key}", "missing")
    order = _int(g["order"], "group.order")
    if order < 1:
        raise DocumentError("group.order", "must be positive")
    rows = _list(g["mult_table"], "group.mult_table")
    if len(rows) != order:
        raise DocumentError("group.mult_table", f"expected {order} rows, got {len(rows)}")
    table = []
    for i, row in enumerate(rows):
        row = _list(row, f"group.mult_table[{i}]")
        if len(row) != order:
            raise DocumentError(f"group.mult_table[{i}]", f"expected {order} entries")
        entries = [_int(x, f"group.mult_table[{i}][{j}]") for j, x in enumerate(row)]
        for j, x in enumerate(entries):
            if not 0 <= x < order:
                raise DocumentError(f"group.mult_table[{i}][{j}]", f"index {x} out of range")
        table.append(entries)
    ident = _int(g["identity_index"], "group.identity_index")
    try:
        group = FiniteGroup(table, ident)
    except ValueError as exc:
        raise DocumentError("group", str(exc)) from None

    mats = _list(data["action"], "action")
    if len(mats) != order:
        raise DocumentError("action", f"expected {order} matrices, got {len(mats)}")
    rank = None
    action = []
    for k, mat in enumerate(mats):
        mat = _list(mat, f"action[{k}]")
        if rank is None:
            rank = len(mat)
        if len(mat) != rank:
            raise DocumentError(f"action[{k}]", f"expected {rank} rows, got {len(mat)}")
        rows_k = []
        for i, row in enumerate(mat):
            row = _list(row, f"action[{k}][{i}]")
            if len(row) != rank:
                raise DocumentError(f"action[{k}][{i}]", f"expected {rank} entries")
            rows_k.append([_int(x, f"action[{k}][{i}][{j}]") for j, x in enumerate(row)])
        action.append(IntegerMatrix(rows_k, rank))
    name = data.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name", "expected a string")
    try:
        lat = GaloisLattice(group, tuple(action), name)
    except ValueError as exc:
        raise DocumentError("action", str(exc)) from None
    arith = None
    if data.get("arithmetic") is not None:
        arith = parse_arithmetic(data["arithmetic"], group)
    return TorusInputDocument(lat, arith, name)


def render_arithmetic(arith: LocalArithmeticData) -> dict:
    return {"inertia": [enc_int(x) for x in sorted(arith.inertia)],
            "frobenius": enc_int(arith.frobenius)}


def render_document(doc: TorusInputDocument) -> dict:
    g = doc.group
    out = {
        "group": {"order": enc_int(g.order),
                  "mult_table": [[enc_int(x) for x in row] for row in g.mult_table],
                  "identity_index": enc_int(g.identity)},
        "action": [[[enc_int(x) for x in row] for row in a.rows] for a in doc.lattice.action],
    }
    if doc.arithmetic is not None:
        out["arithmetic"] = render_arithmetic(doc.arithmetic)
    if doc.name:
        out["name"] = doc.name
    return out


def load_document(path: str) -> TorusInputDocument:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_document(data)


def document_from_preset(name: str, params: Mapping | None = None) -> TorusInputDocument:
    from .catalog import preset
    lat, _ = preset(name, **dict(params or {}))
    return TorusInputDocument(lat, None, lat.name)


# ---------------------------------------------------------------------------
# rendering


def envelope(kind: str, body: dict) -> dict:
    return {"version": VERSION, "kind": kind, "conventions": dict(CONVENTIONS), **body}


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_report(text: str) -> dict:
    data = json.loads(text)
    if not isinstance(data, dict) or data.get("version") != VERSION:
        raise DocumentError("version", f"expected report version {VERSION}")
    return data


# ---------------------------------------------------------------------------
# reports


def _case(name: str, computed: FinGenAbGroup, expected: FinGenAbGroup | None,
          note: str = "") -> dict:
    if expected is None:
        return {"check": name, "status": "skipped", "computed": str(computed), "note": note}
    return {"check": name, "status": "pass" if computed == expected else "mismatch",
            "computed": str(computed), "expected": str(expected)}


def _oracle_checks(lat: GaloisLattice, h: dict, budget: int) -> list[dict]:
    """Independent recomputations of the cohomology in the report."""
    g = lat.group
    dual = dual_module(lat)
    checks = [_case("H1(X) = component group of fixed points (character side)",
                    h["X"][1], component_group(fixed_points(lat)))]
    if g.is_cyclic():
        for label, mod in (("X", lat), ("dual", dual)):
            for n in (1, 2):
                checks.append(_case(f"H{n}({label}) = cyclic closed form", h[label][n],
                                    cyclic_oracle(g, mod, n)))
    mod = CoefficientModule.from_lattice(lat, 2)
    for n in (1, 2):
        res = cohomology_group(g, mod, n).group
        try:
            brute = brute_force_cohomology(g, mod, n, budget)
            checks.append(_case(f"H{n}(X/2X) = enumeration", res, brute))
        except BudgetExceeded as exc:
            checks.append(_case(f"H{n}(X/2X) = enumeration", res, None, str(exc)))
    return checks


def _default_arith(doc: TorusInputDocument) -> tuple[LocalArithmeticData, str]:
    if doc.arithmetic is not None:
        return doc.arithmetic, "document"
    if doc.group.is_cyclic():
        return unramified_data(doc.group), "default unramified"
    return arithmetic_variant(doc.lattice, "totally_ramified"), "default totally ramified"


def _sandwich_body(lat: GaloisLattice, arith: LocalArithmeticData) -> dict:
    s = sandwich_report(lat, arith)
    return {
        "x_gamma": enc_lattice(s.x_gamma),
        "cochar_xt": enc_lattice(s.cochar_xt),
        "pr_lattice": enc_lattice(s.pr_lattice),
        "x_gamma_in_cochar_xt": s.x_in_xt,
        "cochar_xt_in_pr": s.xt_in_pr,
        "index_cochar_xt_over_x_gamma": enc_index(s.index_xt_over_x),
        "index_pr_over_cochar_xt": enc_index(s.index_pr_over_xt),
        "rank_equal": s.xt_rank == s.x_gamma.rank,
        "holds": s.holds,
        "a_lattice": "not computed (needs the torus over the field)",
    }


def analysis_report(doc: TorusInputDocument, arith: LocalArithmeticData | None = None,
                    arith_source: str = "argument", oracle_budget: int = ANALYZE_ORACLE_BUDGET) -> dict:
    lat = doc.lattice
    g = lat.group
    if arith is None:
        arith, arith_source = _default_arith(doc)
    arith.check(g)
    dual = dual_module(lat)
    h = {label: {n: cohomology_group(g, mod, n).group for n in range(3)}
         for label, mod in (("X", lat), ("dual", dual))}
    fp = fixed_points(lat)
    co = coinvariant_group(lat)
    xt_torus, cochar_xt = unramified_character_torus(lat, arith)
    frob = frobenius_coinvariant_group(lat, arith)
    xs = xs_comparison(lat, arith)
    checks = _oracle_checks(lat, h, oracle_budget)
    body = {
        "input": render_document(TorusInputDocument(lat, arith, doc.name)),
        "arithmetic_source": arith_source,
        "lattice": {"name": lat.name, "rank": enc_int(lat.rank), "group_order": enc_int(g.order)},
        "invariants": enc_lattice(invariants(lat)),
        "coinvariants": enc_group(coinvariants(lat)),
        "projection": enc_lattice(projection_lattice(lat)),
        "cohomology": {label: {f"H{n}": enc_group(grp) for n, grp in hs.items()}
                       for label, hs in h.items()},
        "dual_torus": {
            "fixed_points": {"character_group": enc_group(fp.character_group),
                             "describe": fp.describe(),
                             "identity_component_dim": enc_int(fp.dimension),
                             "component_group": enc_group(component_group(fp))},
            "coinvariants": {"character_group": enc_group(co.character_group),
                             "describe": co.describe()},
        },
        "unramified_characters": {
            "frobenius_coinvariants": {"character_group": enc_group(frob.character_group),
                                       "describe": frob.describe(),
                                       "component_group": enc_group(component_group(frob))},
            "x_t": {"rank": enc_int(xt_torus.dimension),
                    "character_group": enc_group(xt_torus.character_group),
                    "cocharacter_lattice": enc_lattice(cochar_xt)},
        },
        "sandwich": _sandwich_body(lat, arith),
        "xs_comparison": {"cochar_xs": enc_lattice(xs.cochar_xs), "rank_xs": enc_int(xs.rank_xs),
                          "rank_xt": enc_int(xs.rank_xt), "lattices_equal": xs.lattices_equal,
                          "equality_expected": xs.equality_expected,
                          "consistent": xs.consistent},
        "oracle": checks,
    }
    return envelope("analysis", body)


def cohomology_report(doc: TorusInputDocument, degree: int, dual: bool = False,
                      modulus: int = 0, budget: int | None = None) -> dict:
    lat = dual_module(doc.lattice) if dual else doc.lattice
    g = lat.group
    mod = CoefficientModule.from_lattice(lat, modulus)
    res = cohomology_group(g, mod, degree).group
    checks = []
    if g.is_cyclic():
        checks.append(_case(f"H{degree} = cyclic closed form", res, cyclic_oracle(g, mod, degree)))
    if modulus and degree in (1, 2):
        try:
            checks.append(_case(f"H{degree} = enumeration", res,
                                brute_force_cohomology(g, mod, degree, budget)))
        except BudgetExceeded as exc:
            checks.append(_case(f"H{degree} = enumeration", res, None, str(exc)))
    body = {"input": render_document(doc), "degree": enc_int(degree), "dual": dual,
            "modulus": enc_int(modulus), "group": enc_group(res), "oracle": checks}
    return envelope("cohomology", body)


def sandwich_document_report(doc: TorusInputDocument, arith: LocalArithmeticData) -> dict:
    arith.check(doc.group)
    xs = xs_comparison(doc.lattice, arith)
    body = {"input": render_document(TorusInputDocument(doc.lattice, arith, doc.name)),
            "sandwich": _sandwich_body(doc.lattice, arith),
            "xs_comparison": {"rank_xs": enc_int(xs.rank_xs), "rank_xt": enc_int(xs.rank_xt),
                              "lattices_equal": xs.lattices_equal,
                              "equality_expected": xs.equality_expected,
                              "consistent": xs.consistent}}
    return envelope("sandwich", body)


def weil_report(doc: TorusInputDocument, modulus: int, max_den: int, seed: int = 0,
                samples: int = 100) -> dict:
    frob = None
    if doc.arithmetic is not None:
        if not doc.arithmetic.is_unramified:
            raise InvalidArithmeticData("the Weil model needs unramified arithmetic data")
        frob = doc.arithmetic.frobenius
    model = UnramifiedWeilModel(doc.lattice, frob)
    suite = cocycle_suite(model, max_den=max_den, samples=samples, seed=seed, modulus=modulus)
    body = {"input": render_document(TorusInputDocument(
                doc.lattice, unramified_data(doc.group) if frob is None else doc.arithmetic,
                doc.name)),
            "modulus": enc_int(modulus), "max_denominator": enc_int(max_den),
            "seed": enc_int(seed),
            "h1_frobenius_coinvariants": enc_group(model_h1_count(model, modulus)),
            "checks": {k: v for k, v in suite.checks.items()},
            "counts": {k: enc_int(v) for k, v in suite.counts.items()},
            "ok": suite.ok}
    return envelope("weil", body)


def oracle_report(summaries: list[SweepSummary], scope: dict) -> dict:
    body = {"scope": {k: enc_int(v) for k, v in scope.items()},
            "sweeps": [{"kind": s.kind,
                        "counts": {k: enc_int(v) for k, v in s.counts().items()},
                        "cases": [{"label": c.label, "degree": enc_int(c.degree),
                                   "resolution": c.resolution, "oracle": c.oracle,
                                   "status": c.status, "note": c.note} for c in s.cases]}
                       for s in summaries],
            "ok": all(s.ok for s in summaries)}
    return envelope("oracle", body)


def catalog_report() -> dict:
    entries = {}
    for key in catalog_keys():
        builder, defaults = CATALOG[key]
        lat = builder(**defaults)
        variants = [v for v in ARITHMETIC_VARIANTS if _admits(lat, v)]
        entries[key] = {"params": {k: enc_int(v) for k, v in defaults.items()},
                        "rank": enc_int(lat.rank), "group_order": enc_int(lat.group.order),
                        "arithmetic_variants": variants,
                        "admissible_arithmetic": enc_int(len(admissible_arithmetic(lat.group)))}
    return envelope("catalog", {"presets": entries})


def _admits(lat: GaloisLattice, variant: str) -> bool:
    try:
        arithmetic_variant(lat, variant).check(lat.group)
    except InvalidArithmeticData:
        return False
    return True


# ---------------------------------------------------------------------------
# human-readable text


def _oracle_lines(checks: list[dict]) -> list[str]:
    out = []
    for c in checks:
        tail = f" (expected {c['expected']})" if c["status"] == "mismatch" else ""
        out.append(f"  [{c['status']}] {c['check']}: {c['computed']}{tail}")
    return out


def _conventions_lines(report: dict) -> list[str]:
    return ["conventions:"] + [f"  {k}: {v}" for k, v in sorted(report["conventions"].items())]


def _text_analysis(r: dict) -> list[str]:
    h, dt, uc, s = r["cohomology"], r["dual_torus"], r["unramified_characters"], r["sandwich"]
    lat = r["lattice"]
    arith = r["input"]["arithmetic"]
    lines = [f"torus {lat['name'] or '(document)'}: rank {lat['rank']}, |Gamma| = {lat['group_order']}",
             f"arithmetic ({r['arithmetic_source']}): I = {{{', '.join(arith['inertia'])}}}, "
             f"Fr = {arith['frobenius']}",
             f"X^Gamma = {r['invariants']['text']}",
             f"X_Gamma = {r['coinvariants']['text']}",
             f"Pr_Gamma(X) = {r['projection']['text']}"]
    for label, sym in (("X", "X"), ("dual", "X^")):
        lines.append(f"H^0(Gamma, {sym}) = {h[label]['H0']['text']}, "
                     f"H^1(Gamma, {sym}) = {h[label]['H1']['text']}, "
                     f"H^2(Gamma, {sym}) = {h[label]['H2']['text']}")
    fp = dt["fixed_points"]
    lines += [f"T^^Gamma = {fp['describe']}, pi_0(T^^Gamma) = {fp['component_group']['text']}",
              f"T^_Gamma = {dt['coinvariants']['describe']}",
              f"(T^^I)_Fr = {uc['frobenius_coinvariants']['describe']}",
              f"X_T rank {uc['x_t']['rank']}, X_*(X_T) = {uc['x_t']['cocharacter_lattice']['text']}",
              f"sandwich X^Gamma <= X_*(X_T) <= Pr_Gamma(X): "
              f"{'holds' if s['holds'] else 'FAILS'}, indices "
              f"({s['index_cochar_xt_over_x_gamma']}, {s['index_pr_over_cochar_xt']})",
              f"X_S comparison: rank X_S = {r['xs_comparison']['rank_xs']}, "
              f"lattices equal = {r['xs_comparison']['lattices_equal']}",
              "oracle:"]
    return lines + _oracle_lines(r["oracle"])


def _text_cohomology(r: dict) -> list[str]:
    coeff = "X^" if r["dual"] else "X"
    if r["modulus"] != "0":
        coeff += f"/{r['modulus']}"
    return [f"H^{r['degree']}(Gamma, {coeff}) = {r['group']['text']}"] + _oracle_lines(r["oracle"])


def _text_sandwich(r: dict) -> list[str]:
    s = r["sandwich"]
    return [f"X^Gamma = {s['x_gamma']['text']}",
            f"X_*(X_T) = {s['cochar_xt']['text']}",
            f"Pr_Gamma(X) = {s['pr_lattice']['text']}",
            f"[X_*(X_T) : X^Gamma] = {s['index_cochar_xt_over_x_gamma']}",
            f"[Pr_Gamma(X) : X_*(X_T)] = {s['index_pr_over_cochar_xt']}",
            f"sandwich {'holds' if s['holds'] else 'FAILS'}; "
            f"X_T = X_S: {r['xs_comparison']['lattices_equal']}"]


def _text_weil(r: dict) -> list[str]:
    lines = [f"H^1(<Fr>, (T^[{r['modulus']}])^I) = {r['h1_frobenius_coinvariants']['text']}"]
    lines += [f"  [{'pass' if ok else 'FAIL'}] {k}" for k, ok in sorted(r["checks"].items())]
    lines.append("counts: " + ", ".join(f"{k} {v}" for k, v in sorted(r["counts"].items())))
    return lines


def _text_oracle(r: dict) -> list[str]:
    lines = []
    for s in r["sweeps"]:
        c = s["counts"]
        lines.append(f"{s['kind']}: {c['pass']} pass, {c['mismatch']} mismatch, "
                     f"{c['skipped']} skipped")
        for case in s["cases"]:
            if case["status"] != "pass":
                lines.append(f"  [{case['status']}] {case['label']} H^{case['degree']}: "
                             f"{case['resolution']} vs {case['oracle']} {case['note']}".rstrip())
    lines.append("all pass" if r["ok"] else "MISMATCH")
    return lines


def render_text(report: dict) -> str:
    kind = report["kind"]
    if kind == "catalog":
        return "".join(f"{k}\n" for k in report["presets"])
    body = {"analysis": _text_analysis, "cohomology": _text_cohomology,
            "sandwich": _text_sandwich, "weil": _text_weil, "oracle": _text_oracle}[kind](report)
    return "\n".join(body + _conventions_lines(report)) + "\n"


def report_status(report: dict) -> str:
    """"ok", "mismatch" (an oracle disagreed) or "violation" (an invariant failed)."""
    kind = report["kind"]
    checks = report.get("oracle", [])
    if any(c["status"] == "mismatch" for c in checks):
        return "mismatch"
    if kind == "oracle" and not report["ok"]:
        return "mismatch"
    if kind == "weil" and not report["ok"]:
        return "mismatch"
    if kind in ("analysis", "sandwich"):
        s = report["sandwich"]
        if not (s["holds"] and s["rank_equal"] and report["xs_comparison"]["consistent"]):
            return "violation"
    return "ok"

