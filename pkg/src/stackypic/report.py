"""Run a parsed curve description through both stages and render the result."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .curvespec import CurveSpec, format_expr
from .errors import EnumerationTooLarge, SpecError, StackyPicError
from .gerbe import (
    H2_ASSUMPTION,
    LIFT_ASSUMPTION,
    BandData,
    LiftRelation,
    build_pic_gerbe,
    enumerate_extensions,
    obstruction_kernel,
    obstruction_map,
)
from .groups import (
    INFINITE,
    InvariantFactorDecomposition,
    PresentedGroup,
    cyclic_sum,
    decompose,
)
from .rigidified import TAMENESS_ASSUMPTION, CoarsePicard, StackyPointSpec, build_pic_rigidified

SCHEMA = "stackypic.report/1"


@dataclass(frozen=True)
class StageCheck:
    stage: str
    node: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class GeneratorInfo:
    stage: str
    label: str
    expression: str
    order: object


@dataclass
class PicardReport:
    name: str
    decomposition: InvariantFactorDecomposition
    stages: list = field(default_factory=list)
    generators: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "PASS" if all(c.passed for c in self.checks) else "FAIL"

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "PASS" else 2


def coarse_picard(spec: CurveSpec) -> CoarsePicard:
    c = spec.coarse
    X = PresentedGroup.from_relations(len(c.gens), c.relations, c.gens)
    return CoarsePicard(X, {name: X.element(v) for name, v in c.classes})


def stacky_points(spec: CurveSpec, X: PresentedGroup) -> list[StackyPointSpec]:
    return [StackyPointSpec(p.label, p.order, X.element(p.ideal)) for p in spec.points]


def _stage_checks(stage, report):
    return [StageCheck(stage, c.node, c.passed, c.detail) for c in report.checks]


def _gerbe_kernel(spec: CurveSpec):
    """Kernel of the obstruction map as a presented group."""
    g = spec.gerbe
    band = BandData(g.band)
    if g.kernel is not None:
        return cyclic_sum(g.kernel)
    h2 = cyclic_sum(g.h2)
    obs = obstruction_map(band, h2, [list(r) for r in g.obstruction])
    return obstruction_kernel(obs)[0]


def _tagged(block, fn, *args):
    try:
        return fn(*args)
    except (SpecError, EnumerationTooLarge):
        raise
    except StackyPicError as e:
        raise SpecError(str(e), block=block) from e


def run(spec: CurveSpec) -> PicardReport:
    """Both stages, every exactness check, and the generator table."""
    coarse = _tagged("coarse", coarse_picard, spec)
    X = coarse.group
    points = _tagged("point", stacky_points, spec, X)
    rigid = _tagged("point", build_pic_rigidified, coarse, points)
    coarse_labels = spec.coarse.gens
    stage_one_labels = spec.stage_one_labels()

    report = PicardReport(spec.name, decompose(rigid.pic))
    report.assumptions.append(TAMENESS_ASSUMPTION)
    report.stages.append(("rigidified", "Pic(Y)", decompose(rigid.pic)))
    for p, cls in zip(spec.points, rigid.ideal_sheaf_classes):
        report.generators.append(GeneratorInfo(
            "rigidified", p.label,
            f"{p.order}*{p.label} = pi^*({format_expr(p.ideal, coarse_labels)})", cls.order()))
    for i, g in enumerate(coarse_labels):
        report.generators.append(GeneratorInfo(
            "rigidified", f"pi^*{g}", "pullback of a coarse generator",
            rigid.pullback(X.gen(i)).order()))
    report.checks += _stage_checks("rigidified", rigid.verification)

    if spec.gerbe is None:
        return report

    report.assumptions += [H2_ASSUMPTION, LIFT_ASSUMPTION]
    K = _tagged("gerbe", _gerbe_kernel, spec)
    lifts = [LiftRelation(m, rigid.pic.element(v)) for m, v in spec.gerbe.lifts]
    claimed = InvariantFactorDecomposition.from_orders([m for m, _ in spec.gerbe.lifts])
    actual = decompose(K)
    if not spec.gerbe.lifts and not actual.is_trivial:
        raise SpecError(
            f"obstruction kernel is {actual} but no lift relations are given; "
            "use 'enumerate' to list the possible extensions", block="gerbe")
    ok = claimed == actual
    report.checks.append(StageCheck(
        "gerbe", "lift orders", ok,
        f"lift orders give {claimed}, obstruction kernel is {actual}"))
    if not ok:
        return report

    gerbe = _tagged("gerbe", build_pic_gerbe, rigid.pic, lifts)
    report.decomposition = decompose(gerbe.pic)
    report.stages.append(("gerbe", "Pic(gerbe)", report.decomposition))
    for j, ((m, v), lam) in enumerate(zip(spec.gerbe.lifts, gerbe.lifts)):
        report.generators.append(GeneratorInfo(
            "gerbe", f"lambda{j + 1}",
            f"{m}*lambda{j + 1} = p^*({format_expr(v, stage_one_labels)})", lam.order()))
    report.checks += _stage_checks("gerbe", gerbe.verification)
    return report


def enumerate_for_spec(spec: CurveSpec):
    """Every extension type allowed by the obstruction kernel of ``spec``.

    Returns ``(picY, orders, results, selected)``; ``selected`` is the
    decomposition the file's own lift data gives, if it has any.
    """
    if spec.gerbe is None:
        raise SpecError("enumerate needs a gerbe block", block="gerbe")
    coarse = _tagged("coarse", coarse_picard, spec)
    rigid = _tagged("point", build_pic_rigidified, coarse, stacky_points(spec, coarse.group))
    K = _tagged("gerbe", _gerbe_kernel, spec)
    orders = list(decompose(K).torsion)
    if decompose(K).free_rank:
        raise SpecError("obstruction kernel is infinite", block="gerbe")
    results = _tagged("gerbe", enumerate_extensions, rigid.pic, orders)
    selected = None
    if spec.gerbe.lifts:
        lifts = [LiftRelation(m, rigid.pic.element(v)) for m, v in spec.gerbe.lifts]
        claimed = InvariantFactorDecomposition.from_orders([m for m, _ in spec.gerbe.lifts])
        if claimed == decompose(K):
            selected = decompose(_tagged("gerbe", build_pic_gerbe, rigid.pic, lifts).pic)
    return rigid.pic, orders, results, selected


def _order_str(order):
    return "inf" if order == INFINITE else str(order)


def _dec_json(d: InvariantFactorDecomposition):
    return {"free_rank": d.free_rank, "torsion": list(d.torsion)}


def report_dict(report: PicardReport) -> dict:
    return {
        "schema": SCHEMA,
        "name": report.name,
        "status": report.status,
        "decomposition": _dec_json(report.decomposition),
        "stages": [{"stage": s, "group": g, "decomposition": _dec_json(d)}
                   for s, g, d in report.stages],
        "generators": [{"stage": g.stage, "label": g.label, "expression": g.expression,
                        "order": g.order} for g in report.generators],
        "checks": [{"stage": c.stage, "node": c.node, "passed": c.passed, "detail": c.detail}
                   for c in report.checks],
        "assumptions": list(report.assumptions),
    }


def render(report: PicardReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report_dict(report), indent=2, ensure_ascii=False) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    out = []
    if report.name:
        out.append(f"curve: {report.name}")
    out.append(f"status: {report.status}")
    out.append(f"Pic = {report.decomposition}")
    out.append("")
    out.append("stages:")
    out += [f"  {s:<11} {g} = {d}" for s, g, d in report.stages]
    out.append("")
    out.append("generators:")
    out += [f"  {g.stage:<11} {g.label:<12} order {_order_str(g.order):<5} {g.expression}"
            for g in report.generators]
    out.append("")
    out.append("checks:")
    out += [render_check(c) for c in report.checks]
    out.append("")
    out.append("assumptions:")
    out += [f"  - {a}" for a in report.assumptions]
    return "\n".join(out) + "\n"


def render_check(c: StageCheck) -> str:
    return f"  {'PASS' if c.passed else 'FAIL'}  {c.stage:<11} {c.node:<16} {c.detail}"


def render_checks(report: PicardReport) -> str:
    lines = [f"status: {report.status}"] + [render_check(c) for c in report.checks]
    failed = [c for c in report.checks if not c.passed]
    if failed:
        lines.append("failing nodes: " + ", ".join(f"{c.stage}/{c.node}" for c in failed))
    return "\n".join(lines) + "\n"


def render_enumeration(picY, orders, results, selected, labels) -> str:
    out = [f"Pic(Y) = {decompose(picY)}",
           f"kernel orders: {','.join(map(str, orders)) or '-'}",
           f"extension types: {len(results)}"]
    for targets, d in results:
        witness = ", ".join(f"{m}*lambda{j + 1} = p^*({format_expr(t, labels)})"
                            for j, (m, t) in enumerate(zip(orders, targets)))
        mark = "  <- lift data" if selected is not None and d == selected else ""
        out.append(f"  {str(d):<20} witness: {witness or '(none)'}{mark}")
    return "\n".join(out) + "\n"


__all__ = ["PicardReport", "run", "render", "render_checks", "report_dict",
           "enumerate_for_spec", "render_enumeration"]
