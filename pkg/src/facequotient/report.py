"""Full analysis reports: every intermediate artifact of one scheme in one dict."""

from __future__ import annotations

from . import __version__
from .actions import edge_class_table, g2_orbits, p0_flags, p_alpha_flags
from .complex import SchemeError, edge_classes, validate, vertex_classes
from .groups import (
    abelianization,
    fundamental_presentation,
    induced_presentation,
    tietze_simplify,
    triviality_status,
)
from .quotient import (
    build_quotient,
    classify_surface,
    contract_edge,
    contract_tree,
    euler_characteristic,
    gamma_graph,
    gamma_tree,
    has_circuit,
    nonflat_circles,
    recognize_lens_shell,
    verify_manifold,
)


class InvariantViolation(RuntimeError):
    """A postcondition failed during analysis; this is a bug, not bad input."""


def _require(cond, msg):
    if not cond:
        raise InvariantViolation(msg)


def _group_section(p):
    simple = tietze_simplify(p)
    return {
        "presentation": p.to_dict(),
        "simplified": simple.to_dict(),
        "h1": abelianization(p).to_dict(),
        "triviality": triviality_status(p),
    }


def analyze(scheme) -> dict:
    """Run the whole pipeline; raises SchemeError if the scheme is invalid."""
    rep = validate(scheme)
    out = {
        "tool": "facequotient",
        "version": __version__,
        "scheme_sha256": scheme.fingerprint,
        "validation": rep.to_dict(),
    }
    if not rep.ok:
        raise SchemeError("; ".join(rep.errors))

    classes = edge_classes(scheme)
    table = edge_class_table(scheme, classes)
    p0 = p0_flags(scheme)
    _require(p0.is_involution() and not p0.fixed(), "p0 is not a fixed-point-free involution")
    for info in table:
        _require(p_alpha_flags(scheme, info.class_id, classes).is_involution(),
                 f"p_alpha for class {info.class_id} is not an involution")
    degree = max(i.order for i in table)
    out["vertex_classes"] = [list(c) for c in vertex_classes(scheme).classes]
    out["edge_classes"] = [i.to_dict() for i in table]
    out["degree"] = degree
    out["flat"] = degree <= 2
    try:
        orbits = g2_orbits(scheme, classes)
        out["g2_orbits"] = {"orbits": [list(o) for o in orbits.classes],
                            "orbit_pairs": _orbit_pairs(scheme, orbits)}
    except SchemeError as exc:
        out["g2_orbits"] = {"error": str(exc)}

    q = build_quotient(scheme)
    folds = sum(1 for v in q.vertices if not q.vertex_origin.get(v))
    if not folds:
        _require(sum(len(c.word) for c in q.cells) == scheme.complex.n_flags // 2,
                 "attaching words do not account for half the flags")
    chi = euler_characteristic(q)
    manifold = verify_manifold(scheme)
    gamma = gamma_graph(q)
    surface = classify_surface(q)
    out["quotient"] = q.to_dict()
    out["euler_characteristic"] = chi
    out["manifold"] = manifold.to_dict()
    out["gamma"] = {**gamma.to_dict(), "has_circuit": has_circuit(gamma)}
    out["surface"] = surface.to_dict()
    out["lens_shell"] = recognize_lens_shell(q)
    out["group"] = _group_section(fundamental_presentation(q))
    notes = []
    if out["flat"] and manifold.is_manifold and surface.kind == "disk":
        notes.append({
            "claim": "flat gluing with disk quotient; the identification space is "
                     "expected to be the 3-sphere",
            "certified": False,
        })
    out["notes"] = notes
    return out


def _orbit_pairs(scheme, orbits):
    pairs = set()
    for k, orbit in enumerate(orbits.classes):
        peer = orbits.index[scheme.partner(orbit[0])]
        pairs.add(tuple(sorted((k, peer))))
    return len(pairs)


def contract_report(scheme, edges=None) -> dict:
    """Analyze, contract (non-flat tree or explicit edges), re-analyze."""
    out = analyze(scheme)
    q = build_quotient(scheme)
    p = fundamental_presentation(q)
    record = None
    if edges is None:
        q2, record = contract_tree(q, gamma_tree(q))
    else:
        q2 = q
        for k in edges:
            q2, step = contract_edge(q2, k)
            record = step if record is None else record.then(step)
        if record is None:
            q2, record = contract_tree(q, ())
    p2 = induced_presentation(p, record)
    chi2 = euler_characteristic(q2)
    _require(chi2 == out["euler_characteristic"], "contraction changed the Euler characteristic")
    _require(abelianization(p2) == abelianization(p), "contraction changed first homology")
    out["deformation"] = {
        "log": [s.to_dict() for s in (record.steps or (record,))],
        "quotient": q2.to_dict(),
        "euler_characteristic": chi2,
        "nonflat_circles": nonflat_circles(q2),
        "lens_shell": recognize_lens_shell(q2),
        "group": _group_section(p2),
    }
    return out


def render_text(report) -> str:
    lines = [f"facequotient {report['version']}  scheme {report['scheme_sha256'][:16]}"]
    val = report["validation"]
    lines.append(f"valid: {val['ok']}" + (f"  warnings: {len(val['warnings'])}" if val["warnings"] else ""))
    for w in val["warnings"]:
        lines.append(f"  warning: {w}")
    if "edge_classes" not in report:
        lines.extend(f"  error: {e}" for e in val["errors"])
        return "\n".join(lines) + "\n"
    lines.append(f"vertex classes: {len(report['vertex_classes'])}")
    lines.append(f"edge classes: {len(report['edge_classes'])}")
    for c in report["edge_classes"]:
        flags = ", ".join(k for k in ("collapsible", "flat") if c[k])
        lines.append(f"  class {c['class']}: edges {c['members']} order {c['order']}"
                     + (f" ({flags})" if flags else ""))
    lines.append(f"degree: {report['degree']}  flat: {report['flat']}")
    lines.append(f"euler characteristic: {report['euler_characteristic']}")
    man = report["manifold"]
    lines.append(f"manifold: {man['is_manifold']}  link chi: "
                 + " ".join(str(l["chi"]) for l in man["vertex_links"]))
    g = report["gamma"]
    lines.append(f"non-flat graph: {len(g['vertices'])} vertices, {len(g['edges'])} edges, "
                 f"circuit: {g['has_circuit']}")
    lines.append(f"surface: {report['surface']['kind']}")
    lines.append(f"lens shell: {report['lens_shell']}")
    grp = report["group"]
    lines.append(f"presentation: {grp['presentation']['text']}")
    lines.append(f"simplified: {grp['simplified']['text']}")
    lines.append(f"H1: {grp['h1']['text']}  pi1: {grp['triviality']}")
    for n in report["notes"]:
        lines.append(f"note: {n['claim']} (certified: {n['certified']})")
    if "deformation" in report:
        d = report["deformation"]
        lines.append("after contraction:")
        lines.append(f"  euler characteristic: {d['euler_characteristic']}")
        lines.append(f"  non-flat circles: {d['nonflat_circles']}")
        lines.append(f"  presentation: {d['group']['presentation']['text']}")
        lines.append(f"  H1: {d['group']['h1']['text']}")
    return "\n".join(lines) + "\n"
