"""Analysis bundle plus its renderings: text tables, JSON report and DOT.

Indices in every rendered output are 1-based to match the ``.sig`` format.
"""
import json
from dataclasses import dataclass
from typing import Optional

from .assignment import canonical_offsets, d_from_c, solve_hvt
from .blocktri import BtfResult, coarse_blocks, essential_pattern, irreducible_btf
from .fineblock import (
    FineBlockGraph,
    LeadTimeEnumeration,
    btf_block_order,
    build_fbg,
    canonical_lead_times,
    check_lead_times,
    classify_offset_set,
    critical_subgraph,
    enumerate_normalised_lead_times,
    lead_times,
)
from .sigma_core import (
    BlockForm,
    OffsetPair,
    Permutation,
    SignatureMatrix,
    SparsityPattern,
    Transversal,
    jacobian_pattern,
)


@dataclass
class Analysis:
    sigma: SignatureMatrix
    hvt: Transversal
    val: int
    canonical: OffsetPair
    offsets: OffsetPair  # canonical unless the caller supplied others
    coarse: BtfResult
    fine: BtfResult  # fine BTF of S0(offsets)
    sess: SparsityPattern
    fbg: FineBlockGraph  # built from canonical offsets so block numbering is stable
    canonical_k: tuple
    k: Optional[tuple] = None
    enumeration: Optional[LeadTimeEnumeration] = None
    diagnostics: tuple = ()


def analyse(sigma: SignatureMatrix, c=None, k=None, enumerate_bound=None) -> Analysis:
    """Run the full structural analysis.

    ``c`` optionally selects other valid offsets (``d`` is derived on the
    HVT); ``k`` is a lead-time vector to highlight. Raises
    StructurallyIllPosed, InvalidOffsets or NotASolution.
    """
    hvt, val = solve_hvt(sigma)
    canon = canonical_offsets(sigma, hvt)
    if c is None:
        offsets = canon
    else:
        if len(c) != sigma.n:
            raise ValueError(f"--offsets needs {sigma.n} values, got {len(c)}")
        offsets = OffsetPair(tuple(c), d_from_c(sigma, hvt, c))
    s0 = jacobian_pattern(sigma, offsets)  # validates user offsets
    fine = irreducible_btf(s0, hvt)
    fbg = build_fbg(sigma, canon)
    canon_k = canonical_lead_times(fbg)
    diagnostics = []
    if lead_times(fbg, canon.c) != canon_k:
        diagnostics.append("canonical lead times differ from the lead times of the canonical offsets")
    if k is not None:
        k = tuple(k)
        if len(k) != fbg.p:
            raise ValueError(f"--k needs {fbg.p} values, got {len(k)}")
        critical_subgraph(fbg, k)  # raises NotASolution
    enum = None if enumerate_bound is None else enumerate_normalised_lead_times(fbg, enumerate_bound)
    return Analysis(
        sigma,
        hvt,
        val,
        canon,
        offsets,
        coarse_blocks(sigma),
        fine,
        essential_pattern(sigma, canon),
        fbg,
        canon_k,
        k,
        enum,
        tuple(diagnostics),
    )


# --- text --------------------------------------------------------------------


def render_matrix(sigma, bf: Optional[BlockForm] = None, off: Optional[OffsetPair] = None, keep=None):
    """Permuted signature matrix with block separators and offsets.

    Blank cells are -inf. ``keep`` limits the shown entries to a pattern.
    """
    n = sigma.n
    if bf is None:
        bf = BlockForm(Permutation.identity(n), Permutation.identity(n), (n,))
    rows, cols = bf.row_perm.forward, bf.col_perm.forward
    ends = {b for _, b in bf.bounds()}
    cells = [[""] * n for _ in range(n)]
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            s = sigma.entry(i, j)
            if s is not None and (keep is None or (i, j) in keep):
                cells[a][b] = str(s)
    width = max([len(sigma.col_labels[j]) for j in cols] + [len(x) for r in cells for x in r] + [1])
    if off is not None:
        width = max([width] + [len(str(x)) for x in off.d])
    label_w = max(len(sigma.row_labels[i]) for i in rows)

    def line(head, values, tail=""):
        parts = []
        for b, v in enumerate(values):
            parts.append(v.rjust(width))
            if b + 1 in ends and b + 1 < n:
                parts.append("|")
        return f"{head.ljust(label_w)}  " + " ".join(parts) + tail

    out = [line("", [sigma.col_labels[j] for j in cols], "   c" if off is not None else "")]
    for a, i in enumerate(rows):
        tail = f"   {off.c[i]}" if off is not None else ""
        out.append(line(sigma.row_labels[i], cells[a], tail))
        if a + 1 in ends and a + 1 < n:
            out.append(" " * (label_w + 2) + "-" * (len(line("", cells[a])) - label_w - 2))
    if off is not None:
        out.append(line("d", [str(off.d[j]) for j in cols]))
    return "\n".join(out)


def _block_text(sigma, rows, cols):
    r = ",".join(sigma.row_labels[i] for i in rows)
    c = ",".join(sigma.col_labels[j] for j in cols)
    return "{" + r + "}|{" + c + "}"


def _k_text(k):
    return "(" + ",".join(str(x) for x in k) + ")"


def render_fbg(an: Analysis) -> str:
    fbg, sigma = an.fbg, an.sigma
    out = [f"fine-block graph: p={fbg.p}"]
    for l, (rows, cols) in enumerate(fbg.blocks):
        anchor = sigma.row_labels[fbg.anchors[l]]
        out.append(f"  B{l + 1} {_block_text(sigma, rows, cols)}  anchor {anchor}")
    if fbg.edges:
        out.append("  edges (K_to - K_from >= W):")
        for k, l, w in fbg.sorted_edges():
            out.append(f"    B{k + 1} -> B{l + 1}  W={w}")
    else:
        out.append("  no edges")
    out.append(f"  canonical K = {_k_text(an.canonical_k)}")
    out.append(f"  normalised offset set: {classify_offset_set(fbg).value}")
    return "\n".join(out)


def render_summary(an: Analysis) -> str:
    sigma = an.sigma
    hvt = ", ".join(f"({sigma.row_labels[i]},{sigma.col_labels[j]})" for i, j in an.hvt)
    out = [
        f"n = {sigma.n}",
        f"val(Sigma) = {an.val}",
        f"HVT: {hvt}",
        "offsets" + (" (canonical)" if an.offsets == an.canonical else "") + ":",
        "  c = " + " ".join(f"{sigma.row_labels[i]}:{x}" for i, x in enumerate(an.offsets.c)),
        "  d = " + " ".join(f"{sigma.col_labels[j]}:{x}" for j, x in enumerate(an.offsets.d)),
        "coarse blocks: " + "  ".join(_block_text(sigma, r, c) for r, c in an.coarse.blocks()),
        "fine blocks:   " + "  ".join(_block_text(sigma, r, c) for r, c in an.fine.blocks()),
        render_fbg(an),
    ]
    out.extend(render_k(an))
    out.extend(render_enumeration(an))
    out.extend(f"warning: {msg}" for msg in an.diagnostics)
    return "\n".join(out)


def render_k(an: Analysis):
    if an.k is None:
        return []
    chk = check_lead_times(an.fbg, an.k)
    crit = critical_subgraph(an.fbg, an.k)
    flags = [w for w, ok in (("solution", chk.solution), ("valid", chk.valid), ("normalised", chk.normalised)) if ok]
    return [
        f"K = {_k_text(an.k)}: " + " ".join(flags),
        "  critical edges: " + (", ".join(f"B{u + 1}->B{v + 1}" for u, v in sorted(crit.edges)) or "none"),
        "  BTF block order: " + " ".join(f"B{l + 1}" for l in btf_block_order(an.fbg, an.k)),
    ]


def render_enumeration(an: Analysis):
    en = an.enumeration
    if en is None:
        return []
    out = [f"normalised K with max K <= {en.bound}: {len(en.vectors)}"]
    if en.truncated:
        out.append("truncated (set is infinite)")
    out.extend("  " + _k_text(k) for k in en.vectors)
    return out


def render_view(an: Analysis, view: str) -> str:
    sigma = an.sigma
    if view == "sigma":
        return "Sigma (original order):\n" + render_matrix(sigma, off=an.offsets)
    if view == "coarse":
        return f"coarse BTF, block sizes {list(an.coarse.sizes)}:\n" + render_matrix(
            sigma, an.coarse.block_form, an.offsets
        )
    if view == "fine":
        return f"fine BTF, block sizes {list(an.fine.sizes)}:\n" + render_matrix(
            sigma, an.fine.block_form, an.offsets
        )
    if view == "sess":
        return f"essential pattern ({len(an.sess)} entries) in fine block form:\n" + render_matrix(
            sigma, an.fbg.fine.block_form, keep=an.sess.positions
        )
    if view == "fbg":
        return render_fbg(an)
    raise ValueError(f"unknown view {view!r}")


# --- JSON ---------------------------------------------------------------------


def _blocks_json(sigma, btf):
    return [
        {"rows": [sigma.row_labels[i] for i in r], "cols": [sigma.col_labels[j] for j in c]}
        for r, c in btf.blocks()
    ]


def to_json_dict(an: Analysis) -> dict:
    sigma, fbg = an.sigma, an.fbg
    fine_bf = an.fine.block_form
    data = {
        "n": sigma.n,
        "labels": {"rows": list(sigma.row_labels), "cols": list(sigma.col_labels)},
        "sigma": [[i + 1, j + 1, s] for i, j, s in sigma.triplets()],
        "hvt": [[i + 1, j + 1] for i, j in an.hvt],
        "val": an.val,
        "offsets": {
            "c": list(an.offsets.c),
            "d": list(an.offsets.d),
            "canonical": an.offsets == an.canonical,
        },
        "coarse": {"sizes": list(an.coarse.sizes), "blocks": _blocks_json(sigma, an.coarse)},
        "fine": {
            "sizes": list(an.fine.sizes),
            "blocks": _blocks_json(sigma, an.fine),
            "order": {
                "rows": [sigma.row_labels[i] for i in fine_bf.row_perm.forward],
                "cols": [sigma.col_labels[j] for j in fine_bf.col_perm.forward],
            },
        },
        "sess": [[i + 1, j + 1, sigma.entry(i, j)] for i, j in an.sess],
        "fbg": {
            "p": fbg.p,
            "blocks": _blocks_json(sigma, fbg.fine),
            "edges": [{"from": k + 1, "to": l + 1, "w": w} for k, l, w in fbg.sorted_edges()],
            "local_c": list(fbg.local_c),
            "local_d": list(fbg.local_d),
            "anchors": [i + 1 for i in fbg.anchors],
            "canonical_K": list(an.canonical_k),
            "classification": classify_offset_set(fbg).value,
        },
    }
    if an.k is not None:
        chk = check_lead_times(fbg, an.k)
        data["k"] = {
            "K": list(an.k),
            "solution": chk.solution,
            "valid": chk.valid,
            "normalised": chk.normalised,
            "critical_edges": [[u + 1, v + 1] for u, v in sorted(critical_subgraph(fbg, an.k).edges)],
            "btf_order": [l + 1 for l in btf_block_order(fbg, an.k)],
        }
    if an.enumeration is not None:
        data["enumeration"] = {
            "bound": an.enumeration.bound,
            "vectors": [list(k) for k in an.enumeration.vectors],
            "truncated": an.enumeration.truncated,
        }
    if an.diagnostics:
        data["diagnostics"] = list(an.diagnostics)
    return data


def _is_flat(value):
    return isinstance(value, list) and all(
        not isinstance(x, (dict, list)) or (isinstance(x, list) and _is_flat(x) and not any(isinstance(y, list) for y in x))
        for x in value
    )


def _dump(value, level=0):
    # short scalar arrays (and arrays of them) stay on one line
    pad = "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(value, list) and not _is_flat(value):
        items = [pad + _dump(v, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    return json.dumps(value, separators=(", ", ": "))


def to_json(an: Analysis) -> str:
    return _dump(to_json_dict(an)) + "\n"


# --- DOT ----------------------------------------------------------------------


def _dot_escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


def fbg_to_dot(fbg: FineBlockGraph, k=None) -> str:
    """Graphviz source for the FBG; with ``k``, critical edges are bold."""
    sigma = fbg.sigma
    crit = set() if k is None else set(critical_subgraph(fbg, k).edges)
    out = ["digraph FBG {", "  node [shape=box];"]
    for l, (rows, cols) in enumerate(fbg.blocks):
        label = f"B{l + 1}\\n" + _dot_escape(_block_text(sigma, rows, cols))
        if k is not None:
            label += f"\\nK={k[l]}"
        out.append(f'  B{l + 1} [label="{label}"];')
    for a, b, w in fbg.sorted_edges():
        style = ", style=bold" if (a, b) in crit else ""
        out.append(f'  B{a + 1} -> B{b + 1} [label="{w}"{style}];')
    out.append("}")
    return "\n".join(out) + "\n"
