"""Reader and writer for the ``.sig`` signature-matrix format.

::

    SIG v1
    n 3
    1 1 2
    1 3 0
    ...
    rows A B C
    cols x y lam

Triplets are 1-based ``i j sigma``; unlisted positions are -inf. ``#``
starts a comment. The ``rows``/``cols`` lines are optional.
"""
from pathlib import Path

from .dae import parse_dae, signature_of
from .errors import FormatError
from .sigma_core import SignatureMatrix


def parse_sig(text: str) -> SignatureMatrix:
    n = None
    entries = {}
    row_labels = col_labels = None
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        if not header_seen:
            if fields != ["SIG", "v1"]:
                raise FormatError("first line must be 'SIG v1'", lineno)
            header_seen = True
            continue
        if n is None:
            if len(fields) != 2 or fields[0] != "n" or not fields[1].isdigit() or int(fields[1]) < 1:
                raise FormatError("expected 'n <N>' with N >= 1", lineno)
            n = int(fields[1])
            continue
        if fields[0] in ("rows", "cols"):
            labels = fields[1:]
            if len(labels) != n:
                raise FormatError(f"{fields[0]} line needs {n} labels, got {len(labels)}", lineno)
            if len(set(labels)) != n:
                raise FormatError(f"duplicate {fields[0]} labels", lineno)
            if fields[0] == "rows":
                if row_labels is not None:
                    raise FormatError("rows given twice", lineno)
                row_labels = labels
            else:
                if col_labels is not None:
                    raise FormatError("cols given twice", lineno)
                col_labels = labels
            continue
        if row_labels is not None or col_labels is not None:
            raise FormatError("triplets must come before rows/cols lines", lineno)
        if len(fields) != 3 or not all(f.isdigit() for f in fields):
            raise FormatError("expected a triplet 'i j sigma' of nonnegative integers", lineno)
        i, j, s = (int(f) for f in fields)
        if not (1 <= i <= n and 1 <= j <= n):
            raise FormatError(f"position ({i},{j}) outside 1..{n}", lineno)
        if (i - 1, j - 1) in entries:
            raise FormatError(f"duplicate entry ({i},{j})", lineno)
        entries[(i - 1, j - 1)] = s
    if not header_seen:
        raise FormatError("empty input; expected 'SIG v1'", 1)
    if n is None:
        raise FormatError("missing 'n <N>' line")
    return SignatureMatrix(n, entries, row_labels, col_labels)


def format_sig(sigma: SignatureMatrix) -> str:
    """Canonical text: triplets sorted by row then column; labels only if non-default."""
    lines = ["SIG v1", f"n {sigma.n}"]
    lines += [f"{i + 1} {j + 1} {s}" for i, j, s in sigma.triplets()]
    default = SignatureMatrix(sigma.n, {})
    for key, labels, plain in (
        ("rows", sigma.row_labels, default.row_labels),
        ("cols", sigma.col_labels, default.col_labels),
    ):
        if labels != plain:
            if any(not lab or any(ch.isspace() for ch in lab) or "#" in lab for lab in labels):
                raise ValueError(f"{key} labels cannot be written to .sig: {labels}")
            lines.append(f"{key} " + " ".join(labels))
    return "\n".join(lines) + "\n"


def load(path) -> SignatureMatrix:
    """Read a ``.sig`` or ``.dae`` file."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".dae":
        return signature_of(parse_dae(text))
    if path.suffix == ".sig":
        return parse_sig(text)
    raise FormatError(f"unknown file type {path.suffix!r}; expected .sig or .dae")
