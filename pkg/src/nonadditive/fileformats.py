"""Line-oriented text formats for potentials, matrix generators and weights.

Blank lines and ``#`` comments are ignored everywhere.  Every parse error
raises :class:`FormatError` naming the file and the 1-based line.

Potential::

    alphabet 2
    window 2
    00 0.5
    01 -1
    ...

Generator (``window`` optional, default 1; one ``d x d`` block per word)::

    alphabet 2
    dim 2
    1 2
    3 4
    ...

Weights: ``bernoulli p_0 ... p_{k-1}``; ``markov`` then a ``pi`` line and
``k`` rows of ``Q``; ``hmm d`` then a ``pi`` line and ``k`` blocks of ``d``
rows; ``table D`` then ``word logweight`` lines for every word of length
``1..D``.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .cocycles import MatrixGenerator
from .errors import DegenerateMeasureError, FormatError
from .measures import Bernoulli, ExplicitTable, HiddenMarkov, Markov
from .potentials import LocallyConstantPotential
from .shift import word_index, word_str, words_array


def _lines(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(path, 0, f"cannot read file: {exc.strerror}") from None
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line.split()))
    return path, out


def _float(path, ln, tok):
    try:
        v = float(tok)
    except ValueError:
        raise FormatError(path, ln, f"not a number: {tok!r}") from None
    if not np.isfinite(v):
        raise FormatError(path, ln, f"value must be finite: {tok!r}")
    return v


def _int(path, ln, tok, what):
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(path, ln, f"{what} must be an integer, got {tok!r}") from None
    return v


def _header(path, lines, pos, key):
    if pos >= len(lines):
        raise FormatError(path, lines[-1][0] if lines else 0, f"missing '{key}' header")
    ln, toks = lines[pos]
    if toks[0] != key or len(toks) != 2:
        raise FormatError(path, ln, f"expected '{key} <int>'")
    return _int(path, ln, toks[1], key)


def _word(path, ln, tok, k, r):
    if len(tok) != r or any(not c.isdigit() or int(c) >= k for c in tok):
        raise FormatError(path, ln, f"word {tok!r} is not a length-{r} word over {k} symbols")
    return tuple(int(c) for c in tok)


def load_potential(path) -> LocallyConstantPotential:
    path, lines = _lines(path)
    k = _header(path, lines, 0, "alphabet")
    r = _header(path, lines, 1, "window")
    if k < 2 or k > 10:
        raise FormatError(path, lines[0][0], "alphabet must be between 2 and 10")
    if r < 1:
        raise FormatError(path, lines[1][0], "window must be positive")
    vals = np.full(k**r, np.nan)
    for ln, toks in lines[2:]:
        if len(toks) != 2:
            raise FormatError(path, ln, "expected '<word> <value>'")
        w = _word(path, ln, toks[0], k, r)
        i = word_index(w, k)
        if not np.isnan(vals[i]):
            raise FormatError(path, ln, f"duplicate word {toks[0]}")
        vals[i] = _float(path, ln, toks[1])
    missing = np.flatnonzero(np.isnan(vals))
    if missing.size:
        w = word_str(words_array(k, r)[missing[0]])
        raise FormatError(path, lines[-1][0], f"missing value for word {w}")
    return LocallyConstantPotential(k, r, vals)


def dump_potential(phi: LocallyConstantPotential, path):
    rows = [f"alphabet {phi.k}", f"window {phi.r}"]
    for w, v in zip(words_array(phi.k, phi.r), phi.values):
        rows.append(f"{word_str(w)} {float(v)!r}")
    Path(path).write_text("\n".join(rows) + "\n")


def load_generator(path) -> MatrixGenerator:
    path, lines = _lines(path)
    k = _header(path, lines, 0, "alphabet")
    d = _header(path, lines, 1, "dim")
    pos, r = 2, 1
    if pos < len(lines) and lines[pos][1][0] == "window":
        r = _header(path, lines, pos, "window")
        pos += 1
    if k < 2 or d < 1 or r < 1:
        raise FormatError(path, lines[0][0], "alphabet >= 2, dim >= 1, window >= 1 required")
    body = lines[pos:]
    need = k**r * d
    if len(body) != need:
        at = body[-1][0] if body else lines[-1][0]
        raise FormatError(path, at, f"expected {need} matrix rows, found {len(body)}")
    mats = np.empty((k**r, d, d))
    for j, (ln, toks) in enumerate(body):
        if len(toks) != d:
            raise FormatError(path, ln, f"expected {d} entries")
        row = [_float(path, ln, t) for t in toks]
        if min(row) <= 0:
            raise FormatError(path, ln, "generator entries must be > 0")
        mats[j // d, j % d] = row
    return MatrixGenerator(k, mats, r)


def dump_generator(A: MatrixGenerator, path):
    rows = [f"alphabet {A.k}", f"dim {A.d}"]
    if A.r != 1:
        rows.append(f"window {A.r}")
    for m in A.mats:
        rows.extend(" ".join(repr(float(x)) for x in row) for row in m)
    Path(path).write_text("\n".join(rows) + "\n")


def _rows(path, lines, n, width):
    if len(lines) < n:
        raise FormatError(path, lines[-1][0] if lines else 0, f"expected {n} more rows")
    out = []
    for ln, toks in lines[:n]:
        if len(toks) != width:
            raise FormatError(path, ln, f"expected {width} entries")
        out.append([_float(path, ln, t) for t in toks])
    return np.array(out), lines[n:]


def load_weights(path):
    path, lines = _lines(path)
    if not lines:
        raise FormatError(path, 0, "empty weights file")
    ln, toks = lines[0]
    kind = toks[0]
    try:
        if kind == "bernoulli":
            return Bernoulli([_float(path, ln, t) for t in toks[1:]])
        if kind == "markov":
            if len(lines) < 2:
                raise FormatError(path, ln, "markov needs a pi line")
            pl, pt = lines[1]
            pi = [_float(path, pl, t) for t in pt]
            Q, rest = _rows(path, lines[2:], len(pi), len(pi))
            if rest:
                raise FormatError(path, rest[0][0], "unexpected trailing rows")
            return Markov(pi, Q)
        if kind == "hmm":
            if len(toks) != 2:
                raise FormatError(path, ln, "expected 'hmm <d>'")
            d = _int(path, ln, toks[1], "hidden dimension")
            if len(lines) < 2:
                raise FormatError(path, ln, "hmm needs a pi line")
            pl, pt = lines[1]
            if len(pt) != d:
                raise FormatError(path, pl, f"pi needs {d} entries")
            pi = [_float(path, pl, t) for t in pt]
            body = lines[2:]
            if len(body) % d or not body:
                raise FormatError(path, body[-1][0] if body else pl,
                                  f"block rows must come in multiples of {d}")
            mats, _ = _rows(path, body, len(body), d)
            return HiddenMarkov(pi, mats.reshape(-1, d, d))
        if kind == "table":
            if len(toks) != 2:
                raise FormatError(path, ln, "expected 'table <D>'")
            D = _int(path, ln, toks[1], "depth")
            entries = {}
            for wl, wt in lines[1:]:
                if len(wt) != 2 or not wt[0].isdigit():
                    raise FormatError(path, wl, "expected '<word> <logweight>'")
                if wt[0] in entries:
                    raise FormatError(path, wl, f"duplicate word {wt[0]}")
                if not 1 <= len(wt[0]) <= D:
                    raise FormatError(path, wl, f"word length must be between 1 and {D}")
                entries[wt[0]] = (wl, _float(path, wl, wt[1]))
            k = sum(1 for w in entries if len(w) == 1)
            if k < 2:
                raise FormatError(path, ln, "table needs every length-1 word")
            for w, (wl, _) in entries.items():
                _word(path, wl, w, k, len(w))
            tabs = []
            for n in range(1, D + 1):
                t = np.full(k**n, np.nan)
                for w in words_array(k, n):
                    key = word_str(w)
                    if key not in entries:
                        raise FormatError(path, lines[-1][0], f"missing log-weight for {key}")
                    t[word_index(w, k)] = entries[key][1]
                tabs.append(t)
            return ExplicitTable(k, tabs)
    except DegenerateMeasureError as exc:
        raise FormatError(path, ln, str(exc)) from None
    raise FormatError(path, ln, f"unknown weights kind {kind!r}")


def dump_weights(weights, path):
    kind = weights.kind
    if kind == "bernoulli":
        rows = ["bernoulli " + " ".join(repr(float(p)) for p in weights.p)]
    elif kind == "markov":
        rows = ["markov", " ".join(repr(float(p)) for p in weights.pi)]
        rows += [" ".join(repr(float(x)) for x in row) for row in weights.Q]
    elif kind == "hmm":
        rows = [f"hmm {weights.d}", " ".join(repr(float(p)) for p in weights.pi)]
        for m in weights.mats:
            rows += [" ".join(repr(float(x)) for x in row) for row in m]
    elif kind == "table":
        rows = [f"table {weights.depth}"]
        for n, t in enumerate(weights.tables, start=1):
            for w, v in zip(words_array(weights.k, n), t):
                rows.append(f"{word_str(w)} {float(v)!r}")
    else:
        raise ValueError(f"cannot serialize weights of kind {kind}")
    Path(path).write_text("\n".join(rows) + "\n")
