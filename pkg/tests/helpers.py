"""Test-only oracles: a corpus generator with known ground truth, brute-force
metric recounts, and a small DOT reader."""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field

CC_KINDS = {"ObjectDeclaration", "Inheritance"}
DEP_KINDS = {"Parameter", "ReturnType", "LocalVariable"}


# ---------------------------------------------------------------------------
# random corpora


@dataclass
class GeneratedCorpus:
    files: list[tuple[str, str]]
    classes: list[str]
    # multiset of (source, target, kind) the generator deliberately wrote
    expected: Counter = field(default_factory=Counter)
    visible: dict[str, int] = field(default_factory=dict)


_EXTERNAL = ["String", "int", "long", "java.util.List<String>", "Object", "double[]"]


def random_corpus(seed: int, n_classes: int = 12, package: str = "gen") -> GeneratedCorpus:
    rng = random.Random(seed)
    names = [f"C{i}" for i in range(n_classes)]
    iface_count = max(1, n_classes // 6)
    interfaces = set(rng.sample(names, iface_count))
    corpus = GeneratedCorpus([], [f"{package}.{n}" for n in names])

    def q(n: str) -> str:
        return f"{package}.{n}"

    def record(src: str, dst: str, kind: str, times: int = 1) -> None:
        if src != dst:
            corpus.expected[q(src), q(dst), kind] += times

    def user_or_external(owner: str) -> tuple[str, str | None]:
        if rng.random() < 0.65:
            t = rng.choice(names)
            form = rng.random()
            if form < 0.2:
                return f"{t}[]", t
            if form < 0.4:
                return f"java.util.List<{t}>", t
            return t, t
        return rng.choice(_EXTERNAL), None

    for name in names:
        lines = [f"package {package};", "", f"// generated class {name}; new {rng.choice(names)}() in a comment"]
        visible = 0
        if name in interfaces:
            parents = rng.sample(sorted(interfaces - {name}), k=min(len(interfaces) - 1, rng.randint(0, 1)))
            header = f"public interface {name}"
            if parents:
                header += " extends " + ", ".join(parents)
                for p in parents:
                    record(name, p, "Inheritance")
            lines.append(header + " {")
            for m in range(rng.randint(0, 3)):
                rtype, rt = user_or_external(name)
                ptype, pt = user_or_external(name)
                lines.append(f"    {rtype} op{m}({ptype} arg);")
                visible += 1
                if rt:
                    record(name, rt, "ReturnType")
                if pt:
                    record(name, pt, "Parameter")
            lines.append("}")
        else:
            header = f"public class {name}"
            classes = [n for n in names if n not in interfaces and n != name]
            if classes and rng.random() < 0.4:
                parent = rng.choice(classes)
                header += f" extends {parent}"
                record(name, parent, "Inheritance")
            impls = rng.sample(sorted(interfaces), k=rng.randint(0, min(2, len(interfaces))))
            if impls:
                header += " implements " + ", ".join(impls)
                for i in impls:
                    record(name, i, "Inheritance")
            lines.append(header + " {")
            for f in range(rng.randint(0, 4)):
                ftype, ft = user_or_external(name)
                vis = rng.choice(["private ", "public ", "protected ", ""])
                visible += vis != "private "
                init = ""
                if ft and not ftype.endswith("[]") and not ftype.startswith("java") and rng.random() < 0.3:
                    sub = rng.choice([n for n in names if n not in interfaces] or [ft])
                    init = f" = new {sub}()"
                    if sub != ft:
                        record(name, sub, "ObjectDeclaration")
                lines.append(f"    {vis}{ftype} f{f}{init};")
                if ft:
                    record(name, ft, "ObjectDeclaration")
            for m in range(rng.randint(0, 4)):
                rtype, rt = user_or_external(name)
                vis = rng.choice(["private ", "public ", "protected ", ""])
                visible += vis != "private "
                params, pts = [], []
                for p in range(rng.randint(0, 3)):
                    ptype, pt = user_or_external(name)
                    params.append(f"{ptype} p{p}")
                    if pt:
                        pts.append(pt)
                lines.append(f"    {vis}{rtype} m{m}({', '.join(params)}) {{")
                if rt:
                    record(name, rt, "ReturnType")
                for pt in pts:
                    record(name, pt, "Parameter")
                for s in range(rng.randint(0, 3)):
                    t = rng.choice(names)
                    choice = rng.random()
                    if choice < 0.3:
                        lines.append(f"        {t} v{s} = null;")
                        record(name, t, "LocalVariable")
                    elif choice < 0.5 and t not in interfaces:
                        lines.append(f"        {t} v{s} = new {t}();")
                        record(name, t, "LocalVariable", 2)
                    elif choice < 0.7 and t not in interfaces:
                        lines.append(f"        use(new {t}());")
                        record(name, t, "LocalVariable")
                    elif choice < 0.85:
                        lines.append(f'        String s{s} = "{t} x = new {t}();";')
                    else:
                        lines.append(f"        int n{s} = {s}; /* {t} y; */")
                lines.append("        return 0;" if rtype in ("int", "long") else "        return null;")
                lines.append("    }")
            lines.append("}")
        corpus.visible[q(name)] = visible
        corpus.files.append((f"{package}/{name}.java", "\n".join(lines) + "\n"))
    return corpus


# ---------------------------------------------------------------------------
# brute-force metrics


def brute_metrics(rows: list[tuple[str, str, str]], classes: list[str], visible: dict[str, int]) -> dict[str, tuple]:
    """Recount all six measures straight from (source, target, kind) triples."""
    out = {}
    for c in classes:
        dep_out = [t for s, t, k in rows if s == c and k in DEP_KINDS]
        dep_in = [s for s, t, k in rows if t == c and k in DEP_KINDS]
        cc_pairs = {(s, t) for s, t, k in rows if k in CC_KINDS}
        client = len({t for s, t in cc_pairs if s == c})
        server = len({s for s, t in cc_pairs if t == c})
        out[c] = (len(set(dep_out)), len(dep_out), len(set(dep_in)), len(dep_in), client + server, visible.get(c, 0))
    return out


def evidence_rows(evidences) -> list[tuple[str, str, str]]:
    return [(e.source_class, e.target_class, e.kind.value) for e in evidences]


def star_sources(leaves: int = 8, hub: str = "Hub") -> list[tuple[str, str]]:
    files = [(f"{hub}.java", f"public class {hub} {{ }}\n")]
    for i in range(1, leaves + 1):
        files.append((f"Leaf{i}.java", f"class Leaf{i} {{ {hub} h = new {hub}(); }}\n"))
    return files


# ---------------------------------------------------------------------------
# DOT


_DOT_TOKEN = re.compile(r'\s*(?:(?P<str>"(?:[^"\\]|\\.)*")|(?P<id>[A-Za-z_][A-Za-z0-9_.]*)|(?P<arrow>->)|(?P<p>[{}\[\];,=]))')


class DotSyntaxError(ValueError):
    pass


def _dot_tokens(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if not m:
            raise DotSyntaxError(f"bad character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "str":
            value = re.sub(r"\\(.)", r"\1", value[1:-1])
            kind = "id"
        out.append((kind, value))
        pos = m.end()
    return out


def parse_dot(text: str) -> tuple[str, dict[str, dict], list[tuple[str, str, dict]]]:
    """Read the subset of DOT the tool emits: digraph, node/edge statements, attribute lists."""
    toks = _dot_tokens(text) + [("eof", "")]
    i = 0

    def take(kind=None, value=None):
        nonlocal i
        k, v = toks[i]
        if k == "eof":
            raise DotSyntaxError("unexpected end of input")
        if (kind and k != kind) or (value is not None and v != value):
            raise DotSyntaxError(f"expected {value or kind}, got {v!r}")
        i += 1
        return v

    def attrs() -> dict:
        out = {}
        if toks[i] == ("p", "["):
            take("p", "[")
            while toks[i] != ("p", "]"):
                key = take("id")
                take("p", "=")
                out[key] = take("id")
                if toks[i] == ("p", ","):
                    take("p", ",")
            take("p", "]")
        return out

    take("id", "digraph")
    name = take("id")
    take("p", "{")
    nodes: dict[str, dict] = {}
    edges: list[tuple[str, str, dict]] = []
    while toks[i] != ("p", "}"):
        if toks[i][0] == "eof":
            raise DotSyntaxError("unexpected end of input")
        first = take("id")
        if first in ("node", "edge", "graph"):
            attrs()
        elif toks[i][0] == "arrow":
            take("arrow")
            second = take("id")
            edges.append((first, second, attrs()))
        else:
            nodes[first] = attrs()
        take("p", ";")
    take("p", "}")
    if toks[i][0] != "eof":
        raise DotSyntaxError("trailing tokens after graph")
    for s, t, _ in edges:
        if s not in nodes or t not in nodes:
            raise DotSyntaxError(f"edge {s}->{t} references an undeclared node")
    return name, nodes, edges
