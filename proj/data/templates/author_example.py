"""Writes example_cyrillic.json, an illustrative template set.

Shapes are rough hand-placed point lists; handles come from Catmull-Rom
tangents. A trailing "!" marks a cusp node, "|" an interrupt and "~" a
node cut off inside a word. Coordinates: x to the right, y down, baseline
at 0, x-height at -1.
"""

import json
import pathlib


def stroke(spec):
    pts, flags = [], []
    for item in spec:
        x, y, *rest = item
        pts.append((x, y))
        flags.append(rest[0] if rest else "")
    nodes = []
    n = len(pts)
    for i, (p, f) in enumerate(zip(pts, flags)):
        if "!" in f:
            q = pts[i + 1]
            v = ((q[0] - p[0]) / 3, (q[1] - p[1]) / 3)
        elif i == 0:
            q = pts[1]
            v = ((q[0] - p[0]) / 3, (q[1] - p[1]) / 3)
        elif i == n - 1:
            q = pts[i - 1]
            v = ((p[0] - q[0]) / 3, (p[1] - q[1]) / 3)
        else:
            a, b = pts[i - 1], pts[i + 1]
            v = ((b[0] - a[0]) / 6, (b[1] - a[1]) / 6)
        node = {"p": [round(p[0], 4), round(p[1], 4)], "v": [round(v[0], 4), round(v[1], 4)]}
        names = []
        if "!" in f:
            names.append("direction_change")
        if "|" in f:
            names.append("interrupt_after")
        if "~" in f:
            names.append("cutoff_if_medial")
        if names:
            node["flags"] = names
        nodes.append(node)
    return nodes


def glyph(ch, variant, advance, strokes, aux=(), joins=True):
    g = {"char": ch, "variant": variant, "advance": advance,
         "strokes": [stroke(s) for s in strokes]}
    if aux:
        g["aux"] = [stroke(s) for s in aux]
    if not joins:
        g["joins"] = False
    return g


E = [(0.30, -1.30), (0.33, -1.25)]
E2 = [(0.60, -1.30), (0.63, -1.25)]
DOT = [(0.10, -0.05), (0.14, 0.0)]

IE = [(0, -0.05), (0.25, -0.35), (0.6, -0.55), (0.55, -0.95), (0.2, -0.75), (0.15, -0.2),
      (0.45, 0.0), (0.8, -0.15)]
I = [(0, -0.05), (0.2, -0.8), (0.25, -1.0, "!"), (0.22, -0.2), (0.4, 0.0), (0.65, -0.5),
     (0.75, -1.0, "!"), (0.72, -0.2), (0.85, 0.0), (1.0, -0.1)]
SOFT = [(0, -0.05), (0.2, -1.0, "!"), (0.2, -0.05, "!"), (0.25, -0.5), (0.55, -0.5), (0.6, -0.2),
        (0.35, 0.0), (0.25, -0.15)]

GLYPHS = [
    glyph("а", "v0", 1.0, [[(0, -0.05), (0.55, -0.9), (0.3, -1.0), (0.08, -0.6), (0.2, -0.05),
                            (0.55, -0.35), (0.72, -1.0, "!"), (0.7, -0.2), (0.85, 0.0),
                            (1.0, -0.1)]]),
    glyph("б", "v0", 0.95, [[(0, -0.05), (0.25, -0.6), (0.45, -0.95), (0.7, -0.7), (0.55, -0.1),
                             (0.25, -0.05), (0.2, -0.6), (0.5, -1.45), (0.95, -1.7, "|")]]),
    glyph("в", "v0", 0.85, [[(0, -0.05), (0.2, -0.55), (0.3, -1.0), (0.6, -0.95), (0.55, -0.6),
                             (0.3, -0.5), (0.7, -0.35), (0.6, 0.0), (0.25, -0.05),
                             (0.45, -0.45), (0.85, -0.55)]]),
    glyph("г", "v0", 0.75, [[(0, -0.05), (0.3, -0.85), (0.55, -1.0), (0.7, -0.8), (0.45, -0.3),
                             (0.4, -0.05), (0.75, -0.1)]]),
    glyph("д", "v0", 0.95, [[(0, -0.05), (0.5, -0.95), (0.2, -0.9), (0.1, -0.4), (0.4, -0.1),
                             (0.65, -0.6), (0.7, -1.0, "!"), (0.55, 0.3), (0.25, 0.65),
                             (0.15, 0.4), (0.55, 0.05), (0.95, -0.1)]]),
    glyph("е", "v0", 0.8, [IE]),
    glyph("ё", "v0", 0.8, [IE], aux=[E, E2]),
    glyph("ж", "v0", 1.3, [[(0.0, -0.95), (0.35, -0.55), (0.0, -0.05)],
                           [(0.6, -1.0), (0.6, -0.05)],
                           [(1.2, -0.95), (0.85, -0.55), (1.2, -0.05), (1.3, -0.1)]]),
    glyph("з", "v0", 0.8, [[(0, -0.85), (0.35, -1.0), (0.6, -0.8), (0.3, -0.5), (0.65, -0.3),
                            (0.5, 0.3), (0.2, 0.6), (0.1, 0.35), (0.5, 0.05), (0.8, -0.1)]]),
    glyph("и", "v0", 1.0, [I]),
    glyph("й", "v0", 1.0, [I], aux=[[(0.3, -1.4), (0.5, -1.2), (0.7, -1.4)]]),
    glyph("к", "v0", 0.85, [[(0.1, -1.0), (0.05, -0.05)],
                            [(0.75, -0.95), (0.35, -0.55), (0.15, -0.5), (0.45, -0.4),
                             (0.7, 0.0), (0.85, -0.1)]]),
    glyph("л", "v0", 0.9, [[(0, -0.05), (0.25, -0.3), (0.4, -0.9), (0.6, -1.0, "!"),
                            (0.65, -0.3), (0.75, 0.0), (0.9, -0.1, "~")]]),
    glyph("м", "v0", 1.0, [[(0, -0.05), (0.25, -1.0, "!"), (0.45, -0.35, "!"), (0.7, -1.0, "!"),
                            (0.8, -0.1), (1.0, -0.05)]]),
    glyph("н", "v0", 1.0, [[(0, -0.05), (0.25, -1.0, "!"), (0.2, 0.0, "!"), (0.25, -0.5),
                            (0.7, -0.55), (0.75, -1.0, "!"), (0.72, -0.15), (0.85, 0.0),
                            (1.0, -0.1)]]),
    glyph("о", "v0", 0.8, [[(0, -0.05), (0.45, -1.0), (0.15, -0.8), (0.12, -0.2), (0.4, 0.0),
                            (0.65, -0.35), (0.6, -0.9), (0.8, -0.85)]]),
    glyph("п", "v0", 1.0, [[(0, -0.05), (0.2, -0.6), (0.25, -1.0, "!"), (0.2, -0.05, "!"),
                            (0.3, -0.75), (0.55, -1.0), (0.75, -0.75), (0.72, -0.15),
                            (0.85, 0.0), (1.0, -0.1)]]),
    glyph("р", "v0", 0.85, [[(0, -0.05), (0.2, -0.8), (0.25, -1.0, "!"), (0.2, 0.7, "!"),
                             (0.25, -0.6), (0.5, -1.0), (0.75, -0.55), (0.55, -0.05),
                             (0.3, -0.15), (0.85, -0.1)]]),
    glyph("с", "v0", 0.7, [[(0.65, -0.85), (0.4, -1.0), (0.12, -0.7), (0.15, -0.15), (0.45, 0.0),
                            (0.7, -0.15)]]),
    glyph("т", "v0", 1.05, [[(0, -0.05), (0.18, -0.95, "!"), (0.18, -0.05, "!"), (0.4, -0.95),
                             (0.55, -0.1, "!"), (0.75, -0.95), (0.9, -0.1), (1.05, -0.05)]]),
    glyph("т", "v1", 0.85, [[(0.0, -0.95), (0.8, -1.0)],
                            [(0.4, -1.0), (0.4, -0.05), (0.6, -0.05), (0.85, -0.1)]]),
    glyph("у", "v0", 0.85, [[(0, -0.85), (0.15, -0.35), (0.4, -0.1), (0.65, -0.5),
                             (0.7, -1.0, "!"), (0.6, 0.4), (0.35, 0.7), (0.2, 0.45),
                             (0.55, 0.05), (0.85, -0.1)]]),
    glyph("ф", "v0", 1.0, [[(0.5, -1.6), (0.5, 0.65)],
                           [(0.5, -0.95), (0.15, -0.8), (0.1, -0.2), (0.5, -0.05)],
                           [(0.5, -0.95), (0.85, -0.8), (0.9, -0.2), (0.5, -0.05),
                            (1.0, -0.1)]]),
    glyph("х", "v0", 0.85, [[(0.75, -1.0), (0.15, -0.05)],
                            [(0, -0.85), (0.2, -1.0), (0.45, -0.5), (0.65, 0.0),
                             (0.85, -0.1)]]),
    glyph("ц", "v0", 1.05, [[(0, -0.05), (0.22, -1.0, "!"), (0.2, -0.1), (0.4, 0.0),
                             (0.6, -0.4), (0.7, -1.0, "!"), (0.7, -0.05), (0.85, 0.0),
                             (0.9, 0.3), (1.05, -0.05)]]),
    glyph("ч", "v0", 1.0, [[(0, -0.8), (0.2, -1.0, "!"), (0.15, -0.55), (0.4, -0.4),
                            (0.65, -0.6), (0.7, -1.0, "!"), (0.7, -0.15), (0.85, 0.0),
                            (1.0, -0.1)]]),
    glyph("ш", "v0", 1.2, [[(0, -0.05), (0.22, -1.0, "!"), (0.2, -0.15), (0.35, 0.0),
                            (0.5, -0.2), (0.55, -1.0, "!"), (0.55, -0.15), (0.7, 0.0),
                            (0.85, -0.2), (0.9, -1.0, "!"), (0.9, -0.15), (1.05, 0.0),
                            (1.2, -0.1)]]),
    glyph("щ", "v0", 1.25, [[(0, -0.05), (0.22, -1.0, "!"), (0.2, -0.15), (0.35, 0.0),
                             (0.5, -0.2), (0.55, -1.0, "!"), (0.55, -0.15), (0.7, 0.0),
                             (0.85, -0.2), (0.9, -1.0, "!"), (0.9, -0.05), (1.1, -0.05),
                             (1.12, 0.35), (1.25, -0.05)]]),
    glyph("ъ", "v0", 0.8, [[(0, -0.9), (0.15, -1.0), (0.25, -0.9, "!"), (0.25, -0.05, "!"),
                            (0.3, -0.5), (0.6, -0.5), (0.65, -0.2), (0.4, 0.0), (0.3, -0.15),
                            (0.8, -0.1)]]),
    glyph("ы", "v0", 1.05, [SOFT, [(0.85, -1.0), (0.82, -0.1), (0.95, 0.0), (1.05, -0.1)]]),
    glyph("ь", "v0", 0.7, [SOFT + [(0.7, -0.1)]]),
    glyph("э", "v0", 0.7, [[(0.05, -0.85), (0.35, -1.0), (0.65, -0.7), (0.6, -0.2), (0.3, 0.0),
                            (0.05, -0.15)],
                           [(0.25, -0.5), (0.62, -0.5)]]),
    glyph("ю", "v0", 0.95, [[(0, -1.0), (0.05, -0.05)], [(0.05, -0.5), (0.3, -0.5)],
                            [(0.55, -1.0), (0.32, -0.6), (0.45, 0.0), (0.75, -0.3),
                             (0.7, -0.9), (0.55, -1.0, "!"), (0.95, -0.85)]]),
    glyph("я", "v0", 0.95, [[(0, -0.05), (0.25, -0.35), (0.55, -0.5), (0.25, -0.65),
                             (0.35, -1.0), (0.65, -1.0, "!"), (0.62, -0.1), (0.8, 0.0),
                             (0.95, -0.1)]]),
    glyph(".", "v0", 0.3, [DOT], joins=False),
    glyph(",", "v0", 0.3, [[(0.15, -0.05), (0.1, 0.25)]], joins=False),
    glyph("!", "v0", 0.35, [[(0.2, -1.6), (0.15, -0.35)], DOT], joins=False),
    glyph("?", "v0", 0.7, [[(0.05, -1.3), (0.35, -1.6), (0.6, -1.3), (0.35, -0.8),
                            (0.33, -0.35)], [(0.31, -0.05), (0.35, 0.0)]], joins=False),
    glyph("-", "v0", 0.5, [[(0.05, -0.5), (0.45, -0.5)]], joins=False),
    glyph("—", "v0", 1.0, [[(0.05, -0.5), (0.95, -0.5)]], joins=False),
    glyph(":", "v0", 0.3, [[(0.15, -0.75), (0.18, -0.7)], DOT], joins=False),
    glyph(";", "v0", 0.3, [[(0.15, -0.75), (0.18, -0.7)], [(0.15, -0.05), (0.1, 0.25)]],
          joins=False),
]

charset = "".join(sorted({g["char"] for g in GLYPHS}))
db = {"version": 1, "uppercase_scale": 1.6,
      "note": "Illustrative example set, not derived from any real handwriting sample.",
      "charset": charset, "glyphs": GLYPHS}
out = pathlib.Path(__file__).with_name("example_cyrillic.json")
out.write_text(json.dumps(db, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
