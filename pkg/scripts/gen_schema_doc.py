"""Regenerate docs/schema.md from live CLI output.

    python scripts/gen_schema_doc.py
"""
import contextlib
import io
from pathlib import Path

from biinvariant import cli

EXAMPLES = [
    ("validate", ["validate", "--algebra", "su2"]),
    ("classify", ["classify", "--algebra", "heisenberg(3)"]),
    ("cohomology", ["cohomology", "--algebra", "heisenberg(3)"]),
    ("primitivity", ["primitivity", "--algebra", "abelian(2)"]),
    ("report", ["report", "--algebra", "heisenberg(3)", "--samples", "2"]),
]

HEADER = """\
# JSON output schema

Every command accepts `--format json`.  Output is a single object rendered
with sorted keys and two-space indentation, so it is byte-identical for a
fixed input and `--seed`.  Rationals are strings `"p/q"` or `"p"`; the only
floats are in the `numeric` section of `report`.

Forms are listed as `terms`, a list of `[i, j, coefficient]` with `i < j`,
meaning the sum of `coefficient * e_i^* ^ e_j^*`, plus a `pretty` string.
`space` says which basis `e_i` refers to: `"g"` for the algebra, `"a"` for
the abelianization, whose basis is the image of the non-pivot coordinates of
`[g, g]` (see the README), and `"a+a"` for defects, where `e{i}[c]` is basis
vector `i` of copy `c`.

Shared fields:

| field | meaning |
| --- | --- |
| `command` | subcommand name |
| `algebra` | `{name, dim, has_realization}` |
| `ok` | false iff an identity check failed (exit status 1) |

Several `--algebra` values given to `report` produce
`{"command": "report", "reports": [...]}` with one report per algebra, in the
order given.

Exit status: 0 success, 1 analysis failure, 2 input error (message on stderr).

## Input file

```json
{
  "name": "heisenberg(3)",
  "dim": 3,
  "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}],
  "realization": null
}
```

`brackets` stores `[e_i, e_j]` for `i < j` only.  `coeffs` maps a basis index
to a rational string.  `realization`, if present, is a list of `dim` square
matrices, each a list of rows of rational strings.

The examples below are frozen outputs of the commands shown.  The test suite
checks that they still match.
"""


def capture(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv + ["--format", "json"])
    return code, buf.getvalue()


def render() -> str:
    parts = [HEADER]
    for title, argv in EXAMPLES:
        code, out = capture(argv)
        parts.append(f"\n## {title}\n\n`biinvariant {' '.join(argv)} --format json` (exit {code})\n\n"
                     f"```json\n{out.rstrip()}\n```\n")
    return "".join(parts)


def main():
    path = Path(__file__).resolve().parent.parent / "docs" / "schema.md"
    path.write_text(render())
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
