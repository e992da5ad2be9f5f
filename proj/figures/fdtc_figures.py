"""Read fdtc CSV outputs and render figure analogues."""

import argparse
import csv
import hashlib
import io
import json
import pathlib
import sys

SCHEMAS = {
    "dynamics": ["period", "observable", "mean", "stderr"],
    "sweep": ["hbar_over_pi", "metric", "value"],
    "correlators": ["t_over_T", "correlator", "value"],
    "synth": ["trial", "theta", "error"],
}

PRESETS = {
    "fig2": ["fig2a", "fig2b"],
    "fig3": ["fig3a", "fig3b"],
    "fig4": ["fig4a", "fig4b"],
    "fig5": ["fig5a", "fig5b", "fig5c", "fig5d"],
    "fig6": ["fig6a", "fig6c", "fig6d"],
    "fig7": ["fig7a", "fig7b", "fig7c", "fig7d"],
}


class SchemaError(ValueError):
    pass


class Table:
    def __init__(self, kind, header_lines, columns, rows):
        self.kind = kind
        self.header_lines = header_lines
        self.columns = columns
        self.rows = rows

    def series(self, key_column, x_column, y_column):
        out = {}
        for row in self.rows:
            xs, ys = out.setdefault(row[key_column], ([], []))
            xs.append(float(row[x_column]))
            ys.append(float(row[y_column]))
        return out

    def render(self):
        buf = io.StringIO()
        for line in self.header_lines:
            buf.write("# " + line + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([row[c] for c in self.columns])
        return buf.getvalue()


def parse_table(text):
    header, body = [], []
    for line in text.splitlines():
        if not line:
            continue
        if line.startswith("#") and not body:
            header.append(line[2:] if line.startswith("# ") else line[1:])
        else:
            body.append(line)
    if not body:
        raise SchemaError("missing column header")
    reader = csv.reader(body)
    columns = next(reader)
    kind = next((k for k, cols in SCHEMAS.items() if cols == columns), None)
    if kind is None:
        raise SchemaError("unknown column layout %r" % columns)
    rows = []
    for cells in reader:
        if len(cells) != len(columns):
            raise SchemaError("row width %d, expected %d" % (len(cells), len(columns)))
        rows.append(dict(zip(columns, cells)))
    if not rows:
        raise SchemaError("empty series")
    for row in rows:
        for c in columns:
            if c not in ("observable", "metric", "correlator"):
                float(row[c])
    return Table(kind, header, columns, rows)


def read_table(path):
    return parse_table(pathlib.Path(path).read_text())


def manifest_digest(run_dir):
    run_dir = pathlib.Path(run_dir)
    manifest = json.loads((run_dir / "manifest.json").read_text())
    for name, entry in manifest["outputs"].items():
        digest = hashlib.sha256((run_dir / name).read_bytes()).hexdigest()
        if digest != entry["sha256"]:
            raise SchemaError("%s: digest mismatch with manifest" % name)
    return manifest


def _plot(ax, table, title):
    if table.kind == "dynamics":
        for name, (x, y) in table.series("observable", "period", "mean").items():
            ax.plot(x, y, marker=".", label=name)
        ax.set_xlabel("n")
    elif table.kind == "sweep":
        for name, (x, y) in table.series("metric", "hbar_over_pi", "value").items():
            if not name.endswith("_sem") and not name.startswith("phase:"):
                ax.plot(x, y, marker="o", label=name)
        ax.set_xlabel("hbar / pi")
    elif table.kind == "correlators":
        for name, (x, y) in table.series("correlator", "t_over_T", "value").items():
            ax.plot(x, y, label=name)
        ax.set_xlabel("t / T")
    else:
        x = [float(r["theta"]) for r in table.rows]
        y = [float(r["error"]) for r in table.rows]
        ax.semilogy(x, y, "o")
        ax.set_xlabel("theta")
    ax.set_title(title)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=6)


def render(recipe):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    inputs = recipe["inputs"]
    if not inputs:
        raise SchemaError("recipe has no inputs")
    fig, axes = plt.subplots(1, len(inputs), figsize=(4 * len(inputs), 3.2), squeeze=False)
    digests = []
    for ax, run_dir in zip(axes[0], inputs):
        run_dir = pathlib.Path(run_dir)
        manifest = manifest_digest(run_dir)
        name = next(iter(manifest["outputs"]))
        digests.append(manifest["outputs"][name]["sha256"][:12])
        _plot(ax, read_table(run_dir / name), run_dir.name)
    fig.text(0.01, 0.01, "sha256 " + " ".join(digests), fontsize=6)
    fig.tight_layout(rect=(0, 0.04, 1, 1))
    fig.savefig(recipe["output"], dpi=120)
    plt.close(fig)
    return recipe["output"]


def main(argv=None):
    parser = argparse.ArgumentParser(prog="fdtc_figures")
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render")
    r.add_argument("--recipe")
    r.add_argument("--preset", choices=sorted(PRESETS))
    r.add_argument("--data", default="fdtc_out")
    r.add_argument("--output")
    c = sub.add_parser("check")
    c.add_argument("run_dirs", nargs="+")
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            for d in args.run_dirs:
                manifest = manifest_digest(d)
                for name in manifest["outputs"]:
                    text = (pathlib.Path(d) / name).read_text()
                    if read_table(pathlib.Path(d) / name).render() != text:
                        raise SchemaError("%s/%s does not round trip" % (d, name))
            return 0
        if bool(args.recipe) == bool(args.preset):
            parser.error("give exactly one of --recipe or --preset")
        if args.recipe:
            recipe = json.loads(pathlib.Path(args.recipe).read_text())
        else:
            recipe = {
                "inputs": [str(pathlib.Path(args.data) / p) for p in PRESETS[args.preset]],
                "output": args.output or args.preset + ".png",
            }
        print(render(recipe))
        return 0
    except (SchemaError, KeyError, OSError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
