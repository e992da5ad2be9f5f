"""Runs small fdtc experiments and feeds the outputs through the figure reader."""

import json
import pathlib
import subprocess
import sys
import tempfile

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[2] / "figures"))
import fdtc_figures  # noqa: E402


def run(cli, *args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def shrink(cli, preset, work, **edits):
    code, out, err = run(cli, "presets", "--preset", preset)
    assert code == 0, err
    cfg = json.loads(out)
    cfg["ensemble"]["realizations"] = 2
    for key, value in edits.items():
        section, _, field = key.partition("__")
        if field:
            cfg[section][field] = value
        else:
            cfg[section] = value
    path = work / (preset + ".json")
    path.write_text(json.dumps(cfg))
    return path


def main(cli):
    failures = []
    with tempfile.TemporaryDirectory() as tmp:
        work = pathlib.Path(tmp)
        jobs = [
            ("dynamics", shrink(cli, "fig2a", work, dynamics__periods=8)),
            ("dynamics", shrink(cli, "fig7a", work, dynamics__periods=8)),
            ("spectral", shrink(cli, "fig6c", work, sweep__hbar_over_pi=[0.1, 0.4])),
            ("sg-order", shrink(cli, "fig6c", work, sweep__hbar_over_pi=[0.2])),
            ("correlators", shrink(cli, "fig5a", work, lattice={"lx": 2, "ly": 2, "boundary": "open"},
                                   correlators={"points": 16, "floor": 0.1})),
        ]
        dirs = []
        for k, (cmd, cfg) in enumerate(jobs):
            out = work / ("run%d" % k)
            code, _, err = run(cli, cmd, "--config", str(cfg), "--out", str(out))
            if code != 0:
                failures.append("%s %s exited %d: %s" % (cmd, cfg.name, code, err))
            dirs.append(out)
        out = work / "synth"
        code, _, err = run(cli, "synth-verify", "--builtin", "native:SX:1,1", "--out", str(out))
        if code != 0:
            failures.append("synth-verify exited %d: %s" % (code, err))
        dirs.append(out)

        for d in dirs:
            manifest = fdtc_figures.manifest_digest(d)
            for name in manifest["outputs"]:
                text = (d / name).read_text()
                table = fdtc_figures.parse_table(text)
                if table.render() != text:
                    failures.append("%s/%s does not round trip" % (d.name, name))
        if fdtc_figures.main(["check", *map(str, dirs)]) != 0:
            failures.append("check command failed")

        bad = work / "bad.csv"
        bad.write_text("period,observable,mean\n0,Zbar,1\n")
        try:
            fdtc_figures.read_table(bad)
            failures.append("schema mismatch was accepted")
        except fdtc_figures.SchemaError:
            pass

        png = work / "fig.png"
        recipe = work / "recipe.json"
        recipe.write_text(json.dumps({"inputs": [str(d) for d in dirs], "output": str(png)}))
        if fdtc_figures.main(["render", "--recipe", str(recipe)]) != 0 or not png.exists():
            failures.append("render failed")

        code, _, _ = run(cli, "dynamics", "--config", str(work / "missing.json"))
        if code != 2:
            failures.append("missing config exit code %d, expected 2" % code)

    for f in failures:
        print("FAIL", f)
    print("pipeline checks:", "FAIL" if failures else "PASS")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
