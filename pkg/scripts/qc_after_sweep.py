# scripts/qc_after_sweep.py
import argparse, json, sys
from pathlib import Path
import pandas as pd

def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--raw", required=True, help="ber_raw.csv written by ber-sweep")
    ap.add_argument("--outdir", required=True)
    ap.add_argument("--min_reps", type=int, default=5)
    args = ap.parse_args()

    raw = pd.read_csv(args.raw, comment="#")
    req = ["detector","Q1","t_s","replication","errors","n_bits","lower_triggers","singular_slots"]
    missing = [c for c in req if c not in raw.columns]
    if missing:
        print(f"[qc] Missing columns in raw: {missing}", file=sys.stderr)
        sys.exit(2)

    raw["ber"] = raw["errors"] / raw["n_bits"]
    grp_cols = ["detector","Q1","t_s"]
    g = (raw.groupby(grp_cols, dropna=False)
         .agg(n=("replication","count"),
              ber_mean=("ber","mean"),
              ber_std=("ber","std"),
              lower_triggers=("lower_triggers","sum"),
              singular_slots=("singular_slots","sum"),
              bits=("n_bits","sum"))
         .reset_index())
    g["singular_rate"] = g["singular_slots"] / (g["bits"] / 2)

    outdir = Path(args.outdir); outdir.mkdir(parents=True, exist_ok=True)
    grouped_path = outdir / "ber_qc_grouped.csv"
    g.to_csv(grouped_path, index=False)
    print(f"[qc] wrote grouped CSV -> {grouped_path}")

    under = g[g["n"] < args.min_reps].copy()

    # adaptive and zf_ex see the same traces and must agree replication by replication
    mismatch = pd.DataFrame()
    if {"adaptive","zf_ex"} <= set(raw["detector"]):
        keys = ["Q1","t_s","replication"]
        a = raw[raw["detector"] == "adaptive"].set_index(keys)["errors"]
        z = raw[raw["detector"] == "zf_ex"].set_index(keys)["errors"]
        both = pd.concat([a.rename("adaptive"), z.rename("zf_ex")], axis=1).dropna()
        mismatch = both[both["adaptive"] != both["zf_ex"]].reset_index()

    report = {
        "total_groups": int(len(g)),
        "min_reps_required": args.min_reps,
        "groups_below_threshold": int(len(under)),
        "adaptive_zf_ex_mismatches": int(len(mismatch)),
        "examples_below": under.head(10).to_dict(orient="records"),
        "ok": len(under) == 0 and len(mismatch) == 0
    }
    (outdir / "qc_report.json").write_text(json.dumps(report, indent=2))

    # Markdown report (DataFrame.to_markdown needs tabulate)
    md = [
        "# QC report",
        f"- groups: **{len(g)}**",
        f"- min_reps: **{args.min_reps}**",
        f"- groups under threshold: **{len(under)}**",
        f"- adaptive / zf_ex mismatches: **{len(mismatch)}**",
        "", "Grouped BER:", ""
    ]
    md.append(g.to_markdown(index=False))
    (outdir / "qc_report.md").write_text("\n".join(md))

    if len(under) > 0 or len(mismatch) > 0:
        print("[qc] FAIL: not enough replications per group or adaptive/zf_ex disagree.", file=sys.stderr)
        sys.exit(3)

if __name__ == "__main__":
    main()
