"""
Command-line entry point.

    mcvd-mimo <subcommand> [--config FILE] [--seed N] [--jobs N] [--out DIR] [--paper-scale]

Subcommands: simulate-channel, fit, ber-sweep, sir-sweep, threshold-table,
protocol-demo, calibrate-fixed, ggd-table, throughput.
Exit codes: 0 ok, 2 configuration, 3 numeric failure, 4 I/O, 130 interrupted.
"""
import argparse, sys
from pathlib import Path
import pandas as pd
import yaml
from .channel import run_channel_simulation, fit_channel, pooled
from .config import ExperimentConfig, load_config, apply_cli_overrides, write_config
from .scenarios import rng_for, STAGE_PROTOCOL
from .sim import run_ber_experiment, calibrate_fixed_threshold, run_ggd_table, run_siso_throughput, point_probs
from .tables import sir_sweep, threshold_table, sensitivity_table
from ..particles.cdf import write_cdfs_csv, write_records_csv, read_cdfs_csv
from ..protocol.demo import end_to_end_demo, measure_s_ili
from ..protocol.framing import transmission_speedup, frame_slots
from ..utils.errors import McvdError, OutputError
from ..utils.io import write_csv
from ..utils.logger import log


def _out(cfg: ExperimentConfig) -> Path:
    out = Path(cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create {out}: {exc}") from exc
    return out


def _write(cfg, df, name, **extra):
    path = write_csv(df, _out(cfg) / name, {**cfg.header(), **extra})
    log(f"wrote {path}", tag="out")
    return path


def cmd_simulate_channel(cfg: ExperimentConfig, records=False) -> int:
    cfg = cfg.scaled()
    run = run_channel_simulation(cfg)
    path = write_cdfs_csv(_out(cfg) / "cdfs.csv", run.cdfs, cfg.header())
    log(f"wrote {path}", tag="out")
    pooled_df = pd.DataFrame({"t_s": run.pair.time_grid, "pair": run.pair.fraction, "cross": run.cross.fraction})
    _write(cfg, pooled_df, "cdfs_pooled.csv")
    if records:
        path = write_records_csv(_out(cfg) / "hitting_records.csv", run.records, cfg.header())
        log(f"wrote {path}", tag="out")
    return 0


def cmd_fit(cfg: ExperimentConfig, cdf_path) -> int:
    cdfs = read_cdfs_csv(cdf_path)
    pair, cross = pooled(cdfs)
    fp, fc = fit_channel(pair, cross, cfg.topology)
    _write(cfg, pd.DataFrame([fp.as_row(), fc.as_row()]), "fit_report.csv", source=Path(cdf_path).name)
    section = {"channel": {"pair": list(fp.params.as_tuple()), "cross": list(fc.params.as_tuple())},
               "fitted": [fp.params.to_config(), fc.params.to_config()]}
    path = _out(cfg) / "channel_params.yaml"
    try:
        path.write_text(yaml.safe_dump(section, sort_keys=False))
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    log(f"wrote {path}", tag="out")
    return 0 if fp.converged and fc.converged else 3


def cmd_ber_sweep(cfg: ExperimentConfig) -> int:
    raw, grouped = run_ber_experiment(cfg)
    _write(cfg, raw, "ber_raw.csv")
    _write(cfg, grouped, "ber_grouped.csv")
    return 0


def cmd_sir_sweep(cfg: ExperimentConfig) -> int:
    cfg = cfg.scaled()
    _write(cfg, sir_sweep(cfg), "sir.csv")
    return 0


def cmd_threshold_table(cfg: ExperimentConfig) -> int:
    th, h = threshold_table(cfg)
    _write(cfg, th, "thresholds.csv")
    _write(cfg, h, "t_threshold.csv")
    _write(cfg, sensitivity_table(cfg), "t_sensitivity.csv")
    return 0


def cmd_calibrate_fixed(cfg: ExperimentConfig) -> int:
    eta, df = calibrate_fixed_threshold(cfg.scaled())
    log(f"fixed threshold eta_f = {eta:.3f}", tag="fixed")
    _write(cfg, df, "fixed_threshold.csv", eta_f=f"{eta:.6f}")
    return 0


def cmd_ggd_table(cfg: ExperimentConfig, n_slots=200_000, K=None) -> int:
    _write(cfg, run_ggd_table(cfg, n_slots=n_slots, K=K), "ggd_shapes.csv")
    return 0


def cmd_throughput(cfg: ExperimentConfig, detector="zf_in") -> int:
    cfg = cfg.scaled()
    rows = [run_siso_throughput(cfg, Q1, t_s, detector, index=i)
            for i, (t_s, Q1) in enumerate((t, q) for t in cfg.link.ts_values for q in cfg.link.q1_values)]
    _write(cfg, pd.DataFrame(rows), "throughput.csv")
    return 0


def cmd_protocol_demo(cfg: ExperimentConfig, text=None, detector=None, Q1=None, show_slots=True) -> int:
    text = text or cfg.protocol.text
    detector = detector or cfg.protocol.detector
    link = cfg.link
    Q1 = Q1 or max(link.q1_values)
    t_s = link.ts_values[0]
    tx, noise = link.tx(Q1, t_s), link.noise()
    probs = point_probs(cfg, t_s)
    res = {}
    for i, streams in enumerate((2, 1)):
        res[streams] = end_to_end_demo(text, tx, probs, noise, detector,
                                       rng=rng_for(cfg.seed, STAGE_PROTOCOL, i), streams=streams,
                                       eta_f=link.eta_f)
    mimo = res[2]
    if show_slots:
        print(mimo.decisions.to_string(index=False))
    for streams, r in res.items():
        label = "MIMO" if streams == 2 else "SISO"
        shown = r.decoded if r.decoded is not None else f"<decode failed: {r.error}>"
        rate = 5 * len(r.text) / (r.n_slots * t_s)
        log(f"{label}: sent {r.text!r} got {shown!r} | {r.n_slots} slots | BER {r.ber:.4g} | "
            f"{rate:.3f} bit/s", tag="demo")
    log(f"slot-accounting speedup {transmission_speedup(len(text)):.3f} "
        f"({frame_slots(len(text), 1)} vs {frame_slots(len(text), 2)} slots)", tag="demo")
    ratio = measure_s_ili(cfg.protocol.s_ili_probes, tx, probs, noise, rng_for(cfg.seed, STAGE_PROTOCOL, 99))
    expected = probs.A0 / probs.B0 if probs.B0 > 0 else float("inf")
    log(f"S-ILI ratio {ratio:.2f} (A0/B0 = {expected:.2f})", tag="demo")
    _write(cfg, mimo.decisions, "demo_decisions.csv", text=text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="YAML experiment config (default: built-in defaults)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=None)
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--paper-scale", action="store_true", help="5e5 bits x 20 replications, 500 channel runs")

    ap = argparse.ArgumentParser(prog="mcvd-mimo", description="2x2 molecular MIMO link toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("simulate-channel", parents=[common], help="particle simulation -> CDF CSV")
    p.add_argument("--records", action="store_true", help="also write every hitting record")
    p = sub.add_parser("fit", parents=[common], help="fit the channel model to a CDF CSV")
    p.add_argument("--cdf", required=True)
    sub.add_parser("ber-sweep", parents=[common], help="BER of every detector over (Q1, t_s)")
    sub.add_parser("sir-sweep", parents=[common], help="SIR over the topology grid")
    sub.add_parser("threshold-table", parents=[common], help="MAP thresholds and the h(Q1) root")
    p = sub.add_parser("protocol-demo", parents=[common], help="ITA2 message over the simulated link")
    p.add_argument("--text", default=None)
    p.add_argument("--detector", default=None)
    p.add_argument("--q1", type=int, default=None)
    p.add_argument("--quiet", action="store_true", help="skip the per-slot table")
    sub.add_parser("calibrate-fixed", parents=[common], help="empirical fixed threshold")
    p = sub.add_parser("ggd-table", parents=[common], help="GGD shape parameters of zf_ex outputs")
    p.add_argument("--slots", type=int, default=200_000)
    p.add_argument("--shape-K", type=int, default=None, help="ISI memory for the shape fit")
    p = sub.add_parser("throughput", parents=[common], help="MIMO vs SISO throughput")
    p.add_argument("--detector", default="zf_in")
    return ap


def run(args) -> int:
    cfg = apply_cli_overrides(load_config(args.config), args.seed, args.jobs, args.out, args.paper_scale)
    write_config(cfg, Path(cfg.output_dir) / "config_used.yaml")
    if args.cmd == "simulate-channel":
        return cmd_simulate_channel(cfg, records=args.records)
    if args.cmd == "fit":
        return cmd_fit(cfg, args.cdf)
    if args.cmd == "ber-sweep":
        return cmd_ber_sweep(cfg)
    if args.cmd == "sir-sweep":
        return cmd_sir_sweep(cfg)
    if args.cmd == "threshold-table":
        return cmd_threshold_table(cfg)
    if args.cmd == "protocol-demo":
        return cmd_protocol_demo(cfg, args.text, args.detector, args.q1, show_slots=not args.quiet)
    if args.cmd == "calibrate-fixed":
        return cmd_calibrate_fixed(cfg)
    if args.cmd == "ggd-table":
        return cmd_ggd_table(cfg, args.slots, args.shape_K)
    return cmd_throughput(cfg, args.detector)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except McvdError as exc:
        print(f"[{args.cmd}] {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
