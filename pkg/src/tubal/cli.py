"""Command line driver: ``tubal <subcommand> ...``.

Exit status is 0 on success, 1 on runtime failures (including a TRPCA run
that did not converge) and 2 on usage errors.
"""

import argparse
import csv
import sys
import time

import numpy as np

from . import synth
from .exceptions import RankNotRevealed
from .io import read_pgm_stack, read_tns3, video_tensor, write_metrics, write_tns3
from .randomized_tsvd import rtsvd_fixed
from .tensor import f_diagonal
from .trpca import trpca_admm
from .tsvd import exact_multirank, minimal_error, singular_tubes, tsvd_truncated
from .turank import estimated_tube_error, r_turank


def _rel(A, X):
    return float(np.linalg.norm((A - X).ravel()) / np.linalg.norm(A.ravel()))


def _float_list(text):
    return [float(t) for t in text.split(",") if t]


def _int_list(text):
    return [int(t) for t in text.split(",") if t]


def _emit(path, rows):
    if path in (None, "-"):
        write_metrics(sys.stdout, rows)
    else:
        write_metrics(path, rows)


def cmd_synth(args):
    if args.kind == "tensorI":
        A = synth.tensor_I(args.n1, args.n2, args.n3, args.seed)
    elif args.kind == "tensorII":
        A = synth.tensor_II(args.n1, args.n2, args.n3, args.seed)
    else:
        if args.rank is None:
            raise SystemExit("synth --kind lowrank needs --rank")
        A = synth.low_tubal_rank(args.n1, args.n2, args.n3, args.rank, args.seed)
    write_tns3(args.out, A)
    return 0


def tsvd_row(A, k):
    f = tsvd_truncated(A, k)
    approx = f.reconstruct()
    return dict(
        method="tsvd", K=k, nu=k, multirank=[k] * A.shape[2],
        re=_rel(A, approx),
        re_oracle=minimal_error(A, k) / np.linalg.norm(A.ravel()),
    )


def cmd_tsvd(args):
    A = read_tns3(args.input)
    t0 = time.perf_counter()
    row = tsvd_row(A, args.k)
    row["time_s"] = time.perf_counter() - t0
    _emit(args.metrics, [row])
    return 0


def rtsvd_row(A, tau, K, p, q, seed):
    res = rtsvd_fixed(A, tau, K, p, q, seed)
    return dict(
        method="rtsvd", seed=seed, tau=tau, K=K, p=p, q=q,
        multirank=res.multirank, nu=res.tubal_rank,
        re=_rel(A, res.approximation), time_s=res.elapsed,
    )


def cmd_rtsvd(args):
    A = read_tns3(args.input)
    _emit(args.metrics, [rtsvd_row(A, args.tau, args.K, args.p, args.q, args.seed)])
    return 0


def turank_row(A, tau, b, q, seed, max_rank=None):
    rep = r_turank(A, b, tau, q, seed, max_rank)
    return rep, dict(
        method="turank", seed=seed, tau=tau, b=b, q=q,
        multirank=rep.multirank, nu=rep.tubal_rank,
        re=_rel(A, rep.approximation), time_s=rep.elapsed,
    )


def cmd_turank(args):
    A = read_tns3(args.input)
    if args.tau_energy is not None:
        tau = args.tau_energy * np.linalg.norm(A.ravel()) / A.shape[2]
    elif args.tau is not None:
        tau = args.tau
    else:
        raise SystemExit("turank needs --tau or --tau-energy")
    rep, row = turank_row(A, tau, args.b, args.q, args.seed, args.max_rank)
    _emit(args.metrics, [row])
    if args.sv_out:
        S_est = rep.estimated_singular_tensor
        tubes = singular_tubes(A)
        S_true = f_diagonal(tubes)
        with open(args.sv_out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["j", "est_norm", "true_norm", "re_tubsv"])
            for j in range(1, min(rep.tubal_rank, S_est.shape[0]) + 1):
                w.writerow([
                    j,
                    repr(float(np.linalg.norm(S_est[j - 1, j - 1]))),
                    repr(float(np.linalg.norm(tubes[j - 1]))),
                    repr(estimated_tube_error(S_est, S_true, j)),
                ])
    return 0


def cmd_trpca(args):
    A = read_tns3(args.input)
    inner = "exact" if args.inner == "exact" else "randomized"
    L, E, state = trpca_admm(
        A, lam=args.lam, mu0=args.mu0, rho=args.rho, mu_max=args.mu_max, tol=args.tol,
        max_iters=args.max_iters, inner=inner, b=args.b, q=args.q, random_state=args.seed,
    )
    if args.out_l:
        write_tns3(args.out_l, L)
    if args.out_e:
        write_tns3(args.out_e, E)
    row = dict(
        method=f"trpca-{inner}", seed=args.seed if inner == "randomized" else None,
        b=args.b if inner == "randomized" else None,
        q=args.q if inner == "randomized" else None,
        **{"lambda": state.lam}, mu0=args.mu0, nu=state.rank_history[-1],
        re=state.residual_history[-1], iters=state.iterations,
        converged=int(state.converged), time_s=state.elapsed,
    )
    _emit(args.metrics, [row])
    if not state.converged:
        print(f"trpca: not converged after {state.iterations} iterations", file=sys.stderr)
        return 1
    return 0


def cmd_bench_compare(args):
    A = read_tns3(args.input)
    norm_a = np.linalg.norm(A.ravel())
    rows = []
    for tau in args.taus:
        for method in args.methods:
            for seed in args.seeds:
                if method == "tsvd":
                    t0 = time.perf_counter()
                    multirank, nu = exact_multirank(A, tau)
                    row = tsvd_row(A, max(nu, 1))
                    row.update(seed=seed, tau=tau, multirank=multirank, nu=nu,
                               time_s=time.perf_counter() - t0)
                elif method == "rtsvd":
                    row = rtsvd_row(A, tau, args.K, args.p, args.q, seed)
                elif method == "turank":
                    _, row = turank_row(A, tau, args.b, args.q, seed)
                    row["re_oracle"] = minimal_error(A, max(row["nu"], 0)) / norm_a
                else:
                    raise SystemExit(f"unknown method {method!r}")
                rows.append(row)
    _emit(args.metrics, rows)
    return 0


def cmd_ingest(args):
    if args.channels:
        A = video_tensor([read_pgm_stack(src, "frontal") for src in args.sources])
    else:
        if len(args.sources) == 1:
            A = read_pgm_stack(args.sources[0], args.layout)
        else:
            A = read_pgm_stack(args.sources, args.layout)
    write_tns3(args.out, A)
    print(f"{args.out}: {A.shape[0]}x{A.shape[1]}x{A.shape[2]}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="tubal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("synth", help="generate a synthetic tensor")
    p.add_argument("--kind", choices=["tensorI", "tensorII", "lowrank"], required=True)
    p.add_argument("--n1", type=int, default=100)
    p.add_argument("--n2", type=int, default=100)
    p.add_argument("--n3", type=int, default=20)
    p.add_argument("--rank", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("tsvd", help="truncated t-SVD with the optimal-error column")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--metrics")
    p.set_defaults(func=cmd_tsvd)

    p = sub.add_parser("rtsvd", help="fixed-threshold randomized t-SVD")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metrics")
    p.set_defaults(func=cmd_rtsvd)

    p = sub.add_parser("turank", help="adaptive randomized tubal rank revealing")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tau", type=float)
    p.add_argument("--tau-energy", type=float, metavar="RHO",
                   help="use tau = RHO * ||A||_F / n3")
    p.add_argument("--b", type=int, default=10)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", type=int)
    p.add_argument("--metrics")
    p.add_argument("--sv-out", help="CSV of estimated singular tube fiber errors")
    p.set_defaults(func=cmd_turank)

    p = sub.add_parser("trpca", help="tensor robust PCA by ADMM")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--mu0", type=float, default=1e-3)
    p.add_argument("--rho", type=float, default=1.1)
    p.add_argument("--mu-max", type=float, default=1e10)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iters", type=int, default=500)
    p.add_argument("--inner", choices=["exact", "rand"], default="exact")
    p.add_argument("--b", type=int, default=5)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-l")
    p.add_argument("--out-e")
    p.add_argument("--metrics")
    p.set_defaults(func=cmd_trpca)

    p = sub.add_parser("bench", help="benchmark harness")
    bsub = p.add_subparsers(dest="bench_command", metavar="BENCH")
    c = bsub.add_parser("compare", help="RE and time across thresholds, methods and seeds")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--taus", type=_float_list, required=True)
    c.add_argument("--methods", type=lambda s: s.split(","), default=["tsvd", "turank"])
    c.add_argument("--seeds", type=_int_list, default=[0])
    c.add_argument("--b", type=int, default=10)
    c.add_argument("--q", type=int, default=1)
    c.add_argument("--K", type=int, default=20)
    c.add_argument("--p", type=int, default=5)
    c.add_argument("--metrics")
    c.set_defaults(func=cmd_bench_compare)

    p = sub.add_parser("ingest", help="convert PGM image stacks to a TNS3 file")
    p.add_argument("sources", nargs="+", help="directories or PGM files")
    p.add_argument("--layout", choices=["lateral", "frontal"], default="lateral")
    p.add_argument("--channels", action="store_true",
                   help="each source is one colour channel of a video; "
                        "builds an (h*w) x frames x channels tensor")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    func = getattr(args, "func", None)
    if func is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return func(args)
    except RankNotRevealed as exc:
        print(f"tubal: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"tubal: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
