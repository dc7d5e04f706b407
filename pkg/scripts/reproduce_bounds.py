"""Re-derive the piece-count sweep and both headline bounds, then check the published assignments."""
import argparse
import time

from pwcolor import piecewise_analyze, verify_assignment
from pwcolor.tables import C_PRIME_3COL, C_PRIME_3COL_FAST, PIECE_SWEEP, PUBLISHED


def run(label, expected, **kw):
    t0 = time.perf_counter()
    rep = piecewise_analyze(**kw)
    dt = time.perf_counter() - t0
    w = rep.worst
    print(f"{label:<28} base {rep.max_base:.4f} (published {expected:.4f})  "
          f"worst [{w.piece.l:.5f}, {w.piece.u:.5f}] alpha {w.weights.alpha:.5f}  {dt:.1f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-counting", action="store_true", help="skip the 5000-piece counting run")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    print("published assignments, evaluated directly")
    for name, e in PUBLISHED.items():
        v = verify_assignment(e["weights"], e["piece"], e["c"], counting=e["counting"])
        print(f"  {name}: feasible={v.feasible} max slack {max(v.slacks):.6f} "
              f"exponent {v.exponent:.5f} base {v.base:.4f} (published {e['base']:.4f})")

    print("optimizer")
    for p, base in PIECE_SWEEP.items():
        run(f"4-coloring, {p} pieces", base, d=3, p=p, c_prime=C_PRIME_3COL, threads=args.threads)
    run("4-coloring, 550 pieces", 1.7207, d=3, p=550, c_prime=C_PRIME_3COL, threads=args.threads)
    run("4-coloring, c'=log2 1.3217", 1.7146, d=3, p=550, c_prime=C_PRIME_3COL_FAST, threads=args.threads)
    if not args.skip_counting:
        run("#3-coloring, 5000 pieces", 1.6225, d=2, p=5000, counting=True, threads=args.threads)


if __name__ == "__main__":
    main()
