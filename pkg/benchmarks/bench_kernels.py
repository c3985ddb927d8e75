"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--octets 4096] [--repeat 5]
"""
import argparse
import os
import sys
import timeit

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ncsh._kernels import backends  # noqa: E402


def cases(mod, octets):
    data = bytes(i & 0xFF for i in range(octets))
    aes_ks = mod.aes_expand_key(bytes(range(16)))
    des_ks = mod.des_key_schedule(bytes(range(8)))
    iv16, iv8 = bytes(16), bytes(8)
    block = data[:64]
    return {
        "aes key expansion": lambda: mod.aes_expand_key(bytes(range(16))),
        f"aes-cbc encrypt {octets} B": lambda: mod.aes_cbc_encrypt(aes_ks, iv16, data),
        f"aes-cbc decrypt {octets} B": lambda: mod.aes_cbc_decrypt(aes_ks, iv16, data),
        "des key schedule": lambda: mod.des_key_schedule(bytes(range(8))),
        f"des-cbc encrypt {octets} B": lambda: mod.des_cbc_encrypt(des_ks, iv8, data),
        f"des-cbc decrypt {octets} B": lambda: mod.des_cbc_decrypt(des_ks, iv8, data),
        "sha-1 compress 64 B": lambda: mod.sha1_compress((1, 2, 3, 4, 5), block),
    }


def measure(fn, repeat):
    number, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number * 1e6


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--octets", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    impls = backends()
    if "compiled" not in impls:
        print("compiled extension not built; only the pure backend is available", file=sys.stderr)
    results = {name: {k: measure(fn, args.repeat) for k, fn in cases(mod, args.octets).items()}
               for name, mod in impls.items()}
    names = list(results)
    print(f"{'kernel':28}" + "".join(f"{n + ' us':>14}" for n in names) + ("    speed-up" if len(names) > 1 else ""))
    for k in results["pure"]:
        row = f"{k:28}" + "".join(f"{results[n][k]:14.2f}" for n in names)
        if "compiled" in results:
            row += f"{results['pure'][k] / results['compiled'][k]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
