"""A(n): the PPT inequality constant 1 against the exact threshold n^2/(n^2+n)."""

from sepcert import CertVerdict, certify, gen_an_family, ppt_inequality_certificate

print(f"{'n':>2} {'lambda1':>8} {'certify':>10} {'PPT inequality':>15} {'margin':>8}")
for n in range(2, 7):
    for lam1 in (n, n + 0.5, n + 1, n + 2):
        a = gen_an_family(n, lam1, 1.0)
        full = certify(a).verdict.value
        ppt = ppt_inequality_certificate(a)
        print(f"{n:>2} {lam1:>8.2f} {full:>10} {ppt.verdict.value:>15} {ppt.diagnostics['margin']:>8.4f}")
    print(f"   separable from lambda1 = {n}, inequality needs lambda1 >= {n + 1}; "
          f"ratio n^2/(n^2+n) = {n * n / (n * n + n):.3f}")

assert certify(gen_an_family(3, 4, 1)).verdict == CertVerdict.SEPARABLE
