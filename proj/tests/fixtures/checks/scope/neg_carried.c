// expect: global=0 scope=0 pure=0 scoping=0 default=0 multi=0 simd=0
double prefix_sum(int n, const double *a, double *out) {
    double run = 0;
    for (int i = 0; i < n; i++) {
        run += a[i];
        out[i] = run;
    }
    return run;
}
