// expect: global=0 scope=0 pure=0 scoping=1 default=0 multi=0 simd=0
void zero(int n, double *a) {
    #pragma omp parallel for default(none) shared(a)
    for (int i = 0; i < n; i++)
        a[i] = 0.0;
}
