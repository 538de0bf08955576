// expect: global=0 scope=0 pure=0 scoping=0 default=0 multi=0 simd=0
void zero(int n, double *a) {
    #pragma omp parallel default(none) shared(n, a)
    {
        #pragma omp for schedule(auto)
        for (int i = 0; i < n; i++)
            a[i] = 0.0;
    } // end parallel
}
