void prefix(int n, double *a) {
    a[0] = 1;
    for (int i = 1; i < n; i++)
        a[i] = a[i - 1] + 1;
}
