#include "vec.h"

void vec_scale(int n, double k, double *v) {
    for (int i = 0; i < n; i++)
        v[i] = k * v[i];
}

double vec_dot(int n, const double *a, const double *b) {
    double s = 0.0;
    for (int i = 0; i < n; i++)
        s += a[i] * b[i];
    return s;
}
