#include <stdio.h>
#include "vec.h"

int calls;

// Mean of the first n values.
double mean(int n, const double *a) {
    double total = 0.0;
    int i;
    calls++;
    for (i = 0; i < n; i++)
        total += a[i];
    return n > 0 ? total / n : 0.0;
}

void report(int n, const double *a) {
    printf("mean %f\n", mean(n, a));
}
