// Runs the kernel and dumps the output matrix to stdout in binary.
#include <stdio.h>
#include <stdlib.h>

int mandelbrot(int max_iter, int height, int width, double **output, double real_min, double real_max, double imag_min,
               double imag_max);

int main(int argc, char **argv) {
    int n = argc > 1 ? atoi(argv[1]) : 512;
    int max_iter = argc > 2 ? atoi(argv[2]) : 256;
    double **output = malloc(n * sizeof(double *));
    for (int i = 0; i < n; i++)
        output[i] = calloc(n, sizeof(double));
    mandelbrot(max_iter, n, n, output, -2.0, 1.0, -1.5, 1.5);
    if (argc > 3) {
        for (int i = 0; i < n; i++)
            fwrite(output[i], sizeof(double), n, stdout);
    }
    for (int i = 0; i < n; i++)
        free(output[i]);
    free(output);
    return 0;
}
