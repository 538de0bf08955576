// expect: global=0 scope=4 pure=0 scoping=0 default=0 multi=0 simd=0
// Escape-time Mandelbrot kernel.
#include <stdlib.h>

int mandelbrot(int max_iter, int height, int width, double **output, double real_min, double real_max, double imag_min,
               double imag_max) {
    double scale_real = (real_max - real_min) / width;
    double scale_imag = (imag_max - imag_min) / height;

    #pragma omp parallel default(none) shared(height, imag_min, max_iter, output, real_min, scale_imag, scale_real, width)
    {
    #pragma omp for schedule(auto)
    for (int row = 0; row < height; row++) {
        for (int col = 0; col < width; col++) {

            double x0 = real_min + col * scale_real;
            double y0 = imag_min + row * scale_imag;

            double y = 0, x = 0;
            int iter = 0;
            while (x * x + y * y < 4 && iter < max_iter) {
                double xtemp = x * x - y * y + x0;
                y = 2 * x * y + y0;
                x = xtemp;
                iter++;
            }
            output[row][col] = iter;
        }
    }
    } // end parallel
    return 0;
}
