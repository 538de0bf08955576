// expect: global=0 scope=0 pure=2 scoping=0 default=0 multi=0 simd=0
#include <math.h>

double norm2(double x, double y) {
    double s = x * x + y * y;
    return sqrt(s);
}

static int add3(int a) {
    int r = a;
    r += 3;
    return r;
}
