// expect: global=3 scope=0 pure=0 scoping=0 default=0 multi=0 simd=0
static int hits;
static double scale = 2.0;

void record(void) { hits++; }

double scaled(double x) {
    hits++;
    return x * scale;
}
